#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "rsa/clustering.hpp"
#include "rsa/core.hpp"
#include "rsa/selection.hpp"
#include "rsa/synthetic.hpp"

namespace rsa {

// RSAF binary feature format, version 1. All integers little-endian:
//
//   offset 0   magic, 4 bytes "RSAF"
//          4   version, u16 (= 1)
//          6   n_conditions, u32
//         10   n_features, u32
//         14   task name: u32 byte length, then UTF-8 bytes
//          -   condition ids: n_conditions x (u32 byte length + UTF-8 bytes)
//          -   payload: n_conditions * n_features IEEE-754 doubles,
//              little-endian, row-major by condition
//
// Readers reject malformed input with a typed Error naming the byte offset
// or row; nothing is repaired. Feature vectors are flat: producers must
// pre-flatten spatial maps row-major before writing.

inline constexpr std::uint16_t kFeatureFormatVersion = 1;

/// 17-significant-digit rendering used by every text format, chosen so that
/// doubles round-trip exactly.
std::string format_double(double value);

std::vector<std::uint8_t> serialize_features(const FeatureMatrix& features);

/// Parse RSAF bytes; falls back to the CSV schema (header row, first column
/// condition id) when the magic is absent. `origin` labels errors and names
/// the task for CSV input, which carries no task field.
FeatureMatrix parse_features(std::span<const std::uint8_t> bytes,
                             const std::string& origin);

FeatureMatrix read_features(const std::filesystem::path& path);
void write_features(const FeatureMatrix& features,
                    const std::filesystem::path& path);

/// Affinity CSV: first line `#affinity,<target task>,<higher_better|
/// lower_better>`, then a `source_task,performance` header and one row per
/// source.
AffinityTable read_affinity(const std::filesystem::path& path);

// Matrix CSV: metadata line (`#rdm,<task>[,<degenerate ids...>]` or
// `#similarity`), a header row of ids, then one labelled row per id. Values
// are printed with 17 significant digits so doubles round-trip exactly.
// On read, symmetry is enforced to 1e-9 and the lower triangle is mirrored;
// diagonals must parse to exactly 0 (RDM) or 1 (similarity).

using MatrixFile = std::variant<RDM, SimilarityMatrix>;

void write_matrix(const RDM& rdm, const std::filesystem::path& path);
void write_matrix(const SimilarityMatrix& sim,
                  const std::filesystem::path& path);
MatrixFile read_matrix(const std::filesystem::path& path);
RDM read_rdm(const std::filesystem::path& path);
SimilarityMatrix read_similarity(const std::filesystem::path& path);

enum class DendrogramFormat { Newick, Json };

/// Newick text with branch lengths parent height - child height (leaves sit
/// at height 0); labels needing it are single-quoted.
std::string to_newick(const Dendrogram& dend);

/// JSON object mirroring the Dendrogram: fields `leaves` (task names),
/// `merges` (objects with `left`, `right`, `height`), `tie_break`.
std::string to_dendrogram_json(const Dendrogram& dend);

void write_dendrogram(const Dendrogram& dend,
                      const std::filesystem::path& path,
                      DendrogramFormat format);
Dendrogram read_dendrogram_json(const std::filesystem::path& path);

/// Synthetic study config JSON; field names match the SyntheticSpec fields
/// (`seed`, `n_conditions`, `latent_dim`, `groups` with `name`/`tasks`/
/// `alpha`, `feature_dim_per_task`, `noise_sigma`).
SyntheticSpec parse_synthetic_spec(const std::string& json_text);
SyntheticSpec read_synthetic_spec(const std::filesystem::path& path);
void write_synthetic_spec(const SyntheticSpec& spec,
                          const std::filesystem::path& path);

}  // namespace rsa
