#pragma once

#include <string>
#include <vector>

#include "rsa/core.hpp"
#include "rsa/similarity.hpp"

namespace rsa {

enum class Orientation { HigherBetter, LowerBetter };

std::string_view to_string(Orientation orientation);
Orientation orientation_from_string(std::string_view name);

struct AffinityEntry {
  TaskId source;
  double performance;
};

/// Externally measured transfer performance of each source task on a target.
/// Raw values are preserved; `orientation` declares which direction is
/// better (mIoU-style scores vs. loss-valued tables).
class AffinityTable {
 public:
  AffinityTable(TaskId target, std::vector<AffinityEntry> entries,
                Orientation orientation);

  const TaskId& target() const noexcept { return target_; }
  const std::vector<AffinityEntry>& entries() const noexcept {
    return entries_;
  }
  Orientation orientation() const noexcept { return orientation_; }

  /// Source tasks best-first under the declared orientation, performance
  /// ties broken by ascending task name.
  std::vector<TaskId> ordered_sources() const;

 private:
  TaskId target_;
  std::vector<AffinityEntry> entries_;
  Orientation orientation_;
};

/// Rank candidate RDMs by Spearman similarity to the probe RDM, best first.
Ranking rank_by_similarity(const RDM& probe_rdm,
                           const std::vector<RDM>& candidates);

/// Ranking view of an affinity table: scores oriented so higher is better
/// (performances are negated for lower-is-better tables).
Ranking ranking_from_affinity(const AffinityTable& table);

/// True iff the top-1 task of the RSA ranking is among the top-k sources of
/// the transfer table.
bool topk_agreement(const Ranking& rsa, const AffinityTable& transfer,
                    std::size_t k);

/// Correlation of the two score vectors aligned by task id.
double ranking_correlation(const Ranking& a, const Ranking& b,
                           CorrelationMethod method);

struct StabilityEntry {
  std::string label;
  double pearson;
  double spearman;
};

/// Pearson/Spearman correlation of each ranking against the reference, in
/// input order; labels are the zero-based input indices.
std::vector<StabilityEntry> stability_report(
    const std::vector<Ranking>& rankings, const Ranking& reference);

}  // namespace rsa
