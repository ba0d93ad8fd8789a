#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "rsa/core.hpp"

namespace rsa {

/// Philox4x32-10 counter-based generator (Salmon et al.'s construction).
/// Stateless: every 128-bit counter block maps to four 32-bit words under a
/// 64-bit key, so any matrix element can be generated independently of the
/// rest of the stream.
class Philox4x32 {
 public:
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static Counter generate(Counter counter, Key key);
};

struct SyntheticGroup {
  std::string name;
  std::vector<std::string> tasks;
  double alpha = 0.0;  ///< within-group mixing weight, in [0, 1]
};

/// Recipe for a family of task representations with known group structure.
struct SyntheticSpec {
  std::uint64_t seed = 0;
  std::uint32_t n_conditions = 0;
  std::uint32_t latent_dim = 0;
  std::vector<SyntheticGroup> groups;
  std::uint32_t feature_dim_per_task = 0;
  double noise_sigma = 0.0;

  void validate() const;

  /// Task names flattened in group order; the global task index used by the
  /// generator streams is the position in this list.
  std::vector<std::string> task_names() const;
};

/// Generate one FeatureMatrix per task, deterministically from the seed.
///
/// Construction: each group g draws a latent matrix G_g (n_conditions x
/// latent_dim) and each task t a private latent P_t of the same shape; the
/// task's pre-projection representation is alpha * G_g + (1 - alpha) * P_t.
/// It is projected by a task-specific map W_t (latent_dim x
/// feature_dim_per_task) and perturbed by noise_sigma * E_t.
///
/// All latent entries are standard normals from keyed Philox4x32-10 streams:
/// key = (seed lo32, seed hi32), counter = (block lo32, block hi32, entity,
/// stream class) with classes 1 = group latent (entity = group index),
/// 2 = task latent, 3 = projection, 4 = noise (entity = task index). Each
/// counter block yields two normals via Box-Muller, filling matrix elements
/// 2*block and 2*block + 1 in row-major order.
std::vector<FeatureMatrix> generate(const SyntheticSpec& spec);

}  // namespace rsa
