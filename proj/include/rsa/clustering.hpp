#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "rsa/core.hpp"

namespace rsa {

enum class Linkage { Average, Complete, Single };

std::string_view to_string(Linkage linkage);
Linkage linkage_from_string(std::string_view name);

/// One agglomerative merge. Node indices are leaves-first (0..T-1), then
/// merge nodes T..2T-2 in creation order.
struct Merge {
  std::size_t left;
  std::size_t right;
  double height;
};

/// Binary merge tree over a task list: exactly T-1 merges, every node except
/// the root has one parent, heights finite and >= 0.
class Dendrogram {
 public:
  static constexpr std::string_view kTieBreak = "lexicographic_min_pair";

  Dendrogram(std::vector<TaskId> leaves, std::vector<Merge> merges);

  const std::vector<TaskId>& leaves() const noexcept { return leaves_; }
  const std::vector<Merge>& merges() const noexcept { return merges_; }
  std::size_t leaf_count() const noexcept { return leaves_.size(); }
  std::string_view tie_break() const noexcept { return kTieBreak; }

 private:
  std::vector<TaskId> leaves_;
  std::vector<Merge> merges_;
};

/// Agglomerative clustering of the distance matrix d = 1 - similarity.
/// Repeatedly merges the active pair at minimal linkage distance; among
/// minimal pairs the one with lexicographically least (smaller node index,
/// larger node index) wins. Cluster distances are maintained with
/// Lance-Williams updates.
Dendrogram cluster(const SimilarityMatrix& sim, Linkage linkage);

/// Flat clusters from removing the k-1 highest merges (ties resolved by
/// creation order); connected components become clusters, indexed by first
/// leaf appearance. Result is aligned with dend.leaves().
std::vector<std::size_t> cut(const Dendrogram& dend, std::size_t k);

}  // namespace rsa
