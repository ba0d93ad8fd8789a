#include "rsa/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace rsa {

std::string_view to_string(Linkage linkage) {
  switch (linkage) {
    case Linkage::Average: return "average";
    case Linkage::Complete: return "complete";
    case Linkage::Single: return "single";
  }
  return "unknown";
}

Linkage linkage_from_string(std::string_view name) {
  if (name == "average") return Linkage::Average;
  if (name == "complete") return Linkage::Complete;
  if (name == "single") return Linkage::Single;
  throw Error(ErrorCode::Validation,
              "unknown linkage '" + std::string(name) + "'");
}

Dendrogram::Dendrogram(std::vector<TaskId> leaves, std::vector<Merge> merges)
    : leaves_(std::move(leaves)), merges_(std::move(merges)) {
  const std::size_t t = leaves_.size();
  if (t < 2) {
    throw Error(ErrorCode::Validation, "dendrogram needs at least 2 leaves");
  }
  if (merges_.size() != t - 1) {
    std::ostringstream msg;
    msg << "dendrogram over " << t << " leaves needs " << t - 1
        << " merges, got " << merges_.size();
    throw Error(ErrorCode::Validation, msg.str());
  }
  // Node k exists once the first k-T merges are done; each node is consumed
  // exactly once as a child.
  std::vector<char> consumed(t + merges_.size(), 0);
  for (std::size_t m = 0; m < merges_.size(); ++m) {
    const Merge& merge = merges_[m];
    if (!std::isfinite(merge.height) || merge.height < 0.0) {
      std::ostringstream msg;
      msg << "merge " << m << " has invalid height " << merge.height;
      throw Error(ErrorCode::Validation, msg.str());
    }
    for (std::size_t child : {merge.left, merge.right}) {
      if (child >= t + m) {
        std::ostringstream msg;
        msg << "merge " << m << " references node " << child
            << " before it exists";
        throw Error(ErrorCode::Validation, msg.str());
      }
      if (consumed[child]) {
        std::ostringstream msg;
        msg << "node " << child << " has more than one parent";
        throw Error(ErrorCode::Validation, msg.str());
      }
      consumed[child] = 1;
    }
    if (merge.left == merge.right) {
      std::ostringstream msg;
      msg << "merge " << m << " joins node " << merge.left << " with itself";
      throw Error(ErrorCode::Validation, msg.str());
    }
  }
}

namespace {

struct ActiveCluster {
  std::size_t node;  // index in the dendrogram node numbering
  std::size_t size;  // leaf count, for average-linkage weights
};

}  // namespace

Dendrogram cluster(const SimilarityMatrix& sim, Linkage linkage) {
  // Similarity range and symmetry are guaranteed by the SimilarityMatrix
  // invariants, so distances 1 - s are >= 0.
  const std::size_t t = sim.task_count();

  // Distances between active clusters, indexed by slot in `active`.
  std::vector<ActiveCluster> active(t);
  for (std::size_t i = 0; i < t; ++i) active[i] = {i, 1};
  std::vector<std::vector<double>> dist(t, std::vector<double>(t, 0.0));
  for (std::size_t i = 0; i < t; ++i) {
    for (std::size_t j = 0; j < t; ++j) {
      dist[i][j] = 1.0 - sim.values()(i, j);
    }
  }

  std::vector<Merge> merges;
  merges.reserve(t - 1);
  while (active.size() > 1) {
    // Minimal-distance pair; ties go to the lexicographically least
    // (min node id, max node id).
    std::size_t best_a = 0, best_b = 1;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a < active.size(); ++a) {
      for (std::size_t b = a + 1; b < active.size(); ++b) {
        const double d = dist[a][b];
        const auto lo = std::min(active[a].node, active[b].node);
        const auto hi = std::max(active[a].node, active[b].node);
        const auto best_lo = std::min(active[best_a].node, active[best_b].node);
        const auto best_hi = std::max(active[best_a].node, active[best_b].node);
        if (d < best ||
            (d == best && (lo < best_lo || (lo == best_lo && hi < best_hi)))) {
          best = d;
          best_a = a;
          best_b = b;
        }
      }
    }

    const std::size_t new_node = t + merges.size();
    const std::size_t lo_node = std::min(active[best_a].node, active[best_b].node);
    const std::size_t hi_node = std::max(active[best_a].node, active[best_b].node);
    merges.push_back({lo_node, hi_node, best});

    // Lance-Williams update of the merged cluster's distances.
    const double na = static_cast<double>(active[best_a].size);
    const double nb = static_cast<double>(active[best_b].size);
    for (std::size_t k = 0; k < active.size(); ++k) {
      if (k == best_a || k == best_b) continue;
      double d;
      switch (linkage) {
        case Linkage::Single:
          d = std::min(dist[k][best_a], dist[k][best_b]);
          break;
        case Linkage::Complete:
          d = std::max(dist[k][best_a], dist[k][best_b]);
          break;
        case Linkage::Average:
        default:
          d = (na * dist[k][best_a] + nb * dist[k][best_b]) / (na + nb);
          break;
      }
      dist[k][best_a] = d;
      dist[best_a][k] = d;
    }
    active[best_a] = {new_node, active[best_a].size + active[best_b].size};

    // Drop slot best_b by swapping in the last slot.
    const std::size_t last = active.size() - 1;
    if (best_b != last) {
      active[best_b] = active[last];
      for (std::size_t k = 0; k < active.size(); ++k) {
        dist[k][best_b] = dist[k][last];
        dist[best_b][k] = dist[last][k];
      }
      dist[best_b][best_b] = 0.0;
    }
    active.pop_back();
  }

  return Dendrogram(sim.tasks(), std::move(merges));
}

std::vector<std::size_t> cut(const Dendrogram& dend, std::size_t k) {
  const std::size_t t = dend.leaf_count();
  if (k < 1 || k > t) {
    std::ostringstream msg;
    msg << "cut k = " << k << " outside [1, " << t << "]";
    throw Error(ErrorCode::InvalidK, msg.str());
  }

  // Keep all but the k-1 highest merges (height, then creation order).
  std::vector<std::size_t> by_height(dend.merges().size());
  std::iota(by_height.begin(), by_height.end(), std::size_t{0});
  std::stable_sort(by_height.begin(), by_height.end(),
                   [&dend](std::size_t a, std::size_t b) {
                     return dend.merges()[a].height < dend.merges()[b].height;
                   });
  std::vector<char> kept(dend.merges().size(), 1);
  for (std::size_t i = 0; i < k - 1; ++i) {
    kept[by_height[by_height.size() - 1 - i]] = 0;
  }

  // Union-find over nodes connected by the kept merges.
  std::vector<std::size_t> parent(t + dend.merges().size());
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&parent](std::size_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  for (std::size_t m = 0; m < dend.merges().size(); ++m) {
    if (!kept[m]) continue;
    const Merge& merge = dend.merges()[m];
    const std::size_t node = t + m;
    parent[find(merge.left)] = find(node);
    parent[find(merge.right)] = find(node);
  }

  std::vector<std::size_t> assignment(t);
  std::vector<std::size_t> roots;
  for (std::size_t leaf = 0; leaf < t; ++leaf) {
    const std::size_t root = find(leaf);
    auto it = std::find(roots.begin(), roots.end(), root);
    if (it == roots.end()) {
      roots.push_back(root);
      it = roots.end() - 1;
    }
    assignment[leaf] = static_cast<std::size_t>(it - roots.begin());
  }
  return assignment;
}

}  // namespace rsa
