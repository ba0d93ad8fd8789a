#pragma once

#include <vector>

#include "rsa/core.hpp"

namespace rsa {

/// What to do with conditions whose feature row has no variance.
enum class DegeneratePolicy {
  Error,             ///< throw DegenerateVector naming the condition
  MaxDissimilarity,  ///< treat the pair correlation as 0 (dissimilarity 1)
};

/// Build the condition-by-condition dissimilarity matrix 1 - Pearson(row_i,
/// row_j). Rows are standardized once, so every pair reduces to one inner
/// product; each unordered pair is computed once and mirrored.
///
/// Under MaxDissimilarity, pairs touching a degenerate row score 1.0 and the
/// affected condition ids are recorded on the RDM.
RDM compute_rdm(const FeatureMatrix& features,
                DegeneratePolicy policy = DegeneratePolicy::Error);

/// Entries (i, j) with i > j, i ascending, j ascending within each row.
/// Two RDMs over the same condition list vectorize element-aligned.
std::vector<double> lower_triangle(const RDM& rdm);

}  // namespace rsa
