#pragma once

#include <vector>

#include "rsa/core.hpp"

namespace rsa {

enum class CorrelationMethod { Pearson, Spearman };

/// Spearman correlation of the lower-triangular vectors of two RDMs over the
/// identical condition list.
double rdm_similarity(const RDM& a, const RDM& b);

/// Assemble the task-by-task similarity matrix. Each unordered pair is scored
/// once; the diagonal is defined as exactly 1. Task order follows the input.
SimilarityMatrix similarity_matrix(const std::vector<RDM>& rdms);

struct MatrixCorrelationOptions {
  CorrelationMethod method = CorrelationMethod::Pearson;
  bool drop_diagonal = true;
  /// Mean of per-column correlations (each column with its diagonal entry
  /// removed) instead of one correlation over the vectorized off-diagonal.
  bool per_column = false;
};

/// Correlate two similarity matrices over the same task list.
double matrix_correlation(const SimilarityMatrix& a, const SimilarityMatrix& b,
                          MatrixCorrelationOptions options = {});

}  // namespace rsa
