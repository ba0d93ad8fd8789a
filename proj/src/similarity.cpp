#include "rsa/similarity.hpp"

#include <sstream>

#include "rsa/rdm.hpp"
#include "rsa/stats.hpp"

namespace rsa {

namespace {

void require_same_conditions(const RDM& a, const RDM& b) {
  if (a.conditions() != b.conditions()) {
    std::ostringstream msg;
    msg << "condition lists differ between tasks '" << a.task().name()
        << "' and '" << b.task().name() << "'";
    throw Error(ErrorCode::ConditionMismatch, msg.str());
  }
}

double correlate(std::span<const double> x, std::span<const double> y,
                 CorrelationMethod method) {
  return method == CorrelationMethod::Pearson ? pearson(x, y) : spearman(x, y);
}

}  // namespace

double rdm_similarity(const RDM& a, const RDM& b) {
  require_same_conditions(a, b);
  return spearman(lower_triangle(a), lower_triangle(b));
}

SimilarityMatrix similarity_matrix(const std::vector<RDM>& rdms) {
  const std::size_t t = rdms.size();
  if (t < 2) {
    throw Error(ErrorCode::Validation,
                "similarity matrix needs at least 2 RDMs");
  }

  std::vector<TaskId> tasks;
  tasks.reserve(t);
  for (const auto& rdm : rdms) tasks.push_back(rdm.task());

  std::vector<std::vector<double>> triangles;
  triangles.reserve(t);
  for (const auto& rdm : rdms) {
    require_same_conditions(rdms.front(), rdm);
    triangles.push_back(lower_triangle(rdm));
  }

  Matrix values(t, t, 0.0);
  for (std::size_t i = 0; i < t; ++i) values(i, i) = 1.0;
  for (std::size_t i = 1; i < t; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      double score;
      try {
        score = spearman(triangles[i], triangles[j]);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::DegenerateVector) throw;
        std::ostringstream msg;
        msg << "degenerate RDM triangle for pair ('" << tasks[i].name()
            << "', '" << tasks[j].name() << "'): " << e.what();
        throw Error(ErrorCode::DegenerateVector, msg.str());
      }
      values(i, j) = score;
      values(j, i) = score;
    }
  }
  return SimilarityMatrix(std::move(tasks), std::move(values));
}

double matrix_correlation(const SimilarityMatrix& a, const SimilarityMatrix& b,
                          MatrixCorrelationOptions options) {
  if (a.tasks() != b.tasks()) {
    throw Error(ErrorCode::TaskMismatch,
                "similarity matrices cover different task lists");
  }
  const std::size_t t = a.task_count();

  if (options.per_column) {
    double sum = 0.0;
    for (std::size_t j = 0; j < t; ++j) {
      std::vector<double> col_a, col_b;
      col_a.reserve(t - 1);
      col_b.reserve(t - 1);
      for (std::size_t i = 0; i < t; ++i) {
        if (i == j) continue;
        col_a.push_back(a.values()(i, j));
        col_b.push_back(b.values()(i, j));
      }
      sum += correlate(col_a, col_b, options.method);
    }
    return sum / static_cast<double>(t);
  }

  std::vector<double> flat_a, flat_b;
  flat_a.reserve(t * t);
  flat_b.reserve(t * t);
  for (std::size_t i = 0; i < t; ++i) {
    for (std::size_t j = 0; j < t; ++j) {
      if (options.drop_diagonal && i == j) continue;
      flat_a.push_back(a.values()(i, j));
      flat_b.push_back(b.values()(i, j));
    }
  }
  return correlate(flat_a, flat_b, options.method);
}

}  // namespace rsa
