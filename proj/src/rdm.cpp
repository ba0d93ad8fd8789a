#include "rsa/rdm.hpp"

#include <algorithm>
#include <cmath>

#include "rsa/stats.hpp"

namespace rsa {

RDM compute_rdm(const FeatureMatrix& features, DegeneratePolicy policy) {
  const std::size_t n_c = features.condition_count();
  const std::size_t n_f = features.feature_count();
  const Matrix& data = features.data();

  std::vector<char> degenerate(n_c, 0);
  std::vector<std::string> degenerate_ids;
  for (std::size_t i = 0; i < n_c; ++i) {
    if (is_degenerate(data.row(i))) {
      if (policy == DegeneratePolicy::Error) {
        throw Error(ErrorCode::DegenerateVector,
                    "condition '" + features.conditions()[i] +
                        "' has a constant feature row");
      }
      degenerate[i] = 1;
      degenerate_ids.push_back(features.conditions()[i]);
    }
  }

  // Center each row once; a pair's correlation is then one inner product
  // over the centered rows, normalized by the precomputed sums of squared
  // deviations. Accumulation order matches the scalar pearson kernel, so the
  // entries agree with the per-pair definition bit for bit (forced rho = +-1
  // cases land exactly on 0 and 2).
  Matrix centered(n_c, n_f);
  std::vector<double> sum_sq_dev(n_c, 0.0);
  for (std::size_t i = 0; i < n_c; ++i) {
    if (degenerate[i]) continue;
    const auto src = data.row(i);
    double mean = 0.0;
    for (double v : src) mean += v;
    mean /= static_cast<double>(n_f);
    auto dst = centered.row(i);
    double ss = 0.0;
    for (std::size_t k = 0; k < n_f; ++k) {
      dst[k] = src[k] - mean;
      ss += dst[k] * dst[k];
    }
    sum_sq_dev[i] = ss;
  }

  Matrix values(n_c, n_c, 0.0);
  for (std::size_t i = 1; i < n_c; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      double dissimilarity;
      if (degenerate[i] || degenerate[j]) {
        dissimilarity = 1.0;
      } else {
        const auto di = centered.row(i);
        const auto dj = centered.row(j);
        double cross = 0.0;
        for (std::size_t k = 0; k < n_f; ++k) cross += di[k] * dj[k];
        const double rho = std::clamp(
            cross / std::sqrt(sum_sq_dev[i] * sum_sq_dev[j]), -1.0, 1.0);
        dissimilarity = 1.0 - rho;
      }
      values(i, j) = dissimilarity;
      values(j, i) = dissimilarity;
    }
  }

  return RDM(features.task(), features.conditions(), std::move(values),
             std::move(degenerate_ids));
}

std::vector<double> lower_triangle(const RDM& rdm) {
  const std::size_t n = rdm.condition_count();
  std::vector<double> out;
  out.reserve(n * (n - 1) / 2);
  for (std::size_t i = 1; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      out.push_back(rdm.values()(i, j));
    }
  }
  return out;
}

}  // namespace rsa
