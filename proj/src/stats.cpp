#include "rsa/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace rsa {

namespace {

void check_finite(std::span<const double> x, const char* label) {
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!std::isfinite(x[i])) {
      std::ostringstream msg;
      msg << "non-finite value in " << label << " at index " << i;
      throw Error(ErrorCode::NonFinite, msg.str());
    }
  }
}

double mean_of(std::span<const double> x) {
  double sum = 0.0;
  for (double v : x) sum += v;
  return sum / static_cast<double>(x.size());
}

}  // namespace

bool is_degenerate(std::span<const double> x) {
  const double m = mean_of(x);
  double ss_dev = 0.0;
  double ss_raw = 0.0;
  for (double v : x) {
    const double d = v - m;
    ss_dev += d * d;
    ss_raw += v * v;
  }
  const double n = static_cast<double>(x.size());
  const double variance = ss_dev / n;
  const double mean_square = ss_raw / n;
  return variance < kRelativeVarianceTolerance * mean_square ||
         variance < kAbsoluteVarianceFloor;
}

double pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) {
    std::ostringstream msg;
    msg << "pearson length mismatch: " << x.size() << " vs " << y.size();
    throw Error(ErrorCode::LengthMismatch, msg.str());
  }
  if (x.size() < 2) {
    throw Error(ErrorCode::LengthMismatch,
                "pearson needs vectors of length >= 2");
  }
  check_finite(x, "x");
  check_finite(y, "y");
  if (is_degenerate(x)) {
    throw Error(ErrorCode::DegenerateVector, "x has zero variance");
  }
  if (is_degenerate(y)) {
    throw Error(ErrorCode::DegenerateVector, "y has zero variance");
  }

  const double mx = mean_of(x);
  const double my = mean_of(y);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  const double r = sxy / std::sqrt(sxx * syy);
  return std::clamp(r, -1.0, 1.0);
}

RankVector rank_average_ties(std::span<const double> x) {
  if (x.empty()) {
    throw Error(ErrorCode::LengthMismatch, "cannot rank an empty vector");
  }
  check_finite(x, "x");

  std::vector<std::size_t> order(x.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&x](std::size_t a, std::size_t b) { return x[a] < x[b]; });

  RankVector result;
  result.ranks.resize(x.size());
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    while (j + 1 < order.size() && x[order[j + 1]] == x[order[i]]) ++j;
    // Sorted positions i..j (0-based) share the average rank.
    const double rank = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) result.ranks[order[k]] = rank;
    if (j > i) result.had_ties = true;
    i = j + 1;
  }
  return result;
}

double spearman(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) {
    std::ostringstream msg;
    msg << "spearman length mismatch: " << x.size() << " vs " << y.size();
    throw Error(ErrorCode::LengthMismatch, msg.str());
  }
  if (x.size() < 3) {
    throw Error(ErrorCode::LengthMismatch,
                "spearman needs vectors of length >= 3");
  }
  const RankVector rx = rank_average_ties(x);
  const RankVector ry = rank_average_ties(y);

  if (!rx.had_ties && !ry.had_ties) {
    const double n = static_cast<double>(x.size());
    double sum_d2 = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double d = rx.ranks[i] - ry.ranks[i];
      sum_d2 += d * d;
    }
    const double r = 1.0 - 6.0 * sum_d2 / (n * (n * n - 1.0));
    return std::clamp(r, -1.0, 1.0);
  }
  return pearson(rx.ranks, ry.ranks);
}

}  // namespace rsa
