#pragma once

#include <span>
#include <vector>

#include "rsa/core.hpp"

namespace rsa {

/// A vector is degenerate when its variance falls below this fraction of its
/// mean square magnitude, or below the absolute floor.
inline constexpr double kRelativeVarianceTolerance = 1e-12;
inline constexpr double kAbsoluteVarianceFloor = 1e-300;

/// Ascending ranks 1..n; tied values share the mean of the ranks they span.
struct RankVector {
  std::vector<double> ranks;
  bool had_ties = false;
};

/// True if `x` has (numerically) zero variance.
bool is_degenerate(std::span<const double> x);

/// Sample Pearson correlation, clamped to [-1, 1] to absorb rounding.
/// Throws LengthMismatch for unequal lengths, DegenerateVector when either
/// input has no variance, NonFinite for NaN/Inf entries.
double pearson(std::span<const double> x, std::span<const double> y);

/// Average-rank ranking of `x`; element order is preserved.
RankVector rank_average_ties(std::span<const double> x);

/// Spearman rank correlation. Tie-free inputs use the closed form
/// 1 - 6*sum(d^2)/(n(n^2-1)); inputs with ties fall back to Pearson on
/// average ranks. Requires length >= 3.
double spearman(std::span<const double> x, std::span<const double> y);

}  // namespace rsa
