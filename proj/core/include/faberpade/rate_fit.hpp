#pragma once

#include <span>
#include <vector>

namespace faberpade {

/// Result of fitting err_n ~ C * rate^n.
struct RateFit {
  double rate = 0.0;        ///< exp(slope)
  double log_slope = 0.0;   ///< slope of log(err) against n
  double log_intercept = 0.0;
  std::vector<int> envelope;  ///< sample indices that carried the fit
  int dropped_zero = 0;       ///< exact zeros removed before fitting
  bool all_zero = false;      ///< every error <= 1e-15; rate reported as 0
};

/// Geometric-rate estimate used as a finite-n stand-in for limsup err_n^{1/n}.
///
/// Exact zeros are dropped. The samples from the largest error onwards are
/// reduced to their upper concave envelope in the (n, log err) plane and the
/// envelope vertices are fitted by least squares. Throws TooFewSamples when
/// fewer than 8 positive samples remain.
RateFit fit_geometric_rate(std::span<const double> n_values, std::span<const double> errors);

}  // namespace faberpade
