#include "faberpade/rate_fit.hpp"

#include <algorithm>
#include <cmath>

#include "faberpade/errors.hpp"

namespace faberpade {

namespace {

constexpr double kZeroFloor = 1e-15;
constexpr int kMinSamples = 8;

struct Point {
  double x;
  double y;
  int index;
};

double cross(const Point& o, const Point& a, const Point& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

// Upper hull of points sorted by x; collinear points are kept.
std::vector<Point> upper_hull(const std::vector<Point>& pts) {
  std::vector<Point> hull;
  for (const Point& p : pts) {
    while (hull.size() >= 2) {
      const double c = cross(hull[hull.size() - 2], hull.back(), p);
      const double tol = 1e-12 * (1.0 + std::abs(hull.back().y) + std::abs(p.y)) *
                         (p.x - hull[hull.size() - 2].x);
      if (c > tol) {
        hull.pop_back();
      } else {
        break;
      }
    }
    hull.push_back(p);
  }
  return hull;
}

}  // namespace

RateFit fit_geometric_rate(std::span<const double> n_values, std::span<const double> errors) {
  if (n_values.size() != errors.size())
    throw PreconditionError("fit_geometric_rate: n and error sequences differ in length");

  RateFit out;
  double max_err = 0.0;
  std::vector<Point> pts;
  for (size_t i = 0; i < errors.size(); ++i) {
    const double e = errors[i];
    if (!std::isfinite(e)) throw PreconditionError("fit_geometric_rate: non-finite error sample");
    max_err = std::max(max_err, e);
    if (e <= 0.0) {
      ++out.dropped_zero;
      continue;
    }
    pts.push_back({n_values[i], std::log(e), static_cast<int>(i)});
  }
  if (errors.size() >= static_cast<size_t>(kMinSamples) && max_err <= kZeroFloor) {
    out.all_zero = true;
    return out;
  }
  if (pts.size() < static_cast<size_t>(kMinSamples))
    throw TooFewSamples("fit_geometric_rate needs at least 8 positive error samples");

  std::sort(pts.begin(), pts.end(), [](const Point& a, const Point& b) { return a.x < b.x; });

  // Start at the largest error: earlier samples are pre-asymptotic.
  auto peak = std::max_element(pts.begin(), pts.end(),
                               [](const Point& a, const Point& b) { return a.y < b.y; });
  std::vector<Point> tail(peak, pts.end());
  if (tail.size() < 2) tail = pts;

  const std::vector<Point> hull = upper_hull(tail);
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const Point& p : hull) {
    sx += p.x;
    sy += p.y;
    sxx += p.x * p.x;
    sxy += p.x * p.y;
    out.envelope.push_back(p.index);
  }
  const double k = static_cast<double>(hull.size());
  const double denom = k * sxx - sx * sx;
  out.log_slope = denom != 0.0 ? (k * sxy - sx * sy) / denom : 0.0;
  out.log_intercept = (sy - out.log_slope * sx) / k;
  out.rate = std::exp(out.log_slope);
  return out;
}

}  // namespace faberpade
