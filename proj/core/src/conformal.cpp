#include "faberpade/conformal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>

#include "faberpade/errors.hpp"

namespace faberpade {

namespace {

constexpr double kInsideTol = 1e-9;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

cplx larger_root(cplx a, cplx b) { return std::abs(a) >= std::abs(b) ? a : b; }

double distance_to_segment(cplx p, cplx a, cplx b) {
  const cplx ab = b - a;
  const double len2 = std::norm(ab);
  if (len2 == 0.0) return std::abs(p - a);
  double t = ((p - a) * std::conj(ab)).real() / len2;
  t = std::clamp(t, 0.0, 1.0);
  return std::abs(p - (a + t * ab));
}

LaurentMap laurent_of(const Domain::Shape& shape) {
  return std::visit(
      overloaded{
          [](const Disk& d) { return LaurentMap{d.radius, d.center, {}}; },
          [](const Ellipse& e) {
            return LaurentMap{(e.semi_major + e.semi_minor) / 2.0, e.center,
                              {cplx((e.semi_major - e.semi_minor) / 2.0)}};
          },
          [](const Segment& s) {
            const cplx h = (s.endpoint_b - s.endpoint_a) / 2.0;
            const double ah = std::abs(h);
            return LaurentMap{ah / 2.0, (s.endpoint_a + s.endpoint_b) / 2.0, {h * h / (2.0 * ah)}};
          },
          [](const LaurentMap& l) { return l; },
      },
      shape);
}

}  // namespace

Domain::Domain(Shape shape) : shape_(std::move(shape)) {
  std::visit(
      overloaded{
          [](const Disk& d) {
            if (!(d.radius > 0.0)) throw PreconditionError("disk radius must be positive");
            if (std::abs(d.center) > d.radius * (1.0 + 1e-12))
              throw PreconditionError("the point 0 must lie in the disk");
          },
          [](const Ellipse& e) {
            if (!(e.semi_major > 0.0) || !(e.semi_minor > 0.0))
              throw PreconditionError(
                  "ellipse semi-axes must be positive (use a segment for a degenerate ellipse)");
            const double x = -e.center.real() / e.semi_major;
            const double y = -e.center.imag() / e.semi_minor;
            if (x * x + y * y > 1.0 + 1e-12)
              throw PreconditionError("the point 0 must lie in the ellipse");
          },
          [](const Segment& s) {
            const double len = std::abs(s.endpoint_b - s.endpoint_a);
            if (!(len > 0.0)) throw PreconditionError("segment endpoints must differ");
            if (distance_to_segment(0.0, s.endpoint_a, s.endpoint_b) > 1e-12 * len)
              throw PreconditionError("the point 0 must lie on the segment");
          },
          [](const LaurentMap& l) {
            if (!(l.cap > 0.0)) throw PreconditionError("Laurent map capacity must be positive");
            double area = 0.0;
            for (size_t k = 0; k < l.tail.size(); ++k)
              area += static_cast<double>(k + 1) * std::abs(l.tail[k]);
            if (area > l.cap * (1.0 + 1e-12))
              throw PreconditionError(
                  "Laurent map is not guaranteed univalent: sum k|c_k| exceeds cap");
          },
      },
      shape_);
  laurent_ = laurent_of(shape_);

  if (std::holds_alternative<LaurentMap>(shape_)) {
    // 0 in E: the boundary curve winds once around 0, or passes through it.
    constexpr int samples = 4096;
    double winding = 0.0;
    double min_dist = std::numeric_limits<double>::infinity();
    cplx prev = psi_laurent(1.0);
    for (int k = 1; k <= samples; ++k) {
      const double theta = 2.0 * std::numbers::pi * k / samples;
      const cplx cur = psi_laurent(std::polar(1.0, theta));
      min_dist = std::min(min_dist, distance_to_segment(0.0, prev, cur));
      if (prev != cplx{} && cur != cplx{}) winding += std::arg(cur / prev);
      prev = cur;
    }
    const bool on_boundary = min_dist <= 1e-9 * laurent_.cap;
    const bool enclosed = std::abs(winding / (2.0 * std::numbers::pi) - 1.0) < 1e-3;
    if (!on_boundary && !enclosed)
      throw PreconditionError("the point 0 must lie in the set described by the Laurent map");
  }
}

cplx Domain::psi_laurent(cplx w) const {
  cplx tail{};
  cplx inv = 1.0 / w;
  cplx power = inv;
  for (const cplx c : laurent_.tail) {
    tail += c * power;
    power *= inv;
  }
  return laurent_.cap * w + laurent_.c0 + tail;
}

cplx Domain::psi_derivative(cplx w) const {
  cplx out = laurent_.cap;
  const cplx inv = 1.0 / w;
  cplx power = inv * inv;
  for (size_t k = 0; k < laurent_.tail.size(); ++k) {
    out -= static_cast<double>(k + 1) * laurent_.tail[k] * power;
    power *= inv;
  }
  return out;
}

cplx Domain::psi(cplx w) const {
  if (!(std::abs(w) > 1.0))
    throw InsideUnitDisk("psi is defined for |w| > 1 only");
  return psi_laurent(w);
}

namespace {

struct NewtonResult {
  cplx w;
  bool converged;
};

NewtonResult newton(const Domain& dom, cplx z, cplx w, int max_iter) {
  const LaurentMap& l = dom.laurent_form();
  double scale = std::max({1.0, std::abs(z), l.cap});
  const double target = 1e-13 * scale;
  double res = std::abs(dom.psi_laurent(w) - z);
  for (int it = 0; it < max_iter && res > target; ++it) {
    const cplx d = dom.psi_derivative(w);
    if (d == cplx{}) return {w, false};
    const cplx step = (dom.psi_laurent(w) - z) / d;
    double lambda = 1.0;
    bool accepted = false;
    for (int h = 0; h < 30; ++h) {
      const cplx trial = w - lambda * step;
      if (trial != cplx{}) {
        const double r = std::abs(dom.psi_laurent(trial) - z);
        if (r < res || r <= target) {
          w = trial;
          res = r;
          accepted = true;
          break;
        }
      }
      lambda *= 0.5;
    }
    if (!accepted) break;
  }
  return {w, res <= 1e-11 * scale};
}

}  // namespace

cplx Domain::phi_laurent_newton(cplx z) const {
  const LaurentMap& l = laurent_;
  NewtonResult direct = newton(*this, z, (z - l.c0) / l.cap, 50);
  if (direct.converged && std::abs(direct.w) >= 1.0 - kInsideTol) return direct.w;

  // Continuation inward along the ray from a far point through z.
  double reach = l.cap;
  for (const cplx c : l.tail) reach += std::abs(c);
  reach *= 4.0;
  const cplx offset = z - l.c0;
  const cplx dir = std::abs(offset) > 0.0 ? offset / std::abs(offset) : cplx(1.0);
  const cplx far = l.c0 + std::max(reach, 2.0 * std::abs(offset)) * dir;
  cplx w = (far - l.c0) / l.cap;
  constexpr int steps = 200;
  bool converged = true;
  for (int k = 0; k <= steps; ++k) {
    const cplx zk = far + (z - far) * (static_cast<double>(k) / steps);
    NewtonResult r = newton(*this, zk, w, 50);
    w = r.w;
    converged = r.converged;
  }
  if (!converged) throw NumericalError("exterior map inversion did not converge");
  if (std::abs(w) < 1.0 - kInsideTol)
    throw PointInsideDomain("point lies inside the compact set; Phi is undefined there");
  return w;
}

cplx Domain::phi(cplx z) const {
  auto check = [](cplx w) {
    if (std::abs(w) < 1.0 - kInsideTol)
      throw PointInsideDomain("point lies inside the compact set; Phi is undefined there");
    return w;
  };
  return std::visit(
      overloaded{
          [&](const Disk& d) { return check((z - d.center) / d.radius); },
          [&](const Ellipse& e) {
            const cplx zeta = z - e.center;
            const double focal2 = e.semi_major * e.semi_major - e.semi_minor * e.semi_minor;
            const cplx disc = std::sqrt(zeta * zeta - focal2);
            return check(larger_root(zeta + disc, zeta - disc) / (e.semi_major + e.semi_minor));
          },
          [&](const Segment& s) {
            const cplx h = (s.endpoint_b - s.endpoint_a) / 2.0;
            const cplx zeta = (z - (s.endpoint_a + s.endpoint_b) / 2.0) / h;
            const cplx disc = std::sqrt(zeta * zeta - 1.0);
            return check(larger_root(zeta + disc, zeta - disc) * (h / std::abs(h)));
          },
          [&](const LaurentMap&) { return phi_laurent_newton(z); },
      },
      shape_);
}

double Domain::level(cplx z) const {
  try {
    return std::max(1.0, std::abs(phi(z)));
  } catch (const PointInsideDomain&) {
    return 1.0;
  }
}

bool Domain::contains(cplx z) const {
  try {
    return std::abs(phi(z)) <= 1.0 + kInsideTol;
  } catch (const PointInsideDomain&) {
    return true;
  }
}

std::string Domain::describe() const {
  std::ostringstream os;
  os.precision(17);
  std::visit(overloaded{
                 [&](const Disk& d) { os << "disk " << d.center << " " << d.radius; },
                 [&](const Ellipse& e) {
                   os << "ellipse " << e.center << " " << e.semi_major << " " << e.semi_minor;
                 },
                 [&](const Segment& s) { os << "segment " << s.endpoint_a << " " << s.endpoint_b; },
                 [&](const LaurentMap& l) {
                   os << "laurent " << l.cap << " " << l.c0;
                   for (const cplx c : l.tail) os << " " << c;
                 },
             },
             shape_);
  return os.str();
}

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

ContourSample sample_level_curve(const Domain& domain, double rho, int node_count) {
  if (!(rho > 1.0)) throw BadRho("level-curve index rho must exceed 1");
  if (!is_power_of_two(node_count) || node_count < 8)
    throw PreconditionError("node_count must be a power of two >= 8");
  ContourSample out{rho, {}};
  out.nodes.reserve(static_cast<size_t>(node_count));
  for (int k = 0; k < node_count; ++k) {
    const double theta = 2.0 * std::numbers::pi * k / node_count;
    out.nodes.push_back({theta, domain.psi_laurent(std::polar(rho, theta))});
  }
  return out;
}

}  // namespace faberpade
