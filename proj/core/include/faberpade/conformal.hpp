#pragma once

// Canonical compact sets E and their exterior conformal maps.
//
// Phi maps the exterior of E onto |w| > 1 with Phi(inf) = inf and
// Phi'(inf) = 1/cap(E) > 0; Psi is its inverse. Every supported set has Psi in
// Laurent form Psi(w) = cap*w + c0 + sum_k c_k w^-k, which is what the Faber
// machinery consumes.

#include <complex>
#include <string>
#include <variant>
#include <vector>

namespace faberpade {

using cplx = std::complex<double>;

struct Disk {
  cplx center;
  double radius;
};

/// Axis-aligned ellipse; semi_major is the half-axis along the real direction.
struct Ellipse {
  cplx center;
  double semi_major;
  double semi_minor;
};

struct Segment {
  cplx endpoint_a;
  cplx endpoint_b;
};

/// Generic set given by Psi(w) = cap*w + c0 + sum_{k>=1} tail[k-1] * w^-k.
struct LaurentMap {
  double cap;
  cplx c0;
  std::vector<cplx> tail;
};

class Domain {
 public:
  using Shape = std::variant<Disk, Ellipse, Segment, LaurentMap>;

  /// Validates the shape: positive sizes, a non-degenerate ellipse, a univalent
  /// Laurent map (sum k|c_k| <= cap), and 0 in E.
  explicit Domain(Shape shape);

  static Domain disk(cplx center, double radius) { return Domain(Disk{center, radius}); }
  static Domain ellipse(cplx center, double a, double b) { return Domain(Ellipse{center, a, b}); }
  static Domain segment(cplx a, cplx b) { return Domain(Segment{a, b}); }
  static Domain laurent(double cap, cplx c0, std::vector<cplx> tail) {
    return Domain(LaurentMap{cap, c0, std::move(tail)});
  }

  const Shape& shape() const { return shape_; }

  double capacity() const { return laurent_.cap; }
  /// Laurent form of Psi; for the closed-form families this is derived, not stored input.
  const LaurentMap& laurent_form() const { return laurent_; }

  /// Exterior map. Boundary points map to the unit circle; throws
  /// PointInsideDomain for points of the interior of E.
  cplx phi(cplx z) const;
  /// Inverse map; throws InsideUnitDisk when |w| <= 1.
  cplx psi(cplx w) const;
  /// Psi'(w) from the Laurent form.
  cplx psi_derivative(cplx w) const;
  /// Laurent form evaluated at any w != 0, without the |w| > 1 check.
  cplx psi_laurent(cplx w) const;

  /// |Phi(z)| for z outside E, and 1 for z in E.
  double level(cplx z) const;
  bool contains(cplx z) const;

  std::string describe() const;

 private:
  cplx phi_laurent_newton(cplx z) const;

  Shape shape_;
  LaurentMap laurent_;
};

struct ContourNode {
  double theta;
  cplx t;
};

/// Nodes t_k = Psi(rho e^{i theta_k}) on the level curve |Phi| = rho.
struct ContourSample {
  double rho;
  std::vector<ContourNode> nodes;

  int node_count() const { return static_cast<int>(nodes.size()); }
};

/// Equispaced-in-theta sample of Gamma_rho. node_count must be a power of two >= 8.
ContourSample sample_level_curve(const Domain& domain, double rho, int node_count);

bool is_power_of_two(int n);

}  // namespace faberpade
