#pragma once
// Exact oracle for system poles of rational systems with Gaussian-integer
// poles and coefficients, measured on the unit disk.
//
// With D = prod (z - p)^{T_p} over every pole p (T_p the largest order among
// the functions), a combination G = sum v_alpha F_alpha has the polynomial
// numerator N = D G. G has a pole of exact order t at xi iff
// ord_xi N = T_xi - t, and no pole at p iff ord_p N >= T_p. Each condition is
// a Taylor coefficient of N, linear in v, so feasibility is a rank comparison
// over Q(i) in exact arithmetic.
#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <random>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "faberpade/analysis.hpp"
#include "faberpade/funcsys.hpp"

namespace exact {

using rational = boost::multiprecision::cpp_rational;

struct gauss {
  rational re, im;
  bool is_zero() const { return re == 0 && im == 0; }
  friend gauss operator+(const gauss& a, const gauss& b) { return {a.re + b.re, a.im + b.im}; }
  friend gauss operator-(const gauss& a, const gauss& b) { return {a.re - b.re, a.im - b.im}; }
  friend gauss operator*(const gauss& a, const gauss& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend gauss operator/(const gauss& a, const gauss& b) {
    const rational n = b.re * b.re + b.im * b.im;
    return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
  }
};

struct lattice_point {
  int x, y;
  friend bool operator==(const lattice_point&, const lattice_point&) = default;
  int norm2() const { return x * x + y * y; }
  std::complex<double> value() const { return {double(x), double(y)}; }
};

struct exact_pole_term {
  lattice_point at;
  std::vector<lattice_point> laurent;  // coefficient of (z - at)^-(r+1)
};

struct rational_system {
  std::vector<std::vector<exact_pole_term>> functions;
  std::vector<int> m;
};

struct exact_pole {
  lattice_point xi;
  int tau;
  std::vector<double> rho;  // rho_{xi,t}; +inf when nothing blocks
};

using poly = std::vector<gauss>;  // ascending

inline poly mul_linear(const poly& p, const gauss& root) {
  poly out(p.size() + 1, gauss{});
  for (size_t i = 0; i < p.size(); ++i) {
    out[i + 1] = out[i + 1] + p[i];
    out[i] = out[i] - p[i] * root;
  }
  return out;
}

// Taylor coefficients of p at a, lowest first, by repeated synthetic division.
inline std::vector<gauss> taylor_at(poly p, const gauss& a, int count) {
  std::vector<gauss> out;
  for (int k = 0; k < count; ++k) {
    if (p.empty()) {
      out.push_back({});
      continue;
    }
    poly q(p.size() - 1, gauss{});
    gauss acc{};
    for (size_t i = p.size(); i-- > 0;) {
      acc = acc * a + p[i];
      if (i > 0) q[i - 1] = acc;
    }
    out.push_back(acc);
    p = std::move(q);
  }
  return out;
}

inline int rank(std::vector<std::vector<gauss>> a) {
  if (a.empty()) return 0;
  const size_t cols = a.front().size();
  int r = 0;
  for (size_t c = 0; c < cols && r < static_cast<int>(a.size()); ++c) {
    size_t piv = static_cast<size_t>(r);
    while (piv < a.size() && a[piv][c].is_zero()) ++piv;
    if (piv == a.size()) continue;
    std::swap(a[piv], a[static_cast<size_t>(r)]);
    for (size_t i = 0; i < a.size(); ++i) {
      if (i == static_cast<size_t>(r) || a[i][c].is_zero()) continue;
      const gauss f = a[i][c] / a[static_cast<size_t>(r)][c];
      for (size_t j = c; j < cols; ++j) a[i][j] = a[i][j] - f * a[static_cast<size_t>(r)][j];
    }
    ++r;
  }
  return r;
}

class oracle {
 public:
  explicit oracle(const rational_system& sys) {
    for (const auto& f : sys.functions)
      for (const exact_pole_term& p : f) {
        auto it = std::find(sites_.begin(), sites_.end(), p.at);
        const int order = static_cast<int>(p.laurent.size());
        if (it == sites_.end()) {
          sites_.push_back(p.at);
          top_.push_back(order);
        } else {
          int& t = top_[static_cast<size_t>(it - sites_.begin())];
          t = std::max(t, order);
        }
      }
    // numerator of each basis combination z^j F_alpha, Taylor-expanded at every site
    for (size_t a = 0; a < sys.functions.size(); ++a)
      for (int j = 0; j < sys.m[a]; ++j) {
        poly n;
        for (const exact_pole_term& p : sys.functions[a])
          for (size_t r = 0; r < p.laurent.size(); ++r) n = add(n, pole_numerator(p.at, static_cast<int>(r) + 1, p.laurent[r], j));
        std::vector<std::vector<gauss>> t;
        for (size_t s = 0; s < sites_.size(); ++s) t.push_back(taylor_at(n, to_gauss(sites_[s]), top_[s] + 1));
        taylor_.push_back(std::move(t));
      }
  }

  std::vector<exact_pole> poles() const {
    std::vector<exact_pole> out;
    for (size_t s = 0; s < sites_.size(); ++s) {
      std::vector<size_t> inner;
      std::vector<size_t> outer;
      for (size_t o = 0; o < sites_.size(); ++o) {
        if (o == s) continue;
        (sites_[o].norm2() <= sites_[s].norm2() ? inner : outer).push_back(o);
      }
      int tau = 0;
      while (tau < top_[s] && feasible(s, tau + 1, inner)) ++tau;
      if (tau == 0) continue;
      std::sort(outer.begin(), outer.end(),
                [&](size_t a, size_t b) { return sites_[a].norm2() < sites_[b].norm2(); });
      exact_pole p{sites_[s], tau, {}};
      for (int t = 1; t <= tau; ++t) {
        std::vector<size_t> cleared = inner;
        double rho = std::numeric_limits<double>::infinity();
        for (size_t i = 0; i < outer.size();) {
          size_t j = i;
          while (j < outer.size() && sites_[outer[j]].norm2() == sites_[outer[i]].norm2())
            cleared.push_back(outer[j++]);
          if (!feasible(s, t, cleared)) {
            rho = std::sqrt(double(sites_[outer[i]].norm2()));
            break;
          }
          i = j;
        }
        p.rho.push_back(rho);
      }
      out.push_back(std::move(p));
    }
    return out;
  }

 private:
  static gauss to_gauss(lattice_point p) { return {rational(p.x), rational(p.y)}; }

  static poly add(poly a, const poly& b) {
    if (a.size() < b.size()) a.resize(b.size(), gauss{});
    for (size_t i = 0; i < b.size(); ++i) a[i] = a[i] + b[i];
    return a;
  }

  // z^j c D / (z - at)^r
  poly pole_numerator(lattice_point at, int r, lattice_point c, int j) const {
    poly out(static_cast<size_t>(j) + 1, gauss{});
    out.back() = to_gauss(c);
    for (size_t s = 0; s < sites_.size(); ++s) {
      const int power = top_[s] - (sites_[s] == at ? r : 0);
      for (int k = 0; k < power; ++k) out = mul_linear(out, to_gauss(sites_[s]));
    }
    return out;
  }

  std::vector<gauss> row(size_t site, int index) const {
    std::vector<gauss> out;
    for (const auto& t : taylor_) out.push_back(t[site][static_cast<size_t>(index)]);
    return out;
  }

  // some v gives ord_xi N = T_xi - t and ord_p N >= T_p on `cleared`
  bool feasible(size_t xi, int t, const std::vector<size_t>& cleared) const {
    std::vector<std::vector<gauss>> a;
    for (const size_t c : cleared)
      for (int i = 0; i < top_[c]; ++i) a.push_back(row(c, i));
    for (int i = 0; i < top_[xi] - t; ++i) a.push_back(row(xi, i));
    const int base = rank(a);
    a.push_back(row(xi, top_[xi] - t));
    return rank(a) > base;
  }

  std::vector<lattice_point> sites_;
  std::vector<int> top_;
  std::vector<std::vector<std::vector<gauss>>> taylor_;
};

inline faberpade::FunctionSystem to_function_system(const rational_system& sys) {
  std::vector<faberpade::MeromorphicFunction> fs;
  for (const auto& f : sys.functions) {
    std::vector<faberpade::PoleTerm> terms;
    for (const exact_pole_term& p : f) {
      faberpade::PoleTerm t{p.at.value(), {}};
      for (const lattice_point& c : p.laurent) t.laurent.push_back(c.value());
      terms.push_back(std::move(t));
    }
    fs.emplace_back(std::move(terms));
  }
  return faberpade::FunctionSystem(std::move(fs));
}

// d <= 3 functions, poles drawn from a small shared pool on the integer grid
// {-2..2}^2 outside the unit disk, orders <= 2, m_alpha <= 2.
inline rational_system random_system(std::mt19937& rng) {
  std::vector<lattice_point> grid;
  for (int x = -2; x <= 2; ++x)
    for (int y = -2; y <= 2; ++y)
      if (x * x + y * y > 1) grid.push_back({x, y});
  auto uniform = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  auto coefficient = [&](bool nonzero) {
    lattice_point c{};
    do c = {uniform(-2, 2), uniform(-2, 2)};
    while (nonzero && c.norm2() == 0);
    return c;
  };

  std::shuffle(grid.begin(), grid.end(), rng);
  const std::vector<lattice_point> pool(grid.begin(), grid.begin() + uniform(1, 3));

  rational_system sys;
  const int d = uniform(1, 3);
  for (int a = 0; a < d; ++a) {
    std::vector<lattice_point> locations = pool;
    std::shuffle(locations.begin(), locations.end(), rng);
    locations.resize(static_cast<size_t>(uniform(1, static_cast<int>(locations.size()))));
    std::vector<exact_pole_term> f;
    for (const lattice_point& at : locations) {
      exact_pole_term p{at, {}};
      const int order = uniform(1, 2);
      for (int r = 1; r <= order; ++r) p.laurent.push_back(coefficient(r == order));
      f.push_back(std::move(p));
    }
    sys.functions.push_back(std::move(f));
    sys.m.push_back(uniform(1, 2));
  }
  return sys;
}

struct comparison {
  bool same = true;
  int computed_total = 0;
  int m_total = 0;
};

// Computed (xi, tau) against the oracle on Disk{0,1}; rho values must agree too.
inline comparison compare_with_oracle(const rational_system& sys) {
  const faberpade::Domain disk = faberpade::Domain::disk(0.0, 1.0);
  const faberpade::SystemMetadata md =
      faberpade::system_poles_rational(disk, to_function_system(sys), faberpade::MultiIndex(sys.m));
  const std::vector<exact_pole> want = oracle(sys).poles();
  comparison out;
  for (const int v : sys.m) out.m_total += v;
  out.computed_total = md.total_order();
  out.same = md.system_poles.size() == want.size();
  for (const exact_pole& w : want) {
    const auto it = std::find_if(md.system_poles.begin(), md.system_poles.end(),
                                 [&](const faberpade::SystemPole& p) { return p.xi == w.xi.value(); });
    if (it == md.system_poles.end() || it->tau != w.tau) {
      out.same = false;
      continue;
    }
    for (int t = 0; t < w.tau; ++t) {
      const double a = it->rho[static_cast<size_t>(t)];
      const double b = w.rho[static_cast<size_t>(t)];
      if (std::isinf(a) != std::isinf(b) || (std::isfinite(b) && std::abs(a - b) > 1e-12 * b))
        out.same = false;
    }
  }
  return out;
}

}  // namespace exact
