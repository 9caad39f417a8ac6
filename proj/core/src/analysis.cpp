#include "faberpade/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <numeric>
#include <thread>

#include <Eigen/Eigenvalues>

#include "faberpade/errors.hpp"

namespace faberpade {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kRankTol = 1e-9;
constexpr double kOrderTol = 1e-12;
constexpr double kLevelTol = 1e-12;

bool same_level(double a, double b) { return std::abs(a - b) <= kLevelTol * std::max(a, b); }

double binom(int n, int k) {
  double out = 1.0;
  for (int i = 1; i <= k; ++i) out = out * (n - k + i) / i;
  return out;
}

struct Site {
  cplx location;
  double level;
  int max_order;
};

// coefficient of (z - zeta)^-r in sum v_alpha F_alpha, as a linear functional
// on the stacked coefficient vector of the v_alpha
Eigen::RowVectorXcd principal_row(const FunctionSystem& system, const MultiIndex& m, cplx zeta,
                                  int r) {
  Eigen::RowVectorXcd out = Eigen::RowVectorXcd::Zero(m.total());
  int offset = 0;
  for (int alpha = 0; alpha < m.size(); ++alpha) {
    for (const PoleTerm& p : system[alpha].poles()) {
      if (p.location != zeta) continue;
      for (int i = 0; i < m[alpha]; ++i) {
        cplx acc{};
        for (int l = 0; l <= i && r + l <= p.order(); ++l)
          acc += binom(i, l) * std::pow(zeta, i - l) * p.laurent[static_cast<size_t>(r + l - 1)];
        out(offset + i) = acc;
      }
    }
    offset += m[alpha];
  }
  return out;
}

// Principal-part coefficients of the combinations sum v_alpha F_alpha, as
// linear functionals on the stacked coefficient vector of the v_alpha.
class PrincipalMap {
 public:
  PrincipalMap(const Domain& domain, const FunctionSystem& system, const MultiIndex& m)
      : system_(system), m_(m) {
    for (const auto& f : system.functions()) {
      for (const PoleTerm& p : f.poles()) {
        auto it = std::find_if(sites_.begin(), sites_.end(),
                               [&](const Site& s) { return s.location == p.location; });
        if (it == sites_.end())
          sites_.push_back({p.location, domain.level(p.location), p.order()});
        else
          it->max_order = std::max(it->max_order, p.order());
      }
    }
    std::stable_sort(sites_.begin(), sites_.end(),
                     [](const Site& a, const Site& b) { return a.level < b.level; });
  }

  const std::vector<Site>& sites() const { return sites_; }
  int dim() const { return m_.total(); }

  Eigen::RowVectorXcd row(cplx zeta, int r) const { return principal_row(system_, m_, zeta, r); }

  // Orthonormal basis of the common kernel of the given rows.
  Eigen::MatrixXcd kernel(const std::vector<Eigen::RowVectorXcd>& rows) const {
    std::vector<Eigen::RowVectorXcd> kept;
    for (const auto& r : rows)
      if (r.norm() > 0.0) kept.push_back(r / r.norm());
    if (kept.empty()) return Eigen::MatrixXcd::Identity(dim(), dim());
    Eigen::MatrixXcd a(static_cast<Eigen::Index>(kept.size()), dim());
    for (size_t i = 0; i < kept.size(); ++i) a.row(static_cast<Eigen::Index>(i)) = kept[i];
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a, Eigen::ComputeFullV);
    const Eigen::VectorXd sv = svd.singularValues();
    int rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
      if (sv(i) > kRankTol * sv(0)) ++rank;
    return svd.matrixV().rightCols(dim() - rank);
  }

  // Exists a combination with a pole of exact order t at xi and no pole at the
  // sites in `cleared`?
  bool feasible(const Site& xi, int t, const std::vector<const Site*>& cleared) const {
    std::vector<Eigen::RowVectorXcd> rows;
    for (const Site* s : cleared)
      for (int r = 1; r <= s->max_order; ++r) rows.push_back(row(s->location, r));
    for (int r = t + 1; r <= xi.max_order; ++r) rows.push_back(row(xi.location, r));
    const Eigen::RowVectorXcd target = row(xi.location, t);
    const double scale = target.norm();
    if (scale == 0.0) return false;
    const Eigen::MatrixXcd n = kernel(rows);
    if (n.cols() == 0) return false;
    return (target * n).norm() >= kOrderTol * scale;
  }

 private:
  const FunctionSystem& system_;
  const MultiIndex& m_;
  std::vector<Site> sites_;
};

void require_rational(const FunctionSystem& system) {
  if (!system.is_rational())
    throw NonRationalSystem("operation needs a rational system (no exp, log or power tail)");
}

// rho_alpha and rho*_alpha from the system-pole table.
void finish_metadata(const Domain& domain, const FunctionSystem& system, SystemMetadata& md) {
  std::vector<cplx> roots;
  md.predicted_rate = 0.0;
  for (SystemPole& p : md.system_poles) {
    p.bold_rho.clear();
    double running = kInf;
    for (const double r : p.rho) {
      running = std::min(running, r);
      p.bold_rho.push_back(running);
    }
    for (int t = 0; t < p.tau; ++t) roots.push_back(p.xi);
    if (std::isfinite(p.bold())) md.predicted_rate = std::max(md.predicted_rate, domain.level(p.xi) / p.bold());
  }
  md.predicted_factored = FactoredPoly{roots, ComplexPoly::constant(1.0)};
  md.predicted_Q = md.predicted_factored.expanded();

  md.rho_alpha.clear();
  md.rho_star.clear();
  for (const auto& f : system.functions()) {
    double rho = kInf;
    for (const PoleTerm& term : f.poles()) {
      const auto it = std::find_if(md.system_poles.begin(), md.system_poles.end(),
                                   [&](const SystemPole& p) { return p.xi == term.location; });
      if (it == md.system_poles.end() || it->tau < term.order())
        rho = std::min(rho, domain.level(term.location));
    }
    if (f.has_branch_point()) {
      const std::vector<cplx> s = f.singularities();
      rho = std::min(rho, domain.level(s.back()));
    }
    double star = rho;
    for (const PoleTerm& term : f.poles()) {
      if (domain.level(term.location) >= rho) continue;
      const auto it = std::find_if(md.system_poles.begin(), md.system_poles.end(),
                                   [&](const SystemPole& p) { return p.xi == term.location; });
      star = std::min(star, it->bold_rho[static_cast<size_t>(term.order() - 1)]);
    }
    md.rho_alpha.push_back(rho);
    md.rho_star.push_back(star);
  }
}

double max_abs(std::span<const cplx> v) {
  double out = 0.0;
  for (const cplx c : v) out = std::max(out, std::abs(c));
  return out;
}

}  // namespace

std::vector<cplx> poly_roots(const ComplexPoly& p) {
  const int deg = p.degree();
  if (deg < 1) throw ZeroPolynomial("poly_roots needs degree >= 1");
  std::vector<cplx> roots;
  if (deg == 1) {
    roots.push_back(-p[0] / p[1]);
  } else {
    Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(deg, deg);
    const cplx lead = p.leading();
    for (int i = 1; i < deg; ++i) c(i, i - 1) = 1.0;
    for (int i = 0; i < deg; ++i) c(i, deg - 1) = -p[i] / lead;
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(c, false);
    const Eigen::VectorXcd ev = es.eigenvalues();
    const ComplexPoly dp = p.derivative();
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
      cplx r = ev(i);
      const cplx d = dp(r);
      if (d != cplx{}) {
        const cplx cand = r - p(r) / d;
        if (std::isfinite(cand.real()) && std::isfinite(cand.imag()) && std::abs(p(cand)) <= std::abs(p(r)))
          r = cand;
      }
      roots.push_back(r);
    }
  }
  std::sort(roots.begin(), roots.end(), [](cplx a, cplx b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  return roots;
}

int SystemMetadata::total_order() const {
  int out = 0;
  for (const auto& p : system_poles) out += p.tau;
  return out;
}

SystemMetadata system_poles_rational(const Domain& domain, const FunctionSystem& system,
                                     const MultiIndex& m) {
  require_rational(system);
  if (system.size() != m.size()) throw PreconditionError("multi-index length must match the system");
  const PrincipalMap map(domain, system, m);
  const auto& sites = map.sites();

  SystemMetadata md;
  md.provenance = Provenance::ComputedRational;
  for (const Site& xi : sites) {
    std::vector<const Site*> inner;
    std::vector<const Site*> outer;
    for (const Site& s : sites) {
      if (&s == &xi) continue;
      if (s.level <= xi.level * (1.0 + kLevelTol)) inner.push_back(&s);
      else outer.push_back(&s);
    }
    int tau = 0;
    while (tau < xi.max_order && map.feasible(xi, tau + 1, inner)) ++tau;
    if (tau == 0) continue;

    SystemPole pole{xi.location, tau, {}, {}};
    for (int t = 1; t <= tau; ++t) {
      std::vector<const Site*> cleared = inner;
      double rho = kInf;
      size_t i = 0;
      while (i < outer.size()) {
        size_t j = i;
        std::vector<const Site*> next = cleared;
        while (j < outer.size() && same_level(outer[j]->level, outer[i]->level)) next.push_back(outer[j++]);
        if (!map.feasible(xi, t, next)) {
          rho = outer[i]->level;
          break;
        }
        cleared = std::move(next);
        i = j;
      }
      pole.rho.push_back(rho);
    }
    md.system_poles.push_back(std::move(pole));
  }
  finish_metadata(domain, system, md);
  return md;
}

SystemMetadata declared_metadata(const Domain& domain, const FunctionSystem& system,
                                 const MultiIndex& m, std::span<const PoleDeclaration> declarations) {
  if (system.size() != m.size()) throw PreconditionError("multi-index length must match the system");
  SystemMetadata md;
  md.provenance = Provenance::DeclaredCatalog;
  int total = 0;
  for (const PoleDeclaration& d : declarations) {
    std::optional<cplx> match;
    for (const auto& f : system.functions())
      for (const PoleTerm& p : f.poles())
        if (std::abs(p.location - d.xi) <= 1e-12 * (1.0 + std::abs(d.xi))) match = p.location;
    if (!match) throw InconsistentDeclaration("declared system pole is not a pole of any function");
    const cplx xi = *match;
    for (const auto& p : md.system_poles)
      if (p.xi == xi) throw InconsistentDeclaration("system pole declared twice");
    if (domain.contains(xi) || domain.level(xi) <= 1.0)
      throw InconsistentDeclaration("declared system pole lies in the compact set");
    if (d.tau < 1) throw InconsistentDeclaration("declared order must be >= 1");
    if (static_cast<int>(d.rho.size()) != d.tau)
      throw InconsistentDeclaration("need one rho value per order t = 1..tau");
    const double level = domain.level(xi);
    for (const double r : d.rho)
      if (!(r > level))
        throw InconsistentDeclaration(
            "declared rho must exceed |Phi(xi)|: the pole has to lie inside its own meromorphy domain");
    total += d.tau;
    md.system_poles.push_back({xi, d.tau, d.rho, {}});
  }
  if (total > m.total()) throw InconsistentDeclaration("declared orders exceed |m|");
  std::stable_sort(md.system_poles.begin(), md.system_poles.end(),
                   [&](const SystemPole& a, const SystemPole& b) {
                     return domain.level(a.xi) < domain.level(b.xi);
                   });
  finish_metadata(domain, system, md);
  return md;
}

IndependenceResult polynomial_independence(const FunctionSystem& system, const MultiIndex& m) {
  require_rational(system);
  if (system.size() != m.size()) throw PreconditionError("multi-index length must match the system");
  std::vector<Eigen::RowVectorXcd> rows;
  std::vector<cplx> locations;
  std::vector<int> orders;
  for (const auto& f : system.functions())
    for (const PoleTerm& p : f.poles()) {
      auto it = std::find(locations.begin(), locations.end(), p.location);
      if (it == locations.end()) {
        locations.push_back(p.location);
        orders.push_back(p.order());
      } else {
        int& o = orders[static_cast<size_t>(it - locations.begin())];
        o = std::max(o, p.order());
      }
    }
  const int dim = m.total();
  for (size_t s = 0; s < locations.size(); ++s)
    for (int r = 1; r <= orders[s]; ++r) {
      Eigen::RowVectorXcd v = principal_row(system, m, locations[s], r);
      if (v.norm() > 0.0) rows.push_back(v / v.norm());
    }

  Eigen::VectorXcd witness;
  IndependenceResult out;
  if (rows.empty()) {
    out.independent = false;
    witness = Eigen::VectorXcd::Zero(dim);
    witness(0) = 1.0;
  } else {
    Eigen::MatrixXcd a(static_cast<Eigen::Index>(rows.size()), dim);
    for (size_t i = 0; i < rows.size(); ++i) a.row(static_cast<Eigen::Index>(i)) = rows[i];
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a, Eigen::ComputeFullV);
    const Eigen::VectorXd sv = svd.singularValues();
    int rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
      if (sv(i) > kRankTol * sv(0)) ++rank;
    if (rank == dim) return out;
    out.independent = false;
    witness = svd.matrixV().col(dim - 1);
  }
  const double top = witness.cwiseAbs().maxCoeff();
  Eigen::Index first = 0;
  while (std::abs(witness(first)) <= 1e-12 * top) ++first;
  witness /= witness(first);
  for (Eigen::Index i = 0; i < witness.size(); ++i)
    if (std::abs(witness(i)) <= 1e-14) witness(i) = 0.0;
  int offset = 0;
  for (int alpha = 0; alpha < m.size(); ++alpha) {
    out.witness.emplace_back(std::vector<cplx>(witness.data() + offset, witness.data() + offset + m[alpha]));
    offset += m[alpha];
  }
  return out;
}

std::vector<int> n_range(int n_min, int n_max, int n_step) {
  if (n_min < 1 || n_step < 1 || n_max < n_min)
    throw PreconditionError("n range needs 1 <= n_min <= n_max and n_step >= 1");
  std::vector<int> out;
  for (int n = n_min; n <= n_max; n += n_step) out.push_back(n);
  return out;
}

std::vector<RootPath> track_roots(std::span<const cplx> starts, std::span<const std::string> labels,
                                  std::span<const DenominatorRecord> records) {
  std::vector<RootPath> paths;
  for (size_t i = 0; i < starts.size(); ++i)
    paths.push_back({i < labels.size() ? labels[i] : "r" + std::to_string(i + 1), starts[i], {}});
  std::vector<cplx> current(starts.begin(), starts.end());
  for (const DenominatorRecord& rec : records) {
    const auto& roots = rec.roots;
    if (roots.empty() || current.empty()) continue;
    std::vector<int> assign(current.size(), -1);
    if (roots.size() == current.size() && roots.size() <= 8) {
      std::vector<int> perm(roots.size());
      std::iota(perm.begin(), perm.end(), 0);
      double best = kInf;
      do {
        double cost = 0.0;
        for (size_t i = 0; i < perm.size(); ++i) cost += std::abs(roots[static_cast<size_t>(perm[i])] - current[i]);
        if (cost < best) {
          best = cost;
          assign = perm;
        }
      } while (std::next_permutation(perm.begin(), perm.end()));
    } else {
      std::vector<bool> used(roots.size(), false);
      for (size_t i = 0; i < current.size(); ++i) {
        double best = kInf;
        for (size_t j = 0; j < roots.size(); ++j) {
          const double d = std::abs(roots[j] - current[i]);
          if (!used[j] && d < best) {
            best = d;
            assign[i] = static_cast<int>(j);
          }
        }
        if (assign[i] >= 0) used[static_cast<size_t>(assign[i])] = true;
      }
    }
    for (size_t i = 0; i < current.size(); ++i) {
      if (assign[i] < 0) continue;
      current[i] = roots[static_cast<size_t>(assign[i])];
      paths[i].points.emplace_back(rec.n, current[i]);
    }
  }
  return paths;
}

void parallel_for(int count, const std::function<void(int)>& body) {
  if (count <= 0) return;
  const int workers =
      std::min<int>(count, std::max(1u, std::thread::hardware_concurrency()));
  if (workers == 1) {
    for (int i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> threads;
  for (int w = 0; w < workers; ++w) {
    threads.emplace_back([&] {
      for (int i = next++; i < count; i = next++) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (auto& t : threads) t.join();
  if (error) std::rethrow_exception(error);
}

RateReport run_direct_experiment(const Domain& domain, const FunctionSystem& system,
                                 const MultiIndex& m, const SystemMetadata& metadata,
                                 std::span<const int> n_values, const DirectOptions& options) {
  if (metadata.total_order() != m.total())
    throw HypothesisViolation("direct experiment needs exactly |m| = " + std::to_string(m.total()) +
                              " system poles counted with order; found " +
                              std::to_string(metadata.total_order()));
  if (n_values.empty()) throw PreconditionError("empty n range");
  const int n_max = *std::max_element(n_values.begin(), n_values.end());
  const bool with_sup = !options.compact_points.empty();
  const SystemExpansion ex(domain, system, m, n_max + 1 + (with_sup ? options.remainder_terms : 0),
                           options.quad);
  const FactoredPoly& base = metadata.predicted_factored;
  const size_t count = n_values.size();

  RateReport out;
  out.n_values.assign(n_values.begin(), n_values.end());
  out.errors.resize(count);
  out.plain_errors.resize(count);
  out.denominators.resize(count);
  if (with_sup) out.sup_errors.resize(count);

  parallel_for(static_cast<int>(count), [&](int i) {
    const int n = n_values[static_cast<size_t>(i)];
    const PadeFaberResult plain = simultaneous_pade_faber(ex, n, false);
    const DeflatedSolution defl = deflated_denominator(ex, n, base);
    DenominatorRecord& rec = out.denominators[static_cast<size_t>(i)];
    rec.n = n;
    rec.unique = plain.unique;
    rec.normalization = Normalization::Monic;
    rec.q = defl.denominator;
    rec.roots = poly_roots(defl.denominator);
    out.errors[static_cast<size_t>(i)] = defl.delta_norm;
    out.plain_errors[static_cast<size_t>(i)] = distance(plain.denominator, metadata.predicted_Q);
    if (with_sup)
      out.sup_errors[static_cast<size_t>(i)] = remainder_sup_error(
          ex, n, base, defl.delta, options.alpha, options.k, options.compact_points);
  });

  const std::vector<double> ns(n_values.begin(), n_values.end());
  out.fit = fit_geometric_rate(ns, out.errors);
  out.fitted_rate = out.fit.all_zero ? 0.0 : out.fit.rate;
  out.theta_estimate = out.fitted_rate;
  out.predicted_rate = metadata.predicted_rate;
  out.converged = out.fit.all_zero || out.fit.rate < 1.0;
  if (with_sup) {
    out.sup_fit = fit_geometric_rate(ns, out.sup_errors);
    double phi_k = 1.0;
    for (const cplx z : options.compact_points) phi_k = std::max(phi_k, domain.level(z));
    out.sup_bound = phi_k / metadata.rho_star.at(static_cast<size_t>(options.alpha));
  }

  std::vector<cplx> targets;
  std::vector<std::string> labels;
  for (const SystemPole& p : metadata.system_poles)
    for (int t = 0; t < p.tau; ++t) {
      targets.push_back(p.xi);
      labels.push_back("pole" + std::to_string(targets.size()));
    }
  out.root_paths = track_roots(targets, labels, out.denominators);
  return out;
}

InverseVerdict run_inverse_experiment(const Domain& domain, const FunctionSystem& system,
                                      const MultiIndex& m, std::span<const int> n_values,
                                      const QuadratureSettings& quad, double tol) {
  if (n_values.empty()) throw PreconditionError("empty n range");
  const int n_max = *std::max_element(n_values.begin(), n_values.end());
  const SystemExpansion ex(domain, system, m, n_max + 1, quad);
  const size_t count = n_values.size();

  InverseVerdict out;
  out.denominators.resize(count);
  parallel_for(static_cast<int>(count), [&](int i) {
    const int n = n_values[static_cast<size_t>(i)];
    const PadeFaberResult r = simultaneous_pade_faber(ex, n, false);
    DenominatorRecord& rec = out.denominators[static_cast<size_t>(i)];
    rec.n = n;
    rec.unique = r.unique;
    rec.normalization = r.normalization;
    rec.q = r.denominator;
    if (r.denominator.degree() >= 1) rec.roots = poly_roots(r.denominator);
  });
  if (!out.denominators.front().roots.empty()) {
    const auto& first = out.denominators.front().roots;
    out.root_paths = track_roots(first, {}, out.denominators);
  }

  size_t start = count;
  while (start > 0 && out.denominators[start - 1].unique) --start;
  if (count - start < 5) {
    out.reason = "solutions are not unique for all large n";
    return out;
  }
  out.n0 = out.denominators[start].n;
  const DenominatorRecord& last = out.denominators.back();
  if (last.normalization != Normalization::Monic || last.q.degree() != m.total()) {
    out.reason = "last denominator does not have full degree";
    return out;
  }

  const FactoredPoly base = FactoredPoly::plain(last.q);
  const size_t run = count - start;
  std::vector<std::vector<cplx>> delta(run);
  parallel_for(static_cast<int>(run), [&](int i) {
    delta[static_cast<size_t>(i)] =
        deflated_denominator(ex, out.denominators[start + static_cast<size_t>(i)].n, base).delta;
  });
  const size_t quarter = std::max<size_t>(1, run / 4);
  std::vector<cplx> mean(static_cast<size_t>(m.total()));
  for (size_t i = run - quarter; i < run; ++i)
    for (size_t j = 0; j < mean.size(); ++j) mean[j] += delta[i][j] / static_cast<double>(quarter);
  out.limit_Q = last.q + ComplexPoly(mean);
  if (out.limit_Q.degree() >= 1) out.limit_roots = poly_roots(out.limit_Q);

  std::vector<double> ns;
  for (size_t i = 0; i < run - quarter; ++i) {
    std::vector<cplx> diff(mean.size());
    for (size_t j = 0; j < mean.size(); ++j) diff[j] = delta[i][j] - mean[j];
    out.fit_n.push_back(out.denominators[start + i].n);
    ns.push_back(out.fit_n.back());
    out.fit_errors.push_back(max_abs(diff));
  }
  RateFit fit;
  try {
    fit = fit_geometric_rate(ns, out.fit_errors);
  } catch (const TooFewSamples&) {
    out.reason = "too few stable solves to estimate a rate";
    return out;
  }
  out.theta = fit.all_zero ? 0.0 : fit.rate;
  out.converged = out.theta < 1.0 - tol && out.limit_Q.degree() == m.total();
  out.pole_count = out.converged ? m.total() : 0;
  out.reason = out.converged ? "geometric convergence of the denominators"
                             : "denominators do not converge geometrically";
  return out;
}

double meromorphy_index(const Domain& domain, const MeromorphicFunction& f, int count) {
  struct Item {
    double level;
    int order;  // 0 marks a non-pole singularity
  };
  std::vector<Item> items;
  for (const PoleTerm& p : f.poles()) items.push_back({domain.level(p.location), p.order()});
  if (f.has_branch_point()) items.push_back({domain.level(f.singularities().back()), 0});
  std::sort(items.begin(), items.end(), [](const Item& a, const Item& b) { return a.level < b.level; });
  int seen = 0;
  size_t i = 0;
  while (i < items.size()) {
    size_t j = i;
    bool blocked = false;
    while (j < items.size() && same_level(items[j].level, items[i].level)) {
      if (items[j].order == 0) blocked = true;
      seen += items[j].order;
      ++j;
    }
    if (blocked || seen > count) return items[i].level;
    i = j;
  }
  return kInf;
}

IncompleteReport run_incomplete_experiment(const Domain& domain, const MeromorphicFunction& f,
                                           int m, int m_star, std::span<const int> n_values,
                                           const QuadratureSettings& quad) {
  if (m_star < 1 || m_star > m) throw PreconditionError("incomplete approximant needs m >= m_star >= 1");
  if (n_values.empty()) throw PreconditionError("empty n range");
  const int n_max = *std::max_element(n_values.begin(), n_values.end());
  const FunctionExpansion fe(domain, f, m + m_star - 1, n_max + 1, quad);
  const size_t count = n_values.size();

  IncompleteReport out;
  out.denominators.resize(count);
  parallel_for(static_cast<int>(count), [&](int i) {
    const int n = n_values[static_cast<size_t>(i)];
    const PadeFaberResult r = incomplete_pade_faber(fe, domain, m, m_star, n, false);
    DenominatorRecord& rec = out.denominators[static_cast<size_t>(i)];
    rec.n = n;
    rec.unique = r.unique;
    rec.normalization = r.normalization;
    rec.q = r.denominator;
    if (r.denominator.degree() >= 1) rec.roots = poly_roots(r.denominator);
  });
  out.limit_Q = out.denominators.back().q;
  out.limit_roots = out.denominators.back().roots;
  std::vector<double> ns;
  for (size_t i = 0; i + 1 < count; ++i) {
    ns.push_back(out.denominators[i].n);
    out.errors.push_back(distance(out.denominators[i].q, out.limit_Q));
  }
  try {
    out.fit = fit_geometric_rate(ns, out.errors);
  } catch (const TooFewSamples&) {
    out.fit.reset();
  }
  out.rho_m_star = meromorphy_index(domain, f, m_star);
  for (const PoleTerm& p : f.poles()) {
    if (domain.level(p.location) >= out.rho_m_star) continue;
    double best = kInf;
    for (const cplx r : out.limit_roots) best = std::min(best, std::abs(r - p.location));
    out.pole_matches.emplace_back(p.location, best);
  }
  return out;
}

double sup_error_on_compact(const PadeFaberResult& result, int alpha, int k,
                            std::span<const cplx> points, const std::function<cplx(cplx)>& f) {
  double worst = 0.0;
  for (const cplx z : points) {
    const cplx approx = evaluate_approximant(result, alpha, z, k);
    worst = std::max(worst, std::abs(approx - std::pow(z, k) * f(z)));
  }
  return worst;
}

}  // namespace faberpade
