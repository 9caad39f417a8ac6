#include "faberpade/runner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>

#include "faberpade/errors.hpp"

namespace faberpade {

namespace {

struct Tables {
  std::vector<DenominatorRecord> denominators;
  std::vector<std::pair<int, double>> rates;
  std::optional<double> fitted_rate;
  std::optional<double> predicted_rate;
  std::vector<RootPath> paths;
  std::vector<std::string> verdicts;
};

void write_file(const std::filesystem::path& path, const std::string& content,
                RunArtifacts& artifacts) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path.string());
  out << content;
  artifacts.files.push_back(path);
}

std::string denominators_csv(const std::vector<DenominatorRecord>& records, int degree) {
  std::ostringstream out;
  out << "n,unique";
  for (int j = 0; j <= degree; ++j) out << ",c" << j << "_re,c" << j << "_im";
  for (int j = 1; j <= degree; ++j) out << ",root" << j << "_re,root" << j << "_im";
  out << "\n";
  for (const DenominatorRecord& rec : records) {
    out << rec.n << "," << (rec.unique ? 1 : 0);
    for (int j = 0; j <= degree; ++j)
      out << "," << format_number(rec.q[j].real()) << "," << format_number(rec.q[j].imag());
    for (int j = 0; j < degree; ++j) {
      if (j < static_cast<int>(rec.roots.size()))
        out << "," << format_number(rec.roots[static_cast<size_t>(j)].real()) << ","
            << format_number(rec.roots[static_cast<size_t>(j)].imag());
      else
        out << ",,";
    }
    out << "\n";
  }
  return out.str();
}

std::string rates_csv(const Tables& t) {
  std::ostringstream out;
  out << "n,error\n";
  for (const auto& [n, e] : t.rates) out << n << "," << format_number(e) << "\n";
  if (t.fitted_rate) out << "fitted_rate," << format_number(*t.fitted_rate) << "\n";
  if (t.predicted_rate) out << "predicted_rate," << format_number(*t.predicted_rate) << "\n";
  return out.str();
}

std::string paths_csv(const std::vector<RootPath>& paths) {
  std::ostringstream out;
  out << "label,n,re,im\n";
  for (const RootPath& p : paths)
    for (const auto& [n, z] : p.points)
      out << p.label << "," << n << "," << format_number(z.real()) << "," << format_number(z.imag()) << "\n";
  return out.str();
}

std::optional<SystemMetadata> metadata_for(const ExperimentConfig& cfg, const FunctionSystem& sys) {
  if (!cfg.declarations.empty()) return declared_metadata(cfg.domain, sys, cfg.m, cfg.declarations);
  if (sys.is_rational()) return system_poles_rational(cfg.domain, sys, cfg.m);
  return std::nullopt;
}

std::string describe_poles(const SystemMetadata& md) {
  std::string out;
  for (const SystemPole& p : md.system_poles) {
    if (!out.empty()) out += "; ";
    out += "xi=(" + format_number(p.xi.real()) + "," + format_number(p.xi.imag()) +
           ") tau=" + std::to_string(p.tau) +
           " bold_rho=" + format_number(p.bold());
  }
  return out.empty() ? "none" : out;
}

std::vector<std::pair<int, double>> zip(const std::vector<int>& n, const std::vector<double>& e) {
  std::vector<std::pair<int, double>> out;
  for (size_t i = 0; i < n.size(); ++i) out.emplace_back(n[i], e[i]);
  return out;
}

Tables run_solve(const ExperimentConfig& cfg, const FunctionSystem& sys) {
  Tables t;
  const std::vector<int> ns = cfg.n_values();
  const SystemExpansion ex(cfg.domain, sys, cfg.m, cfg.n_max + 1, cfg.quad);
  t.denominators.resize(ns.size());
  parallel_for(static_cast<int>(ns.size()), [&](int i) {
    const PadeFaberResult r = simultaneous_pade_faber(ex, ns[static_cast<size_t>(i)], false);
    DenominatorRecord& rec = t.denominators[static_cast<size_t>(i)];
    rec.n = r.n;
    rec.unique = r.unique;
    rec.normalization = r.normalization;
    rec.q = r.denominator;
    if (r.denominator.degree() >= 1) rec.roots = poly_roots(r.denominator);
  });
  int unique = 0;
  for (const auto& rec : t.denominators) unique += rec.unique ? 1 : 0;
  t.verdicts.push_back("unique_solves = " + std::to_string(unique) + "/" + std::to_string(ns.size()));

  const std::optional<SystemMetadata> md = metadata_for(cfg, sys);
  std::vector<cplx> starts;
  std::vector<std::string> labels;
  if (md && md->total_order() == cfg.m.total()) {
    t.verdicts.push_back("system_poles = " + describe_poles(*md));
    std::vector<double> nd, err;
    for (const auto& rec : t.denominators) {
      nd.push_back(rec.n);
      err.push_back(distance(rec.q, md->predicted_Q));
      t.rates.emplace_back(rec.n, err.back());
    }
    t.predicted_rate = md->predicted_rate;
    t.verdicts.push_back("max_error = " + format_number(*std::max_element(err.begin(), err.end())));
    try {
      const RateFit fit = fit_geometric_rate(nd, err);
      t.fitted_rate = fit.all_zero ? 0.0 : fit.rate;
    } catch (const TooFewSamples&) {
    }
    for (const SystemPole& p : md->system_poles)
      for (int k = 0; k < p.tau; ++k) {
        starts.push_back(p.xi);
        labels.push_back("pole" + std::to_string(starts.size()));
      }
  } else if (!t.denominators.front().roots.empty()) {
    starts = t.denominators.front().roots;
  }
  t.paths = track_roots(starts, labels, t.denominators);
  return t;
}

Tables run_direct(const ExperimentConfig& cfg, const FunctionSystem& sys) {
  Tables t;
  const std::vector<int> ns = cfg.n_values();
  const SystemMetadata md = *metadata_for(cfg, sys);
  DirectOptions opts;
  opts.quad = cfg.quad;
  if (cfg.compact) opts.compact_points = cfg.compact->points();
  const RateReport rep = run_direct_experiment(cfg.domain, sys, cfg.m, md, ns, opts);
  t.denominators = rep.denominators;
  t.rates = zip(rep.n_values, rep.errors);
  t.fitted_rate = rep.fitted_rate;
  t.predicted_rate = rep.predicted_rate;
  t.paths = rep.root_paths;

  t.verdicts.push_back("system_poles = " + describe_poles(md));
  t.verdicts.push_back("fitted_rate = " + format_number(rep.fitted_rate));
  t.verdicts.push_back("predicted_rate = " + format_number(rep.predicted_rate));
  const bool in_band =
      rep.predicted_rate > 0.0 && rep.fitted_rate > 0.0
          ? std::abs(std::log(rep.fitted_rate) - std::log(rep.predicted_rate)) <=
                0.1 * std::abs(std::log(rep.predicted_rate))
          : rep.predicted_rate == 0.0 && rep.fitted_rate == 0.0;
  t.verdicts.push_back(std::string("rate_within_band = ") + (in_band ? "yes" : "no"));
  t.verdicts.push_back(std::string("direct = ") + (rep.converged ? "converged" : "not converged"));
  if (rep.sup_fit) {
    t.verdicts.push_back("sup_error_rate = " +
                         format_number(rep.sup_fit->all_zero ? 0.0 : rep.sup_fit->rate));
    t.verdicts.push_back("sup_error_bound = " + format_number(rep.sup_bound));
  }

  const InverseVerdict inv = run_inverse_experiment(cfg.domain, sys, cfg.m, ns, cfg.quad, cfg.tol);
  t.verdicts.push_back(std::string("inverse = ") + (inv.converged ? "converged" : "not converged") +
                       " (theta = " + format_number(inv.theta) +
                       ", pole_count = " + std::to_string(inv.pole_count) + ")");
  if (rep.converged && inv.converged) {
    const double gap = distance(inv.limit_Q, md.predicted_Q);
    t.verdicts.push_back("inverse_limit_gap = " + format_number(gap));
    t.verdicts.push_back(std::string("direct_inverse_consistent = ") + (gap <= 1e-6 ? "yes" : "no"));
  } else {
    t.verdicts.push_back(std::string("direct_inverse_consistent = ") +
                         (rep.converged == inv.converged ? "yes" : "no"));
  }
  return t;
}

Tables run_inverse(const ExperimentConfig& cfg, const FunctionSystem& sys) {
  Tables t;
  const InverseVerdict inv =
      run_inverse_experiment(cfg.domain, sys, cfg.m, cfg.n_values(), cfg.quad, cfg.tol);
  t.denominators = inv.denominators;
  t.rates = zip(inv.fit_n, inv.fit_errors);
  if (!inv.fit_errors.empty()) t.fitted_rate = inv.theta;
  if (!cfg.declarations.empty())
    t.predicted_rate = declared_metadata(cfg.domain, sys, cfg.m, cfg.declarations).predicted_rate;
  t.paths = inv.root_paths;
  t.verdicts.push_back(std::string("verdict = ") + (inv.converged ? "converged" : "not converged"));
  t.verdicts.push_back("reason = " + inv.reason);
  t.verdicts.push_back("theta = " + format_number(inv.theta));
  t.verdicts.push_back("pole_count = " + std::to_string(inv.pole_count));
  t.verdicts.push_back("n0 = " + (inv.n0 ? std::to_string(*inv.n0) : std::string("none")));
  if (inv.converged) {
    std::string roots;
    for (const cplx r : inv.limit_roots)
      roots += (roots.empty() ? "" : " ") + format_number(r.real()) + "," + format_number(r.imag());
    t.verdicts.push_back("limit_roots = " + roots);
  }
  return t;
}

Tables run_incomplete(const ExperimentConfig& cfg, const FunctionSystem& sys) {
  Tables t;
  const std::vector<int> ns = cfg.n_values();
  const IncompleteReport rep =
      run_incomplete_experiment(cfg.domain, sys[0], cfg.m[0], *cfg.m_star, ns, cfg.quad);
  t.denominators = rep.denominators;
  for (size_t i = 0; i < rep.errors.size(); ++i) t.rates.emplace_back(ns[i], rep.errors[i]);
  if (rep.fit) t.fitted_rate = rep.fit->all_zero ? 0.0 : rep.fit->rate;
  if (!rep.denominators.front().roots.empty())
    t.paths = track_roots(rep.denominators.front().roots, {}, rep.denominators);
  t.verdicts.push_back("rho_m_star = " + format_number(rep.rho_m_star));
  for (const auto& [pole, dist] : rep.pole_matches)
    t.verdicts.push_back("pole " + format_number(pole.real()) + "," + format_number(pole.imag()) +
                         " nearest_root_distance = " + format_number(dist));
  return t;
}

}  // namespace

std::string format_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", x);
  return buf;
}

RunArtifacts run(const ExperimentConfig& config) {
  const FunctionSystem sys = config.system();
  Tables t;
  switch (config.mode) {
    case Mode::Solve: t = run_solve(config, sys); break;
    case Mode::Direct: t = run_direct(config, sys); break;
    case Mode::Inverse: t = run_inverse(config, sys); break;
    case Mode::Incomplete: t = run_incomplete(config, sys); break;
  }

  RunArtifacts artifacts;
  std::filesystem::create_directories(config.output_dir);
  const int degree = config.mode == Mode::Incomplete ? config.m[0] : config.m.total();
  write_file(config.output_dir / "denominators.csv", denominators_csv(t.denominators, degree), artifacts);
  write_file(config.output_dir / "rates.csv", rates_csv(t), artifacts);
  write_file(config.output_dir / "roots_paths.csv", paths_csv(t.paths), artifacts);

  std::ostringstream s;
  s << "mode = " << mode_name(config.mode) << "\n";
  s << "domain = " << config.domain.describe() << "\n";
  std::string m;
  for (const int v : config.m.values()) m += (m.empty() ? "" : ",") + std::to_string(v);
  s << "m = " << m << "\n";
  if (config.m_star) s << "m_star = " << *config.m_star << "\n";
  s << "n = " << config.n_min << ".." << config.n_max << " step " << config.n_step << "\n";
  for (size_t i = 0; i < config.functions.size(); ++i)
    s << config.function_names[i] << " = " << config.functions[i].to_expression() << "\n";
  for (const std::string& d : config.defaults_applied) s << "default: " << d << "\n";
  for (const std::string& v : t.verdicts) {
    s << v << "\n";
    artifacts.summary.push_back(v);
  }
  write_file(config.output_dir / "summary.txt", s.str(), artifacts);
  return artifacts;
}

}  // namespace faberpade
