#include "faberpade/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <numbers>
#include <sstream>

#include "faberpade/errors.hpp"

namespace faberpade {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::string unquote(const std::string& s) {
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') return s.substr(1, s.size() - 2);
  return s;
}

std::vector<std::string> split_words(const std::string& s, const std::string& seps = " \t") {
  std::vector<std::string> out;
  size_t i = 0;
  while (i < s.size()) {
    const size_t b = s.find_first_not_of(seps, i);
    if (b == std::string::npos) break;
    const size_t e = s.find_first_of(seps, b);
    out.push_back(s.substr(b, e == std::string::npos ? std::string::npos : e - b));
    i = e == std::string::npos ? s.size() : e;
  }
  return out;
}

double parse_real(std::string_view text) {
  const std::string t = trim(text);
  if (t == "inf" || t == "+inf") return std::numeric_limits<double>::infinity();
  double v = 0.0;
  const char* first = t.data();
  if (!t.empty() && t[0] == '+') ++first;
  const auto res = std::from_chars(first, t.data() + t.size(), v);
  if (t.empty() || res.ec != std::errc{} || res.ptr != t.data() + t.size())
    throw PreconditionError("not a real number: '" + t + "'");
  return v;
}

int parse_int(std::string_view text) {
  const std::string t = trim(text);
  int v = 0;
  const auto res = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || res.ec != std::errc{} || res.ptr != t.data() + t.size())
    throw PreconditionError("not an integer: '" + t + "'");
  return v;
}

struct Entry {
  std::string value;
  int line;
};

class Reader {
 public:
  std::map<std::string, Entry> top;
  std::vector<std::pair<std::string, Entry>> functions;
  std::map<std::string, Entry> quadrature;
  std::vector<Entry> declarations;
  std::optional<Entry> circle;
  std::optional<Entry> dir;
  int last_line = 0;

  void read(std::string_view text) {
    std::string section;
    int line_no = 0;
    std::istringstream in{std::string(text)};
    std::string raw;
    while (std::getline(in, raw)) {
      ++line_no;
      const auto hash = raw.find('#');
      std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
      if (line.empty()) continue;
      if (line.front() == '[') {
        if (line.back() != ']') throw ConfigError("malformed section header", line_no, "");
        section = trim(line.substr(1, line.size() - 2));
        static const char* known[] = {"functions", "quadrature", "declare", "compact", "output"};
        if (std::find(std::begin(known), std::end(known), section) == std::end(known))
          throw ConfigError("unknown section [" + section + "]", line_no, section);
        continue;
      }
      const auto eq = line.find('=');
      if (eq == std::string::npos) throw ConfigError("expected 'key = value'", line_no, "");
      const std::string key = trim(line.substr(0, eq));
      const Entry entry{unquote(trim(line.substr(eq + 1))), line_no};
      if (key.empty()) throw ConfigError("empty key", line_no, "");
      store(section, key, entry);
    }
    last_line = line_no;
  }

 private:
  static bool is_function_key(const std::string& key) {
    return key.size() >= 2 && key[0] == 'f' &&
           std::all_of(key.begin() + 1, key.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
  }

  void store(const std::string& section, const std::string& key, const Entry& e) {
    auto unique_put = [&](std::map<std::string, Entry>& map) {
      if (map.count(key)) throw ConfigError("duplicate key", e.line, key);
      map[key] = e;
    };
    if (section.empty()) {
      if (is_function_key(key)) return put_function(key, e);
      static const char* keys[] = {"mode", "domain", "m", "n", "n_min", "n_max", "n_step", "m_star", "tol"};
      if (std::find(std::begin(keys), std::end(keys), key) == std::end(keys))
        throw ConfigError("unknown key", e.line, key);
      return unique_put(top);
    }
    if (section == "functions") {
      if (!is_function_key(key)) throw ConfigError("function keys are f1, f2, ...", e.line, key);
      return put_function(key, e);
    }
    if (section == "quadrature") {
      if (key != "rho" && key != "nodes" && key != "route") throw ConfigError("unknown key", e.line, key);
      return unique_put(quadrature);
    }
    if (section == "declare") {
      if (key != "pole") throw ConfigError("unknown key", e.line, key);
      declarations.push_back(e);
      return;
    }
    if (section == "compact") {
      if (key != "circle") throw ConfigError("unknown key", e.line, key);
      if (circle) throw ConfigError("duplicate key", e.line, key);
      circle = e;
      return;
    }
    if (key != "dir") throw ConfigError("unknown key", e.line, key);
    if (dir) throw ConfigError("duplicate key", e.line, key);
    dir = e;
  }

  void put_function(const std::string& key, const Entry& e) {
    for (const auto& [k, v] : functions)
      if (k == key) throw ConfigError("duplicate key", e.line, key);
    functions.emplace_back(key, e);
  }
};

Domain parse_domain(const std::string& text) {
  const auto w = split_words(text);
  if (w.empty()) throw PreconditionError("empty domain");
  const std::string& kind = w[0];
  auto need = [&](size_t n) {
    if (w.size() != n) throw PreconditionError("domain '" + kind + "' takes " + std::to_string(n - 1) + " values");
  };
  if (kind == "disk") {
    need(3);
    return Domain::disk(parse_complex(w[1]), parse_real(w[2]));
  }
  if (kind == "ellipse") {
    need(4);
    return Domain::ellipse(parse_complex(w[1]), parse_real(w[2]), parse_real(w[3]));
  }
  if (kind == "segment") {
    need(3);
    return Domain::segment(parse_complex(w[1]), parse_complex(w[2]));
  }
  if (kind == "laurent") {
    if (w.size() < 3) throw PreconditionError("domain 'laurent' takes cap, c0 and optional c1...");
    std::vector<cplx> tail;
    for (size_t i = 3; i < w.size(); ++i) tail.push_back(parse_complex(w[i]));
    return Domain::laurent(parse_real(w[1]), parse_complex(w[2]), std::move(tail));
  }
  throw PreconditionError("unknown domain kind '" + kind + "' (disk, ellipse, segment, laurent)");
}

PoleDeclaration parse_declaration(const std::string& text) {
  const auto w = split_words(text);
  if (w.empty()) throw PreconditionError("empty declaration");
  PoleDeclaration d;
  d.xi = parse_complex(w[0]);
  bool have_tau = false;
  bool have_rho = false;
  for (size_t i = 1; i < w.size(); ++i) {
    const auto eq = w[i].find('=');
    if (eq == std::string::npos) throw PreconditionError("expected tau=<int> or rho=<list>");
    const std::string k = w[i].substr(0, eq);
    const std::string v = w[i].substr(eq + 1);
    if (k == "tau") {
      d.tau = parse_int(v);
      have_tau = true;
    } else if (k == "rho") {
      for (const auto& r : split_words(v, ",")) d.rho.push_back(parse_real(r));
      have_rho = true;
    } else {
      throw PreconditionError("unknown declaration field '" + k + "'");
    }
  }
  if (!have_tau || !have_rho) throw PreconditionError("declaration needs tau= and rho=");
  return d;
}

}  // namespace

cplx parse_complex(std::string_view text) {
  const std::string t = trim(text);
  if (t.empty()) throw PreconditionError("empty complex literal");
  // split at the last sign that is neither leading nor part of an exponent
  size_t split = std::string::npos;
  for (size_t i = 1; i < t.size(); ++i)
    if ((t[i] == '+' || t[i] == '-') && t[i - 1] != 'e' && t[i - 1] != 'E') split = i;
  auto imag_part = [](std::string s) -> double {
    s.pop_back();
    if (s.empty() || s == "+") return 1.0;
    if (s == "-") return -1.0;
    return parse_real(s);
  };
  try {
    if (split == std::string::npos) {
      if (t.back() == 'i') return {0.0, imag_part(t)};
      return {parse_real(t), 0.0};
    }
    const std::string re = t.substr(0, split);
    const std::string im = t.substr(split);
    if (im.back() != 'i') throw PreconditionError("");
    return {parse_real(re), imag_part(im)};
  } catch (const PreconditionError&) {
    throw PreconditionError("not a complex number: '" + t + "'");
  }
}

std::vector<cplx> CompactCircle::points() const {
  std::vector<cplx> out;
  for (int k = 0; k < count; ++k)
    out.push_back(center + std::polar(radius, 2.0 * std::numbers::pi * k / count));
  return out;
}

std::string mode_name(Mode mode) {
  switch (mode) {
    case Mode::Solve: return "solve";
    case Mode::Direct: return "direct";
    case Mode::Inverse: return "inverse";
    case Mode::Incomplete: return "incomplete";
  }
  return "solve";
}

ExperimentConfig parse_config(std::string_view text) {
  Reader r;
  r.read(text);
  ExperimentConfig cfg;

  // wraps value parsing so every failure names its line and key
  auto with = [](const Entry& e, const std::string& key, auto&& fn) {
    try {
      return fn(e.value);
    } catch (const ParseError& pe) {
      throw ConfigError(pe.what(), e.line, key);
    } catch (const ConfigError&) {
      throw;
    } catch (const Error& err) {
      throw ConfigError(err.what(), e.line, key);
    }
  };
  auto find = [&](const std::string& key) -> const Entry* {
    auto it = r.top.find(key);
    return it == r.top.end() ? nullptr : &it->second;
  };
  auto require = [&](const std::string& key) -> const Entry& {
    const Entry* e = find(key);
    if (!e) throw ConfigError("missing required key", r.last_line, key);
    return *e;
  };

  if (const Entry* e = find("mode")) {
    cfg.mode = with(*e, "mode", [](const std::string& v) {
      if (v == "solve") return Mode::Solve;
      if (v == "direct") return Mode::Direct;
      if (v == "inverse") return Mode::Inverse;
      if (v == "incomplete") return Mode::Incomplete;
      throw PreconditionError("mode must be solve, direct, inverse or incomplete");
    });
  } else {
    cfg.defaults_applied.push_back("mode = solve");
  }

  const Entry& dom = require("domain");
  cfg.domain_text = dom.value;
  cfg.domain = with(dom, "domain", parse_domain);

  std::sort(r.functions.begin(), r.functions.end(), [](const auto& a, const auto& b) {
    return std::stoi(a.first.substr(1)) < std::stoi(b.first.substr(1));
  });
  for (size_t i = 0; i < r.functions.size(); ++i) {
    const auto& [key, e] = r.functions[i];
    if (key != "f" + std::to_string(i + 1))
      throw ConfigError("function keys must be f1, f2, ... without gaps", e.line, key);
    cfg.function_names.push_back(key);
    cfg.functions.push_back(with(e, key, [&](const std::string& v) {
      MeromorphicFunction f = parse_function_expression(v);
      f.check_holomorphic_on(cfg.domain);
      return f;
    }));
  }
  if (cfg.functions.empty()) throw ConfigError("at least one function is required", r.last_line, "f1");

  const Entry& me = require("m");
  cfg.m = with(me, "m", [](const std::string& v) {
    std::vector<int> vals;
    for (const auto& w : split_words(v, ", \t")) vals.push_back(parse_int(w));
    return MultiIndex(vals);
  });
  if (cfg.m.size() != static_cast<int>(cfg.functions.size()))
    throw ConfigError("m needs one entry per function", me.line, "m");

  if (const Entry* e = find("n")) {
    if (find("n_min") || find("n_max")) throw ConfigError("give either n or n_min/n_max", e->line, "n");
    cfg.n_min = cfg.n_max = with(*e, "n", parse_int);
  } else {
    cfg.n_min = with(require("n_min"), "n_min", parse_int);
    cfg.n_max = with(require("n_max"), "n_max", parse_int);
  }
  if (const Entry* e = find("n_step")) {
    cfg.n_step = with(*e, "n_step", parse_int);
  } else {
    cfg.defaults_applied.push_back("n_step = 1");
  }
  if (cfg.n_min < 1) throw ConfigError("n_min must be >= 1", (find("n") ? find("n") : find("n_min"))->line, "n_min");
  if (cfg.n_step < 1) throw ConfigError("n_step must be >= 1", find("n_step")->line, "n_step");
  if (cfg.n_max < cfg.n_min) throw ConfigError("n_max must be >= n_min", find("n_max")->line, "n_max");

  if (const Entry* e = find("m_star")) cfg.m_star = with(*e, "m_star", parse_int);
  if (cfg.mode == Mode::Incomplete) {
    if (!cfg.m_star) throw ConfigError("incomplete mode requires m_star", r.last_line, "m_star");
    if (cfg.functions.size() != 1) throw ConfigError("incomplete mode takes a single function", me.line, "m");
    if (*cfg.m_star < 1 || *cfg.m_star > cfg.m[0])
      throw ConfigError("need 1 <= m_star <= m", find("m_star")->line, "m_star");
  }
  if (const Entry* e = find("tol")) {
    cfg.tol = with(*e, "tol", parse_real);
    if (!(cfg.tol > 0.0 && cfg.tol < 1.0)) throw ConfigError("tol must lie in (0, 1)", e->line, "tol");
  } else if (cfg.mode == Mode::Inverse || cfg.mode == Mode::Direct) {
    cfg.defaults_applied.push_back("tol = 0.1");
  }

  if (auto it = r.quadrature.find("rho"); it != r.quadrature.end()) {
    cfg.quad.rho = with(it->second, "rho", parse_real);
    if (!(*cfg.quad.rho > 1.0)) throw ConfigError("rho must exceed 1", it->second.line, "rho");
  } else {
    cfg.defaults_applied.push_back("rho = automatic");
  }
  if (auto it = r.quadrature.find("nodes"); it != r.quadrature.end()) {
    cfg.quad.node_count = with(it->second, "nodes", parse_int);
    if (!is_power_of_two(cfg.quad.node_count) || cfg.quad.node_count < 8)
      throw ConfigError("nodes must be a power of two >= 8", it->second.line, "nodes");
  } else {
    cfg.defaults_applied.push_back("nodes = automatic");
  }
  if (auto it = r.quadrature.find("route"); it != r.quadrature.end()) {
    const std::string& v = it->second.value;
    if (v == "hybrid") cfg.quad.route = CoefficientRoute::Hybrid;
    else if (v == "quadrature") cfg.quad.route = CoefficientRoute::Quadrature;
    else throw ConfigError("route must be hybrid or quadrature", it->second.line, "route");
  } else {
    cfg.defaults_applied.push_back("route = hybrid");
  }

  for (const Entry& e : r.declarations) cfg.declarations.push_back(with(e, "pole", parse_declaration));
  if (r.circle) {
    cfg.compact = with(*r.circle, "circle", [](const std::string& v) {
      const auto w = split_words(v);
      if (w.size() != 3) throw PreconditionError("circle = <center> <radius> <count>");
      CompactCircle c{parse_complex(w[0]), parse_real(w[1]), parse_int(w[2])};
      if (!(c.radius > 0.0) || c.count < 1) throw PreconditionError("circle needs radius > 0 and count >= 1");
      return c;
    });
  }
  if (r.dir) {
    cfg.output_dir = r.dir->value;
  } else {
    cfg.defaults_applied.push_back("dir = out");
  }

  if (cfg.mode == Mode::Direct && cfg.declarations.empty()) {
    bool rational = true;
    for (const auto& f : cfg.functions) rational = rational && f.is_rational();
    if (!rational)
      throw ConfigError("direct mode on a non-rational system needs [declare] entries", r.last_line,
                        "declare");
  }
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file " + path.string(), 0, "");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

}  // namespace faberpade
