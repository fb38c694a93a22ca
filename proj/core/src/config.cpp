#include "quadlaw/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "quadlaw/mollifier.hpp"

namespace quadlaw {

const char* to_string(ExperimentKind k) {
  switch (k) {
    case ExperimentKind::ExactEval: return "exact-eval";
    case ExperimentKind::FdRun: return "fd-run";
    case ExperimentKind::Compare: return "compare";
    case ExperimentKind::Riemann: return "riemann";
    case ExperimentKind::Measure: return "measure";
    case ExperimentKind::EntropyCheck: return "entropy-check";
    case ExperimentKind::Macroscopic: return "macroscopic";
    default: return "moderateness";
  }
}

std::optional<ExperimentKind> experiment_kind_from(const std::string& name) {
  static const std::map<std::string, ExperimentKind> table = {
      {"exact-eval", ExperimentKind::ExactEval},
      {"fd-run", ExperimentKind::FdRun},
      {"compare", ExperimentKind::Compare},
      {"riemann", ExperimentKind::Riemann},
      {"measure", ExperimentKind::Measure},
      {"entropy-check", ExperimentKind::EntropyCheck},
      {"macroscopic", ExperimentKind::Macroscopic},
      {"moderateness", ExperimentKind::Moderateness},
  };
  const auto it = table.find(name);
  if (it == table.end()) return std::nullopt;
  return it->second;
}

PiecewiseInitialData DataSpec::build() const {
  PiecewiseInitialData d;
  switch (kind) {
    case Kind::Riemann:
      rd.validate();
      d = {ComponentData::step(rd.u_l, rd.u_r), ComponentData::step(rd.v_l, rd.v_r),
           ComponentData::step(rd.w_l, rd.w_r), ComponentData::step(rd.z_l, rd.z_r)};
      break;
    case Kind::Constant:
      d = PiecewiseInitialData::constant(value[0], value[1], value[2], value[3]);
      break;
    case Kind::Zero:
      d = PiecewiseInitialData::zero();
      break;
    case Kind::Gaussians: {
      auto comp = [&](int k) {
        const double a = amp[k], c = center[k], s = width[k];
        if (!(s > 0.0)) throw ConfigError("gaussian width must be positive");
        return ComponentData::smooth(
            [a, c, s](double x) {
              const double r = (x - c) / s;
              return a * std::exp(-r * r);
            },
            std::abs(a));
      };
      d = {comp(0), comp(1), comp(2), comp(3)};
      break;
    }
  }
  if (mollify_radius > 0.0) d = mollify(d, MollifierSpec(mollify_radius));
  d.validate();
  return d;
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

struct Ini {
  std::map<std::string, std::map<std::string, std::string>> sections;
  mutable std::map<std::string, std::set<std::string>> used;

  static Ini read(std::istream& in) {
    Ini ini;
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      const auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      line = trim(line);
      if (line.empty()) continue;
      if (line.front() == '[') {
        if (line.back() != ']')
          throw ConfigError("config line " + std::to_string(lineno) +
                            ": malformed section header");
        section = trim(line.substr(1, line.size() - 2));
        if (section.empty())
          throw ConfigError("config line " + std::to_string(lineno) +
                            ": empty section name");
        ini.sections.try_emplace(section);
        continue;
      }
      const auto eq = line.find('=');
      if (eq == std::string::npos)
        throw ConfigError("config line " + std::to_string(lineno) +
                          ": expected key = value");
      if (section.empty())
        throw ConfigError("config line " + std::to_string(lineno) +
                          ": key outside any section");
      const std::string key = trim(line.substr(0, eq));
      const std::string val = trim(line.substr(eq + 1));
      if (key.empty())
        throw ConfigError("config line " + std::to_string(lineno) +
                          ": empty key");
      auto& sec = ini.sections[section];
      if (!sec.emplace(key, val).second)
        throw ConfigError("config: duplicate key '" + key + "' in [" +
                          section + "]");
    }
    return ini;
  }

  bool has(const std::string& sec, const std::string& key) const {
    const auto s = sections.find(sec);
    return s != sections.end() && s->second.count(key) > 0;
  }

  std::string get(const std::string& sec, const std::string& key) const {
    used[sec].insert(key);
    return sections.at(sec).at(key);
  }

  void check_all_used() const {
    for (const auto& [sec, kv] : sections) {
      const auto u = used.find(sec);
      for (const auto& [key, _] : kv)
        if (u == used.end() || !u->second.count(key))
          throw ConfigError("config: unknown key '" + key + "' in [" + sec +
                            "]");
    }
  }
};

double parse_double(const std::string& s, const std::string& where) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || *end != '\0' || !std::isfinite(v))
    throw ConfigError("config: bad number '" + s + "' for " + where);
  return v;
}

int parse_int(const std::string& s, const std::string& where) {
  const double v = parse_double(s, where);
  if (v != std::floor(v)) throw ConfigError("config: expected integer for " + where);
  return static_cast<int>(v);
}

std::vector<double> parse_list(const std::string& s, const std::string& where) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    out.push_back(parse_double(item, where));
  }
  return out;
}

std::vector<int> parse_int_list(const std::string& s, const std::string& where) {
  std::vector<int> out;
  for (double v : parse_list(s, where)) {
    if (v != std::floor(v)) throw ConfigError("config: expected integers for " + where);
    out.push_back(static_cast<int>(v));
  }
  return out;
}

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string join(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += g17(v[i]);
  }
  return s;
}

std::string join(const std::vector<int>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += std::to_string(v[i]);
  }
  return s;
}

void validate_config(const ExperimentConfig& c) {
  if (c.out.empty()) throw ConfigError("config: out path must not be empty");
  if (!(c.gamma > 0.0)) throw ConfigError("config: gamma must be positive");
  if (!(c.T > 0.0)) throw ConfigError("config: T must be positive");
  if (c.eps_list.empty()) throw ConfigError("config: eps_list must not be empty");
  for (double e : c.eps_list)
    if (!(e > 0.0)) throw ConfigError("config: eps_list entries must be positive");
  if (c.times.empty()) throw ConfigError("config: times must not be empty");
  for (double t : c.times)
    if (!(t > 0.0)) throw ConfigError("config: times must be positive");
  if (c.family != "viscous" && c.family != "shadow")
    throw ConfigError("config: family must be viscous or shadow");
  if (c.measure_kind != "moments" && c.measure_kind != "residual")
    throw ConfigError("config: measure_kind must be moments or residual");
  if (c.line != "left" && c.line != "right")
    throw ConfigError("config: line must be left or right");
  if (component_index(c.component.empty() ? '?' : c.component[0]) < 0 ||
      c.component.size() != 1)
    throw ConfigError("config: component must be one of u, v, w, z");
  if (!(c.t > 0.0)) throw ConfigError("config: t must be positive");
  if (!(c.window > 0.0)) throw ConfigError("config: window must be positive");
  if (!(c.order > 0.0)) throw ConfigError("config: order must be positive");
  if (c.solution != "volpert" && c.solution != "vvl" && c.solution != "shadow")
    throw ConfigError("config: solution must be volpert, vvl, or shadow");
  if (c.eta_bar != "half_u2" && c.eta_bar != "u2" && c.eta_bar != "cosh")
    throw ConfigError("config: eta_bar must be half_u2, u2, or cosh");
  if (!(c.entropy_tol > 0.0)) throw ConfigError("config: entropy_tol must be positive");
  if (!(c.K > 0.0)) throw ConfigError("config: K must be positive");
  if (c.probe_family != "viscous_mollified" && c.probe_family != "constant" &&
      c.probe_family != "scaled_bump")
    throw ConfigError("config: unknown probe_family");
  if (c.j_list.empty()) throw ConfigError("config: j_list must not be empty");
  for (int j : c.j_list)
    if (j != 0 && j != 1) throw ConfigError("config: j_list entries must be 0 or 1");
  if (!(c.data.mollify_radius >= 0.0))
    throw ConfigError("config: mollify_radius must be >= 0");
  try {
    c.quad.to_spec().validate();
    c.grid.to_grid().validate();
    c.sample.to_grid().validate();
  } catch (const InvalidInput& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  if (!(c.bump.rx > 0.0 && c.bump.rt > 0.0))
    throw ConfigError("config: bump radii must be positive");
}

}  // namespace

ExperimentConfig parse_config(std::istream& in,
                              std::optional<ExperimentKind> kind_hint) {
  const Ini ini = Ini::read(in);
  ExperimentConfig c;

  std::optional<ExperimentKind> file_kind;
  if (ini.has("experiment", "kind")) {
    const std::string k = ini.get("experiment", "kind");
    file_kind = experiment_kind_from(k);
    if (!file_kind) throw ConfigError("config: unknown experiment kind '" + k + "'");
  }
  if (file_kind && kind_hint && *file_kind != *kind_hint)
    throw ConfigError("config: experiment kind disagrees with the subcommand");
  if (!file_kind && !kind_hint)
    throw ConfigError("config: experiment kind missing");
  c.kind = file_kind ? *file_kind : *kind_hint;
  if (ini.has("experiment", "out")) c.out = ini.get("experiment", "out");

  if (ini.sections.count("data")) {
    if (ini.has("data", "kind")) {
      const std::string k = ini.get("data", "kind");
      if (k == "riemann") c.data.kind = DataSpec::Kind::Riemann;
      else if (k == "constant") c.data.kind = DataSpec::Kind::Constant;
      else if (k == "gaussians") c.data.kind = DataSpec::Kind::Gaussians;
      else if (k == "zero") c.data.kind = DataSpec::Kind::Zero;
      else throw ConfigError("config: unknown data kind '" + k + "'");
    }
    auto d = [&](const char* key, double& slot) {
      if (ini.has("data", key)) slot = parse_double(ini.get("data", key), key);
    };
    d("u_l", c.data.rd.u_l); d("v_l", c.data.rd.v_l);
    d("w_l", c.data.rd.w_l); d("z_l", c.data.rd.z_l);
    d("u_r", c.data.rd.u_r); d("v_r", c.data.rd.v_r);
    d("w_r", c.data.rd.w_r); d("z_r", c.data.rd.z_r);
    static const char* names[4] = {"u", "v", "w", "z"};
    for (int k = 0; k < 4; ++k) {
      d(("value_" + std::string(names[k])).c_str(), c.data.value[k]);
      d(("amp_" + std::string(names[k])).c_str(), c.data.amp[k]);
      d(("center_" + std::string(names[k])).c_str(), c.data.center[k]);
      d(("width_" + std::string(names[k])).c_str(), c.data.width[k]);
    }
    d("mollify_radius", c.data.mollify_radius);
  }

  auto num = [&](const char* sec, const char* key, double& slot) {
    if (ini.has(sec, key)) slot = parse_double(ini.get(sec, key), key);
  };
  auto inum = [&](const char* sec, const char* key, int& slot) {
    if (ini.has(sec, key)) slot = parse_int(ini.get(sec, key), key);
  };
  auto str = [&](const char* sec, const char* key, std::string& slot) {
    if (ini.has(sec, key)) slot = ini.get(sec, key);
  };

  num("quad", "rel_tol", c.quad.rel_tol);
  inum("quad", "max_panels", c.quad.max_panels);
  num("quad", "window_safety", c.quad.window_safety);
  num("quad", "t_min", c.quad.t_min);

  num("grid", "x_min", c.grid.x_min);
  num("grid", "x_max", c.grid.x_max);
  inum("grid", "n_cells", c.grid.n_cells);
  num("grid", "safety", c.grid.safety);

  num("sample", "x_min", c.sample.x_min);
  num("sample", "x_max", c.sample.x_max);
  inum("sample", "nx", c.sample.nx);
  num("sample", "t_min", c.sample.t_min);
  num("sample", "t_max", c.sample.t_max);
  inum("sample", "nt", c.sample.nt);

  num("bump", "x0", c.bump.x0);
  num("bump", "t0", c.bump.t0);
  num("bump", "rx", c.bump.rx);
  num("bump", "rt", c.bump.rt);

  num("params", "gamma", c.gamma);
  num("params", "T", c.T);
  if (ini.has("params", "eps_list"))
    c.eps_list = parse_list(ini.get("params", "eps_list"), "eps_list");
  if (ini.has("params", "times"))
    c.times = parse_list(ini.get("params", "times"), "times");
  str("params", "family", c.family);
  str("params", "measure_kind", c.measure_kind);
  str("params", "line", c.line);
  str("params", "component", c.component);
  num("params", "t", c.t);
  num("params", "window", c.window);
  num("params", "order", c.order);
  str("params", "solution", c.solution);
  num("params", "volpert_c", c.volpert_c);
  num("params", "c1", c.c1);
  num("params", "c2", c.c2);
  num("params", "c3", c.c3);
  str("params", "eta_bar", c.eta_bar);
  num("params", "entropy_tol", c.entropy_tol);
  num("params", "K", c.K);
  str("params", "probe_family", c.probe_family);
  if (ini.has("params", "j_list"))
    c.j_list = parse_int_list(ini.get("params", "j_list"), "j_list");

  ini.check_all_used();
  validate_config(c);
  return c;
}

ExperimentConfig parse_config_file(const std::string& path,
                                   std::optional<ExperimentKind> kind_hint) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open '" + path + "'");
  return parse_config(in, kind_hint);
}

std::string serialize_config(const ExperimentConfig& c) {
  std::ostringstream os;
  os << "[experiment]\n";
  os << "kind = " << to_string(c.kind) << "\n";
  os << "out = " << c.out << "\n\n";

  os << "[data]\n";
  const char* dk = "riemann";
  if (c.data.kind == DataSpec::Kind::Constant) dk = "constant";
  if (c.data.kind == DataSpec::Kind::Gaussians) dk = "gaussians";
  if (c.data.kind == DataSpec::Kind::Zero) dk = "zero";
  os << "kind = " << dk << "\n";
  os << "u_l = " << g17(c.data.rd.u_l) << "\nv_l = " << g17(c.data.rd.v_l)
     << "\nw_l = " << g17(c.data.rd.w_l) << "\nz_l = " << g17(c.data.rd.z_l)
     << "\nu_r = " << g17(c.data.rd.u_r) << "\nv_r = " << g17(c.data.rd.v_r)
     << "\nw_r = " << g17(c.data.rd.w_r) << "\nz_r = " << g17(c.data.rd.z_r)
     << "\n";
  static const char* names[4] = {"u", "v", "w", "z"};
  for (int k = 0; k < 4; ++k) os << "value_" << names[k] << " = " << g17(c.data.value[k]) << "\n";
  for (int k = 0; k < 4; ++k) os << "amp_" << names[k] << " = " << g17(c.data.amp[k]) << "\n";
  for (int k = 0; k < 4; ++k) os << "center_" << names[k] << " = " << g17(c.data.center[k]) << "\n";
  for (int k = 0; k < 4; ++k) os << "width_" << names[k] << " = " << g17(c.data.width[k]) << "\n";
  os << "mollify_radius = " << g17(c.data.mollify_radius) << "\n\n";

  os << "[quad]\n";
  os << "rel_tol = " << g17(c.quad.rel_tol) << "\n";
  os << "max_panels = " << c.quad.max_panels << "\n";
  os << "window_safety = " << g17(c.quad.window_safety) << "\n";
  os << "t_min = " << g17(c.quad.t_min) << "\n\n";

  os << "[grid]\n";
  os << "x_min = " << g17(c.grid.x_min) << "\nx_max = " << g17(c.grid.x_max)
     << "\nn_cells = " << c.grid.n_cells << "\nsafety = " << g17(c.grid.safety)
     << "\n\n";

  os << "[sample]\n";
  os << "x_min = " << g17(c.sample.x_min) << "\nx_max = " << g17(c.sample.x_max)
     << "\nnx = " << c.sample.nx << "\nt_min = " << g17(c.sample.t_min)
     << "\nt_max = " << g17(c.sample.t_max) << "\nnt = " << c.sample.nt
     << "\n\n";

  os << "[bump]\n";
  os << "x0 = " << g17(c.bump.x0) << "\nt0 = " << g17(c.bump.t0)
     << "\nrx = " << g17(c.bump.rx) << "\nrt = " << g17(c.bump.rt) << "\n\n";

  os << "[params]\n";
  os << "gamma = " << g17(c.gamma) << "\n";
  os << "T = " << g17(c.T) << "\n";
  os << "eps_list = " << join(c.eps_list) << "\n";
  os << "times = " << join(c.times) << "\n";
  os << "family = " << c.family << "\n";
  os << "measure_kind = " << c.measure_kind << "\n";
  os << "line = " << c.line << "\n";
  os << "component = " << c.component << "\n";
  os << "t = " << g17(c.t) << "\n";
  os << "window = " << g17(c.window) << "\n";
  os << "order = " << g17(c.order) << "\n";
  os << "solution = " << c.solution << "\n";
  os << "volpert_c = " << g17(c.volpert_c) << "\n";
  os << "c1 = " << g17(c.c1) << "\nc2 = " << g17(c.c2) << "\nc3 = " << g17(c.c3) << "\n";
  os << "eta_bar = " << c.eta_bar << "\n";
  os << "entropy_tol = " << g17(c.entropy_tol) << "\n";
  os << "K = " << g17(c.K) << "\n";
  os << "probe_family = " << c.probe_family << "\n";
  os << "j_list = " << join(c.j_list) << "\n";
  return os.str();
}

}  // namespace quadlaw
