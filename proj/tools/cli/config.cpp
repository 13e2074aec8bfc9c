#include "config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace qdwg::cli {

using nlohmann::json;

namespace {

// Field access with a path for diagnostics ("dots[1].g_meV").
class Reader {
 public:
  Reader(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) fail("", "expected an object");
  }

  [[noreturn]] void fail(const std::string& key, const std::string& why) const {
    throw ConfigError(where(key) + ": " + why);
  }
  std::string where(const std::string& key) const {
    if (key.empty()) return path_.empty() ? "<root>" : path_;
    return path_.empty() ? key : path_ + "." + key;
  }

  bool has(const std::string& key) const {
    seen_.insert(key);
    return j_.contains(key);
  }
  const json& at(const std::string& key) const {
    if (!has(key)) fail(key, "missing required field");
    return j_.at(key);
  }

  double number(const std::string& key) const {
    const json& v = at(key);
    if (!v.is_number()) fail(key, "expected a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) fail(key, "not finite");
    return x;
  }
  double number(const std::string& key, double fallback) const { return has(key) ? number(key) : fallback; }

  long integer(const std::string& key) const {
    const json& v = at(key);
    if (!v.is_number_integer()) fail(key, "expected an integer");
    return v.get<long>();
  }
  long integer(const std::string& key, long fallback) const { return has(key) ? integer(key) : fallback; }

  bool boolean(const std::string& key, bool fallback) const {
    if (!has(key)) return fallback;
    if (!j_.at(key).is_boolean()) fail(key, "expected true or false");
    return j_.at(key).get<bool>();
  }

  std::string string(const std::string& key, const std::string& fallback) const {
    if (!has(key)) return fallback;
    if (!j_.at(key).is_string()) fail(key, "expected a string");
    return j_.at(key).get<std::string>();
  }

  cplx complex(const std::string& key) const {
    const json& v = at(key);
    if (v.is_number()) return v.get<double>();
    if (v.is_object()) {
      Reader r(v, where(key));
      const cplx z(r.number("re"), r.number("im", 0.0));
      r.finish();
      return z;
    }
    fail(key, "expected a number or {\"re\": …, \"im\": …}");
  }

  Reader child(const std::string& key) const { return Reader(at(key), where(key)); }

  template <class T, class F>
  std::vector<T> list(const std::string& key, F&& item, std::vector<T> fallback) const {
    if (!has(key)) return fallback;
    const json& v = j_.at(key);
    if (!v.is_array()) fail(key, "expected an array");
    std::vector<T> out;
    for (std::size_t i = 0; i < v.size(); ++i) out.push_back(item(v[i], where(key) + "[" + std::to_string(i) + "]"));
    return out;
  }

  /// Unknown keys are almost always typos in a unit suffix.
  void finish() const {
    for (auto it = j_.begin(); it != j_.end(); ++it)
      if (!seen_.count(it.key())) fail(it.key(), "unknown field");
  }

 private:
  const json& j_;
  std::string path_;
  mutable std::set<std::string> seen_;
};

std::pair<int, int> int_pair(const json& v, const std::string& where) {
  if (!v.is_array() || v.size() != 2 || !v[0].is_number_integer() || !v[1].is_number_integer())
    throw ConfigError(where + ": expected a pair of integers");
  return {v[0].get<int>(), v[1].get<int>()};
}

std::pair<int, int> shape(const json& v, const std::string& where) {
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    const auto x = s.find('x');
    try {
      if (x != std::string::npos) return {std::stoi(s.substr(0, x)), std::stoi(s.substr(x + 1))};
    } catch (const std::exception&) {
    }
    throw ConfigError(where + ": expected a shape like \"3x4\"");
  }
  return int_pair(v, where);
}

DotParams parse_dot(const json& v, const std::string& where) {
  Reader r(v, where);
  DotParams d;
  d.g = r.complex("g_meV");
  d.omega = r.complex("omega_meV");
  d.omega_prime = r.complex("omega_prime_meV");
  d.delta = r.number("delta_meV");
  d.delta_prime = r.number("delta_prime_meV");
  d.delta_cav = r.number("delta_cav_meV");
  r.finish();
  return d;
}

DecayModel parse_decay(const Reader& r) {
  const bool tau = r.has("tau_w_ns"), gamma = r.has("gamma_per_ns");
  if (tau && gamma) r.fail("tau_w_ns", "give tau_w_ns or gamma_per_ns, not both");
  try {
    if (tau) return DecayModel::from_tau(r.number("tau_w_ns"));
    if (gamma) return DecayModel::from_gamma(r.number("gamma_per_ns"));
  } catch (const std::invalid_argument& e) {
    r.fail(tau ? "tau_w_ns" : "gamma_per_ns", e.what());
  }
  return DecayModel::none();
}

json complex_json(cplx z) {
  if (z.imag() == 0.0) return z.real();
  return {{"re", z.real()}, {"im", z.imag()}};
}

json pairs_json(const std::vector<std::pair<int, int>>& v) {
  json a = json::array();
  for (auto [x, y] : v) a.push_back({x, y});
  return a;
}

}  // namespace

ExperimentConfig parse_config(const json& j) {
  const Reader r(j, "");
  ExperimentConfig c;
  c.name = r.string("name", "");
  c.dots = r.list<DotParams>("dots", parse_dot, {});
  if (!r.has("dots")) r.fail("dots", "missing required field");
  if (c.dots.empty()) r.fail("dots", "at least one dot is required");

  if (r.has("decay")) {
    const Reader d = r.child("decay");
    c.decay = parse_decay(d);
    d.finish();
  }
  if (r.has("tier")) {
    try {
      c.tier = parse_tier(r.string("tier", "eff"));
    } catch (const std::invalid_argument& e) {
      r.fail("tier", e.what());
    }
  }
  c.fock_cutoff = static_cast<int>(r.integer("fock_cutoff", c.fock_cutoff));
  if (c.fock_cutoff < 1) r.fail("fock_cutoff", "must be ≥ 1");
  const long seed = r.integer("rng_seed", 0);
  if (seed < 0) r.fail("rng_seed", "must be ≥ 0");
  c.rng_seed = static_cast<std::uint64_t>(seed);

  if (r.has("scheduler")) {
    const Reader s = r.child("scheduler");
    c.scheduler.lambda0_meV = s.number("lambda0_meV", c.scheduler.lambda0_meV);
    c.scheduler.ratio_min = s.number("ratio_min", c.scheduler.ratio_min);
    if (!(c.scheduler.lambda0_meV > 0)) s.fail("lambda0_meV", "must be > 0");
    if (!(c.scheduler.ratio_min >= 1)) s.fail("ratio_min", "must be ≥ 1");
    s.finish();
  }
  if (r.has("output")) {
    const Reader o = r.child("output");
    c.output.dir = o.string("dir", c.output.dir);
    c.output.plot = o.boolean("plot", c.output.plot);
    o.finish();
  }
  if (r.has("cz")) {
    const Reader s = r.child("cz");
    if (s.has("pair")) c.cz.pair = int_pair(s.at("pair"), s.where("pair"));
    s.finish();
  }
  if (r.has("null_gate")) {
    const Reader s = r.child("null_gate");
    c.null_gate.groups = s.list<std::pair<int, int>>("groups", int_pair, c.null_gate.groups);
    c.null_gate.k = s.list<long>(
        "k",
        [](const json& v, const std::string& w) {
          if (!v.is_number_integer() || v.get<long>() < 1) throw ConfigError(w + ": expected an integer ≥ 1");
          return v.get<long>();
        },
        c.null_gate.k);
    s.finish();
  }
  if (r.has("graph")) {
    const Reader s = r.child("graph");
    c.graph.kind = s.string("kind", c.graph.kind);
    static const std::set<std::string> kinds{"cycle", "path", "complete", "random", "explicit"};
    if (!kinds.count(c.graph.kind)) s.fail("kind", "expected cycle, path, complete, random or explicit");
    c.graph.num_qubits = static_cast<int>(s.integer("num_qubits", c.graph.num_qubits));
    c.graph.edges = s.list<std::pair<int, int>>("edges", int_pair, {});
    c.graph.edge_probability = s.number("edge_probability", c.graph.edge_probability);
    s.finish();
  }
  if (r.has("ncz")) {
    const Reader s = r.child("ncz");
    c.ncz.num_controls = static_cast<int>(s.integer("num_controls", c.ncz.num_controls));
    s.finish();
  }
  if (r.has("cluster")) {
    const Reader s = r.child("cluster");
    c.cluster.rows = static_cast<int>(s.integer("rows", c.cluster.rows));
    c.cluster.cols = static_cast<int>(s.integer("cols", c.cluster.cols));
    s.finish();
  }
  if (r.has("decay_sweep")) {
    const Reader s = r.child("decay_sweep");
    auto& d = c.decay_sweep;
    d.tau_ratio_min = s.number("tau_ratio_min", d.tau_ratio_min);
    d.tau_ratio_max = s.number("tau_ratio_max", d.tau_ratio_max);
    d.points = static_cast<int>(s.integer("points", d.points));
    d.delta_shifts_meV = s.list<double>(
        "delta_shifts_meV",
        [](const json& v, const std::string& w) {
          if (!v.is_number()) throw ConfigError(w + ": expected a number");
          return v.get<double>();
        },
        d.delta_shifts_meV);
    if (d.points < 1) s.fail("points", "must be ≥ 1");
    if (d.tau_ratio_min < 0 || d.tau_ratio_max < d.tau_ratio_min) s.fail("tau_ratio_max", "need 0 ≤ min ≤ max");
    s.finish();
  }
  if (r.has("scaling")) {
    const Reader s = r.child("scaling");
    auto& d = c.scaling;
    d.lattices = s.list<std::pair<int, int>>("lattices", shape, d.lattices);
    d.transposes = s.boolean("transposes", d.transposes);
    auto ints = [](const json& v, const std::string& w) {
      if (!v.is_number_integer()) throw ConfigError(w + ": expected an integer");
      return v.get<int>();
    };
    d.graph_sizes = s.list<int>("graph_sizes", ints, {});
    d.ncz_controls = s.list<int>("ncz_controls", ints, {});
    s.finish();
  }
  if (r.has("fock_check")) {
    const Reader s = r.child("fock_check");
    c.fock_check.cutoffs = s.list<int>(
        "cutoffs",
        [](const json& v, const std::string& w) {
          if (!v.is_number_integer() || v.get<int>() < 1) throw ConfigError(w + ": expected an integer ≥ 1");
          return v.get<int>();
        },
        c.fock_check.cutoffs);
    c.fock_check.tolerance = s.number("tolerance", c.fock_check.tolerance);
    if (c.fock_check.cutoffs.size() < 2) s.fail("cutoffs", "need at least two cutoffs");
    s.finish();
  }
  r.finish();
  return c;
}

ExperimentConfig parse_config_text(const std::string& text, const std::string& source) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    // nlohmann reports "at line L, column C"
    throw ConfigError(source + ": " + e.what());
  }
  try {
    return parse_config(j);
  } catch (const ConfigError& e) {
    throw ConfigError(source + ": " + e.what());
  }
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path.string() + ": cannot open");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config_text(text.str(), path.string());
}

json to_json(const ExperimentConfig& c) {
  json j;
  j["name"] = c.name;
  json dots = json::array();
  for (const DotParams& d : c.dots)
    dots.push_back({{"g_meV", complex_json(d.g)},
                    {"omega_meV", complex_json(d.omega)},
                    {"omega_prime_meV", complex_json(d.omega_prime)},
                    {"delta_meV", d.delta},
                    {"delta_prime_meV", d.delta_prime},
                    {"delta_cav_meV", d.delta_cav}});
  j["dots"] = dots;
  // τ_w is infinite without loss, so γ is the field that always round-trips
  j["decay"] = {{"gamma_per_ns", c.decay.gamma()}};
  j["tier"] = std::string(to_string(c.tier));
  j["fock_cutoff"] = c.fock_cutoff;
  j["rng_seed"] = c.rng_seed;
  j["scheduler"] = {{"lambda0_meV", c.scheduler.lambda0_meV}, {"ratio_min", c.scheduler.ratio_min}};
  j["output"] = {{"dir", c.output.dir}, {"plot", c.output.plot}};
  j["cz"] = {{"pair", {c.cz.pair.first, c.cz.pair.second}}};
  j["null_gate"] = {{"groups", pairs_json(c.null_gate.groups)}, {"k", c.null_gate.k}};
  j["graph"] = {{"kind", c.graph.kind},
                {"num_qubits", c.graph.num_qubits},
                {"edges", pairs_json(c.graph.edges)},
                {"edge_probability", c.graph.edge_probability}};
  j["ncz"] = {{"num_controls", c.ncz.num_controls}};
  j["cluster"] = {{"rows", c.cluster.rows}, {"cols", c.cluster.cols}};
  j["decay_sweep"] = {{"tau_ratio_min", c.decay_sweep.tau_ratio_min},
                      {"tau_ratio_max", c.decay_sweep.tau_ratio_max},
                      {"points", c.decay_sweep.points},
                      {"delta_shifts_meV", c.decay_sweep.delta_shifts_meV}};
  json lattices = json::array();
  for (auto [m, n] : c.scaling.lattices) lattices.push_back(std::to_string(m) + "x" + std::to_string(n));
  j["scaling"] = {{"lattices", lattices},
                  {"transposes", c.scaling.transposes},
                  {"graph_sizes", c.scaling.graph_sizes},
                  {"ncz_controls", c.scaling.ncz_controls}};
  j["fock_check"] = {{"cutoffs", c.fock_check.cutoffs}, {"tolerance", c.fock_check.tolerance}};
  return j;
}

}  // namespace qdwg::cli
