#include "commands.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>
#include <tuple>

#include <fmt/format.h>

#include "qdwg/cluster.hpp"
#include "qdwg/decoherence.hpp"
#include "qdwg/error.hpp"
#include "qdwg/fock_check.hpp"
#include "qdwg/gates.hpp"
#include "qdwg/graph.hpp"
#include "qdwg/ncz.hpp"
#include "qdwg/regime.hpp"
#include "qdwg/runner.hpp"
#include "qdwg/units.hpp"

#include "pool.hpp"

namespace qdwg::cli {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr int kMaxDecayDots = 14;  // blockwise engine limit
constexpr int kMaxIdealDots = 20;

DriveSchedule pair_schedule(const ExperimentConfig& c) {
  const int n = static_cast<int>(c.dots.size());
  const auto [a, b] = c.cz.pair;
  if (a == b || a < 0 || b < 0 || a >= n || b >= n)
    throw ConfigError(fmt::format("cz.pair: ({}, {}) is not a pair of distinct dots out of {}", a, b, n));
  const std::vector<std::pair<int, int>> pairs{c.cz.pair};
  return plan_scz(pairs, n, c.scheduler.lambda0_meV, c.scheduler.ratio_min);
}

/// δ₀ the scheduler picks for these settings.
double nominal_delta0(const ExperimentConfig& c) {
  return c.scheduler.lambda0_meV * std::sqrt(2.0 * static_cast<double>(scz_k(c.scheduler.ratio_min)));
}

/// n copies of the first dot; Δ^C defaults to Δ + δ₀.
Device uniform_device(const ExperimentConfig& c, int n) {
  const DotParams& d = c.dots.front();
  const double dc = d.delta_cav != 0.0 ? d.delta_cav : d.delta + nominal_delta0(c);
  return Device::uniform(n, d.g, dc);
}

double total_time(const std::vector<DriveSchedule>& layers) {
  double t = 0.0;
  for (const auto& l : layers) t += l.duration();
  return t;
}

double decay_fidelity_or_nan(const std::vector<DriveSchedule>& layers, const DecayModel& decay,
                             const Device& dev) {
  if (layers.empty()) return 1.0;
  if (dev.num_dots() > kMaxDecayDots) return kNaN;
  return decoherence_fidelity(layers, decay, dev);
}

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> x(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) x[static_cast<std::size_t>(i)] = n == 1 ? a : a + (b - a) * i / (n - 1);
  return x;
}

bool nonincreasing(const std::vector<double>& f) {
  for (std::size_t i = 1; i < f.size(); ++i)
    if (f[i] > f[i - 1]) return false;
  return true;
}

GraphSpec graph_from_config(const ExperimentConfig& c) {
  const GraphConfig& g = c.graph;
  if (g.num_qubits < 1) throw ConfigError("graph.num_qubits: must be ≥ 1");
  if (g.kind == "cycle") return GraphSpec::cycle(g.num_qubits);
  if (g.kind == "path") return GraphSpec::path(g.num_qubits);
  if (g.kind == "complete") return GraphSpec::complete(g.num_qubits);
  if (g.kind == "explicit") {
    try {
      return GraphSpec{g.num_qubits, g.edges}.normalized();
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("graph.edges: ") + e.what());
    }
  }
  if (!(g.edge_probability >= 0.0 && g.edge_probability <= 1.0))
    throw ConfigError("graph.edge_probability: must lie in [0, 1]");
  std::mt19937_64 rng(c.rng_seed);
  std::bernoulli_distribution keep(g.edge_probability);
  GraphSpec spec{g.num_qubits, {}};
  for (int a = 0; a < g.num_qubits; ++a)
    for (int b = a + 1; b < g.num_qubits; ++b)
      if (keep(rng)) spec.edges.emplace_back(a, b);
  return spec;
}

std::string edge_list(const std::vector<Edge>& edges) {
  std::string s;
  for (auto [a, b] : edges) s += fmt::format("{}({},{})", s.empty() ? "" : " ", a, b);
  return s.empty() ? "-" : s;
}

/// One state-preparation row shared by graph and cluster.
struct StateRun {
  std::size_t layers = 0;
  double t_total = 0.0;
  double f_eff = kNaN;
  double f_decay = kNaN;
};

StateRun run_state(const ExperimentConfig& c, const GraphSpec& spec, const std::vector<DriveSchedule>& layers) {
  StateRun r;
  r.layers = layers.size();
  r.t_total = total_time(layers);
  if (spec.num_qubits <= kMaxIdealDots) {
    const QuantumState plus = QuantumState::plus_state(HilbertSpace::qubits(spec.num_qubits));
    r.f_eff = fidelity(execute_eff(layers, plus), ideal_graph_state(spec));
  }
  r.f_decay = decay_fidelity_or_nan(layers, c.decay, uniform_device(c, spec.num_qubits));
  return r;
}

}  // namespace

CommandResult cmd_validate(const CommandContext& ctx) {
  const RegimeReport rep = validate_regime(ctx.config.dots);
  CommandResult out;
  CsvTable t({"condition", "dot", "measured", "threshold", "pass"});
  for (const ConditionCheck& c : rep.checks)
    t.add_row({c.name, cell(c.dot), cell(c.measured), cell(c.threshold), c.pass ? "yes" : "no"});
  out.table = std::move(t);
  out.summary = rep.to_string();
  out.exit_code = rep.pass() ? exit_code::ok : exit_code::regime;
  return out;
}

CommandResult cmd_cz(const CommandContext& ctx) {
  const ExperimentConfig& c = ctx.config;
  const DriveSchedule s = pair_schedule(c);
  const Device dev = Device::from_dots(c.dots, s.delta0);
  CommandResult out;

  if (c.tier != Tier::eff) {
    // the lasers that will actually be applied, not the configured ones
    const std::vector<DotParams> lasers = realize_segment(dev, s.segments.front());
    const std::vector<DotParams> active{lasers[static_cast<std::size_t>(c.cz.pair.first)],
                                        lasers[static_cast<std::size_t>(c.cz.pair.second)]};
    const RegimeReport rep = validate_regime(active);
    if (!rep.pass()) {
      out.summary = "realized drives leave the dispersive regime:\n" + rep.to_string();
      out.exit_code = exit_code::regime;
      return out;
    }
  }

  RunOptions opt;
  opt.fock_cutoff = c.fock_cutoff;
  const GateResult r = cz_truth_table(s, c.tier, dev, opt);
  const double fd = decay_fidelity_or_nan({s}, c.decay, dev);

  CsvTable t({"tier", "t_gate_ns", "phase_ff", "phase_fg", "phase_gf", "phase_gg", "conditional_phase", "fidelity",
              "decay_fidelity"});
  t.add_row({std::string(to_string(r.tier)), cell(r.t_gate), cell(r.phases[0]), cell(r.phases[1]),
             cell(r.phases[2]), cell(r.phases[3]), cell(r.conditional_phase), cell(r.fidelity), cell(fd)});
  out.table = std::move(t);
  out.summary = fmt::format(
      "CZ on dots ({}, {}), tier {}: t_gate = {:.4f} ns (k = {}, delta0 = {:.6f} meV)\n"
      "  phases ff {:+.6f}  fg {:+.6f}  gf {:+.6f}  gg {:+.6f} rad\n"
      "  conditional phase {:+.9f} rad, fidelity {:.9f}, with decay (gamma = {} /ns) {:.6f}\n",
      c.cz.pair.first, c.cz.pair.second, to_string(r.tier), r.t_gate, s.k_integer.value_or(0), s.delta0,
      r.phases[0], r.phases[1], r.phases[2], r.phases[3], r.conditional_phase, r.fidelity, c.decay.gamma(), fd);
  return out;
}

CommandResult cmd_null_gate(const CommandContext& ctx) {
  const ExperimentConfig& c = ctx.config;
  const double l0 = c.scheduler.lambda0_meV, d0 = nominal_delta0(c);
  struct Job {
    int m, n;
    long k;
  };
  std::vector<Job> jobs;
  for (auto [m, n] : c.null_gate.groups) {
    if (m < 1 || n < 1 || m == n)
      throw ConfigError(fmt::format("null_gate.groups: ({}, {}) needs distinct indices ≥ 1", m, n));
    for (long k : c.null_gate.k) jobs.push_back({m, n, k});
  }
  const Device dev = uniform_device(c, 2);
  const auto rows = parallel_map(jobs.size(), ctx.jobs, [&](std::size_t i) {
    const Job& j = jobs[i];
    const double t = static_cast<double>(j.k) * kPi * kHbar / d0;
    DriveSchedule s;
    s.num_dots = 2;
    s.k_integer = j.k;
    s.lambda0 = l0;
    s.delta0 = d0;
    s.segments = {{0.0, t,
                   {{true, std::sqrt(double(j.m)) * l0, j.m * d0, j.m},
                    {true, std::sqrt(double(j.n)) * l0, j.n * d0, j.n}}}};
    const double numeric = cz_truth_table(s, Tier::eff1, dev).conditional_phase;
    return std::array<double, 3>{t, null_gate_check(j.m, j.n, j.k, l0, d0), numeric};
  });

  CommandResult out;
  CsvTable t({"m", "n", "k", "t_ns", "residual_analytic_rad", "residual_eff1_rad"});
  double worst_a = 0.0, worst_n = 0.0;
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    t.add_row({cell(jobs[i].m), cell(jobs[i].n), cell(jobs[i].k), cell(rows[i][0]), cell(rows[i][1]),
               cell(rows[i][2])});
    worst_a = std::max(worst_a, std::abs(rows[i][1]));
    worst_n = std::max(worst_n, std::abs(rows[i][2]));
  }
  out.table = std::move(t);
  out.summary = fmt::format("null gate, delta0 = {:.6f} meV: max residual analytic {:.3e} rad, eff1 {:.3e} rad\n",
                            d0, worst_a, worst_n);
  return out;
}

CommandResult cmd_graph(const CommandContext& ctx) {
  const ExperimentConfig& c = ctx.config;
  const GraphSpec spec = graph_from_config(c).normalized();
  const auto layers = graph_state_schedule(spec, c.scheduler.lambda0_meV, c.scheduler.ratio_min);
  const StateRun r = run_state(c, spec, layers);

  CommandResult out;
  CsvTable t({"kind", "qubits", "edges", "layers", "t_total_ns", "fidelity_eff", "decay_fidelity"});
  t.add_row({c.graph.kind, cell(spec.num_qubits), cell(static_cast<long>(spec.edges.size())),
             cell(static_cast<long>(r.layers)), cell(r.t_total), cell(r.f_eff), cell(r.f_decay)});
  out.table = std::move(t);
  std::ostringstream s;
  s << fmt::format("{} graph, {} qubits, edges {}\n", c.graph.kind, spec.num_qubits, edge_list(spec.edges));
  const auto matchings = greedy_matchings(spec);
  for (std::size_t i = 0; i < matchings.size(); ++i) s << fmt::format("  layer {}: {}\n", i + 1, edge_list(matchings[i]));
  s << fmt::format("  t_total = {:.4f} ns, ideal-state fidelity {:.12f}, with decay {:.6f}\n", r.t_total, r.f_eff,
                   r.f_decay);
  out.summary = s.str();
  return out;
}

CommandResult cmd_ncz(const CommandContext& ctx) {
  const ExperimentConfig& c = ctx.config;
  if (c.ncz.num_controls < 2 || c.ncz.num_controls > 12) throw ConfigError("ncz.num_controls: must lie in 2..12");
  const NczPlan plan = ncz_schedule(c.ncz.num_controls, c.scheduler.lambda0_meV, c.scheduler.ratio_min);
  const NczReport& rep = plan.report;
  const int q = rep.num_controls + 1;

  CommandResult out;
  CsvTable t({"state", "produced_re", "produced_im", "produced_phase", "ideal"});
  for (Index i = 0; i < rep.produced.size(); ++i) {
    std::string bits;
    for (int b = q - 1; b >= 0; --b) bits += (i >> b) & 1 ? 'g' : 'f';
    t.add_row({bits, cell(rep.produced(i).real()), cell(rep.produced(i).imag()), cell(std::arg(rep.produced(i))),
               cell(rep.ideal(i).real())});
  }
  out.table = std::move(t);
  out.report = rep.table();
  out.summary = rep.table() + fmt::format("layers {}, t_total = {:.4f} ns\n", plan.layers.size(), total_time(plan.layers));
  return out;
}

CommandResult cmd_cluster(const CommandContext& ctx) {
  const ExperimentConfig& c = ctx.config;
  if (c.cluster.rows < 1 || c.cluster.cols < 1) throw ConfigError("cluster: rows and cols must be ≥ 1");
  const LatticeSpec lat{c.cluster.rows, c.cluster.cols};
  const auto layers = cluster_schedule(lat, c.scheduler.lambda0_meV, c.scheduler.ratio_min);
  const StateRun r = run_state(c, lattice_graph(lat), layers);

  CommandResult out;
  CsvTable t({"shape", "qubits", "layers", "t_total_ns", "fidelity_eff", "decay_fidelity"});
  t.add_row({lat.label(), cell(lat.size()), cell(static_cast<long>(r.layers)), cell(r.t_total), cell(r.f_eff),
             cell(r.f_decay)});
  out.table = std::move(t);
  out.summary = fmt::format("{} cluster: {} layers, t_total = {:.4f} ns, ideal-state fidelity {:.12f}, with decay {:.6f}\n",
                            lat.label(), r.layers, r.t_total, r.f_eff, r.f_decay);
  return out;
}

CommandResult cmd_decay_sweep(const CommandContext& ctx) {
  const ExperimentConfig& c = ctx.config;
  const DecaySweepConfig& sw = c.decay_sweep;
  const DriveSchedule s = pair_schedule(c);
  // x = τ_w/τ₀ against the configured waveguide lifetime (1 ns when lossless)
  const double tau_w = c.decay.gamma() > 0 ? c.decay.tau_w() : 1.0;
  const std::vector<double> xs = linspace(sw.tau_ratio_min, sw.tau_ratio_max, sw.points);

  std::vector<Device> devices;
  for (double shift : sw.delta_shifts_meV) {
    std::vector<DotParams> dots = c.dots;
    for (DotParams& d : dots) {
      d.delta += shift;
      d.delta_prime += shift;
      if (d.delta_cav != 0.0) d.delta_cav += shift;
    }
    devices.push_back(Device::from_dots(std::move(dots), s.delta0));
  }
  const std::size_t np = xs.size();
  const auto f = parallel_map(devices.size() * np, ctx.jobs, [&](std::size_t i) {
    const double x = xs[i % np];
    return decoherence_fidelity(std::vector<DriveSchedule>{s}, DecayModel::from_gamma(x / tau_w), devices[i / np]);
  });

  CommandResult out;
  CsvTable t({"delta_shift_meV", "tau_ratio", "gamma_per_ns", "fidelity"});
  std::ostringstream sum;
  sum << fmt::format("CZ ({}, {}) decay sweep, t_gate = {:.4f} ns, tau_w = {} ns, {} points\n", c.cz.pair.first,
                     c.cz.pair.second, s.duration(), tau_w, np);
  for (std::size_t v = 0; v < devices.size(); ++v) {
    PlotSeries ps{fmt::format("shift {:+.2f} meV", sw.delta_shifts_meV[v]), xs, {}};
    for (std::size_t i = 0; i < np; ++i) {
      ps.y.push_back(f[v * np + i]);
      t.add_row({cell(sw.delta_shifts_meV[v]), cell(xs[i]), cell(xs[i] / tau_w), cell(f[v * np + i])});
    }
    sum << fmt::format("  shift {:+.3f} meV: F {:.6f} -> {:.6f}, monotone nonincreasing: {}\n", sw.delta_shifts_meV[v],
                       ps.y.front(), ps.y.back(), nonincreasing(ps.y) ? "yes" : "no");
    out.plot.push_back(std::move(ps));
  }
  out.table = std::move(t);
  out.summary = sum.str();
  out.plot_title = "CZ fidelity under waveguide decay";
  out.plot_x = "tau_w / tau_0";
  out.plot_y = "F";
  return out;
}

CommandResult cmd_scaling(const CommandContext& ctx) {
  const ExperimentConfig& c = ctx.config;
  const ScalingConfig& sc = c.scaling;
  const double l0 = c.scheduler.lambda0_meV, rmin = c.scheduler.ratio_min;

  struct Job {
    std::string kind, shape;
    int qubits;
    std::function<std::vector<DriveSchedule>()> layers;
  };
  std::vector<Job> jobs;
  std::vector<std::pair<int, int>> shapes;
  for (auto [m, n] : sc.lattices) {
    if (m < 1 || n < 1) throw ConfigError(fmt::format("scaling.lattices: {}x{} is not a lattice", m, n));
    for (auto p : {std::pair{m, n}, std::pair{n, m}})
      if (std::find(shapes.begin(), shapes.end(), p) == shapes.end() && (p == std::pair{m, n} || sc.transposes))
        shapes.push_back(p);
  }
  for (auto [m, n] : shapes) {
    const LatticeSpec lat{m, n};
    jobs.push_back({"cluster", lat.label(), lat.size(), [=] { return cluster_schedule(lat, l0, rmin); }});
  }
  for (int n : sc.graph_sizes)
    jobs.push_back({"graph", fmt::format("K{}", n), n,
                    [=] { return graph_state_schedule(GraphSpec::complete(n), l0, rmin); }});
  for (int k : sc.ncz_controls) {
    if (k < 2) throw ConfigError(fmt::format("scaling.ncz_controls: {} controls, need at least 2", k));
    jobs.push_back({"ncz", fmt::format("C{}Z", k), k + 1, [=] { return ncz_schedule(k, l0, rmin).layers; }});
  }
  for (const Job& j : jobs)
    if (j.qubits > kMaxDecayDots || j.qubits < 1)
      throw ConfigError(fmt::format("scaling: {} {} has {} qubits; the decay engine handles 1..{}", j.kind, j.shape,
                                    j.qubits, kMaxDecayDots));

  const auto rows = parallel_map(jobs.size(), ctx.jobs, [&](std::size_t i) {
    const auto layers = jobs[i].layers();
    return std::tuple{layers.size(), total_time(layers),
                      decay_fidelity_or_nan(layers, c.decay, uniform_device(c, jobs[i].qubits))};
  });

  CommandResult out;
  CsvTable t({"kind", "shape", "qubits", "layers", "t_total_ns", "fidelity"});
  std::map<std::string, PlotSeries> series;
  std::map<std::string, double> by_shape;
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    const auto [nl, tt, f] = rows[i];
    t.add_row({jobs[i].kind, jobs[i].shape, cell(jobs[i].qubits), cell(static_cast<long>(nl)), cell(tt), cell(f)});
    if (jobs[i].kind == "cluster") by_shape[jobs[i].shape] = f;
    auto& ps = series[jobs[i].kind];
    ps.label = jobs[i].kind;
    ps.x.push_back(jobs[i].qubits);
    ps.y.push_back(f);
  }
  out.table = std::move(t);

  std::ostringstream sum;
  sum << fmt::format("scaling, gamma = {} /ns\n", c.decay.gamma());
  for (std::size_t i = 0; i < jobs.size(); ++i)
    sum << fmt::format("  {:8} {:6} {:3} qubits  {} layers  t = {:12.4f} ns  F = {:.9e}\n", jobs[i].kind,
                       jobs[i].shape, jobs[i].qubits, std::get<0>(rows[i]), std::get<1>(rows[i]), std::get<2>(rows[i]));
  for (auto [m, n] : shapes)
    if (m < n && by_shape.count(LatticeSpec{n, m}.label()))
      sum << fmt::format("  |F_{0}x{1} - F_{1}x{0}| = {2:.1e}\n", m, n,
                         std::abs(by_shape[LatticeSpec{m, n}.label()] - by_shape[LatticeSpec{n, m}.label()]));
  for (auto& [kind, ps] : series) out.plot.push_back(std::move(ps));
  out.summary = sum.str();
  out.plot_title = "state fidelity under waveguide decay";
  out.plot_x = "qubits";
  out.plot_y = "F";
  return out;
}

CommandResult cmd_fock_check(const CommandContext& ctx) {
  const ExperimentConfig& c = ctx.config;
  const DriveSchedule s = pair_schedule(c);
  const FockScenario sc{block_segments(Device::from_dots(c.dots, s.delta0), s), c.decay};
  const FockConvergenceReport rep = fock_convergence_check(sc, c.fock_check.cutoffs, c.fock_check.tolerance);

  CommandResult out;
  CsvTable t({"cutoff_from", "cutoff_to", "trace_distance"});
  for (std::size_t i = 0; i < rep.change.size(); ++i)
    t.add_row({cell(rep.cutoffs[i]), cell(rep.cutoffs[i + 1]), cell(rep.change[i])});
  out.table = std::move(t);
  out.summary = rep.to_string();
  if (out.summary.empty() || out.summary.back() != '\n') out.summary += '\n';
  out.exit_code = rep.converged ? exit_code::ok : exit_code::numerical;
  return out;
}

const std::vector<std::pair<std::string, Command>>& commands() {
  static const std::vector<std::pair<std::string, Command>> table{
      {"validate", cmd_validate}, {"cz", cmd_cz},
      {"null-gate", cmd_null_gate}, {"graph", cmd_graph},
      {"ncz", cmd_ncz}, {"cluster", cmd_cluster},
      {"decay-sweep", cmd_decay_sweep}, {"scaling", cmd_scaling},
      {"fock-check", cmd_fock_check},
  };
  return table;
}

}  // namespace qdwg::cli
