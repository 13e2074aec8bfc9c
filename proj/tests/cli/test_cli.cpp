#include <doctest.h>

#include <cmath>
#include <set>

#include "commands.hpp"
#include "config.hpp"
#include "output.hpp"
#include "pool.hpp"

using namespace qdwg;
using namespace qdwg::cli;

namespace {

const std::string kDir = QDWG_CONFIG_DIR;

const char* kMinimal = R"({"dots": [
  {"g_meV": 0.1, "omega_meV": 10, "omega_prime_meV": 10,
   "delta_meV": 200, "delta_prime_meV": 200, "delta_cav_meV": 200.3},
  {"g_meV": {"re": 0.1, "im": 0.02}, "omega_meV": 11, "omega_prime_meV": 11,
   "delta_meV": 220, "delta_prime_meV": 220, "delta_cav_meV": 220.3}]})";

std::string error_of(const std::string& text) {
  try {
    parse_config_text(text, "t.json");
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("fnv1a64 reference values") {
  CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
  CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
  CHECK(fnv1a64("foobar") == 0x85944171f73967e8ULL);
}

TEST_CASE("config defaults and complex fields") {
  const ExperimentConfig c = parse_config_text(kMinimal);
  REQUIRE(c.dots.size() == 2);
  CHECK(c.dots[1].g == cplx(0.1, 0.02));
  CHECK(c.dots[0].delta_cav == 200.3);
  CHECK(c.decay.gamma() == 0.0);
  CHECK(c.tier == Tier::eff);
  CHECK(c.decay_sweep.points == 20);
}

TEST_CASE("config round trip") {
  for (const char* f : {"two_dot_nominal.json", "two_dot.json", "omega_mismatch.json", "scaling.json", "states.json"}) {
    CAPTURE(f);
    const ExperimentConfig c = load_config(kDir + "/" + f);
    const ExperimentConfig back = parse_config(to_json(c));
    CHECK(back == c);
    CHECK(to_json(back).dump() == to_json(c).dump());
  }
  ExperimentConfig c = parse_config_text(kMinimal);
  c.decay = DecayModel::from_tau(3.0);
  c.graph.kind = "explicit";
  c.graph.edges = {{0, 1}, {1, 2}};
  c.scaling.lattices = {{2, 5}};
  c.rng_seed = 12345;
  CHECK(parse_config(to_json(c)) == c);
}

TEST_CASE("config diagnostics name the field") {
  CHECK(error_of(R"({"name": "x"})").find("dots") != std::string::npos);
  const std::string missing = error_of(R"({"dots": [{"g_meV": 0.1}]})");
  CHECK(missing.find("dots[0].omega_meV") != std::string::npos);
  CHECK(missing.find("missing") != std::string::npos);
  const std::string typo = error_of(R"({"dots": [{"g_meV": 0.1, "omega_meV": 1, "omega_prime_meV": 1,
      "delta_meV": 1, "delta_prime_meV": 1, "delta_cav_meV": 1, "delta_cavity": 2}]})");
  CHECK(typo.find("dots[0].delta_cavity: unknown field") != std::string::npos);
  CHECK(error_of(R"({"dots": [], "tier": "eff"})").find("at least one") != std::string::npos);
  CHECK(error_of("{\"dots\": [\n 1,, ]}").find("line 2") != std::string::npos);
  const std::string both = std::string(kMinimal).substr(0, std::string(kMinimal).size() - 1) +
                           R"(, "decay": {"tau_w_ns": 1, "gamma_per_ns": 1}})";
  CHECK(error_of(both).find("not both") != std::string::npos);
  CHECK(error_of(std::string(kMinimal).substr(0, std::string(kMinimal).size() - 1) + R"(, "tier": "exact"})")
            .find("tier") != std::string::npos);
}

TEST_CASE("csv rendering") {
  CsvTable t({"a", "b"});
  t.add_row({cell(0.1), "x,y"});
  CHECK_THROWS_AS(t.add_row({"1"}), std::logic_error);
  RunMetadata m{"1.2.3", "cz", "00000000000000ff", "eff", 4, 9};
  const std::string s = t.render(m);
  CHECK(s.find("# qdwg_version: 1.2.3\n") == 0);
  CHECK(s.find("# config_fnv1a64: 00000000000000ff\n") != std::string::npos);
  CHECK(s.find("# seed: 9\n") != std::string::npos);
  CHECK(s.find("a,b\n0.10000000000000001,\"x,y\"\n") != std::string::npos);
  CHECK(t.number(0, "a") == 0.1);
  CHECK(svg_plot({{"s", {0, 1}, {1, 0}}}, "t", "x", "y").find("<path") != std::string::npos);
}

TEST_CASE("parallel_map keeps order and rethrows") {
  const auto sq = [](std::size_t i) { return static_cast<double>(i * i); };
  const auto one = parallel_map(257, 1, sq);
  for (unsigned jobs : {2u, 7u, 64u}) CHECK(parallel_map(257, jobs, sq) == one);
  CHECK(parallel_map(0, 4, sq).empty());
  CHECK_THROWS_AS(parallel_map(10, 3,
                               [](std::size_t i) {
                                 if (i == 4) throw std::runtime_error("x");
                                 return 0;
                               }),
                  std::runtime_error);
}

TEST_CASE("validate command") {
  CommandContext ctx{load_config(kDir + "/two_dot.json"), 1};
  CHECK(cmd_validate(ctx).exit_code == exit_code::ok);
  ctx.config = load_config(kDir + "/two_dot_nominal.json");
  const CommandResult r = cmd_validate(ctx);
  CHECK(r.exit_code == exit_code::regime);
  CHECK(r.table->rows().size() >= 5);
  ctx.config = load_config(kDir + "/omega_mismatch.json");
  CHECK(cmd_validate(ctx).exit_code == exit_code::regime);
}

TEST_CASE("cz command on the eff tier") {
  CommandContext ctx{load_config(kDir + "/two_dot.json"), 2};
  ctx.config.tier = Tier::eff;
  const CommandResult r = cmd_cz(ctx);
  REQUIRE(r.table);
  CHECK(r.table->columns().front() == "tier");
  CHECK(std::abs(std::abs(r.table->number(0, "conditional_phase")) - kPi) < 1e-9);
  CHECK(r.table->number(0, "fidelity") > 1 - 1e-9);
  CHECK(r.table->number(0, "t_gate_ns") == doctest::Approx(41388.13).epsilon(1e-6));
  ctx.config.cz.pair = {0, 0};
  CHECK_THROWS_AS(cmd_cz(ctx), ConfigError);
}

TEST_CASE("scaling 2-qubit row matches the cz decay fidelity") {
  ExperimentConfig c = load_config(kDir + "/scaling.json");
  c.dots = {c.dots[0], c.dots[0]};
  c.scaling.lattices = {{1, 2}};
  c.scaling.transposes = false;
  c.scaling.graph_sizes = {2};
  c.scaling.ncz_controls = {};
  CommandContext ctx{c, 2};
  const CommandResult sc = cmd_scaling(ctx);
  const CommandResult cz = cmd_cz(ctx);
  const double f = cz.table->number(0, "decay_fidelity");
  CHECK(f < 1.0);
  CHECK(std::abs(sc.table->number(0, "fidelity") - f) < 1e-6);
  CHECK(std::abs(sc.table->number(1, "fidelity") - f) < 1e-6);
}

TEST_CASE("scaling rows, transposes and ordering") {
  ExperimentConfig c = load_config(kDir + "/scaling.json");
  c.scaling.lattices = {{2, 3}, {1, 6}};
  c.scaling.graph_sizes = {};
  c.scaling.ncz_controls = {2};
  const CommandResult r = cmd_scaling({c, 4});
  const auto& rows = r.table->rows();
  REQUIRE(rows.size() == 5);  // 2x3 3x2 1x6 6x1 C2Z
  std::set<std::string> shapes;
  for (const auto& row : rows) shapes.insert(row[1]);
  CHECK(shapes == std::set<std::string>{"2x3", "3x2", "1x6", "6x1", "C2Z"});
  CHECK(std::abs(r.table->number(0, "fidelity") - r.table->number(1, "fidelity")) < 1e-12);
  CHECK(std::abs(r.table->number(2, "fidelity") - r.table->number(3, "fidelity")) < 1e-12);
  CHECK(r.table->number(2, "fidelity") > r.table->number(0, "fidelity"));
  // same bits whatever the thread count
  CHECK(cmd_scaling({c, 1}).table->rows() == rows);
}

TEST_CASE("decay sweep rows and the lossless row") {
  ExperimentConfig c = load_config(kDir + "/two_dot.json");
  c.decay_sweep = {0.0, 0.5, 6, {0.0}};
  const CommandResult r = cmd_decay_sweep({c, 3});
  REQUIRE(r.table->rows().size() == 6);
  CHECK(r.table->number(0, "gamma_per_ns") == 0.0);
  for (std::size_t i = 1; i < 6; ++i) CHECK(r.table->number(i, "fidelity") <= r.table->number(i - 1, "fidelity"));
  CHECK(r.plot.size() == 1);
}

TEST_CASE("random graph follows the seed") {
  ExperimentConfig c = load_config(kDir + "/states.json");
  c.graph = {"random", 6, {}, 0.5};
  const auto a = cmd_graph({c, 1}).summary;
  CHECK(cmd_graph({c, 1}).summary == a);
  c.rng_seed = 8;
  CHECK(cmd_graph({c, 1}).summary != a);
}

TEST_CASE("graph, cluster and ncz commands") {
  const ExperimentConfig c = load_config(kDir + "/states.json");
  const CommandResult g = cmd_graph({c, 1});
  CHECK(g.table->number(0, "layers") == 2);
  CHECK(g.table->number(0, "fidelity_eff") > 1 - 1e-9);
  const CommandResult cl = cmd_cluster({c, 1});
  CHECK(cl.table->number(0, "fidelity_eff") > 1 - 1e-9);
  CHECK(cl.table->number(0, "decay_fidelity") < 1.0);
  const CommandResult n = cmd_ncz({c, 1});
  CHECK(n.table->rows().size() == 8);
  CHECK(n.report == cmd_ncz({c, 1}).report);
  CHECK(n.table->rows().front()[0] == "fff");
}
