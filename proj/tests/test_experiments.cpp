// Experiment layer: spec parsing, seed-stream bookkeeping, sweep accounting,
// the audit runners, CSV/JSON emitters, and thread-count independence.
//
// The reproduction oracles here rebuild graphs and colorings directly from the
// seeds recorded in results and re-run the dynamics through the public
// single-trial entry points, so the batch runners are checked against the
// primitives rather than against themselves.

#include <doctest.h>

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "core/config_model.hpp"
#include "core/dynamics.hpp"
#include "core/errors.hpp"
#include "core/experiments.hpp"
#include "core/monopoly.hpp"
#include "core/neighborhood.hpp"
#include "core/rng.hpp"
#include "core/theory.hpp"

using namespace mjr;

namespace {

// Seed-stream layout used by the runners: a purpose tag in the low byte and
// the grid-point index above it.
constexpr std::uint64_t kGraphStream = 1;
constexpr std::uint64_t kColoringStream = 2;
constexpr std::uint64_t kAuditStream = 3;
constexpr std::uint64_t kDynamoStream = 4;
constexpr std::uint64_t kTreeStream = 5;
constexpr std::uint64_t kPropStream = 6;

std::uint64_t sid(std::uint64_t purpose, std::uint64_t point) {
  return purpose | (point << 8);
}

Graph rebuild_regular(std::size_t n, std::uint32_t d, std::uint64_t seed,
                      std::uint32_t max_attempts = 1000) {
  Rng rng(seed);
  return generate_random_regular_auto(n, d, rng, max_attempts);
}

Graph rebuild_gnp(std::size_t n, double p, std::uint64_t seed) {
  Rng rng(seed);
  return generate_gnp(n, p, rng);
}

int parse_line_of(std::string_view text) {
  try {
    parse_experiment_spec(text);
  } catch (const ParseError& e) {
    return e.line;
  }
  return -1;
}

std::vector<std::string> split_lines(const std::string& s) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos < s.size()) {
    const std::size_t nl = s.find('\n', pos);
    if (nl == std::string::npos) {
      out.push_back(s.substr(pos));
      break;
    }
    out.push_back(s.substr(pos, nl - pos));
    pos = nl + 1;
  }
  return out;
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (true) {
    const std::size_t comma = line.find(',', pos);
    if (comma == std::string::npos) {
      out.push_back(line.substr(pos));
      return out;
    }
    out.push_back(line.substr(pos, comma - pos));
    pos = comma + 1;
  }
}

ExperimentSpec density_spec(std::size_t n, std::uint32_t d, std::vector<double> grid,
                            std::uint64_t trials, std::uint64_t seed) {
  ExperimentSpec spec;
  spec.kind = ExperimentSpec::Kind::Density;
  spec.family.kind = GraphFamily::Kind::Regular;
  spec.family.n = n;
  spec.family.d = d;
  spec.pb_grid = std::move(grid);
  spec.trials = trials;
  spec.trials_set = true;
  spec.master_seed = seed;
  spec.seed_set = true;
  return spec;
}

// Recompute a sweep point's counters straight from its trial records.
struct Tally {
  std::uint64_t red = 0;
  std::uint64_t blue = 0;
  std::uint64_t coexist_fixed = 0;
  std::uint64_t coexist_period2 = 0;
  std::uint64_t caps = 0;
  std::uint64_t round1_red = 0;
  std::uint64_t round1_blue = 0;
  std::uint64_t max_rounds = 0;
  double mean_rounds = 0;
};

Tally tally_point(const SweepResult& r, std::size_t point_index, std::size_t order) {
  const SweepPoint& p = r.points[point_index];
  Tally t;
  std::uint64_t round_sum = 0;
  std::uint64_t completed = 0;
  for (std::size_t i = p.records_begin; i < p.records_end; ++i) {
    const TrialRecord& rec = r.records[i];
    if (rec.cap_hit) {
      ++t.caps;
      continue;
    }
    switch (rec.outcome) {
      case Outcome::RedMono: ++t.red; break;
      case Outcome::BlueMono: ++t.blue; break;
      case Outcome::CoexistFixed: ++t.coexist_fixed; break;
      case Outcome::CoexistPeriod2: ++t.coexist_period2; break;
    }
    if (rec.round1_blue == 0) ++t.round1_red;
    if (rec.round1_blue == order) ++t.round1_blue;
    t.max_rounds = std::max(t.max_rounds, rec.consensus_time);
    round_sum += rec.consensus_time;
    ++completed;
  }
  t.mean_rounds = completed == 0
                      ? 0.0
                      : static_cast<double>(round_sum) / static_cast<double>(completed);
  return t;
}

void check_point_matches_records(const SweepResult& r, std::size_t point_index,
                                 std::size_t order) {
  const SweepPoint& p = r.points[point_index];
  const Tally t = tally_point(r, point_index, order);
  CHECK(p.red_mono == t.red);
  CHECK(p.blue_mono == t.blue);
  CHECK(p.coexist_fixed == t.coexist_fixed);
  CHECK(p.coexist_period2 == t.coexist_period2);
  CHECK(p.cap_hits == t.caps);
  CHECK(p.round1_red_mono == t.round1_red);
  CHECK(p.round1_blue_mono == t.round1_blue);
  CHECK(p.max_rounds == t.max_rounds);
  CHECK(p.mean_rounds == doctest::Approx(t.mean_rounds).epsilon(1e-15));
  CHECK(p.red_mono + p.blue_mono + p.coexist_fixed + p.coexist_period2 + p.cap_hits ==
        p.trials);
}

// Re-run one recorded trial from its seeds and compare every reported field.
void check_record_reproduces(const ExperimentSpec& spec, double pb,
                             const TrialRecord& rec, const Graph* shared) {
  Graph local;
  const Graph* g = shared;
  if (g == nullptr) {
    local = rebuild_regular(spec.family.n, spec.family.d, rec.graph_seed,
                            spec.max_attempts);
    g = &local;
  }
  Rng color_rng(rec.coloring_seed);
  Coloring start = random_coloring(g->order(), pb, color_rng);
  const ConsensusReport rep = run_to_cycle(*g, std::move(start), RunOptions{spec.round_cap});
  CHECK(rec.outcome == rep.outcome);
  CHECK(rec.consensus_time == rep.consensus_time);
  CHECK(rec.period == rep.period);
  CHECK(rec.initial_blue == rep.initial_blue);
  CHECK(rec.final_blue == rep.final_blue);
  const std::uint64_t round1 =
      rep.blue_counts.size() > 1 ? rep.blue_counts[1] : rep.blue_counts[0];
  CHECK(rec.round1_blue == round1);
}

}  // namespace

TEST_SUITE("experiment_spec") {
  TEST_CASE("every key round-trips into the parsed struct") {
    const ExperimentSpec spec = parse_experiment_spec(
        "# full configuration\n"
        "experiment = density\n"
        "family = regular\n"
        "n = 64\n"
        "d = 3\n"
        "\n"
        "pb = 0.1, 0.5, 0.9\n"
        "cgrid = 0.5,2\n"
        "trials = 12\n"
        "seed = 99\n"
        "cprime = 2.5\n"
        "round_cap = 77\n"
        "sampler = fast\n"
        "max_attempts = 17\n"
        "graphs = 4\n"
        "fixed_graph = true\n"
        "beta = 0.25\n"
        "audit_trials = 11\n"
        "dynamo_budget = 9\n"
        "strategy = uniform\n"
        "k = 6\n"
        "validate = 1\n");
    CHECK(spec.kind == ExperimentSpec::Kind::Density);
    CHECK(spec.family.kind == GraphFamily::Kind::Regular);
    CHECK(spec.family.n == 64);
    CHECK(spec.family.d == 3);
    CHECK(spec.pb_grid == std::vector<double>{0.1, 0.5, 0.9});
    CHECK(spec.c_grid == std::vector<double>{0.5, 2.0});
    CHECK(spec.trials == 12);
    CHECK(spec.trials_set);
    CHECK(spec.master_seed == 99);
    CHECK(spec.seed_set);
    CHECK(spec.c_prime == 2.5);
    CHECK(spec.round_cap == 77);
    CHECK(spec.sampler == RegularSampler::Fast);
    CHECK(spec.max_attempts == 17);
    CHECK(spec.graphs == 4);
    CHECK(spec.fixed_graph);
    CHECK(spec.beta == 0.25);
    CHECK(spec.audit_trials == 11);
    CHECK(spec.dynamo_budget == 9);
    CHECK(spec.strategy == "uniform");
    CHECK(spec.depth == 6);
    CHECK(spec.depth_set);
    CHECK(spec.validate);
  }

  TEST_CASE("family variants and their payload keys") {
    const ExperimentSpec cu = parse_experiment_spec(
        "experiment = low-degree\nfamily = cycle-union\nlengths = 5,7,9\n");
    CHECK(cu.kind == ExperimentSpec::Kind::LowDegree);
    CHECK(cu.family.kind == GraphFamily::Kind::CycleUnion);
    CHECK(cu.family.lengths == std::vector<std::uint64_t>{5, 7, 9});

    const ExperimentSpec gnp = parse_experiment_spec(
        "experiment = gnp\nfamily = gnp\nn = 40\np = 0.125\n");
    CHECK(gnp.family.kind == GraphFamily::Kind::Gnp);
    CHECK(gnp.family.n == 40);
    CHECK(gnp.family.edge_probability == 0.125);

    CHECK(parse_experiment_spec("experiment = tree-audit\nfamily = matching\n")
              .family.kind == GraphFamily::Kind::Matching);
    CHECK(parse_experiment_spec("experiment = immunity\nfamily = empty\n")
              .family.kind == GraphFamily::Kind::Empty);
  }

  TEST_CASE("defaults when keys are omitted") {
    const ExperimentSpec spec = parse_experiment_spec("experiment = propagation\n");
    CHECK(spec.kind == ExperimentSpec::Kind::Propagation);
    CHECK(spec.c_grid == std::vector<double>{0.1, 0.3, 1.0, 3.0, 10.0});
    CHECK(spec.pb_grid.empty());
    CHECK_FALSE(spec.trials_set);
    CHECK_FALSE(spec.seed_set);
    CHECK(spec.c_prime == 1.0);
    CHECK(spec.round_cap == 0);
    CHECK(spec.sampler == RegularSampler::Auto);
    CHECK(spec.max_attempts == 1000);
    CHECK(spec.graphs == 0);
    CHECK_FALSE(spec.fixed_graph);
    CHECK(spec.beta == 0.02);
    CHECK(spec.audit_trials == 1000);
    CHECK(spec.dynamo_budget == 64);
    CHECK(spec.strategy == "greedy");
    CHECK_FALSE(spec.depth_set);
    CHECK_FALSE(spec.validate);
  }

  TEST_CASE("whitespace, comments, and CRLF are tolerated") {
    const ExperimentSpec spec = parse_experiment_spec(
        "experiment=density\r\n"
        "  family =  regular \r\n"
        "\t n\t=\t12\r\n"
        "   \r\n"
        "# trailing comment\r\n"
        "d = 3");  // no trailing newline
    CHECK(spec.family.n == 12);
    CHECK(spec.family.d == 3);
  }

  TEST_CASE("errors carry one-based line numbers") {
    CHECK(parse_line_of("experiment = density\nfamily = regular\nfamily = regular\n") == 3);
    CHECK(parse_line_of("experiment = density\n\n# c\nbogus = 1\n") == 4);
    CHECK(parse_line_of("experiment = density\nnonsense\n") == 2);
    CHECK(parse_line_of("experiment = density\n = 5\n") == 2);
    CHECK(parse_line_of("experiment = density\nn =\n") == 2);
    CHECK(parse_line_of("n = 12x\n") == 1);
    CHECK(parse_line_of("pb = zap\n") == 1);
    CHECK(parse_line_of("validate = yes\n") == 1);
    CHECK(parse_line_of("pb = 0.1,,0.2\n") == 1);
    CHECK(parse_line_of("experiment = wombat\n") == 1);
    CHECK(parse_line_of("experiment = density\nfamily = clique\n") == 2);
    CHECK(parse_line_of("sampler = fastest\n") == 1);
  }

  TEST_CASE("line number is embedded in the message") {
    try {
      parse_experiment_spec("experiment = density\nfamily = regular\nfamily = regular\n");
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      const std::string msg = e.what();
      CHECK(msg.rfind("line 3: ", 0) == 0);
      CHECK(msg.find("duplicate key") != std::string::npos);
    }
  }

  TEST_CASE("required keys") {
    CHECK(parse_line_of("family = regular\n") == 0);  // no experiment
    CHECK(parse_line_of("experiment = density\n") == 0);  // no family
    // Propagation runs off the recurrence alone; no family needed.
    CHECK_NOTHROW(parse_experiment_spec("experiment = propagation\n"));
  }
}

TEST_SUITE("family_helpers") {
  TEST_CASE("order, degree, determinism, and names") {
    GraphFamily f;
    f.kind = GraphFamily::Kind::Regular;
    f.n = 10;
    f.d = 4;
    CHECK(f.order() == 10);
    CHECK(f.dynamics_degree() == 4);
    CHECK_FALSE(f.deterministic());
    CHECK(f.name() == "regular");

    f.kind = GraphFamily::Kind::CycleUnion;
    f.lengths = {3, 4, 5};
    CHECK(f.order() == 12);  // lengths win over n
    CHECK(f.dynamics_degree() == 2);
    CHECK(f.deterministic());
    CHECK(f.name() == "cycle-union");

    f.kind = GraphFamily::Kind::Matching;
    CHECK(f.order() == 10);
    CHECK(f.dynamics_degree() == 1);
    CHECK(f.deterministic());
    CHECK(f.name() == "matching");

    f.kind = GraphFamily::Kind::Empty;
    CHECK(f.dynamics_degree() == 0);
    CHECK(f.deterministic());
    CHECK(f.name() == "empty");

    f.kind = GraphFamily::Kind::Gnp;
    CHECK(f.dynamics_degree() == 0);
    CHECK_FALSE(f.deterministic());
    CHECK(f.name() == "gnp");
  }

  TEST_CASE("normal-approximation confidence halfwidth") {
    CHECK(normal_ci_halfwidth(50, 100) == doctest::Approx(0.098).epsilon(1e-12));
    CHECK(normal_ci_halfwidth(0, 100) == 0.0);
    CHECK(normal_ci_halfwidth(100, 100) == 0.0);
    CHECK(normal_ci_halfwidth(0, 0) == 0.0);
  }
}

TEST_SUITE("density_sweep") {
  TEST_CASE("accounting, seed streams, and record reproduction") {
    const ExperimentSpec spec = density_spec(16, 3, {0.05, 0.9}, 60, 7);
    const SweepResult r = run_density_experiment(spec, 2);

    REQUIRE(r.points.size() == 2);
    CHECK(r.records.size() == 120);
    CHECK(r.spec.pb_grid == spec.pb_grid);

    for (std::size_t pi = 0; pi < 2; ++pi) {
      const SweepPoint& p = r.points[pi];
      CHECK(p.pb == spec.pb_grid[pi]);
      CHECK(p.trials == 60);
      CHECK(p.records_end - p.records_begin == 60);
      check_point_matches_records(r, pi, 16);

      for (std::size_t i = p.records_begin; i < p.records_end; ++i) {
        const TrialRecord& rec = r.records[i];
        const std::uint64_t trial = i - p.records_begin;
        CHECK(rec.trial == trial);
        CHECK(rec.graph_seed == derive_seed(7, sid(kGraphStream, pi), trial));
        CHECK(rec.coloring_seed == derive_seed(7, sid(kColoringStream, pi), trial));
        CHECK_FALSE(rec.cap_hit);  // small regular graphs settle instantly
      }
    }

    // Independent replay of a spread of individual trials.
    for (std::size_t pi = 0; pi < 2; ++pi) {
      const SweepPoint& p = r.points[pi];
      for (std::size_t i = p.records_begin; i < p.records_end; i += 7) {
        check_record_reproduces(spec, p.pb, r.records[i], nullptr);
      }
    }

    // Minority blue almost never wins; majority blue usually does.
    CHECK(r.points[0].red_freq() >= 0.8);
    CHECK(r.points[1].red_freq() <= 0.2);
    CHECK(r.monotonicity_flags.empty());

    REQUIRE(r.predicted_bounds.size() == 3);
    CHECK(r.predicted_bounds[0] == predicted_round_bound(3, 16.0, 1.0));
    CHECK(r.predicted_bounds[1] == predicted_round_bound(3, 16.0, 2.0));
    CHECK(r.predicted_bounds[2] == predicted_round_bound(3, 16.0, 3.0));
  }

  TEST_CASE("fixed graph pins one shared seed") {
    ExperimentSpec spec = density_spec(16, 3, {0.2, 0.6}, 30, 7);
    spec.fixed_graph = true;
    const SweepResult r = run_density_experiment(spec, 2);
    const std::uint64_t shared = derive_seed(7, sid(kGraphStream, 0), 0);
    REQUIRE(r.records.size() == 60);
    const Graph g = rebuild_regular(16, 3, shared);
    for (const TrialRecord& rec : r.records) {
      CHECK(rec.graph_seed == shared);
    }
    // Replay a few trials against the shared graph.
    for (std::size_t pi = 0; pi < 2; ++pi) {
      const SweepPoint& p = r.points[pi];
      for (std::size_t i = p.records_begin; i < p.records_end; i += 11) {
        check_record_reproduces(spec, p.pb, r.records[i], &g);
      }
    }
  }

  TEST_CASE("predicted bounds need d >= 2 and n >= 4") {
    ExperimentSpec tiny = density_spec(3, 2, {0.5}, 5, 1);
    CHECK(run_density_experiment(tiny, 1).predicted_bounds.empty());
    ExperimentSpec deg1 = density_spec(16, 1, {0.3}, 10, 1);
    CHECK(run_density_experiment(deg1, 1).predicted_bounds.empty());
  }

  TEST_CASE("input validation") {
    ExperimentSpec spec = density_spec(16, 3, {0.5}, 10, 7);

    ExperimentSpec no_seed = spec;
    no_seed.seed_set = false;
    CHECK_THROWS_AS(run_density_experiment(no_seed, 1), InvalidArgument);

    ExperimentSpec no_trials = spec;
    no_trials.trials = 0;
    CHECK_THROWS_AS(run_density_experiment(no_trials, 1), InvalidArgument);

    ExperimentSpec wrong_family = spec;
    wrong_family.family.kind = GraphFamily::Kind::Empty;
    CHECK_THROWS_AS(run_density_experiment(wrong_family, 1), InvalidArgument);

    ExperimentSpec no_grid = spec;
    no_grid.pb_grid.clear();
    CHECK_THROWS_AS(run_density_experiment(no_grid, 1), InvalidArgument);

    ExperimentSpec bad_pb = spec;
    bad_pb.pb_grid = {1.5};
    CHECK_THROWS_AS(run_density_experiment(bad_pb, 1), InvalidArgument);
    bad_pb.pb_grid = {-0.1};
    CHECK_THROWS_AS(run_density_experiment(bad_pb, 1), InvalidArgument);
  }
}

TEST_SUITE("low_degree") {
  TEST_CASE("default grid scales by order for degree <= 1") {
    ExperimentSpec spec;
    spec.kind = ExperimentSpec::Kind::LowDegree;
    spec.family.kind = GraphFamily::Kind::Empty;
    spec.family.n = 30;
    spec.trials = 200;
    spec.trials_set = true;
    spec.master_seed = 3;
    spec.seed_set = true;
    const SweepResult r = run_low_degree_threshold(spec, 2);

    std::vector<double> expected;
    for (double c : {0.1, 0.3, 1.0, 3.0, 10.0}) expected.push_back(std::min(1.0, c / 30.0));
    REQUIRE(r.points.size() == 5);
    for (std::size_t i = 0; i < 5; ++i) {
      CHECK(r.points[i].pb == doctest::Approx(expected[i]).epsilon(1e-15));
      check_point_matches_records(r, i, 30);
    }
    CHECK(r.spec.pb_grid == expected);

    // Deterministic family: no graph randomness to seed.
    for (const TrialRecord& rec : r.records) CHECK(rec.graph_seed == 0);

    // Isolated vertices never flip: survival is exactly "any vertex started
    // blue", so the ends of the scale grid pin the transition.
    CHECK(r.points.front().blue_survival_freq() <= 0.25);
    CHECK(r.points.back().blue_survival_freq() >= 0.95);
    // Everything is already a fixed point.
    for (const SweepPoint& p : r.points) {
      CHECK(p.max_rounds == 0);
      CHECK(p.mean_rounds == 0.0);
      CHECK(p.cap_hits == 0);
    }
  }

  TEST_CASE("default grid scales by sqrt(order) for cycles") {
    ExperimentSpec spec;
    spec.kind = ExperimentSpec::Kind::LowDegree;
    spec.family.kind = GraphFamily::Kind::CycleUnion;
    spec.family.lengths = {8, 8};
    spec.trials = 20;
    spec.trials_set = true;
    spec.master_seed = 5;
    spec.seed_set = true;
    const SweepResult r = run_low_degree_threshold(spec, 1);
    const std::vector<double> expected = {0.025, 0.075, 0.25, 0.75, 1.0};
    REQUIRE(r.spec.pb_grid.size() == 5);
    for (std::size_t i = 0; i < 5; ++i) {
      CHECK(r.spec.pb_grid[i] == doctest::Approx(expected[i]).epsilon(1e-15));
    }
    // pb = 1 starts all-blue and stays there.
    CHECK(r.points.back().blue_mono == 20);
  }

  TEST_CASE("an explicit pb grid overrides the scale grid") {
    ExperimentSpec spec;
    spec.kind = ExperimentSpec::Kind::LowDegree;
    spec.family.kind = GraphFamily::Kind::Matching;
    spec.family.n = 20;
    spec.pb_grid = {0.5};
    spec.trials = 40;
    spec.trials_set = true;
    spec.master_seed = 9;
    spec.seed_set = true;
    const SweepResult r = run_low_degree_threshold(spec, 2);
    REQUIRE(r.points.size() == 1);
    CHECK(r.points[0].pb == 0.5);
    check_point_matches_records(r, 0, 20);
    for (const TrialRecord& rec : r.records) CHECK(rec.graph_seed == 0);
    // A mixed pair blinks forever, so coexistence dominates at pb = 1/2.
    CHECK(r.points[0].coexist_period2 >= 30);
  }

  TEST_CASE("rejects families whose dynamics degree exceeds 2") {
    ExperimentSpec spec;
    spec.kind = ExperimentSpec::Kind::LowDegree;
    spec.family.kind = GraphFamily::Kind::Regular;
    spec.family.n = 16;
    spec.family.d = 3;
    spec.pb_grid = {0.5};
    spec.trials = 5;
    spec.trials_set = true;
    spec.master_seed = 1;
    spec.seed_set = true;
    CHECK_THROWS_AS(run_low_degree_threshold(spec, 1), InvalidArgument);

    spec.family.kind = GraphFamily::Kind::Gnp;
    spec.family.edge_probability = 0.1;
    CHECK_THROWS_AS(run_low_degree_threshold(spec, 1), InvalidArgument);
  }

  TEST_CASE("empty family of order zero cannot build a scale grid") {
    ExperimentSpec spec;
    spec.kind = ExperimentSpec::Kind::LowDegree;
    spec.family.kind = GraphFamily::Kind::Empty;
    spec.family.n = 0;
    spec.trials = 5;
    spec.trials_set = true;
    spec.master_seed = 1;
    spec.seed_set = true;
    CHECK_THROWS_AS(run_low_degree_threshold(spec, 1), InvalidArgument);
  }
}

TEST_SUITE("gnp_sweep") {
  TEST_CASE("per-trial graph seeds and round-one columns") {
    ExperimentSpec spec;
    spec.kind = ExperimentSpec::Kind::Gnp;
    spec.family.kind = GraphFamily::Kind::Gnp;
    spec.family.n = 24;
    spec.family.edge_probability = 0.3;
    spec.pb_grid = {0.4};
    spec.trials = 50;
    spec.trials_set = true;
    spec.master_seed = 11;
    spec.seed_set = true;
    const SweepResult r = run_gnp_experiment(spec, 2);

    REQUIRE(r.points.size() == 1);
    check_point_matches_records(r, 0, 24);
    CHECK(r.predicted_bounds.empty());

    for (const TrialRecord& rec : r.records) {
      CHECK(rec.graph_seed == derive_seed(11, sid(kGraphStream, 0), rec.trial));
      CHECK(rec.coloring_seed == derive_seed(11, sid(kColoringStream, 0), rec.trial));
    }

    // Replay a few trials on independently rebuilt graphs.
    for (std::size_t i = 0; i < r.records.size(); i += 13) {
      const TrialRecord& rec = r.records[i];
      const Graph g = rebuild_gnp(24, 0.3, rec.graph_seed);
      Rng color_rng(rec.coloring_seed);
      Coloring start = random_coloring(24, 0.4, color_rng);
      const ConsensusReport rep = run_to_cycle(g, std::move(start), RunOptions{0});
      CHECK(rec.outcome == rep.outcome);
      CHECK(rec.consensus_time == rep.consensus_time);
      CHECK(rec.final_blue == rep.final_blue);
    }
  }

  TEST_CASE("input validation") {
    ExperimentSpec spec;
    spec.kind = ExperimentSpec::Kind::Gnp;
    spec.family.kind = GraphFamily::Kind::Regular;
    spec.family.n = 8;
    spec.family.d = 3;
    spec.pb_grid = {0.5};
    spec.trials = 5;
    spec.trials_set = true;
    spec.master_seed = 1;
    spec.seed_set = true;
    CHECK_THROWS_AS(run_gnp_experiment(spec, 1), InvalidArgument);

    spec.family.kind = GraphFamily::Kind::Gnp;
    spec.family.edge_probability = 0.2;
    spec.pb_grid.clear();
    CHECK_THROWS_AS(run_gnp_experiment(spec, 1), InvalidArgument);
  }
}

TEST_SUITE("csv_output") {
  TEST_CASE("regular sweep layout") {
    const ExperimentSpec spec = density_spec(8, 3, {0.2, 0.8}, 20, 1);
    const SweepResult r = run_density_experiment(spec, 1);
    const std::string csv = sweep_to_csv(r);
    const std::vector<std::string> lines = split_lines(csv);

    REQUIRE(lines.size() == 3);
    CHECK(lines[0] == "pb,n,d,trials,red_freq,red_ci,blue_freq,mean_rounds,max_rounds");
    for (std::size_t i = 0; i < 2; ++i) {
      const SweepPoint& p = r.points[i];
      const std::vector<std::string> f = split_fields(lines[i + 1]);
      REQUIRE(f.size() == 9);
      CHECK(f[0] == fmt_double(p.pb));
      CHECK(f[1] == "8");
      CHECK(f[2] == "3");
      CHECK(f[3] == "20");
      CHECK(f[4] == fmt_double(p.red_freq()));
      CHECK(f[5] == fmt_double(p.red_ci()));
      CHECK(f[6] == fmt_double(p.blue_survival_freq()));
      CHECK(f[7] == fmt_double(p.mean_rounds));
      CHECK(f[8] == std::to_string(p.max_rounds));
    }
  }

  TEST_CASE("gnp sweep layout adds p and round-one columns") {
    ExperimentSpec spec;
    spec.kind = ExperimentSpec::Kind::Gnp;
    spec.family.kind = GraphFamily::Kind::Gnp;
    spec.family.n = 12;
    spec.family.edge_probability = 0.25;
    spec.pb_grid = {0.5};
    spec.trials = 30;
    spec.trials_set = true;
    spec.master_seed = 4;
    spec.seed_set = true;
    const SweepResult r = run_gnp_experiment(spec, 1);
    const std::vector<std::string> lines = split_lines(sweep_to_csv(r));

    REQUIRE(lines.size() == 2);
    CHECK(lines[0] ==
          "pb,n,p,trials,red_freq,red_ci,blue_freq,round1_red_freq,round1_blue_freq,"
          "mean_rounds,max_rounds");
    const SweepPoint& p = r.points[0];
    const std::vector<std::string> f = split_fields(lines[1]);
    REQUIRE(f.size() == 11);
    CHECK(f[1] == "12");
    CHECK(f[2] == "0.25");
    CHECK(f[7] == fmt_double(static_cast<double>(p.round1_red_mono) / 30.0));
    CHECK(f[8] == fmt_double(static_cast<double>(p.round1_blue_mono) / 30.0));
  }

  TEST_CASE("propagation table is fully determined") {
    ExperimentSpec spec;
    spec.kind = ExperimentSpec::Kind::Propagation;
    spec.family.d = 3;
    spec.pb_grid = {0.5};
    spec.depth = 1;
    spec.depth_set = true;
    const PropagationResult r = run_propagation(spec);
    CHECK(propagation_to_csv(r) == "level,value\n0,0.5\n1,0.75\n");
  }

  TEST_CASE("tree audit layout") {
    ExperimentSpec spec;
    spec.kind = ExperimentSpec::Kind::TreeAudit;
    spec.family.kind = GraphFamily::Kind::Regular;
    spec.family.n = 8;
    spec.family.d = 3;
    spec.graphs = 3;
    spec.master_seed = 2;
    spec.seed_set = true;
    const TreeAuditResult r = run_tree_audit(spec, 1);
    const std::vector<std::string> lines = split_lines(tree_audit_to_csv(r));

    REQUIRE(lines.size() == 4);
    CHECK(lines[0] ==
          "graph_index,n,d,k,non_tree_count,expectation_bound,count_bound,exceeds");
    for (std::size_t i = 0; i < 3; ++i) {
      const std::vector<std::string> f = split_fields(lines[i + 1]);
      REQUIRE(f.size() == 8);
      CHECK(f[0] == std::to_string(i));
      CHECK(f[1] == "8");
      CHECK(f[2] == "3");
      CHECK(f[3] == std::to_string(r.k));
      CHECK(f[4] == std::to_string(r.rows[i].non_tree_count));
      CHECK(f[5] == std::to_string(r.expectation_bound));
      CHECK(f[6] == fmt_double(r.count_bound));
      CHECK(f[7] == (r.rows[i].exceeds_bound ? "1" : "0"));
    }
  }

  TEST_CASE("immunity layout") {
    ExperimentSpec spec;
    spec.kind = ExperimentSpec::Kind::Immunity;
    spec.family.kind = GraphFamily::Kind::Regular;
    spec.family.n = 20;
    spec.family.d = 11;
    spec.graphs = 1;
    spec.beta = 0.2;
    spec.audit_trials = 10;
    spec.dynamo_budget = 8;
    spec.strategy = "uniform";
    spec.master_seed = 5;
    spec.seed_set = true;
    const ImmunityResult r = run_immunity_experiment(spec, 1);
    const std::vector<std::string> lines = split_lines(immunity_to_csv(r));

    REQUIRE(lines.size() == 2);
    CHECK(lines[0] ==
          "graph_index,n,d,beta,sets_tested,alpha_observed,growth_violations,"
          "dynamo_best_size,dynamo_evaluations");
    const std::vector<std::string> f = split_fields(lines[1]);
    REQUIRE(f.size() == 9);
    CHECK(f[0] == "0");
    CHECK(f[1] == "20");
    CHECK(f[2] == "11");
    CHECK(f[3] == fmt_double(r.rows[0].audit.beta));
    CHECK(f[4] == std::to_string(r.rows[0].audit.sets_tested));
    CHECK(f[7] == std::to_string(r.rows[0].dynamo.best_size));
  }

  TEST_CASE("compact float rendering") {
    CHECK(fmt_double(0.5) == "0.5");
    CHECK(fmt_double(0.0) == "0");
    CHECK(fmt_double(216.0) == "216");
    CHECK(fmt_double(1.0 / 3.0) == "0.3333333333");
    CHECK(fmt_double(1e-7) == "1e-07");
  }
}

TEST_SUITE("tree_audit") {
  TEST_CASE("bounds, seed stream, and row reproduction") {
    ExperimentSpec spec;
    spec.kind = ExperimentSpec::Kind::TreeAudit;
    spec.family.kind = GraphFamily::Kind::Regular;
    spec.family.n = 64;
    spec.family.d = 3;
    spec.graphs = 6;
    spec.master_seed = 9;
    spec.seed_set = true;
    const TreeAuditResult r = run_tree_audit(spec, 2);

    CHECK_FALSE(r.k_overridden);
    CHECK(r.k == predicted_round_bound(3, 64.0, 1.0));
    CHECK(r.k == 2);
    CHECK(r.expectation_bound == non_tree_expectation_bound(3, r.k));
    CHECK(r.expectation_bound == 324);
    CHECK(r.count_bound == doctest::Approx(216.0).epsilon(1e-12));

    REQUIRE(r.rows.size() == 6);
    double sum = 0;
    std::uint64_t exceed = 0;
    for (std::size_t i = 0; i < r.rows.size(); ++i) {
      const TreeAuditRow& row = r.rows[i];
      CHECK(row.graph_index == i);
      CHECK(row.seed == derive_seed(9, sid(kTreeStream, 0), i));
      const Graph g = rebuild_regular(64, 3, row.seed);
      CHECK(row.non_tree_count == count_non_tree_neighborhoods(g, r.k));
      CHECK(row.exceeds_bound == (static_cast<double>(row.non_tree_count) > r.count_bound));
      sum += static_cast<double>(row.non_tree_count);
      exceed += row.exceeds_bound ? 1 : 0;
    }
    CHECK(r.mean_count == doctest::Approx(sum / 6.0).epsilon(1e-15));
    CHECK(r.exceed_fraction == doctest::Approx(exceed / 6.0).epsilon(1e-15));
  }

  TEST_CASE("explicit radius overrides the predicted one") {
    ExperimentSpec spec;
    spec.kind = ExperimentSpec::Kind::TreeAudit;
    spec.family.kind = GraphFamily::Kind::Regular;
    spec.family.n = 16;
    spec.family.d = 3;
    spec.graphs = 2;
    spec.depth = 1;
    spec.depth_set = true;
    spec.master_seed = 4;
    spec.seed_set = true;
    const TreeAuditResult r = run_tree_audit(spec, 1);
    CHECK(r.k_overridden);
    CHECK(r.k == 1);
    CHECK(r.expectation_bound == 36);
  }

  TEST_CASE("graph count defaults to one hundred") {
    ExperimentSpec spec;
    spec.kind = ExperimentSpec::Kind::TreeAudit;
    spec.family.kind = GraphFamily::Kind::Regular;
    spec.family.n = 8;
    spec.family.d = 3;
    spec.master_seed = 6;
    spec.seed_set = true;
    const TreeAuditResult r = run_tree_audit(spec, 2);
    CHECK(r.rows.size() == 100);
  }

  TEST_CASE("input validation") {
    ExperimentSpec spec;
    spec.kind = ExperimentSpec::Kind::TreeAudit;
    spec.family.kind = GraphFamily::Kind::Regular;
    spec.family.n = 64;
    spec.family.d = 3;
    spec.master_seed = 1;
    spec.seed_set = true;

    ExperimentSpec wrong = spec;
    wrong.family.kind = GraphFamily::Kind::Matching;
    CHECK_THROWS_AS(run_tree_audit(wrong, 1), InvalidArgument);

    ExperimentSpec no_seed = spec;
    no_seed.seed_set = false;
    CHECK_THROWS_AS(run_tree_audit(no_seed, 1), InvalidArgument);

    ExperimentSpec low_d = spec;
    low_d.family.d = 1;
    CHECK_THROWS_AS(run_tree_audit(low_d, 1), InvalidArgument);

    ExperimentSpec tiny = spec;
    tiny.family.n = 3;
    tiny.family.d = 2;
    CHECK_THROWS_AS(run_tree_audit(tiny, 1), InvalidArgument);
  }
}

TEST_SUITE("immunity_experiment") {
  TEST_CASE("rows reproduce from the audit and search streams") {
    ExperimentSpec spec;
    spec.kind = ExperimentSpec::Kind::Immunity;
    spec.family.kind = GraphFamily::Kind::Regular;
    spec.family.n = 20;
    spec.family.d = 11;
    spec.graphs = 2;
    spec.beta = 0.2;
    spec.audit_trials = 30;
    spec.dynamo_budget = 40;
    spec.strategy = "uniform";
    spec.master_seed = 5;
    spec.seed_set = true;
    const ImmunityResult r = run_immunity_experiment(spec, 2);

    REQUIRE(r.rows.size() == 2);
    double max_alpha = 0;
    std::uint64_t violations = 0;
    std::size_t min_dynamo = 0;
    for (std::size_t i = 0; i < 2; ++i) {
      const ImmunityRow& row = r.rows[i];
      CHECK(row.graph_index == i);
      CHECK(row.seed == derive_seed(5, sid(kGraphStream, 0), i));
      max_alpha = std::max(max_alpha, row.audit.alpha_observed);
      violations += row.audit.growth_violations;
      if (row.dynamo.best_size > 0) {
        min_dynamo = min_dynamo == 0 ? row.dynamo.best_size
                                     : std::min(min_dynamo, row.dynamo.best_size);
      }
    }
    CHECK(r.max_alpha == max_alpha);
    CHECK(r.total_growth_violations == violations);
    CHECK(r.min_dynamo_found == min_dynamo);

    // Rebuild row 1 wholesale from its recorded seeds.
    const ImmunityRow& row = r.rows[1];
    const Graph g = rebuild_regular(20, 11, row.seed);
    Rng audit_rng(derive_seed(5, sid(kAuditStream, 0), 1));
    const ImmunityReport audit = immunity_audit(g, 0.2, 30, "uniform", audit_rng);
    CHECK(audit.beta == row.audit.beta);
    CHECK(audit.max_set_size == row.audit.max_set_size);
    CHECK(audit.max_set_size == 4);  // floor(0.2 * 20)
    CHECK(audit.sets_tested == row.audit.sets_tested);
    CHECK(audit.strategy == row.audit.strategy);
    CHECK(audit.alpha_observed == row.audit.alpha_observed);
    CHECK(audit.witness == row.audit.witness);
    CHECK(audit.witness_takeover_size == row.audit.witness_takeover_size);
    CHECK(audit.growth_audited == row.audit.growth_audited);
    CHECK(audit.growth_audited);  // regular graph
    CHECK(audit.growth_violations == row.audit.growth_violations);

    Rng dynamo_rng(derive_seed(5, sid(kDynamoStream, 0), 1));
    const DynamoSearchResult dynamo = greedy_dynamo_search(g, 40, dynamo_rng);
    CHECK(dynamo.best_size == row.dynamo.best_size);
    CHECK(dynamo.best_set == row.dynamo.best_set);
    CHECK(dynamo.rounds_to_takeover == row.dynamo.rounds_to_takeover);
    CHECK(dynamo.evaluations == row.dynamo.evaluations);
    CHECK(dynamo.exhaustive_verifier == row.dynamo.exhaustive_verifier);
    CHECK_FALSE(dynamo.exhaustive_verifier);  // 20 free vertices is past the cutoff
  }

  TEST_CASE("input validation") {
    ExperimentSpec spec;
    spec.kind = ExperimentSpec::Kind::Immunity;
    spec.family.kind = GraphFamily::Kind::Regular;
    spec.family.n = 20;
    spec.family.d = 11;
    spec.master_seed = 1;
    spec.seed_set = true;

    ExperimentSpec low_d = spec;
    low_d.family.d = 9;
    CHECK_THROWS_AS(run_immunity_experiment(low_d, 1), InvalidArgument);

    ExperimentSpec wrong = spec;
    wrong.family.kind = GraphFamily::Kind::Empty;
    CHECK_THROWS_AS(run_immunity_experiment(wrong, 1), InvalidArgument);

    ExperimentSpec no_seed = spec;
    no_seed.seed_set = false;
    CHECK_THROWS_AS(run_immunity_experiment(no_seed, 1), InvalidArgument);
  }
}

TEST_SUITE("propagation_experiment") {
  TEST_CASE("recurrence without validation") {
    ExperimentSpec spec;
    spec.kind = ExperimentSpec::Kind::Propagation;
    spec.family.d = 3;
    spec.pb_grid = {0.5};
    spec.depth = 3;
    spec.depth_set = true;
    const PropagationResult r = run_propagation(spec);
    REQUIRE(r.recurrence.size() == 4);
    CHECK(r.recurrence[0] == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(r.recurrence[1] == doctest::Approx(0.75).epsilon(1e-15));
    CHECK(r.recurrence[2] == doctest::Approx(0.9375).epsilon(1e-15));
    CHECK(r.recurrence[3] == doctest::Approx(0.99609375).epsilon(1e-15));
    CHECK_FALSE(r.validated);
  }

  TEST_CASE("the sampled tree agrees with the recurrence") {
    ExperimentSpec spec;
    spec.kind = ExperimentSpec::Kind::Propagation;
    spec.family.d = 3;
    spec.pb_grid = {0.5};
    spec.depth = 2;
    spec.depth_set = true;
    spec.validate = true;
    spec.trials = 3000;
    spec.trials_set = true;
    spec.master_seed = 11;
    spec.seed_set = true;
    const PropagationResult r = run_propagation(spec);

    CHECK(r.validated);
    CHECK(r.mc_trials == 3000);
    REQUIRE(r.recurrence.size() == 3);
    const double pk = r.recurrence.back();
    CHECK(pk == doctest::Approx(0.9375).epsilon(1e-15));
    CHECK(r.sigma == doctest::Approx(std::sqrt(pk * (1.0 - pk) / 3000.0)).epsilon(1e-12));
    CHECK(r.within_3sigma == (std::abs(r.mc_estimate - pk) <= 3.0 * r.sigma));
    CHECK(r.within_3sigma);

    // Same stream, same estimate.
    Rng rng(derive_seed(11, sid(kPropStream, 0), 0));
    const PropagationResult again = run_propagation_validation(3, 0.5, 2, 3000, rng);
    CHECK(again.mc_estimate == r.mc_estimate);
  }

  TEST_CASE("guards") {
    ExperimentSpec spec;
    spec.kind = ExperimentSpec::Kind::Propagation;
    spec.family.d = 3;
    spec.pb_grid = {0.5, 0.6};
    CHECK_THROWS_AS(run_propagation(spec), InvalidArgument);

    spec.pb_grid = {0.5};
    spec.validate = true;
    CHECK_THROWS_AS(run_propagation(spec), InvalidArgument);  // no seed or trials

    // A validation tree of 50^5 leaves is refused...
    ExperimentSpec deep;
    deep.kind = ExperimentSpec::Kind::Propagation;
    deep.family.d = 51;
    deep.pb_grid = {0.4};
    deep.depth = 5;
    deep.depth_set = true;
    deep.validate = true;
    deep.trials = 10;
    deep.trials_set = true;
    deep.master_seed = 1;
    deep.seed_set = true;
    CHECK_THROWS_AS(run_propagation(deep), InvalidArgument);
    // ...but the recurrence alone at that depth is fine.
    deep.validate = false;
    CHECK(run_propagation(deep).recurrence.size() == 6);

    Rng rng(1);
    CHECK_THROWS_AS(run_propagation_validation(3, 0.5, 2, 0, rng), InvalidArgument);
  }
}

TEST_SUITE("front_door") {
  TEST_CASE("output does not depend on the thread count") {
    const ExperimentSpec spec = density_spec(16, 3, {0.1, 0.6}, 40, 13);
    const ExperimentOutput one = run_experiment(spec, 1, true, true, true);
    const ExperimentOutput four = run_experiment(spec, 4, true, true, true);
    const ExperimentOutput again = run_experiment(spec, 4, true, true, true);
    CHECK(one.csv == four.csv);
    CHECK(one.json == four.json);
    CHECK(four.csv == again.csv);
    CHECK(four.json == again.json);
    CHECK_FALSE(one.csv.empty());
    CHECK_FALSE(one.json.empty());
  }

  TEST_CASE("sweep json structure") {
    const ExperimentSpec spec = density_spec(16, 3, {0.1, 0.6}, 40, 13);
    const ExperimentOutput out = run_experiment(spec, 2, false, true, true);
    const nlohmann::json j = nlohmann::json::parse(out.json);

    CHECK(j["experiment"] == "density");
    CHECK(j["family"]["kind"] == "regular");
    CHECK(j["family"]["n"] == 16);
    CHECK(j["family"]["d"] == 3);
    CHECK(j["trials"] == 40);
    CHECK(j["seed"] == 13);
    CHECK(j["round_cap"] == 0);
    CHECK(j["fixed_graph"] == false);
    REQUIRE(j["points"].size() == 2);
    for (const auto& pj : j["points"]) {
      const auto& o = pj["outcomes"];
      const std::uint64_t total = o["red_mono"].get<std::uint64_t>() +
                                  o["blue_mono"].get<std::uint64_t>() +
                                  o["coexist_fixed"].get<std::uint64_t>() +
                                  o["coexist_period2"].get<std::uint64_t>() +
                                  o["cap_hits"].get<std::uint64_t>();
      CHECK(total == 40);
      CHECK(pj.contains("red_freq"));
      CHECK(pj.contains("red_ci"));
      CHECK(pj.contains("blue_survival_freq"));
      CHECK(pj.contains("coexist_freq"));
      CHECK(pj.contains("mean_rounds"));
      CHECK(pj.contains("max_rounds"));
      // Round-one monochromy columns are particular to the gnp tables.
      CHECK_FALSE(pj.contains("round1_red_freq"));
    }
    REQUIRE(j["predicted_round_bounds"].size() == 3);
    CHECK(j["predicted_round_bounds"][0] == predicted_round_bound(3, 16.0, 1.0));
    CHECK(j["monotonicity_flags"].is_array());
    REQUIRE(j["records"].size() == 80);
    const auto& rec = j["records"][0];
    CHECK(rec["trial"] == 0);
    CHECK(rec.contains("graph_seed"));
    CHECK(rec.contains("coloring_seed"));
    CHECK(rec["cap_hit"] == false);
    CHECK(rec.contains("outcome"));
    CHECK(rec.contains("consensus_time"));
    CHECK(rec.contains("round1_blue"));

    const ExperimentOutput lean = run_experiment(spec, 2, false, true, false);
    const nlohmann::json jl = nlohmann::json::parse(lean.json);
    CHECK_FALSE(jl.contains("records"));
  }

  TEST_CASE("gnp json carries round-one frequencies") {
    ExperimentSpec spec;
    spec.kind = ExperimentSpec::Kind::Gnp;
    spec.family.kind = GraphFamily::Kind::Gnp;
    spec.family.n = 12;
    spec.family.edge_probability = 0.25;
    spec.pb_grid = {0.5};
    spec.trials = 30;
    spec.trials_set = true;
    spec.master_seed = 4;
    spec.seed_set = true;
    const ExperimentOutput out = run_experiment(spec, 1, false, true, false);
    const nlohmann::json j = nlohmann::json::parse(out.json);
    CHECK(j["experiment"] == "gnp");
    CHECK(j["family"]["p"] == 0.25);
    CHECK(j["points"][0].contains("round1_red_freq"));
    CHECK(j["points"][0].contains("round1_blue_freq"));
  }

  TEST_CASE("tree audit json structure") {
    ExperimentSpec spec;
    spec.kind = ExperimentSpec::Kind::TreeAudit;
    spec.family.kind = GraphFamily::Kind::Regular;
    spec.family.n = 8;
    spec.family.d = 3;
    spec.graphs = 3;
    spec.master_seed = 2;
    spec.seed_set = true;
    const ExperimentOutput out = run_experiment(spec, 1, true, true, false);
    const nlohmann::json j = nlohmann::json::parse(out.json);

    CHECK(j["experiment"] == "tree-audit");
    CHECK(j["graphs"] == 3);
    CHECK(j["k_overridden"] == false);
    CHECK(j["cprime"] == 1.0);
    CHECK(j.contains("k"));
    CHECK(j.contains("expectation_bound"));
    CHECK(j.contains("count_bound"));
    REQUIRE(j["rows"].size() == 3);
    CHECK(j["rows"][0].contains("seed"));
    CHECK(j["rows"][0].contains("non_tree_count"));
    CHECK(j["rows"][0].contains("exceeds"));
    CHECK(j.contains("mean_count"));
    CHECK(j.contains("exceed_fraction"));
    CHECK(out.csv.rfind("graph_index,", 0) == 0);
  }

  TEST_CASE("immunity json structure") {
    ExperimentSpec spec;
    spec.kind = ExperimentSpec::Kind::Immunity;
    spec.family.kind = GraphFamily::Kind::Regular;
    spec.family.n = 20;
    spec.family.d = 11;
    spec.graphs = 1;
    spec.beta = 0.2;
    spec.audit_trials = 10;
    spec.dynamo_budget = 8;
    spec.strategy = "uniform";
    spec.master_seed = 5;
    spec.seed_set = true;
    const ExperimentOutput out = run_experiment(spec, 1, false, true, false);
    const nlohmann::json j = nlohmann::json::parse(out.json);

    CHECK(j["experiment"] == "immunity");
    CHECK(j["beta"] == 0.2);
    CHECK(j["strategy"] == "uniform");
    REQUIRE(j["rows"].size() == 1);
    const auto& audit = j["rows"][0]["audit"];
    CHECK(audit.contains("alpha_observed"));
    CHECK(audit.contains("witness"));
    CHECK(audit.contains("growth_audited"));
    CHECK(audit["growth_audited"] == true);
    CHECK(audit.contains("growth_violations"));
    CHECK(audit.contains("growth_ratio_benchmark"));
    const auto& dynamo = j["rows"][0]["dynamo"];
    CHECK(dynamo.contains("best_size"));
    CHECK(dynamo.contains("best_set"));
    CHECK(dynamo.contains("evaluations"));
    CHECK(dynamo.contains("exhaustive_verifier"));
    CHECK(j.contains("max_alpha"));
    CHECK(j.contains("total_growth_violations"));
    CHECK(j.contains("min_dynamo_found"));
  }

  TEST_CASE("propagation json structure") {
    ExperimentSpec spec;
    spec.kind = ExperimentSpec::Kind::Propagation;
    spec.family.d = 3;
    spec.pb_grid = {0.5};
    spec.depth = 2;
    spec.depth_set = true;
    const ExperimentOutput plain = run_experiment(spec, 1, false, true, false);
    const nlohmann::json j = nlohmann::json::parse(plain.json);
    CHECK(j["experiment"] == "propagation");
    CHECK(j["d"] == 3);
    CHECK(j["pb"] == 0.5);
    CHECK(j["k"] == 2);
    REQUIRE(j["values"].size() == 3);
    CHECK(j["validation"].is_null());

    spec.validate = true;
    spec.trials = 500;
    spec.trials_set = true;
    spec.master_seed = 3;
    spec.seed_set = true;
    const ExperimentOutput checked = run_experiment(spec, 1, false, true, false);
    const nlohmann::json jv = nlohmann::json::parse(checked.json);
    CHECK(jv["validation"]["trials"] == 500);
    CHECK(jv["validation"].contains("estimate"));
    CHECK(jv["validation"].contains("sigma"));
    CHECK(jv["validation"].contains("within_3sigma"));
  }
}
