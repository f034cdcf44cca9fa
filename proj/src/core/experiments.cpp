#include "core/experiments.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <exception>
#include <set>

#include "core/config_model.hpp"
#include "core/errors.hpp"
#include "core/json_out.hpp"
#include "core/neighborhood.hpp"
#include "core/parallel.hpp"
#include "core/theory.hpp"

namespace mjr {

std::size_t GraphFamily::order() const {
  if (kind == Kind::CycleUnion) {
    std::size_t total = 0;
    for (std::uint64_t len : lengths) total += len;
    return total;
  }
  return n;
}

bool GraphFamily::deterministic() const {
  return kind == Kind::CycleUnion || kind == Kind::Matching || kind == Kind::Empty;
}

std::uint32_t GraphFamily::dynamics_degree() const {
  switch (kind) {
    case Kind::Regular: return d;
    case Kind::CycleUnion: return 2;
    case Kind::Matching: return 1;
    case Kind::Empty: return 0;
    case Kind::Gnp: return 0;
  }
  return 0;
}

std::string GraphFamily::name() const {
  switch (kind) {
    case Kind::Regular: return "regular";
    case Kind::CycleUnion: return "cycle-union";
    case Kind::Matching: return "matching";
    case Kind::Empty: return "empty";
    case Kind::Gnp: return "gnp";
  }
  return "unknown";
}

double normal_ci_halfwidth(std::uint64_t successes, std::uint64_t trials) {
  if (trials == 0) return 0.0;
  const double f = static_cast<double>(successes) / static_cast<double>(trials);
  return 1.96 * std::sqrt(f * (1.0 - f) / static_cast<double>(trials));
}

double SweepPoint::red_freq() const {
  return trials == 0 ? 0.0 : static_cast<double>(red_mono) / static_cast<double>(trials);
}

double SweepPoint::blue_survival_freq() const {
  if (trials == 0) return 0.0;
  const std::uint64_t survived = trials - red_mono - cap_hits;
  return static_cast<double>(survived) / static_cast<double>(trials);
}

double SweepPoint::coexist_freq() const {
  if (trials == 0) return 0.0;
  return static_cast<double>(coexist_fixed + coexist_period2) / static_cast<double>(trials);
}

double SweepPoint::red_ci() const { return normal_ci_halfwidth(red_mono, trials); }

// ---------------------------------------------------------------------------
// Spec parsing

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

std::uint64_t parse_u64_value(std::string_view v, int line) {
  std::uint64_t out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || ptr != v.data() + v.size()) {
    throw ParseError("malformed unsigned integer \"" + std::string(v) + "\"", line);
  }
  return out;
}

double parse_double_value(std::string_view v, int line) {
  double out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || ptr != v.data() + v.size()) {
    throw ParseError("malformed number \"" + std::string(v) + "\"", line);
  }
  return out;
}

bool parse_bool_value(std::string_view v, int line) {
  if (v == "1" || v == "true") return true;
  if (v == "0" || v == "false") return false;
  throw ParseError("malformed flag \"" + std::string(v) + "\" (want 0 or 1)", line);
}

template <class T, class Parse>
std::vector<T> parse_list(std::string_view v, int line, Parse parse) {
  std::vector<T> out;
  while (true) {
    const std::size_t comma = v.find(',');
    const std::string_view item = trim(v.substr(0, comma));
    if (item.empty()) throw ParseError("empty list item", line);
    out.push_back(parse(item, line));
    if (comma == std::string_view::npos) break;
    v.remove_prefix(comma + 1);
  }
  return out;
}

}  // namespace

ExperimentSpec parse_experiment_spec(std::string_view text) {
  ExperimentSpec spec;
  bool kind_set = false;
  bool family_set = false;
  std::set<std::string, std::less<>> seen;

  int line_number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    std::string_view raw = (nl == std::string_view::npos) ? text.substr(pos)
                                                          : text.substr(pos, nl - pos);
    pos = (nl == std::string_view::npos) ? text.size() + 1 : nl + 1;
    ++line_number;
    const std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') continue;

    const std::size_t eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ParseError("expected key=value", line_number);
    }
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));
    if (key.empty()) throw ParseError("empty key", line_number);
    if (value.empty()) throw ParseError("empty value for \"" + std::string(key) + "\"",
                                        line_number);
    if (!seen.insert(std::string(key)).second) {
      throw ParseError("duplicate key \"" + std::string(key) + "\"", line_number);
    }

    if (key == "experiment") {
      kind_set = true;
      if (value == "density") {
        spec.kind = ExperimentSpec::Kind::Density;
      } else if (value == "low-degree") {
        spec.kind = ExperimentSpec::Kind::LowDegree;
      } else if (value == "tree-audit") {
        spec.kind = ExperimentSpec::Kind::TreeAudit;
      } else if (value == "immunity") {
        spec.kind = ExperimentSpec::Kind::Immunity;
      } else if (value == "gnp") {
        spec.kind = ExperimentSpec::Kind::Gnp;
      } else if (value == "propagation") {
        spec.kind = ExperimentSpec::Kind::Propagation;
      } else {
        throw ParseError("unknown experiment \"" + std::string(value) + "\"", line_number);
      }
    } else if (key == "family") {
      family_set = true;
      if (value == "regular") {
        spec.family.kind = GraphFamily::Kind::Regular;
      } else if (value == "cycle-union") {
        spec.family.kind = GraphFamily::Kind::CycleUnion;
      } else if (value == "matching") {
        spec.family.kind = GraphFamily::Kind::Matching;
      } else if (value == "empty") {
        spec.family.kind = GraphFamily::Kind::Empty;
      } else if (value == "gnp") {
        spec.family.kind = GraphFamily::Kind::Gnp;
      } else {
        throw ParseError("unknown family \"" + std::string(value) + "\"", line_number);
      }
    } else if (key == "n") {
      spec.family.n = parse_u64_value(value, line_number);
    } else if (key == "d") {
      spec.family.d = static_cast<std::uint32_t>(parse_u64_value(value, line_number));
    } else if (key == "lengths") {
      spec.family.lengths = parse_list<std::uint64_t>(value, line_number, parse_u64_value);
    } else if (key == "p") {
      spec.family.edge_probability = parse_double_value(value, line_number);
    } else if (key == "pb") {
      spec.pb_grid = parse_list<double>(value, line_number, parse_double_value);
    } else if (key == "cgrid") {
      spec.c_grid = parse_list<double>(value, line_number, parse_double_value);
    } else if (key == "trials") {
      spec.trials = parse_u64_value(value, line_number);
      spec.trials_set = true;
    } else if (key == "seed") {
      spec.master_seed = parse_u64_value(value, line_number);
      spec.seed_set = true;
    } else if (key == "cprime") {
      spec.c_prime = parse_double_value(value, line_number);
    } else if (key == "round_cap") {
      spec.round_cap = parse_u64_value(value, line_number);
    } else if (key == "sampler") {
      if (value == "auto") {
        spec.sampler = RegularSampler::Auto;
      } else if (value == "rejection") {
        spec.sampler = RegularSampler::Rejection;
      } else if (value == "fast") {
        spec.sampler = RegularSampler::Fast;
      } else {
        throw ParseError("unknown sampler \"" + std::string(value) + "\"", line_number);
      }
    } else if (key == "max_attempts") {
      spec.max_attempts = static_cast<std::uint32_t>(parse_u64_value(value, line_number));
    } else if (key == "graphs") {
      spec.graphs = parse_u64_value(value, line_number);
    } else if (key == "fixed_graph") {
      spec.fixed_graph = parse_bool_value(value, line_number);
    } else if (key == "beta") {
      spec.beta = parse_double_value(value, line_number);
    } else if (key == "audit_trials") {
      spec.audit_trials = parse_u64_value(value, line_number);
    } else if (key == "dynamo_budget") {
      spec.dynamo_budget = parse_u64_value(value, line_number);
    } else if (key == "strategy") {
      spec.strategy = std::string(value);
    } else if (key == "k") {
      spec.depth = static_cast<std::uint32_t>(parse_u64_value(value, line_number));
      spec.depth_set = true;
    } else if (key == "validate") {
      spec.validate = parse_bool_value(value, line_number);
    } else {
      throw ParseError("unknown key \"" + std::string(key) + "\"", line_number);
    }
  }

  if (!kind_set) throw ParseError("missing required key \"experiment\"");
  const bool needs_family = spec.kind != ExperimentSpec::Kind::Propagation;
  if (needs_family && !family_set) {
    throw ParseError("missing required key \"family\"");
  }
  return spec;
}

// ---------------------------------------------------------------------------
// Shared runners

namespace {

namespace stream {
constexpr std::uint64_t kGraph = 1;
constexpr std::uint64_t kColoring = 2;
constexpr std::uint64_t kAudit = 3;
constexpr std::uint64_t kDynamo = 4;
constexpr std::uint64_t kTree = 5;
constexpr std::uint64_t kProp = 6;
}  // namespace stream

std::uint64_t stream_id(std::uint64_t purpose, std::uint64_t point) {
  return purpose | (point << 8);
}

void require_seed_and_trials(const ExperimentSpec& spec) {
  if (!spec.seed_set) throw InvalidArgument("spec needs seed=");
  if (!spec.trials_set || spec.trials == 0) throw InvalidArgument("spec needs trials >= 1");
}

Graph build_family_graph(const GraphFamily& f, RegularSampler sampler,
                         std::uint32_t max_attempts, std::uint64_t seed) {
  switch (f.kind) {
    case GraphFamily::Kind::Regular: {
      Rng rng(seed);
      switch (sampler) {
        case RegularSampler::Rejection:
          return generate_random_regular(f.n, f.d, rng, max_attempts);
        case RegularSampler::Fast:
          return generate_random_regular_fast(f.n, f.d, rng);
        case RegularSampler::Auto:
          return generate_random_regular_auto(f.n, f.d, rng, max_attempts);
      }
      throw InvalidArgument("unknown sampler");
    }
    case GraphFamily::Kind::CycleUnion: return generate_cycle_union(f.lengths);
    case GraphFamily::Kind::Matching: return generate_matching(f.n);
    case GraphFamily::Kind::Empty: return generate_empty(f.n);
    case GraphFamily::Kind::Gnp: {
      Rng rng(seed);
      return generate_gnp(f.n, f.edge_probability, rng);
    }
  }
  throw InvalidArgument("unknown graph family");
}

void rethrow_first(std::vector<std::exception_ptr>& errors) {
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

SweepResult run_sweep(const ExperimentSpec& spec, unsigned threads,
                      std::vector<double> grid) {
  require_seed_and_trials(spec);
  if (grid.empty()) throw InvalidArgument("sweep needs a nonempty pb grid");
  for (double pb : grid) {
    if (!(pb >= 0.0 && pb <= 1.0)) throw InvalidArgument("pb values must be in [0, 1]");
  }

  SweepResult result;
  result.spec = spec;
  result.spec.pb_grid = grid;

  const bool deterministic = spec.family.deterministic();
  Graph shared;
  std::uint64_t shared_seed = 0;
  if (deterministic) {
    shared = build_family_graph(spec.family, spec.sampler, spec.max_attempts, 0);
  } else if (spec.fixed_graph) {
    shared_seed = derive_seed(spec.master_seed, stream_id(stream::kGraph, 0), 0);
    shared = build_family_graph(spec.family, spec.sampler, spec.max_attempts, shared_seed);
  }

  for (std::size_t point_index = 0; point_index < grid.size(); ++point_index) {
    const double pb = grid[point_index];
    std::vector<TrialRecord> records(spec.trials);
    std::vector<std::exception_ptr> errors(spec.trials);
    const std::uint64_t graph_stream = stream_id(stream::kGraph, point_index);
    const std::uint64_t color_stream = stream_id(stream::kColoring, point_index);

    parallel_for(spec.trials, threads, [&](std::uint64_t i) {
      try {
        TrialRecord& r = records[i];
        r.trial = i;
        r.coloring_seed = derive_seed(spec.master_seed, color_stream, i);
        const Graph* g = &shared;
        Graph local;
        if (deterministic) {
          r.graph_seed = 0;
        } else if (spec.fixed_graph) {
          r.graph_seed = shared_seed;
        } else {
          r.graph_seed = derive_seed(spec.master_seed, graph_stream, i);
          local = build_family_graph(spec.family, spec.sampler, spec.max_attempts,
                                     r.graph_seed);
          g = &local;
        }
        Rng color_rng(r.coloring_seed);
        Coloring start = random_coloring(g->order(), pb, color_rng);
        try {
          const ConsensusReport rep = run_to_cycle(*g, std::move(start),
                                                   RunOptions{spec.round_cap});
          r.outcome = rep.outcome;
          r.consensus_time = rep.consensus_time;
          r.period = rep.period;
          r.initial_blue = rep.initial_blue;
          r.final_blue = rep.final_blue;
          r.round1_blue = rep.blue_counts.size() > 1 ? rep.blue_counts[1]
                                                     : rep.blue_counts[0];
        } catch (const CapExceeded&) {
          r.cap_hit = true;
        }
      } catch (...) {
        errors[i] = std::current_exception();
      }
    });
    rethrow_first(errors);

    SweepPoint point;
    point.pb = pb;
    point.trials = spec.trials;
    point.records_begin = result.records.size();
    const std::size_t order = spec.family.order();
    std::uint64_t round_sum = 0;
    std::uint64_t completed = 0;
    for (const TrialRecord& r : records) {
      if (r.cap_hit) {
        ++point.cap_hits;
        continue;
      }
      switch (r.outcome) {
        case Outcome::RedMono: ++point.red_mono; break;
        case Outcome::BlueMono: ++point.blue_mono; break;
        case Outcome::CoexistFixed: ++point.coexist_fixed; break;
        case Outcome::CoexistPeriod2: ++point.coexist_period2; break;
      }
      if (r.round1_blue == 0) ++point.round1_red_mono;
      if (r.round1_blue == order) ++point.round1_blue_mono;
      point.max_rounds = std::max(point.max_rounds, r.consensus_time);
      round_sum += r.consensus_time;
      ++completed;
    }
    point.mean_rounds =
        completed == 0 ? 0.0 : static_cast<double>(round_sum) / static_cast<double>(completed);
    result.records.insert(result.records.end(), records.begin(), records.end());
    point.records_end = result.records.size();
    result.points.push_back(point);
  }

  for (std::size_t i = 1; i < result.points.size(); ++i) {
    const SweepPoint& a = result.points[i - 1];
    const SweepPoint& b = result.points[i];
    if (b.red_freq() > a.red_freq() + a.red_ci() + b.red_ci()) {
      result.monotonicity_flags.push_back(i);
    }
  }
  return result;
}

}  // namespace

SweepResult run_density_experiment(const ExperimentSpec& spec, unsigned threads) {
  if (spec.family.kind != GraphFamily::Kind::Regular) {
    throw InvalidArgument("density experiment needs family=regular");
  }
  if (spec.pb_grid.empty()) throw InvalidArgument("density experiment needs pb=");
  SweepResult result = run_sweep(spec, threads, spec.pb_grid);
  if (spec.family.d >= 2 && spec.family.n >= 4) {
    for (double c : {1.0, 2.0, 3.0}) {
      result.predicted_bounds.push_back(
          predicted_round_bound(spec.family.d, static_cast<double>(spec.family.n), c));
    }
  }
  return result;
}

SweepResult run_low_degree_threshold(const ExperimentSpec& spec, unsigned threads) {
  const std::uint32_t d = spec.family.dynamics_degree();
  if (spec.family.kind == GraphFamily::Kind::Gnp || d > 2) {
    throw InvalidArgument("low-degree experiment needs a family of degree <= 2");
  }
  std::vector<double> grid = spec.pb_grid;
  if (grid.empty()) {
    const double order = static_cast<double>(spec.family.order());
    if (order <= 0) throw InvalidArgument("family order must be positive");
    const double scale = d == 2 ? std::sqrt(order) : order;
    for (double c : spec.c_grid) grid.push_back(std::min(1.0, c / scale));
  }
  return run_sweep(spec, threads, std::move(grid));
}

SweepResult run_gnp_experiment(const ExperimentSpec& spec, unsigned threads) {
  if (spec.family.kind != GraphFamily::Kind::Gnp) {
    throw InvalidArgument("gnp experiment needs family=gnp");
  }
  if (spec.pb_grid.empty()) throw InvalidArgument("gnp experiment needs pb=");
  return run_sweep(spec, threads, spec.pb_grid);
}

TreeAuditResult run_tree_audit(const ExperimentSpec& spec, unsigned threads) {
  if (spec.family.kind != GraphFamily::Kind::Regular) {
    throw InvalidArgument("tree audit needs family=regular");
  }
  if (!spec.seed_set) throw InvalidArgument("spec needs seed=");
  if (spec.family.d < 2 || spec.family.n < 4) {
    throw InvalidArgument("tree audit needs d >= 2 and n >= 4");
  }
  const std::uint64_t graphs = spec.graphs != 0 ? spec.graphs : 100;

  TreeAuditResult result;
  result.spec = spec;
  result.k_overridden = spec.depth_set;
  result.k = spec.depth_set
                 ? spec.depth
                 : predicted_round_bound(spec.family.d,
                                         static_cast<double>(spec.family.n), spec.c_prime);
  result.expectation_bound = non_tree_expectation_bound(spec.family.d, result.k);
  result.count_bound =
      non_tree_count_bound(static_cast<double>(spec.family.n), spec.c_prime);

  result.rows.assign(graphs, {});
  std::vector<std::exception_ptr> errors(graphs);
  parallel_for(graphs, threads, [&](std::uint64_t i) {
    try {
      TreeAuditRow& row = result.rows[i];
      row.graph_index = i;
      row.seed = derive_seed(spec.master_seed, stream_id(stream::kTree, 0), i);
      const Graph g =
          build_family_graph(spec.family, spec.sampler, spec.max_attempts, row.seed);
      row.non_tree_count = count_non_tree_neighborhoods(g, result.k);
      row.exceeds_bound = static_cast<double>(row.non_tree_count) > result.count_bound;
    } catch (...) {
      errors[i] = std::current_exception();
    }
  });
  rethrow_first(errors);

  double sum = 0;
  std::uint64_t exceed = 0;
  for (const TreeAuditRow& row : result.rows) {
    sum += static_cast<double>(row.non_tree_count);
    exceed += row.exceeds_bound ? 1 : 0;
  }
  result.mean_count = sum / static_cast<double>(graphs);
  result.exceed_fraction = static_cast<double>(exceed) / static_cast<double>(graphs);
  return result;
}

ImmunityResult run_immunity_experiment(const ExperimentSpec& spec, unsigned threads) {
  if (spec.family.kind != GraphFamily::Kind::Regular) {
    throw InvalidArgument("immunity experiment needs family=regular");
  }
  if (!spec.seed_set) throw InvalidArgument("spec needs seed=");
  if (spec.family.d < 10) {
    throw InvalidArgument("immunity experiment needs d >= 10");
  }
  const std::uint64_t graphs = spec.graphs != 0 ? spec.graphs : 10;

  ImmunityResult result;
  result.spec = spec;
  result.rows.assign(graphs, {});
  std::vector<std::exception_ptr> errors(graphs);
  parallel_for(graphs, threads, [&](std::uint64_t i) {
    try {
      ImmunityRow& row = result.rows[i];
      row.graph_index = i;
      row.seed = derive_seed(spec.master_seed, stream_id(stream::kGraph, 0), i);
      const Graph g =
          build_family_graph(spec.family, spec.sampler, spec.max_attempts, row.seed);
      Rng audit_rng(derive_seed(spec.master_seed, stream_id(stream::kAudit, 0), i));
      row.audit = immunity_audit(g, spec.beta, spec.audit_trials, spec.strategy, audit_rng);
      Rng dynamo_rng(derive_seed(spec.master_seed, stream_id(stream::kDynamo, 0), i));
      row.dynamo = greedy_dynamo_search(g, spec.dynamo_budget, dynamo_rng);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  });
  rethrow_first(errors);

  result.max_alpha = 0;
  for (const ImmunityRow& row : result.rows) {
    result.max_alpha = std::max(result.max_alpha, row.audit.alpha_observed);
    result.total_growth_violations += row.audit.growth_violations;
    if (row.dynamo.best_size > 0) {
      result.min_dynamo_found = result.min_dynamo_found == 0
                                    ? row.dynamo.best_size
                                    : std::min(result.min_dynamo_found, row.dynamo.best_size);
    }
  }
  return result;
}

PropagationResult run_propagation_validation(std::uint32_t d, double p_blue,
                                             std::uint32_t k, std::uint64_t trials,
                                             Rng& rng) {
  if (trials == 0) throw InvalidArgument("trials must be >= 1");
  PropagationResult result;
  result.recurrence = propagation_recurrence(d, p_blue, k);
  const std::uint32_t children = d - 1;
  if (std::pow(static_cast<double>(children), static_cast<double>(k)) > 1e7) {
    throw InvalidArgument("validation tree too large");
  }
  const std::uint32_t threshold = children / 2;

  auto sample_subtree = [&](auto&& self, std::uint32_t height) -> std::uint32_t {
    if (height == 0) return rng.bernoulli(p_blue) ? 1 : 0;
    std::uint32_t blue = 0;
    for (std::uint32_t c = 0; c < children; ++c) blue += self(self, height - 1);
    return blue >= threshold ? 1 : 0;
  };

  std::uint64_t hits = 0;
  for (std::uint64_t t = 0; t < trials; ++t) hits += sample_subtree(sample_subtree, k);

  result.validated = true;
  result.mc_trials = trials;
  result.mc_estimate = static_cast<double>(hits) / static_cast<double>(trials);
  const double pk = result.recurrence.back();
  result.sigma = std::sqrt(pk * (1.0 - pk) / static_cast<double>(trials));
  result.within_3sigma = std::abs(result.mc_estimate - pk) <= 3.0 * result.sigma;
  return result;
}

PropagationResult run_propagation(const ExperimentSpec& spec) {
  if (spec.pb_grid.size() != 1) {
    throw InvalidArgument("propagation needs exactly one pb value");
  }
  const double pb = spec.pb_grid.front();
  const std::uint32_t k = spec.depth;
  PropagationResult result;
  if (spec.validate) {
    require_seed_and_trials(spec);
    Rng rng(derive_seed(spec.master_seed, stream_id(stream::kProp, 0), 0));
    result = run_propagation_validation(spec.family.d, pb, k, spec.trials, rng);
  } else {
    result.recurrence = propagation_recurrence(spec.family.d, pb, k);
  }
  result.spec = spec;
  return result;
}

// ---------------------------------------------------------------------------
// CSV

std::string fmt_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

std::string sweep_to_csv(const SweepResult& r) {
  const bool gnp = r.spec.kind == ExperimentSpec::Kind::Gnp;
  std::string out;
  out += gnp ? "pb,n,p,trials,red_freq,red_ci,blue_freq,round1_red_freq,round1_blue_freq,"
               "mean_rounds,max_rounds\n"
             : "pb,n,d,trials,red_freq,red_ci,blue_freq,mean_rounds,max_rounds\n";
  for (const SweepPoint& p : r.points) {
    out += fmt_double(p.pb);
    out += ',';
    out += std::to_string(r.spec.family.order());
    out += ',';
    out += gnp ? fmt_double(r.spec.family.edge_probability)
               : std::to_string(r.spec.family.dynamics_degree());
    out += ',';
    out += std::to_string(p.trials);
    out += ',';
    out += fmt_double(p.red_freq());
    out += ',';
    out += fmt_double(p.red_ci());
    out += ',';
    out += fmt_double(p.blue_survival_freq());
    out += ',';
    if (gnp) {
      const double t = static_cast<double>(p.trials);
      out += fmt_double(static_cast<double>(p.round1_red_mono) / t);
      out += ',';
      out += fmt_double(static_cast<double>(p.round1_blue_mono) / t);
      out += ',';
    }
    out += fmt_double(p.mean_rounds);
    out += ',';
    out += std::to_string(p.max_rounds);
    out += '\n';
  }
  return out;
}

std::string tree_audit_to_csv(const TreeAuditResult& r) {
  std::string out = "graph_index,n,d,k,non_tree_count,expectation_bound,count_bound,exceeds\n";
  for (const TreeAuditRow& row : r.rows) {
    out += std::to_string(row.graph_index);
    out += ',';
    out += std::to_string(r.spec.family.n);
    out += ',';
    out += std::to_string(r.spec.family.d);
    out += ',';
    out += std::to_string(r.k);
    out += ',';
    out += std::to_string(row.non_tree_count);
    out += ',';
    out += std::to_string(r.expectation_bound);
    out += ',';
    out += fmt_double(r.count_bound);
    out += ',';
    out += row.exceeds_bound ? '1' : '0';
    out += '\n';
  }
  return out;
}

std::string immunity_to_csv(const ImmunityResult& r) {
  std::string out =
      "graph_index,n,d,beta,sets_tested,alpha_observed,growth_violations,"
      "dynamo_best_size,dynamo_evaluations\n";
  for (const ImmunityRow& row : r.rows) {
    out += std::to_string(row.graph_index);
    out += ',';
    out += std::to_string(r.spec.family.n);
    out += ',';
    out += std::to_string(r.spec.family.d);
    out += ',';
    out += fmt_double(row.audit.beta);
    out += ',';
    out += std::to_string(row.audit.sets_tested);
    out += ',';
    out += fmt_double(row.audit.alpha_observed);
    out += ',';
    out += std::to_string(row.audit.growth_violations);
    out += ',';
    out += std::to_string(row.dynamo.best_size);
    out += ',';
    out += std::to_string(row.dynamo.evaluations);
    out += '\n';
  }
  return out;
}

std::string propagation_to_csv(const PropagationResult& r) {
  std::string out = "level,value\n";
  for (std::size_t i = 0; i < r.recurrence.size(); ++i) {
    out += std::to_string(i);
    out += ',';
    out += fmt_double(r.recurrence[i]);
    out += '\n';
  }
  return out;
}

ExperimentOutput run_experiment(const ExperimentSpec& spec, unsigned threads,
                                bool want_csv, bool want_json, bool json_records) {
  ExperimentOutput out;
  switch (spec.kind) {
    case ExperimentSpec::Kind::Density:
    case ExperimentSpec::Kind::LowDegree:
    case ExperimentSpec::Kind::Gnp: {
      SweepResult r = spec.kind == ExperimentSpec::Kind::Density
                          ? run_density_experiment(spec, threads)
                          : spec.kind == ExperimentSpec::Kind::LowDegree
                                ? run_low_degree_threshold(spec, threads)
                                : run_gnp_experiment(spec, threads);
      if (want_csv) out.csv = sweep_to_csv(r);
      if (want_json) out.json = sweep_to_json(r, json_records);
      return out;
    }
    case ExperimentSpec::Kind::TreeAudit: {
      TreeAuditResult r = run_tree_audit(spec, threads);
      if (want_csv) out.csv = tree_audit_to_csv(r);
      if (want_json) out.json = tree_audit_to_json(r);
      return out;
    }
    case ExperimentSpec::Kind::Immunity: {
      ImmunityResult r = run_immunity_experiment(spec, threads);
      if (want_csv) out.csv = immunity_to_csv(r);
      if (want_json) out.json = immunity_to_json(r);
      return out;
    }
    case ExperimentSpec::Kind::Propagation: {
      PropagationResult r = run_propagation(spec);
      if (want_csv) out.csv = propagation_to_csv(r);
      if (want_json) out.json = propagation_to_json(r);
      return out;
    }
  }
  throw InvalidArgument("unknown experiment kind");
}

}  // namespace mjr
