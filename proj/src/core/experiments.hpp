#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "core/dynamics.hpp"
#include "core/graph.hpp"
#include "core/monopoly.hpp"
#include "core/rng.hpp"

namespace mjr {

struct GraphFamily {
  enum class Kind { Regular, CycleUnion, Matching, Empty, Gnp };
  Kind kind = Kind::Regular;
  std::size_t n = 0;
  std::uint32_t d = 0;                 // Regular
  std::vector<std::uint64_t> lengths;  // CycleUnion
  double edge_probability = 0.0;       // Gnp

  std::size_t order() const;
  bool deterministic() const;            // same graph every trial, no seed needed
  std::uint32_t dynamics_degree() const;  // degree as reported in sweep tables
  std::string name() const;
};

enum class RegularSampler { Auto, Rejection, Fast };

struct ExperimentSpec {
  enum class Kind { Density, LowDegree, TreeAudit, Immunity, Gnp, Propagation };
  Kind kind = Kind::Density;
  GraphFamily family;

  std::vector<double> pb_grid;  // explicit initial-blue-density grid
  // Scale grid for the low-degree threshold sweep: pb = c/n (d <= 1) or
  // c/sqrt(n) (d = 2) when no explicit pb grid is given.
  std::vector<double> c_grid{0.1, 0.3, 1.0, 3.0, 10.0};

  std::uint64_t trials = 0;
  bool trials_set = false;
  std::uint64_t master_seed = 0;
  bool seed_set = false;

  double c_prime = 1.0;
  std::uint64_t round_cap = 0;  // 0 = default
  RegularSampler sampler = RegularSampler::Auto;
  std::uint32_t max_attempts = 1000;
  std::uint64_t graphs = 0;  // graph samples for tree-audit/immunity; 0 = default
  bool fixed_graph = false;  // one shared graph across trials (variance split)

  double beta = 0.02;
  std::uint64_t audit_trials = 1000;
  std::uint64_t dynamo_budget = 64;
  std::string strategy = "greedy";

  std::uint32_t depth = 0;  // propagation depth; also overrides tree-audit radius
  bool depth_set = false;
  bool validate = false;  // propagation: add the Monte Carlo cross-check
};

// Flat key=value text, one pair per line; '#' comments and blank lines are
// allowed. Unknown or duplicate keys are errors with line numbers.
ExperimentSpec parse_experiment_spec(std::string_view text);

struct TrialRecord {
  std::uint64_t trial = 0;
  std::uint64_t graph_seed = 0;
  std::uint64_t coloring_seed = 0;
  bool cap_hit = false;  // fields below are invalid when set
  Outcome outcome = Outcome::RedMono;
  std::uint64_t consensus_time = 0;
  std::uint32_t period = 1;
  std::uint64_t initial_blue = 0;
  std::uint64_t final_blue = 0;
  std::uint64_t round1_blue = 0;
};

// 1.96 * sqrt(f(1-f)/trials), the normal-approximation 95% halfwidth.
double normal_ci_halfwidth(std::uint64_t successes, std::uint64_t trials);

struct SweepPoint {
  double pb = 0;
  std::uint64_t trials = 0;
  std::uint64_t red_mono = 0;
  std::uint64_t blue_mono = 0;
  std::uint64_t coexist_fixed = 0;
  std::uint64_t coexist_period2 = 0;
  std::uint64_t cap_hits = 0;
  std::uint64_t round1_red_mono = 0;   // monochromatic already after round 1
  std::uint64_t round1_blue_mono = 0;
  std::uint64_t max_rounds = 0;
  double mean_rounds = 0;
  std::size_t records_begin = 0;
  std::size_t records_end = 0;

  double red_freq() const;
  double blue_survival_freq() const;  // any outcome other than red-mono
  double coexist_freq() const;
  double red_ci() const;
};

struct SweepResult {
  ExperimentSpec spec;
  std::vector<SweepPoint> points;
  std::vector<TrialRecord> records;
  // predicted_round_bound at c' = 1, 2, 3 (density sweeps on regular families).
  std::vector<std::uint32_t> predicted_bounds;
  // Points whose red frequency rose above the previous point beyond the sum
  // of both confidence halfwidths; expected empty on sane grids.
  std::vector<std::size_t> monotonicity_flags;
};

SweepResult run_density_experiment(const ExperimentSpec& spec, unsigned threads);
SweepResult run_low_degree_threshold(const ExperimentSpec& spec, unsigned threads);
SweepResult run_gnp_experiment(const ExperimentSpec& spec, unsigned threads);

struct TreeAuditRow {
  std::uint64_t graph_index = 0;
  std::uint64_t seed = 0;
  std::uint64_t non_tree_count = 0;
  bool exceeds_bound = false;
};

struct TreeAuditResult {
  ExperimentSpec spec;
  std::uint32_t k = 0;
  bool k_overridden = false;
  std::uint64_t expectation_bound = 0;  // 4 d^(2k)
  double count_bound = 0;               // (log2 n)^(2c'+1)
  std::vector<TreeAuditRow> rows;
  double mean_count = 0;
  double exceed_fraction = 0;
};

TreeAuditResult run_tree_audit(const ExperimentSpec& spec, unsigned threads);

struct ImmunityRow {
  std::uint64_t graph_index = 0;
  std::uint64_t seed = 0;
  ImmunityReport audit;
  DynamoSearchResult dynamo;
};

struct ImmunityResult {
  ExperimentSpec spec;
  std::vector<ImmunityRow> rows;
  double max_alpha = 0;
  std::uint64_t total_growth_violations = 0;
  std::size_t min_dynamo_found = 0;  // 0 = no dynamo found within budget
};

ImmunityResult run_immunity_experiment(const ExperimentSpec& spec, unsigned threads);

struct PropagationResult {
  ExperimentSpec spec;
  std::vector<double> recurrence;  // values[0..k]
  bool validated = false;
  std::uint64_t mc_trials = 0;
  double mc_estimate = 0;
  double sigma = 0;  // sqrt(P_k (1-P_k) / trials)
  bool within_3sigma = true;
};

// Monte Carlo on the explicit (d-1)-ary tree of the given depth versus the
// recurrence value at the root.
PropagationResult run_propagation_validation(std::uint32_t d, double p_blue,
                                             std::uint32_t k, std::uint64_t trials,
                                             Rng& rng);

PropagationResult run_propagation(const ExperimentSpec& spec);

struct ExperimentOutput {
  std::string csv;
  std::string json;
};

// Front door used by the C API and the CLI: takes an already-parsed
// ExperimentSpec, runs it, and renders the requested serializations.
ExperimentOutput run_experiment(const ExperimentSpec& spec, unsigned threads,
                                bool want_csv, bool want_json, bool json_records);

std::string sweep_to_csv(const SweepResult& r);
std::string tree_audit_to_csv(const TreeAuditResult& r);
std::string immunity_to_csv(const ImmunityResult& r);
std::string propagation_to_csv(const PropagationResult& r);

// Compact "%.10g" rendering used by every CSV emitter.
std::string fmt_double(double x);

}  // namespace mjr
