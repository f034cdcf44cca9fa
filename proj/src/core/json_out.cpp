#include "core/json_out.hpp"

#include <json.hpp>

namespace mjr {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

const char* kind_name(ExperimentSpec::Kind k) {
  switch (k) {
    case ExperimentSpec::Kind::Density: return "density";
    case ExperimentSpec::Kind::LowDegree: return "low-degree";
    case ExperimentSpec::Kind::TreeAudit: return "tree-audit";
    case ExperimentSpec::Kind::Immunity: return "immunity";
    case ExperimentSpec::Kind::Gnp: return "gnp";
    case ExperimentSpec::Kind::Propagation: return "propagation";
  }
  return "unknown";
}

ordered_json family_json(const GraphFamily& f) {
  ordered_json j;
  j["kind"] = f.name();
  j["n"] = f.order();
  switch (f.kind) {
    case GraphFamily::Kind::Regular: j["d"] = f.d; break;
    case GraphFamily::Kind::CycleUnion: j["lengths"] = f.lengths; break;
    case GraphFamily::Kind::Gnp: j["p"] = f.edge_probability; break;
    default: break;
  }
  return j;
}

ordered_json record_json(const TrialRecord& r) {
  ordered_json j;
  j["trial"] = r.trial;
  j["graph_seed"] = r.graph_seed;
  j["coloring_seed"] = r.coloring_seed;
  j["cap_hit"] = r.cap_hit;
  if (r.cap_hit) {
    j["outcome"] = nullptr;
  } else {
    j["outcome"] = outcome_name(r.outcome);
    j["consensus_time"] = r.consensus_time;
    j["period"] = r.period;
    j["initial_blue"] = r.initial_blue;
    j["final_blue"] = r.final_blue;
    j["round1_blue"] = r.round1_blue;
  }
  return j;
}

ordered_json audit_json(const ImmunityReport& rep) {
  ordered_json j;
  j["beta"] = rep.beta;
  j["max_set_size"] = rep.max_set_size;
  j["sets_tested"] = rep.sets_tested;
  j["strategy"] = rep.strategy;
  j["alpha_observed"] = rep.alpha_observed;
  j["witness"] = rep.witness;
  j["witness_takeover_size"] = rep.witness_takeover_size;
  j["growth_audited"] = rep.growth_audited;
  if (rep.growth_audited) {
    j["growth_violations"] = rep.growth_violations;
    j["growth_ratio_benchmark"] = rep.growth_ratio_benchmark;
  }
  return j;
}

ordered_json dynamo_json(const DynamoSearchResult& res) {
  ordered_json j;
  j["best_size"] = res.best_size;
  j["best_set"] = res.best_set;
  j["rounds_to_takeover"] = res.rounds_to_takeover;
  j["evaluations"] = res.evaluations;
  j["exhaustive_verifier"] = res.exhaustive_verifier;
  return j;
}

}  // namespace

std::string sweep_to_json(const SweepResult& r, bool include_records) {
  const bool gnp = r.spec.kind == ExperimentSpec::Kind::Gnp;
  ordered_json j;
  j["experiment"] = kind_name(r.spec.kind);
  j["family"] = family_json(r.spec.family);
  j["trials"] = r.spec.trials;
  j["seed"] = r.spec.master_seed;
  j["round_cap"] = r.spec.round_cap;
  j["fixed_graph"] = r.spec.fixed_graph;
  j["points"] = ordered_json::array();
  for (const SweepPoint& p : r.points) {
    ordered_json pj;
    pj["pb"] = p.pb;
    pj["trials"] = p.trials;
    ordered_json outcomes;
    outcomes["red_mono"] = p.red_mono;
    outcomes["blue_mono"] = p.blue_mono;
    outcomes["coexist_fixed"] = p.coexist_fixed;
    outcomes["coexist_period2"] = p.coexist_period2;
    outcomes["cap_hits"] = p.cap_hits;
    pj["outcomes"] = outcomes;
    pj["red_freq"] = p.red_freq();
    pj["red_ci"] = p.red_ci();
    pj["blue_survival_freq"] = p.blue_survival_freq();
    pj["coexist_freq"] = p.coexist_freq();
    if (gnp) {
      pj["round1_red_freq"] =
          static_cast<double>(p.round1_red_mono) / static_cast<double>(p.trials);
      pj["round1_blue_freq"] =
          static_cast<double>(p.round1_blue_mono) / static_cast<double>(p.trials);
    }
    pj["mean_rounds"] = p.mean_rounds;
    pj["max_rounds"] = p.max_rounds;
    j["points"].push_back(std::move(pj));
  }
  if (!r.predicted_bounds.empty()) j["predicted_round_bounds"] = r.predicted_bounds;
  j["monotonicity_flags"] = r.monotonicity_flags;
  if (include_records) {
    j["records"] = ordered_json::array();
    for (const TrialRecord& rec : r.records) j["records"].push_back(record_json(rec));
  }
  return dump(j);
}

std::string tree_audit_to_json(const TreeAuditResult& r) {
  ordered_json j;
  j["experiment"] = kind_name(r.spec.kind);
  j["family"] = family_json(r.spec.family);
  j["seed"] = r.spec.master_seed;
  j["graphs"] = r.rows.size();
  j["k"] = r.k;
  j["k_overridden"] = r.k_overridden;
  j["cprime"] = r.spec.c_prime;
  j["expectation_bound"] = r.expectation_bound;
  j["count_bound"] = r.count_bound;
  j["rows"] = ordered_json::array();
  for (const TreeAuditRow& row : r.rows) {
    ordered_json rj;
    rj["graph_index"] = row.graph_index;
    rj["seed"] = row.seed;
    rj["non_tree_count"] = row.non_tree_count;
    rj["exceeds"] = row.exceeds_bound;
    j["rows"].push_back(std::move(rj));
  }
  j["mean_count"] = r.mean_count;
  j["exceed_fraction"] = r.exceed_fraction;
  return dump(j);
}

std::string immunity_to_json(const ImmunityResult& r) {
  ordered_json j;
  j["experiment"] = kind_name(r.spec.kind);
  j["family"] = family_json(r.spec.family);
  j["seed"] = r.spec.master_seed;
  j["graphs"] = r.rows.size();
  j["beta"] = r.spec.beta;
  j["audit_trials"] = r.spec.audit_trials;
  j["strategy"] = r.spec.strategy;
  j["dynamo_budget"] = r.spec.dynamo_budget;
  j["rows"] = ordered_json::array();
  for (const ImmunityRow& row : r.rows) {
    ordered_json rj;
    rj["graph_index"] = row.graph_index;
    rj["seed"] = row.seed;
    rj["audit"] = audit_json(row.audit);
    rj["dynamo"] = dynamo_json(row.dynamo);
    j["rows"].push_back(std::move(rj));
  }
  j["max_alpha"] = r.max_alpha;
  j["total_growth_violations"] = r.total_growth_violations;
  j["min_dynamo_found"] = r.min_dynamo_found;
  return dump(j);
}

std::string propagation_to_json(const PropagationResult& r) {
  ordered_json j;
  j["experiment"] = "propagation";
  j["d"] = r.spec.family.d;
  j["pb"] = r.recurrence.empty() ? 0.0 : r.recurrence.front();
  j["k"] = r.recurrence.empty() ? 0 : r.recurrence.size() - 1;
  j["values"] = r.recurrence;
  if (r.validated) {
    ordered_json v;
    v["trials"] = r.mc_trials;
    v["estimate"] = r.mc_estimate;
    v["sigma"] = r.sigma;
    v["within_3sigma"] = r.within_3sigma;
    j["validation"] = v;
  } else {
    j["validation"] = nullptr;
  }
  return dump(j);
}

std::string consensus_report_to_json(const Graph& g, const ConsensusReport& rep,
                                     bool include_trajectory) {
  ordered_json j;
  j["n"] = g.order();
  j["edges"] = g.edge_count();
  if (const auto d = g.regular_degree()) {
    j["regular_degree"] = *d;
  } else {
    j["regular_degree"] = nullptr;
  }
  j["consensus_time"] = rep.consensus_time;
  j["period"] = rep.period;
  j["outcome"] = outcome_name(rep.outcome);
  j["initial_blue"] = rep.initial_blue;
  j["final_blue"] = rep.final_blue;
  if (include_trajectory) j["trajectory_blue_counts"] = rep.blue_counts;
  return dump(j);
}

std::string immunity_report_to_json(const ImmunityReport& rep) {
  return dump(audit_json(rep));
}

std::string dynamo_result_to_json(const DynamoSearchResult& res) {
  return dump(dynamo_json(res));
}

}  // namespace mjr
