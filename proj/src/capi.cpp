#include "majority/majority.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "core/config_model.hpp"
#include "core/dynamics.hpp"
#include "core/errors.hpp"
#include "core/experiments.hpp"
#include "core/graph.hpp"
#include "core/json_out.hpp"
#include "core/monopoly.hpp"
#include "core/rng.hpp"
#include "core/theory.hpp"

struct mjr_graph {
  mjr::Graph g;
};

namespace {

thread_local std::string t_last_error;

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.data(), s.size() + 1);
  return out;
}

template <class F>
mjr_status guarded(F&& f) {
  try {
    f();
    t_last_error.clear();
    return MJR_OK;
  } catch (const mjr::InvalidArgument& e) {
    t_last_error = e.what();
    return MJR_ERR_INVALID_ARGUMENT;
  } catch (const mjr::AttemptsExhausted& e) {
    t_last_error = e.what();
    return MJR_ERR_ATTEMPTS_EXHAUSTED;
  } catch (const mjr::CapExceeded& e) {
    t_last_error = e.what();
    return MJR_ERR_CAP_EXCEEDED;
  } catch (const mjr::ParseError& e) {
    t_last_error = e.what();
    return MJR_ERR_PARSE;
  } catch (const mjr::IoError& e) {
    t_last_error = e.what();
    return MJR_ERR_IO;
  } catch (const std::exception& e) {
    t_last_error = e.what();
    return MJR_ERR_INTERNAL;
  } catch (...) {
    t_last_error = "unknown error";
    return MJR_ERR_INTERNAL;
  }
}

mjr_status graph_out(mjr::Graph&& g, mjr_graph** out) {
  *out = new mjr_graph{std::move(g)};
  return MJR_OK;
}

void require(bool ok, const char* message) {
  if (!ok) throw mjr::InvalidArgument(message);
}

mjr::Coloring coloring_for(const mjr_graph* g, const char* coloring) {
  require(coloring != nullptr, "coloring must not be null");
  mjr::Coloring c = mjr::parse_coloring(coloring);
  if (c.size() != g->g.order()) {
    throw mjr::InvalidArgument("coloring length does not match graph order");
  }
  return c;
}

}  // namespace

extern "C" {

const char* mjr_status_name(mjr_status status) {
  switch (status) {
    case MJR_OK: return "ok";
    case MJR_ERR_INVALID_ARGUMENT: return "invalid-argument";
    case MJR_ERR_ATTEMPTS_EXHAUSTED: return "attempts-exhausted";
    case MJR_ERR_CAP_EXCEEDED: return "cap-exceeded";
    case MJR_ERR_IO: return "io";
    case MJR_ERR_PARSE: return "parse";
    case MJR_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

const char* mjr_last_error(void) { return t_last_error.c_str(); }

void mjr_string_free(char* s) { std::free(s); }

uint64_t mjr_derive_seed(uint64_t master, uint64_t stream, uint64_t index) {
  return mjr::derive_seed(master, stream, index);
}

mjr_status mjr_graph_random_regular(uint64_t n, uint32_t d, uint64_t seed,
                                    uint32_t max_attempts, mjr_graph** out) {
  return guarded([&] {
    require(out != nullptr, "out must not be null");
    mjr::Rng rng(seed);
    graph_out(mjr::generate_random_regular(n, d, rng,
                                           max_attempts == 0 ? 1000 : max_attempts),
              out);
  });
}

mjr_status mjr_graph_random_regular_fast(uint64_t n, uint32_t d, uint64_t seed,
                                         uint32_t max_restarts, mjr_graph** out) {
  return guarded([&] {
    require(out != nullptr, "out must not be null");
    mjr::Rng rng(seed);
    graph_out(mjr::generate_random_regular_fast(n, d, rng,
                                                max_restarts == 0 ? 100 : max_restarts),
              out);
  });
}

mjr_status mjr_graph_random_regular_auto(uint64_t n, uint32_t d, uint64_t seed,
                                         uint32_t max_attempts, mjr_graph** out) {
  return guarded([&] {
    require(out != nullptr, "out must not be null");
    mjr::Rng rng(seed);
    graph_out(mjr::generate_random_regular_auto(n, d, rng,
                                                max_attempts == 0 ? 1000 : max_attempts),
              out);
  });
}

mjr_status mjr_graph_cycle_union(const uint64_t* lengths, size_t count, mjr_graph** out) {
  return guarded([&] {
    require(out != nullptr, "out must not be null");
    require(lengths != nullptr || count == 0, "lengths must not be null");
    graph_out(mjr::generate_cycle_union({lengths, count}), out);
  });
}

mjr_status mjr_graph_matching(uint64_t n, mjr_graph** out) {
  return guarded([&] {
    require(out != nullptr, "out must not be null");
    graph_out(mjr::generate_matching(n), out);
  });
}

mjr_status mjr_graph_empty(uint64_t n, mjr_graph** out) {
  return guarded([&] {
    require(out != nullptr, "out must not be null");
    graph_out(mjr::generate_empty(n), out);
  });
}

mjr_status mjr_graph_gnp(uint64_t n, double p, uint64_t seed, mjr_graph** out) {
  return guarded([&] {
    require(out != nullptr, "out must not be null");
    mjr::Rng rng(seed);
    graph_out(mjr::generate_gnp(n, p, rng), out);
  });
}

mjr_status mjr_graph_read(const char* path, mjr_graph** out) {
  return guarded([&] {
    require(out != nullptr && path != nullptr, "path and out must not be null");
    graph_out(mjr::read_edge_list_file(path), out);
  });
}

mjr_status mjr_graph_write(const mjr_graph* g, const char* path) {
  return guarded([&] {
    require(g != nullptr && path != nullptr, "graph and path must not be null");
    mjr::write_edge_list_file(g->g, path);
  });
}

uint64_t mjr_graph_order(const mjr_graph* g) { return g ? g->g.order() : 0; }

uint64_t mjr_graph_edge_count(const mjr_graph* g) { return g ? g->g.edge_count() : 0; }

int64_t mjr_graph_regular_degree(const mjr_graph* g) {
  if (!g) return -1;
  const auto d = g->g.regular_degree();
  return d ? static_cast<int64_t>(*d) : -1;
}

void mjr_graph_free(mjr_graph* g) { delete g; }

mjr_status mjr_random_coloring(uint64_t n, double p_blue, uint64_t seed, char** out) {
  return guarded([&] {
    require(out != nullptr, "out must not be null");
    mjr::Rng rng(seed);
    *out = dup_string(mjr::serialize_coloring(mjr::random_coloring(n, p_blue, rng)));
  });
}

mjr_status mjr_simulate(const mjr_graph* g, const char* coloring, uint64_t round_cap,
                        mjr_consensus_report* out) {
  return guarded([&] {
    require(g != nullptr && out != nullptr, "graph and out must not be null");
    const mjr::ConsensusReport rep =
        mjr::run_to_cycle(g->g, coloring_for(g, coloring), mjr::RunOptions{round_cap});
    out->consensus_time = rep.consensus_time;
    out->period = rep.period;
    out->outcome = static_cast<int32_t>(rep.outcome);
    out->initial_blue = rep.initial_blue;
    out->final_blue = rep.final_blue;
  });
}

mjr_status mjr_simulate_json(const mjr_graph* g, const char* coloring, uint64_t round_cap,
                             int include_trajectory, char** json_out) {
  return guarded([&] {
    require(g != nullptr && json_out != nullptr, "graph and out must not be null");
    const mjr::ConsensusReport rep =
        mjr::run_to_cycle(g->g, coloring_for(g, coloring), mjr::RunOptions{round_cap});
    *json_out =
        dup_string(mjr::consensus_report_to_json(g->g, rep, include_trajectory != 0));
  });
}

mjr_status mjr_propagation_recurrence(uint32_t d, double p_blue, uint32_t k,
                                      double* values) {
  return guarded([&] {
    require(values != nullptr, "values must not be null");
    const std::vector<double> v = mjr::propagation_recurrence(d, p_blue, k);
    for (std::size_t i = 0; i < v.size(); ++i) values[i] = v[i];
  });
}

double mjr_propagation_level1_bound(uint32_t d, double eps) {
  double result = -1.0;
  guarded([&] { result = mjr::propagation_level1_bound(d, eps); });
  return result;
}

uint64_t mjr_non_tree_expectation_bound(uint32_t d, uint32_t k) {
  uint64_t result = 0;
  guarded([&] { result = mjr::non_tree_expectation_bound(d, k); });
  return result;
}

mjr_status mjr_predicted_round_bound(uint32_t d, double n, double c_prime, uint32_t* out) {
  return guarded([&] {
    require(out != nullptr, "out must not be null");
    *out = mjr::predicted_round_bound(d, n, c_prime);
  });
}

mjr_status mjr_dynamo_exact_min(const mjr_graph* g, uint32_t* out_size) {
  return guarded([&] {
    require(g != nullptr && out_size != nullptr, "graph and out must not be null");
    *out_size = static_cast<uint32_t>(mjr::exhaustive_min_dynamo(g->g));
  });
}

mjr_status mjr_dynamo_greedy_json(const mjr_graph* g, uint64_t budget, uint64_t seed,
                                  char** json_out) {
  return guarded([&] {
    require(g != nullptr && json_out != nullptr, "graph and out must not be null");
    mjr::Rng rng(seed);
    *json_out =
        dup_string(mjr::dynamo_result_to_json(mjr::greedy_dynamo_search(g->g, budget, rng)));
  });
}

mjr_status mjr_is_dynamo(const mjr_graph* g, const uint64_t* vertices, size_t count,
                         int adversary, uint64_t round_cap, int32_t* out_is_dynamo,
                         uint64_t* out_rounds) {
  return guarded([&] {
    require(g != nullptr && out_is_dynamo != nullptr, "graph and out must not be null");
    require(vertices != nullptr || count == 0, "vertices must not be null");
    mjr::VertexSet s(g->g.order());
    for (size_t i = 0; i < count; ++i) {
      require(vertices[i] < g->g.order(), "seed vertex out of range");
      s.insert(static_cast<mjr::Vertex>(vertices[i]));
    }
    const mjr::DynamoCheck check = mjr::is_dynamo(
        g->g, s,
        adversary != 0 ? mjr::AdversaryMode::Exhaustive : mjr::AdversaryMode::Canonical,
        round_cap);
    *out_is_dynamo = check.is_dynamo ? 1 : 0;
    if (out_rounds) *out_rounds = check.rounds;
  });
}

mjr_status mjr_immunity_audit_json(const mjr_graph* g, double beta, uint64_t trials,
                                   const char* strategy, uint64_t seed, char** json_out) {
  return guarded([&] {
    require(g != nullptr && json_out != nullptr, "graph and out must not be null");
    require(strategy != nullptr, "strategy must not be null");
    mjr::Rng rng(seed);
    *json_out = dup_string(mjr::immunity_report_to_json(
        mjr::immunity_audit(g->g, beta, trials, strategy, rng)));
  });
}

mjr_status mjr_experiment_run(const char* spec_text, uint32_t threads, int json_records,
                              char** csv_out, char** json_out) {
  return guarded([&] {
    require(spec_text != nullptr, "spec text must not be null");
    const mjr::ExperimentSpec spec = mjr::parse_experiment_spec(spec_text);
    const mjr::ExperimentOutput out =
        mjr::run_experiment(spec, threads == 0 ? 1 : threads, csv_out != nullptr,
                            json_out != nullptr, json_records != 0);
    if (csv_out) *csv_out = dup_string(out.csv);
    if (json_out) *json_out = dup_string(out.json);
  });
}

}  // extern "C"
