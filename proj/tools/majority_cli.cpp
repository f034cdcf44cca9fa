// Command-line front end; links only the public C API.
#include <majority/majority.h>

#include <CLI11.hpp>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <random>
#include <string>
#include <vector>

namespace {

[[noreturn]] void die(mjr_status st) {
  std::fprintf(stderr, "error[%s]: %s\n", mjr_status_name(st), mjr_last_error());
  int code = 1;
  if (st == MJR_ERR_INVALID_ARGUMENT || st == MJR_ERR_PARSE) code = 2;
  if (st == MJR_ERR_IO) code = 3;
  std::exit(code);
}

void check(mjr_status st) {
  if (st != MJR_OK) die(st);
}

[[noreturn]] void usage_error(const std::string& message) {
  std::fprintf(stderr, "error[invalid-argument]: %s\n", message.c_str());
  std::exit(2);
}

// Relative output paths land under $MAJORITY_OUT_DIR when it is set.
std::string resolve_out(const std::string& path) {
  if (path.empty() || path == "-" || path.front() == '/') return path;
  const char* dir = std::getenv("MAJORITY_OUT_DIR");
  if (!dir || !*dir) return path;
  std::string out = dir;
  if (out.back() != '/') out += '/';
  return out + path;
}

void write_output(const std::string& path, const std::string& content) {
  const std::string resolved = resolve_out(path);
  if (resolved.empty() || resolved == "-") {
    std::fwrite(content.data(), 1, content.size(), stdout);
    return;
  }
  std::ofstream out(resolved, std::ios::binary);
  if (!out) usage_error("cannot open " + resolved + " for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  out.flush();
  if (!out) usage_error("write failure on " + resolved);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) usage_error("cannot open " + path + " for reading");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::string owned(char* s) {
  std::string out = s ? s : "";
  mjr_string_free(s);
  return out;
}

std::uint64_t entropy_seed() {
  std::random_device rd;
  const std::uint64_t seed =
      (static_cast<std::uint64_t>(rd()) << 32) ^ static_cast<std::uint64_t>(rd());
  std::fprintf(stderr, "seed: %llu\n", static_cast<unsigned long long>(seed));
  return seed;
}

std::string fmt17(double x) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

struct GraphOpts {
  std::string family;
  std::string graph_file;
  std::uint64_t n = 0;
  std::uint32_t d = 0;
  std::vector<std::uint64_t> lengths;
  double p = 0.0;
  std::string sampler = "auto";
  std::uint32_t max_attempts = 1000;
};

void add_family_options(CLI::App& cmd, GraphOpts& o, bool with_file) {
  cmd.add_option("--family", o.family,
                 "graph family: regular | cycle-union | matching | empty | gnp")
      ->check(CLI::IsMember({"regular", "cycle-union", "matching", "empty", "gnp"}));
  cmd.add_option("--n", o.n, "vertex count");
  cmd.add_option("--d", o.d, "degree (regular family)");
  cmd.add_option("--lengths", o.lengths, "cycle lengths, e.g. 3,4")->delimiter(',');
  cmd.add_option("--p", o.p, "edge probability (gnp family)");
  cmd.add_option("--sampler", o.sampler, "regular-family sampler")
      ->check(CLI::IsMember({"auto", "rejection", "fast"}));
  cmd.add_option("--max-attempts", o.max_attempts, "rejection sampling attempt cap");
  if (with_file) {
    cmd.add_option("--graph-file", o.graph_file, "read the graph from an edge-list file");
  }
}

bool family_needs_seed(const GraphOpts& o) {
  return o.graph_file.empty() && (o.family == "regular" || o.family == "gnp");
}

mjr_graph* build_graph(const GraphOpts& o, std::uint64_t seed) {
  mjr_graph* g = nullptr;
  if (!o.graph_file.empty()) {
    check(mjr_graph_read(o.graph_file.c_str(), &g));
    return g;
  }
  if (o.family == "regular") {
    if (o.sampler == "rejection") {
      check(mjr_graph_random_regular(o.n, o.d, seed, o.max_attempts, &g));
    } else if (o.sampler == "fast") {
      check(mjr_graph_random_regular_fast(o.n, o.d, seed, 0, &g));
    } else {
      check(mjr_graph_random_regular_auto(o.n, o.d, seed, o.max_attempts, &g));
    }
  } else if (o.family == "cycle-union") {
    check(mjr_graph_cycle_union(o.lengths.data(), o.lengths.size(), &g));
  } else if (o.family == "matching") {
    check(mjr_graph_matching(o.n, &g));
  } else if (o.family == "empty") {
    check(mjr_graph_empty(o.n, &g));
  } else if (o.family == "gnp") {
    check(mjr_graph_gnp(o.n, o.p, seed, &g));
  } else {
    usage_error("need --graph-file or --family");
  }
  return g;
}

// Experiment specs are assembled only from options the user actually set, so
// library defaults stay in one place.
struct SpecBuilder {
  std::string text;
  void add(const std::string& key, const std::string& value) {
    text += key;
    text += '=';
    text += value;
    text += '\n';
  }
  void add_if(const CLI::Option* opt, const std::string& key, const std::string& value) {
    if (opt != nullptr && opt->count() > 0) add(key, value);
  }
};

std::string join_u64(const std::vector<std::uint64_t>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(xs[i]);
  }
  return out;
}

void run_experiment_command(const std::string& spec_text, unsigned threads, bool json,
                            bool records, const std::string& out_path, bool echo_json) {
  char* csv = nullptr;
  char* json_text = nullptr;
  const bool want_json = json || echo_json;
  check(mjr_experiment_run(spec_text.c_str(), threads, records ? 1 : 0,
                           json ? nullptr : &csv, want_json ? &json_text : nullptr));
  const std::string csv_str = owned(csv);
  const std::string json_str = owned(json_text);
  write_output(out_path, json ? json_str : csv_str);
  if (echo_json && !json) std::fputs(json_str.c_str(), stderr);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"synchronous two-color majority dynamics toolkit"};
  app.require_subcommand(1);

  // ---- generate ----
  auto* generate = app.add_subcommand("generate", "sample a graph and write its edge list");
  auto g_opts = std::make_shared<GraphOpts>();
  add_family_options(*generate, *g_opts, false);
  auto gen_seed = std::make_shared<std::uint64_t>(0);
  auto* gen_seed_opt = generate->add_option("--seed", *gen_seed, "RNG seed");
  auto gen_out = std::make_shared<std::string>();
  generate->add_option("--out", *gen_out, "output path")->required();
  generate->callback([g_opts, gen_seed, gen_seed_opt, gen_out] {
    if (g_opts->family.empty()) usage_error("generate needs --family");
    std::uint64_t seed = *gen_seed;
    if (gen_seed_opt->count() == 0 && family_needs_seed(*g_opts)) seed = entropy_seed();
    mjr_graph* g = build_graph(*g_opts, seed);
    check(mjr_graph_write(g, resolve_out(*gen_out).c_str()));
    mjr_graph_free(g);
  });

  // ---- simulate ----
  auto* simulate = app.add_subcommand("simulate", "run one trajectory to its limit cycle");
  auto s_opts = std::make_shared<GraphOpts>();
  add_family_options(*simulate, *s_opts, true);
  auto sim_pb = std::make_shared<double>(-1.0);
  auto* sim_pb_opt = simulate->add_option("--pb", *sim_pb, "initial blue density");
  auto sim_seed = std::make_shared<std::uint64_t>(0);
  auto* sim_seed_opt = simulate->add_option("--seed", *sim_seed, "master seed");
  auto sim_cap = std::make_shared<std::uint64_t>(0);
  simulate->add_option("--cap", *sim_cap, "round cap (0 = n^2 + 2)");
  auto sim_initial = std::make_shared<std::string>();
  simulate->add_option("--initial", *sim_initial, "read the initial coloring from a file");
  auto sim_dump = std::make_shared<std::string>();
  simulate->add_option("--dump-initial", *sim_dump, "write the initial coloring to a file");
  auto sim_traj = std::make_shared<bool>(false);
  simulate->add_flag("--trajectory", *sim_traj, "include per-round blue counts");
  auto sim_out = std::make_shared<std::string>("-");
  simulate->add_option("--out", *sim_out, "output path (- = stdout)");
  simulate->callback([s_opts, sim_pb, sim_pb_opt, sim_seed, sim_seed_opt, sim_cap,
                      sim_initial, sim_dump, sim_traj, sim_out] {
    const bool from_file = !sim_initial->empty();
    if (!from_file && sim_pb_opt->count() == 0) {
      usage_error("simulate needs --pb or --initial");
    }
    std::uint64_t seed = *sim_seed;
    if (sim_seed_opt->count() == 0 && (family_needs_seed(*s_opts) || !from_file)) {
      seed = entropy_seed();
    }
    mjr_graph* g = build_graph(*s_opts, mjr_derive_seed(seed, 1, 0));
    std::string coloring;
    if (from_file) {
      coloring = read_file(*sim_initial);
    } else {
      char* c = nullptr;
      check(mjr_random_coloring(mjr_graph_order(g), *sim_pb, mjr_derive_seed(seed, 2, 0),
                                &c));
      coloring = owned(c);
    }
    if (!sim_dump->empty()) write_output(*sim_dump, coloring);
    char* json = nullptr;
    check(mjr_simulate_json(g, coloring.c_str(), *sim_cap, *sim_traj ? 1 : 0, &json));
    write_output(*sim_out, owned(json));
    mjr_graph_free(g);
  });

  // ---- shared experiment options ----
  struct ExperimentCommon {
    unsigned threads = 1;
    bool json = false;
    bool records = false;
    std::string out = "-";
    std::uint64_t seed = 0;
    CLI::Option* seed_opt = nullptr;
  };
  auto add_common = [](CLI::App& cmd, ExperimentCommon& c, bool with_records) {
    cmd.add_option("--threads", c.threads, "worker threads (deterministic result)");
    cmd.add_flag("--json", c.json, "emit JSON instead of CSV");
    if (with_records) cmd.add_flag("--records", c.records, "embed per-trial records (JSON)");
    cmd.add_option("--out", c.out, "output path (- = stdout)");
    c.seed_opt = cmd.add_option("--seed", c.seed, "master seed");
  };
  auto common_seed = [](const ExperimentCommon& c) {
    return c.seed_opt->count() > 0 ? c.seed : entropy_seed();
  };

  // ---- sweep ----
  auto* sweep = app.add_subcommand("sweep", "density sweep over a pb grid");
  auto sw_common = std::make_shared<ExperimentCommon>();
  auto sw_spec = std::make_shared<std::string>();
  sweep->add_option("--spec", *sw_spec, "run a key=value spec file as-is");
  auto sw_experiment = std::make_shared<std::string>();
  sweep->add_option("--experiment", *sw_experiment, "density | low-degree | gnp")
      ->check(CLI::IsMember({"density", "low-degree", "gnp"}));
  auto sw_family = std::make_shared<std::string>();
  sweep->add_option("--family", *sw_family,
                    "regular | cycle-union | matching | empty | gnp");
  auto sw_n = std::make_shared<std::uint64_t>(0);
  auto* sw_n_opt = sweep->add_option("--n", *sw_n, "vertex count");
  auto sw_d = std::make_shared<std::uint32_t>(0);
  auto* sw_d_opt = sweep->add_option("--d", *sw_d, "degree (regular family)");
  auto sw_lengths = std::make_shared<std::vector<std::uint64_t>>();
  auto* sw_lengths_opt =
      sweep->add_option("--lengths", *sw_lengths, "cycle lengths")->delimiter(',');
  auto sw_p = std::make_shared<double>(0.0);
  auto* sw_p_opt = sweep->add_option("--p", *sw_p, "edge probability (gnp family)");
  auto sw_pb = std::make_shared<std::string>();
  auto* sw_pb_opt = sweep->add_option("--pb", *sw_pb, "initial blue densities, e.g. 0.01,0.1");
  auto sw_cgrid = std::make_shared<std::string>();
  auto* sw_cgrid_opt =
      sweep->add_option("--cgrid", *sw_cgrid, "scale grid for the low-degree sweep");
  auto sw_trials = std::make_shared<std::uint64_t>(0);
  auto* sw_trials_opt = sweep->add_option("--trials", *sw_trials, "trials per grid point");
  auto sw_cprime = std::make_shared<double>(1.0);
  auto* sw_cprime_opt = sweep->add_option("--cprime", *sw_cprime, "round-bound constant");
  auto sw_cap = std::make_shared<std::uint64_t>(0);
  auto* sw_cap_opt = sweep->add_option("--round-cap", *sw_cap, "round cap per trial");
  auto sw_sampler = std::make_shared<std::string>();
  auto* sw_sampler_opt = sweep->add_option("--sampler", *sw_sampler, "regular sampler")
                             ->check(CLI::IsMember({"auto", "rejection", "fast"}));
  auto sw_fixed = std::make_shared<bool>(false);
  auto* sw_fixed_opt =
      sweep->add_flag("--fixed-graph", *sw_fixed, "one shared graph for all trials");
  add_common(*sweep, *sw_common, true);
  sweep->callback([=] {
    std::string spec_text;
    if (!sw_spec->empty()) {
      spec_text = read_file(*sw_spec);
    } else {
      if (sw_experiment->empty()) usage_error("sweep needs --spec or --experiment");
      if (sw_family->empty()) usage_error("sweep needs --family");
      SpecBuilder b;
      b.add("experiment", *sw_experiment);
      b.add("family", *sw_family);
      b.add_if(sw_n_opt, "n", std::to_string(*sw_n));
      b.add_if(sw_d_opt, "d", std::to_string(*sw_d));
      b.add_if(sw_lengths_opt, "lengths", join_u64(*sw_lengths));
      b.add_if(sw_p_opt, "p", fmt17(*sw_p));
      b.add_if(sw_pb_opt, "pb", *sw_pb);
      b.add_if(sw_cgrid_opt, "cgrid", *sw_cgrid);
      b.add_if(sw_trials_opt, "trials", std::to_string(*sw_trials));
      b.add("seed", std::to_string(common_seed(*sw_common)));
      b.add_if(sw_cprime_opt, "cprime", fmt17(*sw_cprime));
      b.add_if(sw_cap_opt, "round_cap", std::to_string(*sw_cap));
      b.add_if(sw_sampler_opt, "sampler", *sw_sampler);
      b.add_if(sw_fixed_opt, "fixed_graph", "1");
      spec_text = b.text;
    }
    run_experiment_command(spec_text, sw_common->threads, sw_common->json,
                           sw_common->records, sw_common->out, false);
  });

  // ---- tree-audit ----
  auto* audit = app.add_subcommand("tree-audit",
                                   "count non-tree k-neighborhoods over graph samples");
  auto ta_common = std::make_shared<ExperimentCommon>();
  auto ta_n = std::make_shared<std::uint64_t>(0);
  audit->add_option("--n", *ta_n, "vertex count")->required();
  auto ta_d = std::make_shared<std::uint32_t>(0);
  audit->add_option("--d", *ta_d, "degree")->required();
  auto ta_graphs = std::make_shared<std::uint64_t>(0);
  auto* ta_graphs_opt = audit->add_option("--graphs", *ta_graphs, "graph samples");
  auto ta_cprime = std::make_shared<double>(1.0);
  auto* ta_cprime_opt = audit->add_option("--cprime", *ta_cprime, "round-bound constant");
  auto ta_k = std::make_shared<std::uint32_t>(0);
  auto* ta_k_opt = audit->add_option("--k", *ta_k, "override the audited radius");
  auto ta_sampler = std::make_shared<std::string>();
  auto* ta_sampler_opt = audit->add_option("--sampler", *ta_sampler, "regular sampler")
                             ->check(CLI::IsMember({"auto", "rejection", "fast"}));
  add_common(*audit, *ta_common, false);
  audit->callback([=] {
    SpecBuilder b;
    b.add("experiment", "tree-audit");
    b.add("family", "regular");
    b.add("n", std::to_string(*ta_n));
    b.add("d", std::to_string(*ta_d));
    b.add_if(ta_graphs_opt, "graphs", std::to_string(*ta_graphs));
    b.add_if(ta_cprime_opt, "cprime", fmt17(*ta_cprime));
    b.add_if(ta_k_opt, "k", std::to_string(*ta_k));
    b.add_if(ta_sampler_opt, "sampler", *ta_sampler);
    b.add("seed", std::to_string(common_seed(*ta_common)));
    run_experiment_command(b.text, ta_common->threads, ta_common->json, false,
                           ta_common->out, false);
  });

  // ---- immunity ----
  auto* immunity = app.add_subcommand(
      "immunity", "seed-set amplification audit plus greedy dynamo search");
  auto im_common = std::make_shared<ExperimentCommon>();
  auto im_n = std::make_shared<std::uint64_t>(0);
  immunity->add_option("--n", *im_n, "vertex count")->required();
  auto im_d = std::make_shared<std::uint32_t>(0);
  immunity->add_option("--d", *im_d, "degree")->required();
  auto im_graphs = std::make_shared<std::uint64_t>(0);
  auto* im_graphs_opt = immunity->add_option("--graphs", *im_graphs, "graph samples");
  auto im_beta = std::make_shared<double>(0.02);
  auto* im_beta_opt = immunity->add_option("--beta", *im_beta, "max seed fraction");
  auto im_trials = std::make_shared<std::uint64_t>(0);
  auto* im_trials_opt =
      immunity->add_option("--audit-trials", *im_trials, "seed sets per graph");
  auto im_strategy = std::make_shared<std::string>();
  auto* im_strategy_opt = immunity->add_option("--strategy", *im_strategy, "seed-set sampler")
                              ->check(CLI::IsMember({"uniform", "greedy"}));
  auto im_budget = std::make_shared<std::uint64_t>(0);
  auto* im_budget_opt =
      immunity->add_option("--budget", *im_budget, "dynamo search evaluations");
  auto im_sampler = std::make_shared<std::string>();
  auto* im_sampler_opt = immunity->add_option("--sampler", *im_sampler, "regular sampler")
                             ->check(CLI::IsMember({"auto", "rejection", "fast"}));
  add_common(*immunity, *im_common, false);
  immunity->callback([=] {
    SpecBuilder b;
    b.add("experiment", "immunity");
    b.add("family", "regular");
    b.add("n", std::to_string(*im_n));
    b.add("d", std::to_string(*im_d));
    b.add_if(im_graphs_opt, "graphs", std::to_string(*im_graphs));
    b.add_if(im_beta_opt, "beta", fmt17(*im_beta));
    b.add_if(im_trials_opt, "audit_trials", std::to_string(*im_trials));
    b.add_if(im_strategy_opt, "strategy", *im_strategy);
    b.add_if(im_budget_opt, "dynamo_budget", std::to_string(*im_budget));
    b.add_if(im_sampler_opt, "sampler", *im_sampler);
    b.add("seed", std::to_string(common_seed(*im_common)));
    run_experiment_command(b.text, im_common->threads, im_common->json, false,
                           im_common->out, false);
  });

  // ---- dynamo ----
  auto* dynamo = app.add_subcommand("dynamo", "search for small dynamic monopolies");
  auto dy_opts = std::make_shared<GraphOpts>();
  add_family_options(*dynamo, *dy_opts, true);
  auto dy_budget = std::make_shared<std::uint64_t>(256);
  dynamo->add_option("--budget", *dy_budget, "greedy search evaluations");
  auto dy_seed = std::make_shared<std::uint64_t>(0);
  auto* dy_seed_opt = dynamo->add_option("--seed", *dy_seed, "master seed");
  auto dy_exact = std::make_shared<bool>(false);
  dynamo->add_flag("--exact", *dy_exact, "exhaustive minimum (n <= 20)");
  auto dy_out = std::make_shared<std::string>("-");
  dynamo->add_option("--out", *dy_out, "output path (- = stdout)");
  dynamo->callback([=] {
    std::uint64_t seed = *dy_seed;
    if (dy_seed_opt->count() == 0 && (family_needs_seed(*dy_opts) || !*dy_exact)) {
      seed = entropy_seed();
    }
    mjr_graph* g = build_graph(*dy_opts, mjr_derive_seed(seed, 1, 0));
    if (*dy_exact) {
      uint32_t size = 0;
      check(mjr_dynamo_exact_min(g, &size));
      char buf[96];
      std::snprintf(buf, sizeof buf,
                    "{\n  \"exhaustive\": true,\n  \"min_size\": %u\n}\n", size);
      write_output(*dy_out, buf);
    } else {
      char* json = nullptr;
      check(mjr_dynamo_greedy_json(g, *dy_budget, mjr_derive_seed(seed, 4, 0), &json));
      write_output(*dy_out, owned(json));
    }
    mjr_graph_free(g);
  });

  // ---- propagation ----
  auto* propagation =
      app.add_subcommand("propagation", "tree recurrence table, optionally MC-validated");
  auto pr_common = std::make_shared<ExperimentCommon>();
  auto pr_d = std::make_shared<std::uint32_t>(0);
  propagation->add_option("--d", *pr_d, "degree (odd, >= 3)")->required();
  auto pr_pb = std::make_shared<std::string>();
  propagation->add_option("--pb", *pr_pb, "initial blue density")->required();
  auto pr_k = std::make_shared<std::uint32_t>(0);
  propagation->add_option("--k", *pr_k, "levels")->required();
  auto pr_validate = std::make_shared<bool>(false);
  propagation->add_flag("--validate", *pr_validate, "Monte Carlo cross-check");
  auto pr_trials = std::make_shared<std::uint64_t>(0);
  auto* pr_trials_opt =
      propagation->add_option("--trials", *pr_trials, "Monte Carlo trials");
  add_common(*propagation, *pr_common, false);
  propagation->callback([=] {
    SpecBuilder b;
    b.add("experiment", "propagation");
    b.add("d", std::to_string(*pr_d));
    b.add("pb", *pr_pb);
    b.add("k", std::to_string(*pr_k));
    if (*pr_validate) {
      b.add("validate", "1");
      b.add_if(pr_trials_opt, "trials", std::to_string(*pr_trials));
      b.add("seed", std::to_string(common_seed(*pr_common)));
    }
    run_experiment_command(b.text, pr_common->threads, pr_common->json, false,
                           pr_common->out, *pr_validate && !pr_common->json);
  });

  CLI11_PARSE(app, argc, argv);
  return 0;
}
