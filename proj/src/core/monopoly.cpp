#include "core/monopoly.hpp"

#include <algorithm>
#include <cassert>

#include "core/errors.hpp"

namespace mjr {

namespace {

void check_universe(const Graph& g, const VertexSet& s) {
  if (s.universe_size() != g.order()) {
    throw InvalidArgument("vertex set universe does not match graph order");
  }
}

}  // namespace

VertexSet controlled_set(const Graph& g, const VertexSet& s, ControlMode mode) {
  check_universe(g, s);
  if (s.empty()) throw InvalidArgument("seed set must be nonempty");
  const std::size_t n = g.order();
  VertexSet out(n);
  if (mode == ControlMode::Necessary) {
    const auto d = g.regular_degree();
    if (!d) throw InvalidArgument("necessary-mode control needs a regular graph");
    const std::size_t threshold = (*d + 1) / 2;  // ceil(d/2)
    for (Vertex v = 0; v < n; ++v) {
      if (s.intersection_count(g.neighbors(v)) >= threshold) out.insert(v);
    }
  } else {
    for (Vertex v = 0; v < n; ++v) {
      const std::size_t inside = s.intersection_count(g.neighbors(v));
      const std::size_t deg = g.degree(v);
      const bool controlled =
          s.contains(v) ? (2 * inside >= deg) : (2 * inside > deg);
      if (controlled) out.insert(v);
    }
  }
  return out;
}

VertexSet takeover_step(const Graph& g, const VertexSet& s) {
  check_universe(g, s);
  const Coloring next = majority_step(g, coloring_from_set(s));
  VertexSet out(g.order());
  for (Vertex v = 0; v < g.order(); ++v) {
    if (next[v] == kBlue) out.insert(v);
  }
  return out;
}

DynamoCheck is_dynamo(const Graph& g, const VertexSet& d_set, AdversaryMode mode,
                      std::uint64_t round_cap) {
  check_universe(g, d_set);
  const RunOptions opt{round_cap};

  auto run_one = [&](Coloring start, DynamoCheck& agg) -> bool {
    try {
      const ConsensusReport rep = run_to_cycle(g, std::move(start), opt);
      if (rep.outcome != Outcome::BlueMono) {
        agg.is_dynamo = false;
        return false;
      }
      agg.rounds = std::max(agg.rounds, rep.consensus_time);
      return true;
    } catch (const CapExceeded&) {
      agg.is_dynamo = false;
      agg.cap_hit = true;
      return false;
    }
  };

  DynamoCheck check;
  check.is_dynamo = true;
  if (mode == AdversaryMode::Canonical) {
    run_one(coloring_from_set(d_set), check);
    return check;
  }

  std::vector<Vertex> free;
  for (Vertex v = 0; v < g.order(); ++v) {
    if (!d_set.contains(v)) free.push_back(v);
  }
  if (free.size() > 24) {
    throw InvalidArgument("exhaustive adversary limited to 24 free vertices");
  }
  const Coloring base = coloring_from_set(d_set);
  const std::uint64_t combos = std::uint64_t{1} << free.size();
  // Mask 0 is the canonical all-red adversary: the cheap first pruner.
  for (std::uint64_t mask = 0; mask < combos; ++mask) {
    Coloring start = base;
    for (std::size_t i = 0; i < free.size(); ++i) {
      if ((mask >> i) & 1) start[free[i]] = kBlue;
    }
    if (!run_one(std::move(start), check)) return check;
  }
  return check;
}

namespace {

std::uint64_t growth_threshold(std::uint64_t set_size, std::uint32_t d) {
  return (10 * set_size + d - 1) / d;  // ceil(10|s|/d)
}

}  // namespace

ImmunityReport immunity_audit(const Graph& g, double beta, std::uint64_t trials,
                              const std::string& strategy, Rng& rng) {
  const std::size_t n = g.order();
  if (n == 0) throw InvalidArgument("graph must be nonempty");
  if (!(beta > 0.0 && beta <= 1.0)) throw InvalidArgument("beta must be in (0, 1]");
  if (trials == 0) throw InvalidArgument("trials must be >= 1");
  const bool uniform = strategy == "uniform";
  if (!uniform && strategy != "greedy") {
    throw InvalidArgument("strategy must be \"uniform\" or \"greedy\"");
  }
  const auto max_size = static_cast<std::size_t>(beta * static_cast<double>(n));
  if (max_size < 1) throw InvalidArgument("beta * n is below 1, no admissible seed set");

  ImmunityReport rep;
  rep.beta = beta;
  rep.max_set_size = max_size;
  rep.strategy = strategy;
  rep.alpha_observed = -1.0;
  const auto d = g.regular_degree();
  rep.growth_audited = d.has_value() && *d >= 1;
  if (rep.growth_audited) rep.growth_ratio_benchmark = 10.0 / *d;

  std::vector<Vertex> pool(n);
  for (Vertex v = 0; v < n; ++v) pool[v] = v;

  // Uniform: a fresh uniform subset of uniform size in [1, max_size].
  auto draw_uniform = [&](VertexSet& s) {
    const std::size_t size = 1 + rng.below(max_size);
    for (std::size_t i = 0; i < size; ++i) {
      const std::size_t j = i + rng.below(n - i);
      std::swap(pool[i], pool[j]);
      s.insert(pool[i]);
    }
  };

  // Greedy: grow a clustered set around a random start by repeatedly adding
  // a neighbor of a random member, falling back to uniform fill-ins.
  auto draw_greedy = [&](VertexSet& s) {
    const std::size_t size = 1 + rng.below(max_size);
    std::vector<Vertex> members;
    const Vertex start = static_cast<Vertex>(rng.below(n));
    s.insert(start);
    members.push_back(start);
    while (members.size() < size) {
      Vertex added = n;  // sentinel
      for (int attempt = 0; attempt < 4 && added == n; ++attempt) {
        const Vertex u = members[rng.below(members.size())];
        const auto nb = g.neighbors(u);
        if (nb.empty()) break;
        const Vertex w = nb[rng.below(nb.size())];
        if (!s.contains(w)) added = w;
      }
      while (added == n) {
        const Vertex w = static_cast<Vertex>(rng.below(n));
        if (!s.contains(w)) added = w;
      }
      s.insert(added);
      members.push_back(added);
    }
  };

  VertexSet s(n);
  for (std::uint64_t trial = 0; trial < trials; ++trial) {
    s.clear();
    uniform ? draw_uniform(s) : draw_greedy(s);
    const VertexSet taken = takeover_step(g, s);
    const double ratio =
        static_cast<double>(taken.size()) / static_cast<double>(s.size());
    if (ratio > rep.alpha_observed) {
      rep.alpha_observed = ratio;
      rep.witness = s.to_vector();
      rep.witness_takeover_size = taken.size();
    }
    if (rep.growth_audited) {
      const std::size_t grown = controlled_set(g, s, ControlMode::Necessary).size();
      if (grown >= growth_threshold(s.size(), *d)) ++rep.growth_violations;
    }
    ++rep.sets_tested;
  }
  return rep;
}

namespace {

struct BudgetedVerifier {
  const Graph& g;
  AdversaryMode mode;
  std::uint64_t budget;
  std::uint64_t used = 0;

  // False once the budget is gone; check is filled otherwise.
  bool operator()(const VertexSet& s, DynamoCheck& check) {
    if (used >= budget) return false;
    ++used;
    check = is_dynamo(g, s, mode, 0);
    return true;
  }
};

}  // namespace

DynamoSearchResult greedy_dynamo_search(const Graph& g, std::uint64_t budget, Rng& rng) {
  const std::size_t n = g.order();
  if (n == 0) throw InvalidArgument("graph must be nonempty");
  if (budget == 0) throw InvalidArgument("budget must be >= 1");
  const AdversaryMode mode = n <= 14 ? AdversaryMode::Exhaustive : AdversaryMode::Canonical;
  BudgetedVerifier verify{g, mode, budget};

  DynamoSearchResult result;
  result.exhaustive_verifier = mode == AdversaryMode::Exhaustive;
  bool have_best = false;
  VertexSet best_set;
  DynamoCheck best_check;

  auto consider = [&](const VertexSet& s, const DynamoCheck& check) {
    if (!check.is_dynamo) return;
    if (!have_best || s.size() < best_set.size()) {
      have_best = true;
      best_set = s;
      best_check = check;
    }
  };

  // Drop members one at a time (in random order) while the set stays a
  // verified dynamo; restarts the scan after any successful removal.
  auto shrink = [&](VertexSet s, DynamoCheck check) {
    bool improved = true;
    while (improved && verify.used < budget) {
      improved = false;
      std::vector<Vertex> order = s.to_vector();
      for (std::size_t i = order.size(); i > 1; --i) {
        std::swap(order[i - 1], order[rng.below(i)]);
      }
      for (Vertex u : order) {
        if (s.size() <= 1) break;
        s.erase(u);
        DynamoCheck trial;
        if (!verify(s, trial)) {
          s.insert(u);
          break;
        }
        if (trial.is_dynamo) {
          check = trial;
          improved = true;
        } else {
          s.insert(u);
        }
      }
    }
    consider(s, check);
  };

  VertexSet full(n);
  for (Vertex v = 0; v < n; ++v) full.insert(v);
  DynamoCheck check;
  if (verify(full, check) && check.is_dynamo) shrink(std::move(full), check);

  std::vector<Vertex> pool(n);
  for (Vertex v = 0; v < n; ++v) pool[v] = v;
  auto random_subset = [&](std::size_t size) {
    VertexSet s(n);
    for (std::size_t i = 0; i < size; ++i) {
      const std::size_t j = i + rng.below(n - i);
      std::swap(pool[i], pool[j]);
      s.insert(pool[i]);
    }
    return s;
  };

  while (verify.used < budget) {
    std::size_t target;
    if (have_best && best_set.size() > 1 && rng.bernoulli(0.5)) {
      target = best_set.size() - 1;  // try to beat the incumbent directly
    } else {
      target = 1 + rng.below(n);
    }
    VertexSet s = random_subset(target);
    DynamoCheck trial;
    if (!verify(s, trial)) break;
    if (trial.is_dynamo) shrink(std::move(s), trial);
  }

  if (have_best) {
    result.best_size = best_set.size();
    result.best_set = best_set.to_vector();
    result.rounds_to_takeover = best_check.rounds;
  }
  result.evaluations = verify.used;
  return result;
}

std::size_t exhaustive_min_dynamo(const Graph& g) {
  const std::size_t n = g.order();
  if (n == 0) throw InvalidArgument("graph must be nonempty");
  if (n > 20) throw InvalidArgument("exhaustive dynamo search limited to n <= 20");
  const AdversaryMode mode = n <= 14 ? AdversaryMode::Exhaustive : AdversaryMode::Canonical;
  const std::uint32_t limit = 1u << n;
  for (std::size_t size = 1; size <= n; ++size) {
    std::uint32_t mask = (1u << size) - 1;
    while (mask < limit) {
      VertexSet s(n);
      for (std::size_t v = 0; v < n; ++v) {
        if ((mask >> v) & 1) s.insert(static_cast<Vertex>(v));
      }
      if (is_dynamo(g, s, mode, 0).is_dynamo) return size;
      const std::uint32_t c = mask & -mask;
      const std::uint32_t r = mask + c;
      mask = (((r ^ mask) >> 2) / c) | r;
    }
  }
  assert(false && "the full vertex set is always a dynamo");
  return n;
}

}  // namespace mjr
