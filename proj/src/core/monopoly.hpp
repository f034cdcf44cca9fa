#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "core/dynamics.hpp"
#include "core/graph.hpp"
#include "core/rng.hpp"

namespace mjr {

enum class ControlMode {
  // |N(v) & s| >= ceil(d/2): the degree-based filter every controlled vertex
  // must pass on a d-regular graph. Coarse: passing does not imply control.
  Necessary,
  // Strict-majority guarantee: v adopts s's color next round whenever s is
  // monochromatic, regardless of the colors outside s.
  Sufficient,
};

VertexSet controlled_set(const Graph& g, const VertexSet& s, ControlMode mode);

// Blue set after one synchronous step from (blue on s, red elsewhere).
// Coincides with controlled_set(g, s, Sufficient); kept as the dynamic route
// to the same set so the two can cross-check each other.
VertexSet takeover_step(const Graph& g, const VertexSet& s);

enum class AdversaryMode {
  Canonical,   // complement all red: the worst case for blue takeover
  Exhaustive,  // every coloring of the complement (2^|V \ d_set| runs)
};

struct DynamoCheck {
  bool is_dynamo = false;
  // Max rounds to blue consensus over the adversaries tried; meaningful only
  // when is_dynamo.
  std::uint64_t rounds = 0;
  bool cap_hit = false;  // some run exceeded the cap (counted as failure)
};

DynamoCheck is_dynamo(const Graph& g, const VertexSet& d_set, AdversaryMode mode,
                      std::uint64_t round_cap = 0);

struct ImmunityReport {
  double beta = 0;
  std::size_t max_set_size = 0;
  std::uint64_t sets_tested = 0;
  std::string strategy;
  double alpha_observed = 0;  // max over tested s of |takeover_step(s)| / |s|
  std::vector<Vertex> witness;
  std::uint64_t witness_takeover_size = 0;
  // Control-growth audit (Necessary mode), regular graphs only.
  bool growth_audited = false;
  std::uint64_t growth_violations = 0;   // |controlled| >= ceil(10|s|/d)
  double growth_ratio_benchmark = 0;     // 10 / d
};

// Samples `trials` seed sets of size <= floor(beta * n) ("uniform" draws
// them uniformly; "greedy" grows clustered sets around random starts) and
// measures the worst one-round amplification.
ImmunityReport immunity_audit(const Graph& g, double beta, std::uint64_t trials,
                              const std::string& strategy, Rng& rng);

struct DynamoSearchResult {
  std::size_t best_size = 0;
  std::vector<Vertex> best_set;
  std::uint64_t rounds_to_takeover = 0;
  std::uint64_t evaluations = 0;
  bool exhaustive_verifier = false;
};

// Shrink-from-verified local search under an evaluation budget. Verifies with
// the exhaustive adversary when n <= 14 (matching exhaustive_min_dynamo) and
// the canonical one otherwise, so its result is never "better" than exact.
DynamoSearchResult greedy_dynamo_search(const Graph& g, std::uint64_t budget, Rng& rng);

// Smallest dynamo size, by exhaustive subset enumeration in increasing size.
// n <= 20; the exhaustive adversary is used for n <= 14.
std::size_t exhaustive_min_dynamo(const Graph& g);

}  // namespace mjr
