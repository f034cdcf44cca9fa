#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "core/graph.hpp"
#include "core/rng.hpp"

namespace mjr {

// One byte per vertex: 1 = blue, 0 = red.
using Coloring = std::vector<std::uint8_t>;
inline constexpr std::uint8_t kRed = 0;
inline constexpr std::uint8_t kBlue = 1;

Coloring random_coloring(std::size_t n, double p_blue, Rng& rng);
Coloring coloring_from_set(const VertexSet& blue);
std::size_t blue_count(const Coloring& c);

// Text form: one 'b'/'r' per vertex, newline-terminated.
std::string serialize_coloring(const Coloring& c);
Coloring parse_coloring(std::string_view text);

// Synchronous update: each vertex adopts the strict majority color of its
// open neighborhood and keeps its own color on a tie (or with no neighbors).
// in and out must be distinct buffers of size g.order().
void majority_step(const Graph& g, const Coloring& in, Coloring& out);
Coloring majority_step(const Graph& g, const Coloring& in);

enum class Outcome : std::uint8_t {
  RedMono,
  BlueMono,
  CoexistFixed,
  CoexistPeriod2,
};
const char* outcome_name(Outcome o);

struct ConsensusReport {
  std::uint64_t consensus_time = 0;  // rounds until the limit cycle is entered
  std::uint32_t period = 1;          // 1 or 2
  Outcome outcome = Outcome::RedMono;
  std::uint64_t initial_blue = 0;
  std::uint64_t final_blue = 0;      // blue count in the reached cycle state
  std::vector<std::uint64_t> blue_counts;  // per round, starting at round 0
};

// n^2 + 2 rounds always suffice to reach and confirm the limit cycle.
std::uint64_t default_round_cap(std::size_t n);

struct RunOptions {
  std::uint64_t round_cap = 0;  // 0 = default_round_cap(n)
};

// Iterates until g_t == g_{t-1} (period 1) or g_t == g_{t-2} (period 2),
// comparing exact states. Throws CapExceeded if the cap is hit first.
ConsensusReport run_to_cycle(const Graph& g, Coloring start, const RunOptions& opt = {});

}  // namespace mjr
