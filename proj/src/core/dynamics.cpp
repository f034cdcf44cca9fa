#include "core/dynamics.hpp"

#include <algorithm>
#include <cassert>

#include "core/errors.hpp"

namespace mjr {

Coloring random_coloring(std::size_t n, double p_blue, Rng& rng) {
  if (!(p_blue >= 0.0 && p_blue <= 1.0)) {
    throw InvalidArgument("p_blue must be in [0, 1]");
  }
  Coloring c(n);
  for (std::size_t v = 0; v < n; ++v) c[v] = rng.bernoulli(p_blue) ? kBlue : kRed;
  return c;
}

Coloring coloring_from_set(const VertexSet& blue) {
  Coloring c(blue.universe_size(), kRed);
  blue.for_each([&](Vertex v) { c[v] = kBlue; });
  return c;
}

std::size_t blue_count(const Coloring& c) {
  return static_cast<std::size_t>(std::count(c.begin(), c.end(), kBlue));
}

std::string serialize_coloring(const Coloring& c) {
  std::string s;
  s.reserve(c.size() + 1);
  for (std::uint8_t x : c) s += (x == kBlue) ? 'b' : 'r';
  s += '\n';
  return s;
}

Coloring parse_coloring(std::string_view text) {
  if (!text.empty() && text.back() == '\n') text.remove_suffix(1);
  Coloring c;
  c.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == 'b') {
      c.push_back(kBlue);
    } else if (text[i] == 'r') {
      c.push_back(kRed);
    } else {
      throw ParseError("invalid coloring character at position " + std::to_string(i) +
                       " (want 'b' or 'r')");
    }
  }
  return c;
}

void majority_step(const Graph& g, const Coloring& in, Coloring& out) {
  assert(&in != &out);
  const std::size_t n = g.order();
  if (in.size() != n) throw InvalidArgument("coloring size does not match graph order");
  out.resize(n);
  for (Vertex v = 0; v < n; ++v) {
    const auto nb = g.neighbors(v);
    std::size_t blue = 0;
    for (Vertex w : nb) blue += in[w];
    const std::size_t deg = nb.size();
    if (2 * blue > deg) {
      out[v] = kBlue;
    } else if (2 * blue < deg) {
      out[v] = kRed;
    } else {
      out[v] = in[v];
    }
  }
}

Coloring majority_step(const Graph& g, const Coloring& in) {
  Coloring out;
  majority_step(g, in, out);
  return out;
}

const char* outcome_name(Outcome o) {
  switch (o) {
    case Outcome::RedMono: return "red-monochromatic";
    case Outcome::BlueMono: return "blue-monochromatic";
    case Outcome::CoexistFixed: return "coexistence-fixed";
    case Outcome::CoexistPeriod2: return "coexistence-period-2";
  }
  return "unknown";
}

std::uint64_t default_round_cap(std::size_t n) {
  if (n > 0xFFFFFFFFull) return ~std::uint64_t{0};
  return static_cast<std::uint64_t>(n) * n + 2;
}

ConsensusReport run_to_cycle(const Graph& g, Coloring start, const RunOptions& opt) {
  const std::size_t n = g.order();
  if (start.size() != n) throw InvalidArgument("coloring size does not match graph order");
  for (std::uint8_t x : start) {
    if (x > 1) throw InvalidArgument("coloring values must be 0 (red) or 1 (blue)");
  }
  const std::uint64_t cap = opt.round_cap != 0 ? opt.round_cap : default_round_cap(n);

  ConsensusReport rep;
  Coloring prev;                    // g_{t-2}
  Coloring cur = std::move(start);  // g_{t-1}
  Coloring nxt;                     // g_t
  rep.initial_blue = blue_count(cur);
  rep.blue_counts.push_back(rep.initial_blue);

  for (std::uint64_t t = 1; t <= cap; ++t) {
    majority_step(g, cur, nxt);
    rep.blue_counts.push_back(blue_count(nxt));
    std::uint32_t period = 0;
    if (nxt == cur) {
      period = 1;
    } else if (t >= 2 && nxt == prev) {
      period = 2;
    }
    if (period != 0) {
      rep.period = period;
      rep.consensus_time = t - period;
      rep.final_blue = rep.blue_counts[rep.consensus_time];
      const std::uint64_t blue = rep.blue_counts[t];
      if (blue == 0) {
        rep.outcome = Outcome::RedMono;
      } else if (blue == n) {
        rep.outcome = Outcome::BlueMono;
      } else {
        rep.outcome = (period == 2) ? Outcome::CoexistPeriod2 : Outcome::CoexistFixed;
      }
      return rep;
    }
    prev.swap(cur);
    cur.swap(nxt);
  }
  throw CapExceeded("no limit cycle detected within " + std::to_string(cap) + " rounds");
}

}  // namespace mjr
