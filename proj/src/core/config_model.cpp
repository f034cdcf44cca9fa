#include "core/config_model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "core/errors.hpp"

namespace mjr {

Configuration::Configuration(std::size_t n, std::uint32_t d, std::vector<std::uint32_t> mate)
    : n_(n), d_(d), mate_(std::move(mate)) {
  const std::size_t nd = n_ * d_;
  if (mate_.size() != nd) {
    throw InvalidArgument("mate table size " + std::to_string(mate_.size()) +
                          " does not match n*d = " + std::to_string(nd));
  }
  if (nd % 2 != 0) throw InvalidArgument("n*d must be even");
  for (std::uint32_t i = 0; i < nd; ++i) {
    const std::uint32_t m = mate_[i];
    if (m >= nd || m == i || mate_[m] != i) {
      throw InvalidArgument("mate table is not a fixed-point-free involution");
    }
  }
}

Multigraph::Multigraph(std::size_t n, std::vector<std::pair<Vertex, Vertex>> edges)
    : n_(n), edges_(std::move(edges)), degrees_(n, 0) {
  for (auto& [u, v] : edges_) {
    if (u >= n_ || v >= n_) {
      throw InvalidArgument("multigraph edge endpoint out of range");
    }
    if (u > v) std::swap(u, v);
  }
  std::sort(edges_.begin(), edges_.end());
  for (const auto& [u, v] : edges_) {
    degrees_[u] += 1;
    degrees_[v] += 1;  // a loop (u == v) contributes 2 in total
  }
}

bool Multigraph::is_simple() const {
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    if (edges_[i].first == edges_[i].second) return false;
    if (i > 0 && edges_[i] == edges_[i - 1]) return false;
  }
  return true;
}

Graph Multigraph::to_simple_graph() const {
  if (!is_simple()) throw InvalidArgument("multigraph has a loop or parallel edge");
  return Graph::from_edges(n_, edges_);
}

Configuration generate_configuration(std::size_t n, std::uint32_t d, Rng& rng) {
  const std::size_t nd = n * d;
  if (nd % 2 != 0) throw InvalidArgument("n*d must be even");
  if (nd > std::numeric_limits<std::uint32_t>::max()) {
    throw InvalidArgument("n*d exceeds half-edge index range");
  }
  constexpr std::uint32_t kUnset = ~std::uint32_t{0};
  std::vector<std::uint32_t> mate(nd, kUnset);
  std::vector<std::uint32_t> pool(nd);
  std::vector<std::uint32_t> pos(nd);
  for (std::uint32_t i = 0; i < nd; ++i) pool[i] = pos[i] = i;

  auto remove_from_pool = [&](std::uint32_t x) {
    const std::uint32_t px = pos[x];
    const std::uint32_t last = pool.back();
    pool[px] = last;
    pos[last] = px;
    pool.pop_back();
  };

  for (std::uint32_t x = 0; x < nd; ++x) {
    if (mate[x] != kUnset) continue;
    remove_from_pool(x);
    const std::uint32_t y = pool[rng.below(pool.size())];
    remove_from_pool(y);
    mate[x] = y;
    mate[y] = x;
  }
  return Configuration(n, d, std::move(mate));
}

Multigraph project_configuration(const Configuration& c) {
  std::vector<std::pair<Vertex, Vertex>> edges;
  edges.reserve(c.pair_count());
  const std::uint32_t nd = static_cast<std::uint32_t>(c.half_edge_count());
  for (std::uint32_t i = 0; i < nd; ++i) {
    const std::uint32_t m = c.mate_of(i);
    if (i < m) edges.emplace_back(c.vertex_of(i), c.vertex_of(m));
  }
  return Multigraph(c.vertex_count(), std::move(edges));
}

bool configuration_is_simple(const Configuration& c) {
  const std::size_t n = c.vertex_count();
  const std::uint32_t d = c.degree();
  constexpr Vertex kNever = ~Vertex{0};
  std::vector<Vertex> seen_by(n, kNever);
  for (Vertex v = 0; v < n; ++v) {
    const std::uint32_t base = v * d;
    for (std::uint32_t s = 0; s < d; ++s) {
      const Vertex w = c.vertex_of(c.mate_of(base + s));
      if (w == v) return false;         // loop
      if (seen_by[w] == v) return false;  // parallel edge
      seen_by[w] = v;
    }
  }
  return true;
}

double expected_rejection_attempts(std::uint32_t d) {
  if (d == 0) return 1.0;
  const double lambda = (d - 1) / 2.0;
  return std::exp(lambda + lambda * lambda);
}

namespace {

void check_regular_params(std::size_t n, std::uint32_t d) {
  if (n * static_cast<std::size_t>(d) % 2 != 0) {
    throw InvalidArgument("n*d must be even");
  }
  if (n > 0 && d >= n) {
    throw InvalidArgument("no simple " + std::to_string(d) + "-regular graph on " +
                          std::to_string(n) + " vertices");
  }
}

}  // namespace

Graph generate_random_regular(std::size_t n, std::uint32_t d, Rng& rng,
                              std::uint32_t max_attempts, std::uint64_t* attempts_out) {
  check_regular_params(n, d);
  if (max_attempts == 0) throw InvalidArgument("max_attempts must be >= 1");
  for (std::uint32_t attempt = 1; attempt <= max_attempts; ++attempt) {
    Configuration c = generate_configuration(n, d, rng);
    if (!configuration_is_simple(c)) continue;
    if (attempts_out) *attempts_out = attempt;
    return project_configuration(c).to_simple_graph();
  }
  throw AttemptsExhausted("no simple projection in " + std::to_string(max_attempts) +
                          " attempts (d = " + std::to_string(d) +
                          "; consider the fast sampler)");
}

Graph generate_random_regular_fast(std::size_t n, std::uint32_t d, Rng& rng,
                                   std::uint32_t max_restarts) {
  check_regular_params(n, d);
  if (max_restarts == 0) throw InvalidArgument("max_restarts must be >= 1");
  if (d == 0) return generate_empty(n);

  const std::size_t nd = n * d;
  std::vector<std::vector<Vertex>> adj(n);
  std::vector<Vertex> pool;
  pool.reserve(nd);

  auto adjacent = [&](Vertex u, Vertex v) {
    const auto& a = adj[u];
    return std::find(a.begin(), a.end(), v) != a.end();
  };

  for (std::uint32_t restart = 0; restart < max_restarts; ++restart) {
    for (auto& a : adj) a.clear();
    pool.clear();
    for (Vertex v = 0; v < n; ++v) {
      for (std::uint32_t s = 0; s < d; ++s) pool.push_back(v);
    }

    bool dead_end = false;
    std::uint64_t fail_streak = 0;
    std::uint64_t total_draws = 0;
    const std::uint64_t draw_budget = 50 * static_cast<std::uint64_t>(nd) + 1000;

    while (!pool.empty() && !dead_end) {
      if (fail_streak >= 64 && pool.size() <= 256) {
        // Endgame: enumerate the legal stub pairs directly; a uniform pick
        // among them replaces further rejection (or reveals a dead end).
        std::vector<std::pair<std::uint32_t, std::uint32_t>> legal;
        for (std::uint32_t i = 0; i < pool.size(); ++i) {
          for (std::uint32_t j = i + 1; j < pool.size(); ++j) {
            if (pool[i] != pool[j] && !adjacent(pool[i], pool[j])) legal.emplace_back(i, j);
          }
        }
        if (legal.empty()) {
          dead_end = true;
          break;
        }
        const auto [i, j] = legal[rng.below(legal.size())];
        const Vertex u = pool[i], v = pool[j];
        adj[u].push_back(v);
        adj[v].push_back(u);
        pool.erase(pool.begin() + j);
        pool.erase(pool.begin() + i);
        fail_streak = 0;
        continue;
      }

      const std::size_t size = pool.size();
      const std::size_t i = rng.below(size);
      std::swap(pool[i], pool[size - 1]);
      const Vertex u = pool[size - 1];
      const std::size_t j = rng.below(size - 1);
      std::swap(pool[j], pool[size - 2]);
      const Vertex v = pool[size - 2];
      if (u != v && !adjacent(u, v)) {
        adj[u].push_back(v);
        adj[v].push_back(u);
        pool.resize(size - 2);
        fail_streak = 0;
      } else {
        ++fail_streak;
        if (++total_draws > draw_budget) dead_end = true;
      }
    }

    if (!dead_end && pool.empty()) {
      std::vector<std::pair<Vertex, Vertex>> edges;
      edges.reserve(nd / 2);
      for (Vertex u = 0; u < n; ++u) {
        for (Vertex v : adj[u]) {
          if (u < v) edges.emplace_back(u, v);
        }
      }
      return Graph::from_edges(n, std::move(edges));
    }
  }
  throw AttemptsExhausted("pairing dead-ended in all " + std::to_string(max_restarts) +
                          " restarts");
}

Graph generate_random_regular_auto(std::size_t n, std::uint32_t d, Rng& rng,
                                   std::uint32_t max_attempts) {
  if (max_attempts == 0) throw InvalidArgument("max_attempts must be >= 1");
  const double budget = std::max(50.0, static_cast<double>(max_attempts) / 5.0);
  return expected_rejection_attempts(d) <= budget
             ? generate_random_regular(n, d, rng, max_attempts)
             : generate_random_regular_fast(n, d, rng);
}

Graph generate_cycle_union(std::span<const std::uint64_t> lengths) {
  std::size_t n = 0;
  for (std::uint64_t len : lengths) {
    if (len < 3) throw InvalidArgument("cycle length must be >= 3");
    n += len;
  }
  std::vector<std::pair<Vertex, Vertex>> edges;
  edges.reserve(n);
  std::size_t base = 0;
  for (std::uint64_t len : lengths) {
    for (std::uint64_t i = 0; i < len; ++i) {
      edges.emplace_back(static_cast<Vertex>(base + i),
                         static_cast<Vertex>(base + (i + 1) % len));
    }
    base += len;
  }
  return Graph::from_edges(n, std::move(edges));
}

Graph generate_matching(std::size_t n) {
  if (n % 2 != 0) throw InvalidArgument("matching needs an even number of vertices");
  std::vector<std::pair<Vertex, Vertex>> edges;
  edges.reserve(n / 2);
  for (std::size_t i = 0; i + 1 < n; i += 2) {
    edges.emplace_back(static_cast<Vertex>(i), static_cast<Vertex>(i + 1));
  }
  return Graph::from_edges(n, std::move(edges));
}

Graph generate_empty(std::size_t n) { return Graph::from_edges(n, {}); }

Graph generate_gnp(std::size_t n, double p, Rng& rng) {
  if (!(p >= 0.0 && p <= 1.0)) throw InvalidArgument("edge probability must be in [0, 1]");
  std::vector<std::pair<Vertex, Vertex>> edges;
  if (p <= 0.0 || n < 2) return Graph::from_edges(n, std::move(edges));
  if (p >= 1.0) {
    for (Vertex u = 0; u < n; ++u) {
      for (Vertex v = u + 1; v < n; ++v) edges.emplace_back(u, v);
    }
    return Graph::from_edges(n, std::move(edges));
  }

  // Geometric skipping over the n(n-1)/2 pair slots; each pair kept with
  // probability p independently.
  const double log_q = std::log1p(-p);
  std::int64_t v = 1;
  std::int64_t w = -1;
  const auto order = static_cast<std::int64_t>(n);
  while (v < order) {
    const double r = 1.0 - rng.unit();  // (0, 1]
    const double jump = std::floor(std::log(r) / log_q);
    if (jump > 4e18) break;
    w += 1 + static_cast<std::int64_t>(jump);
    while (w >= v && v < order) {
      w -= v;
      ++v;
    }
    if (v < order) {
      edges.emplace_back(static_cast<Vertex>(v), static_cast<Vertex>(w));
    }
  }
  return Graph::from_edges(n, std::move(edges));
}

}  // namespace mjr
