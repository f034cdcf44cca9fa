#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "core/graph.hpp"
#include "core/rng.hpp"

namespace mjr {

// Perfect matching on the n*d half-edges (vertex v owns slots v*d .. v*d+d-1).
class Configuration {
 public:
  // mate must be a fixed-point-free involution on [0, n*d).
  Configuration(std::size_t n, std::uint32_t d, std::vector<std::uint32_t> mate);

  std::size_t vertex_count() const { return n_; }
  std::uint32_t degree() const { return d_; }
  std::size_t half_edge_count() const { return mate_.size(); }
  std::size_t pair_count() const { return mate_.size() / 2; }

  std::uint32_t mate_of(std::uint32_t half_edge) const { return mate_[half_edge]; }
  Vertex vertex_of(std::uint32_t half_edge) const {
    return static_cast<Vertex>(half_edge / d_);
  }

 private:
  std::size_t n_;
  std::uint32_t d_;
  std::vector<std::uint32_t> mate_;
};

// Undirected multigraph: loops and parallel edges allowed. Edges are stored
// normalized (u <= v) and sorted; a loop contributes 2 to its vertex degree.
class Multigraph {
 public:
  Multigraph(std::size_t n, std::vector<std::pair<Vertex, Vertex>> edges);

  std::size_t order() const { return n_; }
  const std::vector<std::pair<Vertex, Vertex>>& edges() const { return edges_; }
  std::size_t degree(Vertex v) const { return degrees_[v]; }

  bool is_simple() const;
  Graph to_simple_graph() const;  // throws InvalidArgument if not simple

 private:
  std::size_t n_;
  std::vector<std::pair<Vertex, Vertex>> edges_;
  std::vector<std::size_t> degrees_;
};

// Uniform random pairing: repeatedly match the first unmatched half-edge (in
// slot order) with a uniformly random other unmatched half-edge.
Configuration generate_configuration(std::size_t n, std::uint32_t d, Rng& rng);

Multigraph project_configuration(const Configuration& c);

// True iff the projection has no loop and no parallel edge; O(n*d).
bool configuration_is_simple(const Configuration& c);

// Uniform over simple d-regular graphs: sample configurations, keep the first
// simple projection. Throws AttemptsExhausted past max_attempts. Practical
// only while expected_rejection_attempts(d) is small.
Graph generate_random_regular(std::size_t n, std::uint32_t d, Rng& rng,
                              std::uint32_t max_attempts = 1000,
                              std::uint64_t* attempts_out = nullptr);

// exp((d-1)/2 + (d-1)^2/4), the asymptotic mean number of rejection rounds
// per accepted simple graph; +inf when it overflows.
double expected_rejection_attempts(std::uint32_t d);

// Incremental pairing that only accepts edges keeping the graph simple, with
// a full restart on dead ends. Approximately uniform (exactly d-regular and
// simple, but not exactly uniform over such graphs); use where rejection
// sampling is hopeless.
Graph generate_random_regular_fast(std::size_t n, std::uint32_t d, Rng& rng,
                                   std::uint32_t max_restarts = 100);

// Policy wrapper: rejection sampling while expected_rejection_attempts(d)
// fits comfortably inside max_attempts, the fast pairing otherwise.
Graph generate_random_regular_auto(std::size_t n, std::uint32_t d, Rng& rng,
                                   std::uint32_t max_attempts = 1000);

// Disjoint cycles of the given lengths (each >= 3), vertices numbered
// consecutively cycle by cycle.
Graph generate_cycle_union(std::span<const std::uint64_t> lengths);

// Perfect matching {0,1}, {2,3}, ...; n must be even.
Graph generate_matching(std::size_t n);

Graph generate_empty(std::size_t n);

// Erdos-Renyi G(n, p) via geometric edge skipping; each pair independent.
Graph generate_gnp(std::size_t n, double p, Rng& rng);

}  // namespace mjr
