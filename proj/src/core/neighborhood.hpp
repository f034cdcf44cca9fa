#pragma once

#include <cstdint>
#include <vector>

#include "core/graph.hpp"

namespace mjr {

// Closed ball: every vertex at distance <= radius from v.
VertexSet ball(const Graph& g, Vertex v, std::uint32_t radius);

// True iff the subgraph induced by ball(g, v, radius) is a tree.
bool is_tree_neighborhood(const Graph& g, Vertex v, std::uint32_t radius);

// Number of vertices whose radius-ball is not a tree.
std::size_t count_non_tree_neighborhoods(const Graph& g, std::uint32_t radius);

// Greedy scan in vertex order; the returned centers have pairwise-disjoint
// k-balls (every vertex within distance 2k of a chosen center is skipped).
std::vector<Vertex> select_disjoint_balls(const Graph& g, std::uint32_t k);

}  // namespace mjr
