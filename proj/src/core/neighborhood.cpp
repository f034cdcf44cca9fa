#include "core/neighborhood.hpp"

#include <cstddef>

#include "core/errors.hpp"

namespace mjr {

namespace {

// Reusable BFS state; epoch marking makes per-vertex reset O(1).
struct BfsScratch {
  explicit BfsScratch(std::size_t n) : epoch_of(n, 0) {}
  std::vector<std::uint32_t> epoch_of;
  std::vector<Vertex> visited;
  std::uint32_t epoch = 0;
};

void collect_ball(const Graph& g, Vertex v, std::uint32_t radius, BfsScratch& s) {
  ++s.epoch;
  s.visited.clear();
  s.visited.push_back(v);
  s.epoch_of[v] = s.epoch;
  std::size_t frontier_begin = 0;
  for (std::uint32_t depth = 0; depth < radius; ++depth) {
    const std::size_t frontier_end = s.visited.size();
    for (std::size_t i = frontier_begin; i < frontier_end; ++i) {
      for (Vertex w : g.neighbors(s.visited[i])) {
        if (s.epoch_of[w] != s.epoch) {
          s.epoch_of[w] = s.epoch;
          s.visited.push_back(w);
        }
      }
    }
    frontier_begin = frontier_end;
    if (frontier_begin == s.visited.size()) break;
  }
}

bool ball_is_tree(const Graph& g, const BfsScratch& s) {
  // The ball is connected, so it is a tree iff it has exactly |ball|-1 edges.
  std::size_t incidences = 0;
  for (Vertex u : s.visited) {
    for (Vertex w : g.neighbors(u)) {
      if (s.epoch_of[w] == s.epoch) ++incidences;
    }
  }
  return incidences / 2 == s.visited.size() - 1;
}

void check_vertex(const Graph& g, Vertex v) {
  if (v >= g.order()) {
    throw InvalidArgument("vertex " + std::to_string(v) + " out of range");
  }
}

}  // namespace

VertexSet ball(const Graph& g, Vertex v, std::uint32_t radius) {
  check_vertex(g, v);
  BfsScratch s(g.order());
  collect_ball(g, v, radius, s);
  VertexSet out(g.order());
  for (Vertex u : s.visited) out.insert(u);
  return out;
}

bool is_tree_neighborhood(const Graph& g, Vertex v, std::uint32_t radius) {
  check_vertex(g, v);
  BfsScratch s(g.order());
  collect_ball(g, v, radius, s);
  return ball_is_tree(g, s);
}

std::size_t count_non_tree_neighborhoods(const Graph& g, std::uint32_t radius) {
  BfsScratch s(g.order());
  std::size_t count = 0;
  for (Vertex v = 0; v < g.order(); ++v) {
    collect_ball(g, v, radius, s);
    if (!ball_is_tree(g, s)) ++count;
  }
  return count;
}

std::vector<Vertex> select_disjoint_balls(const Graph& g, std::uint32_t k) {
  BfsScratch s(g.order());
  std::vector<char> blocked(g.order(), 0);
  std::vector<Vertex> centers;
  for (Vertex v = 0; v < g.order(); ++v) {
    if (blocked[v]) continue;
    centers.push_back(v);
    collect_ball(g, v, 2 * k, s);
    for (Vertex u : s.visited) blocked[u] = 1;
  }
  return centers;
}

}  // namespace mjr
