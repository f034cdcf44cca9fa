#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace mjr {

using Vertex = std::uint32_t;

// Simple undirected graph (no loops, no parallel edges) in CSR form.
// Adjacency lists are sorted, so has_edge is a binary search.
class Graph {
 public:
  Graph() = default;

  // Edges may be given in any order/orientation; loops and duplicates throw.
  static Graph from_edges(std::size_t n, std::vector<std::pair<Vertex, Vertex>> edges);

  std::size_t order() const { return offsets_.size() - 1; }
  std::size_t edge_count() const { return adjacency_.size() / 2; }

  std::span<const Vertex> neighbors(Vertex v) const {
    return {adjacency_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
  }
  std::size_t degree(Vertex v) const { return offsets_[v + 1] - offsets_[v]; }

  // Engaged iff every vertex has the same degree (recomputed, never trusted
  // from the producer).
  std::optional<std::uint32_t> regular_degree() const { return regular_degree_; }

  bool has_edge(Vertex u, Vertex v) const;

  // Canonical edge list: u < v, sorted lexicographically.
  std::vector<std::pair<Vertex, Vertex>> edges() const;

  bool operator==(const Graph&) const = default;

 private:
  std::vector<std::size_t> offsets_{0};
  std::vector<Vertex> adjacency_;
  std::optional<std::uint32_t> regular_degree_;
};

// Fixed-universe bitset with element count.
class VertexSet {
 public:
  VertexSet() = default;
  explicit VertexSet(std::size_t universe)
      : universe_(universe), words_((universe + 63) / 64, 0) {}

  static VertexSet from_indices(std::size_t universe, std::span<const Vertex> vertices);

  std::size_t universe_size() const { return universe_; }
  std::size_t size() const { return count_; }
  bool empty() const { return count_ == 0; }

  bool contains(Vertex v) const {
    return (words_[v >> 6] >> (v & 63)) & 1u;
  }
  void insert(Vertex v);
  void erase(Vertex v);
  void clear();

  // Ascending order.
  std::vector<Vertex> to_vector() const;
  template <class F>
  void for_each(F&& f) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t bits = words_[w];
      while (bits != 0) {
        const int b = __builtin_ctzll(bits);
        f(static_cast<Vertex>(w * 64 + b));
        bits &= bits - 1;
      }
    }
  }

  std::size_t intersection_count(std::span<const Vertex> vertices) const;
  bool is_subset_of(const VertexSet& other) const;

  bool operator==(const VertexSet&) const = default;

 private:
  std::size_t universe_ = 0;
  std::size_t count_ = 0;
  std::vector<std::uint64_t> words_;
};

// Plain-text edge list: header "n m", then one "u v" line per edge,
// 0-indexed. write/parse round-trip bit-exactly.
std::string write_edge_list(const Graph& g);
Graph parse_edge_list(std::string_view text);
Graph read_edge_list_file(const std::string& path);
void write_edge_list_file(const Graph& g, const std::string& path);

}  // namespace mjr
