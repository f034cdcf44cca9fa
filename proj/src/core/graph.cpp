#include "core/graph.hpp"

#include <algorithm>
#include <cassert>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <limits>
#include <set>

#include "core/errors.hpp"

namespace mjr {

Graph Graph::from_edges(std::size_t n, std::vector<std::pair<Vertex, Vertex>> edges) {
  if (n > std::numeric_limits<Vertex>::max()) {
    throw InvalidArgument("graph order exceeds vertex index range");
  }
  for (auto& [u, v] : edges) {
    if (u >= n || v >= n) {
      throw InvalidArgument("edge endpoint " + std::to_string(std::max(u, v)) +
                            " out of range for order " + std::to_string(n));
    }
    if (u == v) {
      throw InvalidArgument("loop edge at vertex " + std::to_string(u));
    }
    if (u > v) std::swap(u, v);
  }
  std::sort(edges.begin(), edges.end());
  const auto dup = std::adjacent_find(edges.begin(), edges.end());
  if (dup != edges.end()) {
    throw InvalidArgument("duplicate edge (" + std::to_string(dup->first) + ", " +
                          std::to_string(dup->second) + ")");
  }

  Graph g;
  g.offsets_.assign(n + 1, 0);
  for (const auto& [u, v] : edges) {
    ++g.offsets_[u + 1];
    ++g.offsets_[v + 1];
  }
  for (std::size_t i = 1; i <= n; ++i) g.offsets_[i] += g.offsets_[i - 1];
  g.adjacency_.resize(edges.size() * 2);
  std::vector<std::size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
  // Scanning the sorted edge list fills every adjacency list in ascending
  // order, so no per-vertex sort is needed.
  for (const auto& [u, v] : edges) {
    g.adjacency_[cursor[u]++] = v;
    g.adjacency_[cursor[v]++] = u;
  }

  if (n > 0) {
    const std::size_t d0 = g.degree(0);
    bool regular = true;
    for (Vertex v = 1; v < n; ++v) {
      if (g.degree(v) != d0) {
        regular = false;
        break;
      }
    }
    if (regular) g.regular_degree_ = static_cast<std::uint32_t>(d0);
  }
  return g;
}

bool Graph::has_edge(Vertex u, Vertex v) const {
  const auto nb = neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

std::vector<std::pair<Vertex, Vertex>> Graph::edges() const {
  std::vector<std::pair<Vertex, Vertex>> out;
  out.reserve(edge_count());
  for (Vertex u = 0; u < order(); ++u) {
    for (Vertex v : neighbors(u)) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  return out;
}

VertexSet VertexSet::from_indices(std::size_t universe, std::span<const Vertex> vertices) {
  VertexSet s(universe);
  for (Vertex v : vertices) {
    if (v >= universe) {
      throw InvalidArgument("vertex " + std::to_string(v) + " out of range for universe " +
                            std::to_string(universe));
    }
    s.insert(v);
  }
  return s;
}

void VertexSet::insert(Vertex v) {
  assert(v < universe_);
  std::uint64_t& w = words_[v >> 6];
  const std::uint64_t bit = std::uint64_t{1} << (v & 63);
  if (!(w & bit)) {
    w |= bit;
    ++count_;
  }
}

void VertexSet::erase(Vertex v) {
  assert(v < universe_);
  std::uint64_t& w = words_[v >> 6];
  const std::uint64_t bit = std::uint64_t{1} << (v & 63);
  if (w & bit) {
    w &= ~bit;
    --count_;
  }
}

void VertexSet::clear() {
  std::fill(words_.begin(), words_.end(), 0);
  count_ = 0;
}

std::vector<Vertex> VertexSet::to_vector() const {
  std::vector<Vertex> out;
  out.reserve(count_);
  for_each([&](Vertex v) { out.push_back(v); });
  return out;
}

std::size_t VertexSet::intersection_count(std::span<const Vertex> vertices) const {
  std::size_t c = 0;
  for (Vertex v : vertices) c += contains(v);
  return c;
}

bool VertexSet::is_subset_of(const VertexSet& other) const {
  assert(universe_ == other.universe_);
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if (words_[i] & ~other.words_[i]) return false;
  }
  return true;
}

namespace {

// One text line, split into whitespace-separated unsigned fields.
struct Line {
  std::string_view text;
  int number = 0;
};

std::uint64_t parse_field(std::string_view& rest, const Line& line, const char* what) {
  while (!rest.empty() && (rest.front() == ' ' || rest.front() == '\t')) {
    rest.remove_prefix(1);
  }
  if (rest.empty()) {
    throw ParseError(std::string("missing ") + what, line.number);
  }
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), value);
  if (ec != std::errc{} || ptr == rest.data()) {
    throw ParseError(std::string("malformed ") + what, line.number);
  }
  rest.remove_prefix(static_cast<std::size_t>(ptr - rest.data()));
  return value;
}

void expect_line_end(std::string_view rest, const Line& line) {
  while (!rest.empty() && (rest.front() == ' ' || rest.front() == '\t')) {
    rest.remove_prefix(1);
  }
  if (!rest.empty()) {
    throw ParseError("trailing characters after fields", line.number);
  }
}

}  // namespace

std::string write_edge_list(const Graph& g) {
  std::string out;
  out.reserve(16 + g.edge_count() * 14);
  char buf[48];
  std::snprintf(buf, sizeof buf, "%zu %zu\n", g.order(), g.edge_count());
  out += buf;
  for (Vertex u = 0; u < g.order(); ++u) {
    for (Vertex v : g.neighbors(u)) {
      if (u < v) {
        std::snprintf(buf, sizeof buf, "%u %u\n", u, v);
        out += buf;
      }
    }
  }
  return out;
}

Graph parse_edge_list(std::string_view text) {
  int line_number = 0;
  std::size_t pos = 0;
  auto next_line = [&]() -> Line {
    if (pos >= text.size()) return {{}, 0};
    const std::size_t nl = text.find('\n', pos);
    std::string_view body = (nl == std::string_view::npos) ? text.substr(pos)
                                                           : text.substr(pos, nl - pos);
    pos = (nl == std::string_view::npos) ? text.size() : nl + 1;
    ++line_number;
    return {body, line_number};
  };

  const Line header = next_line();
  if (header.number == 0) throw ParseError("empty input, expected \"n m\" header", 1);
  std::string_view rest = header.text;
  const std::uint64_t n = parse_field(rest, header, "vertex count");
  const std::uint64_t m = parse_field(rest, header, "edge count");
  expect_line_end(rest, header);

  std::vector<std::pair<Vertex, Vertex>> edges;
  edges.reserve(std::min<std::uint64_t>(m, 1u << 20));
  std::set<std::pair<Vertex, Vertex>> seen;
  for (std::uint64_t i = 0; i < m; ++i) {
    const Line line = next_line();
    if (line.number == 0) {
      throw ParseError("expected " + std::to_string(m) + " edges, got " + std::to_string(i),
                       line_number + 1);
    }
    rest = line.text;
    const std::uint64_t u = parse_field(rest, line, "edge endpoint");
    const std::uint64_t v = parse_field(rest, line, "edge endpoint");
    expect_line_end(rest, line);
    if (u >= n || v >= n) {
      throw ParseError("vertex " + std::to_string(std::max(u, v)) +
                           " out of range for order " + std::to_string(n),
                       line.number);
    }
    if (u == v) {
      throw ParseError("loop edge at vertex " + std::to_string(u), line.number);
    }
    const auto a = static_cast<Vertex>(std::min(u, v));
    const auto b = static_cast<Vertex>(std::max(u, v));
    if (!seen.insert({a, b}).second) {
      throw ParseError("duplicate edge " + std::to_string(u) + " " + std::to_string(v),
                       line.number);
    }
    edges.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
  }
  for (Line extra = next_line(); extra.number != 0; extra = next_line()) {
    if (!extra.text.empty()) {
      throw ParseError("unexpected content after edge list", extra.number);
    }
  }

  try {
    return Graph::from_edges(n, std::move(edges));
  } catch (const InvalidArgument& e) {
    throw ParseError(e.what());
  }
}

Graph read_edge_list_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path + " for reading");
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw IoError("read failure on " + path);
  return parse_edge_list(text);
}

void write_edge_list_file(const Graph& g, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path + " for writing");
  const std::string text = write_edge_list(g);
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  out.flush();
  if (!out) throw IoError("write failure on " + path);
}

}  // namespace mjr
