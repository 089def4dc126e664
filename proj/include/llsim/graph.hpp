#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <istream>
#include <limits>
#include <memory>
#include <mutex>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

#include "llsim/errors.hpp"
#include "llsim/random.hpp"

namespace llsim {

/// Node identifier. Ids are the indices 0..n-1 and double as the tie-breaking
/// total order used by every guard.
using NodeId = std::uint32_t;

/// Hop radius meaning "every node in the component".
inline constexpr std::size_t kUnboundedHops = std::numeric_limits<std::size_t>::max();

struct Edge {
  NodeId u;
  NodeId v;
  auto operator<=>(const Edge&) const = default;
};

/// Immutable simple undirected graph. Copies share the neighbourhood cache,
/// which is filled lazily and is safe to populate from concurrent readers.
class Graph {
 public:
  Graph() : Graph(1, {}) {}

  /// Builds a graph on `n` nodes. Duplicate edges (in either orientation) are
  /// collapsed and counted; self-loops and out-of-range ids are rejected.
  Graph(std::size_t n, std::vector<Edge> edges) : n_(n), cache_(std::make_shared<Cache>()) {
    if (n == 0) throw InputError("graph must have at least one node");
    if (n > std::numeric_limits<NodeId>::max()) throw InputError("too many nodes");
    for (auto& e : edges) {
      if (e.u >= n || e.v >= n) throw InputError("edge endpoint out of range");
      if (e.u == e.v) throw InputError("self-loop on node " + std::to_string(e.u));
      if (e.u > e.v) std::swap(e.u, e.v);
    }
    std::sort(edges.begin(), edges.end());
    const auto unique_end = std::unique(edges.begin(), edges.end());
    duplicates_ = static_cast<std::size_t>(edges.end() - unique_end);
    edges.erase(unique_end, edges.end());
    edges_ = std::move(edges);

    std::vector<std::size_t> deg(n, 0);
    for (const auto& e : edges_) {
      ++deg[e.u];
      ++deg[e.v];
    }
    offsets_.assign(n + 1, 0);
    for (std::size_t i = 0; i < n; ++i) offsets_[i + 1] = offsets_[i] + deg[i];
    neighbours_.resize(offsets_[n]);
    std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
    for (const auto& e : edges_) {
      neighbours_[fill[e.u]++] = e.v;
      neighbours_[fill[e.v]++] = e.u;
    }
    for (std::size_t i = 0; i < n; ++i) {
      std::sort(neighbours_.begin() + static_cast<std::ptrdiff_t>(offsets_[i]),
                neighbours_.begin() + static_cast<std::ptrdiff_t>(offsets_[i + 1]));
      max_degree_ = std::max(max_degree_, deg[i]);
    }
  }

  std::size_t node_count() const noexcept { return n_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  std::size_t max_degree() const noexcept { return max_degree_; }
  /// Number of duplicate edges dropped at construction.
  std::size_t duplicate_edges() const noexcept { return duplicates_; }
  /// Edges with u < v, sorted lexicographically.
  const std::vector<Edge>& edges() const noexcept { return edges_; }

  std::span<const NodeId> adjacency(NodeId i) const {
    return {neighbours_.data() + offsets_[i], offsets_[i + 1] - offsets_[i]};
  }
  std::size_t degree(NodeId i) const { return offsets_[i + 1] - offsets_[i]; }

  bool has_edge(NodeId a, NodeId b) const {
    const auto adj = adjacency(a);
    return std::binary_search(adj.begin(), adj.end(), b);
  }

  /// Nodes at hop distance 1..x from i, sorted by id. Radii 2..5 are memoized
  /// because guards query them on every evaluation; other radii are computed
  /// on demand into `scratch`.
  std::span<const NodeId> ball(NodeId i, std::size_t x, std::vector<NodeId>& scratch) const {
    if (x == 0) return {};
    if (x == 1) return adjacency(i);
    if (x >= kFirstCached && x < kFirstCached + kCachedRadii) {
      const auto& rows = cached_balls(x);
      return rows[i];
    }
    scratch = bfs_ball(i, x);
    return scratch;
  }

  /// Memoized ball for radius 2..5.
  std::span<const NodeId> ball(NodeId i, std::size_t x) const {
    if (x == 1) return adjacency(i);
    if (x < kFirstCached || x >= kFirstCached + kCachedRadii) throw InputError("radius not memoized");
    return cached_balls(x)[i];
  }

  /// Checked query: the nodes within x hops of i, excluding i.
  std::vector<NodeId> adj_x(NodeId i, std::size_t x) const {
    if (i >= n_) throw InputError("invalid node id " + std::to_string(i));
    std::vector<NodeId> scratch;
    const auto b = ball(i, x, scratch);
    return {b.begin(), b.end()};
  }

 private:
  static constexpr std::size_t kFirstCached = 2;
  static constexpr std::size_t kCachedRadii = 4;

  struct Cache {
    std::array<std::once_flag, kCachedRadii> once;
    std::array<std::vector<std::vector<NodeId>>, kCachedRadii> rows;
  };

  std::vector<NodeId> bfs_ball(NodeId i, std::size_t x) const {
    std::vector<std::size_t> dist(n_, std::numeric_limits<std::size_t>::max());
    std::deque<NodeId> queue{i};
    dist[i] = 0;
    std::vector<NodeId> out;
    while (!queue.empty()) {
      const NodeId u = queue.front();
      queue.pop_front();
      if (dist[u] == x) continue;
      for (NodeId w : adjacency(u)) {
        if (dist[w] != std::numeric_limits<std::size_t>::max()) continue;
        dist[w] = dist[u] + 1;
        out.push_back(w);
        queue.push_back(w);
      }
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  const std::vector<std::vector<NodeId>>& cached_balls(std::size_t x) const {
    const std::size_t slot = x - kFirstCached;
    std::call_once(cache_->once[slot], [&] {
      std::vector<std::vector<NodeId>> rows(n_);
      for (NodeId i = 0; i < n_; ++i) rows[i] = bfs_ball(i, x);
      cache_->rows[slot] = std::move(rows);
    });
    return cache_->rows[slot];
  }

  std::size_t n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_;
  std::vector<NodeId> neighbours_;
  std::size_t max_degree_ = 0;
  std::size_t duplicates_ = 0;
  std::shared_ptr<Cache> cache_;
};

/// Uniformly random simple graph with exactly n nodes and m edges.
inline Graph random_graph(std::size_t n, std::size_t m, std::uint64_t seed) {
  if (n == 0) throw InputError("random_graph: n must be positive");
  const std::uint64_t total = static_cast<std::uint64_t>(n) * (n - 1) / 2;
  if (m > total) {
    throw InputError("random_graph: m=" + std::to_string(m) + " exceeds n(n-1)/2=" + std::to_string(total));
  }
  Rng rng(seed);
  const bool sample_complement = m > total / 2;
  const std::uint64_t draws = sample_complement ? total - m : m;
  // Pair {u < v} is keyed as u * n + v.
  std::unordered_set<std::uint64_t> chosen;
  chosen.reserve(static_cast<std::size_t>(draws) * 2);
  while (chosen.size() < draws) {
    auto u = uniform_below(rng, n);
    auto v = uniform_below(rng, n);
    if (u == v) continue;
    if (u > v) std::swap(u, v);
    chosen.insert(u * n + v);
  }

  std::vector<Edge> edges;
  edges.reserve(m);
  if (sample_complement) {
    for (NodeId u = 0; u < n; ++u)
      for (NodeId v = u + 1; v < n; ++v)
        if (!chosen.contains(std::uint64_t{u} * n + v)) edges.push_back({u, v});
  } else {
    for (std::uint64_t k : chosen) edges.push_back({static_cast<NodeId>(k / n), static_cast<NodeId>(k % n)});
  }
  return Graph(n, std::move(edges));
}

/// Parses the edge-list format: optional `n=<count>` header, then one
/// `<u> <v>` pair per non-empty line; lines starting with `#` are comments.
inline Graph parse_edge_list(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  std::size_t declared = 0;
  bool have_header = false;
  bool seen_edge = false;
  std::size_t max_id_plus_one = 0;
  std::vector<Edge> edges;
  std::vector<std::size_t> edge_lines;

  auto trim = [](std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return std::string_view{};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
  };
  auto parse_id = [&](const std::string& tok) -> std::uint64_t {
    if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos) {
      throw ParseError(line_no, "expected a non-negative integer, got '" + tok + "'");
    }
    try {
      return std::stoull(tok);
    } catch (const std::exception&) {
      throw ParseError(line_no, "integer out of range: '" + tok + "'");
    }
  };

  while (std::getline(in, line)) {
    ++line_no;
    const auto body = trim(line);
    if (body.empty() || body.front() == '#') continue;
    if (body.starts_with("n=")) {
      if (have_header || seen_edge) throw ParseError(line_no, "'n=' header must precede all edges");
      const auto count = parse_id(std::string(trim(body.substr(2))));
      if (count == 0) throw ParseError(line_no, "declared node count must be positive");
      declared = static_cast<std::size_t>(count);
      have_header = true;
      continue;
    }
    std::istringstream tokens{std::string(body)};
    std::string a, b, extra;
    if (!(tokens >> a >> b) || (tokens >> extra)) {
      throw ParseError(line_no, "expected '<u> <v>', got '" + std::string(body) + "'");
    }
    const auto u = parse_id(a);
    const auto v = parse_id(b);
    if (u == v) throw ParseError(line_no, "self-loop on node " + a);
    if (u >= std::numeric_limits<NodeId>::max() || v >= std::numeric_limits<NodeId>::max()) {
      throw ParseError(line_no, "node id too large");
    }
    if (have_header && (u >= declared || v >= declared)) {
      throw ParseError(line_no, "node id exceeds declared n=" + std::to_string(declared));
    }
    max_id_plus_one = std::max<std::size_t>(max_id_plus_one, static_cast<std::size_t>(std::max(u, v)) + 1);
    edges.push_back({static_cast<NodeId>(u), static_cast<NodeId>(v)});
    seen_edge = true;
  }
  const std::size_t n = std::max(declared, max_id_plus_one);
  if (n == 0) throw ParseError(0, "empty graph: no edges and no 'n=' header");
  return Graph(n, std::move(edges));
}

inline Graph parse_edge_list(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_edge_list(in);
}

/// Writes the edge-list format; the `n=` header is always emitted so isolated
/// nodes survive a round trip.
inline void write_edge_list(std::ostream& out, const Graph& g) {
  out << "n=" << g.node_count() << '\n';
  for (const auto& e : g.edges()) out << e.u << ' ' << e.v << '\n';
}

/// FNV-1a over the node count and the canonical edge list, as 16 hex digits.
inline std::string graph_hash(const Graph& g) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&h](std::uint64_t x) {
    for (int k = 0; k < 8; ++k) {
      h ^= (x >> (8 * k)) & 0xff;
      h *= 0x100000001b3ULL;
    }
  };
  mix(g.node_count());
  for (const auto& e : g.edges()) {
    mix(e.u);
    mix(e.v);
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string s(16, '0');
  for (int k = 15; k >= 0; --k, h >>= 4) s[static_cast<std::size_t>(k)] = kHex[h & 0xf];
  return s;
}

/// Complete graph on n nodes.
inline Graph complete_graph(std::size_t n) {
  std::vector<Edge> edges;
  for (NodeId u = 0; u < n; ++u)
    for (NodeId v = u + 1; v < n; ++v) edges.push_back({u, v});
  return Graph(n, std::move(edges));
}

inline bool is_connected(const Graph& g) {
  std::vector<char> seen(g.node_count(), 0);
  std::vector<NodeId> stack{0};
  seen[0] = 1;
  std::size_t count = 1;
  while (!stack.empty()) {
    const NodeId u = stack.back();
    stack.pop_back();
    for (NodeId w : g.adjacency(u)) {
      if (!seen[w]) {
        seen[w] = 1;
        ++count;
        stack.push_back(w);
      }
    }
  }
  return count == g.node_count();
}

}  // namespace llsim
