#pragma once

// Brute-force reference implementations. Nothing here calls into the
// library's algorithm code; they work from the problem definitions.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "llsim/graph.hpp"

namespace oracle {

using llsim::Graph;
using llsim::NodeId;

using Matrix = std::vector<std::vector<bool>>;

inline Matrix adjacency_matrix(const Graph& g) {
  const auto n = g.node_count();
  Matrix a(n, std::vector<bool>(n, false));
  for (const auto& e : g.edges()) a[e.u][e.v] = a[e.v][e.u] = true;
  return a;
}

/// All-pairs hop distances (Floyd-Warshall); unreachable = max.
inline std::vector<std::vector<std::size_t>> hop_distances(const Graph& g) {
  const auto n = g.node_count();
  constexpr auto inf = std::numeric_limits<std::size_t>::max() / 4;
  std::vector<std::vector<std::size_t>> d(n, std::vector<std::size_t>(n, inf));
  for (std::size_t i = 0; i < n; ++i) d[i][i] = 0;
  for (const auto& e : g.edges()) d[e.u][e.v] = d[e.v][e.u] = 1;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
  return d;
}

/// Nodes at distance 1..x from i.
inline std::set<NodeId> within(const Graph& g, NodeId i, std::size_t x) {
  const auto d = hop_distances(g);
  std::set<NodeId> out;
  for (NodeId j = 0; j < g.node_count(); ++j)
    if (j != i && d[i][j] <= x) out.insert(j);
  return out;
}

using Set = std::vector<bool>;

inline bool is_dominating(const Graph& g, const Set& in) {
  const auto a = adjacency_matrix(g);
  for (std::size_t v = 0; v < in.size(); ++v) {
    bool ok = in[v];
    for (std::size_t u = 0; u < in.size() && !ok; ++u) ok = a[v][u] && in[u];
    if (!ok) return false;
  }
  return true;
}

/// Dominating, and dropping any single member breaks domination.
inline bool is_minimal_dominating(const Graph& g, const Set& in) {
  if (!is_dominating(g, in)) return false;
  for (std::size_t v = 0; v < in.size(); ++v) {
    if (!in[v]) continue;
    Set less = in;
    less[v] = false;
    if (is_dominating(g, less)) return false;
  }
  return true;
}

inline std::vector<Set> all_minimal_dominating_sets(const Graph& g) {
  const auto n = g.node_count();
  std::vector<Set> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    Set s(n);
    for (std::size_t v = 0; v < n; ++v) s[v] = (mask >> v) & 1;
    if (is_minimal_dominating(g, s)) out.push_back(s);
  }
  return out;
}

/// No equal colours on an edge; no node could take a smaller colour that no
/// neighbour uses.
inline bool is_proper_irreducible(const Graph& g, const std::vector<int>& colour) {
  const auto a = adjacency_matrix(g);
  const auto n = colour.size();
  for (std::size_t v = 0; v < n; ++v) {
    if (colour[v] < 1) return false;
    for (std::size_t u = 0; u < n; ++u)
      if (a[v][u] && colour[u] == colour[v]) return false;
    for (int c = 1; c < colour[v]; ++c) {
      bool used = false;
      for (std::size_t u = 0; u < n; ++u) used = used || (a[v][u] && colour[u] == c);
      if (!used) return false;
    }
  }
  return true;
}

inline bool is_vertex_cover(const Graph& g, const Set& in) {
  for (const auto& e : g.edges())
    if (!in[e.u] && !in[e.v]) return false;
  return true;
}

inline bool is_minimal_vertex_cover(const Graph& g, const Set& in) {
  if (!is_vertex_cover(g, in)) return false;
  for (std::size_t v = 0; v < in.size(); ++v) {
    if (!in[v]) continue;
    Set less = in;
    less[v] = false;
    if (is_vertex_cover(g, less)) return false;
  }
  return true;
}

/// Size of a minimum vertex cover, by subset enumeration.
inline std::size_t minimum_vertex_cover(const Graph& g) {
  const auto n = g.node_count();
  std::size_t best = n;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    const auto size = static_cast<std::size_t>(__builtin_popcountll(mask));
    if (size >= best) continue;
    bool ok = true;
    for (const auto& e : g.edges()) ok = ok && (((mask >> e.u) & 1) || ((mask >> e.v) & 1));
    if (ok) best = size;
  }
  return best;
}

/// Man-proposing deferred acceptance. Returns each man's 1-based rank of
/// his partner, or nullopt if some man is rejected by every woman.
/// women_pref[w] lists men best first.
inline std::optional<std::vector<int>> gale_shapley(const std::vector<std::vector<std::size_t>>& men_pref,
                                                    const std::vector<std::vector<std::size_t>>& women_pref) {
  const auto nm = men_pref.size();
  const auto nw = women_pref.size();
  std::vector<std::vector<std::size_t>> pos(nw, std::vector<std::size_t>(nm));
  for (std::size_t w = 0; w < nw; ++w)
    for (std::size_t r = 0; r < nm; ++r) pos[w][women_pref[w][r]] = r;
  std::vector<std::size_t> next(nm, 0);
  std::vector<std::optional<std::size_t>> holds(nw);
  std::vector<std::size_t> free_men;
  for (std::size_t m = nm; m-- > 0;) free_men.push_back(m);
  while (!free_men.empty()) {
    const auto m = free_men.back();
    free_men.pop_back();
    if (next[m] >= nw) return std::nullopt;
    const auto w = men_pref[m][next[m]];
    if (!holds[w]) {
      holds[w] = m;
    } else if (pos[w][m] < pos[w][*holds[w]]) {
      free_men.push_back(*holds[w]);
      ++next[*holds[w]];
      holds[w] = m;
    } else {
      ++next[m];
      free_men.push_back(m);
    }
  }
  std::vector<int> rank(nm);
  for (std::size_t m = 0; m < nm; ++m) rank[m] = static_cast<int>(next[m]) + 1;
  return rank;
}

/// Every labelled graph on n nodes (n <= 6 keeps this at 2^15).
inline std::vector<Graph> all_graphs(std::size_t n) {
  std::vector<std::pair<NodeId, NodeId>> pairs;
  for (NodeId u = 0; u < n; ++u)
    for (NodeId v = u + 1; v < n; ++v) pairs.emplace_back(u, v);
  std::vector<Graph> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pairs.size()); ++mask) {
    std::vector<llsim::Edge> edges;
    for (std::size_t k = 0; k < pairs.size(); ++k)
      if ((mask >> k) & 1) edges.push_back({pairs[k].first, pairs[k].second});
    out.emplace_back(n, edges);
  }
  return out;
}

inline bool connected(const Graph& g) {
  const auto d = hop_distances(g);
  for (std::size_t v = 0; v < g.node_count(); ++v)
    if (d[0][v] > g.node_count()) return false;
  return true;
}

}  // namespace oracle
