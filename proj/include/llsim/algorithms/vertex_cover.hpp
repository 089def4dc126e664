#pragma once

#include <charconv>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "llsim/algorithms/membership.hpp"
#include "llsim/errors.hpp"
#include "llsim/graph.hpp"
#include "llsim/program.hpp"

namespace llsim {

struct CoverState {
  Member st = Member::out;
  bool done = false;
  auto operator<=>(const CoverState&) const = default;
};

/// CoverState plus the neighbour this node asked to join (nullopt is "none").
struct PointerCoverState {
  Member st = Member::out;
  bool done = false;
  std::optional<NodeId> point;
  auto operator<=>(const PointerCoverState&) const = default;
};

namespace vc {

template <class View>
bool all_neighbours_in(const Graph& g, NodeId i, const View& v) {
  for (NodeId k : g.adjacency(i))
    if (v[k].st != Member::in) return false;
  return true;
}

/// Highest-id neighbour that is not done.
template <class View>
std::optional<NodeId> highest_undone_neighbour(const Graph& g, NodeId i, const View& v) {
  const auto adj = g.adjacency(i);
  for (auto it = adj.rbegin(); it != adj.rend(); ++it)
    if (!v[*it].done) return *it;
  return std::nullopt;
}

/// Not done, and every higher-id node within three hops is done.
template <class View>
bool leads_three_hops(const Graph& g, NodeId i, const View& v) {
  if (v[i].done) return false;
  for (NodeId j : g.ball(i, 3))
    if (j > i && !v[j].done) return false;
  return true;
}

template <class Local>
bool covers(const Graph& g, const GlobalState<Local>& s) {
  for (const auto& e : g.edges())
    if (s[e.u].st != Member::in && s[e.v].st != Member::in) return false;
  return true;
}

template <class Local>
std::size_t cover_size(const GlobalState<Local>& s) {
  std::size_t k = 0;
  for (const auto& x : s) k += x.st == Member::in;
  return k;
}

/// Number of out neighbours when out, 0 when in.
template <class Local>
std::int64_t out_neighbour_count(const Graph& g, NodeId i, const GlobalState<Local>& s) {
  if (s[i].st == Member::in) return 0;
  std::int64_t k = 0;
  for (NodeId j : g.adjacency(i)) k += s[j].st == Member::out;
  return k;
}

inline bool parse_bool(std::string_view s) {
  if (s == "1" || s == "true" || s == "T") return true;
  if (s == "0" || s == "false" || s == "F") return false;
  throw InputError("expected a boolean, got '" + std::string(s) + "'");
}

}  // namespace vc

/// Lattice-linear 2-approximation for vertex cover. The highest-id undone
/// node within three hops either declares itself done (all incident edges
/// covered) or picks its highest-id undone neighbour j and puts both itself
/// and j in the cover, marking both done. The write to j is part of the same
/// atomic action.
struct VcProgram {
  using Local = CoverState;
  static constexpr bool kWritesNeighbour = true;

  std::string_view name() const { return "vc"; }
  std::size_t view_radius() const { return 3; }

  template <class View>
  std::optional<Action<CoverState>> enabled(const Graph& g, NodeId i, const View& v) const {
    if (!vc::leads_three_hops(g, i, v)) return std::nullopt;
    if (vc::all_neighbours_in(g, i, v)) return Action<CoverState>{{v[i].st, true}, std::nullopt};
    const auto j = vc::highest_undone_neighbour(g, i, v);
    if (!j) return Action<CoverState>{{Member::in, true}, std::nullopt};
    return Action<CoverState>{{Member::in, true}, std::pair{*j, CoverState{Member::in, true}}};
  }

  bool optimal(const Graph& g, const GlobalState<CoverState>& s) const {
    for (const auto& x : s)
      if (!x.done) return false;
    return vc::covers(g, s);
  }

  std::int64_t state_value(const Graph& g, NodeId i, const GlobalState<CoverState>& s) const {
    return vc::out_neighbour_count(g, i, s);
  }

  /// Guards depend on `done` only, a two-valued variable.
  MoveBudget budget(const Graph& g) const { return MoveBudget::single(g.node_count(), 2); }

  std::vector<CoverState> domain(const Graph&, NodeId, std::optional<std::int64_t>) const {
    return {{Member::out, false}, {Member::out, true}, {Member::in, false}, {Member::in, true}};
  }
  void validate(const Graph&, const GlobalState<CoverState>&) const {}
  GlobalState<CoverState> fixed_init(const Graph& g) const {
    return GlobalState<CoverState>(g.node_count(), CoverState{});
  }
  std::string format(const CoverState& x) const {
    return std::string(to_string(x.st)) + (x.done ? "/done" : "");
  }
  CoverState parse(std::string_view s) const {
    const auto slash = s.find('/');
    if (slash == std::string_view::npos) return {parse_member(s), false};
    const auto flag = s.substr(slash + 1);
    if (flag != "done") throw InputError("bad cover state '" + std::string(s) + "'");
    return {parse_member(s.substr(0, slash)), true};
  }
};

/// Distributed variant: every action writes only the acting node. Instead of
/// writing j, the leader points at j; a pointed node joins on its own turn
/// unless its edges are already covered.
struct VcDistributedProgram {
  using Local = PointerCoverState;

  std::string_view name() const { return "vc-dist"; }
  /// Else-Pointed looks four hops out and then at the neighbours there.
  std::size_t view_radius() const { return 5; }

  template <class View>
  static bool pointed_at(const Graph& g, NodeId i, const View& v) {
    for (NodeId j : g.adjacency(i))
      if (v[j].point == i) return true;
    return false;
  }

  /// Some undone node within four hops is being pointed at.
  template <class View>
  static bool else_pointed(const Graph& g, NodeId i, const View& v) {
    for (NodeId j : g.ball(i, 4)) {
      if (v[j].done) continue;
      if (pointed_at(g, j, v)) return true;
    }
    return false;
  }

  template <class View>
  std::optional<Action<PointerCoverState>> enabled(const Graph& g, NodeId i, const View& v) const {
    const auto& me = v[i];
    if (me.done) return std::nullopt;
    if (pointed_at(g, i, v)) {
      if (vc::all_neighbours_in(g, i, v)) return Action<PointerCoverState>{{me.st, true, me.point}, std::nullopt};
      return Action<PointerCoverState>{{Member::in, true, me.point}, std::nullopt};
    }
    if (else_pointed(g, i, v) || !vc::leads_three_hops(g, i, v)) return std::nullopt;
    if (vc::all_neighbours_in(g, i, v)) return Action<PointerCoverState>{{me.st, true, me.point}, std::nullopt};
    const auto j = vc::highest_undone_neighbour(g, i, v);
    return Action<PointerCoverState>{{Member::in, true, j}, std::nullopt};
  }

  bool optimal(const Graph& g, const GlobalState<PointerCoverState>& s) const {
    for (const auto& x : s)
      if (!x.done) return false;
    return vc::covers(g, s);
  }

  std::int64_t state_value(const Graph& g, NodeId i, const GlobalState<PointerCoverState>& s) const {
    return vc::out_neighbour_count(g, i, s);
  }

  /// Each node acts once: its only move sets done.
  MoveBudget budget(const Graph& g) const { return MoveBudget::single(g.node_count(), 2); }

  std::vector<PointerCoverState> domain(const Graph& g, NodeId i, std::optional<std::int64_t>) const {
    std::vector<std::optional<NodeId>> points{std::nullopt};
    for (NodeId j : g.adjacency(i)) points.push_back(j);
    std::vector<PointerCoverState> out;
    for (Member st : {Member::out, Member::in})
      for (bool done : {false, true})
        for (const auto& p : points) out.push_back({st, done, p});
    return out;
  }

  void validate(const Graph& g, const GlobalState<PointerCoverState>& s) const {
    for (NodeId i = 0; i < s.size(); ++i) {
      if (s[i].point && (*s[i].point >= g.node_count() || !g.has_edge(i, *s[i].point))) {
        throw InputError("node " + std::to_string(i) + " points at non-neighbour " + std::to_string(*s[i].point));
      }
    }
  }

  GlobalState<PointerCoverState> fixed_init(const Graph& g) const {
    return GlobalState<PointerCoverState>(g.node_count(), PointerCoverState{});
  }

  std::string format(const PointerCoverState& x) const {
    std::string out(to_string(x.st));
    if (x.done) out += "/done";
    if (x.point) out += "->" + std::to_string(*x.point);
    return out;
  }

  PointerCoverState parse(std::string_view s) const {
    PointerCoverState x;
    const auto arrow = s.find("->");
    if (arrow != std::string_view::npos) {
      const auto target = s.substr(arrow + 2);
      NodeId p = 0;
      const auto [ptr, ec] = std::from_chars(target.data(), target.data() + target.size(), p);
      if (ec != std::errc{} || ptr != target.data() + target.size()) {
        throw InputError("bad pointer in '" + std::string(s) + "'");
      }
      x.point = p;
      s = s.substr(0, arrow);
    }
    const auto base = VcProgram{}.parse(s);
    x.st = base.st;
    x.done = base.done;
    return x;
  }
};

/// The add/remove scheme that works for dominating sets, transplanted to
/// vertex cover. It is not lattice-linear: nodes can be forced to revisit
/// an earlier state.
struct NaiveVcProgram {
  using Local = Member;

  std::string_view name() const { return "naive-vc"; }
  std::size_t view_radius() const { return 3; }

  /// Out with an uncovered incident edge.
  template <class View>
  static bool addable(const Graph& g, NodeId i, const View& v) {
    if (v[i] != Member::out) return false;
    for (NodeId k : g.adjacency(i))
      if (v[k] == Member::out) return true;
    return false;
  }

  /// In, and every neighbour is in, so leaving keeps the cover.
  template <class View>
  static bool removable(const Graph& g, NodeId i, const View& v) {
    if (v[i] != Member::in) return false;
    for (NodeId k : g.adjacency(i))
      if (v[k] != Member::in) return false;
    return true;
  }

  template <class View>
  static bool unsatisfied(const Graph& g, NodeId i, const View& v) {
    return addable(g, i, v) || removable(g, i, v);
  }

  template <class View>
  std::optional<Action<Member>> enabled(const Graph& g, NodeId i, const View& v) const {
    if (!unsatisfied(g, i, v)) return std::nullopt;
    for (NodeId j : g.ball(i, 2))
      if (j > i && unsatisfied(g, j, v)) return std::nullopt;
    return Action<Member>{flip(v[i]), std::nullopt};
  }

  /// A minimal vertex cover.
  bool optimal(const Graph& g, const GlobalState<Member>& s) const {
    for (NodeId i = 0; i < s.size(); ++i)
      if (unsatisfied(g, i, s)) return false;
    return true;
  }

  std::int64_t state_value(const Graph& g, NodeId i, const GlobalState<Member>& s) const {
    return unsatisfied(g, i, s) ? 1 : 0;
  }

  /// What the bound would be if the program were lattice-linear.
  MoveBudget budget(const Graph& g) const { return MoveBudget::single(g.node_count(), 2); }

  std::vector<Member> domain(const Graph&, NodeId, std::optional<std::int64_t>) const {
    return {Member::out, Member::in};
  }
  void validate(const Graph&, const GlobalState<Member>&) const {}
  GlobalState<Member> fixed_init(const Graph& g) const { return GlobalState<Member>(g.node_count(), Member::out); }
  std::string format(Member m) const { return std::string(to_string(m)); }
  Member parse(std::string_view s) const { return parse_member(s); }
};

}  // namespace llsim
