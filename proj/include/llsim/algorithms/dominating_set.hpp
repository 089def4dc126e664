#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "llsim/algorithms/membership.hpp"
#include "llsim/graph.hpp"
#include "llsim/program.hpp"

namespace llsim {

namespace ds {

/// i is out and so is every neighbour: nobody dominates i.
template <class View>
bool addable(const Graph& g, NodeId i, const View& v) {
  if (v[i] != Member::out) return false;
  for (NodeId j : g.adjacency(i))
    if (v[j] != Member::out) return false;
  return true;
}

/// i is in, and i together with each neighbour stays dominated without i.
template <class View>
bool removable(const Graph& g, NodeId i, const View& v) {
  if (v[i] != Member::in) return false;
  auto dominated_without_i = [&](NodeId x) {
    if (x != i && v[x] == Member::in) return true;
    for (NodeId k : g.adjacency(x))
      if (k != i && v[k] == Member::in) return true;
    return false;
  };
  if (!dominated_without_i(i)) return false;
  for (NodeId x : g.adjacency(i))
    if (!dominated_without_i(x)) return false;
  return true;
}

template <class View>
bool unsatisfied(const Graph& g, NodeId i, const View& v) {
  return addable(g, i, v) || removable(g, i, v);
}

inline std::vector<char> unsatisfied_all(const Graph& g, const GlobalState<Member>& s) {
  std::vector<char> out(s.size());
  for (NodeId i = 0; i < s.size(); ++i) out[i] = unsatisfied(g, i, s);
  return out;
}

/// Every node is in or has an in neighbour.
inline bool dominates(const Graph& g, const GlobalState<Member>& s) {
  for (NodeId i = 0; i < s.size(); ++i) {
    if (s[i] == Member::in) continue;
    bool covered = false;
    for (NodeId j : g.adjacency(i)) covered = covered || s[j] == Member::in;
    if (!covered) return false;
  }
  return true;
}

/// Shared variable handling for the programs over a bare `st` variable.
struct MemberDomain {
  using Local = Member;

  std::vector<Member> domain(const Graph&, NodeId, std::optional<std::int64_t>) const {
    return {Member::out, Member::in};
  }
  void validate(const Graph&, const GlobalState<Member>&) const {}
  GlobalState<Member> fixed_init(const Graph& g) const { return GlobalState<Member>(g.node_count(), Member::out); }
  std::string format(Member m) const { return std::string(to_string(m)); }
  Member parse(std::string_view s) const { return parse_member(s); }
};

}  // namespace ds

/// Fully lattice-linear minimal dominating set. A node toggles `st` when it is
/// unsatisfied (addable or removable) and no higher-id node within two hops is
/// unsatisfied.
struct MdsProgram : ds::MemberDomain {
  std::string_view name() const { return "mds"; }
  /// Guards read Unsatisfied of two-hop neighbours, each of which looks two
  /// further hops out.
  std::size_t view_radius() const { return 4; }

  template <class View>
  std::optional<Action<Member>> enabled(const Graph& g, NodeId i, const View& v) const {
    if (!ds::unsatisfied(g, i, v)) return std::nullopt;
    for (NodeId j : g.ball(i, 2))
      if (j > i && ds::unsatisfied(g, j, v)) return std::nullopt;
    return Action<Member>{flip(v[i]), std::nullopt};
  }

  std::vector<std::optional<Action<Member>>> enabled_all(const Graph& g, const GlobalState<Member>& s) const {
    const auto unsat = ds::unsatisfied_all(g, s);
    std::vector<std::optional<Action<Member>>> out(s.size());
    for (NodeId i = 0; i < s.size(); ++i) {
      if (!unsat[i]) continue;
      bool highest = true;
      for (NodeId j : g.ball(i, 2)) {
        if (j > i && unsat[j]) {
          highest = false;
          break;
        }
      }
      if (highest) out[i] = Action<Member>{flip(s[i]), std::nullopt};
    }
    return out;
  }

  /// A minimal dominating set: nobody addable, nobody removable.
  bool optimal(const Graph& g, const GlobalState<Member>& s) const {
    for (NodeId i = 0; i < s.size(); ++i)
      if (ds::unsatisfied(g, i, s)) return false;
    return true;
  }

  std::int64_t state_value(const Graph& g, NodeId i, const GlobalState<Member>& s) const {
    return ds::unsatisfied(g, i, s) ? 1 : 0;
  }

  MoveBudget budget(const Graph& g) const { return MoveBudget::single(g.node_count(), 2); }
};

/// Two-phase eventually lattice-linear MDS: addable nodes join without any
/// id filter; removable nodes leave when they are the highest-id removable
/// node within two hops.
struct MdsEventuallyProgram : ds::MemberDomain {
  std::string_view name() const { return "mds-ell"; }
  std::size_t view_radius() const { return 4; }

  template <class View>
  std::optional<Action<Member>> enabled(const Graph& g, NodeId i, const View& v) const {
    if (ds::addable(g, i, v)) return Action<Member>{Member::in, std::nullopt};
    if (!ds::removable(g, i, v)) return std::nullopt;
    for (NodeId j : g.ball(i, 2))
      if (j > i && ds::removable(g, j, v)) return std::nullopt;
    return Action<Member>{Member::out, std::nullopt};
  }

  bool optimal(const Graph& g, const GlobalState<Member>& s) const { return MdsProgram{}.optimal(g, s); }

  std::int64_t state_value(const Graph& g, NodeId i, const GlobalState<Member>& s) const {
    return ds::unsatisfied(g, i, s) ? 1 : 0;
  }

  /// Phase 1 adds each node at most once and phase 2 removes each node at
  /// most once.
  MoveBudget budget(const Graph& g) const { return MoveBudget::single(g.node_count(), 3); }
};

/// States where the selected nodes already dominate the graph; the second
/// phase of MdsEventuallyProgram operates only here.
inline bool mds_feasible(const Graph& g, const GlobalState<Member>& s) { return ds::dominates(g, s); }

}  // namespace llsim
