#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "llsim/engine.hpp"
#include "llsim/errors.hpp"
#include "llsim/graph.hpp"
#include "llsim/program.hpp"

namespace llsim {

struct ExploreOptions {
  /// Caps unbounded domains (GC colours); the program picks a default.
  std::optional<std::int64_t> domain_cap;
  std::size_t limit = std::size_t{1} << 20;
};

struct Transition {
  std::size_t to;
  NodeId node;
};

/// Explored global states with their single-move successor lists.
template <class Local>
struct StateSpace {
  std::vector<GlobalState<Local>> states;
  std::vector<std::vector<Transition>> successors;
  std::map<GlobalState<Local>, std::size_t> index;
  /// True when only part of the product space was enumerated.
  bool restricted = false;
  std::optional<std::int64_t> domain_cap;
  /// Successor states that fell outside the enumerated domains.
  std::size_t outside_domain = 0;

  std::size_t size() const { return states.size(); }

  std::optional<std::size_t> find(const GlobalState<Local>& s) const {
    const auto it = index.find(s);
    if (it == index.end()) return std::nullopt;
    return it->second;
  }

  std::size_t at(const GlobalState<Local>& s) const {
    if (auto k = find(s)) return *k;
    throw InputError("state was not explored");
  }
};

namespace detail {

template <NodeProgram P>
class Explorer {
 public:
  using Local = typename P::Local;

  Explorer(const P& prog, const Graph& g, const ExploreOptions& opt) : prog_(prog), g_(g), opt_(opt) {
    space_.domain_cap = opt.domain_cap;
  }

  /// Adds a seed state; returns its index.
  std::size_t seed(GlobalState<Local> s, bool from_domain) {
    const auto [it, inserted] = space_.index.try_emplace(s, space_.states.size());
    if (inserted) {
      if (space_.states.size() >= opt_.limit) {
        throw CapacityError("state space exceeds the limit of " + std::to_string(opt_.limit) + " states");
      }
      if (!from_domain) ++space_.outside_domain;
      space_.states.push_back(std::move(s));
    }
    return it->second;
  }

  /// Computes successors for every state, adding newly reached states.
  StateSpace<Local> close(bool count_outside) && {
    for (std::size_t k = 0; k < space_.states.size(); ++k) {
      std::vector<Transition> out;
      const auto actions = enabled_all(prog_, g_, space_.states[k]);
      for (NodeId i = 0; i < actions.size(); ++i) {
        if (!actions[i]) continue;
        GlobalState<Local> next = space_.states[k];
        next[i] = actions[i]->next;
        if (actions[i]->remote) next[actions[i]->remote->first] = actions[i]->remote->second;
        if (next == space_.states[k]) continue;
        const std::size_t to = seed(std::move(next), !count_outside);
        out.push_back({to, i});
      }
      space_.successors.push_back(std::move(out));
    }
    return std::move(space_);
  }

  StateSpace<Local>& space() { return space_; }

 private:
  const P& prog_;
  const Graph& g_;
  ExploreOptions opt_;
  StateSpace<Local> space_;
};

template <NodeProgram P>
std::vector<std::vector<typename P::Local>> domains(const P& prog, const Graph& g, const ExploreOptions& opt) {
  std::vector<std::vector<typename P::Local>> doms;
  long double product = 1;
  for (NodeId i = 0; i < g.node_count(); ++i) {
    doms.push_back(prog.domain(g, i, opt.domain_cap));
    product *= static_cast<long double>(doms.back().size());
  }
  if (product > static_cast<long double>(opt.limit)) {
    throw CapacityError("state space of " + std::to_string(static_cast<double>(product)) + " states exceeds limit " +
                        std::to_string(opt.limit));
  }
  return doms;
}

/// Calls f on every state of the product of per-node domains.
template <class Local, class F>
void for_each_product(const std::vector<std::vector<Local>>& doms, F&& f) {
  const std::size_t n = doms.size();
  std::vector<std::size_t> digit(n, 0);
  GlobalState<Local> s(n);
  for (std::size_t i = 0; i < n; ++i) s[i] = doms[i][0];
  for (;;) {
    f(s);
    std::size_t i = 0;
    while (i < n) {
      if (++digit[i] < doms[i].size()) {
        s[i] = doms[i][digit[i]];
        break;
      }
      digit[i] = 0;
      s[i] = doms[i][0];
      ++i;
    }
    if (i == n) return;
  }
}

}  // namespace detail

/// Every state in the product of the per-node domains, with all single-node
/// transitions (central daemon, fresh reads).
template <NodeProgram P>
StateSpace<typename P::Local> explore(const P& prog, const Graph& g, const ExploreOptions& opt = {}) {
  const auto doms = detail::domains(prog, g, opt);
  detail::Explorer<P> ex(prog, g, opt);
  detail::for_each_product(doms, [&](const auto& s) { ex.seed(s, true); });
  return std::move(ex).close(true);
}

/// States reachable from the given initial states.
template <NodeProgram P>
StateSpace<typename P::Local> explore_reachable(const P& prog, const Graph& g,
                                                const std::vector<GlobalState<typename P::Local>>& inits,
                                                const ExploreOptions& opt = {}) {
  detail::Explorer<P> ex(prog, g, opt);
  for (const auto& s : inits) {
    if (s.size() != g.node_count()) throw InputError("initial state length does not match graph");
    prog.validate(g, s);
    ex.seed(s, true);
  }
  auto space = std::move(ex).close(false);
  space.restricted = true;
  return space;
}

/// States of the product space satisfying `keep`, closed under transitions.
template <NodeProgram P, class Pred>
StateSpace<typename P::Local> explore_subset(const P& prog, const Graph& g, Pred keep, const ExploreOptions& opt = {}) {
  const auto doms = detail::domains(prog, g, opt);
  detail::Explorer<P> ex(prog, g, opt);
  detail::for_each_product(doms, [&](const auto& s) {
    if (keep(s)) ex.seed(s, true);
  });
  auto space = std::move(ex).close(true);
  space.restricted = true;
  return space;
}

struct LatticeClass {
  std::size_t supremum = 0;
  /// Unique member without an in-class predecessor, when there is one.
  std::optional<std::size_t> infimum;
  std::vector<std::size_t> members;
  bool supremum_optimal = false;
  /// Unset when the class was too large to check pairwise.
  std::optional<bool> meet_join_closed;
};

/// A node left local state `a` on the transition path[0] -> path[1] and got
/// `a` back at path.back().
struct RevisitWitness {
  std::size_t state = 0;
  NodeId node = 0;
  std::vector<std::size_t> path;
};

struct RankViolation {
  std::size_t from = 0;
  std::size_t to = 0;
  std::int64_t rank_from = 0;
  std::int64_t rank_to = 0;
};

template <class Local>
struct DaemonMismatch {
  std::size_t state = 0;
  GlobalState<Local> central_end;
  GlobalState<Local> synchronous_end;
};

struct VerifyOptions {
  /// Also run the engine with central and synchronous daemons from every
  /// state and compare endpoints.
  bool cross_check_daemons = true;
  std::uint64_t seed = 0;
  std::size_t max_witnesses = 16;
  /// Classes larger than this skip the pairwise meet/join check.
  std::size_t meet_join_limit = 256;
};

template <class Local>
struct LatticeReport {
  std::string algorithm;
  std::size_t explored = 0;
  bool restricted = false;
  std::optional<std::int64_t> domain_cap;

  std::vector<LatticeClass> classes;
  /// Classes each explored state belongs to.
  std::vector<std::vector<std::size_t>> class_of;

  bool disjoint = false;
  bool exhaustive = false;
  bool suprema_optimal = false;

  /// States that can reach a cycle.
  std::vector<std::size_t> divergent;
  /// States that can reach more than one endpoint.
  std::vector<std::size_t> ambiguous;
  std::vector<DaemonMismatch<Local>> daemon_mismatches;

  std::size_t revisit_count = 0;
  std::vector<RevisitWitness> revisit_violations;
  /// Set for programs whose raw local values may legitimately recur.
  bool revisits_allowed = false;
  std::size_t rank_violation_count = 0;
  std::vector<RankViolation> rank_violations;
  /// Transitions where a changed node's state value did not drop.
  std::size_t order_violation_count = 0;

  std::size_t w() const { return classes.size(); }

  bool meet_join_ok() const {
    for (const auto& c : classes)
      if (c.meet_join_closed && !*c.meet_join_closed) return false;
    return true;
  }

  bool ok() const {
    return disjoint && exhaustive && suprema_optimal && divergent.empty() && (revisits_allowed || revisit_count == 0) &&
           rank_violation_count == 0 && order_violation_count == 0 && meet_join_ok();
  }
};

/// Programs whose raw local values may recur along a run (GC may raise a
/// colour once and later come back down through it).
template <class P>
inline constexpr bool local_revisits_allowed = requires { requires P::kRevisitsAllowed; };

/// Programs whose lattice is defined by the problem predicate over the whole
/// state space, ordered by the raw local values.
template <class P>
inline constexpr bool predicate_lattice = requires { requires P::kPredicateLattice; };

namespace detail {

/// Tarjan's SCCs, iterative. Components come out sinks first.
inline std::vector<std::vector<std::size_t>> strongly_connected(const std::vector<std::vector<Transition>>& succ) {
  const std::size_t n = succ.size();
  constexpr std::size_t kUnset = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> index(n, kUnset), low(n, 0);
  std::vector<char> on_stack(n, 0);
  std::vector<std::size_t> stack;
  std::vector<std::vector<std::size_t>> comps;
  std::size_t counter = 0;
  struct Frame {
    std::size_t v;
    std::size_t next_edge;
  };
  for (std::size_t root = 0; root < n; ++root) {
    if (index[root] != kUnset) continue;
    std::vector<Frame> frames{{root, 0}};
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = 1;
    while (!frames.empty()) {
      auto& f = frames.back();
      if (f.next_edge < succ[f.v].size()) {
        const std::size_t w = succ[f.v][f.next_edge++].to;
        if (index[w] == kUnset) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = 1;
          frames.push_back({w, 0});
        } else if (on_stack[w]) {
          low[f.v] = std::min(low[f.v], index[w]);
        }
        continue;
      }
      const std::size_t v = f.v;
      if (low[v] == index[v]) {
        std::vector<std::size_t> comp;
        std::size_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = 0;
          comp.push_back(w);
        } while (w != v);
        comps.push_back(std::move(comp));
      }
      frames.pop_back();
      if (!frames.empty()) low[frames.back().v] = std::min(low[frames.back().v], low[v]);
    }
  }
  return comps;
}

template <class Local>
std::vector<std::size_t> path_to_value(const StateSpace<Local>& space, std::size_t from, NodeId node,
                                       const Local& value) {
  std::vector<std::size_t> parent(space.size(), std::numeric_limits<std::size_t>::max());
  std::deque<std::size_t> queue{from};
  parent[from] = from;
  while (!queue.empty()) {
    const auto u = queue.front();
    queue.pop_front();
    if (space.states[u][node] == value) {
      std::vector<std::size_t> path{u};
      while (path.back() != from) path.push_back(parent[path.back()]);
      std::reverse(path.begin(), path.end());
      return path;
    }
    for (const auto& t : space.successors[u]) {
      if (parent[t.to] != std::numeric_limits<std::size_t>::max()) continue;
      parent[t.to] = u;
      queue.push_back(t.to);
    }
  }
  return {};
}

/// Per class and node: local-value pairs (a, b) such that some in-class
/// transition moves the node from a to b.
template <class Local>
using StepOrder = std::vector<std::set<std::pair<Local, Local>>>;

template <class Local>
StepOrder<Local> class_step_order(const StateSpace<Local>& space, const std::vector<std::vector<std::size_t>>& class_of,
                                  std::size_t cls, std::size_t n) {
  StepOrder<Local> order(n);
  for (std::size_t s = 0; s < space.size(); ++s) {
    if (std::find(class_of[s].begin(), class_of[s].end(), cls) == class_of[s].end()) continue;
    for (const auto& t : space.successors[s]) {
      for (NodeId i = 0; i < n; ++i) {
        if (!(space.states[s][i] == space.states[t.to][i])) {
          order[i].insert({space.states[s][i], space.states[t.to][i]});
        }
      }
    }
  }
  return order;
}

/// -1: a below b, +1: a above b, 0: incomparable.
template <NodeProgram P>
int compare_local(const P& prog, const Graph& g, const StepOrder<typename P::Local>* order, NodeId i,
                  const GlobalState<typename P::Local>& s1, const GlobalState<typename P::Local>& s2) {
  const auto& a = s1[i];
  const auto& b = s2[i];
  if (a == b) return 0;
  if constexpr (predicate_lattice<P>) {
    return a < b ? -1 : 1;
  } else {
    if (order) {
      if ((*order)[i].contains({a, b})) return -1;
      if ((*order)[i].contains({b, a})) return 1;
    }
    const auto va = prog.state_value(g, i, s1);
    const auto vb = prog.state_value(g, i, s2);
    if (va > vb) return -1;
    if (va < vb) return 1;
    return 0;
  }
}

template <NodeProgram P>
std::optional<GlobalState<typename P::Local>> pointwise(const P& prog, const Graph& g,
                                                        const StepOrder<typename P::Local>* order,
                                                        const GlobalState<typename P::Local>& s1,
                                                        const GlobalState<typename P::Local>& s2, bool lower) {
  GlobalState<typename P::Local> out = s1;
  for (NodeId i = 0; i < s1.size(); ++i) {
    if (s1[i] == s2[i]) continue;
    const int c = compare_local(prog, g, order, i, s1, s2);
    if (c == 0) return std::nullopt;
    out[i] = (c < 0) == lower ? s1[i] : s2[i];
  }
  return out;
}

}  // namespace detail

/// Partitions the explored states by the endpoint(s) they can reach and
/// checks the lattice properties of each class.
template <NodeProgram P>
LatticeReport<typename P::Local> verify_partition(const StateSpace<typename P::Local>& space, const P& prog,
                                                  const Graph& g, const VerifyOptions& opt = {}) {
  using Local = typename P::Local;
  LatticeReport<Local> rep;
  rep.algorithm = std::string(prog.name());
  rep.explored = space.size();
  rep.restricted = space.restricted;
  rep.domain_cap = space.domain_cap;
  rep.revisits_allowed = local_revisits_allowed<P>;
  const std::size_t N = space.size();
  const std::size_t n = g.node_count();

  // Endpoints reachable from each state; SCCs arrive sinks first so every
  // successor is resolved before its predecessors.
  const auto comps = detail::strongly_connected(space.successors);
  std::vector<char> diverges(N, 0);
  std::vector<std::vector<std::size_t>> ends(N);
  for (const auto& comp : comps) {
    const bool cyclic = comp.size() > 1 || std::any_of(space.successors[comp[0]].begin(),
                                                       space.successors[comp[0]].end(),
                                                       [&](const Transition& t) { return t.to == comp[0]; });
    std::vector<std::size_t> merged;
    bool div = cyclic;
    for (std::size_t v : comp) {
      if (space.successors[v].empty()) merged.push_back(v);
      for (const auto& t : space.successors[v]) {
        if (std::find(comp.begin(), comp.end(), t.to) != comp.end()) continue;
        div = div || diverges[t.to];
        merged.insert(merged.end(), ends[t.to].begin(), ends[t.to].end());
      }
    }
    std::sort(merged.begin(), merged.end());
    merged.erase(std::unique(merged.begin(), merged.end()), merged.end());
    for (std::size_t v : comp) {
      ends[v] = merged;
      diverges[v] = div;
    }
  }

  std::map<std::size_t, std::size_t> class_index;
  for (std::size_t s = 0; s < N; ++s) {
    if (space.successors[s].empty()) {
      class_index.emplace(s, rep.classes.size());
      LatticeClass c;
      c.supremum = s;
      c.supremum_optimal = prog.optimal(g, space.states[s]);
      rep.classes.push_back(std::move(c));
    }
  }
  rep.class_of.assign(N, {});
  for (std::size_t s = 0; s < N; ++s) {
    for (std::size_t e : ends[s]) {
      const auto k = class_index.at(e);
      rep.class_of[s].push_back(k);
      rep.classes[k].members.push_back(s);
    }
    if (diverges[s]) rep.divergent.push_back(s);
    if (ends[s].size() > 1) rep.ambiguous.push_back(s);
  }

  if (opt.cross_check_daemons) {
    for (std::size_t s = 0; s < N; ++s) {
      if (diverges[s]) continue;
      RunOptions ro;
      ro.record_states = false;
      ro.seed = mix_seed(opt.seed, s);
      ro.daemon = Daemon::central;
      const auto central = run(prog, g, space.states[s], ro);
      ro.daemon = Daemon::synchronous;
      const auto sync = run(prog, g, space.states[s], ro);
      const auto c_end = space.find(central.final_state);
      const bool central_known =
          c_end && std::find(ends[s].begin(), ends[s].end(), *c_end) != ends[s].end();
      if (!central_known || !(central.final_state == sync.final_state)) {
        rep.daemon_mismatches.push_back({s, central.final_state, sync.final_state});
      }
    }
  }

  rep.suprema_optimal = std::all_of(rep.classes.begin(), rep.classes.end(),
                                    [](const LatticeClass& c) { return c.supremum_optimal; });
  rep.exhaustive = std::all_of(rep.class_of.begin(), rep.class_of.end(), [](const auto& v) { return !v.empty(); });
  rep.disjoint = rep.ambiguous.empty() && rep.daemon_mismatches.empty();

  // Infima: members with no in-class predecessor.
  {
    std::vector<std::vector<std::size_t>> has_pred_in(rep.classes.size());
    std::vector<std::set<std::size_t>> preds(rep.classes.size());
    for (std::size_t s = 0; s < N; ++s) {
      for (const auto& t : space.successors[s]) {
        for (std::size_t k : rep.class_of[t.to]) {
          if (std::find(rep.class_of[s].begin(), rep.class_of[s].end(), k) != rep.class_of[s].end()) {
            preds[k].insert(t.to);
          }
        }
      }
    }
    for (std::size_t k = 0; k < rep.classes.size(); ++k) {
      std::vector<std::size_t> minimal;
      for (std::size_t s : rep.classes[k].members)
        if (!preds[k].contains(s)) minimal.push_back(s);
      if (minimal.size() == 1) rep.classes[k].infimum = minimal[0];
    }
  }

  // Rank and per-node state-value descent along every transition.
  std::vector<std::int64_t> ranks(N);
  for (std::size_t s = 0; s < N; ++s) ranks[s] = rank(prog, g, space.states[s]);
  for (std::size_t s = 0; s < N; ++s) {
    for (const auto& t : space.successors[s]) {
      if (ranks[t.to] >= ranks[s]) {
        ++rep.rank_violation_count;
        if (rep.rank_violations.size() < opt.max_witnesses) {
          rep.rank_violations.push_back({s, t.to, ranks[s], ranks[t.to]});
        }
      }
      for (NodeId i = 0; i < n; ++i) {
        if (space.states[s][i] == space.states[t.to][i]) continue;
        if (prog.state_value(g, i, space.states[t.to]) >= prog.state_value(g, i, space.states[s])) {
          ++rep.order_violation_count;
        }
      }
    }
  }

  // Revisits: a transition moves node i off value a, and a state with i at
  // a is reachable afterwards.
  {
    std::vector<std::vector<std::size_t>> preds(N);
    for (std::size_t s = 0; s < N; ++s)
      for (const auto& t : space.successors[s]) preds[t.to].push_back(s);
    for (NodeId i = 0; i < n; ++i) {
      std::map<Local, std::vector<std::size_t>> by_value;
      for (std::size_t s = 0; s < N; ++s) by_value[space.states[s][i]].push_back(s);
      for (const auto& [value, holders] : by_value) {
        std::vector<char> can_reach(N, 0);
        std::deque<std::size_t> queue(holders.begin(), holders.end());
        for (auto h : holders) can_reach[h] = 1;
        while (!queue.empty()) {
          const auto u = queue.front();
          queue.pop_front();
          for (auto p : preds[u]) {
            if (!can_reach[p]) {
              can_reach[p] = 1;
              queue.push_back(p);
            }
          }
        }
        for (std::size_t s : holders) {
          for (const auto& t : space.successors[s]) {
            if (space.states[t.to][i] == value || !can_reach[t.to]) continue;
            ++rep.revisit_count;
            if (rep.revisit_violations.size() < opt.max_witnesses) {
              auto tail = detail::path_to_value(space, t.to, i, value);
              std::vector<std::size_t> path{s};
              path.insert(path.end(), tail.begin(), tail.end());
              rep.revisit_violations.push_back({s, i, std::move(path)});
            }
          }
        }
      }
    }
  }

  // Closure of each class under pointwise meet and join.
  for (std::size_t k = 0; k < rep.classes.size(); ++k) {
    auto& c = rep.classes[k];
    if (c.members.size() > opt.meet_join_limit) continue;
    const auto order = detail::class_step_order(space, rep.class_of, k, n);
    bool closed = true;
    for (std::size_t a = 0; a < c.members.size() && closed; ++a) {
      for (std::size_t b = a + 1; b < c.members.size() && closed; ++b) {
        const auto& s1 = space.states[c.members[a]];
        const auto& s2 = space.states[c.members[b]];
        for (bool lower : {true, false}) {
          const auto r = detail::pointwise(prog, g, &order, s1, s2, lower);
          if (!r) {
            closed = false;
            break;
          }
          const auto idx = space.find(*r);
          if (!idx || std::find(rep.class_of[*idx].begin(), rep.class_of[*idx].end(), k) == rep.class_of[*idx].end()) {
            closed = false;
            break;
          }
        }
      }
    }
    c.meet_join_closed = closed;
  }
  return rep;
}

namespace detail {

template <NodeProgram P>
std::optional<std::size_t> shared_class(const StateSpace<typename P::Local>& space,
                                        const LatticeReport<typename P::Local>& rep,
                                        const GlobalState<typename P::Local>& s1,
                                        const GlobalState<typename P::Local>& s2) {
  const auto a = space.find(s1);
  const auto b = space.find(s2);
  if (!a || !b) throw InputError("meet/join of an unexplored state");
  if constexpr (predicate_lattice<P>) return std::nullopt;
  if (rep.class_of[*a].size() != 1 || rep.class_of[*b].size() != 1 || rep.class_of[*a][0] != rep.class_of[*b][0]) {
    throw InputError("meet/join of states from different classes");
  }
  return rep.class_of[*a][0];
}

template <NodeProgram P>
GlobalState<typename P::Local> meet_or_join(const StateSpace<typename P::Local>& space,
                                            const LatticeReport<typename P::Local>& rep, const P& prog,
                                            const Graph& g, const GlobalState<typename P::Local>& s1,
                                            const GlobalState<typename P::Local>& s2, bool lower) {
  const auto cls = shared_class<P>(space, rep, s1, s2);
  std::optional<StepOrder<typename P::Local>> order;
  if (cls) order = class_step_order(space, rep.class_of, *cls, g.node_count());
  auto r = pointwise(prog, g, order ? &*order : nullptr, s1, s2, lower);
  if (!r) throw InputError("local states are incomparable in this class");
  return *r;
}

}  // namespace detail

/// Pointwise minimum under the class's per-node order. Both states must lie
/// in the same class, except for predicate-defined lattices.
template <NodeProgram P>
GlobalState<typename P::Local> meet(const StateSpace<typename P::Local>& space,
                                    const LatticeReport<typename P::Local>& rep, const P& prog, const Graph& g,
                                    const GlobalState<typename P::Local>& s1,
                                    const GlobalState<typename P::Local>& s2) {
  return detail::meet_or_join(space, rep, prog, g, s1, s2, true);
}

/// Pointwise maximum; see meet.
template <NodeProgram P>
GlobalState<typename P::Local> join(const StateSpace<typename P::Local>& space,
                                    const LatticeReport<typename P::Local>& rep, const P& prog, const Graph& g,
                                    const GlobalState<typename P::Local>& s1,
                                    const GlobalState<typename P::Local>& s2) {
  return detail::meet_or_join(space, rep, prog, g, s1, s2, false);
}

/// Brute-force impedensability: s is not optimal, and no state reachable
/// from s that keeps node i's local state is optimal.
template <NodeProgram P>
bool impedensable(NodeId i, const GlobalState<typename P::Local>& s, const StateSpace<typename P::Local>& space,
                  const P& prog, const Graph& g) {
  const auto start = space.find(s);
  if (!start) throw InputError("impedensable: state was not explored");
  if (i >= g.node_count()) throw InputError("impedensable: invalid node id");
  if (prog.optimal(g, s)) return false;
  std::vector<char> seen(space.size(), 0);
  std::deque<std::size_t> queue;
  for (const auto& t : space.successors[*start]) {
    if (!seen[t.to]) {
      seen[t.to] = 1;
      queue.push_back(t.to);
    }
  }
  while (!queue.empty()) {
    const auto u = queue.front();
    queue.pop_front();
    const auto& su = space.states[u];
    if (su[i] == s[i] && prog.optimal(g, su)) return false;
    for (const auto& t : space.successors[u]) {
      if (!seen[t.to]) {
        seen[t.to] = 1;
        queue.push_back(t.to);
      }
    }
  }
  return true;
}

/// In-class transitions with transitive edges removed.
template <class Local>
std::vector<std::pair<std::size_t, std::size_t>> hasse_edges(const StateSpace<Local>& space,
                                                             const LatticeReport<Local>& rep, std::size_t cls) {
  const auto& members = rep.classes.at(cls).members;
  std::set<std::size_t> in_class(members.begin(), members.end());
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t u : members) {
    std::set<std::size_t> direct;
    for (const auto& t : space.successors[u])
      if (in_class.contains(t.to)) direct.insert(t.to);
    for (std::size_t v : direct) {
      // Transitive when v is reachable through another direct successor.
      bool transitive = false;
      for (std::size_t w : direct) {
        if (w == v || transitive) continue;
        std::set<std::size_t> seen{w};
        std::deque<std::size_t> queue{w};
        while (!queue.empty() && !transitive) {
          const auto x = queue.front();
          queue.pop_front();
          for (const auto& t : space.successors[x]) {
            if (!in_class.contains(t.to) || seen.contains(t.to)) continue;
            if (t.to == v) transitive = true;
            seen.insert(t.to);
            queue.push_back(t.to);
          }
        }
      }
      if (!transitive) out.emplace_back(u, v);
    }
  }
  return out;
}

}  // namespace llsim
