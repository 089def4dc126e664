#pragma once

#include <concepts>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "llsim/errors.hpp"
#include "llsim/graph.hpp"
#include "llsim/random.hpp"

namespace llsim {

/// A global state: one local state per node, indexed by node id.
template <class Local>
using GlobalState = std::vector<Local>;

/// What an enabled node will do. `next` is the node's own new local state,
/// computed from the view it evaluated its guard on. `remote` is set only by
/// programs that also overwrite one neighbour in the same atomic action.
template <class Local>
struct Action {
  Local next;
  std::optional<std::pair<NodeId, Local>> remote;
};

/// Upper bound on moves to convergence for a lattice-traversing program.
struct MoveBudget {
  std::size_t n = 0;
  /// Effective local-domain size per node (or per variable, for the
  /// multivariable form).
  std::vector<std::int64_t> domain_sizes;
  std::int64_t budget = 0;

  /// n nodes sharing a domain of size m: n * (m - 1).
  static MoveBudget single(std::size_t n, std::int64_t m) {
    return {n, std::vector<std::int64_t>(n, m), static_cast<std::int64_t>(n) * (m - 1)};
  }

  /// Per-node domain sizes m_i: sum of (m_i - 1).
  static MoveBudget per_node(std::vector<std::int64_t> sizes) {
    std::int64_t total = 0;
    for (auto m : sizes) total += m - 1;
    const auto n = sizes.size();
    return {n, std::move(sizes), total};
  }

  /// Each node carries r ordering variables with domain sizes m'_1..m'_r:
  /// n * (prod m'_j - 1).
  static MoveBudget multivariable(std::size_t n, std::vector<std::int64_t> variable_sizes) {
    const std::int64_t product =
        std::accumulate(variable_sizes.begin(), variable_sizes.end(), std::int64_t{1}, std::multiplies<>{});
    return {n, std::move(variable_sizes), static_cast<std::int64_t>(n) * (product - 1)};
  }
};

/// Guarded-command node program. `enabled` is a template over the view type
/// so the same guard runs on a fresh GlobalState or a stale per-reader view;
/// the concept checks it against a GlobalState.
template <class P>
concept NodeProgram = requires(const P& p, const Graph& g, NodeId i, const GlobalState<typename P::Local>& s,
                               const typename P::Local& local, std::string_view text, Rng& rng) {
  typename P::Local;
  { p.name() } -> std::convertible_to<std::string_view>;
  { p.view_radius() } -> std::convertible_to<std::size_t>;
  { p.enabled(g, i, s) } -> std::same_as<std::optional<Action<typename P::Local>>>;
  { p.optimal(g, s) } -> std::same_as<bool>;
  { p.state_value(g, i, s) } -> std::convertible_to<std::int64_t>;
  { p.budget(g) } -> std::same_as<MoveBudget>;
  { p.domain(g, i, std::optional<std::int64_t>{}) } -> std::same_as<std::vector<typename P::Local>>;
  { p.validate(g, s) };
  { p.fixed_init(g) } -> std::same_as<GlobalState<typename P::Local>>;
  { p.format(local) } -> std::convertible_to<std::string>;
  { p.parse(text) } -> std::same_as<typename P::Local>;
};

/// Programs whose runs can end without converging (SMP's exhausted man).
template <class P>
concept HaltingProgram = NodeProgram<P> && requires(const P& p, const GlobalState<typename P::Local>& s) {
  { p.halted(s) } -> std::convertible_to<std::optional<NodeId>>;
};

/// Programs offering a batched fresh-read guard evaluation.
template <class P>
concept BatchProgram = NodeProgram<P> && requires(const P& p, const Graph& g, const GlobalState<typename P::Local>& s) {
  { p.enabled_all(g, s) } -> std::same_as<std::vector<std::optional<Action<typename P::Local>>>>;
};

/// True for programs whose action writes a neighbour's variables.
template <class P>
inline constexpr bool writes_neighbours = requires { requires P::kWritesNeighbour; };

template <NodeProgram P>
std::optional<NodeId> halted_node(const P& prog, const GlobalState<typename P::Local>& s) {
  if constexpr (HaltingProgram<P>) {
    return prog.halted(s);
  } else {
    (void)prog;
    (void)s;
    return std::nullopt;
  }
}

/// Fresh-read enabled set.
template <NodeProgram P>
std::vector<std::optional<Action<typename P::Local>>> enabled_all(const P& prog, const Graph& g,
                                                                  const GlobalState<typename P::Local>& s) {
  if (halted_node(prog, s)) return std::vector<std::optional<Action<typename P::Local>>>(s.size());
  if constexpr (BatchProgram<P>) {
    return prog.enabled_all(g, s);
  } else {
    std::vector<std::optional<Action<typename P::Local>>> out(s.size());
    for (NodeId i = 0; i < s.size(); ++i) out[i] = prog.enabled(g, i, s);
    return out;
  }
}

/// Sum of per-node state values: the potential that orders global states.
template <NodeProgram P>
std::int64_t rank(const P& prog, const Graph& g, const GlobalState<typename P::Local>& s) {
  std::int64_t total = 0;
  for (NodeId i = 0; i < s.size(); ++i) total += prog.state_value(g, i, s);
  return total;
}

/// Uniform draw from each node's domain.
template <NodeProgram P>
GlobalState<typename P::Local> random_init(const P& prog, const Graph& g, Rng& rng,
                                           std::optional<std::int64_t> cap = std::nullopt) {
  GlobalState<typename P::Local> s;
  s.reserve(g.node_count());
  for (NodeId i = 0; i < g.node_count(); ++i) {
    const auto dom = prog.domain(g, i, cap);
    s.push_back(dom[uniform_below(rng, dom.size())]);
  }
  return s;
}

template <NodeProgram P>
std::string format_state(const P& prog, const GlobalState<typename P::Local>& s) {
  std::string out = "<";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ',';
    out += prog.format(s[i]);
  }
  return out + ">";
}

/// Parses a comma-separated state, e.g. "IN,OUT,IN,OUT" or "1,2,2".
template <NodeProgram P>
GlobalState<typename P::Local> parse_state(const P& prog, std::string_view text) {
  GlobalState<typename P::Local> s;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const auto end = comma == std::string_view::npos ? text.size() : comma;
    auto tok = text.substr(start, end - start);
    while (!tok.empty() && tok.front() == ' ') tok.remove_prefix(1);
    while (!tok.empty() && tok.back() == ' ') tok.remove_suffix(1);
    s.push_back(prog.parse(tok));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return s;
}

}  // namespace llsim
