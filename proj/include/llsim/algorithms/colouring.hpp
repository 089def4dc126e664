#pragma once

#include <charconv>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "llsim/errors.hpp"
#include "llsim/graph.hpp"
#include "llsim/program.hpp"

namespace llsim {

/// Colours are positive integers; 1 is the smallest.
struct Colour {
  std::int32_t value = 1;
  auto operator<=>(const Colour&) const = default;
};

namespace gc {

/// Smallest colour >= 1 used by no neighbour. Never exceeds deg(i) + 1.
template <class View>
std::int32_t smallest_free(const Graph& g, NodeId i, const View& v) {
  const auto adj = g.adjacency(i);
  std::vector<char> taken(adj.size() + 2, 0);
  for (NodeId j : adj) {
    const auto c = v[j].value;
    if (c >= 1 && static_cast<std::size_t>(c) < taken.size()) taken[static_cast<std::size_t>(c)] = 1;
  }
  std::int32_t c = 1;
  while (taken[static_cast<std::size_t>(c)]) ++c;
  return c;
}

template <class View>
bool conflicted(const Graph& g, NodeId i, const View& v) {
  for (NodeId j : g.adjacency(i))
    if (v[j] == v[i]) return true;
  return false;
}

template <class View>
bool reducible(const Graph& g, NodeId i, const View& v) {
  return smallest_free(g, i, v) < v[i].value;
}

template <class View>
bool unsatisfied(const Graph& g, NodeId i, const View& v) {
  return conflicted(g, i, v) || reducible(g, i, v);
}

}  // namespace gc

/// Lattice-linear graph colouring. Only the highest-id unsatisfied node in
/// the whole graph may move; it takes the smallest colour absent from its
/// neighbours.
class GcProgram {
 public:
  using Local = Colour;
  /// A first move may raise the colour; later moves only lower it.
  static constexpr bool kRevisitsAllowed = true;

  GcProgram() = default;
  /// Bounds the colours accepted in an initial state and the default
  /// enumeration domain.
  explicit GcProgram(std::int32_t max_init_colour) : max_init_colour_(max_init_colour) {
    if (max_init_colour < 1) throw InputError("max_init_colour must be positive");
  }

  std::optional<std::int32_t> max_init_colour() const { return max_init_colour_; }

  std::string_view name() const { return "gc"; }
  /// The impedensability test quantifies over every node of the graph.
  std::size_t view_radius() const { return kUnboundedHops; }

  template <class View>
  std::optional<Action<Colour>> enabled(const Graph& g, NodeId i, const View& v) const {
    if (!gc::unsatisfied(g, i, v)) return std::nullopt;
    for (NodeId j = static_cast<NodeId>(g.node_count()); j-- > i + 1;)
      if (gc::unsatisfied(g, j, v)) return std::nullopt;
    return Action<Colour>{Colour{gc::smallest_free(g, i, v)}, std::nullopt};
  }

  std::vector<std::optional<Action<Colour>>> enabled_all(const Graph& g, const GlobalState<Colour>& s) const {
    std::vector<std::optional<Action<Colour>>> out(s.size());
    for (NodeId j = static_cast<NodeId>(s.size()); j-- > 0;) {
      if (gc::unsatisfied(g, j, s)) {
        out[j] = Action<Colour>{Colour{gc::smallest_free(g, j, s)}, std::nullopt};
        break;
      }
    }
    return out;
  }

  /// Proper and irreducible.
  bool optimal(const Graph& g, const GlobalState<Colour>& s) const {
    for (NodeId i = 0; i < s.size(); ++i)
      if (gc::unsatisfied(g, i, s)) return false;
    return true;
  }

  /// deg(i) + 2 while unsatisfied, otherwise the colour itself.
  std::int64_t state_value(const Graph& g, NodeId i, const GlobalState<Colour>& s) const {
    return gc::unsatisfied(g, i, s) ? static_cast<std::int64_t>(g.degree(i)) + 2 : s[i].value;
  }

  /// Node i moves through at most deg(i) + 2 state values: n + 2m in total.
  MoveBudget budget(const Graph& g) const {
    std::vector<std::int64_t> sizes(g.node_count());
    for (NodeId i = 0; i < g.node_count(); ++i) sizes[i] = static_cast<std::int64_t>(g.degree(i)) + 2;
    return MoveBudget::per_node(std::move(sizes));
  }

  /// Colours 1..cap. The default cap is max_init_colour when set, otherwise
  /// Delta + 2, which holds every recolouring target.
  std::vector<Colour> domain(const Graph& g, NodeId, std::optional<std::int64_t> cap) const {
    const auto top = cap.value_or(max_init_colour_.value_or(static_cast<std::int32_t>(g.max_degree()) + 2));
    std::vector<Colour> out;
    for (std::int32_t c = 1; c <= top; ++c) out.push_back(Colour{c});
    return out;
  }

  void validate(const Graph&, const GlobalState<Colour>& s) const {
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (s[i].value < 1) throw InputError("node " + std::to_string(i) + " has colour < 1");
      if (max_init_colour_ && s[i].value > *max_init_colour_) {
        throw InputError("node " + std::to_string(i) + " has colour above " + std::to_string(*max_init_colour_));
      }
    }
  }

  GlobalState<Colour> fixed_init(const Graph& g) const { return GlobalState<Colour>(g.node_count(), Colour{1}); }
  std::string format(Colour c) const { return std::to_string(c.value); }
  Colour parse(std::string_view s) const {
    std::int32_t v = 0;
    const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size()) throw InputError("bad colour '" + std::string(s) + "'");
    return Colour{v};
  }

 private:
  std::optional<std::int32_t> max_init_colour_;
};

}  // namespace llsim
