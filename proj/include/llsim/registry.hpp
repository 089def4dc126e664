#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>

#include "llsim/algorithms/colouring.hpp"
#include "llsim/algorithms/dominating_set.hpp"
#include "llsim/algorithms/stable_marriage.hpp"
#include "llsim/algorithms/vertex_cover.hpp"
#include "llsim/errors.hpp"

namespace llsim {

inline constexpr std::array<std::string_view, 7> kAlgorithms{"mds", "mds-ell", "gc", "vc", "vc-dist", "smp",
                                                             "naive-vc"};

struct ProgramArgs {
  std::optional<SmpInstance> smp;
  std::optional<std::int32_t> max_init_colour;
};

/// Calls f with the program registered under `name`.
template <class F>
decltype(auto) dispatch(std::string_view name, const ProgramArgs& args, F&& f) {
  if (name == "mds") return f(MdsProgram{});
  if (name == "mds-ell") return f(MdsEventuallyProgram{});
  if (name == "gc") return args.max_init_colour ? f(GcProgram(*args.max_init_colour)) : f(GcProgram{});
  if (name == "vc") return f(VcProgram{});
  if (name == "vc-dist") return f(VcDistributedProgram{});
  if (name == "naive-vc") return f(NaiveVcProgram{});
  if (name == "smp") {
    if (!args.smp) throw InputError("smp needs an instance file");
    return f(SmpProgram(*args.smp));
  }
  throw InputError("unknown algorithm '" + std::string(name) + "'");
}

namespace detail {

template <class Local>
std::string member_list(const GlobalState<Local>& s, auto&& in) {
  std::string out = "{";
  bool first = true;
  for (NodeId i = 0; i < s.size(); ++i) {
    if (!in(s[i])) continue;
    if (!first) out += ',';
    out += std::to_string(i);
    first = false;
  }
  return out + "}";
}

}  // namespace detail

/// The problem's feasibility predicate: a dominating set, a proper
/// colouring, a vertex cover, or a matching.
template <NodeProgram P>
bool feasible(const P& prog, const Graph& g, const GlobalState<typename P::Local>& s) {
  using Local = typename P::Local;
  if constexpr (std::is_same_v<P, NaiveVcProgram>) {
    for (const auto& e : g.edges())
      if (s[e.u] != Member::in && s[e.v] != Member::in) return false;
    return true;
  } else if constexpr (std::is_same_v<Local, Member>) {
    return ds::dominates(g, s);
  } else if constexpr (std::is_same_v<Local, Colour>) {
    for (NodeId i = 0; i < s.size(); ++i)
      if (gc::conflicted(g, i, s)) return false;
    return true;
  } else if constexpr (std::is_same_v<Local, Proposal>) {
    return prog.optimal(g, s);
  } else {
    return vc::covers(g, s);
  }
}

/// One-line description of a final state.
template <NodeProgram P>
std::string summarize(const P& prog, const Graph&, const GlobalState<typename P::Local>& s) {
  using Local = typename P::Local;
  if constexpr (std::is_same_v<Local, Member>) {
    const auto set = detail::member_list(s, [](Member m) { return m == Member::in; });
    const auto size = std::count(s.begin(), s.end(), Member::in);
    const char* label = std::is_same_v<P, NaiveVcProgram> ? "|VC|=" : "|DS|=";
    return label + std::to_string(size) + " " + set;
  } else if constexpr (std::is_same_v<Local, Colour>) {
    std::vector<std::int32_t> used;
    for (const auto& c : s) used.push_back(c.value);
    std::sort(used.begin(), used.end());
    used.erase(std::unique(used.begin(), used.end()), used.end());
    return "colours=" + std::to_string(used.size()) + " " + format_state(prog, s);
  } else if constexpr (std::is_same_v<Local, Proposal>) {
    std::string out = "matching";
    for (NodeId m = 0; m < s.size(); ++m) {
      out += " " + std::to_string(m) + "->";
      out += s[m].rank >= prog.exhausted() ? "none" : std::to_string(prog.woman_of(m, s[m]));
    }
    return out;
  } else {
    const auto set = detail::member_list(s, [](const auto& x) { return x.st == Member::in; });
    return "|VC|=" + std::to_string(vc::cover_size(s)) + " " + set;
  }
}

}  // namespace llsim
