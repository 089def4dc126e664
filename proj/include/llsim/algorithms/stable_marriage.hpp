#pragma once

#include <algorithm>
#include <charconv>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "llsim/errors.hpp"
#include "llsim/graph.hpp"
#include "llsim/program.hpp"
#include "llsim/random.hpp"

namespace llsim {

/// Men's preference lists and women's rankings. Indices are 0-based;
/// women_rank[w][m] is the position of man m in woman w's list (lower is
/// preferred).
struct SmpInstance {
  std::size_t n_men = 0;
  std::size_t n_women = 0;
  std::vector<std::vector<std::size_t>> men_pref;
  std::vector<std::vector<std::size_t>> women_rank;

  /// Builds from the women's ordered preference lists.
  static SmpInstance from_lists(std::vector<std::vector<std::size_t>> men_pref,
                                const std::vector<std::vector<std::size_t>>& women_pref) {
    SmpInstance inst;
    inst.n_men = men_pref.size();
    inst.n_women = women_pref.size();
    if (inst.n_men == 0 || inst.n_women == 0) throw InputError("SMP instance needs at least one man and one woman");
    auto check_perm = [](const std::vector<std::size_t>& list, std::size_t size, const std::string& who) {
      if (list.size() != size) throw InputError(who + " preference list has wrong length");
      std::vector<char> seen(size, 0);
      for (auto x : list) {
        if (x >= size || seen[x]) throw InputError(who + " preference list is not a permutation");
        seen[x] = 1;
      }
    };
    for (std::size_t m = 0; m < inst.n_men; ++m) check_perm(men_pref[m], inst.n_women, "man " + std::to_string(m));
    inst.women_rank.assign(inst.n_women, std::vector<std::size_t>(inst.n_men));
    for (std::size_t w = 0; w < inst.n_women; ++w) {
      check_perm(women_pref[w], inst.n_men, "woman " + std::to_string(w));
      for (std::size_t r = 0; r < inst.n_men; ++r) inst.women_rank[w][women_pref[w][r]] = r;
    }
    inst.men_pref = std::move(men_pref);
    return inst;
  }

  /// JSON {"men_pref": [[w..]..], "women_pref": [[m..]..]}.
  static SmpInstance from_json(const nlohmann::json& j) {
    try {
      return from_lists(j.at("men_pref").get<std::vector<std::vector<std::size_t>>>(),
                        j.at("women_pref").get<std::vector<std::vector<std::size_t>>>());
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(0, std::string("SMP instance: ") + e.what());
    }
  }
};

/// Uniformly random complete preference lists.
inline SmpInstance random_smp_instance(std::size_t n_men, std::size_t n_women, std::uint64_t seed) {
  Rng rng(seed);
  auto perm = [&](std::size_t size) {
    std::vector<std::size_t> p(size);
    for (std::size_t k = 0; k < size; ++k) p[k] = k;
    for (std::size_t k = size; k > 1; --k) std::swap(p[k - 1], p[uniform_below(rng, k)]);
    return p;
  };
  std::vector<std::vector<std::size_t>> men, women;
  for (std::size_t m = 0; m < n_men; ++m) men.push_back(perm(n_women));
  for (std::size_t w = 0; w < n_women; ++w) women.push_back(perm(n_men));
  return SmpInstance::from_lists(std::move(men), women);
}

/// Rank (1-based) in the man's preference list of the woman he proposes to.
/// n_women + 1 marks a man whose choices are exhausted.
struct Proposal {
  std::int32_t rank = 1;
  auto operator<=>(const Proposal&) const = default;
};

/// Men as nodes of a complete graph.
inline Graph smp_graph(const SmpInstance& inst) { return complete_graph(inst.n_men); }

/// Stable marriage as a lattice-linear predicate: a man moves to his next
/// choice when another man proposes to the same woman and she prefers him.
class SmpProgram {
 public:
  using Local = Proposal;
  static constexpr bool kPredicateLattice = true;

  explicit SmpProgram(SmpInstance inst) : inst_(std::move(inst)) {}

  const SmpInstance& instance() const { return inst_; }
  std::int32_t exhausted() const { return static_cast<std::int32_t>(inst_.n_women) + 1; }

  std::string_view name() const { return "smp"; }
  std::size_t view_radius() const { return kUnboundedHops; }

  std::size_t woman_of(std::size_t man, Proposal p) const {
    return inst_.men_pref[man][static_cast<std::size_t>(p.rank - 1)];
  }

  template <class View>
  std::optional<Action<Proposal>> enabled(const Graph&, NodeId m, const View& v) const {
    if (v[m].rank >= exhausted()) return std::nullopt;
    const auto w = woman_of(m, v[m]);
    for (NodeId other = 0; other < inst_.n_men; ++other) {
      if (other == m) continue;
      const auto p = v[other];
      if (p.rank < 1 || p.rank >= exhausted()) continue;
      if (woman_of(other, p) == w && inst_.women_rank[w][other] < inst_.women_rank[w][m]) {
        return Action<Proposal>{Proposal{v[m].rank + 1}, std::nullopt};
      }
    }
    return std::nullopt;
  }

  /// First man whose list ran out.
  std::optional<NodeId> halted(const GlobalState<Proposal>& s) const {
    for (NodeId m = 0; m < s.size(); ++m)
      if (s[m].rank >= exhausted()) return m;
    return std::nullopt;
  }

  /// No two men propose to the same woman.
  bool optimal(const Graph&, const GlobalState<Proposal>& s) const {
    if (halted(s)) return false;
    std::vector<char> taken(inst_.n_women, 0);
    for (std::size_t m = 0; m < s.size(); ++m) {
      const auto w = woman_of(m, s[m]);
      if (taken[w]) return false;
      taken[w] = 1;
    }
    return true;
  }

  /// Choices left; decreases by one per move.
  std::int64_t state_value(const Graph&, NodeId m, const GlobalState<Proposal>& s) const {
    return exhausted() - s[m].rank;
  }

  MoveBudget budget(const Graph&) const {
    return MoveBudget::single(inst_.n_men, static_cast<std::int64_t>(inst_.n_women));
  }

  /// Starting choices; the exhausted marker is only reached by moving.
  std::vector<Proposal> domain(const Graph&, NodeId, std::optional<std::int64_t>) const {
    std::vector<Proposal> out;
    for (std::int32_t r = 1; r < exhausted(); ++r) out.push_back({r});
    return out;
  }

  void validate(const Graph& g, const GlobalState<Proposal>& s) const {
    if (g.node_count() != inst_.n_men) throw InputError("SMP graph must have one node per man");
    for (std::size_t m = 0; m < s.size(); ++m) {
      if (s[m].rank < 1 || s[m].rank > exhausted()) {
        throw InputError("man " + std::to_string(m) + " has rank outside 1.." + std::to_string(inst_.n_women));
      }
    }
  }

  /// Every man starts with his first choice.
  GlobalState<Proposal> fixed_init(const Graph&) const { return GlobalState<Proposal>(inst_.n_men, Proposal{1}); }

  std::string format(Proposal p) const { return p.rank >= exhausted() ? "exhausted" : std::to_string(p.rank); }
  Proposal parse(std::string_view s) const {
    if (s == "exhausted") return {exhausted()};
    std::int32_t r = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), r);
    if (ec != std::errc{} || ptr != s.data() + s.size()) throw InputError("bad proposal rank '" + std::string(s) + "'");
    return {r};
  }

 private:
  SmpInstance inst_;
};

}  // namespace llsim
