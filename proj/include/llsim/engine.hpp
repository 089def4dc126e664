#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "llsim/errors.hpp"
#include "llsim/graph.hpp"
#include "llsim/program.hpp"
#include "llsim/random.hpp"

namespace llsim {

enum class Daemon { central, distributed, synchronous };

inline std::string_view to_string(Daemon d) {
  switch (d) {
    case Daemon::central: return "central";
    case Daemon::distributed: return "distributed";
    case Daemon::synchronous: return "synchronous";
  }
  return "?";
}

inline Daemon parse_daemon(std::string_view s) {
  if (s == "central") return Daemon::central;
  if (s == "distributed") return Daemon::distributed;
  if (s == "synchronous") return Daemon::synchronous;
  throw InputError("unknown daemon '" + std::string(s) + "'");
}

/// How guards read neighbour state. `amr` is asynchrony with monotonic reads:
/// a reader may see a neighbour value up to `lag` publications old, but never
/// older than what it saw before.
struct ReadModel {
  enum class Kind { fresh, amr };
  Kind kind = Kind::fresh;
  std::size_t lag = 0;
  /// When set, a node's read cursors jump to the latest publications right
  /// after it acts.
  bool refresh_on_act = false;

  static ReadModel fresh() { return {}; }
  static ReadModel amr(std::size_t lag, bool refresh_on_act = false) { return {Kind::amr, lag, refresh_on_act}; }

  std::string label() const { return kind == Kind::fresh ? "fresh" : "amr"; }
};

enum class Outcome { converged, no_solution, move_limit };

inline std::string_view to_string(Outcome o) {
  switch (o) {
    case Outcome::converged: return "converged";
    case Outcome::no_solution: return "no_solution";
    case Outcome::move_limit: return "move_limit";
  }
  return "?";
}

template <class Local>
struct Step {
  /// State after the step; empty when the run was not recording states.
  GlobalState<Local> state;
  std::vector<NodeId> moved;
};

template <class Local>
struct ExecutionTrace {
  GlobalState<Local> initial;
  std::vector<Step<Local>> steps;
  std::int64_t total_moves = 0;
  std::vector<std::int64_t> per_node_moves;
  Outcome outcome = Outcome::converged;
  bool converged = false;
  GlobalState<Local> final_state;
  /// Node whose choices ran out, for programs that can halt without a solution.
  std::optional<NodeId> exhausted_node;
  std::int64_t max_moves = 0;
};

struct RunOptions {
  Daemon daemon = Daemon::central;
  ReadModel read = ReadModel::fresh();
  std::uint64_t seed = 0;
  /// Defaults to 4 x the program's move budget.
  std::optional<std::int64_t> max_moves;
  bool record_states = true;
};

namespace detail {

/// Per-node publication histories plus per-(reader, subject) read cursors.
/// Cursors are stored sparsely; a reader that refreshed at time t implicitly
/// has every cursor at the newest publication made at or before t.
template <class Local>
class AmrMemory {
 public:
  AmrMemory(const GlobalState<Local>& init, std::size_t lag, Rng& rng)
      : lag_(lag), rng_(rng), times_(init.size()), values_(init.size()), cursors_(init.size()),
        refreshed_at_(init.size(), 0), stamp_(init.size(), 0), memo_(init.size(), 0) {
    for (std::size_t j = 0; j < init.size(); ++j) {
      times_[j].push_back(0);
      values_[j].push_back(init[j]);
    }
  }

  class View {
   public:
    View(AmrMemory& mem, NodeId reader) : mem_(&mem), reader_(reader) {}
    const Local& operator[](NodeId j) const { return mem_->read(reader_, j); }
    std::size_t size() const { return mem_->values_.size(); }

   private:
    AmrMemory* mem_;
    NodeId reader_;
  };

  /// Starts a fresh snapshot for `reader`: repeated reads of one subject
  /// within the snapshot return the same value.
  View view(NodeId reader) {
    ++epoch_;
    return View(*this, reader);
  }

  void publish(NodeId j, const Local& value) {
    ++clock_;
    times_[j].push_back(clock_);
    values_[j].push_back(value);
  }

  void refresh(NodeId reader) {
    cursors_[reader].clear();
    refreshed_at_[reader] = clock_;
  }

 private:
  std::size_t default_cursor(NodeId reader, NodeId j) const {
    const auto& t = times_[j];
    const auto it = std::upper_bound(t.begin(), t.end(), refreshed_at_[reader]);
    return static_cast<std::size_t>(it - t.begin()) - 1;
  }

  const Local& read(NodeId reader, NodeId j) {
    const std::size_t latest = values_[j].size() - 1;
    if (j == reader) return values_[j][latest];
    if (stamp_[j] == epoch_) return values_[j][memo_[j]];
    auto& cursors = cursors_[reader];
    auto it = cursors.find(j);
    const std::size_t cursor = it == cursors.end() ? default_cursor(reader, j) : it->second;
    const std::size_t oldest_allowed = latest > lag_ ? latest - lag_ : 0;
    const std::size_t low = std::max(cursor, oldest_allowed);
    const std::size_t idx =
        low == latest ? latest : static_cast<std::size_t>(uniform_between(rng_, static_cast<std::int64_t>(low),
                                                                          static_cast<std::int64_t>(latest)));
    cursors[j] = idx;
    stamp_[j] = epoch_;
    memo_[j] = idx;
    return values_[j][idx];
  }

  std::size_t lag_;
  Rng& rng_;
  std::uint64_t clock_ = 0;
  std::uint64_t epoch_ = 0;
  std::vector<std::vector<std::uint64_t>> times_;
  std::vector<std::vector<Local>> values_;
  std::vector<std::unordered_map<NodeId, std::size_t>> cursors_;
  std::vector<std::uint64_t> refreshed_at_;
  std::vector<std::uint64_t> stamp_;
  std::vector<std::size_t> memo_;
};

template <class Local>
std::vector<std::size_t> pick_movers(const std::vector<std::pair<NodeId, Action<Local>>>& candidates, Daemon daemon,
                                     Rng& rng) {
  std::vector<std::size_t> picked;
  switch (daemon) {
    case Daemon::central:
      picked.push_back(static_cast<std::size_t>(uniform_below(rng, candidates.size())));
      break;
    case Daemon::distributed:
      while (picked.empty()) {
        for (std::size_t k = 0; k < candidates.size(); ++k)
          if (coin(rng)) picked.push_back(k);
      }
      break;
    case Daemon::synchronous:
      for (std::size_t k = 0; k < candidates.size(); ++k) picked.push_back(k);
      break;
  }
  return picked;
}

}  // namespace detail

/// Executes `prog` from `init` until no node is enabled under fresh reads,
/// the program halts, or the move limit is reached.
template <NodeProgram P>
ExecutionTrace<typename P::Local> run(const P& prog, const Graph& g, GlobalState<typename P::Local> init,
                                     const RunOptions& opt = {}) {
  using Local = typename P::Local;
  if (init.size() != g.node_count()) {
    throw InputError("initial state has " + std::to_string(init.size()) + " entries, graph has " +
                     std::to_string(g.node_count()) + " nodes");
  }
  prog.validate(g, init);
  const std::int64_t max_moves = opt.max_moves.value_or(std::max<std::int64_t>(4 * prog.budget(g).budget, 1));
  if (max_moves <= 0) throw InputError("max_moves must be positive");

  ExecutionTrace<Local> trace;
  trace.initial = init;
  trace.per_node_moves.assign(g.node_count(), 0);
  trace.max_moves = max_moves;

  Rng rng(opt.seed);
  const bool amr = opt.read.kind == ReadModel::Kind::amr;
  std::optional<detail::AmrMemory<Local>> memory;
  if (amr) memory.emplace(init, opt.read.lag, rng);

  GlobalState<Local> state = std::move(init);
  std::size_t idle_steps = 0;
  for (;;) {
    if (auto who = halted_node(prog, state)) {
      trace.outcome = Outcome::no_solution;
      trace.exhausted_node = who;
      break;
    }
    auto fresh = enabled_all(prog, g, state);
    std::vector<std::pair<NodeId, Action<Local>>> candidates;
    for (NodeId i = 0; i < fresh.size(); ++i)
      if (fresh[i]) candidates.emplace_back(i, *fresh[i]);
    if (candidates.empty()) {
      trace.outcome = Outcome::converged;
      trace.converged = true;
      break;
    }
    if (trace.total_moves >= max_moves) {
      trace.outcome = Outcome::move_limit;
      break;
    }

    if (amr) {
      std::vector<std::pair<NodeId, Action<Local>>> stale;
      for (NodeId i = 0; i < g.node_count(); ++i) {
        const auto view = memory->view(i);
        if (auto a = prog.enabled(g, i, view)) stale.emplace_back(i, std::move(*a));
      }
      if (stale.empty()) {
        // Nobody is enabled in its stale view while some node is enabled in
        // truth: deliver the latest values to the freshly enabled nodes.
        for (const auto& [i, a] : candidates) memory->refresh(i);
      } else {
        candidates = std::move(stale);
      }
    }

    const auto picked = detail::pick_movers(candidates, opt.daemon, rng);
    GlobalState<Local> next = state;
    std::vector<NodeId> moved;
    for (std::size_t k : picked) {
      const auto& [i, action] = candidates[k];
      bool changed = !(next[i] == action.next);
      next[i] = action.next;
      if (action.remote) {
        const auto& [j, value] = *action.remote;
        changed = changed || !(next[j] == value);
        next[j] = value;
      }
      // An action computed from a stale view can leave every variable as it
      // was; that is not a move.
      if (changed) moved.push_back(i);
    }

    if (amr) {
      for (NodeId j = 0; j < g.node_count(); ++j)
        if (!(next[j] == state[j])) memory->publish(j, next[j]);
      if (opt.read.refresh_on_act)
        for (NodeId i : moved) memory->refresh(i);
      if (moved.empty() && ++idle_steps >= 64) {
        for (NodeId i = 0; i < g.node_count(); ++i) memory->refresh(i);
        idle_steps = 0;
      }
    }
    if (moved.empty()) continue;
    idle_steps = 0;

    for (NodeId i : moved) ++trace.per_node_moves[i];
    trace.total_moves += static_cast<std::int64_t>(moved.size());
    state = std::move(next);
    Step<Local> step;
    if (opt.record_states) step.state = state;
    step.moved = std::move(moved);
    trace.steps.push_back(std::move(step));
  }
  trace.final_state = std::move(state);
  return trace;
}

/// True iff a converged trace stayed within the budget.
template <class Local>
bool replay_check(const ExecutionTrace<Local>& trace, const MoveBudget& budget) {
  if (!trace.converged) throw InputError("replay_check needs a converged trace");
  return trace.total_moves <= budget.budget;
}

template <NodeProgram P>
MoveBudget budget_for(const P& prog, const Graph& g) {
  return prog.budget(g);
}

}  // namespace llsim
