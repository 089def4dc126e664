#pragma once

#include <sstream>
#include <string>

#include <json.hpp>

#include "llsim/engine.hpp"
#include "llsim/graph.hpp"
#include "llsim/lattice.hpp"
#include "llsim/program.hpp"

namespace llsim {

template <NodeProgram P>
nlohmann::json state_to_json(const P& prog, const GlobalState<typename P::Local>& s) {
  auto out = nlohmann::json::array();
  for (const auto& x : s) out.push_back(prog.format(x));
  return out;
}

template <NodeProgram P>
nlohmann::json trace_to_json(const P& prog, const Graph& g, const ExecutionTrace<typename P::Local>& trace,
                             const RunOptions& opt) {
  const auto budget = prog.budget(g);
  nlohmann::json j;
  j["algorithm"] = prog.name();
  j["graph_hash"] = graph_hash(g);
  j["seed"] = opt.seed;
  j["daemon"] = to_string(opt.daemon);
  j["read_model"] = opt.read.label();
  if (opt.read.kind == ReadModel::Kind::amr) j["lag"] = opt.read.lag;
  j["moves"] = trace.total_moves;
  j["converged"] = trace.converged;
  j["outcome"] = to_string(trace.outcome);
  j["final_state"] = state_to_json(prog, trace.final_state);
  j["budget"] = budget.budget;
  if (trace.converged) j["within_budget"] = replay_check(trace, budget);
  if (trace.exhausted_node) j["exhausted_node"] = *trace.exhausted_node;
  if constexpr (writes_neighbours<P>) j["non_distributed_write"] = true;
  return j;
}

template <NodeProgram P>
nlohmann::json report_to_json(const P& prog, const StateSpace<typename P::Local>& space,
                              const LatticeReport<typename P::Local>& rep) {
  auto fmt = [&](std::size_t k) { return format_state(prog, space.states[k]); };
  nlohmann::json j;
  j["algorithm"] = rep.algorithm;
  j["explored"] = rep.explored;
  j["restricted"] = rep.restricted;
  if (rep.domain_cap) j["domain_cap"] = *rep.domain_cap;
  j["w"] = rep.w();
  j["disjoint"] = rep.disjoint;
  j["exhaustive"] = rep.exhaustive;
  j["suprema_optimal"] = rep.suprema_optimal;
  j["ok"] = rep.ok();

  auto classes = nlohmann::json::array();
  for (const auto& c : rep.classes) {
    nlohmann::json cj;
    cj["supremum"] = fmt(c.supremum);
    cj["infimum"] = c.infimum ? nlohmann::json(fmt(*c.infimum)) : nlohmann::json(nullptr);
    cj["size"] = c.members.size();
    cj["supremum_optimal"] = c.supremum_optimal;
    cj["meet_join_closed"] = c.meet_join_closed ? nlohmann::json(*c.meet_join_closed) : nlohmann::json(nullptr);
    auto members = nlohmann::json::array();
    for (auto m : c.members) members.push_back(fmt(m));
    cj["members"] = std::move(members);
    classes.push_back(std::move(cj));
  }
  j["classes"] = std::move(classes);

  auto list = [&](const std::vector<std::size_t>& ks) {
    auto a = nlohmann::json::array();
    for (auto k : ks) a.push_back(fmt(k));
    return a;
  };
  j["divergent"] = list(rep.divergent);
  j["ambiguous"] = list(rep.ambiguous);

  auto mism = nlohmann::json::array();
  for (const auto& m : rep.daemon_mismatches) {
    mism.push_back({{"state", fmt(m.state)},
                    {"central_end", format_state(prog, m.central_end)},
                    {"synchronous_end", format_state(prog, m.synchronous_end)}});
  }
  j["daemon_mismatches"] = std::move(mism);

  j["revisit_count"] = rep.revisit_count;
  j["revisits_allowed"] = rep.revisits_allowed;
  auto rv = nlohmann::json::array();
  for (const auto& w : rep.revisit_violations) rv.push_back({{"node", w.node}, {"path", list(w.path)}});
  j["revisit_violations"] = std::move(rv);

  j["rank_violation_count"] = rep.rank_violation_count;
  auto rk = nlohmann::json::array();
  for (const auto& r : rep.rank_violations) {
    rk.push_back({{"from", fmt(r.from)}, {"to", fmt(r.to)}, {"rank_from", r.rank_from}, {"rank_to", r.rank_to}});
  }
  j["rank_violations"] = std::move(rk);
  j["order_violation_count"] = rep.order_violation_count;
  return j;
}

/// Hasse diagram of every class; transitive edges are omitted.
template <NodeProgram P>
std::string report_to_dot(const P& prog, const StateSpace<typename P::Local>& space,
                          const LatticeReport<typename P::Local>& rep) {
  std::ostringstream out;
  out << "digraph lattice {\n  rankdir=BT;\n  node [shape=box, fontname=\"monospace\"];\n";
  for (std::size_t k = 0; k < rep.classes.size(); ++k) {
    const auto& c = rep.classes[k];
    out << "  subgraph cluster_" << k << " {\n    label=\"class " << k << "\";\n";
    for (auto m : c.members) {
      out << "    \"c" << k << "_" << m << "\" [label=\"" << format_state(prog, space.states[m]) << "\"";
      if (m == c.supremum) out << ", peripheries=2";
      out << "];\n";
    }
    for (const auto& [u, v] : hasse_edges(space, rep, k)) {
      out << "    \"c" << k << "_" << u << "\" -> \"c" << k << "_" << v << "\";\n";
    }
    out << "  }\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace llsim
