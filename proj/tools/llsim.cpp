// llsim: run, verify and benchmark lattice-linear node programs.

#include <atomic>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "llsim/llsim.hpp"

namespace {

using namespace llsim;

constexpr int kOk = 0;
constexpr int kViolation = 1;
constexpr int kUsage = 2;

struct Source {
  std::string alg = "mds";
  std::string graph_file;
  std::string instance_file;
  std::optional<std::size_t> n;
  std::optional<std::size_t> m;
  std::uint64_t graph_seed = 1;
  std::optional<std::int32_t> max_colour;
};

void add_source_options(CLI::App* cmd, Source& src) {
  cmd->add_option("--alg", src.alg, "Algorithm")
      ->check(CLI::IsMember(std::vector<std::string>(kAlgorithms.begin(), kAlgorithms.end())));
  cmd->add_option("--graph", src.graph_file, "Edge-list file");
  cmd->add_option("--instance", src.instance_file, "SMP instance (JSON)");
  cmd->add_option("--n", src.n, "Random graph: node count");
  cmd->add_option("--m", src.m, "Random graph: edge count");
  cmd->add_option("--graph-seed", src.graph_seed, "Random graph seed");
  cmd->add_option("--max-colour", src.max_colour, "gc: largest colour allowed in the initial state");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ProgramArgs program_args(const Source& src) {
  ProgramArgs args;
  args.max_init_colour = src.max_colour;
  if (src.alg == "smp") {
    if (!src.instance_file.empty()) {
      nlohmann::json j;
      try {
        j = nlohmann::json::parse(read_file(src.instance_file));
      } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(0, std::string("instance: ") + e.what());
      }
      args.smp = SmpInstance::from_json(j);
    } else if (src.n) {
      args.smp = random_smp_instance(*src.n, *src.n, src.graph_seed);
    }
  }
  return args;
}

Graph load_graph(const Source& src, const ProgramArgs& args) {
  if (args.smp) return smp_graph(*args.smp);
  if (!src.graph_file.empty()) return parse_edge_list(read_file(src.graph_file));
  if (src.n && src.m) return random_graph(*src.n, *src.m, src.graph_seed);
  throw InputError("give --graph FILE or --n N --m M");
}

/// fixed | random | all-in | all-out | comma-separated local states.
template <NodeProgram P>
GlobalState<typename P::Local> make_init(const P& prog, const Graph& g, const std::string& spec, std::uint64_t seed,
                                         std::optional<std::int64_t> cap) {
  if (spec == "fixed") return prog.fixed_init(g);
  if (spec == "random") {
    Rng rng(seed);
    return random_init(prog, g, rng, cap);
  }
  if (spec == "all-in" || spec == "all-out") {
    const std::string token = spec == "all-in" ? "IN" : "OUT";
    return GlobalState<typename P::Local>(g.node_count(), prog.parse(token));
  }
  auto s = parse_state(prog, spec);
  if (s.size() != g.node_count()) {
    throw InputError("initial state has " + std::to_string(s.size()) + " entries, expected " +
                     std::to_string(g.node_count()));
  }
  return s;
}

ReadModel make_read(const std::string& kind, std::size_t lag, bool refresh) {
  if (kind == "fresh") return ReadModel::fresh();
  if (kind == "amr") return ReadModel::amr(lag, refresh);
  throw InputError("unknown read model '" + kind + "'");
}

bool fixed_init_only(std::string_view alg) { return alg == "vc" || alg == "vc-dist"; }

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << text;
}

// ---- run -------------------------------------------------------------------

struct RunArgs {
  Source src;
  std::string init = "";
  std::uint64_t init_seed = 1;
  std::string daemon = "central";
  std::string read = "fresh";
  std::size_t lag = 3;
  bool refresh_on_act = false;
  std::uint64_t seed = 1;
  std::optional<std::int64_t> max_moves;
  bool json = false;
  bool steps = false;
  std::string out;
};

int cmd_run(const RunArgs& a) {
  const auto args = program_args(a.src);
  const Graph g = load_graph(a.src, args);
  return dispatch(a.src.alg, args, [&](const auto& prog) {
    const std::string init_spec = !a.init.empty() ? a.init : fixed_init_only(a.src.alg) ? "fixed" : "random";
    const auto init = make_init(prog, g, init_spec, a.init_seed, std::nullopt);
    RunOptions opt;
    opt.daemon = parse_daemon(a.daemon);
    opt.read = make_read(a.read, a.lag, a.refresh_on_act);
    opt.seed = a.seed;
    opt.max_moves = a.max_moves;
    opt.record_states = a.steps;
    const auto trace = run(prog, g, init, opt);
    const auto budget = prog.budget(g);
    const bool within = trace.converged && replay_check(trace, budget);

    if (a.json) {
      auto j = trace_to_json(prog, g, trace, opt);
      j["initial_state"] = state_to_json(prog, trace.initial);
      if (a.steps) {
        auto steps = nlohmann::json::array();
        for (const auto& st : trace.steps) steps.push_back({{"moved", st.moved}, {"state", state_to_json(prog, st.state)}});
        j["steps"] = std::move(steps);
      }
      emit(a.out, j.dump(2) + "\n");
    } else {
      std::ostringstream ss;
      ss << "algorithm: " << prog.name() << "\n"
         << "graph: n=" << g.node_count() << " m=" << g.edge_count() << " hash=" << graph_hash(g) << "\n"
         << "init:  " << format_state(prog, trace.initial) << "\n"
         << "final: " << format_state(prog, trace.final_state) << "\n"
         << "outcome: " << to_string(trace.outcome);
      if (trace.exhausted_node) ss << " (node " << *trace.exhausted_node << " exhausted its choices)";
      ss << "\nmoves: " << trace.total_moves << " (budget " << budget.budget << ")\n";
      if (trace.converged) ss << "optimal: " << (prog.optimal(g, trace.final_state) ? "yes" : "no") << "\n";
      ss << summarize(prog, g, trace.final_state) << "\n";
      if (a.steps) {
        for (std::size_t k = 0; k < trace.steps.size(); ++k) {
          ss << "step " << k + 1 << ":";
          for (auto i : trace.steps[k].moved) ss << " " << i;
          ss << " -> " << format_state(prog, trace.steps[k].state) << "\n";
        }
      }
      emit(a.out, ss.str());
    }
    if (trace.outcome == Outcome::move_limit) return kViolation;
    if (trace.converged && !within) return kViolation;
    return kOk;
  });
}

// ---- verify ----------------------------------------------------------------

struct VerifyArgs {
  Source src;
  std::string init;
  bool feasible_only = false;
  std::optional<std::int64_t> cap;
  std::size_t limit = std::size_t{1} << 20;
  bool cross_check = true;
  std::uint64_t seed = 1;
  bool json = false;
  std::string dot;
  std::string out;
};

int cmd_verify(const VerifyArgs& a) {
  const auto args = program_args(a.src);
  const Graph g = load_graph(a.src, args);
  return dispatch(a.src.alg, args, [&](const auto& prog) {
    using P = std::decay_t<decltype(prog)>;
    ExploreOptions eo;
    eo.domain_cap = a.cap;
    eo.limit = a.limit;
    const std::string init_spec = !a.init.empty() ? a.init : fixed_init_only(a.src.alg) ? "fixed" : "";
    StateSpace<typename P::Local> space;
    if (!init_spec.empty()) {
      space = explore_reachable(prog, g, {make_init(prog, g, init_spec, a.seed, a.cap)}, eo);
    } else if (a.feasible_only) {
      space = explore_subset(prog, g, [&](const auto& s) { return feasible(prog, g, s); }, eo);
    } else {
      space = explore(prog, g, eo);
    }
    VerifyOptions vo;
    vo.cross_check_daemons = a.cross_check;
    vo.seed = a.seed;
    const auto rep = verify_partition(space, prog, g, vo);
    if (!a.dot.empty()) emit(a.dot, report_to_dot(prog, space, rep));

    if (a.json) {
      emit(a.out, report_to_json(prog, space, rep).dump(2) + "\n");
    } else {
      std::ostringstream ss;
      auto yes = [](bool b) { return b ? "yes" : "no"; };
      ss << "algorithm: " << rep.algorithm << "\n"
         << "explored states: " << rep.explored << (rep.restricted ? " (restricted)" : "") << "\n"
         << "classes (w): " << rep.w() << "\n";
      for (std::size_t k = 0; k < rep.classes.size(); ++k) {
        const auto& c = rep.classes[k];
        ss << "  [" << k << "] size " << c.members.size() << " sup " << format_state(prog, space.states[c.supremum])
           << (c.supremum_optimal ? "" : " (not optimal)");
        if (c.infimum) ss << " inf " << format_state(prog, space.states[*c.infimum]);
        if (c.meet_join_closed) ss << (*c.meet_join_closed ? "" : " (not closed under meet/join)");
        ss << "\n";
      }
      ss << "disjoint: " << yes(rep.disjoint) << " (ambiguous " << rep.ambiguous.size() << ", daemon mismatches "
         << rep.daemon_mismatches.size() << ")\n"
         << "exhaustive: " << yes(rep.exhaustive) << "\n"
         << "suprema optimal: " << yes(rep.suprema_optimal) << "\n"
         << "divergent states: " << rep.divergent.size() << "\n"
         << "revisits: " << rep.revisit_count << (rep.revisits_allowed ? " (permitted)" : "") << "\n";
      for (const auto& w : rep.revisit_violations) {
        ss << "  node " << w.node << ":";
        for (auto k : w.path) ss << " " << format_state(prog, space.states[k]);
        ss << "\n";
      }
      ss << "rank violations: " << rep.rank_violation_count << "\n"
         << "order violations: " << rep.order_violation_count << "\n"
         << "result: " << (rep.ok() ? "PASS" : "FAIL") << "\n";
      emit(a.out, ss.str());
    }
    return rep.ok() ? kOk : kViolation;
  });
}

// ---- bench -----------------------------------------------------------------

struct BenchArgs {
  Source src;
  std::size_t trials = 10;
  std::uint64_t seed = 1;
  std::string init;
  std::string daemon = "central";
  std::string read = "fresh";
  std::size_t lag = 3;
  bool refresh_on_act = false;
  unsigned threads = 0;
  bool json = false;
  std::string out;
};

struct BenchRow {
  std::size_t n = 0;
  std::size_t m_edges = 0;
  std::uint64_t seed = 0;
  std::int64_t moves = 0;
  std::int64_t budget = 0;
  bool converged = false;
  bool within_budget = false;
  double wall_ms = 0;
  std::string error;
};

int cmd_bench(const BenchArgs& a) {
  if (a.src.alg != "smp" && (!a.src.n || !a.src.m) && a.src.graph_file.empty()) {
    throw InputError("bench needs --n and --m, or --graph");
  }
  if (a.src.alg == "smp" && !a.src.n && a.src.instance_file.empty()) throw InputError("bench smp needs --n or --instance");
  const Daemon daemon = parse_daemon(a.daemon);
  const ReadModel read = make_read(a.read, a.lag, a.refresh_on_act);
  const std::string init_spec = !a.init.empty() ? a.init : fixed_init_only(a.src.alg) ? "fixed" : "random";
  std::optional<Graph> file_graph;
  if (!a.src.graph_file.empty()) file_graph = parse_edge_list(read_file(a.src.graph_file));

  std::vector<BenchRow> rows(a.trials);
  auto one = [&](std::size_t t) {
    BenchRow& row = rows[t];
    row.seed = mix_seed(a.seed, t);
    try {
      Source src = a.src;
      src.graph_seed = row.seed;
      const auto args = program_args(src);
      const Graph g = file_graph ? *file_graph : load_graph(src, args);
      row.n = g.node_count();
      row.m_edges = g.edge_count();
      dispatch(src.alg, args, [&](const auto& prog) {
        const auto init = make_init(prog, g, init_spec, mix_seed(row.seed, 1), std::nullopt);
        RunOptions opt;
        opt.daemon = daemon;
        opt.read = read;
        opt.seed = mix_seed(row.seed, 2);
        opt.record_states = false;
        const auto start = std::chrono::steady_clock::now();
        const auto trace = run(prog, g, init, opt);
        row.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        row.moves = trace.total_moves;
        row.budget = prog.budget(g).budget;
        row.converged = trace.converged;
        row.within_budget = trace.converged && replay_check(trace, prog.budget(g));
        return 0;
      });
    } catch (const std::exception& e) {
      row.error = e.what();
    }
  };

  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(a.threads ? a.threads : hw, a.trials));
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t t; (t = next.fetch_add(1)) < a.trials;) one(t);
    });
  }
  for (auto& th : pool) th.join();

  for (const auto& r : rows)
    if (!r.error.empty()) throw InputError(r.error);

  double mean_moves = 0, mean_ms = 0;
  std::size_t within = 0;
  for (const auto& r : rows) {
    mean_moves += static_cast<double>(r.moves);
    mean_ms += r.wall_ms;
    within += r.within_budget;
  }
  if (!rows.empty()) {
    mean_moves /= static_cast<double>(rows.size());
    mean_ms /= static_cast<double>(rows.size());
  }
  const std::string read_label = read.label();
  const std::size_t lag = read.kind == ReadModel::Kind::amr ? read.lag : 0;

  if (a.json) {
    nlohmann::json j;
    auto arr = nlohmann::json::array();
    for (const auto& r : rows) {
      arr.push_back({{"alg", a.src.alg}, {"n", r.n}, {"m_edges", r.m_edges}, {"seed", r.seed},
                     {"daemon", to_string(daemon)}, {"read_model", read_label}, {"lag", lag},
                     {"moves", r.moves}, {"budget", r.budget}, {"within_budget", r.within_budget},
                     {"converged", r.converged}, {"wall_ms", r.wall_ms}});
    }
    j["rows"] = std::move(arr);
    j["aggregate"] = {{"trials", rows.size()}, {"mean_moves", mean_moves}, {"mean_wall_ms", mean_ms},
                      {"within_budget", within}};
    emit(a.out, j.dump(2) + "\n");
  } else {
    std::ostringstream ss;
    ss << "alg,n,m_edges,seed,daemon,read_model,lag,moves,budget,within_budget,wall_ms\n";
    for (const auto& r : rows) {
      char ms[32];
      std::snprintf(ms, sizeof ms, "%.3f", r.wall_ms);
      ss << a.src.alg << ',' << r.n << ',' << r.m_edges << ',' << r.seed << ',' << to_string(daemon) << ','
         << read_label << ',' << lag << ',' << r.moves << ',' << r.budget << ','
         << (r.within_budget ? "true" : "false") << ',' << ms << '\n';
    }
    emit(a.out, ss.str());
    std::cerr << "trials " << rows.size() << ", within budget " << within << ", mean moves " << mean_moves
              << ", mean wall " << mean_ms << " ms\n";
  }
  return within == rows.size() ? kOk : kViolation;
}

// ---- gen -------------------------------------------------------------------

struct GenArgs {
  std::size_t n = 0;
  std::size_t m = 0;
  std::uint64_t seed = 1;
  std::string out;
};

int cmd_gen(const GenArgs& a) {
  const Graph g = random_graph(a.n, a.m, a.seed);
  std::ostringstream ss;
  write_edge_list(ss, g);
  emit(a.out, ss.str());
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Simulator and verifier for lattice-linear self-stabilizing algorithms"};
  app.require_subcommand(1);

  RunArgs ra;
  auto* run_cmd = app.add_subcommand("run", "Run one execution and print the trace summary");
  add_source_options(run_cmd, ra.src);
  run_cmd->add_option("--init", ra.init, "fixed | random | all-in | all-out | comma-separated states");
  run_cmd->add_option("--init-seed", ra.init_seed, "Seed for --init random");
  run_cmd->add_option("--daemon", ra.daemon, "central | distributed | synchronous");
  run_cmd->add_option("--read", ra.read, "fresh | amr");
  run_cmd->add_option("--lag", ra.lag, "AMR staleness bound")->capture_default_str();
  run_cmd->add_flag("--refresh-on-act", ra.refresh_on_act, "AMR: a node sees the latest values after it acts");
  run_cmd->add_option("--seed", ra.seed, "Daemon and read-model seed");
  run_cmd->add_option("--max-moves", ra.max_moves, "Move limit (default 4 x budget)");
  run_cmd->add_flag("--steps", ra.steps, "Include every step");
  run_cmd->add_flag("--json", ra.json, "JSON output");
  run_cmd->add_option("-o,--out", ra.out, "Output file");

  VerifyArgs va;
  auto* verify_cmd = app.add_subcommand("verify", "Enumerate the state space and check the lattice structure");
  add_source_options(verify_cmd, va.src);
  verify_cmd->add_option("--init", va.init, "Restrict to states reachable from this initial state");
  verify_cmd->add_flag("--feasible", va.feasible_only, "Restrict to feasible states");
  verify_cmd->add_option("--cap", va.cap, "Cap on unbounded domains (gc colours)");
  verify_cmd->add_option("--limit", va.limit, "Maximum number of states")->capture_default_str();
  verify_cmd->add_flag("!--no-cross-check", va.cross_check, "Skip the engine cross-check of endpoints");
  verify_cmd->add_option("--seed", va.seed, "Seed for the engine cross-check");
  verify_cmd->add_flag("--json", va.json, "JSON output");
  verify_cmd->add_option("--dot", va.dot, "Write the Hasse diagrams in DOT format");
  verify_cmd->add_option("-o,--out", va.out, "Output file");

  BenchArgs ba;
  auto* bench_cmd = app.add_subcommand("bench", "Run seeded trials and print one CSV row per trial");
  add_source_options(bench_cmd, ba.src);
  bench_cmd->add_option("--trials", ba.trials, "Number of trials")->capture_default_str();
  bench_cmd->add_option("--seed", ba.seed, "Base seed");
  bench_cmd->add_option("--init", ba.init, "fixed | random (default depends on the algorithm)");
  bench_cmd->add_option("--daemon", ba.daemon, "central | distributed | synchronous");
  bench_cmd->add_option("--read", ba.read, "fresh | amr");
  bench_cmd->add_option("--lag", ba.lag, "AMR staleness bound")->capture_default_str();
  bench_cmd->add_flag("--refresh-on-act", ba.refresh_on_act, "AMR: a node sees the latest values after it acts");
  bench_cmd->add_option("--threads", ba.threads, "Worker threads (default: hardware)");
  bench_cmd->add_flag("--json", ba.json, "JSON output");
  bench_cmd->add_option("-o,--out", ba.out, "Output file");

  GenArgs ga;
  auto* gen_cmd = app.add_subcommand("gen", "Write a uniformly random simple graph");
  gen_cmd->add_option("--n", ga.n, "Node count")->required();
  gen_cmd->add_option("--m", ga.m, "Edge count")->required();
  gen_cmd->add_option("--seed", ga.seed, "Seed");
  gen_cmd->add_option("-o,--out", ga.out, "Output file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*run_cmd) return cmd_run(ra);
    if (*verify_cmd) return cmd_verify(va);
    if (*bench_cmd) return cmd_bench(ba);
    if (*gen_cmd) return cmd_gen(ga);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const CapacityError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
