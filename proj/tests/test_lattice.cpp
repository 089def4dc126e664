#include <gtest/gtest.h>

#include <set>

#include "llsim/llsim.hpp"
#include "oracles.hpp"

using namespace llsim;

namespace {

Graph g4() { return Graph(4, {{0, 1}, {2, 3}}); }
Graph path(std::size_t n) {
  std::vector<Edge> e;
  for (NodeId i = 0; i + 1 < n; ++i) e.push_back({i, i + 1});
  return Graph(n, e);
}
Graph two_stars() { return Graph(8, {{1, 0}, {1, 2}, {1, 3}, {7, 4}, {7, 5}, {7, 6}}); }

GlobalState<Member> members(std::string_view bits) {
  GlobalState<Member> s;
  for (char c : bits) s.push_back(c == '1' ? Member::in : Member::out);
  return s;
}

SmpInstance three_couples() {
  return SmpInstance::from_lists({{1, 0, 2}, {1, 0, 2}, {0, 2, 1}}, {{1, 2, 0}, {0, 1, 2}, {2, 1, 0}});
}

template <class Local>
std::set<GlobalState<Local>> class_states(const StateSpace<Local>& space, const LatticeClass& c) {
  std::set<GlobalState<Local>> out;
  for (auto k : c.members) out.insert(space.states[k]);
  return out;
}

template <class Local>
const LatticeClass& class_with_supremum(const StateSpace<Local>& space, const LatticeReport<Local>& rep,
                                        const GlobalState<Local>& sup) {
  for (const auto& c : rep.classes)
    if (space.states[c.supremum] == sup) return c;
  throw std::runtime_error("no class with that supremum");
}

}  // namespace

TEST(Explore, TwoEdgesHasSixteenStates) {
  const auto space = explore(MdsProgram{}, g4());
  EXPECT_EQ(space.size(), 16u);
  EXPECT_FALSE(space.restricted);
}

TEST(Explore, ColouringCapIsHonoured) {
  const auto space = explore(GcProgram{}, Graph(2, {{0, 1}}), {.domain_cap = 3});
  EXPECT_EQ(space.size(), 9u);
  EXPECT_EQ(space.outside_domain, 0u);
}

TEST(Explore, TransitionsOnlyMoveEnabledNodes) {
  const auto g = random_graph(6, 7, 2);
  const auto space = explore(MdsProgram{}, g);
  for (std::size_t k = 0; k < space.size(); ++k) {
    for (const auto& t : space.successors[k]) {
      EXPECT_TRUE(MdsProgram{}.enabled(g, t.node, space.states[k]).has_value());
      for (NodeId i = 0; i < 6; ++i) {
        if (i != t.node) {
          EXPECT_EQ(space.states[k][i], space.states[t.to][i]);
        }
      }
    }
  }
}

TEST(Explore, CapacityLimit) {
  EXPECT_THROW(explore(MdsProgram{}, random_graph(21, 30, 1)), CapacityError);
  EXPECT_THROW(explore(MdsProgram{}, g4(), {.domain_cap = std::nullopt, .limit = 15}), CapacityError);
}

TEST(Explore, ReachableSliceOfTwoStars) {
  const auto g = two_stars();
  const auto space = explore_reachable(VcProgram{}, g, {VcProgram{}.fixed_init(g)});
  EXPECT_TRUE(space.restricted);
  std::set<GlobalState<Member>> projected;
  for (const auto& s : space.states) {
    GlobalState<Member> st;
    for (const auto& x : s) st.push_back(x.st);
    projected.insert(st);
  }
  EXPECT_EQ(projected, (std::set<GlobalState<Member>>{members("00000000"), members("01010000"),
                                                      members("00000011"), members("01010011")}));
}

TEST(VerifyPartition, DominatingSetOnTwoEdges) {
  const auto g = g4();
  const auto space = explore(MdsProgram{}, g);
  const auto rep = verify_partition(space, MdsProgram{}, g);
  EXPECT_EQ(rep.w(), 4u);
  EXPECT_TRUE(rep.disjoint);
  EXPECT_TRUE(rep.exhaustive);
  EXPECT_TRUE(rep.suprema_optimal);
  EXPECT_EQ(rep.revisit_count, 0u);
  EXPECT_TRUE(rep.ok());
  using S = std::set<GlobalState<Member>>;
  const auto& a = class_with_supremum(space, rep, members("1010"));
  EXPECT_EQ(class_states(space, a), (S{members("1010"), members("1011"), members("1110"), members("1111")}));
  const auto& b = class_with_supremum(space, rep, members("0101"));
  EXPECT_EQ(class_states(space, b), (S{members("0101"), members("0100"), members("0001"), members("0000")}));
  const auto& c = class_with_supremum(space, rep, members("0110"));
  EXPECT_EQ(class_states(space, c), (S{members("0110"), members("0111"), members("0010"), members("0011")}));
  const auto& d = class_with_supremum(space, rep, members("1001"));
  EXPECT_EQ(class_states(space, d), (S{members("1001"), members("1101"), members("1000"), members("1100")}));
  for (const auto& cls : rep.classes) {
    EXPECT_EQ(cls.members.size(), 4u);
    EXPECT_TRUE(cls.infimum.has_value());
    EXPECT_EQ(cls.meet_join_closed, std::optional<bool>{true});
  }
}

TEST(VerifyPartition, SingleNode) {
  const Graph g(1, {});
  const auto space = explore(MdsProgram{}, g);
  const auto rep = verify_partition(space, MdsProgram{}, g);
  ASSERT_EQ(rep.w(), 1u);
  EXPECT_EQ(space.states[rep.classes[0].supremum], members("1"));
}

TEST(VerifyPartition, EventuallyLatticeLinearFeasibleStates) {
  const auto g = g4();
  const auto space = explore_subset(MdsEventuallyProgram{}, g, [&](const auto& s) { return mds_feasible(g, s); });
  const auto rep = verify_partition(space, MdsEventuallyProgram{}, g);
  EXPECT_EQ(space.size(), 9u);
  EXPECT_EQ(rep.w(), 4u);
  EXPECT_TRUE(rep.disjoint);
  using S = std::set<GlobalState<Member>>;
  EXPECT_EQ(class_states(space, class_with_supremum(space, rep, members("1010"))),
            (S{members("1010"), members("1011"), members("1110"), members("1111")}));
  EXPECT_EQ(class_states(space, class_with_supremum(space, rep, members("0101"))), (S{members("0101")}));
  EXPECT_EQ(class_states(space, class_with_supremum(space, rep, members("0110"))),
            (S{members("0110"), members("0111")}));
  EXPECT_EQ(class_states(space, class_with_supremum(space, rep, members("1001"))),
            (S{members("1001"), members("1101")}));
}

TEST(VerifyPartition, NaiveCoverRevisitsAtLastNode) {
  const auto g = path(4);
  const auto space = explore(NaiveVcProgram{}, g);
  const auto rep = verify_partition(space, NaiveVcProgram{}, g);
  EXPECT_GT(rep.revisit_count, 0u);
  EXPECT_FALSE(rep.ok());
  bool found = false;
  for (const auto& w : rep.revisit_violations) {
    if (w.node != 3 || space.states[w.path.front()] != members("0000")) continue;
    found = true;
    EXPECT_EQ(space.states[w.path.back()][3], Member::out);
    for (std::size_t k = 1; k < w.path.size(); ++k) {
      bool edge = false;
      for (const auto& t : space.successors[w.path[k - 1]]) edge = edge || t.to == w.path[k];
      EXPECT_TRUE(edge);
    }
  }
  EXPECT_TRUE(found);
}

TEST(VerifyPartition, CoverFromFixedInitIsOneLattice) {
  const auto g = two_stars();
  const auto space = explore_reachable(VcProgram{}, g, {VcProgram{}.fixed_init(g)});
  const auto rep = verify_partition(space, VcProgram{}, g);
  EXPECT_EQ(rep.w(), 1u);
  EXPECT_TRUE(rep.disjoint);
  GlobalState<Member> st;
  for (const auto& x : space.states[rep.classes[0].supremum]) st.push_back(x.st);
  EXPECT_EQ(st, members("01010011"));
}

TEST(VerifyPartition, EndpointDependsOnDaemonOnPathOfFour) {
  // Path 0-1-3-2 from {3, 2}: node 0 can add first (ending at {0, 2} or
  // {0, 3}) or 2 can leave first. The reachable endpoints differ.
  const Graph g(4, {{0, 1}, {1, 3}, {3, 2}});
  const auto space = explore(MdsProgram{}, g);
  const auto rep = verify_partition(space, MdsProgram{}, g);
  const auto k = space.at(members("0011"));
  EXPECT_GT(rep.class_of[k].size(), 1u);
  EXPECT_FALSE(rep.disjoint);
  EXPECT_EQ(rep.revisit_count, 0u);
}

TEST(Impedensable, Examples) {
  const auto inst = three_couples();
  const SmpProgram smp(inst);
  const auto sg = smp_graph(inst);
  const auto sspace = explore(smp, sg);
  EXPECT_TRUE(impedensable(1, {{1}, {1}, {1}}, sspace, smp, sg));
  EXPECT_FALSE(impedensable(0, {{1}, {2}, {2}}, sspace, smp, sg));

  const auto g = g4();
  const auto space = explore(MdsProgram{}, g);
  EXPECT_TRUE(impedensable(1, members("0000"), space, MdsProgram{}, g));
  EXPECT_FALSE(impedensable(0, members("0000"), space, MdsProgram{}, g));
  for (NodeId i = 0; i < 4; ++i) EXPECT_FALSE(impedensable(i, members("1010"), space, MdsProgram{}, g));
  EXPECT_THROW(impedensable(0, members("000"), space, MdsProgram{}, g), InputError);
}

TEST(Impedensable, EnabledMdsNodeNeedNotBeImpedensable) {
  // From {2,5} node 2 is enabled. If 1 joins first, 5 becomes removable and
  // outranks 2; 5 leaves and the run ends at {1,2,3} with 2 still in.
  const Graph g(6, {{0, 1}, {0, 5}, {2, 4}, {2, 5}, {4, 5}});
  const auto space = explore(MdsProgram{}, g);
  const auto s = members("001001");
  EXPECT_TRUE(MdsProgram{}.enabled(g, 2, s).has_value());
  EXPECT_FALSE(impedensable(2, s, space, MdsProgram{}, g));
  EXPECT_TRUE(impedensable(1, s, space, MdsProgram{}, g));
}

TEST(MeetJoin, TwoEdgesClass) {
  const auto g = g4();
  const auto space = explore(MdsProgram{}, g);
  const auto rep = verify_partition(space, MdsProgram{}, g);
  EXPECT_EQ(meet(space, rep, MdsProgram{}, g, members("1011"), members("1110")), members("1111"));
  EXPECT_EQ(join(space, rep, MdsProgram{}, g, members("1011"), members("1110")), members("1010"));
  for (const auto& s : space.states) {
    if (rep.class_of[space.at(s)].size() != 1) continue;
    EXPECT_EQ(meet(space, rep, MdsProgram{}, g, s, s), s);
    EXPECT_EQ(join(space, rep, MdsProgram{}, g, s, s), s);
  }
  EXPECT_THROW(meet(space, rep, MdsProgram{}, g, members("1010"), members("0101")), InputError);
}

TEST(MeetJoin, StableMarriageJoin) {
  const auto inst = three_couples();
  const SmpProgram smp(inst);
  const auto sg = smp_graph(inst);
  const auto space = explore(smp, sg);
  const auto rep = verify_partition(space, smp, sg, {.cross_check_daemons = false});
  const GlobalState<Proposal> a{{2}, {1}, {1}}, b{{1}, {2}, {1}};
  EXPECT_EQ(join(space, rep, smp, sg, a, b), (GlobalState<Proposal>{{2}, {2}, {1}}));
  EXPECT_EQ(meet(space, rep, smp, sg, a, b), (GlobalState<Proposal>{{1}, {1}, {1}}));
}

TEST(MeetJoin, LatticeLawsInClosedClasses) {
  for (std::uint64_t seed = 0; seed < 15; ++seed) {
    const auto g = random_graph(5, 3 + seed % 5, seed);
    const auto space = explore(MdsProgram{}, g);
    const auto rep = verify_partition(space, MdsProgram{}, g);
    for (std::size_t k = 0; k < rep.classes.size(); ++k) {
      const auto& c = rep.classes[k];
      if (c.meet_join_closed != std::optional<bool>{true}) continue;
      bool all_unique = true;
      for (auto m : c.members) all_unique = all_unique && rep.class_of[m].size() == 1;
      if (!all_unique) continue;
      auto M = [&](const auto& x, const auto& y) { return meet(space, rep, MdsProgram{}, g, x, y); };
      auto J = [&](const auto& x, const auto& y) { return join(space, rep, MdsProgram{}, g, x, y); };
      for (auto a : c.members) {
        for (auto b : c.members) {
          const auto& x = space.states[a];
          const auto& y = space.states[b];
          EXPECT_EQ(M(x, y), M(y, x));
          EXPECT_EQ(J(x, y), J(y, x));
          EXPECT_EQ(M(x, J(x, y)), x);
          EXPECT_EQ(J(x, M(x, y)), x);
          for (auto z : c.members) {
            EXPECT_EQ(M(M(x, y), space.states[z]), M(x, M(y, space.states[z])));
            EXPECT_EQ(J(J(x, y), space.states[z]), J(x, J(y, space.states[z])));
          }
        }
      }
    }
  }
}

TEST(Rank, KnownValues) {
  EXPECT_EQ(rank(MdsProgram{}, g4(), members("0000")), 4);
  EXPECT_EQ(rank(MdsProgram{}, g4(), members("1010")), 0);
  const auto g = two_stars();
  EXPECT_EQ(rank(VcProgram{}, g, VcProgram{}.fixed_init(g)), 12);
}

TEST(Rank, ZeroExactlyAtOptimalMds) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto g = random_graph(7, 9, seed);
    const auto space = explore(MdsProgram{}, g);
    for (const auto& s : space.states) EXPECT_EQ(rank(MdsProgram{}, g, s) == 0, MdsProgram{}.optimal(g, s));
  }
}

TEST(Hasse, DiamondForTwoEdges) {
  const auto g = g4();
  const auto space = explore(MdsProgram{}, g);
  const auto rep = verify_partition(space, MdsProgram{}, g);
  for (std::size_t k = 0; k < rep.w(); ++k) EXPECT_EQ(hasse_edges(space, rep, k).size(), 4u);
}

TEST(Export, JsonAndDot) {
  const auto g = g4();
  const auto space = explore(MdsProgram{}, g);
  const auto rep = verify_partition(space, MdsProgram{}, g);
  const auto j = report_to_json(MdsProgram{}, space, rep);
  EXPECT_EQ(j.at("w"), 4);
  EXPECT_EQ(j.at("classes").size(), 4u);
  EXPECT_TRUE(j.at("disjoint").get<bool>());
  const auto dot = report_to_dot(MdsProgram{}, space, rep);
  EXPECT_NE(dot.find("digraph lattice"), std::string::npos);
  EXPECT_NE(dot.find("<IN,OUT,IN,OUT>"), std::string::npos);

  const auto t = run(MdsProgram{}, g, members("1111"), {});
  const auto tj = trace_to_json(MdsProgram{}, g, t, {});
  for (const char* key : {"algorithm", "graph_hash", "seed", "daemon", "read_model", "moves", "converged",
                          "final_state"}) {
    EXPECT_TRUE(tj.contains(key)) << key;
  }
  EXPECT_EQ(tj.at("moves"), 2);
}
