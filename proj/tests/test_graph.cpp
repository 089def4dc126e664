#include <gtest/gtest.h>

#include <set>
#include <sstream>
#include <thread>

#include "llsim/graph.hpp"
#include "oracles.hpp"

using namespace llsim;

namespace {

std::set<NodeId> as_set(const std::vector<NodeId>& v) { return {v.begin(), v.end()}; }

Graph g4() { return Graph(4, {{0, 1}, {2, 3}}); }

Graph two_stars() { return Graph(8, {{1, 0}, {1, 2}, {1, 3}, {7, 4}, {7, 5}, {7, 6}}); }

}  // namespace

TEST(Graph, NormalizesAndDeduplicatesEdges) {
  Graph g(3, {{1, 0}, {0, 1}, {2, 1}});
  EXPECT_EQ(g.edge_count(), 2u);
  EXPECT_EQ(g.duplicate_edges(), 1u);
  EXPECT_EQ(g.edges()[0], (Edge{0, 1}));
  EXPECT_EQ(g.edges()[1], (Edge{1, 2}));
  EXPECT_EQ(g.degree(1), 2u);
  EXPECT_TRUE(g.has_edge(2, 1));
  EXPECT_FALSE(g.has_edge(0, 2));
}

TEST(Graph, RejectsBadInput) {
  EXPECT_THROW(Graph(0, {}), InputError);
  EXPECT_THROW(Graph(2, {{1, 1}}), InputError);
  EXPECT_THROW(Graph(2, {{0, 2}}), InputError);
}

TEST(Graph, AdjacencyIsSymmetricAndMatchesDegree) {
  const auto g = random_graph(40, 120, 9);
  for (NodeId i = 0; i < g.node_count(); ++i) {
    EXPECT_EQ(g.adjacency(i).size(), g.degree(i));
    for (NodeId j : g.adjacency(i)) {
      EXPECT_NE(i, j);
      EXPECT_TRUE(g.has_edge(j, i));
    }
  }
}

TEST(AdjX, TwoDisjointEdges) {
  EXPECT_EQ(as_set(g4().adj_x(0, 2)), (std::set<NodeId>{1}));
}

TEST(AdjX, ZeroHopsIsEmpty) {
  const auto g = random_graph(10, 20, 3);
  for (NodeId i = 0; i < 10; ++i) EXPECT_TRUE(g.adj_x(i, 0).empty());
}

TEST(AdjX, StarLeafSeesItsStar) {
  EXPECT_EQ(as_set(two_stars().adj_x(0, 3)), (std::set<NodeId>{1, 2, 3}));
}

TEST(AdjX, OneHopIsAdjacency) {
  const auto g = random_graph(30, 60, 5);
  for (NodeId i = 0; i < 30; ++i) {
    const auto adj = g.adjacency(i);
    EXPECT_EQ(g.adj_x(i, 1), std::vector<NodeId>(adj.begin(), adj.end()));
  }
}

TEST(AdjX, InvalidNodeThrows) { EXPECT_THROW(g4().adj_x(4, 1), InputError); }

TEST(AdjX, MatchesFloydWarshallForAllRadii) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const std::size_t n = 5 + seed % 12;
    const auto g = random_graph(n, std::min<std::size_t>(n * (n - 1) / 2, n + seed % 7), seed);
    for (NodeId i = 0; i < n; ++i) {
      for (std::size_t x = 0; x <= 7; ++x) {
        EXPECT_EQ(as_set(g.adj_x(i, x)), oracle::within(g, i, x)) << "seed " << seed << " i " << i << " x " << x;
      }
    }
  }
}

TEST(AdjX, MonotoneInRadiusAndSymmetric) {
  const auto g = random_graph(25, 35, 17);
  for (NodeId i = 0; i < 25; ++i) {
    for (std::size_t x = 0; x < 6; ++x) {
      const auto small = as_set(g.adj_x(i, x));
      const auto big = as_set(g.adj_x(i, x + 1));
      EXPECT_TRUE(std::includes(big.begin(), big.end(), small.begin(), small.end()));
      for (NodeId j : small) EXPECT_TRUE(as_set(g.adj_x(j, x)).contains(i));
    }
  }
}

TEST(AdjX, CacheIsSafeUnderConcurrentReaders) {
  const auto g = random_graph(200, 600, 4);
  std::vector<std::thread> pool;
  std::vector<std::size_t> totals(8, 0);
  for (std::size_t t = 0; t < 8; ++t) {
    pool.emplace_back([&, t] {
      for (NodeId i = 0; i < 200; ++i) totals[t] += g.ball(i, 2 + t % 4).size();
    });
  }
  for (auto& th : pool) th.join();
  for (std::size_t t = 0; t < 8; ++t) EXPECT_EQ(totals[t], totals[t % 4]);
}

TEST(RandomGraph, SingleNode) {
  const auto g = random_graph(1, 0, 42);
  EXPECT_EQ(g.node_count(), 1u);
  EXPECT_EQ(g.edge_count(), 0u);
}

TEST(RandomGraph, ForcedCompleteGraph) {
  const auto g = random_graph(4, 6, 0);
  EXPECT_EQ(g.edge_count(), 6u);
  for (NodeId i = 0; i < 4; ++i) EXPECT_EQ(g.degree(i), 3u);
}

TEST(RandomGraph, TooManyEdges) { EXPECT_THROW(random_graph(4, 7, 0), InputError); }

TEST(RandomGraph, ExactCountsAndReproducible) {
  for (std::size_t m : {0u, 1u, 10u, 44u, 45u}) {
    const auto a = random_graph(10, m, 77);
    const auto b = random_graph(10, m, 77);
    EXPECT_EQ(a.edge_count(), m);
    EXPECT_EQ(a.edges(), b.edges());
    EXPECT_EQ(a.duplicate_edges(), 0u);
  }
  EXPECT_NE(random_graph(50, 100, 1).edges(), random_graph(50, 100, 2).edges());
}

TEST(ParseEdgeList, TwoEdges) {
  const auto g = parse_edge_list("0 1\n2 3\n");
  EXPECT_EQ(g.node_count(), 4u);
  EXPECT_EQ(g.edges(), g4().edges());
}

TEST(ParseEdgeList, HeaderOnlyGivesIsolatedNodes) {
  const auto g = parse_edge_list("n=3\n");
  EXPECT_EQ(g.node_count(), 3u);
  EXPECT_EQ(g.edge_count(), 0u);
}

TEST(ParseEdgeList, SelfLoopReportsLine) {
  try {
    parse_edge_list("0 0\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 1u);
  }
}

TEST(ParseEdgeList, MalformedLinesReportLine) {
  for (const char* text : {"0 1\n1 x\n", "0 1\n1\n", "0 1\n1 2 3\n", "0 1\n-1 2\n"}) {
    try {
      parse_edge_list(text);
      FAIL() << "expected ParseError for " << text;
    } catch (const ParseError& e) {
      EXPECT_EQ(e.line(), 2u) << text;
    }
  }
}

TEST(ParseEdgeList, CommentsBlankLinesAndDuplicates) {
  const auto g = parse_edge_list("# comment\nn=5\n\n0 1\n1 0\n  3 4  \n");
  EXPECT_EQ(g.node_count(), 5u);
  EXPECT_EQ(g.edge_count(), 2u);
  EXPECT_EQ(g.duplicate_edges(), 1u);
}

TEST(ParseEdgeList, IdAboveDeclaredCountIsAnError) {
  EXPECT_THROW(parse_edge_list("n=2\n0 2\n"), ParseError);
}

TEST(ParseEdgeList, EmptyInputIsAnError) { EXPECT_THROW(parse_edge_list(""), ParseError); }

TEST(EdgeList, RoundTrip) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto g = random_graph(12, seed * 3, seed);
    std::ostringstream out;
    write_edge_list(out, g);
    const auto back = parse_edge_list(out.str());
    EXPECT_EQ(back.node_count(), g.node_count());
    EXPECT_EQ(back.edges(), g.edges());
    EXPECT_EQ(graph_hash(back), graph_hash(g));
  }
}

TEST(EdgeList, SingleNodeWritesHeaderOnly) {
  std::ostringstream out;
  write_edge_list(out, random_graph(1, 0, 5));
  EXPECT_EQ(out.str(), "n=1\n");
}

TEST(GraphHash, DistinguishesGraphs) {
  EXPECT_NE(graph_hash(g4()), graph_hash(Graph(4, {{0, 1}, {1, 2}})));
  EXPECT_NE(graph_hash(Graph(4, {})), graph_hash(Graph(5, {})));
  EXPECT_EQ(graph_hash(g4()).size(), 16u);
}

TEST(Graph, CompleteAndConnected) {
  const auto k = complete_graph(5);
  EXPECT_EQ(k.edge_count(), 10u);
  EXPECT_TRUE(is_connected(k));
  EXPECT_FALSE(is_connected(g4()));
  EXPECT_TRUE(is_connected(Graph(1, {})));
}
