#include <gtest/gtest.h>

#include <random>

#include "hyc/builders.hpp"
#include "hyc/hg_io.hpp"
#include "hyc/hypergraph.hpp"
#include "support/oracles.hpp"

using namespace hyc;

TEST(Parse, SingleEdge) {
  auto h = parse_hypergraph("edge a b c");
  EXPECT_EQ(h.vertices(), (std::vector<std::string>{"a", "b", "c"}));
  ASSERT_EQ(h.num_edges(), 1u);
  EXPECT_EQ(h.edge(0).size(), 3u);
}

TEST(Parse, Triangle) {
  auto h = parse_hypergraph("edge a b\nedge a c\nedge b c");
  EXPECT_EQ(h.num_vertices(), 3u);
  EXPECT_EQ(h.num_edges(), 3u);
}

TEST(Parse, VertexWithoutEdgeIsAnError) {
  try {
    parse_hypergraph("vertex x\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 1u);
    EXPECT_NE(std::string(e.what()).find("'x'"), std::string::npos);
  }
}

TEST(Parse, EmptyInput) {
  EXPECT_THROW(parse_hypergraph(""), ParseError);
  EXPECT_THROW(parse_hypergraph("# only a comment\n\n"), ParseError);
}

TEST(Parse, SyntaxErrorsCarryPosition) {
  try {
    parse_hypergraph("edge a b\n  edgy c\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_EQ(e.column(), 3u);
  }
  try {
    parse_hypergraph("edge a b a\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.column(), 10u);
  }
}

TEST(Parse, ReservedPrefix) {
  EXPECT_THROW(parse_hypergraph("edge _g1 a"), ParseError);
  EXPECT_NO_THROW(parse_hypergraph("edge _g1 a", {.allow_reserved = true}));
}

TEST(Parse, CommentsAndDeclarations) {
  auto h = parse_hypergraph("vertex z # declared first\nedge a z#trailing\n");
  EXPECT_EQ(h.vertices(), (std::vector<std::string>{"z", "a"}));
}

TEST(Serialize, Triangle) {
  auto h = parse_hypergraph("edge b a\nedge c a\nedge c b\n");
  EXPECT_EQ(serialize_hypergraph(h), "edge a b\nedge a c\nedge b c\n");
}

TEST(Serialize, EmptyEdge) {
  auto h = parse_hypergraph("edge\nedge a\n");
  EXPECT_TRUE(h.has_empty_edge());
  EXPECT_EQ(serialize_hypergraph(h), "edge\nedge a\n");
}

TEST(Serialize, RoundTripRandom) {
  std::mt19937_64 rng(0);
  for (int i = 0; i < 200; ++i) {
    auto h = oracle::random_hypergraph(rng);
    auto back = parse_hypergraph(serialize_hypergraph(h));
    EXPECT_TRUE(same_up_to_ordering(h, back));
    EXPECT_EQ(serialize_hypergraph(back), serialize_hypergraph(h));
  }
}

TEST(Serialize, RoundTripBuilders) {
  for (const auto& h : {build_qperm(3), build_free_product({2, 3}), build_cep(),
                        build_hom_game(SimpleGraph::complete(3), SimpleGraph::complete(2))}) {
    auto back = parse_hypergraph(serialize_hypergraph(h), {.allow_reserved = true});
    EXPECT_TRUE(same_up_to_ordering(h, back));
  }
}

TEST(Validation, DuplicateEdgesWarn) {
  auto h = build_qperm(1);
  auto w = validation_warnings(h);
  ASSERT_EQ(w.size(), 1u);
  EXPECT_EQ(dedup_edges(h).num_edges(), 1u);
}

TEST(Validation, ConstructorRejectsBadInput) {
  EXPECT_THROW(Hypergraph({"a", "a"}, {{0, 1}}), InvalidArgument);
  EXPECT_THROW(Hypergraph({"a", "b"}, {{0}}), InvalidArgument);
  EXPECT_THROW(Hypergraph({"a"}, {{0, 0}}), InvalidArgument);
  EXPECT_THROW(Hypergraph({"a"}, {{3}}), InvalidArgument);
  EXPECT_THROW(Hypergraph({"a b"}, {{0}}), InvalidArgument);
}

TEST(Orthogonality, Examples) {
  EXPECT_EQ(orthogonality_pairs(parse_hypergraph("edge a b c")).size(), 3u);
  auto fp = orthogonality_pairs(parse_hypergraph("edge a b\nedge c d"));
  EXPECT_EQ(fp, (std::set<OrthoPair>{{"a", "b"}, {"c", "d"}}));
  EXPECT_EQ(orthogonality_pairs(build_qperm(2)).size(), 4u);
}

TEST(Orthogonality, MonotoneUnderAddingEdges) {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 100; ++i) {
    auto h = oracle::random_hypergraph(rng);
    auto g = oracle::random_hypergraph(rng);
    NamedEdgeMultiset both = canonical_edges(h);
    for (const auto& e : canonical_edges(g)) both.push_back(e);
    auto bigger = Hypergraph::from_named_edges(both);
    auto small = orthogonality_pairs(h);
    auto large = orthogonality_pairs(bigger);
    EXPECT_TRUE(std::includes(large.begin(), large.end(), small.begin(), small.end()));
  }
}

TEST(Redundant, Examples) {
  EXPECT_EQ(redundant_edges(build_qperm(2)).size(), 1u);
  EXPECT_TRUE(redundant_edges(oracle::triangle()).empty());
  EXPECT_TRUE(redundant_edges(parse_hypergraph("edge a b c")).empty());
  EXPECT_EQ(redundant_edges(build_qperm(3)).size(), 1u);
}

// Independent check: for every reported edge, the remaining edges span it.
TEST(Redundant, RemovalPreservesRank) {
  std::mt19937_64 rng(2);
  for (int i = 0; i < 200; ++i) {
    auto h = oracle::random_hypergraph(rng);
    auto red = redundant_edges(h);
    std::vector<std::size_t> all(h.num_edges()), kept;
    for (std::size_t e = 0; e < h.num_edges(); ++e) {
      all[e] = e;
      if (std::find(red.begin(), red.end(), e) == red.end()) kept.push_back(e);
    }
    EXPECT_EQ(relation_rank(h, all), relation_rank(h, kept));
    EXPECT_EQ(kept.size(), relation_rank(h, kept));
  }
}

TEST(FreshNames, AvoidExisting) {
  auto h = parse_hypergraph("edge _g7 a _gx", {.allow_reserved = true});
  FreshNames f(h);
  EXPECT_EQ(f.next(), "_g8");
  EXPECT_EQ(f.next(), "_g9");
}
