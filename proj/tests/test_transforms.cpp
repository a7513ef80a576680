#include <gtest/gtest.h>

#include <random>

#include "hyc/builders.hpp"
#include "hyc/classical.hpp"
#include "hyc/hg_io.hpp"
#include "hyc/transforms.hpp"
#include "support/oracles.hpp"

using namespace hyc;

namespace {

std::set<oracle::NamedAssignment> projected(const Hypergraph& h, const std::vector<std::string>& keep) {
  std::set<oracle::NamedAssignment> out;
  for (const auto& a : oracle::brute_force_exact_one(h)) out.insert(oracle::restrict_to(a, keep));
  return out;
}

std::size_t count(const Hypergraph& h) { return enumerate_solutions(h).solutions.size(); }

}  // namespace

TEST(Impose, OrthogonalOnSingleEdge) {
  auto h = parse_hypergraph("edge a b");
  auto g = impose_relation(h, Relation::orthogonal("a", "b"));
  EXPECT_EQ(serialize_hypergraph(g), "edge a b\nedge _g1 a b\n");
  EXPECT_EQ(oracle::brute_force_exact_one(g).size(), 2u);
}

TEST(Impose, EqualRestrictsSolutions) {
  auto h = parse_hypergraph("edge a x\nedge b y");
  auto g = impose_relation(h, Relation::equal("a", "b"));
  std::set<oracle::NamedAssignment> want;
  for (const auto& s : oracle::brute_force_exact_one(h))
    if (s.at("a") == s.at("b")) want.insert(s);
  EXPECT_EQ(projected(g, h.vertices()), want);
  EXPECT_EQ(oracle::brute_force_exact_one(g).size(), want.size());
}

TEST(Impose, ZeroOnGadgetRemovesVertex) {
  auto g = impose_relation(build_zero_gadget(), Relation::zero("v"));
  EXPECT_EQ(g.num_vertices(), 3u);
  EXPECT_EQ(serialize_hypergraph(g), "edge a c\nedge a b c\nedge b c\n");
}

TEST(Impose, Errors) {
  auto h = parse_hypergraph("edge a b");
  EXPECT_THROW(impose_relation(h, Relation::zero("q")), InvalidArgument);
  EXPECT_THROW(impose_relation(h, Relation::equal("a", "a")), InvalidArgument);
  EXPECT_THROW(parse_relation_kind("bogus"), InvalidArgument);
}

TEST(Impose, GadgetSizes) {
  auto h = parse_hypergraph("edge a b\nedge c d");
  auto c = impose_relation(h, Relation::commute("a", "c"));
  EXPECT_EQ(c.num_vertices(), 8u);
  EXPECT_EQ(c.num_edges(), 5u);
  auto s = impose_relation(h, Relation::sum_leq_one("a", "c"));
  EXPECT_EQ(s.num_vertices(), 7u);
  EXPECT_EQ(s.num_edges(), 5u);
}

// Classical (commutative) semantics of each relation, checked by brute force
// on random instances: the projection of the solution set onto the original
// vertices must be exactly the set of original solutions obeying the relation,
// and the fresh vertices must be determined.
TEST(Impose, ClassicalSemanticsRandom) {
  std::mt19937_64 rng(4);
  oracle::RandomHypergraphOptions opt;
  opt.max_vertices = 6;
  opt.empty_edge_chance = 0;
  using K = Relation::Kind;
  for (int i = 0; i < 150; ++i) {
    auto h = oracle::random_hypergraph(rng, opt);
    const auto& names = h.vertices();
    std::uniform_int_distribution<std::size_t> pick(0, names.size() - 1);
    std::string v = names[pick(rng)], w = names[pick(rng)];
    for (K k : {K::zero, K::equal, K::orthogonal, K::leq, K::commute, K::sum_leq_one}) {
      if (k != K::zero && v == w) continue;
      Relation r{k, v, w};
      auto g = impose_relation(h, r);
      std::vector<std::string> keep;
      for (const auto& n : names)
        if (g.find(n)) keep.push_back(n);
      std::set<oracle::NamedAssignment> want;
      for (const auto& s : oracle::brute_force_exact_one(h)) {
        bool a = s.at(v), b = k == K::zero ? false : s.at(w);
        bool ok = true;
        switch (k) {
          case K::zero: ok = !a; break;
          case K::equal: ok = a == b; break;
          case K::orthogonal: ok = !(a && b); break;
          case K::leq: ok = !a || b; break;
          case K::commute: ok = true; break;
          case K::sum_leq_one: ok = !(a && b); break;
        }
        if (ok) want.insert(oracle::restrict_to(s, keep));
      }
      auto full = oracle::brute_force_exact_one(g);
      EXPECT_EQ(projected(g, keep), want) << to_string(k) << " " << v << " " << w;
      EXPECT_EQ(full.size(), want.size()) << to_string(k);
    }
  }
}

TEST(LinearZeroGadget, Shape) {
  auto g = build_linear_zero_gadget("z");
  EXPECT_EQ(g.num_vertices(), 12u);
  EXPECT_EQ(g.num_edges(), 10u);
  EXPECT_TRUE(is_three_uniform_linear(g));
  auto sols = oracle::brute_force_exact_one(g);
  ASSERT_EQ(sols.size(), 1u);
  EXPECT_FALSE(sols[0].at("z"));
}

TEST(ThreeUniform, SplitsLargeEdge) {
  auto h = parse_hypergraph("edge v1 v2 v3 v4");
  auto g = three_uniform(h);
  EXPECT_TRUE(is_three_uniform_linear(g));
  auto s = canonical_edges(g);
  EXPECT_TRUE(std::find(s.begin(), s.end(), std::vector<std::string>{"_g1", "v1", "v2"}) != s.end());
  EXPECT_TRUE(std::find(s.begin(), s.end(), std::vector<std::string>{"_g2", "v3", "v4"}) != s.end());
  EXPECT_EQ(count(g), 4u);
}

TEST(ThreeUniform, EmptyEdgeGivesZeroAlgebra) {
  auto g = three_uniform(parse_hypergraph("edge\nedge a b\n"));
  EXPECT_TRUE(is_three_uniform_linear(g));
  EXPECT_EQ(count(g), 0u);
}

TEST(ThreeUniform, TrianglePadded) {
  auto g = three_uniform(oracle::triangle());
  EXPECT_TRUE(is_three_uniform_linear(g));
  EXPECT_EQ(count(g), 0u);
}

TEST(ThreeUniform, OverlapReplacedByEquality) {
  auto h = parse_hypergraph("edge t u v\nedge u v w\nedge w x");
  auto g = three_uniform(h);
  EXPECT_TRUE(is_three_uniform_linear(g));
  std::set<oracle::NamedAssignment> got;
  for (const auto& a : enumerate_solutions(g).solutions) {
    oracle::NamedAssignment m;
    for (const auto& n : h.vertices()) m[n] = a[g.id(n)];
    got.insert(m);
  }
  auto want = oracle::brute_force_exact_one(h);
  EXPECT_EQ(got, std::set<oracle::NamedAssignment>(want.begin(), want.end()));
  EXPECT_EQ(count(g), want.size());
}

TEST(ThreeUniform, RandomCorpusPreservesSolutions) {
  std::mt19937_64 rng(0);
  for (int i = 0; i < 150; ++i) {
    auto h = oracle::random_hypergraph(rng);
    auto g = three_uniform(h);
    ASSERT_TRUE(is_three_uniform_linear(g)) << serialize_hypergraph(h);
    auto want = oracle::brute_force_exact_one(dedup_edges(h));
    auto sols = enumerate_solutions(g).solutions;
    EXPECT_EQ(sols.size(), want.size()) << serialize_hypergraph(h);
    if (g.find(h.vertices().front()) && !h.has_empty_edge()) {
      std::set<oracle::NamedAssignment> got;
      for (const auto& a : sols) {
        oracle::NamedAssignment m;
        for (const auto& n : h.vertices()) m[n] = a[g.id(n)];
        got.insert(m);
      }
      EXPECT_EQ(got, std::set<oracle::NamedAssignment>(want.begin(), want.end()));
    }
  }
}

TEST(ThreeUniform, IdempotentUpToRenaming) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 30; ++i) {
    auto h = oracle::random_hypergraph(rng);
    auto g = three_uniform(h);
    auto gg = three_uniform(g);
    EXPECT_EQ(gg.num_vertices(), g.num_vertices());
    EXPECT_EQ(canonical_edges(gg), canonical_edges(g));
  }
}
