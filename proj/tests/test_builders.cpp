#include <gtest/gtest.h>

#include "hyc/builders.hpp"
#include "hyc/classical.hpp"
#include "hyc/hg_io.hpp"
#include "support/oracles.hpp"

using namespace hyc;

namespace {

std::size_t count(const Hypergraph& h) { return enumerate_solutions(h).solutions.size(); }

// Proper colourings g -> target by direct enumeration (loops and directions as
// given: an arc i->j needs an arc c(i)->c(j)).
std::size_t hom_count(const SimpleGraph& g, const SimpleGraph& t) {
  std::size_t n = g.size(), c = t.size(), total = 0;
  std::vector<std::size_t> col(n, 0);
  if (c == 0) return n == 0;
  for (;;) {
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i)
      for (std::size_t j = 0; j < n && ok; ++j)
        if (g.adjacent(i, j) && !t.adjacent(col[i], col[j])) ok = false;
    total += ok;
    std::size_t k = 0;
    while (k < n && ++col[k] == c) col[k++] = 0;
    if (k == n) return total;
  }
}

std::size_t iso_count(const SimpleGraph& g, const SimpleGraph& g2) {
  std::vector<std::size_t> p(g.size());
  for (std::size_t i = 0; i < p.size(); ++i) p[i] = i;
  std::size_t total = 0;
  do {
    bool ok = true;
    for (std::size_t i = 0; i < p.size() && ok; ++i)
      for (std::size_t j = 0; j < p.size() && ok; ++j)
        if (g.adjacent(i, j) != g2.adjacent(p[i], p[j])) ok = false;
    total += ok;
  } while (std::next_permutation(p.begin(), p.end()));
  return total;
}

}  // namespace

TEST(QPerm, Shapes) {
  auto q1 = build_qperm(1);
  EXPECT_EQ(q1.num_vertices(), 1u);
  EXPECT_EQ(q1.num_edges(), 2u);
  EXPECT_EQ(build_qperm(2).num_edges(), 4u);
  auto q3 = build_qperm(3);
  EXPECT_EQ(q3.num_vertices(), 9u);
  EXPECT_EQ(q3.num_edges(), 6u);
  EXPECT_EQ(oracle::brute_force_exact_one(q3).size(), 6u);
  EXPECT_EQ(serialize_hypergraph(build_qperm(2)), "edge p_1_1 p_1_2\nedge p_2_1 p_2_2\nedge p_1_1 p_2_1\nedge p_1_2 p_2_2\n");
  EXPECT_THROW(build_qperm(0), InvalidArgument);
}

TEST(FreeProduct, Shapes) {
  EXPECT_EQ(build_free_product({4}).num_edges(), 1u);
  auto h = build_free_product({2, 2});
  EXPECT_EQ(h.num_edges(), 2u);
  EXPECT_TRUE(orthogonality_pairs(h).size() == 2u);
  auto g = build_free_product({2, 3});
  EXPECT_EQ(g.num_vertices(), 5u);
  EXPECT_THROW(build_free_product({}), InvalidArgument);
  EXPECT_THROW(build_free_product({2, 0}), InvalidArgument);
}

TEST(GraphProduct, Examples) {
  auto cep = build_cep();
  EXPECT_EQ(cep.num_vertices(), 110u);
  EXPECT_EQ(cep.num_edges(), 79u);
  EXPECT_EQ(oracle::brute_force_exact_one(build_graph_product_cyclic({2, 2}, {{0, 1}})).size(), 4u);
  EXPECT_TRUE(same_up_to_ordering(build_graph_product_cyclic({2, 3}, {}), build_free_product({2, 3})));
  EXPECT_THROW(build_graph_product_cyclic({2, 2}, {{0, 2}}), InvalidArgument);
  EXPECT_THROW(build_graph_product_cyclic({2, 2}, {{1, 1}}), InvalidArgument);
  // Commuting factors are classically independent.
  EXPECT_EQ(count(build_cep()), 36u);
}

TEST(HomGame, Colourings) {
  auto k3 = SimpleGraph::complete(3), k2 = SimpleGraph::complete(2);
  EXPECT_EQ(count(build_hom_game(k3, k3)), 6u);
  EXPECT_EQ(count(build_hom_game(k3, k2)), 0u);
  auto single = build_hom_game(SimpleGraph::empty(1), k2);
  EXPECT_EQ(serialize_hypergraph(single), "edge q_1_1 q_1_2\n");
}

TEST(HomGame, MatchesColouringOracle) {
  std::mt19937_64 rng(6);
  std::uniform_int_distribution<int> nn(1, 4), cc(1, 3);
  std::bernoulli_distribution arc(0.4), dir(0.3);
  for (int t = 0; t < 60; ++t) {
    SimpleGraph g(nn(rng), dir(rng));
    for (std::size_t i = 0; i < g.size(); ++i)
      for (std::size_t j = 0; j < g.size(); ++j)
        if (arc(rng) && (i != j || t % 5 == 0)) g.add_arc(i, j);
    SimpleGraph target = t % 2 ? SimpleGraph::complete(cc(rng)) : SimpleGraph::cycle(cc(rng) + 1);
    EXPECT_EQ(count(build_hom_game(g, target)), hom_count(g, target));
  }
}

TEST(IsoGame, Examples) {
  for (std::size_t n = 1; n <= 4; ++n) {
    EXPECT_EQ(edge_set(build_iso_game(SimpleGraph::empty(n), SimpleGraph::empty(n))), edge_set(build_qperm(n)));
    EXPECT_EQ(edge_set(build_iso_game(SimpleGraph::complete(n), SimpleGraph::complete(n))), edge_set(build_qperm(n)));
  }
  auto k3 = SimpleGraph::complete(3);
  EXPECT_EQ(count(build_iso_game(k3, k3)), 6u);
  EXPECT_EQ(count(build_iso_game(k3, SimpleGraph::path(3))), 0u);
  EXPECT_THROW(build_iso_game(k3, SimpleGraph::complete(2)), InvalidArgument);
}

TEST(IsoGame, MatchesIsomorphismOracle) {
  std::mt19937_64 rng(7);
  std::bernoulli_distribution arc(0.5);
  for (int t = 0; t < 40; ++t) {
    std::size_t n = 2 + t % 3;
    SimpleGraph a(n, false), b(n, false);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        if (arc(rng)) a.add_arc(i, j);
        if (arc(rng)) b.add_arc(i, j);
      }
    EXPECT_EQ(count(build_iso_game(a, b)), iso_count(a, b));
    EXPECT_EQ(count(build_iso_game(a, a)), iso_count(a, a));
  }
}

TEST(GraphFormat, ParseAndNamed) {
  auto g = parse_graph("# triangle\nn 3\nundirected\na 1 2\na 2 3\na 3 1\n");
  EXPECT_EQ(g.size(), 3u);
  EXPECT_TRUE(g.adjacent(1, 0));
  EXPECT_FALSE(g.adjacent(0, 0));
  auto d = parse_graph("n 2\na 1 2\n");
  EXPECT_TRUE(d.adjacent(0, 1));
  EXPECT_FALSE(d.adjacent(1, 0));
  EXPECT_THROW(parse_graph("n 2\na 1 3\n"), ParseError);
  EXPECT_THROW(parse_graph("a 1 2\n"), ParseError);
  EXPECT_THROW(parse_graph("n x\n"), ParseError);
  ASSERT_TRUE(named_graph("K4"));
  EXPECT_TRUE(named_graph("K4")->adjacent(0, 3));
  EXPECT_FALSE(named_graph("E3")->adjacent(0, 1));
  EXPECT_TRUE(named_graph("C4")->adjacent(3, 0));
  EXPECT_FALSE(named_graph("P4")->adjacent(3, 0));
  EXPECT_FALSE(named_graph("Q3"));
  EXPECT_FALSE(named_graph("K"));
}

TEST(ZeroGadget, Shape) {
  auto z = build_zero_gadget();
  EXPECT_EQ(z.num_vertices(), 4u);
  EXPECT_EQ(z.num_edges(), 3u);
  EXPECT_EQ(oracle::brute_force_exact_one(z).size(), 1u);
}
