#include <gtest/gtest.h>

#include <random>

#include "hyc/classical.hpp"
#include "hyc/games.hpp"
#include "hyc/hg_io.hpp"
#include "support/oracles.hpp"

using namespace hyc;

namespace {

SynchronousGame colouring_game(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges,
                               std::size_t colours) {
  std::vector<std::string> in, out;
  for (std::size_t i = 0; i < n; ++i) in.push_back("x" + std::to_string(i + 1));
  for (std::size_t c = 0; c < colours; ++c) out.push_back(std::to_string(c + 1));
  SynchronousGame g(in, out);
  g.add_synchronicity();
  for (auto [i, j] : edges)
    for (std::size_t c = 0; c < colours; ++c) {
      g.forbid(i, j, c, c);
      g.forbid(j, i, c, c);
    }
  return g;
}

bool lambda_symmetric(const SynchronousGame& g) {
  const std::size_t ni = g.inputs().size(), no = g.outputs().size();
  for (std::size_t x = 0; x < ni; ++x)
    for (std::size_t y = 0; y < ni; ++y)
      for (std::size_t a = 0; a < no; ++a)
        for (std::size_t b = 0; b < no; ++b)
          if (g.lambda(x, y, a, b) != g.lambda(y, x, b, a)) return false;
  return true;
}

SynchronousGame random_game(std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> ni(1, 4), no(1, 3);
  std::bernoulli_distribution coin(0.15);
  std::size_t n = ni(rng), m = no(rng);
  std::vector<std::string> in, out;
  for (std::size_t i = 0; i < n; ++i) in.push_back("i" + std::to_string(i));
  for (std::size_t a = 0; a < m; ++a) out.push_back("o" + std::to_string(a));
  SynchronousGame g(in, out);
  g.add_synchronicity();
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = 0; b < m; ++b)
          if (x != y && coin(rng)) g.forbid(x, y, a, b);
  return g;
}

}  // namespace

TEST(GameValidate, Synchronicity) {
  SynchronousGame g({"x"}, {"0", "1"});
  g.add_synchronicity();
  EXPECT_TRUE(validate_game(g).empty());
  SynchronousGame h({"x"}, {"0", "1"});
  h.forbid(0, 0, 1, 0);
  auto v = validate_game(h);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_NE(v[0].find("(x,x,0,1)"), std::string::npos);
  h.forbid(0, 0, 1, 1);
  EXPECT_EQ(validate_game(h).size(), 2u);
}

TEST(GameFormat, RoundTripAndAutoSync) {
  auto g = parse_game("inputs x y\noutputs 0 1\nforbid x y 0 0 # clash\n", {.auto_sync = true});
  EXPECT_TRUE(validate_game(g).empty());
  EXPECT_FALSE(g.lambda(0, 1, 0, 0));
  auto back = parse_game(serialize_game(g));
  EXPECT_EQ(back.forbidden(), g.forbidden());
  EXPECT_THROW(parse_game("inputs x\noutputs 0\nforbid x z 0 0\n"), ParseError);
  EXPECT_THROW(parse_game("outputs 0\n"), ParseError);
  EXPECT_THROW(parse_game("inputs x\noutputs 0\nforbid x x 0\n"), ParseError);
  EXPECT_FALSE(validate_game(parse_game("inputs x\noutputs 0 1\n")).empty());
}

TEST(GameToHypergraph, TrivialGame) {
  SynchronousGame g({"x"}, {"0", "1"});
  g.add_synchronicity();
  auto h = game_to_hypergraph(g);
  EXPECT_EQ(h.num_vertices(), 3u);
  EXPECT_EQ(oracle::brute_force_exact_one(h).size(), 2u);
}

TEST(GameToHypergraph, TwoColouringTriangleUnsat) {
  auto g = colouring_game(3, {{0, 1}, {1, 2}, {0, 2}}, 2);
  EXPECT_TRUE(enumerate_solutions(game_to_hypergraph(g)).solutions.empty());
  EXPECT_TRUE(perfect_deterministic_strategies(g).strategies.empty());
  auto g3 = colouring_game(3, {{0, 1}, {1, 2}, {0, 2}}, 3);
  EXPECT_EQ(enumerate_solutions(game_to_hypergraph(g3)).solutions.size(), 6u);
}

TEST(GameToHypergraph, MirrorSharesGadget) {
  SynchronousGame g({"x", "y"}, {"0", "1"});
  g.add_synchronicity();
  auto base = game_to_hypergraph(g).num_vertices();
  g.forbid(0, 1, 0, 1);
  EXPECT_EQ(game_to_hypergraph(g).num_vertices(), base + 1);
  g.forbid(1, 0, 1, 0);
  EXPECT_EQ(game_to_hypergraph(g).num_vertices(), base + 1);
}

TEST(GameToHypergraph, AgreesWithStrategiesRandom) {
  std::mt19937_64 rng(9);
  for (int i = 0; i < 150; ++i) {
    auto g = random_game(rng);
    auto s = perfect_deterministic_strategies(g);
    ASSERT_FALSE(s.cap_exceeded);
    EXPECT_EQ(enumerate_solutions(game_to_hypergraph(g)).solutions.size(), s.strategies.size());
    auto p = perfect_deterministic_strategies(g, {.propagate = true});
    EXPECT_EQ(p.strategies, s.strategies);
  }
}

TEST(HypergraphToGame, Examples) {
  auto single = hypergraph_to_game(parse_hypergraph("edge a b c"));
  EXPECT_EQ(single.game.inputs().size(), 1u);
  EXPECT_EQ(perfect_deterministic_strategies(single.game).strategies.size(), 3u);

  auto shared = hypergraph_to_game(parse_hypergraph("edge t u v\nedge u w z"));
  auto st = perfect_deterministic_strategies(shared.game).strategies;
  EXPECT_EQ(st.size(), 5u);
  auto u = shared.reduct.id("u");
  for (const auto& s : st) EXPECT_EQ(shared.slots[0][s[0]] == u, shared.slots[1][s[1]] == u);

  auto tri = hypergraph_to_game(oracle::triangle());
  EXPECT_TRUE(perfect_deterministic_strategies(tri.game, {.propagate = true}).strategies.empty());
  EXPECT_TRUE(validate_game(tri.game).empty());
}

TEST(HypergraphToGame, RoundTripRandom) {
  std::mt19937_64 rng(10);
  for (int i = 0; i < 60; ++i) {
    auto h = oracle::random_hypergraph(rng);
    auto hg = hypergraph_to_game(h);
    EXPECT_TRUE(validate_game(hg.game).empty());
    EXPECT_TRUE(lambda_symmetric(hg.game));
    auto st = perfect_deterministic_strategies(hg.game, {.propagate = true});
    ASSERT_FALSE(st.cap_exceeded);
    auto want = oracle::brute_force_exact_one(h);
    EXPECT_EQ(st.strategies.size(), want.size()) << serialize_hypergraph(h);
    // The chosen vertices form an exact-one assignment of the reduct.
    for (const auto& s : st.strategies) {
      Assignment a(hg.reduct.num_vertices(), false);
      for (std::size_t x = 0; x < s.size(); ++x) a[hg.slots[x][s[x]]] = true;
      EXPECT_TRUE(is_exact_one(hg.reduct, a)) << serialize_hypergraph(h);
    }
  }
}

TEST(Strategies, SynchronicityOnly) {
  SynchronousGame g({"x", "y"}, {"0", "1"});
  g.add_synchronicity();
  auto s = perfect_deterministic_strategies(g).strategies;
  EXPECT_EQ(s, (std::vector<DeterministicStrategy>{{0, 0}, {0, 1}, {1, 0}, {1, 1}}));
}

TEST(Strategies, CapIsExplicit) {
  std::vector<std::string> in;
  for (int i = 0; i < 30; ++i) in.push_back("x" + std::to_string(i));
  SynchronousGame g(in, {"0", "1"});
  g.add_synchronicity();
  auto s = perfect_deterministic_strategies(g);
  EXPECT_TRUE(s.cap_exceeded);
  EXPECT_TRUE(s.strategies.empty());
  auto p = perfect_deterministic_strategies(g, {.cap = 100, .propagate = true});
  EXPECT_TRUE(p.cap_exceeded);
  EXPECT_EQ(p.strategies.size(), 100u);
}
