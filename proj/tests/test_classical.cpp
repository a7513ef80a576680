#include <gtest/gtest.h>

#include <random>

#include "hyc/builders.hpp"
#include "hyc/classical.hpp"
#include "hyc/hg_io.hpp"
#include "support/oracles.hpp"

using namespace hyc;

namespace {

std::vector<oracle::NamedAssignment> named(const Hypergraph& h, const std::vector<Assignment>& sols) {
  std::vector<oracle::NamedAssignment> out;
  for (const auto& a : sols) {
    oracle::NamedAssignment m;
    for (VertexId v = 0; v < h.num_vertices(); ++v) m[h.name(v)] = a[v];
    out.push_back(std::move(m));
  }
  return out;
}

}  // namespace

TEST(SolveExactOne, SingleEdgePicksFirstName) {
  auto h = parse_hypergraph("edge c b a");
  auto s = solve_exact_one(h);
  ASSERT_TRUE(s);
  EXPECT_EQ(format_assignment(h, *s), "a=1 b=0 c=0");
}

TEST(SolveExactOne, TriangleUnsat) { EXPECT_FALSE(solve_exact_one(oracle::triangle())); }

TEST(SolveExactOne, EmptyEdgeUnsat) {
  EXPECT_FALSE(solve_exact_one(parse_hypergraph("edge a b\nedge\n")));
  EXPECT_TRUE(enumerate_solutions(parse_hypergraph("edge\n")).solutions.empty());
}

TEST(Enumerate, Examples) {
  EXPECT_EQ(enumerate_solutions(build_qperm(3)).solutions.size(), 6u);
  auto z = build_zero_gadget();
  auto sols = enumerate_solutions(z).solutions;
  ASSERT_EQ(sols.size(), 1u);
  EXPECT_EQ(format_assignment(z, sols[0]), "a=0 b=0 c=1 v=0");
  for (std::size_t n = 1; n <= 6; ++n) EXPECT_EQ(enumerate_solutions(build_free_product({n})).solutions.size(), n);
}

TEST(Enumerate, CapIsReported) {
  auto e = enumerate_solutions(build_qperm(4), 10);
  EXPECT_TRUE(e.cap_exceeded);
  EXPECT_EQ(e.solutions.size(), 10u);
  auto full = enumerate_solutions(build_qperm(4), 24);
  EXPECT_FALSE(full.cap_exceeded);
  EXPECT_EQ(full.solutions.size(), 24u);
}

TEST(Enumerate, LexicographicOrder) {
  auto h = parse_hypergraph("edge b a c\nedge d c");
  auto sols = enumerate_solutions(h).solutions;
  std::vector<std::string> lines;
  for (const auto& s : sols) lines.push_back(format_assignment(h, s));
  EXPECT_EQ(lines, (std::vector<std::string>{"a=0 b=0 c=1 d=0", "a=0 b=1 c=0 d=1", "a=1 b=0 c=0 d=1"}));
}

TEST(Enumerate, AgreesWithBruteForce) {
  std::mt19937_64 rng(3);
  oracle::RandomHypergraphOptions opt;
  opt.max_vertices = 12;
  opt.max_edges = 7;
  opt.max_edge_size = 5;
  for (int i = 0; i < 300; ++i) {
    auto h = oracle::random_hypergraph(rng, opt);
    auto expected = oracle::brute_force_exact_one(h);
    auto got = named(h, enumerate_solutions(h).solutions);
    std::sort(got.begin(), got.end());
    EXPECT_EQ(got, expected);
    auto one = solve_exact_one(h);
    EXPECT_EQ(one.has_value(), !expected.empty());
    if (one) { EXPECT_TRUE(is_exact_one(h, *one)); }
  }
}

TEST(Format, ProjectionHidesGadgetVertices) {
  auto h = parse_hypergraph("edge a _g1\n", {.allow_reserved = true});
  Assignment a{true, false};
  EXPECT_EQ(format_assignment(h, a, true), "a=1");
  EXPECT_EQ(format_assignment(h, a, false), "_g1=0 a=1");
}
