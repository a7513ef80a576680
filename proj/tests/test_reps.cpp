#include <gtest/gtest.h>

#include <random>

#include "hyc/builders.hpp"
#include "hyc/classical.hpp"
#include "hyc/hg_io.hpp"
#include "hyc/reps.hpp"
#include "hyc/sdp.hpp"
#include "hyc/transforms.hpp"
#include "support/oracles.hpp"

using namespace hyc;

namespace {

// Latin-square layout: P_{i,j} = e_k e_k^T with k = j - i mod 3.
Representation<Rational> latin_qperm3() {
  Representation<Rational> r;
  r.dim = 3;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      DenseMatrix<Rational> m(3, 3);
      std::size_t k = (j + 3 - i) % 3;
      m(k, k) = 1;
      r.mats.emplace(qperm_name(i, j), std::move(m));
    }
  return r;
}

double relative_gradient_error(const RepObjective& obj, const Eigen::VectorXd& x) {
  Eigen::VectorXd g;
  obj.value_and_gradient(x, g);
  Eigen::VectorXd fd(x.size());
  const double h = 1e-6;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    Eigen::VectorXd xp = x, xm = x;
    xp(i) += h;
    xm(i) -= h;
    fd(i) = (obj.value(xp) - obj.value(xm)) / (2 * h);
  }
  return (fd - g).norm() / std::max(g.norm(), 1e-300);
}

}  // namespace

TEST(Verify, DiagonalFromClassicalIsExact) {
  auto h = build_qperm(3);
  auto sols = enumerate_solutions(h).solutions;
  ASSERT_EQ(sols.size(), 6u);
  auto rep = classical_to_representation(h, sols);
  EXPECT_EQ(rep.dim, 6u);
  EXPECT_TRUE(verify_representation(h, rep).ok);
  auto one = classical_to_representation(h, {sols[0]});
  EXPECT_EQ(one.dim, 1u);
  EXPECT_TRUE(verify_representation(h, one).ok);
  EXPECT_THROW(classical_to_representation(h, {}), InvalidArgument);
  EXPECT_THROW(classical_to_representation(h, {Assignment(2, false)}), InvalidArgument);
}

TEST(Verify, SingleTwoEdge) {
  auto h = parse_hypergraph("edge a b");
  auto rep = classical_to_representation(h, enumerate_solutions(h).solutions);
  ASSERT_EQ(rep.dim, 2u);
  EXPECT_EQ(rep.at("a") + rep.at("b"), DenseMatrix<Rational>::identity(2));
  EXPECT_EQ(rep.at("a") * rep.at("b"), DenseMatrix<Rational>(2, 2));
}

TEST(Verify, LatinSquareQuantumPermutation) {
  auto h = build_qperm(3);
  EXPECT_TRUE(verify_representation(h, latin_qperm3()).ok);
  EXPECT_TRUE(verify_representation(h, to_double(latin_qperm3())).ok);
}

TEST(Verify, ReportsPerturbation) {
  auto h = build_qperm(3);
  auto rep = to_double(latin_qperm3());
  rep.mats.at(qperm_name(0, 0))(0, 1) += 1e-3;
  auto check = verify_representation(h, rep);
  EXPECT_FALSE(check.ok);
  EXPECT_GE(check.violations.size(), 2u);  // symmetry, idempotency and two edges
  auto exact = latin_qperm3();
  exact.mats.at(qperm_name(1, 1))(1, 1) = Rational(1, 1000);
  EXPECT_FALSE(verify_representation(h, exact).ok);
}

TEST(Verify, DimensionErrors) {
  auto h = build_qperm(2);
  auto rep = to_double(classical_to_representation(h, enumerate_solutions(h).solutions));
  rep.mats.at(qperm_name(0, 0)) = DenseMatrix<double>(3, 3);
  EXPECT_THROW(verify_representation(h, rep), InvalidArgument);
  rep.mats.erase(qperm_name(0, 0));
  EXPECT_THROW(verify_representation(h, rep), InvalidArgument);
}

TEST(Verify, DirectSums) {
  auto h = build_qperm(3);
  auto sum = direct_sum(latin_qperm3(), classical_to_representation(h, enumerate_solutions(h).solutions));
  EXPECT_EQ(sum.dim, 9u);
  EXPECT_TRUE(verify_representation(h, sum).ok);
  auto found = search_representation(h, 3);
  ASSERT_TRUE(found.found);
  EXPECT_TRUE(verify_representation(h, direct_sum(found.rep, to_double(latin_qperm3()))).ok);
}

TEST(Verify, ClassicalTraceIsTraciallyFeasible) {
  auto h = build_qperm(3);
  auto rep = classical_to_representation(h, enumerate_solutions(h).solutions);
  for (std::size_t k : {1u, 2u}) {
    auto m = build_moment_problem(h, k, true);
    auto c = check_moment_matrix(m, induced_trace_moment_matrix(h, rep, k));
    EXPECT_EQ(c.constraint_violation, 0.0);
    EXPECT_TRUE(c.psd_exact);
  }
}

TEST(Objective, GradientMatchesFiniteDifferences) {
  std::mt19937_64 rng(12);
  std::normal_distribution<double> gauss;
  for (int i = 0; i < 20; ++i) {
    auto h = oracle::random_hypergraph(rng);
    const std::size_t d = 1 + i % 4;
    RepObjective obj(h, d);
    Eigen::VectorXd x(obj.num_params());
    for (Eigen::Index k = 0; k < x.size(); ++k) x(k) = gauss(rng);
    EXPECT_LE(relative_gradient_error(obj, x), 1e-5) << "instance " << i << " d=" << d;
  }
}

TEST(Objective, ZeroExactlyOnRepresentations) {
  auto h = build_qperm(3);
  RepObjective obj(h, 3);
  Eigen::VectorXd x(obj.num_params());
  auto rep = to_double(latin_qperm3());
  for (VertexId v = 0; v < h.num_vertices(); ++v) {
    auto m = to_eigen(rep.at(h.name(v)));
    x.segment(v * 9, 9) = Eigen::Map<Eigen::VectorXd>(m.data(), 9);
  }
  Eigen::VectorXd g;
  EXPECT_EQ(obj.value_and_gradient(x, g), 0.0);
  EXPECT_EQ(g.norm(), 0.0);
}

TEST(Search, SingleEdge) {
  auto h = parse_hypergraph("edge a b c");
  auto r = search_representation(h, 3);
  ASSERT_TRUE(r.found);
  EXPECT_LT(r.objective, 1e-18);
  EXPECT_TRUE(verify_representation(h, r.rep).ok);
}

TEST(Search, TriangleNeverFound) {
  auto h = oracle::triangle();
  for (std::size_t d : {1u, 2u, 3u}) {
    auto r = search_representation(h, d);
    EXPECT_FALSE(r.found);
    EXPECT_GT(r.objective, 0.1);
  }
}

TEST(Search, QuantumPermutationTwoCommutes) {
  auto h = build_qperm(2);
  auto r = search_representation(h, 2);
  ASSERT_TRUE(r.found);
  EXPECT_LE(commutator_norm(r.rep.at(qperm_name(0, 0)), r.rep.at(qperm_name(0, 1))), 1e-8);
}

TEST(Search, CommuteGadgetForcesCommutation) {
  auto base = parse_hypergraph("edge a b\nedge c d");
  auto h = impose_relation(base, Relation::commute("a", "c"));
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    SearchOptions opt;
    opt.seed = seed;
    auto r = search_representation(h, 2, opt);
    ASSERT_TRUE(r.found) << "seed " << seed;
    EXPECT_LE(commutator_norm(r.rep.at("a"), r.rep.at("c")), 1e-8);
  }
}

TEST(Search, DeterministicAcrossJobs) {
  auto h = build_qperm(3);
  SearchOptions one, four;
  one.seed = four.seed = 42;
  four.jobs = 4;
  auto a = search_representation(h, 3, one);
  auto b = search_representation(h, 3, four);
  EXPECT_EQ(a.start, b.start);
  EXPECT_EQ(a.objective, b.objective);
  EXPECT_EQ(serialize_representation(a.rep), serialize_representation(b.rep));
  auto c = search_representation(h, 3, one);
  EXPECT_EQ(serialize_representation(a.rep), serialize_representation(c.rep));
}

TEST(Search, FoundIsSelfCertifying) {
  std::mt19937_64 rng(17);
  int found = 0;
  for (int i = 0; i < 30; ++i) {
    auto h = oracle::random_hypergraph(rng);
    SearchOptions opt;
    opt.starts = 3;
    opt.seed = i;
    auto r = search_representation(h, 2, opt);
    if (!r.found) continue;
    ++found;
    EXPECT_TRUE(verify_representation(h, r.rep).ok);
    EXPECT_FALSE(oracle::brute_force_exact_one(h).empty()) << serialize_hypergraph(h);
  }
  EXPECT_GT(found, 10);
}

TEST(Search, RejectsZeroDimension) {
  EXPECT_THROW(search_representation(oracle::triangle(), 0), InvalidArgument);
}
