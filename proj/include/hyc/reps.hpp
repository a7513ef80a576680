#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <atomic>
#include <cmath>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "hyc/classical.hpp"
#include "hyc/error.hpp"
#include "hyc/hypergraph.hpp"
#include "hyc/linalg.hpp"
#include "hyc/representation.hpp"

namespace hyc {

struct RepCheck {
  bool ok = true;
  std::vector<std::string> violations;
};

// Rational input is checked exactly and tol is ignored.
template <class T>
RepCheck verify_representation(const Hypergraph& h, const Representation<T>& rep, double tol = 1e-9) {
  const std::size_t d = rep.dim;
  for (const auto& v : h.vertices()) {
    auto it = rep.mats.find(v);
    if (it == rep.mats.end()) throw InvalidArgument("representation has no matrix for '" + v + "'");
    if (it->second.rows() != d || it->second.cols() != d)
      throw InvalidArgument("matrix for '" + v + "' is not " + std::to_string(d) + "x" + std::to_string(d));
  }
  RepCheck out;
  auto bad = [&](const DenseMatrix<T>& m) {
    if constexpr (std::is_same_v<T, Rational>) return !m.is_zero();
    else return operator_norm(m) > tol;
  };
  auto norm_text = [&](const DenseMatrix<T>& m) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", operator_norm(m));
    return std::string(buf);
  };
  for (const auto& v : h.vertices()) {
    const auto& p = rep.mats.at(v);
    DenseMatrix<T> idem = p * p - p;
    if (bad(idem)) out.violations.push_back("P_" + v + " is not idempotent (norm " + norm_text(idem) + ")");
    DenseMatrix<T> sym = p - p.transpose();
    if (bad(sym)) out.violations.push_back("P_" + v + " is not symmetric (norm " + norm_text(sym) + ")");
  }
  for (std::size_t e = 0; e < h.num_edges(); ++e) {
    DenseMatrix<T> s = DenseMatrix<T>(d, d) - DenseMatrix<T>::identity(d);
    for (VertexId v : h.edge(e)) s += rep.mats.at(h.name(v));
    if (bad(s)) out.violations.push_back("edge " + std::to_string(e + 1) + " does not sum to the identity (norm " + norm_text(s) + ")");
  }
  out.ok = out.violations.empty();
  return out;
}

// Diagonal representation: entry t of P_v is assignments[t][v].
inline Representation<Rational> classical_to_representation(const Hypergraph& h, const std::vector<Assignment>& sols) {
  if (sols.empty()) throw InvalidArgument("need at least one assignment");
  Representation<Rational> r;
  r.dim = sols.size();
  for (const auto& a : sols)
    if (a.size() != h.num_vertices()) throw InvalidArgument("assignment size does not match the hypergraph");
  for (VertexId v = 0; v < h.num_vertices(); ++v) {
    DenseMatrix<Rational> m(r.dim, r.dim);
    for (std::size_t t = 0; t < sols.size(); ++t) m(t, t) = sols[t][v] ? 1 : 0;
    r.mats.emplace(h.name(v), std::move(m));
  }
  return r;
}

template <class T>
Representation<T> direct_sum(const Representation<T>& a, const Representation<T>& b) {
  Representation<T> out;
  out.dim = a.dim + b.dim;
  for (const auto& [v, m] : a.mats) {
    auto it = b.mats.find(v);
    if (it == b.mats.end()) throw InvalidArgument("'" + v + "' missing from the second representation");
    DenseMatrix<T> s(out.dim, out.dim);
    for (std::size_t i = 0; i < a.dim; ++i)
      for (std::size_t j = 0; j < a.dim; ++j) s(i, j) = m(i, j);
    for (std::size_t i = 0; i < b.dim; ++i)
      for (std::size_t j = 0; j < b.dim; ++j) s(a.dim + i, a.dim + j) = it->second(i, j);
    out.mats.emplace(v, std::move(s));
  }
  return out;
}

// f(P) = sum_v |P_v^2 - P_v|^2 + sum_v |P_v - P_v^T|^2 + sum_e |sum_{v in e} P_v - I|^2
// (Frobenius norms). Parameters are the matrices in vertex order, stacked.
class RepObjective {
 public:
  RepObjective(const Hypergraph& h, std::size_t dim) : h_(h), d_(dim) {}

  std::size_t dim() const { return d_; }
  std::size_t num_params() const { return h_.num_vertices() * d_ * d_; }

  Eigen::Map<const Eigen::MatrixXd> mat(const Eigen::VectorXd& x, VertexId v) const {
    return Eigen::Map<const Eigen::MatrixXd>(x.data() + v * d_ * d_, d_, d_);
  }

  double value(const Eigen::VectorXd& x) const { return evaluate(x, nullptr); }

  double value_and_gradient(const Eigen::VectorXd& x, Eigen::VectorXd& g) const {
    g.setZero(x.size());
    return evaluate(x, &g);
  }

  Representation<double> to_representation(const Eigen::VectorXd& x) const {
    Representation<double> r;
    r.dim = d_;
    for (VertexId v = 0; v < h_.num_vertices(); ++v) r.mats.emplace(h_.name(v), from_eigen(mat(x, v)));
    return r;
  }

 private:
  double evaluate(const Eigen::VectorXd& x, Eigen::VectorXd* g) const {
    double f = 0;
    const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(d_, d_);
    for (VertexId v = 0; v < h_.num_vertices(); ++v) {
      auto p = mat(x, v);
      Eigen::MatrixXd r = p * p - p;
      Eigen::MatrixXd a = p - p.transpose();
      f += r.squaredNorm() + a.squaredNorm();
      if (g) {
        Eigen::Map<Eigen::MatrixXd> gv(g->data() + v * d_ * d_, d_, d_);
        gv += 2 * (r * p.transpose() + p.transpose() * r - r) + 4 * a;
      }
    }
    for (const auto& e : h_.edges()) {
      Eigen::MatrixXd s = -id;
      for (VertexId v : e) s += mat(x, v);
      f += s.squaredNorm();
      if (g)
        for (VertexId v : e) {
          Eigen::Map<Eigen::MatrixXd> gv(g->data() + v * d_ * d_, d_, d_);
          gv += 2 * s;
        }
    }
    return f;
  }

  const Hypergraph& h_;
  std::size_t d_;
};

struct SearchOptions {
  std::uint64_t seed = 0;
  std::size_t starts = 8;
  std::size_t max_iters = 20000;
  std::size_t jobs = 1;
  double target = 1e-18;
  double tol = 1e-9;
};

struct SearchResult {
  bool found = false;
  Representation<double> rep;  // best point reached, verified only when found
  double objective = 0;
  std::size_t start = 0;
  std::size_t iterations = 0;
};

namespace detail {

struct StartOutcome {
  Eigen::VectorXd x;
  double f = 0;
  std::size_t iterations = 0;
};

// Gradient descent with Barzilai-Borwein steps and Armijo backtracking.
inline StartOutcome descend(const RepObjective& obj, std::uint64_t seed, const SearchOptions& opt) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const std::size_t d = obj.dim();
  Eigen::VectorXd x(obj.num_params());
  for (std::size_t k = 0; k < x.size() / (d * d); ++k) {
    Eigen::MatrixXd a(d, d);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) a(i, j) = gauss(rng);
    Eigen::MatrixXd s = (a + a.transpose()) / (2.0 * std::sqrt(double(d))) + 0.5 * Eigen::MatrixXd::Identity(d, d);
    x.segment(k * d * d, d * d) = Eigen::Map<Eigen::VectorXd>(s.data(), d * d);
  }
  Eigen::VectorXd g, gn;
  double f = obj.value_and_gradient(x, g);
  double step = 0.1;
  StartOutcome out;
  std::size_t it = 0;
  double checkpoint = f;
  for (; it < opt.max_iters && f >= opt.target; ++it) {
    // Give up on a start that has stalled.
    if (it > 0 && it % 1000 == 0) {
      if (f > checkpoint * (1 - 1e-6)) break;
      checkpoint = f;
    }
    const double gg = g.squaredNorm();
    if (gg == 0) break;
    double a = step;
    Eigen::VectorXd xn;
    double fn = 0;
    bool accepted = false;
    for (int bt = 0; bt < 60; ++bt) {
      xn = x - a * g;
      fn = obj.value_and_gradient(xn, gn);
      if (fn <= f - 1e-4 * a * gg) {
        accepted = true;
        break;
      }
      a *= 0.5;
    }
    if (!accepted) break;
    Eigen::VectorXd s = xn - x, y = gn - g;
    const double sy = s.dot(y);
    step = sy > 0 ? std::clamp(s.squaredNorm() / sy, 1e-10, 1e10) : std::min(2 * a, 1e10);
    x = std::move(xn);
    g = gn;
    f = fn;
  }
  out.x = std::move(x);
  out.f = f;
  out.iterations = it;
  return out;
}

}  // namespace detail

// Multi-start numerical search for a d-dimensional representation. FOUND is
// self-certifying (objective below target and verification at tol);
// NOT_FOUND says nothing about existence.
inline SearchResult search_representation(const Hypergraph& h, std::size_t d, const SearchOptions& opt = {}) {
  if (d == 0) throw InvalidArgument("dimension must be at least 1");
  if (opt.starts == 0) throw InvalidArgument("need at least one start");
  RepObjective obj(h, d);
  std::mt19937_64 master(opt.seed);
  std::vector<std::uint64_t> seeds(opt.starts);
  for (auto& s : seeds) s = master();

  std::vector<detail::StartOutcome> results(opt.starts);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k; (k = next++) < opt.starts;) results[k] = detail::descend(obj, seeds[k], opt);
  };
  const std::size_t jobs = std::max<std::size_t>(1, std::min(opt.jobs, opt.starts));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  std::size_t best = 0;
  for (std::size_t k = 1; k < results.size(); ++k)
    if (results[k].f < results[best].f) best = k;
  SearchResult out;
  out.start = best;
  out.objective = results[best].f;
  out.iterations = results[best].iterations;
  out.rep = obj.to_representation(results[best].x);
  out.found = out.objective < opt.target && verify_representation(h, out.rep, opt.tol).ok;
  return out;
}

inline double commutator_norm(const DenseMatrix<double>& a, const DenseMatrix<double>& b) {
  return operator_norm(a * b - b * a);
}

}  // namespace hyc
