#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>
#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <nlohmann/json.hpp>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "hyc/algebra.hpp"
#include "hyc/error.hpp"
#include "hyc/hypergraph.hpp"
#include "hyc/linalg.hpp"
#include "hyc/rational.hpp"
#include "hyc/representation.hpp"

namespace hyc {

// All reduced (non-ZERO) words of length <= max_len, shortest first.
inline std::vector<Word> reduced_words(const Hypergraph& h, std::size_t max_len) {
  std::vector<Word> out{Word{}};
  std::size_t begin = 0;
  for (std::size_t len = 1; len <= max_len; ++len) {
    const std::size_t end = out.size();
    for (std::size_t i = begin; i < end; ++i) {
      for (VertexId v = 0; v < h.num_vertices(); ++v) {
        const Word& w = out[i];
        if (!w.empty() && (w.back() == v || h.co_edge(w.back(), v))) continue;
        Word x = w;
        x.push_back(v);
        out.push_back(std::move(x));
      }
    }
    begin = end;
  }
  std::sort(out.begin(), out.end(), WordLess{});
  return out;
}

// Representative of {w, reverse(w)}.
inline Word canonical_word(const Word& w) {
  Word r = reversed(w);
  return WordLess{}(r, w) ? r : w;
}

struct MomentConstraint {
  enum class Kind { unit, tracial, relation };
  Kind kind = Kind::unit;
  SparseRow coeffs;  // over moment variables
  Rational rhs;
  std::size_t stage = 0;  // 0: unit and tracial; 1 + |u| + |w| for relations
  std::size_t edge = 0;
  Word left, right;  // u and w for relations; the word and its rotation for tracial
};

// NPA-style moment relaxation of level k. Entry (i,j) of the moment matrix is
// the variable of reduce(reverse(basis[i]) basis[j]); ZERO entries are the
// constant 0.
struct MomentProblem {
  static constexpr std::size_t kZero = static_cast<std::size_t>(-1);
  static constexpr std::size_t kOutside = static_cast<std::size_t>(-2);

  Hypergraph h;
  std::size_t level = 1;
  bool tracial = false;
  std::vector<Word> basis;
  std::vector<Word> variables;  // variables[0] is the empty word
  std::map<Word, std::size_t, WordLess> variable_index;
  std::vector<std::size_t> entries;  // row-major, kZero for ZERO
  std::vector<MomentConstraint> constraints;
  std::vector<std::size_t> stage_end;  // constraints of stage s are [stage_end[s-1], stage_end[s])

  std::size_t size() const { return basis.size(); }
  std::size_t entry(std::size_t i, std::size_t j) const { return entries[i * basis.size() + j]; }

  // Variable of a word, kZero if it reduces to ZERO, kOutside if too long.
  std::size_t lookup(const Word& z) const {
    auto r = reduce_word(h, z);
    if (!r) return kZero;
    if (r->size() > 2 * level) return kOutside;
    return variable_index.at(canonical_word(*r));
  }

  std::string word_string(const Word& w) const {
    if (w.empty()) return "1";
    std::string s;
    for (std::size_t i = 0; i < w.size(); ++i) s += (i ? "." : "") + h.name(w[i]);
    return s;
  }

  std::string describe(std::size_t c) const {
    const auto& k = constraints.at(c);
    switch (k.kind) {
      case MomentConstraint::Kind::unit:
        return "unit";
      case MomentConstraint::Kind::tracial:
        return "tracial " + word_string(k.left) + " ~ " + word_string(k.right);
      case MomentConstraint::Kind::relation:
        return "edge " + std::to_string(k.edge + 1) + " u=" + word_string(k.left) + " w=" + word_string(k.right);
    }
    return {};
  }
};

inline MomentProblem build_moment_problem(const Hypergraph& h, std::size_t level, bool tracial) {
  if (level == 0) throw InvalidArgument("moment level must be at least 1");
  MomentProblem m;
  m.h = h;
  m.level = level;
  m.tracial = tracial;
  m.basis = reduced_words(h, level);
  const std::size_t n = m.basis.size();

  std::vector<Word> canon(n * n);
  std::vector<bool> zero(n * n, false);
  std::set<Word, WordLess> vars;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      auto z = reduce_word(h, concat(reversed(m.basis[i]), m.basis[j]));
      if (!z) {
        zero[i * n + j] = true;
        continue;
      }
      canon[i * n + j] = canonical_word(*z);
      vars.insert(canon[i * n + j]);
    }
  for (const auto& w : vars) {
    m.variable_index.emplace(w, m.variables.size());
    m.variables.push_back(w);
  }
  m.entries.resize(n * n);
  for (std::size_t k = 0; k < n * n; ++k) m.entries[k] = zero[k] ? MomentProblem::kZero : m.variable_index.at(canon[k]);

  std::set<SparseRow> seen;
  auto emit = [&](std::map<std::size_t, Rational> acc, MomentConstraint c) {
    SparseRow row;
    for (auto& [v, a] : acc)
      if (a != 0) row.emplace_back(v, a);
    if (row.empty()) return;
    if (c.rhs == 0) {
      const Rational f = 1 / row.front().second;
      for (auto& [v, a] : row) a *= f;
    }
    if (c.rhs == 0 && !seen.insert(row).second) return;
    c.coeffs = std::move(row);
    m.constraints.push_back(std::move(c));
  };

  m.constraints.push_back({MomentConstraint::Kind::unit, {{0, Rational(1)}}, Rational(1), 0, 0, {}, {}});
  if (tracial) {
    for (std::size_t j = 0; j < m.variables.size(); ++j) {
      const Word& w = m.variables[j];
      if (w.size() < 2) continue;
      for (const Word& z : {w, reversed(w)}) {
        Word rot(z.begin() + 1, z.end());
        rot.push_back(z.front());
        std::size_t r = m.lookup(rot);
        if (r == MomentProblem::kOutside || r == j) continue;
        std::map<std::size_t, Rational> acc{{j, Rational(1)}};
        if (r != MomentProblem::kZero) acc[r] -= 1;
        emit(std::move(acc), {MomentConstraint::Kind::tracial, {}, Rational(0), 0, 0, z, rot});
      }
    }
  }
  m.stage_end.push_back(m.constraints.size());

  const auto words = reduced_words(h, 2 * level - 1);
  for (std::size_t s = 0; s + 1 <= 2 * level; ++s) {
    for (const Word& u : words) {
      if (u.size() > s) break;
      for (const Word& w : words) {
        if (u.size() + w.size() > s) break;
        if (u.size() + w.size() != s) continue;
        for (std::size_t e = 0; e < h.num_edges(); ++e) {
          std::map<std::size_t, Rational> acc;
          bool ok = true;
          auto add = [&](const Word& z, int sign) {
            std::size_t v = m.lookup(z);
            if (v == MomentProblem::kOutside) ok = false;
            else if (v != MomentProblem::kZero) acc[v] += sign;
          };
          for (VertexId v : h.edge(e)) {
            Word z = u;
            z.push_back(v);
            z.insert(z.end(), w.begin(), w.end());
            add(z, 1);
          }
          add(concat(u, w), -1);
          if (!ok) continue;
          emit(std::move(acc), {MomentConstraint::Kind::relation, {}, Rational(0), s + 1, e, u, w});
        }
      }
    }
    m.stage_end.push_back(m.constraints.size());
  }
  return m;
}

// Dual certificate: rational weights y over the constraints and a rational
// PSD matrix S whose entries, summed per moment variable, equal A^T y.
// Then <S, X> = y^T b < 0 for any feasible X, contradicting <S, X> >= 0.
struct FarkasCertificate {
  std::size_t level = 1;
  bool tracial = false;
  std::size_t num_constraints = 0;
  SparseRow weights;  // (constraint index, y_i)
  DenseMatrix<Rational> s;
};

struct CertificateCheck {
  bool accepted = false;
  std::string reason;
};

inline CertificateCheck verify_certificate(const MomentProblem& m, const FarkasCertificate& c) {
  const std::size_t n = m.size();
  if (c.level != m.level || c.tracial != m.tracial)
    return {false, "certificate is for a different level or tracial setting"};
  if (c.num_constraints != m.constraints.size())
    return {false, "certificate expects " + std::to_string(c.num_constraints) + " constraints, problem has " +
                       std::to_string(m.constraints.size())};
  if (c.s.rows() != n || c.s.cols() != n) return {false, "matrix S has the wrong size"};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (c.s(i, j) != c.s(j, i)) return {false, "S is not symmetric"};

  std::vector<Rational> aty(m.variables.size(), Rational(0));
  Rational objective = 0;
  for (const auto& [i, y] : c.weights) {
    if (i >= m.constraints.size()) return {false, "weight for unknown constraint " + std::to_string(i)};
    for (const auto& [j, a] : m.constraints[i].coeffs) aty[j] += y * a;
    objective += y * m.constraints[i].rhs;
  }
  std::vector<Rational> sums(m.variables.size(), Rational(0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (m.entry(i, j) != MomentProblem::kZero) sums[m.entry(i, j)] += c.s(i, j);
  for (std::size_t j = 0; j < sums.size(); ++j)
    if (sums[j] != aty[j])
      return {false, "entries of S for moment " + m.word_string(m.variables[j]) + " sum to " + sums[j].get_str() +
                         ", weighted constraints give " + aty[j].get_str()};
  auto psd = check_psd_exact(c.s);
  if (!psd.psd) return {false, "S is not positive semidefinite: " + psd.reason};
  if (objective >= 0) return {false, "objective y^T b = " + objective.get_str() + " is nonnegative"};
  return {true, {}};
}

struct Tolerances {
  double eig = 1e-6;
  double feas = 1e-8;
  double plateau_rel = 1e-12;
  std::size_t plateau_window = 500;
  double plateau_floor = 1e-4;
  std::size_t max_iters = 100000;
  bool eigen_certificates = true;  // off: only inconsistency certifies in phase 1
  bool face_reduction = true;
};

enum class Verdict { feasible_approx, certified_infeasible, likely_infeasible, inconclusive };

inline std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::feasible_approx:
      return "FEASIBLE_APPROX";
    case Verdict::certified_infeasible:
      return "CERTIFIED_INFEASIBLE";
    case Verdict::likely_infeasible:
      return "LIKELY_INFEASIBLE";
    case Verdict::inconclusive:
      return "INCONCLUSIVE";
  }
  return {};
}

struct FeasibilityResult {
  Verdict verdict = Verdict::inconclusive;
  double residual = 0;  // Frobenius norm of the negative part of the matrix
  std::size_t iterations = 0;
  DenseMatrix<double> matrix;
  std::optional<FarkasCertificate> certificate;
  std::vector<double> residual_trace;  // every 100th iteration
  std::size_t stage = 0;               // phase-1 stage that decided, if any
  std::optional<double> forced_min_eigenvalue;
  std::size_t forced_size = 0;
  std::string detail;
};

namespace detail {

struct Phase1 {
  enum class Stop { none, inconsistent, negative };
  Stop stop = Stop::none;
  std::size_t stage = 0;
  std::vector<std::size_t> forced;
  std::optional<double> min_eig;
  Eigen::VectorXd eigvec;
  bool fully_determined = false;
};

inline Phase1 run_phase1(const MomentProblem& m, RationalEliminator& elim, const Tolerances& tol,
                         std::size_t last_stage, bool stop_on_negative = true) {
  Phase1 out;
  const std::size_t n = m.size();
  std::size_t c = 0;
  for (std::size_t s = 0; s < m.stage_end.size() && s <= last_stage; ++s) {
    out.stage = s;
    for (; c < m.stage_end[s]; ++c) elim.insert(m.constraints[c].coeffs, m.constraints[c].rhs, c);
    if (elim.inconsistent()) {
      out.stop = Phase1::Stop::inconsistent;
      return out;
    }
    std::vector<std::optional<Rational>> det(m.variables.size());
    for (std::size_t j = 0; j < det.size(); ++j) det[j] = elim.determined_value(j);
    std::vector<std::size_t> forced;
    for (std::size_t i = 0; i < n; ++i) {
      bool ok = true;
      auto known = [&](std::size_t a, std::size_t b) {
        std::size_t v = m.entry(a, b);
        return v == MomentProblem::kZero || det[v].has_value();
      };
      ok = known(i, i);
      for (std::size_t l : forced) ok = ok && known(i, l);
      if (ok) forced.push_back(i);
    }
    Eigen::MatrixXd x(forced.size(), forced.size());
    for (std::size_t a = 0; a < forced.size(); ++a)
      for (std::size_t b = 0; b < forced.size(); ++b) {
        std::size_t v = m.entry(forced[a], forced[b]);
        x(a, b) = v == MomentProblem::kZero ? 0.0 : det[v]->get_d();
      }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(x);
    out.forced = forced;
    out.min_eig = es.eigenvalues()(0);
    out.fully_determined = forced.size() == n;
    if (stop_on_negative && *out.min_eig < -tol.eig) {
      out.stop = Phase1::Stop::negative;
      out.eigvec = es.eigenvectors().col(0);
      return out;
    }
  }
  return out;
}

inline std::optional<FarkasCertificate> certificate_from_phase1(const MomentProblem& m, const RationalEliminator& elim,
                                                                const Phase1& p) {
  const std::size_t n = m.size();
  FarkasCertificate cert;
  cert.level = m.level;
  cert.tracial = m.tracial;
  cert.num_constraints = m.constraints.size();
  cert.s = DenseMatrix<Rational>(n, n);
  if (p.stop == Phase1::Stop::inconsistent) {
    cert.weights = elim.infeasibility_multipliers();
    if (verify_certificate(m, cert).accepted) return cert;
    return std::nullopt;
  }
  for (int bits : {20, 30, 40, 52}) {
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 2, bits);
    std::vector<Rational> z(p.forced.size());
    for (std::size_t a = 0; a < z.size(); ++a) {
      z[a] = Rational(mpz_class(static_cast<long>(std::llround(std::ldexp(p.eigvec(a), bits)))), scale);
      z[a].canonicalize();
    }
    cert.s = DenseMatrix<Rational>(n, n);
    std::map<std::size_t, Rational> class_sum;
    for (std::size_t a = 0; a < z.size(); ++a)
      for (std::size_t b = 0; b < z.size(); ++b) {
        Rational v = z[a] * z[b];
        cert.s(p.forced[a], p.forced[b]) = v;
        std::size_t var = m.entry(p.forced[a], p.forced[b]);
        if (var != MomentProblem::kZero) class_sum[var] += v;
      }
    SparseRow y;
    for (const auto& [var, c] : class_sum)
      if (c != 0) axpy(y, c, elim.determined_multipliers(var));
    cert.weights = std::move(y);
    if (verify_certificate(m, cert).accepted) return cert;
  }
  return std::nullopt;
}

// Facial reduction by positivity. A reduced row sum c_j m_j = 0 with c_j > 0
// over diagonal entries forces those entries to 0, and a PSD matrix with a
// zero diagonal entry has a zero row. The implied equations are added until
// nothing changes; they make phase 2 strictly feasible in far more cases.
// Returns false if the enlarged system is inconsistent.
inline bool reduce_face(const MomentProblem& m, RationalEliminator& elim, std::vector<Rational>& particular,
                        std::vector<std::size_t>& free_cols, std::vector<SparseRow>& pivot_rows) {
  const std::size_t n = m.size();
  std::vector<std::vector<std::size_t>> diag_rows(m.variables.size());
  for (std::size_t i = 0; i < n; ++i)
    if (m.entry(i, i) != MomentProblem::kZero) diag_rows[m.entry(i, i)].push_back(i);
  std::vector<bool> zeroed(m.variables.size(), false);
  std::size_t origin = m.constraints.size();
  for (bool changed = true; changed;) {
    changed = false;
    std::vector<std::size_t> fresh;
    for (std::size_t p = 0; p < pivot_rows.size(); ++p) {
      const auto& row = pivot_rows[p];
      if (row.empty() || particular[p] != 0) continue;
      bool all = true;
      for (const auto& [c, a] : row) all = all && a > 0 && !diag_rows[c].empty();
      if (!all) continue;
      for (const auto& [c, a] : row)
        if (!zeroed[c]) {
          zeroed[c] = true;
          fresh.push_back(c);
        }
    }
    for (std::size_t j : fresh)
      for (std::size_t i : diag_rows[j])
        for (std::size_t l = 0; l < n; ++l) {
          std::size_t v = m.entry(i, l);
          if (v == MomentProblem::kZero) continue;
          auto out = elim.insert({{v, Rational(1)}}, Rational(0), origin++);
          if (out == RationalEliminator::Outcome::inconsistent) return false;
          changed = changed || out == RationalEliminator::Outcome::independent;
        }
    if (changed) elim.affine_parametrization(particular, free_cols, pivot_rows);
  }
  return true;
}

inline Eigen::MatrixXd assemble(const MomentProblem& m, const Eigen::VectorXd& vals) {
  const std::size_t n = m.size();
  Eigen::MatrixXd x(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      std::size_t v = m.entry(i, j);
      x(i, j) = v == MomentProblem::kZero ? 0.0 : vals(v);
    }
  return x;
}

}  // namespace detail

// Phase 1: constraints are eliminated exactly, stage by stage. After every
// stage an inconsistent system, or a negative eigenvalue of the largest
// principal submatrix whose entries are already determined, yields a
// certificate. Phase 2: alternating projections between the PSD cone and the
// affine set of moment matrices.
inline FeasibilityResult solve_feasibility(const MomentProblem& m, const Tolerances& tol = {}) {
  FeasibilityResult res;
  const std::size_t n = m.size();
  const std::size_t nv = m.variables.size();

  RationalEliminator elim(nv, false);
  auto p1 = detail::run_phase1(m, elim, tol, std::numeric_limits<std::size_t>::max(), tol.eigen_certificates);
  res.forced_min_eigenvalue = p1.min_eig;
  res.forced_size = p1.forced.size();
  if (p1.stop != detail::Phase1::Stop::none) {
    RationalEliminator tracked(nv, true);
    auto again = detail::run_phase1(m, tracked, tol, p1.stage);
    if (auto cert = detail::certificate_from_phase1(m, tracked, again)) {
      res.verdict = Verdict::certified_infeasible;
      res.certificate = std::move(cert);
      res.stage = p1.stage;
      res.detail = p1.stop == detail::Phase1::Stop::inconsistent
                       ? "affine constraints inconsistent"
                       : "forced principal submatrix of size " + std::to_string(p1.forced.size()) +
                             " has a negative eigenvalue";
      return res;
    }
    // Rounding defeated the certificate; fall back to the numerical phase.
    elim = RationalEliminator(nv, false);
    p1 = detail::run_phase1(m, elim, tol, std::numeric_limits<std::size_t>::max(), false);
    res.detail = "certificate rounding failed; ";
  }

  std::vector<Rational> particular;
  std::vector<std::size_t> free_cols;
  std::vector<SparseRow> pivot_rows;
  elim.affine_parametrization(particular, free_cols, pivot_rows);
  if (tol.face_reduction && !detail::reduce_face(m, elim, particular, free_cols, pivot_rows)) {
    res.verdict = Verdict::likely_infeasible;
    res.detail += "positivity of the diagonal makes the affine constraints inconsistent";
    return res;
  }

  Eigen::VectorXd p(nv);
  for (std::size_t j = 0; j < nv; ++j) p(j) = particular[j].get_d();

  if (p1.fully_determined) {
    DenseMatrix<Rational> exact(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (m.entry(i, j) != MomentProblem::kZero) exact(i, j) = particular[m.entry(i, j)];
    Eigen::MatrixXd x = to_eigen(exact);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(x);
    double neg = 0;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
      if (es.eigenvalues()(i) < 0) neg += es.eigenvalues()(i) * es.eigenvalues()(i);
    res.matrix = from_eigen(x);
    res.stage = m.stage_end.size() - 1;
    if (check_psd_exact(exact).psd) {
      res.verdict = Verdict::feasible_approx;
      res.residual = 0;
      res.detail += "moment matrix determined by the constraints and PSD";
    } else {
      res.verdict = Verdict::likely_infeasible;
      res.residual = std::sqrt(neg);
      res.detail += "moment matrix determined by the constraints and not PSD";
    }
    return res;
  }

  // m = p + N t, N sparse over the free columns.
  const std::size_t nf = free_cols.size();
  std::vector<std::size_t> free_index(nv, static_cast<std::size_t>(-1));
  for (std::size_t k = 0; k < nf; ++k) free_index[free_cols[k]] = k;
  std::vector<Eigen::Triplet<double>> trip;
  for (std::size_t j = 0; j < nv; ++j) {
    if (free_index[j] != static_cast<std::size_t>(-1)) {
      trip.emplace_back(j, free_index[j], 1.0);
      continue;
    }
    for (const auto& [c, a] : pivot_rows[j])
      if (c != j) trip.emplace_back(j, free_index[c], -a.get_d());
  }
  Eigen::SparseMatrix<double> nmat(nv, nf);
  nmat.setFromTriplets(trip.begin(), trip.end());

  Eigen::VectorXd weight = Eigen::VectorXd::Zero(nv);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (m.entry(i, j) != MomentProblem::kZero) weight(m.entry(i, j)) += 1;
  Eigen::SparseMatrix<double> wn = weight.asDiagonal() * nmat;
  Eigen::SparseMatrix<double> normal = Eigen::SparseMatrix<double>(nmat.transpose()) * wn;
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt;
  ldlt.compute(normal);
  if (ldlt.info() != Eigen::Success) {
    res.verdict = Verdict::inconclusive;
    res.detail += "least-squares factorization failed";
    return res;
  }

  auto project_affine = [&](const Eigen::MatrixXd& target) {
    Eigen::VectorXd mean = Eigen::VectorXd::Zero(nv);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (m.entry(i, j) != MomentProblem::kZero) mean(m.entry(i, j)) += target(i, j);
    for (std::size_t j = 0; j < nv; ++j)
      if (weight(j) > 0) mean(j) /= weight(j);
    Eigen::VectorXd rhs = wn.transpose() * (mean - p);
    Eigen::VectorXd t = ldlt.solve(rhs);
    return Eigen::VectorXd(p + nmat * t);
  };

  Eigen::VectorXd vals = project_affine(Eigen::MatrixXd::Identity(n, n));
  std::vector<double> history;
  for (std::size_t it = 1; it <= tol.max_iters; ++it) {
    Eigen::MatrixXd x = detail::assemble(m, vals);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(x);
    Eigen::VectorXd lam = es.eigenvalues();
    double neg = 0;
    for (Eigen::Index i = 0; i < lam.size(); ++i)
      if (lam(i) < 0) {
        neg += lam(i) * lam(i);
        lam(i) = 0;
      }
    const double r = std::sqrt(neg);
    history.push_back(r);
    if (it % 100 == 1) res.residual_trace.push_back(r);
    res.iterations = it;
    res.residual = r;
    if (r < tol.feas) {
      res.verdict = Verdict::feasible_approx;
      res.matrix = from_eigen(x);
      res.detail += "alternating projections converged";
      return res;
    }
    if (history.size() > tol.plateau_window) {
      const double old = history[history.size() - 1 - tol.plateau_window];
      if (r > tol.plateau_floor && std::abs(old - r) <= tol.plateau_rel * old) {
        res.verdict = Verdict::likely_infeasible;
        res.matrix = from_eigen(x);
        res.residual_trace.push_back(r);
        res.detail += "residual plateau above " + std::to_string(tol.plateau_floor);
        return res;
      }
    }
    Eigen::MatrixXd psd = es.eigenvectors() * lam.asDiagonal() * es.eigenvectors().transpose();
    vals = project_affine(psd);
  }
  res.verdict = Verdict::inconclusive;
  res.matrix = from_eigen(detail::assemble(m, vals));
  res.residual_trace.push_back(res.residual);
  res.detail += "iteration budget exhausted";
  return res;
}

// Moment matrix of a representation and a unit vector: entry (u,v) is
// <xi, pi(u)^T pi(v) xi>.
template <class T>
DenseMatrix<T> induced_moment_matrix(const Hypergraph& h, const Representation<T>& rep, const std::vector<T>& state,
                                     std::size_t level) {
  const std::size_t d = rep.dim;
  if (state.size() != d) throw InvalidArgument("state vector has dimension " + std::to_string(state.size()) +
                                               ", representation has " + std::to_string(d));
  T norm2 = 0;
  for (const auto& x : state) norm2 += x * x;
  if constexpr (std::is_same_v<T, Rational>) {
    if (norm2 != 1) throw InvalidArgument("state vector is not a unit vector");
  } else {
    if (std::abs(norm2 - 1) > 1e-9) throw InvalidArgument("state vector is not a unit vector");
  }
  for (const auto& v : h.vertices())
    if (rep.at(v).rows() != d || rep.at(v).cols() != d) throw InvalidArgument("matrix for '" + v + "' has the wrong size");
  const auto basis = reduced_words(h, level);
  std::vector<std::vector<T>> images;
  for (const Word& w : basis) {
    std::vector<T> x = state;
    for (auto it = w.rbegin(); it != w.rend(); ++it) {
      const auto& p = rep.at(h.name(*it));
      std::vector<T> y(d, T(0));
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) y[i] += p(i, j) * x[j];
      x = std::move(y);
    }
    images.push_back(std::move(x));
  }
  DenseMatrix<T> out(basis.size(), basis.size());
  for (std::size_t a = 0; a < basis.size(); ++a)
    for (std::size_t b = 0; b < basis.size(); ++b) {
      T s = 0;
      for (std::size_t i = 0; i < d; ++i) s += images[a][i] * images[b][i];
      out(a, b) = s;
    }
  return out;
}

// Same with the normalized trace: entry (u,v) is tr(pi(u)^T pi(v)) / d.
template <class T>
DenseMatrix<T> induced_trace_moment_matrix(const Hypergraph& h, const Representation<T>& rep, std::size_t level) {
  const std::size_t d = rep.dim;
  for (const auto& v : h.vertices())
    if (rep.at(v).rows() != d || rep.at(v).cols() != d) throw InvalidArgument("matrix for '" + v + "' has the wrong size");
  const auto basis = reduced_words(h, level);
  std::vector<DenseMatrix<T>> images;
  for (const Word& w : basis) {
    DenseMatrix<T> x = DenseMatrix<T>::identity(d);
    for (VertexId v : w) x = x * rep.at(h.name(v));
    images.push_back(std::move(x));
  }
  DenseMatrix<T> out(basis.size(), basis.size());
  for (std::size_t a = 0; a < basis.size(); ++a)
    for (std::size_t b = 0; b < basis.size(); ++b) {
      T s = 0;
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) s += images[a](i, j) * images[b](i, j);
      out(a, b) = s / T(static_cast<long>(d));
    }
  return out;
}

struct MomentCheck {
  double constraint_violation = 0;  // max |A m - b|
  double class_spread = 0;          // max deviation inside one variable class
  double zero_violation = 0;        // max |X| on ZERO entries
  double min_eigenvalue = 0;
  bool psd_exact = false;           // only meaningful for rational input
};

template <class T>
MomentCheck check_moment_matrix(const MomentProblem& m, const DenseMatrix<T>& x) {
  const std::size_t n = m.size();
  if (x.rows() != n || x.cols() != n) throw InvalidArgument("moment matrix has the wrong size");
  MomentCheck out;
  std::vector<std::optional<T>> vals(m.variables.size());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      std::size_t v = m.entry(i, j);
      if (v == MomentProblem::kZero) {
        out.zero_violation = std::max(out.zero_violation, std::abs(to_double(x(i, j))));
        continue;
      }
      if (!vals[v]) vals[v] = x(i, j);
      else out.class_spread = std::max(out.class_spread, std::abs(to_double(T(x(i, j) - *vals[v]))));
    }
  for (const auto& c : m.constraints) {
    T s = 0;
    for (const auto& [v, a] : c.coeffs) {
      if constexpr (std::is_same_v<T, Rational>) s += a * *vals[v];
      else s += a.get_d() * *vals[v];
    }
    double diff;
    if constexpr (std::is_same_v<T, Rational>) diff = std::abs(Rational(s - c.rhs).get_d());
    else diff = std::abs(s - c.rhs.get_d());
    out.constraint_violation = std::max(out.constraint_violation, diff);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(to_eigen(x));
  out.min_eigenvalue = n ? es.eigenvalues()(0) : 0.0;
  if constexpr (std::is_same_v<T, Rational>) out.psd_exact = check_psd_exact(x).psd;
  return out;
}

inline nlohmann::json certificate_to_json(const MomentProblem& m, const FarkasCertificate& c) {
  nlohmann::json j;
  j["format"] = "hyc-farkas-1";
  j["level"] = c.level;
  j["tracial"] = c.tracial;
  j["num_constraints"] = c.num_constraints;
  nlohmann::json basis = nlohmann::json::array();
  for (const auto& w : m.basis) basis.push_back(m.word_string(w));
  j["basis"] = basis;
  nlohmann::json weights = nlohmann::json::array();
  for (const auto& [i, y] : c.weights)
    weights.push_back({{"constraint", i}, {"label", m.describe(i)}, {"weight", y.get_str()}});
  j["weights"] = weights;
  nlohmann::json s = nlohmann::json::array();
  for (std::size_t r = 0; r < c.s.rows(); ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t col = 0; col < c.s.cols(); ++col) row.push_back(c.s(r, col).get_str());
    s.push_back(row);
  }
  j["S"] = s;
  return j;
}

inline FarkasCertificate certificate_from_json(const nlohmann::json& j) {
  try {
    if (j.at("format") != "hyc-farkas-1") throw InvalidArgument("unknown certificate format");
    FarkasCertificate c;
    c.level = j.at("level").get<std::size_t>();
    c.tracial = j.at("tracial").get<bool>();
    c.num_constraints = j.at("num_constraints").get<std::size_t>();
    for (const auto& w : j.at("weights"))
      c.weights.emplace_back(w.at("constraint").get<std::size_t>(), parse_rational(w.at("weight").get<std::string>()));
    std::sort(c.weights.begin(), c.weights.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    for (std::size_t k = 1; k < c.weights.size(); ++k)
      if (c.weights[k].first == c.weights[k - 1].first) throw InvalidArgument("constraint weighted twice");
    const auto& s = j.at("S");
    const std::size_t n = s.size();
    c.s = DenseMatrix<Rational>(n, n);
    for (std::size_t r = 0; r < n; ++r) {
      if (s[r].size() != n) throw InvalidArgument("S is not square");
      for (std::size_t col = 0; col < n; ++col) c.s(r, col) = parse_rational(s[r][col].get<std::string>());
    }
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("malformed certificate: ") + e.what());
  }
}

}  // namespace hyc
