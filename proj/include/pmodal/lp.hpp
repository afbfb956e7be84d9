// Exact two-phase simplex over rationals.
//
// Dense tableau with Bland's rule, so it terminates without cycling and every
// reported optimum is an exact vertex of the feasible region. Intended for
// the desk-scale programs of probabilistic entailment, not large LPs.

#ifndef PMODAL_LP_HPP_
#define PMODAL_LP_HPP_

#include <cstddef>
#include <optional>
#include <vector>

#include "pmodal/errors.hpp"
#include "pmodal/rational.hpp"

namespace pmodal {

/// maximize objective . x  subject to rows, x >= 0.
struct LinearProgram {
  enum class Sense { kLe, kGe, kEq };

  struct Row {
    std::vector<Rational> coeffs;
    Sense sense;
    Rational rhs;
  };

  std::size_t variables = 0;
  std::vector<Row> rows;
  std::vector<Rational> objective;
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

struct LpResult {
  LpStatus status;
  Rational value;
  std::vector<Rational> x;
};

namespace detail {

class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), cells_(rows * (cols + 1), Rational(0)), basis_(rows) {}

  Rational& at(std::size_t r, std::size_t c) { return cells_[r * (cols_ + 1) + c]; }
  const Rational& at(std::size_t r, std::size_t c) const { return cells_[r * (cols_ + 1) + c]; }
  Rational& rhs(std::size_t r) { return at(r, cols_); }
  const Rational& rhs(std::size_t r) const { return at(r, cols_); }
  std::size_t& basis(std::size_t r) { return basis_[r]; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  void pivot(std::size_t pr, std::size_t pc) {
    Rational inv = 1 / at(pr, pc);
    for (std::size_t c = 0; c <= cols_; ++c) {
      if (!is_zero(at(pr, c))) at(pr, c) *= inv;
    }
    for (std::size_t r = 0; r < rows_; ++r) {
      if (r == pr) continue;
      Rational factor = at(r, pc);
      if (is_zero(factor)) continue;
      for (std::size_t c = 0; c <= cols_; ++c) {
        const Rational& p = at(pr, c);
        if (!is_zero(p)) at(r, c) -= factor * p;
      }
    }
    basis_[pr] = pc;
  }

  /// Maximizes cost . x over columns with allowed[c]; false if unbounded.
  bool optimize(const std::vector<Rational>& cost, const std::vector<bool>& allowed) {
    for (;;) {
      std::optional<std::size_t> entering;
      for (std::size_t c = 0; c < cols_ && !entering; ++c) {
        if (!allowed[c] || in_basis(c)) continue;
        Rational reduced = cost[c];
        for (std::size_t r = 0; r < rows_; ++r) {
          const Rational& a = at(r, c);
          if (!is_zero(a) && !is_zero(cost[basis_[r]])) reduced -= cost[basis_[r]] * a;
        }
        if (reduced > 0) entering = c;
      }
      if (!entering) return true;
      std::optional<std::size_t> leaving;
      Rational best;
      for (std::size_t r = 0; r < rows_; ++r) {
        const Rational& a = at(r, *entering);
        if (a <= 0) continue;
        Rational ratio = rhs(r) / a;
        if (!leaving || ratio < best || (ratio == best && basis_[r] < basis_[*leaving])) {
          leaving = r;
          best = ratio;
        }
      }
      if (!leaving) return false;
      pivot(*leaving, *entering);
    }
  }

  bool in_basis(std::size_t c) const {
    for (auto b : basis_) {
      if (b == c) return true;
    }
    return false;
  }

 private:
  static bool is_zero(const Rational& q) { return q.is_zero(); }

  std::size_t rows_;
  std::size_t cols_;
  std::vector<Rational> cells_;
  std::vector<std::size_t> basis_;
};

}  // namespace detail

inline LpResult solve(const LinearProgram& lp) {
  const std::size_t n = lp.variables;
  const std::size_t m = lp.rows.size();
  if (lp.objective.size() != n) throw SolverError("objective length does not match variable count");
  std::size_t slacks = 0;
  for (const auto& row : lp.rows) {
    if (row.coeffs.size() != n) throw SolverError("constraint row length does not match variable count");
    if (row.sense != LinearProgram::Sense::kEq) ++slacks;
  }
  const std::size_t artificial0 = n + slacks;
  const std::size_t cols = artificial0 + m;
  detail::Tableau t(m, cols);
  std::size_t slack = n;
  for (std::size_t r = 0; r < m; ++r) {
    const auto& row = lp.rows[r];
    for (std::size_t c = 0; c < n; ++c) t.at(r, c) = row.coeffs[c];
    if (row.sense == LinearProgram::Sense::kLe) t.at(r, slack++) = 1;
    if (row.sense == LinearProgram::Sense::kGe) t.at(r, slack++) = -1;
    t.rhs(r) = row.rhs;
    if (row.rhs < 0) {
      for (std::size_t c = 0; c <= cols; ++c) t.at(r, c) = -t.at(r, c);
    }
    t.at(r, artificial0 + r) = 1;
    t.basis(r) = artificial0 + r;
  }

  std::vector<bool> all(cols, true);
  std::vector<Rational> phase1(cols, Rational(0));
  for (std::size_t r = 0; r < m; ++r) phase1[artificial0 + r] = -1;
  t.optimize(phase1, all);
  for (std::size_t r = 0; r < m; ++r) {
    if (t.basis(r) >= artificial0 && t.rhs(r) != 0) return {LpStatus::kInfeasible, 0, {}};
  }
  // Pivot zero-level artificials out; rows with no other nonzero are redundant.
  for (std::size_t r = 0; r < m; ++r) {
    if (t.basis(r) < artificial0) continue;
    for (std::size_t c = 0; c < artificial0; ++c) {
      if (!t.at(r, c).is_zero() && !t.in_basis(c)) {
        t.pivot(r, c);
        break;
      }
    }
  }

  std::vector<bool> structural(cols, false);
  for (std::size_t c = 0; c < artificial0; ++c) structural[c] = true;
  std::vector<Rational> phase2(cols, Rational(0));
  for (std::size_t c = 0; c < n; ++c) phase2[c] = lp.objective[c];
  if (!t.optimize(phase2, structural)) return {LpStatus::kUnbounded, 0, {}};

  std::vector<Rational> x(n, Rational(0));
  for (std::size_t r = 0; r < m; ++r) {
    if (t.basis(r) < n) x[t.basis(r)] = t.rhs(r);
  }
  Rational value = 0;
  for (std::size_t c = 0; c < n; ++c) value += lp.objective[c] * x[c];
  return {LpStatus::kOptimal, value, std::move(x)};
}

}  // namespace pmodal

#endif  // PMODAL_LP_HPP_
