// Brute-force LP oracle for tiny bounded programs: enumerate every choice of
// `n` constraints (rows or x_i = 0) made tight, solve the square system by
// Gaussian elimination, keep feasible points, and take the best objective.

#ifndef PMODAL_TESTS_SUPPORT_VERTEX_ORACLE_HPP_
#define PMODAL_TESTS_SUPPORT_VERTEX_ORACLE_HPP_

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include "pmodal/lp.hpp"
#include "pmodal/solver.hpp"

namespace pmodal::testing {

/// Solves a*x = b for square a; nullopt when singular.
inline std::optional<std::vector<Rational>> solve_square(std::vector<std::vector<Rational>> a,
                                                         std::vector<Rational> b) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a[pivot][col] == 0) ++pivot;
    if (pivot == n) return std::nullopt;
    std::swap(a[pivot], a[col]);
    std::swap(b[pivot], b[col]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0) continue;
      Rational factor = a[r][col] / a[col][col];
      for (std::size_t c = col; c < n; ++c) a[r][c] -= factor * a[col][c];
      b[r] -= factor * b[col];
    }
  }
  std::vector<Rational> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = b[i] / a[i][i];
  return x;
}

inline bool feasible(const LinearProgram& lp, const std::vector<Rational>& x) {
  for (const auto& v : x) {
    if (v < 0) return false;
  }
  for (const auto& row : lp.rows) {
    Rational lhs = 0;
    for (std::size_t i = 0; i < x.size(); ++i) lhs += row.coeffs[i] * x[i];
    if (row.sense == LinearProgram::Sense::kLe && lhs > row.rhs) return false;
    if (row.sense == LinearProgram::Sense::kGe && lhs < row.rhs) return false;
    if (row.sense == LinearProgram::Sense::kEq && lhs != row.rhs) return false;
  }
  return true;
}

struct OracleResult {
  Rational best;
  std::vector<Rational> x;
};

/// Maximum of the objective over the vertices; nullopt when no vertex is
/// feasible. Only meaningful for bounded, pointed feasible regions.
inline std::optional<OracleResult> vertex_maximum(const LinearProgram& lp) {
  const std::size_t n = lp.variables;
  // Candidate tight constraints: each row, then each x_i >= 0.
  std::vector<std::vector<Rational>> rows;
  std::vector<Rational> rhs;
  for (const auto& row : lp.rows) {
    rows.push_back(row.coeffs);
    rhs.push_back(row.rhs);
  }
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Rational> unit(n, Rational(0));
    unit[i] = 1;
    rows.push_back(unit);
    rhs.push_back(0);
  }
  std::optional<OracleResult> best;
  std::vector<std::size_t> pick;
  auto rec = [&](auto&& self, std::size_t start) -> void {
    if (pick.size() == n) {
      std::vector<std::vector<Rational>> a;
      std::vector<Rational> b;
      for (auto p : pick) {
        a.push_back(rows[p]);
        b.push_back(rhs[p]);
      }
      auto x = solve_square(a, b);
      if (!x || !feasible(lp, *x)) return;
      Rational value = 0;
      for (std::size_t i = 0; i < n; ++i) value += lp.objective[i] * (*x)[i];
      if (!best || value > best->best) best = OracleResult{value, *x};
      return;
    }
    for (std::size_t i = start; i + (n - pick.size()) <= rows.size(); ++i) {
      pick.push_back(i);
      self(self, i + 1);
      pick.pop_back();
    }
  };
  rec(rec, 0);
  return best;
}

/// Truth of a propositional formula with atoms looked up in a map.
inline bool propositional_truth(const Formula& f, const std::map<std::string, bool>& v) {
  switch (f.kind()) {
    case Formula::Kind::kAtom: return v.at(f.predicate());
    case Formula::Kind::kNot: return !propositional_truth(f.sub(), v);
    case Formula::Kind::kAnd: return propositional_truth(f.lhs(), v) && propositional_truth(f.rhs(), v);
    case Formula::Kind::kOr: return propositional_truth(f.lhs(), v) || propositional_truth(f.rhs(), v);
    case Formula::Kind::kImplies: return !propositional_truth(f.lhs(), v) || propositional_truth(f.rhs(), v);
    default: throw std::logic_error("not propositional");
  }
}

inline void gather_atoms(const Formula& f, std::set<std::string>& out) {
  if (f.is(Formula::Kind::kAtom)) out.insert(f.predicate());
  for (const auto& ch : f.children()) gather_atoms(ch, out);
}

/// Entailment bounds from an LP built independently of the solver: one
/// variable per valuation of the sorted atom set, maximized and minimized by
/// vertex enumeration. nullopt when the premises are inconsistent.
inline std::optional<Interval> flat_oracle_bounds(const std::vector<FlatConstraint>& cs, const Formula& query) {
  using S = LinearProgram::Sense;
  std::set<std::string> atom_set;
  for (const auto& k : cs) gather_atoms(k.sentence, atom_set);
  gather_atoms(query, atom_set);
  std::vector<std::string> names(atom_set.begin(), atom_set.end());
  std::vector<std::map<std::string, bool>> valuations;
  for (std::size_t bits = 0; bits < (std::size_t{1} << names.size()); ++bits) {
    std::map<std::string, bool> v;
    for (std::size_t i = 0; i < names.size(); ++i) v[names[i]] = (bits >> i) & 1U;
    valuations.push_back(v);
  }
  const std::size_t n = valuations.size();
  LinearProgram lp;
  lp.variables = n;
  lp.rows.push_back({std::vector<Rational>(n, Rational(1)), S::kEq, Rational(1)});
  for (const auto& k : cs) {
    std::vector<Rational> row(n);
    for (std::size_t i = 0; i < n; ++i) row[i] = propositional_truth(k.sentence, valuations[i]) ? 1 : 0;
    lp.rows.push_back({row, S::kGe, k.interval.lo()});
    lp.rows.push_back({row, S::kLe, k.interval.hi()});
  }
  lp.objective.resize(n);
  for (std::size_t i = 0; i < n; ++i) lp.objective[i] = propositional_truth(query, valuations[i]) ? 1 : 0;
  auto hi = vertex_maximum(lp);
  if (!hi) return std::nullopt;
  for (auto& x : lp.objective) x = -x;
  auto lo = vertex_maximum(lp);
  return Interval(-lo->best, hi->best);
}

}  // namespace pmodal::testing

#endif  // PMODAL_TESTS_SUPPORT_VERTEX_ORACLE_HPP_
