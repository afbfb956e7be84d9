// Flat probabilistic entailment: constraints P(sentence) in [lo,hi] over
// propositional sentences, with one probability per truth assignment to the
// atoms. Truth assignments are bitmasks over the atom list (bit i = atom i,
// atoms in order of first occurrence).

#ifndef PMODAL_SOLVER_HPP_
#define PMODAL_SOLVER_HPP_

#include <istream>
#include <sstream>
#include <string>
#include <vector>

#include "pmodal/lp.hpp"
#include "pmodal/syntax.hpp"

namespace pmodal {

struct FlatConstraint {
  Formula sentence;
  Interval interval;
};

inline constexpr std::size_t kDefaultAtomCap = 15;

/// Atom names over all sentences, in order of first occurrence.
inline std::vector<std::string> flat_atoms(const std::vector<FlatConstraint>& cs,
                                           const std::vector<Formula>& extra = {}) {
  std::vector<std::string> atoms;
  for (const auto& c : cs) collect_predicates(c.sentence, atoms);
  for (const auto& f : extra) collect_predicates(f, atoms);
  return atoms;
}

inline void require_flat(const Formula& f) {
  if (contains_prob(f) || contains_modal(f) || !is_propositional(f)) {
    throw SolverError("flat constraints need propositional sentences: " + render(f));
  }
}

/// Truth of a propositional sentence under a bitmask assignment.
inline bool eval_assignment(const Formula& f, const std::vector<std::string>& atoms, std::size_t mask) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::kAtom:
      for (std::size_t i = 0; i < atoms.size(); ++i) {
        if (atoms[i] == f.predicate()) return (mask >> i) & 1U;
      }
      throw SolverError("atom " + f.predicate() + " missing from atom list");
    case K::kNot: return !eval_assignment(f.sub(), atoms, mask);
    case K::kAnd: return eval_assignment(f.lhs(), atoms, mask) && eval_assignment(f.rhs(), atoms, mask);
    case K::kOr: return eval_assignment(f.lhs(), atoms, mask) || eval_assignment(f.rhs(), atoms, mask);
    case K::kImplies: return !eval_assignment(f.lhs(), atoms, mask) || eval_assignment(f.rhs(), atoms, mask);
    default: throw SolverError("not a propositional sentence: " + render(f));
  }
}

/// The feasibility program: one variable per assignment, total mass 1, and
/// the interval bounds of every constraint.
inline LinearProgram flat_program(const std::vector<FlatConstraint>& cs, const std::vector<std::string>& atoms) {
  const std::size_t n = std::size_t{1} << atoms.size();
  LinearProgram lp;
  lp.variables = n;
  lp.objective.assign(n, Rational(0));
  lp.rows.push_back({std::vector<Rational>(n, Rational(1)), LinearProgram::Sense::kEq, Rational(1)});
  for (const auto& c : cs) {
    std::vector<Rational> row(n, Rational(0));
    for (std::size_t mask = 0; mask < n; ++mask) {
      if (eval_assignment(c.sentence, atoms, mask)) row[mask] = 1;
    }
    if (c.interval.is_point()) {
      lp.rows.push_back({row, LinearProgram::Sense::kEq, c.interval.lo()});
      continue;
    }
    if (c.interval.lo() > 0) lp.rows.push_back({row, LinearProgram::Sense::kGe, c.interval.lo()});
    if (c.interval.hi() < 1) lp.rows.push_back({row, LinearProgram::Sense::kLe, c.interval.hi()});
  }
  return lp;
}

struct Consistency {
  bool consistent;
  std::vector<std::string> atoms;
  /// Probability per assignment bitmask when consistent.
  std::vector<Rational> witness;
};

namespace detail {

inline std::vector<std::string> checked_atoms(const std::vector<FlatConstraint>& cs,
                                              const std::vector<Formula>& extra, std::size_t cap) {
  for (const auto& c : cs) require_flat(c.sentence);
  for (const auto& f : extra) require_flat(f);
  auto atoms = flat_atoms(cs, extra);
  if (atoms.size() > cap) {
    throw SolverError(std::to_string(atoms.size()) + " atoms exceed the cap of " + std::to_string(cap));
  }
  return atoms;
}

}  // namespace detail

inline Consistency flat_consistent(const std::vector<FlatConstraint>& cs, std::size_t atom_cap = kDefaultAtomCap) {
  auto atoms = detail::checked_atoms(cs, {}, atom_cap);
  LpResult r = solve(flat_program(cs, atoms));
  if (r.status != LpStatus::kOptimal) return {false, atoms, {}};
  return {true, atoms, std::move(r.x)};
}

struct EntailmentBounds {
  Interval bounds;
  std::vector<std::string> atoms;
  /// Distributions attaining the lower and upper bound.
  std::vector<Rational> min_witness;
  std::vector<Rational> max_witness;
};

/// Tightest [min, max] of P(query) over all distributions satisfying the
/// premises, by two exact LP solves.
inline EntailmentBounds flat_entail_bounds(const std::vector<FlatConstraint>& premises, const Formula& query,
                                           std::size_t atom_cap = kDefaultAtomCap) {
  auto atoms = detail::checked_atoms(premises, {query}, atom_cap);
  LinearProgram lp = flat_program(premises, atoms);
  std::vector<Rational> indicator(lp.variables, Rational(0));
  for (std::size_t mask = 0; mask < lp.variables; ++mask) {
    if (eval_assignment(query, atoms, mask)) indicator[mask] = 1;
  }
  lp.objective = indicator;
  LpResult hi = solve(lp);
  if (hi.status == LpStatus::kInfeasible) throw SolverError("premises are inconsistent");
  for (auto& c : lp.objective) c = -c;
  LpResult lo = solve(lp);
  return {Interval(-lo.value, hi.value), atoms, std::move(lo.x), std::move(hi.x)};
}

/// Probability of a sentence under a per-assignment distribution.
inline Rational flat_probability(const Formula& f, const std::vector<std::string>& atoms,
                                 const std::vector<Rational>& distribution) {
  Rational p = 0;
  for (std::size_t mask = 0; mask < distribution.size(); ++mask) {
    if (eval_assignment(f, atoms, mask)) p += distribution[mask];
  }
  return p;
}

/// Reads `P[lo,hi]: <formula>` (or `P[p]: <formula>`) lines. Blank lines
/// and lines starting with '#' are skipped.
inline std::vector<FlatConstraint> parse_constraints(std::istream& in) {
  auto trim = [](const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
  };
  std::vector<FlatConstraint> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    auto open = line.find('[', first);
    auto close = open == std::string::npos ? open : line.find(']', open);
    auto colon = close == std::string::npos ? close : line.find(':', close);
    if (colon == std::string::npos || trim(line.substr(first, open - first)) != "P" ||
        !trim(line.substr(close + 1, colon - close - 1)).empty()) {
      throw SyntaxError("expected 'P[lo,hi]: <formula>'", lineno, first + 1);
    }
    std::string bounds = line.substr(open + 1, close - open - 1);
    auto comma = bounds.find(',');
    auto lo = parse_rational(trim(bounds.substr(0, comma)));
    auto hi = comma == std::string::npos ? lo : parse_rational(trim(bounds.substr(comma + 1)));
    if (!lo || !hi || *lo > *hi || *hi > 1) throw SyntaxError("malformed probability bounds", lineno, open + 2);
    Formula f = [&] {
      try {
        return parse(line.substr(colon + 1));
      } catch (const SyntaxError& e) {
        throw SyntaxError(std::string("in formula: ") + e.what(), lineno, colon + 1 + e.column());
      }
    }();
    out.push_back({f, Interval(*lo, *hi)});
  }
  return out;
}

inline std::vector<FlatConstraint> parse_constraints(const std::string& text) {
  std::istringstream in(text);
  return parse_constraints(in);
}

}  // namespace pmodal

#endif  // PMODAL_SOLVER_HPP_
