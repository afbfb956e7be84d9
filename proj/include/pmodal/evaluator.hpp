// Semantic values, first- and second-order probability values, and
// conditional probabilities over finite models.
//
//   Prob1(w, a) = sum of PR1^w(v) over worlds v where a is true
//   Prob2(w, a) = sum over w' of PR2^w(w') * Prob1(w', a)
//
// Prob2 is the PR2-expectation of Prob1, so the expected-value constraint
// holds by construction.

#ifndef PMODAL_EVALUATOR_HPP_
#define PMODAL_EVALUATOR_HPP_

#include <optional>
#include <string>
#include <vector>

#include "pmodal/model.hpp"
#include "pmodal/syntax.hpp"

namespace pmodal {

namespace detail {

inline const std::string& denote(const Model& m, const Assignment& g, const Term& t) {
  if (t.is_variable()) {
    const std::string* d = g.lookup(t.name);
    if (!d) throw EvalError("unbound variable '" + t.name + "'");
    return *d;
  }
  const auto& consts = m.interpretation.constants;
  if (auto it = consts.find(t.name); it != consts.end()) return it->second;
  for (const auto& d : m.domain) {
    if (d == t.name) return d;
  }
  throw EvalError("constant '" + t.name + "' has no denotation");
}

inline bool atom_holds(const Model& m, std::size_t w, const Assignment& g, const Formula& f) {
  auto it = m.interpretation.predicates.find(f.predicate());
  if (it == m.interpretation.predicates.end()) {
    throw EvalError("unknown predicate '" + f.predicate() + "'");
  }
  const Predicate& p = it->second;
  if (p.arity != f.args().size()) {
    throw EvalError("predicate " + f.predicate() + " has arity " + std::to_string(p.arity));
  }
  Tuple tuple;
  tuple.reserve(f.args().size());
  for (const auto& t : f.args()) tuple.push_back(denote(m, g, t));
  return p.extension.at(w).count(tuple) != 0;
}

inline void require_no_prob(const Formula& f, const char* what) {
  if (contains_prob(f)) throw EvalError(std::string(what) + " must not contain probability operators");
}

inline void require_only_level_one(const Formula& f) {
  if (f.is(Formula::Kind::kProb) && f.level() != Level::kFirst) {
    throw EvalError("argument of a second-order probability may only contain P1 operators");
  }
  for (const auto& c : f.children()) require_only_level_one(c);
}

}  // namespace detail

/// Semantic value of a (possibly open) probabilistic formula at world `w`
/// under assignment `g`. Box/Dia and unresolved levels are rejected.
inline bool truth_value(const Model& m, std::size_t w, const Assignment& g, const Formula& f);

/// Truth of `f` at every world, in world order.
inline std::vector<bool> truth_set(const Model& m, const Assignment& g, const Formula& f) {
  std::vector<bool> out(m.world_count());
  for (std::size_t v = 0; v < m.world_count(); ++v) out[v] = truth_value(m, v, g, f);
  return out;
}

namespace detail {

inline Rational measure(const Distribution& d, const std::vector<bool>& set) {
  Rational sum = 0;
  for (std::size_t v = 0; v < set.size(); ++v) {
    if (set[v]) sum += d.weights[v];
  }
  return sum;
}

inline Rational prob1_unchecked(const Model& m, std::size_t w, const Assignment& g, const Formula& f) {
  return measure(m.pr1.at(w), truth_set(m, g, f));
}

inline Rational prob2_unchecked(const Model& m, std::size_t w, const Assignment& g, const Formula& f) {
  auto truth = truth_set(m, g, f);
  Rational sum = 0;
  const Distribution& outer = m.pr2.at(w);
  for (std::size_t v = 0; v < m.world_count(); ++v) {
    if (outer.weights[v] == 0) continue;
    sum += outer.weights[v] * measure(m.pr1[v], truth);
  }
  return sum;
}

}  // namespace detail

inline bool truth_value(const Model& m, std::size_t w, const Assignment& g, const Formula& f) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::kAtom:
      return detail::atom_holds(m, w, g, f);
    case K::kNot:
      return !truth_value(m, w, g, f.sub());
    case K::kAnd:
      return truth_value(m, w, g, f.lhs()) && truth_value(m, w, g, f.rhs());
    case K::kOr:
      return truth_value(m, w, g, f.lhs()) || truth_value(m, w, g, f.rhs());
    case K::kImplies:
      return !truth_value(m, w, g, f.lhs()) || truth_value(m, w, g, f.rhs());
    case K::kForall:
      for (const auto& d : m.domain) {
        if (!truth_value(m, w, g.with(f.variable(), d), f.sub())) return false;
      }
      return true;
    case K::kExists:
      for (const auto& d : m.domain) {
        if (truth_value(m, w, g.with(f.variable(), d), f.sub())) return true;
      }
      return false;
    case K::kProb:
      switch (f.level()) {
        case Level::kFirst:
          detail::require_no_prob(f.sub(), "argument of P1");
          return f.interval().contains(detail::prob1_unchecked(m, w, g, f.sub()));
        case Level::kSecond:
          detail::require_only_level_one(f.sub());
          return f.interval().contains(detail::prob2_unchecked(m, w, g, f.sub()));
        case Level::kUnresolved:
          break;
      }
      throw EvalError("probability operator with unresolved level; call resolve_levels first");
    case K::kBox:
    case K::kDia:
      throw EvalError("alethic operator in a probabilistic formula");
  }
  return false;
}

/// First-order probability value. `f` must not contain probability operators.
inline Rational prob1(const Model& m, std::size_t w, const Assignment& g, const Formula& f) {
  detail::require_no_prob(f, "argument of prob1");
  return detail::prob1_unchecked(m, w, g, f);
}

/// Second-order probability value. Probability operators in `f` must be P1.
inline Rational prob2(const Model& m, std::size_t w, const Assignment& g, const Formula& f) {
  detail::require_only_level_one(f);
  return detail::prob2_unchecked(m, w, g, f);
}

/// Prob2(a | b); nullopt when Prob2(b) = 0.
inline std::optional<Rational> cond_prob2(const Model& m, std::size_t w, const Assignment& g,
                                          const Formula& a, const Formula& b) {
  Rational den = prob2(m, w, g, b);
  if (den == 0) return std::nullopt;
  return prob2(m, w, g, Formula::conj(a, b)) / den;
}

/// Prob1(a | b); nullopt when Prob1(b) = 0.
inline std::optional<Rational> cond_prob1(const Model& m, std::size_t w, const Assignment& g,
                                          const Formula& a, const Formula& b) {
  Rational den = prob1(m, w, g, b);
  if (den == 0) return std::nullopt;
  return prob1(m, w, g, Formula::conj(a, b)) / den;
}

/// Parsing signature of a model: predicate arities, with named constants and
/// domain individuals both read as constants so lowercase names like m1 work.
inline Signature model_signature(const Model& m) {
  Signature sig;
  for (const auto& [name, p] : m.interpretation.predicates) sig.arities[name] = p.arity;
  for (const auto& [name, d] : m.interpretation.constants) sig.constants.insert(name);
  for (const auto& d : m.domain) sig.constants.insert(d);
  return sig;
}

inline void require_closed(const Formula& s) {
  auto free = free_variables(s);
  if (!free.empty()) {
    std::string names;
    for (const auto& v : free) names += (names.empty() ? "" : ", ") + v;
    throw OpenFormulaError("sentence has free variables: " + names);
  }
}

/// Satisfaction of a closed sentence at a world.
inline bool satisfies(const Model& m, std::size_t w, const Formula& s) {
  require_closed(s);
  return truth_value(m, w, Assignment{}, s);
}

/// True iff `s` is satisfied at every world of `m`.
inline bool valid_in_model(const Model& m, const Formula& s) {
  require_closed(s);
  for (std::size_t w = 0; w < m.world_count(); ++w) {
    if (!truth_value(m, w, Assignment{}, s)) return false;
  }
  return true;
}

}  // namespace pmodal

#endif  // PMODAL_EVALUATOR_HPP_
