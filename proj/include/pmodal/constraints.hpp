// Coherence checks between first- and second-order probabilities:
//
//   C1   PR(pr(A) in I) = 1  ->  PR(A) in I
//   MP   PR(A | pr(A) in I) in I                       (Miller's principle)
//   direct measure  PR2^w{v : A true at v} = Prob2(w, A)
//
// EV is not checked separately: Prob2 is defined as the expectation of Prob1.

#ifndef PMODAL_CONSTRAINTS_HPP_
#define PMODAL_CONSTRAINTS_HPP_

#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "pmodal/evaluator.hpp"

namespace pmodal {

/// One failing (world, formula, interval) instance with its computed values.
struct Witness {
  std::size_t world;
  Formula formula;
  std::optional<Interval> interval;
  std::vector<std::pair<std::string, Rational>> values;
};

struct ConstraintReport {
  std::string constraint;
  bool holds = true;
  /// The constraint imposed nothing (undefined conditional, false antecedent).
  bool vacuous = false;
  /// The checked quantity for single-instance checks.
  std::optional<Rational> value;
  std::vector<Witness> witnesses;
};

inline Formula first_order_prob(const Interval& i, const Formula& f) {
  return Formula::prob(Level::kFirst, i, f);
}

/// Miller's principle at one world: Prob2(f & P1_I f) / Prob2(P1_I f) in I,
/// vacuous when the conditioning mass is 0.
inline ConstraintReport check_miller(const Model& m, std::size_t w, const Formula& f, const Interval& i) {
  detail::require_no_prob(f, "Miller's principle argument");
  ConstraintReport r;
  r.constraint = "miller";
  Formula given = first_order_prob(i, f);
  Rational den = prob2(m, w, Assignment{}, given);
  if (den == 0) {
    r.vacuous = true;
    return r;
  }
  Rational num = prob2(m, w, Assignment{}, Formula::conj(f, given));
  r.value = num / den;
  if (!i.contains(*r.value)) {
    r.holds = false;
    r.witnesses.push_back({w, f, i, {{"joint", num}, {"conditioning", den}, {"conditional", *r.value}}});
  }
  return r;
}

/// The first-order probability values `f` takes across the model's worlds,
/// ascending. These are the only point intervals with non-vacuous MP instances.
inline std::vector<Interval> realized_intervals(const Model& m, const Formula& f) {
  std::set<Rational> values;
  for (std::size_t w = 0; w < m.world_count(); ++w) values.insert(prob1(m, w, Assignment{}, f));
  std::vector<Interval> out;
  for (const auto& v : values) out.push_back(Interval::point(v));
  return out;
}

/// MP at every world, for every formula and interval. An empty interval list
/// means the realized values of each formula.
inline ConstraintReport check_miller_model(const Model& m, const std::vector<Formula>& fs,
                                           const std::vector<Interval>& is = {}) {
  ConstraintReport r;
  r.constraint = "miller";
  bool any_non_vacuous = false;
  for (std::size_t w = 0; w < m.world_count(); ++w) {
    for (const auto& f : fs) {
      auto intervals = is.empty() ? realized_intervals(m, f) : is;
      for (const auto& i : intervals) {
        ConstraintReport one = check_miller(m, w, f, i);
        any_non_vacuous |= !one.vacuous;
        for (auto& wit : one.witnesses) r.witnesses.push_back(std::move(wit));
      }
    }
  }
  r.holds = r.witnesses.empty();
  r.vacuous = !any_non_vacuous;
  return r;
}

/// C1 at one world: if Prob2(P1_I f) = 1 then Prob2(f) must lie in I.
inline ConstraintReport check_c1(const Model& m, std::size_t w, const Formula& f, const Interval& i) {
  detail::require_no_prob(f, "C1 argument");
  ConstraintReport r;
  r.constraint = "c1";
  Rational antecedent = prob2(m, w, Assignment{}, first_order_prob(i, f));
  if (antecedent != 1) {
    r.vacuous = true;
    r.value = antecedent;
    return r;
  }
  r.value = prob2(m, w, Assignment{}, f);
  if (!i.contains(*r.value)) {
    r.holds = false;
    r.witnesses.push_back({w, f, i, {{"certainty", antecedent}, {"prob2", *r.value}}});
  }
  return r;
}

/// Compares the raw PR2^w-measure of the truth set of `f` with Prob2(w, f).
/// Models are not required to satisfy this; a failure is informative.
inline ConstraintReport check_gaifman_direct(const Model& m, std::size_t w, const Formula& f) {
  detail::require_no_prob(f, "direct-measure argument");
  ConstraintReport r;
  r.constraint = "gaifman-direct";
  Rational direct = detail::measure(m.pr2.at(w), truth_set(m, Assignment{}, f));
  Rational expected = prob2(m, w, Assignment{}, f);
  r.value = direct;
  if (direct != expected) {
    r.holds = false;
    r.witnesses.push_back({w, f, std::nullopt, {{"direct", direct}, {"prob2", expected}}});
  }
  return r;
}

}  // namespace pmodal

#endif  // PMODAL_CONSTRAINTS_HPP_
