// Bounded search for a finite model satisfying a propositional sentence with
// probability operators.
//
// Candidates are enumerated in a fixed total order: world count, then atom
// valuations, then the partition of worlds into PR1 classes (restricted
// growth strings), then the within-class PR1 weights, then the PR2 weights,
// each lexicographic. Weights are multiples of 1/denominator. Each PR1 puts
// all of its mass inside its own class, so every candidate satisfies the
// equivalence-class constraint.
//
// The sentence is checked at the first world only: its truth there depends on
// that world's PR2 and on PR1 everywhere, and any satisfying world can be
// renamed to come first. All worlds are given the same PR2.

#ifndef PMODAL_SEARCH_HPP_
#define PMODAL_SEARCH_HPP_

#include <optional>
#include <string>
#include <vector>

#include "pmodal/evaluator.hpp"
#include "pmodal/model.hpp"
#include "pmodal/syntax.hpp"

namespace pmodal {

inline constexpr std::size_t kMaxSearchWorlds = 5;
inline constexpr std::size_t kMaxSearchDenominator = 8;

struct SearchResult {
  Model model;
  std::size_t world;
};

namespace detail {

/// Non-negative integer vectors of length `parts` summing to `total`,
/// lexicographically ascending.
inline std::vector<std::vector<std::size_t>> compositions(std::size_t total, std::size_t parts) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> cur(parts, 0);
  auto rec = [&](auto&& self, std::size_t i, std::size_t left) -> void {
    if (i + 1 == parts) {
      cur[i] = left;
      out.push_back(cur);
      return;
    }
    for (std::size_t x = 0; x <= left; ++x) {
      cur[i] = x;
      self(self, i + 1, left - x);
    }
  };
  if (parts > 0) rec(rec, 0, total);
  return out;
}

/// Set partitions of {0..n-1} as restricted growth strings, ascending.
inline std::vector<std::vector<std::size_t>> partitions(std::size_t n) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> cur(n, 0);
  auto rec = [&](auto&& self, std::size_t i, std::size_t max_block) -> void {
    if (i == n) {
      out.push_back(cur);
      return;
    }
    for (std::size_t b = 0; b <= max_block + 1; ++b) {
      cur[i] = b;
      self(self, i + 1, std::max(max_block, b));
    }
  };
  if (n > 0) {
    cur[0] = 0;
    rec(rec, 1, 0);
  }
  return out;
}

class ModelEnumerator {
 public:
  ModelEnumerator(const Formula& s, std::vector<std::string> atoms, std::size_t denominator)
      : sentence_(s), atoms_(std::move(atoms)), denominator_(denominator) {}

  std::optional<SearchResult> run(std::size_t n) {
    model_ = Model{};
    for (std::size_t w = 0; w < n; ++w) model_.worlds.push_back("w" + std::to_string(w + 1));
    model_.pr1.assign(n, Distribution{std::vector<Rational>(n, Rational(0))});
    model_.pr2.assign(n, Distribution{std::vector<Rational>(n, Rational(0))});
    for (const auto& a : atoms_) model_.interpretation.predicates[a] = Predicate{0, std::vector<std::set<Tuple>>(n)};
    pr2_choices_ = compositions(denominator_, n);

    const std::size_t k = atoms_.size();
    const std::size_t valuations = std::size_t{1} << (k * n);
    const auto parts = partitions(n);
    for (std::size_t val = 0; val < valuations; ++val) {
      for (std::size_t w = 0; w < n; ++w) {
        for (std::size_t a = 0; a < k; ++a) {
          auto& ext = model_.interpretation.predicates[atoms_[a]].extension[w];
          ext.clear();
          if ((val >> (w * k + a)) & 1U) ext.insert(Tuple{});
        }
      }
      for (const auto& rgs : parts) {
        std::vector<std::vector<std::size_t>> classes;
        for (std::size_t w = 0; w < n; ++w) {
          if (rgs[w] >= classes.size()) classes.resize(rgs[w] + 1);
          classes[rgs[w]].push_back(w);
        }
        if (auto found = choose_pr1(classes, 0)) return found;
      }
    }
    return std::nullopt;
  }

 private:
  std::optional<SearchResult> choose_pr1(const std::vector<std::vector<std::size_t>>& classes, std::size_t c) {
    if (c == classes.size()) return choose_pr2();
    const auto& members = classes[c];
    for (const auto& weights : compositions(denominator_, members.size())) {
      Distribution d{std::vector<Rational>(model_.world_count(), Rational(0))};
      for (std::size_t i = 0; i < members.size(); ++i) d.weights[members[i]] = Rational(weights[i], denominator_);
      for (auto w : members) model_.pr1[w] = d;
      if (auto found = choose_pr1(classes, c + 1)) return found;
    }
    return std::nullopt;
  }

  std::optional<SearchResult> choose_pr2() {
    const std::size_t n = model_.world_count();
    for (const auto& weights : pr2_choices_) {
      Distribution d{std::vector<Rational>(n, Rational(0))};
      for (std::size_t v = 0; v < n; ++v) d.weights[v] = Rational(weights[v], denominator_);
      for (auto& p : model_.pr2) p = d;
      if (truth_value(model_, 0, Assignment{}, sentence_)) return SearchResult{model_, 0};
    }
    return std::nullopt;
  }

  const Formula& sentence_;
  std::vector<std::string> atoms_;
  std::size_t denominator_;
  Model model_;
  std::vector<std::vector<std::size_t>> pr2_choices_;
};

}  // namespace detail

/// First model (in the documented order) with at most `max_worlds` worlds
/// whose first world satisfies `s`, or nullopt when the bounded space holds
/// none. A nullopt result does not prove unsatisfiability.
inline std::optional<SearchResult> search_model(const Formula& s, std::size_t max_worlds, std::size_t denominator) {
  if (max_worlds < 1 || max_worlds > kMaxSearchWorlds) {
    throw SolverError("max_worlds must be between 1 and " + std::to_string(kMaxSearchWorlds));
  }
  if (denominator < 1 || denominator > kMaxSearchDenominator) {
    throw SolverError("denominator must be between 1 and " + std::to_string(kMaxSearchDenominator));
  }
  if (contains_modal(s)) throw SolverError("search expects a probabilistic sentence, not an alethic one");
  if (!is_propositional(s)) throw SolverError("search expects a propositional sentence");
  Formula resolved = resolve_levels(s);
  detail::ModelEnumerator e(resolved, predicates(resolved), denominator);
  for (std::size_t n = 1; n <= max_worlds; ++n) {
    if (auto found = e.run(n)) return found;
  }
  return std::nullopt;
}

}  // namespace pmodal

#endif  // PMODAL_SEARCH_HPP_
