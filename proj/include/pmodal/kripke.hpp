// Kripke structures derived from probability models, D4 frame checks, and
// alethic evaluation.
//
// Each world w yields <w,1> and <w,2>. Edges:
//   <x,2> -> <y,1>  iff  Prob2 at x of the singleton {y} is positive
//   <x,1> -> <y,1>  iff  PR1^x(y) > 0
// Domain and interpretation carry over unchanged.

#ifndef PMODAL_KRIPKE_HPP_
#define PMODAL_KRIPKE_HPP_

#include <algorithm>
#include <array>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "pmodal/evaluator.hpp"
#include "pmodal/model.hpp"
#include "pmodal/syntax.hpp"

namespace pmodal {

struct LeveledWorld {
  std::size_t base;
  int level;

  friend bool operator==(const LeveledWorld&, const LeveledWorld&) = default;
};

class KripkeStructure {
 public:
  using Edge = std::pair<std::size_t, std::size_t>;

  KripkeStructure(std::vector<std::string> base_names, std::vector<std::string> domain,
                  Interpretation interpretation, std::vector<LeveledWorld> nodes, std::set<Edge> edges)
      : base_names_(std::move(base_names)),
        domain_(std::move(domain)),
        interpretation_(std::move(interpretation)),
        nodes_(std::move(nodes)),
        edges_(std::move(edges)) {
    for (const auto& n : nodes_) {
      if (n.level != 1 && n.level != 2) throw Error("leveled world must have level 1 or 2");
      if (n.base >= base_names_.size()) throw Error("leveled world refers to unknown base world");
    }
    for (const auto& [a, b] : edges_) {
      if (a >= nodes_.size() || b >= nodes_.size()) throw Error("edge refers to unknown world");
    }
    successors_.resize(nodes_.size());
    for (const auto& [a, b] : edges_) successors_[a].push_back(b);
  }

  const std::vector<LeveledWorld>& nodes() const { return nodes_; }
  const std::set<Edge>& edges() const { return edges_; }
  const std::vector<std::size_t>& successors(std::size_t node) const { return successors_.at(node); }
  const std::vector<std::string>& domain() const { return domain_; }
  const Interpretation& interpretation() const { return interpretation_; }
  const std::vector<std::string>& base_names() const { return base_names_; }

  bool accessible(std::size_t a, std::size_t b) const { return edges_.count({a, b}) != 0; }

  /// "w1@2"
  std::string name(std::size_t node) const {
    return base_names_[nodes_[node].base] + "@" + std::to_string(nodes_[node].level);
  }

  std::optional<std::size_t> find(std::size_t base, int level) const {
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      if (nodes_[i].base == base && nodes_[i].level == level) return i;
    }
    return std::nullopt;
  }

  std::size_t node(std::size_t base, int level) const {
    auto n = find(base, level);
    if (!n) throw Error("no such leveled world");
    return *n;
  }

 private:
  std::vector<std::string> base_names_;
  std::vector<std::string> domain_;
  Interpretation interpretation_;
  std::vector<LeveledWorld> nodes_;
  std::set<Edge> edges_;
  std::vector<std::vector<std::size_t>> successors_;
};

/// Nodes are ordered <w1,1>, <w1,2>, <w2,1>, ...
inline KripkeStructure to_kripke(const Model& m) {
  const std::size_t n = m.world_count();
  std::vector<LeveledWorld> nodes;
  for (std::size_t w = 0; w < n; ++w) {
    nodes.push_back({w, 1});
    nodes.push_back({w, 2});
  }
  auto level1 = [](std::size_t w) { return 2 * w; };
  auto level2 = [](std::size_t w) { return 2 * w + 1; };
  std::set<KripkeStructure::Edge> edges;
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      if (m.pr1[x][y] > 0) edges.insert({level1(x), level1(y)});
      Rational singleton = 0;
      for (std::size_t v = 0; v < n; ++v) singleton += m.pr2[x][v] * m.pr1[v][y];
      if (singleton > 0) edges.insert({level2(x), level1(y)});
    }
  }
  return KripkeStructure(m.worlds, m.domain, m.interpretation, std::move(nodes), std::move(edges));
}

struct TransitivityResult {
  bool transitive;
  /// Lexicographically least (a, b, c) with a->b, b->c and not a->c.
  std::optional<std::array<std::size_t, 3>> witness;
};

inline TransitivityResult is_transitive(const KripkeStructure& k) {
  for (const auto& [a, b] : k.edges()) {
    for (auto c : k.successors(b)) {
      if (!k.accessible(a, c)) return {false, std::array<std::size_t, 3>{a, b, c}};
    }
  }
  return {true, std::nullopt};
}

struct SerialityResult {
  bool serial;
  /// Least world without successors.
  std::optional<std::size_t> witness;
};

inline SerialityResult is_serial(const KripkeStructure& k) {
  for (std::size_t i = 0; i < k.nodes().size(); ++i) {
    if (k.successors(i).empty()) return {false, i};
  }
  return {true, std::nullopt};
}

namespace detail {

inline bool kripke_atom(const KripkeStructure& k, std::size_t node, const Assignment& g, const Formula& f) {
  auto it = k.interpretation().predicates.find(f.predicate());
  if (it == k.interpretation().predicates.end()) {
    throw EvalError("unknown predicate '" + f.predicate() + "'");
  }
  Tuple tuple;
  for (const auto& t : f.args()) {
    if (t.is_variable()) {
      const std::string* d = g.lookup(t.name);
      if (!d) throw EvalError("unbound variable '" + t.name + "'");
      tuple.push_back(*d);
      continue;
    }
    const auto& consts = k.interpretation().constants;
    if (auto c = consts.find(t.name); c != consts.end()) {
      tuple.push_back(c->second);
    } else if (std::find(k.domain().begin(), k.domain().end(), t.name) != k.domain().end()) {
      tuple.push_back(t.name);
    } else {
      throw EvalError("constant '" + t.name + "' has no denotation");
    }
  }
  if (it->second.arity != tuple.size()) {
    throw EvalError("predicate " + f.predicate() + " has arity " + std::to_string(it->second.arity));
  }
  return it->second.extension.at(k.nodes()[node].base).count(tuple) != 0;
}

}  // namespace detail

/// Standard Kripke clauses: box is universal and dia existential over
/// successors. Atoms are read at the underlying base world.
inline bool eval_alethic(const KripkeStructure& k, std::size_t node, const Assignment& g, const Formula& f) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::kAtom:
      return detail::kripke_atom(k, node, g, f);
    case K::kNot:
      return !eval_alethic(k, node, g, f.sub());
    case K::kAnd:
      return eval_alethic(k, node, g, f.lhs()) && eval_alethic(k, node, g, f.rhs());
    case K::kOr:
      return eval_alethic(k, node, g, f.lhs()) || eval_alethic(k, node, g, f.rhs());
    case K::kImplies:
      return !eval_alethic(k, node, g, f.lhs()) || eval_alethic(k, node, g, f.rhs());
    case K::kForall:
      for (const auto& d : k.domain()) {
        if (!eval_alethic(k, node, g.with(f.variable(), d), f.sub())) return false;
      }
      return true;
    case K::kExists:
      for (const auto& d : k.domain()) {
        if (eval_alethic(k, node, g.with(f.variable(), d), f.sub())) return true;
      }
      return false;
    case K::kBox:
      for (auto s : k.successors(node)) {
        if (!eval_alethic(k, s, g, f.sub())) return false;
      }
      return true;
    case K::kDia:
      for (auto s : k.successors(node)) {
        if (eval_alethic(k, s, g, f.sub())) return true;
      }
      return false;
    case K::kProb:
      throw EvalError("probability operator in an alethic formula");
  }
  return false;
}

namespace detail {

inline Formula eliminate_dia(const Formula& f) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::kAtom: return f;
    case K::kDia: return Formula::negation(Formula::box(Formula::negation(eliminate_dia(f.sub()))));
    case K::kNot: return Formula::negation(eliminate_dia(f.sub()));
    case K::kBox: return Formula::box(eliminate_dia(f.sub()));
    case K::kAnd: return Formula::conj(eliminate_dia(f.lhs()), eliminate_dia(f.rhs()));
    case K::kOr: return Formula::disj(eliminate_dia(f.lhs()), eliminate_dia(f.rhs()));
    case K::kImplies: return Formula::implies(eliminate_dia(f.lhs()), eliminate_dia(f.rhs()));
    case K::kForall: return Formula::forall(f.variable(), eliminate_dia(f.sub()));
    case K::kExists: return Formula::exists(f.variable(), eliminate_dia(f.sub()));
    case K::kProb: return f;
  }
  return f;
}

inline Formula box_to_prob(const Formula& f, int enclosing) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::kAtom: return f;
    case K::kBox:
      return Formula::prob(enclosing == 0 ? Level::kSecond : Level::kFirst, Interval::point(1),
                           box_to_prob(f.sub(), enclosing + 1));
    case K::kNot: return Formula::negation(box_to_prob(f.sub(), enclosing));
    case K::kAnd: return Formula::conj(box_to_prob(f.lhs(), enclosing), box_to_prob(f.rhs(), enclosing));
    case K::kOr: return Formula::disj(box_to_prob(f.lhs(), enclosing), box_to_prob(f.rhs(), enclosing));
    case K::kImplies:
      return Formula::implies(box_to_prob(f.lhs(), enclosing), box_to_prob(f.rhs(), enclosing));
    case K::kForall: return Formula::forall(f.variable(), box_to_prob(f.sub(), enclosing));
    case K::kExists: return Formula::exists(f.variable(), box_to_prob(f.sub(), enclosing));
    default: return f;
  }
}

}  // namespace detail

/// Rewrites dia f as ~box ~f, then each box as a probability-one operator:
/// P2 for outermost boxes, P1 for boxes nested under one box.
inline Formula probabilistic_translation(const Formula& f) {
  if (contains_prob(f)) throw MixedModalityError("probabilistic translation expects an alethic formula");
  if (modal_depth(f) > 2) throw DepthError("modal nesting deeper than two has no depth-two translation");
  return detail::box_to_prob(detail::eliminate_dia(f), 0);
}

/// {"worlds": ["w1@1", ...], "edges": [["w1@2", "w1@1"], ...], "domain": [...], ...}
inline nlohmann::json kripke_to_json(const KripkeStructure& k) {
  using json = nlohmann::json;
  json doc = json::object();
  json worlds = json::array();
  for (std::size_t i = 0; i < k.nodes().size(); ++i) worlds.push_back(k.name(i));
  json edges = json::array();
  for (const auto& [a, b] : k.edges()) edges.push_back(json::array({k.name(a), k.name(b)}));
  doc["worlds"] = std::move(worlds);
  doc["edges"] = std::move(edges);
  doc["domain"] = k.domain();
  json preds = json::object();
  for (const auto& [name, p] : k.interpretation().predicates) {
    json ext = json::object();
    for (std::size_t w = 0; w < k.base_names().size(); ++w) {
      if (p.extension[w].empty()) continue;
      json tuples = json::array();
      for (const auto& t : p.extension[w]) tuples.push_back(t);
      ext[k.base_names()[w]] = std::move(tuples);
    }
    preds[name] = {{"arity", p.arity}, {"extension", std::move(ext)}};
  }
  doc["predicates"] = std::move(preds);
  doc["constants"] = k.interpretation().constants;
  return doc;
}

}  // namespace pmodal

#endif  // PMODAL_KRIPKE_HPP_
