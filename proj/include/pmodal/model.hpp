// Finite probability models <W, PR2, PR1, D, F>.
//
// Worlds are addressed by their position in `Model::worlds`; every
// distribution is a weight vector over that same ordering. Constants denote
// rigidly and the domain is shared by all worlds, while predicate extensions
// vary per world.

#ifndef PMODAL_MODEL_HPP_
#define PMODAL_MODEL_HPP_

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "pmodal/errors.hpp"
#include "pmodal/rational.hpp"

namespace pmodal {

using Tuple = std::vector<std::string>;

/// Probability weights indexed by world position.
struct Distribution {
  std::vector<Rational> weights;

  static Distribution point_mass(std::size_t world, std::size_t world_count) {
    Distribution d;
    d.weights.assign(world_count, Rational(0));
    d.weights.at(world) = 1;
    return d;
  }

  const Rational& operator[](std::size_t w) const { return weights[w]; }

  /// Mass of a set of worlds.
  Rational mass(const std::vector<std::size_t>& worlds) const {
    Rational m = 0;
    for (auto w : worlds) m += weights.at(w);
    return m;
  }

  friend bool operator==(const Distribution&, const Distribution&) = default;
};

struct Predicate {
  std::size_t arity = 0;
  /// One extension per world position.
  std::vector<std::set<Tuple>> extension;

  friend bool operator==(const Predicate&, const Predicate&) = default;
};

/// The denotation function F.
struct Interpretation {
  std::map<std::string, Predicate> predicates;
  /// Constant name -> individual (rigid).
  std::map<std::string, std::string> constants;

  friend bool operator==(const Interpretation&, const Interpretation&) = default;
};

struct Model {
  std::vector<std::string> worlds;
  std::vector<std::string> domain;
  std::vector<Distribution> pr1;
  std::vector<Distribution> pr2;
  Interpretation interpretation;

  std::size_t world_count() const { return worlds.size(); }

  std::optional<std::size_t> find_world(const std::string& name) const {
    for (std::size_t i = 0; i < worlds.size(); ++i) {
      if (worlds[i] == name) return i;
    }
    return std::nullopt;
  }

  std::size_t world_index(const std::string& name) const {
    auto w = find_world(name);
    if (!w) throw ModelError("unknown world '" + name + "'");
    return *w;
  }

  bool in_domain(const std::string& individual) const {
    for (const auto& d : domain) {
      if (d == individual) return true;
    }
    return false;
  }

  friend bool operator==(const Model&, const Model&) = default;
};

/// The variable assignment g.
class Assignment {
 public:
  Assignment() = default;

  /// g[d/x]
  Assignment with(const std::string& var, const std::string& individual) const {
    Assignment g = *this;
    g.bindings_[var] = individual;
    return g;
  }

  const std::string* lookup(const std::string& var) const {
    auto it = bindings_.find(var);
    return it == bindings_.end() ? nullptr : &it->second;
  }

  bool binds(const std::string& var) const { return bindings_.count(var) != 0; }
  const std::map<std::string, std::string>& bindings() const { return bindings_; }

 private:
  std::map<std::string, std::string> bindings_;
};

struct Violation {
  std::string message;
};

namespace detail {

inline void check_distribution(const Model& m, const Distribution& d, const std::string& label,
                               std::vector<Violation>& out) {
  if (d.weights.size() != m.world_count()) {
    out.push_back({label + ": has " + std::to_string(d.weights.size()) + " weights for " +
                   std::to_string(m.world_count()) + " worlds"});
    return;
  }
  Rational sum = 0;
  for (std::size_t v = 0; v < d.weights.size(); ++v) {
    const Rational& x = d.weights[v];
    if (x < 0 || x > 1) {
      out.push_back({label + ": weight " + to_string(x) + " on world " + m.worlds[v] + " outside [0,1]"});
    }
    sum += x;
  }
  if (sum != 1) out.push_back({label + ": weights sum to " + to_string(sum) + ", not 1"});
}

}  // namespace detail

/// Every structural and probabilistic defect of `m`; empty iff valid.
inline std::vector<Violation> validate_model(const Model& m) {
  std::vector<Violation> out;
  std::set<std::string> seen;
  for (const auto& w : m.worlds) {
    if (w.empty()) out.push_back({"empty world name"});
    if (!seen.insert(w).second) out.push_back({"duplicate world '" + w + "'"});
  }
  if (m.worlds.empty()) out.push_back({"model has no worlds"});
  std::set<std::string> individuals;
  for (const auto& d : m.domain) {
    if (!individuals.insert(d).second) out.push_back({"duplicate individual '" + d + "'"});
  }
  if (m.pr1.size() != m.world_count()) out.push_back({"pr1 must have one distribution per world"});
  if (m.pr2.size() != m.world_count()) out.push_back({"pr2 must have one distribution per world"});
  for (std::size_t w = 0; w < m.world_count(); ++w) {
    if (w < m.pr1.size()) detail::check_distribution(m, m.pr1[w], "PR1 of world " + m.worlds[w], out);
    if (w < m.pr2.size()) detail::check_distribution(m, m.pr2[w], "PR2 of world " + m.worlds[w], out);
  }
  for (const auto& [name, pred] : m.interpretation.predicates) {
    if (pred.extension.size() != m.world_count()) {
      out.push_back({"predicate " + name + " lacks an extension for every world"});
      continue;
    }
    for (std::size_t w = 0; w < m.world_count(); ++w) {
      for (const auto& tuple : pred.extension[w]) {
        if (tuple.size() != pred.arity) {
          out.push_back({"predicate " + name + " at world " + m.worlds[w] + ": tuple of length " +
                         std::to_string(tuple.size()) + " for arity " + std::to_string(pred.arity)});
        }
        for (const auto& d : tuple) {
          if (!individuals.count(d)) {
            out.push_back({"predicate " + name + " at world " + m.worlds[w] + ": individual '" + d +
                           "' not in domain"});
          }
        }
      }
    }
  }
  for (const auto& [name, d] : m.interpretation.constants) {
    if (!individuals.count(d)) out.push_back({"constant " + name + " denotes '" + d + "' outside domain"});
  }
  return out;
}

/// Worlds grouped by identical PR1 distribution, blocks ordered by their
/// first member.
inline std::vector<std::vector<std::size_t>> pr1_classes(const Model& m) {
  std::vector<std::vector<std::size_t>> classes;
  for (std::size_t w = 0; w < m.world_count(); ++w) {
    bool placed = false;
    for (auto& c : classes) {
      if (m.pr1[c.front()] == m.pr1[w]) {
        c.push_back(w);
        placed = true;
        break;
      }
    }
    if (!placed) classes.push_back({w});
  }
  return classes;
}

/// A world whose PR1 puts mass other than 1 on its own class.
struct ClassViolation {
  std::size_t world;
  std::vector<std::size_t> members;
  Rational mass;
};

/// Checks PR1^w(C) = 1 for every class C and every w in C, with no
/// measure-zero exceptions allowed.
inline std::vector<ClassViolation> check_equivalence_class_constraint(const Model& m) {
  std::vector<ClassViolation> out;
  for (const auto& c : pr1_classes(m)) {
    for (auto w : c) {
      Rational mass = m.pr1[w].mass(c);
      if (mass != 1) out.push_back({w, c, mass});
    }
  }
  return out;
}

inline std::string describe(const Model& m, const ClassViolation& v) {
  std::string members;
  for (auto w : v.members) members += (members.empty() ? "" : ",") + m.worlds[w];
  return "PR1 of world " + m.worlds[v.world] + " gives class {" + members + "} mass " + to_string(v.mass) +
         ", not 1";
}

}  // namespace pmodal

#endif  // PMODAL_MODEL_HPP_
