// JSON model files.
//
//   {
//     "worlds": ["w1", "w2"],
//     "domain": ["jane"],
//     "pr1": {"w1": {"w1": 1}, "w2": {"w1": "1/2", "w2": 0.5}},
//     "pr2": {...},
//     "predicates": {"H": {"arity": 0, "extension": {"w1": [[]]}}},
//     "constants": {"Jane": "jane"}
//   }
//
// Weights are JSON numbers or "p/q" strings and are read exactly: decimal
// literals keep their source text and never pass through a double. Omitted
// weights are 0; omitted extension worlds are empty.

#ifndef PMODAL_MODEL_IO_HPP_
#define PMODAL_MODEL_IO_HPP_

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "pmodal/model.hpp"

namespace pmodal {

namespace detail {

/// Builds a DOM like nlohmann's default parser, but keeps floating-point
/// literals as their raw text so they can be converted to exact rationals.
class ExactNumberSax {
 public:
  using json = nlohmann::json;

  explicit ExactNumberSax(json& root) : root_(root) {}

  bool null() { return put(json(nullptr)); }
  bool boolean(bool v) { return put(json(v)); }
  bool number_integer(json::number_integer_t v) { return put(json(v)); }
  bool number_unsigned(json::number_unsigned_t v) { return put(json(v)); }
  bool number_float(json::number_float_t, const json::string_t& raw) { return put(json(raw)); }
  bool string(json::string_t& v) { return put(json(v)); }
  bool binary(json::binary_t& v) { return put(json::binary(v)); }

  bool start_object(std::size_t) {
    json* slot = put_ref(json::object());
    stack_.push_back(slot);
    return true;
  }
  bool key(json::string_t& k) {
    key_ = k;
    return true;
  }
  bool end_object() {
    stack_.pop_back();
    return true;
  }
  bool start_array(std::size_t) {
    json* slot = put_ref(json::array());
    stack_.push_back(slot);
    return true;
  }
  bool end_array() {
    stack_.pop_back();
    return true;
  }

  bool parse_error(std::size_t, const std::string&, const nlohmann::detail::exception& ex) {
    throw ModelError(std::string("malformed JSON: ") + ex.what());
  }

 private:
  bool put(json v) {
    put_ref(std::move(v));
    return true;
  }

  json* put_ref(json v) {
    if (stack_.empty()) {
      root_ = std::move(v);
      return &root_;
    }
    json& top = *stack_.back();
    if (top.is_object()) {
      json& slot = top[key_];
      slot = std::move(v);
      return &slot;
    }
    top.push_back(std::move(v));
    return &top.back();
  }

  json& root_;
  std::vector<json*> stack_;
  std::string key_;
};

inline Rational weight_from_json(const nlohmann::json& v, const std::string& where) {
  if (v.is_number_integer() || v.is_number_unsigned()) {
    if (v.is_number_integer() && v.get<long long>() < 0) {
      throw ModelError(where + ": weight " + v.dump() + " outside [0,1]");
    }
    return Rational(v.get<unsigned long long>());
  }
  if (v.is_string()) {
    std::string text = v.get<std::string>();
    bool negative = !text.empty() && text[0] == '-';
    auto q = parse_rational(negative ? std::string_view(text).substr(1) : std::string_view(text));
    if (!q) throw ModelError(where + ": malformed weight '" + text + "'");
    if (negative && *q != 0) throw ModelError(where + ": weight " + text + " outside [0,1]");
    return *q;
  }
  throw ModelError(where + ": weight must be a number or \"p/q\" string");
}

inline const nlohmann::json& require(const nlohmann::json& obj, const char* key) {
  if (!obj.contains(key)) throw ModelError(std::string("missing key \"") + key + "\"");
  return obj.at(key);
}

inline std::vector<std::string> string_array(const nlohmann::json& v, const std::string& what) {
  if (!v.is_array()) throw ModelError(what + " must be an array of strings");
  std::vector<std::string> out;
  for (const auto& e : v) {
    if (!e.is_string()) throw ModelError(what + " must be an array of strings");
    out.push_back(e.get<std::string>());
  }
  return out;
}

inline std::vector<Distribution> distributions_from_json(const Model& m, const nlohmann::json& v,
                                                         const std::string& label) {
  if (!v.is_object()) throw ModelError(label + " must be an object");
  std::vector<Distribution> out(m.world_count());
  for (auto& d : out) d.weights.assign(m.world_count(), Rational(0));
  std::vector<bool> present(m.world_count(), false);
  for (const auto& [from, row] : v.items()) {
    auto w = m.find_world(from);
    if (!w) throw ModelError(label + ": unknown world '" + from + "'");
    if (!row.is_object()) throw ModelError(label + " of " + from + " must be an object");
    present[*w] = true;
    for (const auto& [to, weight] : row.items()) {
      auto v2 = m.find_world(to);
      if (!v2) throw ModelError(label + " of " + from + ": unknown world '" + to + "'");
      out[*w].weights[*v2] = weight_from_json(weight, label + " of " + from);
    }
  }
  for (std::size_t w = 0; w < m.world_count(); ++w) {
    if (!present[w]) throw ModelError(label + ": no distribution for world '" + m.worlds[w] + "'");
  }
  return out;
}

}  // namespace detail

/// Parses JSON into a model without validating probabilities.
inline Model model_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw ModelError("model file must be a JSON object");
  Model m;
  m.worlds = detail::string_array(detail::require(doc, "worlds"), "\"worlds\"");
  m.domain = doc.contains("domain") ? detail::string_array(doc.at("domain"), "\"domain\"")
                                    : std::vector<std::string>{};
  m.pr1 = detail::distributions_from_json(m, detail::require(doc, "pr1"), "pr1");
  m.pr2 = detail::distributions_from_json(m, detail::require(doc, "pr2"), "pr2");
  if (doc.contains("predicates")) {
    const auto& preds = doc.at("predicates");
    if (!preds.is_object()) throw ModelError("\"predicates\" must be an object");
    for (const auto& [name, spec] : preds.items()) {
      if (!spec.is_object() || !spec.contains("arity") || !spec.at("arity").is_number_unsigned()) {
        throw ModelError("predicate " + name + " needs a non-negative integer \"arity\"");
      }
      Predicate p;
      p.arity = spec.at("arity").get<std::size_t>();
      p.extension.resize(m.world_count());
      if (spec.contains("extension")) {
        const auto& ext = spec.at("extension");
        if (!ext.is_object()) throw ModelError("extension of " + name + " must be an object");
        for (const auto& [world, tuples] : ext.items()) {
          auto w = m.find_world(world);
          if (!w) throw ModelError("extension of " + name + ": unknown world '" + world + "'");
          if (!tuples.is_array()) throw ModelError("extension of " + name + " must list tuples");
          for (const auto& t : tuples) {
            Tuple tuple = detail::string_array(t, "tuple of " + name);
            if (tuple.size() != p.arity) {
              throw ModelError("predicate " + name + " at world " + world + ": tuple of length " +
                               std::to_string(tuple.size()) + " for arity " + std::to_string(p.arity));
            }
            p.extension[*w].insert(std::move(tuple));
          }
        }
      }
      m.interpretation.predicates.emplace(name, std::move(p));
    }
  }
  if (doc.contains("constants")) {
    const auto& consts = doc.at("constants");
    if (!consts.is_object()) throw ModelError("\"constants\" must be an object");
    for (const auto& [name, d] : consts.items()) {
      if (!d.is_string()) throw ModelError("constant " + name + " must name an individual");
      m.interpretation.constants.emplace(name, d.get<std::string>());
    }
  }
  return m;
}

/// Parses and validates; throws ModelError listing every violation.
inline Model load_model_text(const std::string& text) {
  nlohmann::json doc;
  detail::ExactNumberSax sax(doc);
  nlohmann::json::sax_parse(text, &sax);
  Model m = model_from_json(doc);
  auto violations = validate_model(m);
  if (!violations.empty()) {
    std::string msg = "invalid model:";
    for (const auto& v : violations) msg += "\n  " + v.message;
    throw ModelError(msg);
  }
  return m;
}

inline Model load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ModelError("cannot open model file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return load_model_text(buf.str());
}

/// Exact serialization: weights as "p/q" strings, zero weights and empty
/// extensions omitted.
inline nlohmann::json model_to_json(const Model& m) {
  using json = nlohmann::json;
  json doc = json::object();
  doc["worlds"] = m.worlds;
  doc["domain"] = m.domain;
  auto dists = [&](const std::vector<Distribution>& ds) {
    json out = json::object();
    for (std::size_t w = 0; w < m.world_count(); ++w) {
      json row = json::object();
      for (std::size_t v = 0; v < m.world_count(); ++v) {
        if (ds[w].weights[v] != 0) row[m.worlds[v]] = to_string(ds[w].weights[v]);
      }
      out[m.worlds[w]] = std::move(row);
    }
    return out;
  };
  doc["pr1"] = dists(m.pr1);
  doc["pr2"] = dists(m.pr2);
  json preds = json::object();
  for (const auto& [name, p] : m.interpretation.predicates) {
    json ext = json::object();
    for (std::size_t w = 0; w < m.world_count(); ++w) {
      if (p.extension[w].empty()) continue;
      json tuples = json::array();
      for (const auto& t : p.extension[w]) tuples.push_back(t);
      ext[m.worlds[w]] = std::move(tuples);
    }
    preds[name] = {{"arity", p.arity}, {"extension", std::move(ext)}};
  }
  doc["predicates"] = std::move(preds);
  doc["constants"] = m.interpretation.constants;
  return doc;
}

inline void save_model(const Model& m, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ModelError("cannot write model file '" + path + "'");
  out << model_to_json(m).dump(2) << "\n";
}

}  // namespace pmodal

#endif  // PMODAL_MODEL_IO_HPP_
