// Command-line driver: eval, check, kripke, entail, search.
//
// Exit codes: 0 success, 1 semantic failure (false sentence, violated
// constraint, non-D4 frame, inconsistent premises, no model found),
// 2 input error.

#ifndef PMODAL_CLI_HPP_
#define PMODAL_CLI_HPP_

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pmodal/constraints.hpp"
#include "pmodal/evaluator.hpp"
#include "pmodal/kripke.hpp"
#include "pmodal/model.hpp"
#include "pmodal/model_io.hpp"
#include "pmodal/search.hpp"
#include "pmodal/solver.hpp"
#include "pmodal/syntax.hpp"

namespace pmodal::cli {

inline constexpr int kOk = 0;
inline constexpr int kFailure = 1;
inline constexpr int kInputError = 2;

/// "7/20 = 0.35"
inline std::string exact_and_decimal(const Rational& q) { return to_string(q) + " = " + to_decimal(q); }

inline nlohmann::json rational_json(const Rational& q) {
  return {{"exact", to_string(q)}, {"decimal", to_double(q)}};
}

namespace detail {

inline void collect_probs(const Formula& f, std::vector<Formula>& out) {
  if (f.is(Formula::Kind::kProb) && free_variables(f).empty() &&
      std::find(out.begin(), out.end(), f) == out.end()) {
    out.push_back(f);
  }
  for (const auto& c : f.children()) collect_probs(c, out);
}

inline Rational operator_value(const Model& m, std::size_t w, const Formula& p) {
  return p.level() == Level::kFirst ? prob1(m, w, Assignment{}, p.sub()) : prob2(m, w, Assignment{}, p.sub());
}

inline const char* value_kind(const Formula& p) { return p.level() == Level::kFirst ? "prob1" : "prob2"; }

inline std::vector<Formula> parse_formula_list(const std::string& list, const Signature& sig) {
  std::vector<Formula> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.find_first_not_of(" \t") == std::string::npos) continue;
    out.push_back(resolve_levels(parse(item, sig)));
  }
  return out;
}

inline std::string witness_text(const Model& m, const Witness& w) {
  std::string s = "  world " + m.worlds[w.world] + ", " + render(w.formula);
  if (w.interval) s += ", I = [" + to_string(w.interval->lo()) + "," + to_string(w.interval->hi()) + "]";
  for (const auto& [name, v] : w.values) s += ", " + name + " = " + exact_and_decimal(v);
  return s;
}

inline nlohmann::json witness_json(const Model& m, const Witness& w) {
  nlohmann::json j = {{"world", m.worlds[w.world]}, {"formula", render(w.formula)}};
  if (w.interval) j["interval"] = {to_string(w.interval->lo()), to_string(w.interval->hi())};
  for (const auto& [name, v] : w.values) j["values"][name] = rational_json(v);
  return j;
}

}  // namespace detail

struct Streams {
  std::ostream& out;
  std::ostream& err;
};

inline int cmd_eval(const std::string& model_path, const std::string& sentence, const std::string& world,
                    bool json, Streams io) {
  Model m = load_model(model_path);
  Formula s = resolve_levels(parse(sentence, model_signature(m)));
  if (contains_modal(s)) throw EvalError("eval expects a probabilistic sentence; use kripke for box/dia");
  require_closed(s);
  std::vector<std::size_t> worlds;
  if (world.empty()) {
    for (std::size_t w = 0; w < m.world_count(); ++w) worlds.push_back(w);
  } else {
    worlds.push_back(m.world_index(world));
  }
  std::vector<Formula> probs;
  detail::collect_probs(s, probs);

  bool all_true = true;
  nlohmann::json results = nlohmann::json::array();
  for (auto w : worlds) {
    bool truth = satisfies(m, w, s);
    all_true &= truth;
    if (json) {
      nlohmann::json values = nlohmann::json::array();
      for (const auto& p : probs) {
        nlohmann::json v = rational_json(detail::operator_value(m, w, p));
        v["formula"] = render(p);
        v["kind"] = detail::value_kind(p);
        values.push_back(std::move(v));
      }
      results.push_back({{"world", m.worlds[w]}, {"truth", truth}, {"values", std::move(values)}});
      continue;
    }
    if (worlds.size() > 1) io.out << m.worlds[w] << ": ";
    io.out << (truth ? "T" : "F");
    for (const auto& p : probs) {
      std::string text = std::string(detail::value_kind(p)) + " = " + exact_and_decimal(detail::operator_value(m, w, p));
      if (p == s) {
        io.out << " (" << text << ")";
        break;
      }
    }
    io.out << "\n";
    for (const auto& p : probs) {
      if (p == s) continue;
      io.out << "  " << render(p) << ": " << detail::value_kind(p) << " = "
             << exact_and_decimal(detail::operator_value(m, w, p)) << "\n";
    }
  }
  if (json) io.out << nlohmann::json{{"sentence", render(s)}, {"results", std::move(results)}}.dump(2) << "\n";
  return all_true ? kOk : kFailure;
}

struct CheckOptions {
  std::string miller;
  bool c1 = false;
  bool gaifman = false;
};

inline int cmd_check(const std::string& model_path, const CheckOptions& opts, bool json, Streams io) {
  Model m = load_model(model_path);
  Signature sig = model_signature(m);
  std::vector<Formula> formulas = detail::parse_formula_list(opts.miller, sig);
  if (formulas.empty() && (opts.c1 || opts.gaifman)) {
    for (const auto& [name, p] : m.interpretation.predicates) {
      if (p.arity == 0) formulas.push_back(Formula::atom(name));
    }
  }
  bool ok = true;
  nlohmann::json report = nlohmann::json::object();
  std::ostringstream text;

  report["validate"] = {{"holds", true}, {"violations", nlohmann::json::array()}};
  text << "validate: ok\n";

  auto classes = check_equivalence_class_constraint(m);
  {
    nlohmann::json violations = nlohmann::json::array();
    for (const auto& v : classes) violations.push_back(describe(m, v));
    report["equivalence_class"] = {{"holds", classes.empty()}, {"violations", violations}};
    text << "equivalence-class: " << (classes.empty() ? "ok" : "FAIL") << "\n";
    for (const auto& v : classes) text << "  " << describe(m, v) << "\n";
    ok &= classes.empty();
  }

  auto add_report = [&](const std::string& key, const std::string& label, const std::vector<ConstraintReport>& rs) {
    std::size_t instances = rs.size();
    std::size_t vacuous = 0;
    std::vector<const Witness*> failures;
    for (const auto& r : rs) {
      vacuous += r.vacuous ? 1 : 0;
      for (const auto& w : r.witnesses) failures.push_back(&w);
    }
    nlohmann::json ws = nlohmann::json::array();
    for (const auto* w : failures) ws.push_back(detail::witness_json(m, *w));
    report[key] = {{"holds", failures.empty()}, {"instances", instances}, {"vacuous", vacuous}, {"witnesses", ws}};
    text << label << ": " << (failures.empty() ? "ok" : "FAIL") << " (" << instances << " instances, " << vacuous
         << " vacuous)\n";
    for (const auto* w : failures) text << detail::witness_text(m, *w) << "\n";
    ok &= failures.empty();
  };

  if (!opts.miller.empty()) {
    std::vector<ConstraintReport> rs;
    for (std::size_t w = 0; w < m.world_count(); ++w) {
      for (const auto& f : formulas) {
        for (const auto& i : realized_intervals(m, f)) rs.push_back(check_miller(m, w, f, i));
      }
    }
    add_report("miller", "miller", rs);
  }
  if (opts.c1) {
    std::vector<ConstraintReport> rs;
    for (std::size_t w = 0; w < m.world_count(); ++w) {
      for (const auto& f : formulas) {
        for (const auto& i : realized_intervals(m, f)) rs.push_back(check_c1(m, w, f, i));
      }
    }
    add_report("c1", "c1", rs);
  }
  if (opts.gaifman) {
    std::vector<ConstraintReport> rs;
    for (std::size_t w = 0; w < m.world_count(); ++w) {
      for (const auto& f : formulas) rs.push_back(check_gaifman_direct(m, w, f));
    }
    add_report("gaifman_direct", "gaifman-direct", rs);
  }
  report["holds"] = ok;
  if (json) {
    io.out << report.dump(2) << "\n";
  } else {
    io.out << text.str();
  }
  return ok ? kOk : kFailure;
}

inline int cmd_kripke(const std::string& model_path, bool json, Streams io) {
  Model m = load_model(model_path);
  KripkeStructure k = to_kripke(m);
  auto trans = is_transitive(k);
  auto serial = is_serial(k);
  std::string trans_witness;
  if (trans.witness) {
    const auto& t = *trans.witness;
    trans_witness = k.name(t[0]) + " -> " + k.name(t[1]) + " -> " + k.name(t[2]);
  }
  if (json) {
    nlohmann::json doc = {{"kripke", kripke_to_json(k)}, {"transitive", trans.transitive}, {"serial", serial.serial}};
    if (trans.witness) {
      const auto& t = *trans.witness;
      doc["transitivity_witness"] = {k.name(t[0]), k.name(t[1]), k.name(t[2])};
    }
    if (serial.witness) doc["seriality_witness"] = k.name(*serial.witness);
    io.out << doc.dump(2) << "\n";
  } else {
    io.out << kripke_to_json(k).dump(2) << "\n";
    io.out << "transitive: " << (trans.transitive ? "yes" : "no (" + trans_witness + ")") << "\n";
    io.out << "serial: " << (serial.serial ? "yes" : "no (" + k.name(*serial.witness) + " has no successor)")
           << "\n";
  }
  return trans.transitive && serial.serial ? kOk : kFailure;
}

inline int cmd_entail(const std::string& constraints_path, const std::string& query_text, std::size_t atom_cap,
                      bool json, Streams io) {
  std::ifstream in(constraints_path);
  if (!in) throw Error("cannot open constraints file '" + constraints_path + "'");
  auto premises = parse_constraints(in);
  Formula query = parse(query_text);
  for (const auto& p : premises) require_flat(p.sentence);
  require_flat(query);
  auto atoms = flat_atoms(premises, {query});
  if (atoms.size() > atom_cap) {
    throw SolverError(std::to_string(atoms.size()) + " atoms exceed the cap of " + std::to_string(atom_cap));
  }
  if (!flat_consistent(premises, atom_cap).consistent) {
    io.err << "premises are inconsistent\n";
    if (json) io.out << nlohmann::json{{"consistent", false}}.dump(2) << "\n";
    return kFailure;
  }
  auto r = flat_entail_bounds(premises, query, atom_cap);
  if (json) {
    io.out << nlohmann::json{{"consistent", true},
                             {"query", render(query)},
                             {"lower", rational_json(r.bounds.lo())},
                             {"upper", rational_json(r.bounds.hi())}}
                  .dump(2)
           << "\n";
  } else {
    io.out << "[" << to_string(r.bounds.lo()) << ", " << to_string(r.bounds.hi()) << "]\n";
  }
  return kOk;
}

inline int cmd_search(const std::string& sentence, std::size_t max_worlds, std::size_t denominator,
                      const std::string& output, bool json, Streams io) {
  Formula s = parse(sentence);
  require_closed(s);
  auto found = search_model(s, max_worlds, denominator);
  if (!found) {
    if (json) {
      io.out << nlohmann::json{{"found", false}}.dump(2) << "\n";
    } else {
      io.out << "NotFound (max-worlds " << max_worlds << ", denominator " << denominator << ")\n";
    }
    return kFailure;
  }
  const std::string& world = found->model.worlds[found->world];
  if (!output.empty()) save_model(found->model, output);
  if (json) {
    nlohmann::json doc = {{"found", true}, {"world", world}, {"model", model_to_json(found->model)}};
    if (!output.empty()) doc["output"] = output;
    io.out << doc.dump(2) << "\n";
  } else if (!output.empty()) {
    io.out << "found: world " << world << " (model written to " << output << ")\n";
  } else {
    io.out << model_to_json(found->model).dump(2) << "\n" << "world: " << world << "\n";
  }
  return kOk;
}

/// Entry point; `args` excludes the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Two-level probability logic toolkit", "pmodal"};
  app.require_subcommand(1);
  std::string format = "text";
  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));
  };

  std::string model_path, sentence, world;
  auto* eval = app.add_subcommand("eval", "Evaluate a sentence in a model");
  eval->add_option("model", model_path, "Model file")->required();
  eval->add_option("sentence", sentence, "Sentence")->required();
  eval->add_option("--world", world, "World to evaluate at (default: all)");
  add_format(eval);

  CheckOptions check_opts;
  auto* check = app.add_subcommand("check", "Validate a model and check coherence constraints");
  check->add_option("model", model_path, "Model file")->required();
  check->add_option("--miller", check_opts.miller, "Comma-separated formulas for Miller's principle");
  check->add_flag("--c1", check_opts.c1, "Check C1 (minimal self-knowledge)");
  check->add_flag("--gaifman", check_opts.gaifman, "Compare PR2 measures with second-order values");
  add_format(check);

  auto* kripke = app.add_subcommand("kripke", "Translate a model into a Kripke structure");
  kripke->add_option("model", model_path, "Model file")->required();
  add_format(kripke);

  std::string constraints_path, query;
  std::size_t atom_cap = kDefaultAtomCap;
  auto* entail = app.add_subcommand("entail", "Bound a query's probability from flat constraints");
  entail->add_option("constraints", constraints_path, "Constraints file")->required();
  entail->add_option("query", query, "Propositional query")->required();
  entail->add_option("--atom-cap", atom_cap, "Maximum number of atoms");
  add_format(entail);

  std::size_t max_worlds = 3;
  std::size_t denominator = 4;
  std::string output;
  auto* search = app.add_subcommand("search", "Search for a small model of a sentence");
  search->add_option("sentence", sentence, "Sentence")->required();
  search->add_option("--max-worlds", max_worlds, "Maximum number of worlds");
  search->add_option("--denominator", denominator, "Common denominator of weights");
  search->add_option("--output,-o", output, "Write the model file here");
  add_format(search);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  bool json = format == "json";
  Streams io{out, err};
  try {
    if (*eval) return cmd_eval(model_path, sentence, world, json, io);
    if (*check) return cmd_check(model_path, check_opts, json, io);
    if (*kripke) return cmd_kripke(model_path, json, io);
    if (*entail) return cmd_entail(constraints_path, query, atom_cap, json, io);
    if (*search) return cmd_search(sentence, max_worlds, denominator, output, json, io);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}

}  // namespace pmodal::cli

#endif  // PMODAL_CLI_HPP_
