#pragma once

// Command-line front end. run_cli() is separate from main() so tests can drive it in-process.
//
// Exit codes: 0 success, 2 invalid input, 3 resource cap exceeded, 4 mathematical
// precondition failed (e.g. an unbounded weight function). Errors go to stderr as JSON.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "weightcell/automaton_io.hpp"
#include "weightcell/closed_forms.hpp"
#include "weightcell/cone.hpp"
#include "weightcell/coxeter.hpp"
#include "weightcell/weights.hpp"

namespace weightcell::cli {

namespace detail {

/// Insertion-ordered JSON object whose values are already-rendered JSON.
class JsonOut {
 public:
  JsonOut& raw(const std::string& key, std::string value) {
    while (!value.empty() && value.back() == '\n') value.pop_back();
    items_.emplace_back(key, std::move(value));
    return *this;
  }
  template <typename T>
  JsonOut& add(const std::string& key, const T& value) {
    return raw(key, nlohmann::json(value).dump());
  }
  std::string str() const {
    std::string out = "{";
    for (std::size_t i = 0; i < items_.size(); ++i) {
      out += (i ? ",\n  " : "\n  ") + nlohmann::json(items_[i].first).dump() + ": " + items_[i].second;
    }
    return out + (items_.empty() ? "}\n" : "\n}\n");
  }

 private:
  std::vector<std::pair<std::string, std::string>> items_;
};

inline std::vector<std::string> word_strings(const std::vector<std::string>& alphabet, const std::vector<Word>& words) {
  std::vector<std::string> out;
  for (const auto& w : words) out.push_back(format_word(alphabet, w));
  return out;
}

inline std::string rows_json(const std::vector<IntVector>& rows) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& r : rows) {
    nlohmann::json row = nlohmann::json::array();
    for (const auto& z : r) row.push_back(nlohmann::json::parse(z.get_str()));
    j.push_back(row);
  }
  return j.dump();
}

inline std::string rows_text(const std::vector<IntVector>& rows) {
  std::ostringstream os;
  for (const auto& r : rows) print_vector(os << "  ", r) << '\n';
  return os.str();
}

inline std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');)
    if (!item.empty()) out.push_back(item);
  return out;
}

struct Options {
  std::string format = "json";
  std::string phi;
  std::string order;
  std::string lang = "lex";
  std::size_t maxlen = 6;
  std::optional<std::size_t> max_states, max_cycles;
  bool strict = false;
};

inline WeightOptions weight_options(const Options& o) {
  WeightOptions w;
  if (const char* env = std::getenv("WEIGHTCELL_CAPS")) w.caps = parse_caps(env);
  if (o.max_states) w.caps.max_states = *o.max_states;
  if (o.max_cycles) w.caps.max_cycles = *o.max_cycles;
  if (w.caps.max_states == 0 || w.caps.max_cycles == 0) throw ValidationError("caps must be positive");
  w.strict_graph_sense = o.strict;
  return w;
}

inline void check_format(const Options& o, std::initializer_list<const char*> allowed) {
  for (const char* f : allowed)
    if (o.format == f) return;
  throw ValidationError("format '" + o.format + "' is not available for this command");
}

inline std::string automaton_out(const Automaton& a, const Options& o, const std::string& name) {
  if (o.format == "dot") return to_dot(a, name);
  return to_json(a);
}

inline CoxeterSystem load_system(const std::string& path, const Options& o) {
  CoxeterSystem sys = CoxeterSystem::from_json_text(read_text_file(path));
  if (!o.order.empty()) sys = sys.reordered(split_list(o.order));
  return sys;
}

inline WeightVector require_phi(const std::vector<std::string>& alphabet, const Options& o) {
  if (o.phi.empty()) throw ValidationError("--phi is required");
  return WeightVector::parse(alphabet, o.phi);
}

inline std::string bound_out(const std::vector<std::string>& alphabet, const CellResult& r, const Options& o,
                             bool with_cell) {
  if (o.format == "dot") return to_dot(*r.cell_dfa, "cell");
  if (o.format == "text") {
    std::ostringstream os;
    os << "bound " << r.bound.get_str() << '\n';
    for (const auto& w : r.witnesses) os << "witness " << format_word(alphabet, w) << '\n';
    if (with_cell) os << "cell states " << r.cell_dfa->num_states() << '\n';
    return os.str();
  }
  JsonOut j;
  j.add("bound", r.bound.get_str()).add("witnesses", word_strings(alphabet, r.witnesses));
  if (with_cell) j.raw("cell", to_json(*r.cell_dfa));
  return j.str();
}

inline std::string cone_out(const HRep& raw, const Caps& caps, const Options& o) {
  const auto red = remove_redundant_detailed(raw);
  const auto v = extreme_rays(red.irredundant, caps);
  if (o.format == "text") {
    std::ostringstream os;
    os << "dim " << raw.dim << "\ninequalities <n, phi> <= 0:\n" << rows_text(red.irredundant.normals);
    if (!red.redundant.empty()) os << "redundant:\n" << rows_text(red.redundant);
    os << "lineality:\n" << rows_text(v.lineality) << "rays:\n" << rows_text(v.rays);
    return os.str();
  }
  JsonOut j;
  j.add("dim", raw.dim)
      .raw("raw_normals", rows_json(raw.normals))
      .raw("normals", rows_json(red.irredundant.normals))
      .raw("redundant", rows_json(red.redundant))
      .raw("lineality", rows_json(v.lineality))
      .raw("rays", rows_json(v.rays));
  return j.str();
}

// --- automaton commands ---

inline int automaton_info(const std::string& path, const Options& o, std::ostream& out) {
  check_format(o, {"json", "text"});
  const Automaton a = load_automaton(path);
  const Automaton m = minimize(determinize(trim(a), weight_options(o).caps));
  const bool empty = language_empty(a);
  bool finite = true;
  if (!empty) finite = simple_cycles(m, weight_options(o).caps).empty();
  if (o.format == "text") {
    out << "states " << a.num_states() << "\ntransitions " << a.num_transitions() << "\ndeterministic "
        << (a.deterministic() ? "yes" : "no") << "\nminimal states " << m.num_states() << "\nlanguage "
        << (empty ? "empty" : (finite ? "finite" : "infinite")) << '\n';
    return 0;
  }
  JsonOut j;
  j.add("alphabet", a.alphabet())
      .add("states", a.num_states())
      .add("transitions", a.num_transitions())
      .add("deterministic", a.deterministic())
      .add("accept", a.accept_states().size())
      .add("minimal_states", m.num_states())
      .add("empty", empty)
      .add("finite", finite);
  out << j.str();
  return 0;
}

inline int automaton_enum(const std::string& path, const Options& o, std::ostream& out) {
  check_format(o, {"json", "text"});
  const Automaton a = load_automaton(path);
  const auto words = word_strings(a.alphabet(), enumerate(a, o.maxlen, weight_options(o).caps));
  if (o.format == "text") {
    for (const auto& w : words) out << w << '\n';
  } else {
    out << nlohmann::json(words).dump(2) << '\n';
  }
  return 0;
}

// --- coxeter commands ---

inline int coxeter_closed_form(const std::string& family, std::size_t n, const Options& o, std::ostream& out) {
  check_format(o, {"json", "text"});
  auto spherical = [&](const SphericalFormulaResult& r, const CoxeterSystem& sys) {
    if (o.format == "text") {
      out << "bound " << r.bound.get_str() << '\n';
      if (r.cell)
        for (const auto& w : *r.cell) out << "cell " << format_word(sys.generators(), w) << '\n';
      return 0;
    }
    JsonOut j;
    j.add("family", family).add("bound", r.bound.get_str());
    if (r.cell) j.add("cell", word_strings(sys.generators(), *r.cell));
    else j.raw("cell", "null");
    out << j.str();
    return 0;
  };
  if (family == "dihedral" || family == "bn" || family == "f4") {
    const auto phi = require_phi({"a", "b"}, o);
    if (family == "dihedral") {
      if (n < 1) throw ValidationError("dihedral needs --rank m >= 1 (bond 2m)");
      return spherical(dihedral_bound(static_cast<unsigned>(n), phi[0], phi[1]), systems::dihedral(2 * static_cast<unsigned>(n)));
    }
    if (family == "bn") return spherical(bn_bound(n, phi[0], phi[1]), systems::type_b(n));
    return spherical(f4_bound(phi[0], phi[1]), systems::type_f4());
  }

  const AffineConeSpec spec = affine_cone(parse_affine_family(family), n);
  std::optional<bool> bounded;
  if (!o.phi.empty()) bounded = contains(spec.cone, WeightVector::parse(spec.parameters, o.phi));
  if (o.format == "text") {
    out << "parameters";
    for (const auto& p : spec.parameters) out << ' ' << p;
    out << "\ninequalities <n, params> <= 0:\n" << rows_text(spec.cone.normals) << "per coweight:\n"
        << rows_text(spec.per_coweight) << "2rho coordinates (" << spec.rho_basis << " basis):\n" << rows_text(spec.rho);
    if (bounded) out << "bounded " << (*bounded ? "yes" : "no") << '\n';
    return 0;
  }
  JsonOut j;
  j.add("family", family)
      .add("rank", spec.rank)
      .add("parameters", spec.parameters)
      .raw("normals", rows_json(spec.cone.normals))
      .raw("per_coweight", rows_json(spec.per_coweight))
      .add("rho_basis", spec.rho_basis)
      .raw("two_rho", rows_json(spec.rho));
  if (bounded) j.add("bounded", *bounded);
  out << j.str();
  return 0;
}

inline int coxeter_probe(const std::string& path, const Options& o, std::size_t samples, unsigned seed,
                         std::ostream& out) {
  check_format(o, {"json", "text"});
  const CoxeterSystem sys = load_system(path, o);
  const WeightOptions wo = weight_options(o);
  std::vector<WeightVector> phis;
  if (!o.phi.empty()) {
    phis.push_back(require_phi(sys.generators(), o));
  } else {
    // Sample bounded weight functions on the group: the language cone restricted to the
    // odd-bond parameter space.
    const auto P = odd_bond_substitution(sys);
    const HRep h = restrict_cone(cone_of_automaton(shortlex_automaton(sys, wo.caps), wo.caps), P);
    const VRep v = extreme_rays(remove_redundant(h), wo.caps);
    std::mt19937_64 rng(seed);
    for (std::size_t i = 0; i < samples; ++i) phis.push_back(weight_for(sys, substitute(P, sample_point(v, rng))));
  }
  nlohmann::json results = nlohmann::json::array();
  std::size_t spherical = 0;
  for (const auto& phi : phis) {
    const auto p = probe_spherical(sys, phi, wo);
    if (!p.spherical_witnesses.empty()) ++spherical;
    if (o.format == "text") {
      out << phi.to_string() << " bound " << p.bound.get_str() << " spherical witnesses "
          << p.spherical_witnesses.size() << '\n';
    }
    nlohmann::json r;
    r["phi"] = phi.to_string();
    r["bound"] = p.bound.get_str();
    r["spherical_witnesses"] = word_strings(sys.generators(), p.spherical_witnesses);
    r["other_witnesses"] = word_strings(sys.generators(), p.other_witnesses);
    results.push_back(r);
  }
  if (o.format == "text") {
    out << spherical << " of " << phis.size() << " attained on a spherical parabolic\n";
    return 0;
  }
  JsonOut j;
  j.add("samples", phis.size()).add("attained_on_spherical", spherical).raw("results", results.dump(2));
  out << j.str();
  return 0;
}

inline int coxeter_cell(const std::string& path, const Options& o, bool with_cell, std::ostream& out) {
  check_format(o, with_cell ? std::initializer_list<const char*>{"json", "text", "dot"}
                            : std::initializer_list<const char*>{"json", "text"});
  const CoxeterSystem sys = load_system(path, o);
  const auto phi = require_phi(sys.generators(), o);
  const auto r = group_cell(sys, phi, parse_language(o.lang), weight_options(o));
  if (o.format == "dot") {
    out << to_dot(r.cell_dfa, "cell");
    return 0;
  }
  if (o.format == "text") {
    out << "bound " << r.bound.get_str() << '\n';
    for (const auto& w : r.witnesses) out << "witness " << format_word(sys.generators(), w) << '\n';
    out << "|X| " << r.X.size() << "\n|Y| " << r.Y.size() << '\n';
    if (with_cell) out << "cell states " << r.cell_dfa.num_states() << '\n';
    return 0;
  }
  JsonOut j;
  j.add("bound", r.bound.get_str())
      .add("witnesses", word_strings(sys.generators(), r.witnesses))
      .add("X", word_strings(sys.generators(), r.X))
      .add("Y", word_strings(sys.generators(), r.Y));
  if (with_cell) j.raw("cell", to_json(r.cell_dfa));
  out << j.str();
  return 0;
}

inline std::string error_json(const char* kind, const std::string& message) {
  nlohmann::json j;
  j["error"] = kind;
  j["message"] = message;
  return j.dump();
}

}  // namespace detail

inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  using namespace detail;
  CLI::App app{"weightcell: bounded weight functions on regular languages and Coxeter groups"};
  app.require_subcommand(1);
  Options o;
  std::string file, family;
  std::size_t rank = 0, samples = 20;
  unsigned seed = 1;
  std::string psi, signs;

  auto common = [&](CLI::App* cmd) {
    cmd->add_option("--format", o.format, "json, dot or text")->check(CLI::IsMember({"json", "dot", "text"}));
    cmd->add_option("--max-states", o.max_states, "state cap");
    cmd->add_option("--max-cycles", o.max_cycles, "simple circuit cap");
  };
  auto with_file = [&](CLI::App* cmd, const char* what) {
    cmd->add_option("file", file, what)->required();
    common(cmd);
  };

  auto* automaton = app.add_subcommand("automaton", "inspect and normalise automaton files");
  automaton->require_subcommand(1);
  auto* a_info = automaton->add_subcommand("info", "sizes, determinism and language type");
  auto* a_min = automaton->add_subcommand("min", "minimal DFA in canonical numbering");
  auto* a_enum = automaton->add_subcommand("enum", "accepted words up to --maxlen, shortlex");
  auto* a_rev = automaton->add_subcommand("reverse", "automaton of the reversed language");
  for (auto* c : {a_info, a_min, a_enum, a_rev}) with_file(c, "automaton JSON");
  a_enum->add_option("--maxlen", o.maxlen, "maximum word length");
  a_rev->add_flag("--minimize", "determinize and minimize the result");

  auto* cone = app.add_subcommand("cone", "cone of bounded weight functions of an automaton");
  with_file(cone, "automaton JSON");
  auto* bnd = app.add_subcommand("bound", "bound of a weight function and its circuit-free witnesses");
  auto* cell = app.add_subcommand("cell", "bound, witnesses and the automaton of the cell");
  for (auto* c : {bnd, cell}) {
    with_file(c, "automaton JSON");
    c->add_option("--phi", o.phi, "weights, e.g. s=1,t=-1/2")->required();
    c->add_flag("--strict", o.strict, "also forbid revisiting the start state in circuit-free words");
  }

  auto* cox = app.add_subcommand("coxeter", "Coxeter group front end");
  cox->require_subcommand(1);
  auto* c_build = cox->add_subcommand("build", "shortlex or reduced-word automaton");
  auto* c_cone = cox->add_subcommand("cone", "cone of bounded weight functions on the language");
  auto* c_bound = cox->add_subcommand("bound", "bound of a weight function on the group");
  auto* c_cell = cox->add_subcommand("cell", "bound and cell automaton of a weight function");
  auto* c_probe = cox->add_subcommand("probe-spherical", "is the bound attained in a finite parabolic? (experimental)");
  auto* c_hecke = cox->add_subcommand("hecke", "bound and cell of a one-dimensional Hecke representation");
  for (auto* c : {c_build, c_cone, c_bound, c_cell, c_probe, c_hecke}) {
    with_file(c, "Coxeter system JSON (0 = infinity)");
    c->add_option("--order", o.order, "generator order, e.g. s,t,u");
    c->add_option("--lang", o.lang, "lex or reduced")->check(CLI::IsMember({"lex", "reduced"}));
  }
  for (auto* c : {c_bound, c_cell}) c->add_option("--phi", o.phi, "weights per generator")->required();
  c_probe->add_option("--phi", o.phi, "weights per generator (default: random samples)");
  c_probe->add_option("--samples", samples, "number of random bounded weight functions");
  c_probe->add_option("--seed", seed, "random seed");
  c_hecke->add_option("--psi", psi, "positive integer parameters, e.g. s=1,t=1,u=1")->required();
  c_hecke->add_option("--signs", signs, "signs per generator, e.g. s=-,t=+,u=-")->required();
  auto* c_closed = cox->add_subcommand("closed-form", "closed forms: dihedral, bn, f4, bt, ct, ft4, gt2");
  c_closed->add_option("family", family, "family name")->required();
  c_closed->add_option("--rank", rank, "m for dihedral (bond 2m), n for bn, bt, ct");
  c_closed->add_option("--phi", o.phi, "parameters, e.g. a=1,b=-1");
  common(c_closed);

  try {
    try {
      app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
      out << app.help();
      return 0;
    } catch (const CLI::CallForAllHelp&) {
      out << app.help("", CLI::AppFormatMode::All);
      return 0;
    } catch (const CLI::ParseError& e) {
      err << error_json("validation", e.what()) << '\n';
      return 2;
    }

    if (*automaton) {
      if (*a_info) return automaton_info(file, o, out);
      if (*a_enum) return automaton_enum(file, o, out);
      check_format(o, {"json", "dot"});
      const Automaton a = load_automaton(file);
      const Caps caps = weight_options(o).caps;
      if (*a_min) out << automaton_out(minimize(determinize(trim(a), caps)), o, "minimal");
      if (*a_rev) {
        Automaton r = reverse(a);
        if (a_rev->count("--minimize")) r = minimize(determinize(r, caps));
        out << automaton_out(r, o, "reverse");
      }
      return 0;
    }
    if (*cone) {
      check_format(o, {"json", "text"});
      const Automaton a = load_automaton(file);
      const Caps caps = weight_options(o).caps;
      out << cone_out(cone_of_automaton(a, caps), caps, o);
      return 0;
    }
    if (*bnd || *cell) {
      const bool with_cell = static_cast<bool>(*cell);
      check_format(o, with_cell ? std::initializer_list<const char*>{"json", "text", "dot"}
                                : std::initializer_list<const char*>{"json", "text"});
      const Automaton a = load_automaton(file);
      const auto phi = require_phi(a.alphabet(), o);
      const auto wo = weight_options(o);
      out << bound_out(a.alphabet(), with_cell ? cell_automaton(a, phi, wo) : bound(a, phi, wo), o, with_cell);
      return 0;
    }
    if (*c_closed) return coxeter_closed_form(family, rank, o, out);
    if (*c_build) {
      check_format(o, {"json", "dot"});
      const CoxeterSystem sys = load_system(file, o);
      out << automaton_out(coxeter_automaton(sys, parse_language(o.lang), weight_options(o).caps), o, o.lang);
      return 0;
    }
    if (*c_cone) {
      check_format(o, {"json", "text"});
      const CoxeterSystem sys = load_system(file, o);
      const Caps caps = weight_options(o).caps;
      out << cone_out(cone_of_automaton(coxeter_automaton(sys, parse_language(o.lang), caps), caps), caps, o);
      return 0;
    }
    if (*c_bound) return coxeter_cell(file, o, false, out);
    if (*c_cell) return coxeter_cell(file, o, true, out);
    if (*c_probe) return coxeter_probe(file, o, samples, seed, out);
    if (*c_hecke) {
      const CoxeterSystem sys = load_system(file, o);
      const auto psi_v = WeightVector::parse(sys.generators(), psi);
      std::vector<Integer> psi_int;
      for (const auto& q : psi_v.values()) {
        if (q.get_den() != 1) throw ValidationError("psi must be integer valued");
        psi_int.push_back(q.get_num());
      }
      std::vector<int> sign_v(sys.rank(), 0);
      for (const auto& item : split_list(signs)) {
        const auto eq = item.find('=');
        if (eq == std::string::npos || eq + 2 != item.size()) throw ValidationError("bad sign assignment '" + item + "'");
        const char c = item[eq + 1];
        if (c != '+' && c != '-') throw ValidationError("sign must be + or -");
        sign_v[sys.index_of(item.substr(0, eq))] = c == '+' ? 1 : -1;
      }
      const WeightVector phi = hecke_weight(sys, psi_int, sign_v);
      Options with_phi = o;
      with_phi.phi = phi.to_string();
      return coxeter_cell(file, with_phi, true, out);
    }
    return 0;
  } catch (const UnboundedError& e) {
    nlohmann::json j;
    j["error"] = "precondition";
    j["message"] = e.what();
    j["circuit"] = e.word_text();
    std::string circuit;
    for (const auto& arc : e.cycle().arcs) circuit += std::to_string(arc.first) + " ";
    j["circuit_states"] = circuit.empty() ? circuit : circuit.substr(0, circuit.size() - 1);
    err << j.dump() << '\n';
    return 4;
  } catch (const ValidationError& e) {
    err << error_json("validation", e.what()) << '\n';
    return 2;
  } catch (const ResourceError& e) {
    nlohmann::json j;
    j["error"] = "resource";
    j["message"] = e.what();
    j["cap"] = e.cap_name();
    j["limit"] = e.cap();
    err << j.dump() << '\n';
    return 3;
  } catch (const PreconditionError& e) {
    err << error_json("precondition", e.what()) << '\n';
    return 4;
  }
}

}  // namespace weightcell::cli
