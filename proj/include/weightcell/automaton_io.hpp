#pragma once
#ifndef WEIGHTCELL_AUTOMATON_IO_HPP
#define WEIGHTCELL_AUTOMATON_IO_HPP

// JSON and DOT serialization of automata.
//
// JSON document:
//   {"alphabet": ["s","t"], "states": 3, "start": 0, "accept": [0,1,2],
//    "deterministic": true, "transitions": [[0,"s",1], ...]}
// Output is written by hand (not via the JSON library) so that it is byte-stable:
// transitions sorted by (source, letter, target), accept states ascending.

#include <fstream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "weightcell/automaton.hpp"
#include "weightcell/errors.hpp"

namespace weightcell {

namespace detail {

inline std::string json_string(const std::string& s) { return nlohmann::json(s).dump(); }

}  // namespace detail

inline std::string to_json(const Automaton& a) {
  std::ostringstream os;
  os << "{\n  \"alphabet\": [";
  for (std::size_t i = 0; i < a.alphabet_size(); ++i) os << (i ? ", " : "") << detail::json_string(a.alphabet()[i]);
  os << "],\n  \"states\": " << a.num_states() << ",\n  \"start\": " << a.start() << ",\n  \"accept\": [";
  bool first = true;
  for (State x : a.accept_states()) {
    os << (first ? "" : ", ") << x;
    first = false;
  }
  os << "],\n  \"deterministic\": " << (a.deterministic() ? "true" : "false") << ",\n  \"transitions\": [";
  first = true;
  for (State x = 0; x < a.num_states(); ++x) {
    for (Letter s = 0; s < a.alphabet_size(); ++s) {
      for (State y : a.targets(x, s)) {
        os << (first ? "\n    " : ",\n    ") << '[' << x << ", " << detail::json_string(a.alphabet()[s]) << ", " << y
           << ']';
        first = false;
      }
    }
  }
  os << (first ? "]\n}\n" : "\n  ]\n}\n");
  return os.str();
}

inline Automaton automaton_from_json(const nlohmann::json& j) {
  try {
    if (!j.is_object()) throw ValidationError("automaton document must be a JSON object");
    auto alphabet = j.at("alphabet").get<std::vector<std::string>>();
    const auto states = j.at("states").get<long long>();
    const auto start = j.at("start").get<long long>();
    if (states <= 0) throw ValidationError("'states' must be positive");
    if (start < 0 || start >= states) throw ValidationError("'start' out of range");
    Automaton a(std::move(alphabet), static_cast<std::size_t>(states), static_cast<State>(start));
    for (const auto& x : j.at("accept")) {
      const auto v = x.get<long long>();
      if (v < 0 || v >= states) throw ValidationError("accept state out of range");
      a.set_accept(static_cast<State>(v));
    }
    for (const auto& t : j.at("transitions")) {
      if (!t.is_array() || t.size() != 3) throw ValidationError("transition must be [src, letter, dst]");
      const auto src = t[0].get<long long>();
      const auto dst = t[2].get<long long>();
      if (src < 0 || src >= states || dst < 0 || dst >= states) throw ValidationError("transition state out of range");
      a.add_transition(static_cast<State>(src), t[1].get<std::string>(), static_cast<State>(dst));
    }
    if (j.contains("deterministic") && j.at("deterministic").get<bool>() && !a.deterministic()) {
      throw ValidationError("document claims determinism but has a branching transition");
    }
    return a;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("malformed automaton JSON: ") + e.what());
  }
}

inline Automaton automaton_from_json_text(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("invalid JSON: ") + e.what());
  }
  return automaton_from_json(j);
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

inline Automaton load_automaton(const std::string& path) { return automaton_from_json_text(read_text_file(path)); }

/// Edge colours per letter in declaration order (s, t, u -> black, blue, red, ...).
inline const char* letter_colour(Letter s) {
  static constexpr const char* kColours[] = {"black", "blue", "red", "darkgreen", "orange", "purple", "brown", "gray"};
  return kColours[s % (sizeof(kColours) / sizeof(kColours[0]))];
}

inline std::string to_dot(const Automaton& a, const std::string& name = "automaton") {
  std::ostringstream os;
  os << "digraph " << detail::json_string(name) << " {\n";
  os << "  rankdir=LR;\n  node [shape=circle];\n  __start [shape=point];\n";
  for (State x = 0; x < a.num_states(); ++x) {
    os << "  " << x;
    if (a.is_accept(x)) os << " [shape=doublecircle]";
    os << ";\n";
  }
  os << "  __start -> " << a.start() << ";\n";
  for (State x = 0; x < a.num_states(); ++x)
    for (Letter s = 0; s < a.alphabet_size(); ++s)
      for (State y : a.targets(x, s))
        os << "  " << x << " -> " << y << " [label=" << detail::json_string(a.alphabet()[s]) << ", color=" << letter_colour(s)
           << "];\n";
  os << "}\n";
  return os.str();
}

}  // namespace weightcell

#endif  // WEIGHTCELL_AUTOMATON_IO_HPP
