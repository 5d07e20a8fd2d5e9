// Shared fixtures and brute-force oracles for the tests and the acceptance runner. The
// oracles deliberately avoid the circuit machinery: they enumerate words or group elements
// and take maxima directly.
#pragma once

#include <algorithm>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "weightcell/automaton_io.hpp"
#include "weightcell/closed_forms.hpp"
#include "weightcell/cone.hpp"
#include "weightcell/coxeter.hpp"
#include "weightcell/weights.hpp"

namespace wct {

using namespace weightcell;

inline std::string data_path(const std::string& name) { return std::string(WEIGHTCELL_DATA_DIR) + "/" + name; }
inline Automaton data_automaton(const std::string& name) { return load_automaton(data_path(name)); }
inline CoxeterSystem data_system(const std::string& name) {
  return CoxeterSystem::from_json_text(read_text_file(data_path(name)));
}

inline IntVector ints(std::initializer_list<long> xs) {
  IntVector v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

inline Rational random_rational(std::mt19937_64& rng, int range = 12, int maxden = 6) {
  std::uniform_int_distribution<int> num(-range, range), den(1, maxden);
  return make_rational(num(rng), den(rng));
}

inline WeightVector random_bounded(const Automaton& a, std::mt19937_64& rng) {
  const VRep v = extreme_rays(remove_redundant(cone_of_automaton(a)));
  return WeightVector(a.alphabet(), sample_point(v, rng));
}

struct Argmax {
  Rational value;
  std::set<Word> words;
};

/// max and argmax of phi over an explicit word list (nonempty).
inline Argmax argmax_words(const std::vector<Word>& words, const WeightVector& phi) {
  Argmax r;
  bool have = false;
  for (const auto& w : words) {
    const Rational x = weight_of_word(phi, w);
    if (!have || x > r.value) {
      r.value = x;
      r.words.clear();
      have = true;
    }
    if (x == r.value) r.words.insert(w);
  }
  return r;
}

/// Group elements of length <= radius as (lex word, letter counts).
struct ElementTable {
  std::vector<Word> words;
  std::vector<std::vector<std::size_t>> counts;
};

inline ElementTable element_table(const CoxeterSystem& sys, std::size_t radius) {
  ElementTable t;
  const Ball b = ball(sys, radius);
  for (const auto& w : b.words) {
    t.words.push_back(w);
    t.counts.push_back(letter_counts(w, sys.rank()));
  }
  return t;
}

inline Argmax argmax_elements(const ElementTable& t, const RationalVector& phi) {
  Argmax r;
  for (std::size_t i = 0; i < t.words.size(); ++i) {
    Rational x = 0;
    for (std::size_t s = 0; s < phi.size(); ++s)
      if (t.counts[i][s]) x += phi[s] * static_cast<unsigned long>(t.counts[i][s]);
    if (i == 0 || x > r.value) {
      r.value = x;
      r.words.clear();
    }
    if (x == r.value) r.words.insert(t.words[i]);
  }
  return r;
}

inline std::set<Word> accepted_set(const Automaton& a, std::size_t maxlen) {
  const auto w = enumerate(a, maxlen);
  return {w.begin(), w.end()};
}

inline std::set<Word> words_from(const std::vector<std::string>& alphabet, const std::vector<std::string>& texts) {
  std::set<Word> out;
  for (const auto& t : texts) out.insert(parse_word(alphabet, t));
  return out;
}

inline std::string show(const std::vector<std::string>& alphabet, const std::set<Word>& ws) {
  std::string out = "{";
  for (const auto& w : ws) {
    if (out.size() > 1) out += ",";
    out += format_word(alphabet, w);
  }
  return out + "}";
}

}  // namespace wct
