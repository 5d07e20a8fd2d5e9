#pragma once
#ifndef WEIGHTCELL_AUTOMATON_HPP
#define WEIGHTCELL_AUTOMATON_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

#include "weightcell/caps.hpp"
#include "weightcell/errors.hpp"
#include "weightcell/rational.hpp"

namespace weightcell {

using State = std::uint32_t;
using Letter = std::uint32_t;

/// A word over an alphabet, as a sequence of letter indices.
using Word = std::vector<Letter>;

/// Finite-state automaton (X, S, o, tau, F). Deterministic and non-deterministic automata
/// share this type; `deterministic()` reports whether |tau(x, s)| <= 1 everywhere.
///
/// Transitions are kept sorted and duplicate-free per (state, letter), so two automata
/// built with the same transitions compare equal regardless of insertion order.
class Automaton {
 public:
  Automaton() : Automaton({}, 1, 0) {}

  Automaton(std::vector<std::string> alphabet, std::size_t num_states, State start)
      : alphabet_(std::move(alphabet)),
        num_states_(num_states),
        start_(start),
        accept_(num_states, false),
        delta_(num_states * alphabet_.size()) {
    if (num_states == 0) throw ValidationError("automaton needs at least one state");
    if (start >= num_states) throw ValidationError("start state out of range");
    for (std::size_t i = 0; i < alphabet_.size(); ++i) {
      for (std::size_t j = 0; j < i; ++j) {
        if (alphabet_[i] == alphabet_[j]) throw ValidationError("duplicate letter '" + alphabet_[i] + "'");
      }
    }
  }

  const std::vector<std::string>& alphabet() const noexcept { return alphabet_; }
  std::size_t alphabet_size() const noexcept { return alphabet_.size(); }
  std::size_t num_states() const noexcept { return num_states_; }
  State start() const noexcept { return start_; }

  bool is_accept(State x) const { return accept_.at(x); }
  std::vector<State> accept_states() const {
    std::vector<State> out;
    for (State x = 0; x < num_states_; ++x)
      if (accept_[x]) out.push_back(x);
    return out;
  }

  void set_accept(State x, bool accepting = true) {
    check_state(x);
    accept_[x] = accepting;
  }

  void add_transition(State from, Letter letter, State to) {
    check_state(from);
    check_state(to);
    check_letter(letter);
    auto& cell = delta_[index(from, letter)];
    auto it = std::lower_bound(cell.begin(), cell.end(), to);
    if (it == cell.end() || *it != to) cell.insert(it, to);
  }

  void add_transition(State from, std::string_view letter, State to) { add_transition(from, letter_index(letter), to); }

  const std::vector<State>& targets(State from, Letter letter) const { return delta_[index(from, letter)]; }

  /// The unique successor, if any (first target for non-deterministic automata).
  std::optional<State> next(State from, Letter letter) const {
    const auto& cell = delta_[index(from, letter)];
    if (cell.empty()) return std::nullopt;
    return cell.front();
  }

  bool deterministic() const noexcept {
    return std::all_of(delta_.begin(), delta_.end(), [](const auto& cell) { return cell.size() <= 1; });
  }

  std::size_t num_transitions() const noexcept {
    std::size_t n = 0;
    for (const auto& cell : delta_) n += cell.size();
    return n;
  }

  Letter letter_index(std::string_view name) const {
    for (std::size_t i = 0; i < alphabet_.size(); ++i)
      if (alphabet_[i] == name) return static_cast<Letter>(i);
    throw ValidationError("unknown letter '" + std::string(name) + "'");
  }

  /// Adds a fresh state and returns its index.
  State add_state(bool accepting = false) {
    ++num_states_;
    accept_.push_back(accepting);
    delta_.resize(num_states_ * alphabet_.size());
    return static_cast<State>(num_states_ - 1);
  }

  friend bool operator==(const Automaton&, const Automaton&) = default;

 private:
  std::size_t index(State x, Letter a) const { return static_cast<std::size_t>(x) * alphabet_.size() + a; }
  void check_state(State x) const {
    if (x >= num_states_) throw ValidationError("state " + std::to_string(x) + " out of range");
  }
  void check_letter(Letter a) const {
    if (a >= alphabet_.size()) throw ValidationError("letter index " + std::to_string(a) + " out of range");
  }

  std::vector<std::string> alphabet_;
  std::size_t num_states_;
  State start_;
  std::vector<bool> accept_;
  std::vector<std::vector<State>> delta_;
};

// ---------------------------------------------------------------------------
// Words

inline bool single_char_letters(const std::vector<std::string>& alphabet) {
  return std::all_of(alphabet.begin(), alphabet.end(), [](const std::string& s) { return s.size() == 1; });
}

/// Letters are concatenated when every letter name is one character, otherwise joined by
/// '.'. The empty word prints as "e".
inline std::string format_word(const std::vector<std::string>& alphabet, const Word& w) {
  if (w.empty()) return "e";
  const bool compact = single_char_letters(alphabet);
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (!compact && i) out += '.';
    out += alphabet.at(w[i]);
  }
  return out;
}

inline Word parse_word(const std::vector<std::string>& alphabet, std::string_view text) {
  Word w;
  if (text.empty()) return w;
  if (text == "e" && std::find(alphabet.begin(), alphabet.end(), "e") == alphabet.end()) return w;
  auto lookup = [&](std::string_view name) -> Letter {
    for (std::size_t i = 0; i < alphabet.size(); ++i)
      if (alphabet[i] == name) return static_cast<Letter>(i);
    throw ValidationError("unknown letter '" + std::string(name) + "' in word '" + std::string(text) + "'");
  };
  if (text.find('.') != std::string_view::npos || !single_char_letters(alphabet)) {
    std::size_t pos = 0;
    while (pos <= text.size()) {
      auto dot = text.find('.', pos);
      if (dot == std::string_view::npos) dot = text.size();
      w.push_back(lookup(text.substr(pos, dot - pos)));
      pos = dot + 1;
    }
    return w;
  }
  for (char c : text) w.push_back(lookup(std::string_view(&c, 1)));
  return w;
}

/// Shortlex comparison: by length, then lexicographically by letter index.
inline bool shortlex_less(const Word& a, const Word& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

inline std::vector<std::size_t> letter_counts(const Word& w, std::size_t alphabet_size) {
  std::vector<std::size_t> counts(alphabet_size, 0);
  for (Letter a : w) ++counts.at(a);
  return counts;
}

// ---------------------------------------------------------------------------
// Algorithms

/// Path-existence membership; works for non-deterministic automata.
inline bool accepts(const Automaton& a, const Word& w) {
  std::vector<State> current{a.start()};
  std::vector<char> mark(a.num_states(), 0);
  for (Letter s : w) {
    if (s >= a.alphabet_size()) throw ValidationError("letter index out of range");
    std::vector<State> next;
    for (State x : current) {
      for (State y : a.targets(x, s)) {
        if (!mark[y]) {
          mark[y] = 1;
          next.push_back(y);
        }
      }
    }
    for (State y : next) mark[y] = 0;
    if (next.empty()) return false;
    current = std::move(next);
  }
  return std::any_of(current.begin(), current.end(), [&](State x) { return a.is_accept(x); });
}

namespace detail {

inline std::vector<char> reachable_from_start(const Automaton& a) {
  std::vector<char> seen(a.num_states(), 0);
  std::vector<State> stack{a.start()};
  seen[a.start()] = 1;
  while (!stack.empty()) {
    State x = stack.back();
    stack.pop_back();
    for (Letter s = 0; s < a.alphabet_size(); ++s) {
      for (State y : a.targets(x, s)) {
        if (!seen[y]) {
          seen[y] = 1;
          stack.push_back(y);
        }
      }
    }
  }
  return seen;
}

inline std::vector<char> coreachable_to_accept(const Automaton& a) {
  std::vector<std::vector<State>> preds(a.num_states());
  for (State x = 0; x < a.num_states(); ++x)
    for (Letter s = 0; s < a.alphabet_size(); ++s)
      for (State y : a.targets(x, s)) preds[y].push_back(x);
  std::vector<char> seen(a.num_states(), 0);
  std::vector<State> stack;
  for (State x = 0; x < a.num_states(); ++x) {
    if (a.is_accept(x)) {
      seen[x] = 1;
      stack.push_back(x);
    }
  }
  while (!stack.empty()) {
    State y = stack.back();
    stack.pop_back();
    for (State x : preds[y]) {
      if (!seen[x]) {
        seen[x] = 1;
        stack.push_back(x);
      }
    }
  }
  return seen;
}

}  // namespace detail

inline Automaton empty_language_automaton(std::vector<std::string> alphabet) {
  return Automaton(std::move(alphabet), 1, 0);
}

/// A trimmed automaton together with the original index of each surviving state.
struct TrimResult {
  Automaton automaton;
  std::vector<State> original;
};

/// Restricts to states that are reachable from the start and co-reachable to an accept
/// state, keeping their relative order. An automaton with empty language becomes a single
/// non-accepting start state.
inline TrimResult trim_with_map(const Automaton& a) {
  const auto fwd = detail::reachable_from_start(a);
  const auto bwd = detail::coreachable_to_accept(a);
  if (!bwd[a.start()]) return {empty_language_automaton(a.alphabet()), {a.start()}};
  std::vector<State> renumber(a.num_states(), 0);
  std::vector<State> original;
  for (State x = 0; x < a.num_states(); ++x) {
    if (fwd[x] && bwd[x]) {
      renumber[x] = static_cast<State>(original.size());
      original.push_back(x);
    }
  }
  Automaton out(a.alphabet(), original.size(), renumber[a.start()]);
  for (State x : original) {
    if (a.is_accept(x)) out.set_accept(renumber[x]);
    for (Letter s = 0; s < a.alphabet_size(); ++s)
      for (State y : a.targets(x, s))
        if (fwd[y] && bwd[y]) out.add_transition(renumber[x], s, renumber[y]);
  }
  return {std::move(out), std::move(original)};
}

inline Automaton trim(const Automaton& a) { return trim_with_map(a).automaton; }

/// Renumbers a deterministic automaton by breadth-first discovery from the start state,
/// trying letters in ascending order. Unreachable states are dropped.
inline Automaton canonicalize(const Automaton& a) {
  if (!a.deterministic()) throw ValidationError("canonical numbering requires a deterministic automaton");
  constexpr State kUnset = ~State{0};
  std::vector<State> renumber(a.num_states(), kUnset);
  std::vector<State> order{a.start()};
  renumber[a.start()] = 0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (Letter s = 0; s < a.alphabet_size(); ++s) {
      if (auto y = a.next(order[i], s); y && renumber[*y] == kUnset) {
        renumber[*y] = static_cast<State>(order.size());
        order.push_back(*y);
      }
    }
  }
  Automaton out(a.alphabet(), order.size(), 0);
  for (State i = 0; i < order.size(); ++i) {
    if (a.is_accept(order[i])) out.set_accept(i);
    for (Letter s = 0; s < a.alphabet_size(); ++s)
      if (auto y = a.next(order[i], s)) out.add_transition(i, s, renumber[*y]);
  }
  return out;
}

/// Subset construction. States are the non-empty subsets reachable from {start}, numbered
/// in breadth-first discovery order with letters tried in ascending order.
inline Automaton determinize(const Automaton& a, const Caps& caps = {}) {
  std::map<std::vector<State>, State> index;
  std::vector<std::vector<State>> subsets;
  subsets.push_back({a.start()});
  index.emplace(subsets.front(), 0);
  std::vector<std::tuple<State, Letter, State>> edges;
  std::vector<char> mark(a.num_states(), 0);
  for (std::size_t i = 0; i < subsets.size(); ++i) {
    for (Letter s = 0; s < a.alphabet_size(); ++s) {
      std::vector<State> target;
      for (State x : subsets[i]) {
        for (State y : a.targets(x, s)) {
          if (!mark[y]) {
            mark[y] = 1;
            target.push_back(y);
          }
        }
      }
      for (State y : target) mark[y] = 0;
      if (target.empty()) continue;
      std::sort(target.begin(), target.end());
      auto [it, inserted] = index.emplace(target, static_cast<State>(subsets.size()));
      if (inserted) {
        if (subsets.size() >= caps.max_states) throw ResourceError("determinization states", caps.max_states);
        subsets.push_back(std::move(target));
      }
      edges.emplace_back(static_cast<State>(i), s, it->second);
    }
  }
  Automaton out(a.alphabet(), subsets.size(), 0);
  for (State i = 0; i < subsets.size(); ++i) {
    for (State x : subsets[i]) {
      if (a.is_accept(x)) {
        out.set_accept(i);
        break;
      }
    }
  }
  for (auto [x, s, y] : edges) out.add_transition(x, s, y);
  return out;
}

/// Minimal (partial) DFA of the same language, canonically numbered.
inline Automaton minimize(const Automaton& a) {
  if (!a.deterministic()) throw ValidationError("minimize requires a deterministic automaton");
  const Automaton t = trim(a);
  const std::size_t n = t.num_states();
  const std::size_t k = t.alphabet_size();
  // Moore refinement; -1 stands for the implicit dead state, which is its own class
  // because every state of a trimmed automaton can reach acceptance.
  std::vector<std::int64_t> cls(n);
  for (State x = 0; x < n; ++x) cls[x] = t.is_accept(x) ? 1 : 0;
  std::size_t num_classes = 0;
  for (;;) {
    std::map<std::vector<std::int64_t>, std::int64_t> sig_index;
    std::vector<std::int64_t> next_cls(n);
    for (State x = 0; x < n; ++x) {
      std::vector<std::int64_t> sig;
      sig.reserve(k + 1);
      sig.push_back(cls[x]);
      for (Letter s = 0; s < k; ++s) {
        auto y = t.next(x, s);
        sig.push_back(y ? cls[*y] : -1);
      }
      auto [it, inserted] = sig_index.emplace(std::move(sig), static_cast<std::int64_t>(sig_index.size()));
      next_cls[x] = it->second;
    }
    const std::size_t count = sig_index.size();
    cls = std::move(next_cls);
    if (count == num_classes) break;
    num_classes = count;
  }
  Automaton q(t.alphabet(), num_classes, static_cast<State>(cls[t.start()]));
  for (State x = 0; x < n; ++x) {
    const auto cx = static_cast<State>(cls[x]);
    if (t.is_accept(x)) q.set_accept(cx);
    for (Letter s = 0; s < k; ++s)
      if (auto y = t.next(x, s)) q.add_transition(cx, s, static_cast<State>(cls[*y]));
  }
  return canonicalize(q);
}

/// Automaton for the letter-reversed language. A fresh start state (index 0) replicates the
/// reversed out-edges of every original accept state; old state x becomes x + 1 and the
/// only accept state is the old start (plus the fresh start when the empty word is accepted).
inline Automaton reverse(const Automaton& a) {
  Automaton out(a.alphabet(), a.num_states() + 1, 0);
  out.set_accept(a.start() + 1);
  bool empty_word = false;
  for (State x = 0; x < a.num_states(); ++x) {
    for (Letter s = 0; s < a.alphabet_size(); ++s) {
      for (State y : a.targets(x, s)) {
        out.add_transition(y + 1, s, x + 1);
        if (a.is_accept(y)) out.add_transition(0, s, x + 1);
      }
    }
    if (a.is_accept(x) && x == a.start()) empty_word = true;
  }
  if (empty_word) out.set_accept(0);
  return out;
}

/// Outcome of a language comparison; `counterexample` is the shortlex-least word in the
/// symmetric difference when the languages differ.
struct EquivalenceResult {
  bool equivalent = true;
  std::optional<Word> counterexample;
  explicit operator bool() const noexcept { return equivalent; }
};

inline EquivalenceResult equivalent(const Automaton& a, const Automaton& b, const Caps& caps = {}) {
  if (a.alphabet_size() != b.alphabet_size()) throw ValidationError("alphabet mismatch");
  std::vector<Letter> to_b(a.alphabet_size());
  for (Letter s = 0; s < a.alphabet_size(); ++s) to_b[s] = b.letter_index(a.alphabet()[s]);

  const Automaton da = determinize(trim(a), caps);
  const Automaton db = determinize(trim(b), caps);
  constexpr State kDead = ~State{0};
  using Pair = std::pair<State, State>;
  std::map<Pair, std::pair<Pair, Letter>> parent;
  std::deque<Pair> queue;
  const Pair root{da.start(), db.start()};
  parent.emplace(root, std::make_pair(root, Letter{0}));
  queue.push_back(root);
  auto accepting = [](const Automaton& d, State x) { return x != kDead && d.is_accept(x); };
  while (!queue.empty()) {
    const Pair p = queue.front();
    queue.pop_front();
    if (accepting(da, p.first) != accepting(db, p.second)) {
      Word w;
      for (Pair cur = p; cur != root;) {
        const auto& [prev, s] = parent.at(cur);
        w.push_back(s);
        cur = prev;
      }
      std::reverse(w.begin(), w.end());
      return {false, std::move(w)};
    }
    for (Letter s = 0; s < da.alphabet_size(); ++s) {
      State x = kDead, y = kDead;
      if (p.first != kDead)
        if (auto nx = da.next(p.first, s)) x = *nx;
      if (p.second != kDead)
        if (auto ny = db.next(p.second, to_b[s])) y = *ny;
      if (x == kDead && y == kDead) continue;
      const Pair q{x, y};
      if (parent.emplace(q, std::make_pair(p, s)).second) queue.push_back(q);
    }
  }
  return {true, std::nullopt};
}

/// Whether two deterministic automata are identical after canonical renumbering.
inline bool isomorphic(const Automaton& a, const Automaton& b) {
  if (a.alphabet() != b.alphabet()) return false;
  return canonicalize(trim(a)) == canonicalize(trim(b));
}

inline bool language_empty(const Automaton& a) {
  const auto bwd = detail::coreachable_to_accept(a);
  const auto fwd = detail::reachable_from_start(a);
  for (State x = 0; x < a.num_states(); ++x)
    if (fwd[x] && bwd[x] && a.is_accept(x)) return false;
  return true;
}

/// All accepted words of length <= maxlen, in shortlex order.
inline std::vector<Word> enumerate(const Automaton& a, std::size_t maxlen, const Caps& caps = {}) {
  const Automaton d = determinize(trim(a), caps);
  std::vector<Word> out;
  if (language_empty(d)) return out;
  std::vector<std::pair<Word, State>> level{{Word{}, d.start()}};
  for (std::size_t len = 0;; ++len) {
    for (const auto& [w, x] : level) {
      if (d.is_accept(x)) {
        if (out.size() >= caps.max_words) throw ResourceError("enumeration words", caps.max_words);
        out.push_back(w);
      }
    }
    if (len == maxlen) break;
    std::vector<std::pair<Word, State>> next;
    for (const auto& [w, x] : level) {
      for (Letter s = 0; s < d.alphabet_size(); ++s) {
        if (auto y = d.next(x, s)) {
          if (next.size() >= caps.max_words) throw ResourceError("enumeration words", caps.max_words);
          Word v = w;
          v.push_back(s);
          next.emplace_back(std::move(v), *y);
        }
      }
    }
    if (next.empty()) break;
    level = std::move(next);
  }
  return out;
}

/// Number of accepted words of each length 0..maxlen, without materializing them.
inline std::vector<Integer> count_by_length(const Automaton& a, std::size_t maxlen, const Caps& caps = {}) {
  const Automaton d = determinize(trim(a), caps);
  std::vector<Integer> out;
  std::vector<Integer> ways(d.num_states(), 0);
  if (!language_empty(d)) ways[d.start()] = 1;
  for (std::size_t len = 0; len <= maxlen; ++len) {
    Integer total = 0;
    for (State x = 0; x < d.num_states(); ++x)
      if (d.is_accept(x)) total += ways[x];
    out.push_back(total);
    std::vector<Integer> next(d.num_states(), 0);
    for (State x = 0; x < d.num_states(); ++x) {
      if (ways[x] == 0) continue;
      for (Letter s = 0; s < d.alphabet_size(); ++s)
        if (auto y = d.next(x, s)) next[*y] += ways[x];
    }
    ways = std::move(next);
  }
  return out;
}

}  // namespace weightcell

#endif  // WEIGHTCELL_AUTOMATON_HPP
