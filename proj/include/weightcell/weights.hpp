#pragma once
#ifndef WEIGHTCELL_WEIGHTS_HPP
#define WEIGHTCELL_WEIGHTS_HPP

// Weight functions on a regular language: boundedness via simple circuits, the bound via
// circuit-free words, and the automaton recognising the cell where the bound is attained.
//
// Every entry point works on the trimmed deterministic automaton of its input: cycles on
// useless states would otherwise produce spurious inequalities.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "weightcell/automaton.hpp"
#include "weightcell/caps.hpp"
#include "weightcell/errors.hpp"
#include "weightcell/rational.hpp"

namespace weightcell {

/// Exact rational weight per letter; extends additively to words.
class WeightVector {
 public:
  WeightVector() = default;
  WeightVector(std::vector<std::string> alphabet, RationalVector values)
      : alphabet_(std::move(alphabet)), values_(std::move(values)) {
    if (alphabet_.size() != values_.size()) throw ValidationError("weight vector length does not match alphabet");
  }

  /// Parses "s=1,t=2,u=-5/2"; every letter of the alphabet must be assigned exactly once.
  static WeightVector parse(const std::vector<std::string>& alphabet, std::string_view text) {
    RationalVector values(alphabet.size());
    std::vector<char> seen(alphabet.size(), 0);
    std::size_t pos = 0;
    while (pos < text.size()) {
      auto comma = text.find(',', pos);
      if (comma == std::string_view::npos) comma = text.size();
      std::string_view item = text.substr(pos, comma - pos);
      pos = comma + 1;
      auto eq = item.find('=');
      if (eq == std::string_view::npos) throw ValidationError("bad weight assignment '" + std::string(item) + "'");
      std::string name(item.substr(0, eq));
      name.erase(0, name.find_first_not_of(' '));
      name.erase(name.find_last_not_of(' ') + 1);
      auto it = std::find(alphabet.begin(), alphabet.end(), name);
      if (it == alphabet.end()) throw ValidationError("unknown letter '" + name + "' in weight assignment");
      const auto idx = static_cast<std::size_t>(it - alphabet.begin());
      if (seen[idx]) throw ValidationError("letter '" + name + "' assigned twice");
      seen[idx] = 1;
      values[idx] = parse_rational(item.substr(eq + 1));
    }
    for (std::size_t i = 0; i < alphabet.size(); ++i)
      if (!seen[i]) throw ValidationError("no weight given for letter '" + alphabet[i] + "'");
    return WeightVector(alphabet, std::move(values));
  }

  const std::vector<std::string>& alphabet() const noexcept { return alphabet_; }
  const RationalVector& values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  const Rational& operator[](Letter s) const { return values_.at(s); }

  std::string to_string() const {
    std::string out;
    for (std::size_t i = 0; i < values_.size(); ++i) {
      if (i) out += ',';
      out += alphabet_[i] + "=" + values_[i].get_str();
    }
    return out;
  }

  friend bool operator==(const WeightVector&, const WeightVector&) = default;

 private:
  std::vector<std::string> alphabet_;
  RationalVector values_;
};

inline Rational weight_of_word(const WeightVector& phi, const Word& w) {
  Rational total = 0;
  for (Letter s : w) {
    if (s >= phi.size()) throw ValidationError("letter index " + std::to_string(s) + " outside the weight's alphabet");
    total += phi[s];
  }
  return total;
}

/// Weight of a letter-count vector.
template <typename Count>
Rational weight_of_counts(const WeightVector& phi, const std::vector<Count>& counts) {
  Rational total = 0;
  for (std::size_t i = 0; i < counts.size(); ++i) total += phi[static_cast<Letter>(i)] * Rational(counts[i]);
  return total;
}

/// An elementary circuit of the transition graph. `arcs[i] = (state, letter)` means the arc
/// leaving `state` labelled `letter`; the target is the next arc's state (cyclically).
struct SimpleCycle {
  State base_state = 0;
  std::vector<std::pair<State, Letter>> arcs;

  Word word() const {
    Word w;
    w.reserve(arcs.size());
    for (const auto& arc : arcs) w.push_back(arc.second);
    return w;
  }

  std::vector<State> states() const {
    std::vector<State> out;
    for (const auto& arc : arcs) out.push_back(arc.first);
    return out;
  }

  /// The same circuit read from `arcs[offset]`.
  SimpleCycle rotated(std::size_t offset) const {
    SimpleCycle c;
    for (std::size_t i = 0; i < arcs.size(); ++i) c.arcs.push_back(arcs[(offset + i) % arcs.size()]);
    c.base_state = c.arcs.front().first;
    return c;
  }

  IntVector letter_counts(std::size_t alphabet_size) const {
    IntVector counts(alphabet_size, 0);
    for (const auto& arc : arcs) counts.at(arc.second) += 1;
    return counts;
  }

  friend bool operator==(const SimpleCycle&, const SimpleCycle&) = default;
};

inline Rational weight_of_cycle(const WeightVector& phi, const SimpleCycle& c) { return weight_of_word(phi, c.word()); }

/// Options shared by the weight-engine entry points.
struct WeightOptions {
  Caps caps{};
  /// Also forbid revisiting the start state when testing circuit-freeness.
  bool strict_graph_sense = false;
};

/// All elementary circuits (Johnson's algorithm), each reported once in its canonical
/// rotation: starting at its least state. Parallel arcs with different letters give
/// different circuits. Order is deterministic.
inline std::vector<SimpleCycle> simple_cycles(const Automaton& a, const Caps& caps = {}) {
  const std::size_t n = a.num_states();
  std::vector<std::vector<State>> succ(n);
  for (State x = 0; x < n; ++x) {
    for (Letter s = 0; s < a.alphabet_size(); ++s)
      for (State y : a.targets(x, s)) succ[x].push_back(y);
    std::sort(succ[x].begin(), succ[x].end());
    succ[x].erase(std::unique(succ[x].begin(), succ[x].end()), succ[x].end());
  }

  std::vector<SimpleCycle> out;
  auto emit = [&](const std::vector<State>& path) {
    // Expand every choice of letter on each arc.
    std::vector<std::vector<Letter>> choices(path.size());
    for (std::size_t i = 0; i < path.size(); ++i) {
      const State from = path[i];
      const State to = path[(i + 1) % path.size()];
      for (Letter s = 0; s < a.alphabet_size(); ++s) {
        const auto& t = a.targets(from, s);
        if (std::binary_search(t.begin(), t.end(), to)) choices[i].push_back(s);
      }
    }
    std::vector<std::size_t> pick(path.size(), 0);
    for (;;) {
      if (out.size() >= caps.max_cycles) throw ResourceError("simple cycles", caps.max_cycles);
      SimpleCycle c;
      c.base_state = path.front();
      for (std::size_t i = 0; i < path.size(); ++i) c.arcs.emplace_back(path[i], choices[i][pick[i]]);
      out.push_back(std::move(c));
      std::size_t i = path.size();
      while (i > 0) {
        --i;
        if (++pick[i] < choices[i].size()) break;
        pick[i] = 0;
        if (i == 0) return;
      }
      if (path.empty()) return;
    }
  };

  // Strongly connected components of the subgraph induced by states >= lo (Tarjan).
  auto scc_of = [&](State lo) {
    std::vector<int> comp(n, -1), low(n, 0), idx(n, -1);
    std::vector<State> stack;
    std::vector<char> on_stack(n, 0);
    int counter = 0, num_comp = 0;
    std::function<void(State)> strong = [&](State v) {
      idx[v] = low[v] = counter++;
      stack.push_back(v);
      on_stack[v] = 1;
      for (State w : succ[v]) {
        if (w < lo) continue;
        if (idx[w] < 0) {
          strong(w);
          low[v] = std::min(low[v], low[w]);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], idx[w]);
        }
      }
      if (low[v] == idx[v]) {
        for (;;) {
          State w = stack.back();
          stack.pop_back();
          on_stack[w] = 0;
          comp[w] = num_comp;
          if (w == v) break;
        }
        ++num_comp;
      }
    };
    strong(lo);
    return comp;
  };

  std::vector<char> blocked(n, 0);
  std::vector<std::vector<State>> block_map(n);
  std::vector<State> path;
  std::vector<int> comp;
  State root = 0;

  std::function<void(State)> unblock = [&](State u) {
    blocked[u] = 0;
    while (!block_map[u].empty()) {
      State w = block_map[u].back();
      block_map[u].pop_back();
      if (blocked[w]) unblock(w);
    }
  };

  std::function<bool(State)> circuit = [&](State v) -> bool {
    bool found = false;
    path.push_back(v);
    blocked[v] = 1;
    for (State w : succ[v]) {
      if (w < root || comp[w] != comp[root]) continue;
      if (w == root) {
        emit(path);
        found = true;
      } else if (!blocked[w]) {
        if (circuit(w)) found = true;
      }
    }
    if (found) {
      unblock(v);
    } else {
      for (State w : succ[v]) {
        if (w < root || comp[w] != comp[root]) continue;
        auto& bm = block_map[w];
        if (std::find(bm.begin(), bm.end(), v) == bm.end()) bm.push_back(v);
      }
    }
    path.pop_back();
    return found;
  };

  for (root = 0; root < n; ++root) {
    comp = scc_of(root);
    for (State v = root; v < n; ++v) {
      blocked[v] = 0;
      block_map[v].clear();
    }
    circuit(root);
  }
  return out;
}

/// The words read around each circuit from every one of its states (every state of a
/// trimmed automaton lies on an accepted path, so each rotation is a circuit subword of
/// some accepted word). Shortlex order, no duplicates.
inline std::vector<Word> simple_circuit_words(const std::vector<SimpleCycle>& cycles) {
  std::set<Word, decltype(&shortlex_less)> words(&shortlex_less);
  for (const auto& c : cycles)
    for (std::size_t i = 0; i < c.arcs.size(); ++i) words.insert(c.rotated(i).word());
  return {words.begin(), words.end()};
}

/// Prefix tree of the circuit-free words: node 0 is the empty word; every node is a prefix
/// of some accepted circuit-free word. Nodes are in shortlex order of their words.
struct CircuitFreeTree {
  struct Node {
    std::size_t parent = 0;
    Letter letter = 0;
    State state = 0;
    std::size_t depth = 0;
    bool circuit_free_word = false;  // accepted, hence a member of CircFree
    std::vector<std::pair<Letter, std::size_t>> children;
  };
  std::vector<Node> nodes;

  Word word(std::size_t i) const {
    Word w(nodes[i].depth);
    for (std::size_t k = nodes[i].depth; k > 0; --k) {
      w[k - 1] = nodes[i].letter;
      i = nodes[i].parent;
    }
    return w;
  }
};

/// Requires a deterministic automaton.
inline CircuitFreeTree circuit_free_tree(const Automaton& a, const WeightOptions& opts = {}) {
  if (!a.deterministic()) throw ValidationError("circuit-free words need a deterministic automaton");
  // Raw DFS tree of all state-distinct paths, then prune branches without accepted leaves.
  struct Raw {
    std::size_t parent;
    Letter letter;
    State state;
    std::size_t depth;
    std::vector<std::size_t> kids;
    bool keep = false;
  };
  std::vector<Raw> raw;
  raw.push_back({0, 0, a.start(), 0, {}, false});
  std::vector<char> visited(a.num_states(), 0);
  if (opts.strict_graph_sense) visited[a.start()] = 1;

  std::function<void(std::size_t)> dfs = [&](std::size_t node) {
    const State x = raw[node].state;
    for (Letter s = 0; s < a.alphabet_size(); ++s) {
      auto y = a.next(x, s);
      if (!y || visited[*y]) continue;
      if (raw.size() >= opts.caps.max_paths) throw ResourceError("circuit-free paths", opts.caps.max_paths);
      raw.push_back({node, s, *y, raw[node].depth + 1, {}, false});
      const std::size_t child = raw.size() - 1;
      raw[node].kids.push_back(child);
      visited[*y] = 1;
      dfs(child);
      visited[*y] = 0;
    }
  };
  dfs(0);
  for (std::size_t i = raw.size(); i-- > 0;) {
    if (a.is_accept(raw[i].state)) raw[i].keep = true;
    if (raw[i].keep && i > 0) raw[raw[i].parent].keep = true;
  }

  // Renumber kept nodes in shortlex order (breadth-first, ascending letters).
  CircuitFreeTree tree;
  if (!raw[0].keep) {
    tree.nodes.push_back({0, 0, a.start(), 0, false, {}});
    return tree;
  }
  std::vector<std::size_t> order{0};
  std::vector<std::size_t> new_index(raw.size(), 0);
  tree.nodes.push_back({0, 0, a.start(), 0, a.is_accept(a.start()), {}});
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (std::size_t kid : raw[order[i]].kids) {
      if (!raw[kid].keep) continue;
      new_index[kid] = tree.nodes.size();
      tree.nodes.push_back({i, raw[kid].letter, raw[kid].state, raw[kid].depth, a.is_accept(raw[kid].state), {}});
      tree.nodes[i].children.emplace_back(raw[kid].letter, tree.nodes.size() - 1);
      order.push_back(kid);
    }
  }
  return tree;
}

/// CircFree: accepted words whose states at positions 1..n are pairwise distinct.
inline std::vector<Word> circuit_free_words(const Automaton& a, const WeightOptions& opts = {}) {
  const auto tree = circuit_free_tree(a, opts);
  std::vector<Word> out;
  for (std::size_t i = 0; i < tree.nodes.size(); ++i)
    if (tree.nodes[i].circuit_free_word) out.push_back(tree.word(i));
  return out;
}

/// The trimmed deterministic automaton the weight engine works on, plus the map from its
/// states back to the caller's states (empty when the input had to be determinized).
struct PreparedAutomaton {
  Automaton dfa;
  std::vector<State> original;
};

inline PreparedAutomaton prepare(const Automaton& a, const Caps& caps = {}) {
  if (a.deterministic()) {
    auto t = trim_with_map(a);
    return {std::move(t.automaton), std::move(t.original)};
  }
  return {trim(determinize(trim(a), caps)), {}};
}

struct BoundednessReport {
  bool bounded = true;
  std::optional<SimpleCycle> violating_cycle;  // states refer to the caller's automaton when deterministic
  std::vector<IntVector> inequalities;         // distinct letter-count vectors, <n, phi> <= 0
  std::vector<SimpleCycle> cycles;
};

namespace detail {

inline SimpleCycle map_cycle(const SimpleCycle& c, const std::vector<State>& original) {
  if (original.empty()) return c;
  SimpleCycle out = c;
  out.base_state = original.at(c.base_state);
  for (auto& arc : out.arcs) arc.first = original.at(arc.first);
  return out;
}

inline void check_alphabet(const Automaton& a, const WeightVector& phi) {
  if (phi.alphabet() != a.alphabet()) throw ValidationError("weight vector alphabet does not match the automaton");
}

}  // namespace detail

inline BoundednessReport boundedness_of(const PreparedAutomaton& p, const WeightVector& phi, const Caps& caps) {
  BoundednessReport report;
  report.cycles = simple_cycles(p.dfa, caps);
  std::set<IntVector> seen;
  for (const auto& c : report.cycles) {
    IntVector counts = c.letter_counts(p.dfa.alphabet_size());
    if (seen.insert(counts).second) report.inequalities.push_back(counts);
    // report the shortest positive circuit
    if (weight_of_cycle(phi, c) > 0 && (report.bounded || c.arcs.size() < report.violating_cycle->arcs.size())) {
      report.bounded = false;
      report.violating_cycle = detail::map_cycle(c, p.original);
    }
  }
  for (auto& c : report.cycles) c = detail::map_cycle(c, p.original);
  return report;
}

/// phi is bounded on the language iff every simple circuit has weight <= 0.
inline BoundednessReport is_bounded(const Automaton& a, const WeightVector& phi, const WeightOptions& opts = {}) {
  detail::check_alphabet(a, phi);
  return boundedness_of(prepare(a, opts.caps), phi, opts.caps);
}

/// Thrown when a bound or cell is requested for an unbounded weight function.
class UnboundedError : public PreconditionError {
 public:
  UnboundedError(SimpleCycle cycle, Word word, const std::string& word_text)
      : PreconditionError("weight function is unbounded: circuit " + word_text + " has positive weight"),
        cycle_(std::move(cycle)),
        word_(std::move(word)),
        word_text_(word_text) {}
  const SimpleCycle& cycle() const noexcept { return cycle_; }
  const Word& word() const noexcept { return word_; }
  const std::string& word_text() const noexcept { return word_text_; }

 private:
  SimpleCycle cycle_;
  Word word_;
  std::string word_text_;
};

struct CellResult {
  Rational bound;
  std::vector<Word> witnesses;          // circuit-free words attaining the bound (shortlex)
  std::optional<Automaton> cell_nfa;    // the prefix-tree-plus-circuits construction
  std::optional<Automaton> cell_dfa;    // minimal DFA of the exact cell (tight-edge subautomaton)
};

namespace detail {

inline void require_bounded(const BoundednessReport& r, const Automaton& a) {
  if (!r.bounded) {
    const Word w = r.violating_cycle->word();
    throw UnboundedError(*r.violating_cycle, w, format_word(a.alphabet(), w));
  }
}

inline CellResult bound_on_tree(const CircuitFreeTree& tree, const WeightVector& phi) {
  CellResult result;
  bool have = false;
  for (std::size_t i = 0; i < tree.nodes.size(); ++i) {
    if (!tree.nodes[i].circuit_free_word) continue;
    const Word w = tree.word(i);
    const Rational value = weight_of_word(phi, w);
    if (!have || value > result.bound) {
      result.bound = value;
      result.witnesses.clear();
      have = true;
    }
    if (value == result.bound) result.witnesses.push_back(w);
  }
  if (!have) throw PreconditionError("the language is empty; no bound exists");
  return result;
}

// Deterministic cell on a trimmed DFA. With h(q) the largest weight of a path from the start
// to q, a word attains the bound iff every edge p -s-> q on its path has h(p) + phi(s) = h(q)
// and it ends in an accept state with h = bound. Unlike the circuit-gluing construction this
// also catches words whose zero-weight circuits are nested inside one another.
inline Automaton tight_cell(const Automaton& dfa, const WeightVector& phi, const Rational& b, const Caps& caps) {
  const std::size_t n = dfa.num_states(), k = dfa.alphabet_size();
  std::vector<std::optional<Rational>> h(n);
  h[dfa.start()] = Rational(0);
  for (std::size_t round = 0; round < n; ++round) {
    bool changed = false;
    for (State x = 0; x < n; ++x) {
      if (!h[x]) continue;
      for (Letter s = 0; s < k; ++s) {
        const auto y = dfa.next(x, s);
        if (!y) continue;
        const Rational v = *h[x] + phi.values()[s];
        if (!h[*y] || v > *h[*y]) {
          h[*y] = v;
          changed = true;
        }
      }
    }
    if (!changed) break;
  }
  Automaton out(dfa.alphabet(), n, dfa.start());
  for (State x = 0; x < n; ++x) {
    if (!h[x]) continue;
    if (dfa.is_accept(x) && *h[x] == b) out.set_accept(x);
    for (Letter s = 0; s < k; ++s) {
      const auto y = dfa.next(x, s);
      if (y && *h[x] + phi.values()[s] == *h[*y]) out.add_transition(x, s, *y);
    }
  }
  if (out.accept_states().empty()) throw PreconditionError("bound is not attained on the automaton");
  return minimize(determinize(trim(out), caps));
}

}  // namespace detail

/// The bound max{phi(w) : w circuit-free} and the circuit-free words attaining it.
inline CellResult bound(const Automaton& a, const WeightVector& phi, const WeightOptions& opts = {}) {
  detail::check_alphabet(a, phi);
  const auto p = prepare(a, opts.caps);
  detail::require_bounded(boundedness_of(p, phi, opts.caps), a);
  return detail::bound_on_tree(circuit_free_tree(p.dfa, opts), phi);
}

/// cell_nfa is the circuit-free prefix tree with a fresh copy of every zero-weight simple
/// circuit appended at each tree vertex whose state the circuit passes through, accepting the
/// circuit-free words attaining the bound. Its language can miss words with nested circuits,
/// so cell_dfa is built from the tight edges of the automaton instead.
inline CellResult cell_automaton(const Automaton& a, const WeightVector& phi, const WeightOptions& opts = {}) {
  detail::check_alphabet(a, phi);
  const auto p = prepare(a, opts.caps);
  const auto report = boundedness_of(p, phi, opts.caps);
  detail::require_bounded(report, a);
  const auto tree = circuit_free_tree(p.dfa, opts);
  CellResult result = detail::bound_on_tree(tree, phi);

  // Zero-weight circuits of the prepared automaton (not the caller's numbering).
  const auto cycles = simple_cycles(p.dfa, opts.caps);
  std::vector<std::vector<SimpleCycle>> zero_at(p.dfa.num_states());
  for (const auto& c : cycles) {
    if (weight_of_cycle(phi, c) != 0) continue;
    for (std::size_t i = 0; i < c.arcs.size(); ++i) zero_at[c.arcs[i].first].push_back(c.rotated(i));
  }

  Automaton nfa(a.alphabet(), tree.nodes.size(), 0);
  for (std::size_t i = 0; i < tree.nodes.size(); ++i) {
    const auto& node = tree.nodes[i];
    for (const auto& [s, child] : node.children) nfa.add_transition(static_cast<State>(i), s, static_cast<State>(child));
    if (node.circuit_free_word && weight_of_word(phi, tree.word(i)) == result.bound) nfa.set_accept(static_cast<State>(i));
  }
  for (std::size_t i = 0; i < tree.nodes.size(); ++i) {
    for (const auto& c : zero_at[tree.nodes[i].state]) {
      if (nfa.num_states() + c.arcs.size() > opts.caps.max_states) throw ResourceError("cell automaton states", opts.caps.max_states);
      State prev = static_cast<State>(i);
      for (std::size_t k = 0; k + 1 < c.arcs.size(); ++k) {
        const State fresh = nfa.add_state();
        nfa.add_transition(prev, c.arcs[k].second, fresh);
        prev = fresh;
      }
      nfa.add_transition(prev, c.arcs.back().second, static_cast<State>(i));
    }
  }
  result.cell_dfa = detail::tight_cell(p.dfa, phi, result.bound, opts.caps);
  result.cell_nfa = std::move(nfa);
  return result;
}

/// When every simple circuit has negative weight the cell is finite and consists of the
/// circuit-free words attaining the bound.
inline std::vector<Word> strictly_negative_cell(const Automaton& a, const WeightVector& phi,
                                                const WeightOptions& opts = {}) {
  detail::check_alphabet(a, phi);
  const auto p = prepare(a, opts.caps);
  for (const auto& c : simple_cycles(p.dfa, opts.caps)) {
    if (weight_of_cycle(phi, c) >= 0) {
      throw PreconditionError("simple circuit " + format_word(a.alphabet(), c.word()) +
                              " has weight >= 0; use cell_automaton instead");
    }
  }
  return detail::bound_on_tree(circuit_free_tree(p.dfa, opts), phi).witnesses;
}

/// Splits a non-circuit-free accepted word as x.v.y where x is circuit-free, v is the first
/// simple circuit subword and state(x.v) = state(x). Returns nullopt for circuit-free words.
struct CircuitSplit {
  Word prefix, circuit, suffix;
};

inline std::optional<CircuitSplit> split_first_circuit(const Automaton& dfa, const Word& w) {
  if (!dfa.deterministic()) throw ValidationError("split_first_circuit needs a deterministic automaton");
  std::vector<State> states{dfa.start()};
  for (Letter s : w) {
    auto y = dfa.next(states.back(), s);
    if (!y) throw ValidationError("word is not readable by the automaton");
    states.push_back(*y);
  }
  // first j (>= 2) such that state j repeats a state at some position i in [1, j)
  for (std::size_t j = 2; j < states.size(); ++j) {
    for (std::size_t i = 1; i < j; ++i) {
      if (states[i] == states[j]) {
        CircuitSplit split;
        split.prefix.assign(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(i));
        split.circuit.assign(w.begin() + static_cast<std::ptrdiff_t>(i), w.begin() + static_cast<std::ptrdiff_t>(j));
        split.suffix.assign(w.begin() + static_cast<std::ptrdiff_t>(j), w.end());
        return split;
      }
    }
  }
  return std::nullopt;
}

}  // namespace weightcell

#endif  // WEIGHTCELL_WEIGHTS_HPP
