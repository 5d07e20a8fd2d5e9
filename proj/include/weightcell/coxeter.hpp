#pragma once
#ifndef WEIGHTCELL_COXETER_HPP
#define WEIGHTCELL_COXETER_HPP

// Coxeter systems: exact geometric representation, minimal roots, the automata for reduced
// and shortlex-minimal words, and weight functions on the group.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "weightcell/automaton.hpp"
#include "weightcell/caps.hpp"
#include "weightcell/cyclotomic.hpp"
#include "weightcell/errors.hpp"
#include "weightcell/rational.hpp"
#include "weightcell/weights.hpp"

namespace weightcell {

/// Bond label 0 stands for infinity.
inline constexpr unsigned kInfinity = 0;

using RootVector = std::vector<CycloReal>;

class CoxeterSystem {
 public:
  CoxeterSystem(std::vector<std::string> generators, std::vector<std::vector<unsigned>> matrix)
      : generators_(std::move(generators)), matrix_(std::move(matrix)), field_(1) {
    const std::size_t n = generators_.size();
    if (n == 0) throw ValidationError("a Coxeter system needs at least one generator");
    if (std::set<std::string>(generators_.begin(), generators_.end()).size() != n)
      throw ValidationError("generator names must be distinct");
    if (matrix_.size() != n) throw ValidationError("Coxeter matrix has the wrong number of rows");
    unsigned M = 1;
    for (std::size_t i = 0; i < n; ++i) {
      if (matrix_[i].size() != n) throw ValidationError("Coxeter matrix must be square");
      if (matrix_[i][i] != 1) throw ValidationError("Coxeter matrix diagonal must be 1");
      for (std::size_t j = 0; j < n; ++j) {
        if (matrix_[i][j] != matrix_[j][i]) throw ValidationError("Coxeter matrix must be symmetric");
        if (i != j && matrix_[i][j] == 1) throw ValidationError("off-diagonal Coxeter entries must be >= 2 or 0 (infinity)");
        if (i != j && matrix_[i][j] != kInfinity) M = std::lcm(M, matrix_[i][j]);
      }
    }
    field_ = RealCyclotomicField(M);
    form_.assign(n, RootVector(n, field_.zero()));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (i == j) form_[i][j] = field_.one();
        else if (matrix_[i][j] == kInfinity) form_[i][j] = field_.from_rational(-1);
        else form_[i][j] = field_.two_cos(matrix_[i][j]) * field_.from_rational(make_rational(-1, 2));
      }
    }
  }

  static CoxeterSystem from_json(const nlohmann::json& j) {
    try {
      return CoxeterSystem(j.at("generators").get<std::vector<std::string>>(),
                           j.at("matrix").get<std::vector<std::vector<unsigned>>>());
    } catch (const nlohmann::json::exception& e) {
      throw ValidationError(std::string("malformed Coxeter system JSON: ") + e.what());
    }
  }

  static CoxeterSystem from_json_text(const std::string& text) {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
      throw ValidationError(std::string("invalid JSON: ") + e.what());
    }
    return from_json(j);
  }

  std::string to_json() const {
    std::ostringstream os;
    os << "{\"generators\": [";
    for (std::size_t i = 0; i < rank(); ++i) os << (i ? ", " : "") << nlohmann::json(generators_[i]).dump();
    os << "], \"matrix\": [";
    for (std::size_t i = 0; i < rank(); ++i) {
      os << (i ? ", " : "") << '[';
      for (std::size_t j = 0; j < rank(); ++j) os << (j ? ", " : "") << matrix_[i][j];
      os << ']';
    }
    os << "]}\n";
    return os.str();
  }

  /// The same system with generators listed (and hence ordered) as in `order`.
  CoxeterSystem reordered(const std::vector<std::string>& order) const {
    if (order.size() != rank()) throw ValidationError("generator order must list every generator exactly once");
    std::vector<std::size_t> perm;
    for (const auto& name : order) {
      auto it = std::find(generators_.begin(), generators_.end(), name);
      if (it == generators_.end()) throw ValidationError("unknown generator '" + name + "' in order");
      perm.push_back(static_cast<std::size_t>(it - generators_.begin()));
    }
    if (std::set<std::size_t>(perm.begin(), perm.end()).size() != rank())
      throw ValidationError("generator order repeats a generator");
    std::vector<std::vector<unsigned>> m(rank(), std::vector<unsigned>(rank()));
    for (std::size_t i = 0; i < rank(); ++i)
      for (std::size_t j = 0; j < rank(); ++j) m[i][j] = matrix_[perm[i]][perm[j]];
    return CoxeterSystem(order, std::move(m));
  }

  std::size_t rank() const noexcept { return generators_.size(); }
  const std::vector<std::string>& generators() const noexcept { return generators_; }
  const std::vector<std::vector<unsigned>>& matrix() const noexcept { return matrix_; }
  unsigned bond(Letter s, Letter t) const { return matrix_.at(s).at(t); }
  const RealCyclotomicField& field() const noexcept { return field_; }
  /// B(alpha_s, alpha_t).
  const CycloReal& form(Letter s, Letter t) const { return form_.at(s).at(t); }

  RootVector simple_root(Letter s) const {
    RootVector v(rank(), field_.zero());
    v.at(s) = field_.one();
    return v;
  }

  /// B(alpha_s, v).
  CycloReal form_with(Letter s, const RootVector& v) const {
    CycloReal acc = field_.zero();
    for (std::size_t t = 0; t < rank(); ++t)
      if (!v[t].is_zero()) acc += form_[s][t] * v[t];
    return acc;
  }

  /// s(v) = v - 2 B(alpha_s, v) alpha_s.
  RootVector reflect(Letter s, RootVector v) const {
    CycloReal c = form_with(s, v);
    c *= Rational(2);
    v[s] -= c;
    return v;
  }

  Letter index_of(const std::string& name) const {
    auto it = std::find(generators_.begin(), generators_.end(), name);
    if (it == generators_.end()) throw ValidationError("unknown generator '" + name + "'");
    return static_cast<Letter>(it - generators_.begin());
  }

 private:
  std::vector<std::string> generators_;
  std::vector<std::vector<unsigned>> matrix_;
  RealCyclotomicField field_;
  std::vector<RootVector> form_;
};

/// Sign of a root: roots have all coordinates of one sign, so the first nonzero decides.
inline int root_sign(const RootVector& v) {
  for (const auto& c : v)
    if (!c.is_zero()) return c.sign();
  return 0;
}

// ---------------------------------------------------------------------------------------
// Group elements

/// Matrix of the geometric representation (column j = g(alpha_j)) together with its inverse.
class GroupElement {
 public:
  static GroupElement identity(const CoxeterSystem& sys) {
    GroupElement g;
    g.n_ = sys.rank();
    g.mat_.assign(g.n_ * g.n_, sys.field().zero());
    for (std::size_t i = 0; i < g.n_; ++i) g.mat_[i * g.n_ + i] = sys.field().one();
    g.inv_ = g.mat_;
    return g;
  }

  static GroupElement from_word(const CoxeterSystem& sys, const Word& w) {
    GroupElement g = identity(sys);
    for (Letter s : w) g.right_multiply(sys, s);
    return g;
  }

  std::size_t rank() const noexcept { return n_; }
  const CycloReal& at(std::size_t i, std::size_t j) const { return mat_[i * n_ + j]; }

  /// g <- g s
  void right_multiply(const CoxeterSystem& sys, Letter s) {
    apply_columns(sys, mat_, s);
    apply_row(sys, inv_, s);
  }

  /// g <- s g
  void left_multiply(const CoxeterSystem& sys, Letter s) {
    apply_row(sys, mat_, s);
    apply_columns(sys, inv_, s);
  }

  GroupElement times(const CoxeterSystem& sys, Letter s) const {
    GroupElement g = *this;
    g.right_multiply(sys, s);
    return g;
  }

  GroupElement inverse() const {
    GroupElement g = *this;
    std::swap(g.mat_, g.inv_);
    return g;
  }

  /// g(alpha_t) as a root vector.
  RootVector image_of_simple(Letter t) const { return column(mat_, t); }

  /// l(g t) < l(g)
  bool right_descent(Letter t) const { return root_sign(column(mat_, t)) < 0; }
  /// l(t g) < l(g)
  bool left_descent(Letter t) const { return root_sign(column(inv_, t)) < 0; }

  bool is_identity() const {
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) {
        Rational q;
        if (!mat_[i * n_ + j].is_rational(&q) || q != (i == j ? 1 : 0)) return false;
      }
    return true;
  }

  friend bool operator==(const GroupElement& a, const GroupElement& b) { return a.mat_ == b.mat_; }

  std::size_t hash() const noexcept {
    std::size_t h = 0;
    for (const auto& c : mat_) h = h * 1000003U ^ c.hash();
    return h;
  }

 private:
  RootVector column(const std::vector<CycloReal>& m, Letter t) const {
    RootVector v;
    v.reserve(n_);
    for (std::size_t i = 0; i < n_; ++i) v.push_back(m[i * n_ + t]);
    return v;
  }

  // m <- m * S_s: col_j -= 2 B(s,j) col_s (col_s becomes -col_s).
  void apply_columns(const CoxeterSystem& sys, std::vector<CycloReal>& m, Letter s) const {
    RootVector col_s = column(m, s);
    for (std::size_t j = 0; j < n_; ++j) {
      const CycloReal& b = sys.form(s, static_cast<Letter>(j));
      if (b.is_zero()) continue;
      CycloReal f = b;
      f *= Rational(2);
      for (std::size_t i = 0; i < n_; ++i)
        if (!col_s[i].is_zero()) m[i * n_ + j] -= f * col_s[i];
    }
  }

  // m <- S_s * m: row_s -= 2 sum_t B(s,t) row_t.
  void apply_row(const CoxeterSystem& sys, std::vector<CycloReal>& m, Letter s) const {
    std::vector<CycloReal> delta(n_, sys.field().zero());
    for (std::size_t t = 0; t < n_; ++t) {
      const CycloReal& b = sys.form(s, static_cast<Letter>(t));
      if (b.is_zero()) continue;
      for (std::size_t j = 0; j < n_; ++j)
        if (!m[t * n_ + j].is_zero()) delta[j] += b * m[t * n_ + j];
    }
    for (std::size_t j = 0; j < n_; ++j) {
      delta[j] *= Rational(2);
      m[s * n_ + j] -= delta[j];
    }
  }

  std::size_t n_ = 0;
  std::vector<CycloReal> mat_, inv_;
};

struct GroupElementHash {
  std::size_t operator()(const GroupElement& g) const noexcept { return g.hash(); }
};

inline std::vector<Letter> left_descents(const GroupElement& g) {
  std::vector<Letter> out;
  for (Letter t = 0; t < g.rank(); ++t)
    if (g.left_descent(t)) out.push_back(t);
  return out;
}

inline std::vector<Letter> right_descents(const GroupElement& g) {
  std::vector<Letter> out;
  for (Letter t = 0; t < g.rank(); ++t)
    if (g.right_descent(t)) out.push_back(t);
  return out;
}

/// Shortlex normal form: repeatedly strip the least left descent.
inline Word lex_word(const CoxeterSystem& sys, GroupElement g) {
  Word w;
  for (;;) {
    Letter t = 0;
    while (t < sys.rank() && !g.left_descent(t)) ++t;
    if (t == sys.rank()) return w;
    w.push_back(t);
    g.left_multiply(sys, t);
  }
}

inline std::size_t length(const CoxeterSystem& sys, const GroupElement& g) { return lex_word(sys, g).size(); }

inline Word lex_word(const CoxeterSystem& sys, const Word& w) { return lex_word(sys, GroupElement::from_word(sys, w)); }

/// Is every letter-by-letter product length-increasing?
inline bool is_reduced(const CoxeterSystem& sys, const Word& w) {
  GroupElement g = GroupElement::identity(sys);
  for (Letter s : w) {
    if (g.right_descent(s)) return false;
    g.right_multiply(sys, s);
  }
  return true;
}

/// All elements of length <= radius with their shortlex normal forms, shortlex-sorted.
struct Ball {
  std::vector<GroupElement> elements;
  std::vector<Word> words;
  bool saturated = false;  // no element of length radius+1 exists, so the group is finite
  std::unordered_map<GroupElement, std::size_t, GroupElementHash> index;

  std::optional<std::size_t> find(const GroupElement& g) const {
    auto it = index.find(g);
    if (it == index.end()) return std::nullopt;
    return it->second;
  }
};

inline Ball ball(const CoxeterSystem& sys, std::size_t radius, const Caps& caps = {}) {
  Ball b;
  b.elements.push_back(GroupElement::identity(sys));
  b.words.emplace_back();
  b.index.emplace(b.elements.back(), 0);
  std::size_t level_begin = 0, level_end = 1;
  for (std::size_t len = 0;; ++len) {
    bool grew = false;
    for (std::size_t i = level_begin; i < level_end; ++i) {
      for (Letter s = 0; s < sys.rank(); ++s) {
        if (b.elements[i].right_descent(s)) continue;
        if (len == radius) {
          b.saturated = false;
          return b;
        }
        GroupElement g = b.elements[i].times(sys, s);
        if (b.index.count(g)) continue;
        if (b.elements.size() >= caps.max_ball) throw ResourceError("ball elements", caps.max_ball);
        Word w = b.words[i];
        w.push_back(s);
        b.index.emplace(g, b.elements.size());
        b.elements.push_back(std::move(g));
        b.words.push_back(std::move(w));
        grew = true;
      }
    }
    if (!grew) {
      b.saturated = true;
      return b;
    }
    level_begin = level_end;
    level_end = b.elements.size();
  }
}

/// Every reduced word of length <= maxlen, shortlex order.
inline std::vector<Word> reduced_words(const CoxeterSystem& sys, std::size_t maxlen, const Caps& caps = {}) {
  std::vector<std::pair<Word, GroupElement>> level{{Word{}, GroupElement::identity(sys)}};
  std::vector<Word> out{Word{}};
  for (std::size_t len = 0; len < maxlen; ++len) {
    std::vector<std::pair<Word, GroupElement>> next;
    for (const auto& [w, g] : level) {
      for (Letter s = 0; s < sys.rank(); ++s) {
        if (g.right_descent(s)) continue;
        if (out.size() >= caps.max_words) throw ResourceError("enumeration words", caps.max_words);
        Word v = w;
        v.push_back(s);
        out.push_back(v);
        next.emplace_back(std::move(v), g.times(sys, s));
      }
    }
    level = std::move(next);
  }
  return out;
}

// ---------------------------------------------------------------------------------------
// Minimal roots

enum class RootAction : std::uint8_t { Descent, Fixed, Minimal, NonMinimal };

struct MinimalRootTable {
  std::vector<RootVector> roots;  // roots[s] is alpha_s
  // action[s][r] and, for Minimal, target[s][r] = index of s(roots[r]).
  std::vector<std::vector<RootAction>> action;
  std::vector<std::vector<std::size_t>> target;
};

inline MinimalRootTable minimal_roots(const CoxeterSystem& sys, const Caps& caps = {}) {
  const std::size_t n = sys.rank();
  MinimalRootTable table;
  std::map<RootVector, std::size_t> seen;
  for (Letter s = 0; s < n; ++s) {
    table.roots.push_back(sys.simple_root(s));
    seen.emplace(table.roots.back(), s);
  }
  table.action.assign(n, {});
  table.target.assign(n, {});
  const CycloReal one = sys.field().one();
  for (std::size_t r = 0; r < table.roots.size(); ++r) {
    for (Letter s = 0; s < n; ++s) {
      RootAction act;
      std::size_t tgt = r;
      if (r == s) {
        act = RootAction::Descent;
      } else {
        const CycloReal c = sys.form_with(s, table.roots[r]);
        if (c.is_zero()) {
          act = RootAction::Fixed;
        } else if (compare(c, one) < 0 && compare(c, -one) > 0) {
          act = RootAction::Minimal;
          RootVector image = sys.reflect(s, table.roots[r]);
          auto [it, inserted] = seen.emplace(image, table.roots.size());
          if (inserted) {
            if (table.roots.size() >= caps.max_roots) throw ResourceError("minimal roots", caps.max_roots);
            table.roots.push_back(std::move(image));
          }
          tgt = it->second;
        } else {
          act = RootAction::NonMinimal;
        }
      }
      table.action[s].push_back(act);
      table.target[s].push_back(tgt);
    }
  }
  return table;
}

// ---------------------------------------------------------------------------------------
// Automata

namespace detail {

using RootSet = std::vector<std::uint32_t>;

inline bool has_root(const RootSet& a, std::uint32_t r) { return std::binary_search(a.begin(), a.end(), r); }

/// The set of minimal roots sent negative after appending s (requires alpha_s not in a).
inline RootSet successor(const MinimalRootTable& table, const RootSet& a, Letter s) {
  RootSet out{s};
  for (auto r : a) {
    switch (table.action[s][r]) {
      case RootAction::Minimal: out.push_back(static_cast<std::uint32_t>(table.target[s][r])); break;
      case RootAction::Fixed: out.push_back(r); break;
      default: break;
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

/// Subset automaton over minimal-root sets; `allow(a, s, next)` may veto transitions.
template <typename Allow>
Automaton root_subset_automaton(const CoxeterSystem& sys, const MinimalRootTable& table, const Caps& caps, Allow allow) {
  std::map<RootSet, State> ids;
  std::vector<RootSet> sets{RootSet{}};
  ids.emplace(RootSet{}, 0);
  std::vector<std::tuple<State, Letter, State>> edges;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    for (Letter s = 0; s < sys.rank(); ++s) {
      if (has_root(sets[i], s)) continue;
      RootSet next = successor(table, sets[i], s);
      if (!allow(next, s)) continue;
      auto [it, inserted] = ids.emplace(next, static_cast<State>(sets.size()));
      if (inserted) {
        if (sets.size() >= caps.max_states) throw ResourceError("automaton states", caps.max_states);
        sets.push_back(std::move(next));
      }
      edges.emplace_back(static_cast<State>(i), s, it->second);
    }
  }
  Automaton a(sys.generators(), sets.size(), 0);
  for (State x = 0; x < sets.size(); ++x) a.set_accept(x);
  for (const auto& [x, s, y] : edges) a.add_transition(x, s, y);
  return a;
}

}  // namespace detail

/// Minimal DFA of all reduced words.
inline Automaton reduced_word_automaton(const CoxeterSystem& sys, const Caps& caps = {}) {
  const auto table = minimal_roots(sys, caps);
  return minimize(detail::root_subset_automaton(sys, table, caps, [](const detail::RootSet&, Letter) { return true; }));
}

/// Minimal DFA of shortlex-minimal reduced words (generator order = declaration order).
/// Built on reversed words: reading s_n ... s_1, the letter s_i must be the least left
/// descent of s_i ... s_n, i.e. no smaller generator's root may be in the updated set.
inline Automaton shortlex_automaton(const CoxeterSystem& sys, const Caps& caps = {}) {
  const auto table = minimal_roots(sys, caps);
  auto reversed = detail::root_subset_automaton(sys, table, caps, [](const detail::RootSet& next, Letter s) {
    for (Letter t = 0; t < s; ++t)
      if (detail::has_root(next, t)) return false;
    return true;
  });
  return minimize(determinize(reverse(reversed), caps));
}

enum class Language { Lex, Reduced };

inline Language parse_language(std::string_view s) {
  if (s == "lex") return Language::Lex;
  if (s == "reduced") return Language::Reduced;
  throw ValidationError("language must be 'lex' or 'reduced'");
}

inline Automaton coxeter_automaton(const CoxeterSystem& sys, Language lang, const Caps& caps = {}) {
  return lang == Language::Lex ? shortlex_automaton(sys, caps) : reduced_word_automaton(sys, caps);
}

// ---------------------------------------------------------------------------------------
// Finite parabolic subgroups

namespace detail {

/// Determinant by cofactor expansion along rows, memoised over column subsets.
inline CycloReal determinant(const std::vector<RootVector>& m, const RealCyclotomicField& field) {
  const std::size_t n = m.size();
  if (n == 0) return field.one();
  std::unordered_map<std::uint32_t, CycloReal> memo;
  std::function<CycloReal(std::size_t, std::uint32_t)> rec = [&](std::size_t row, std::uint32_t cols) -> CycloReal {
    if (row == n) return field.one();
    auto it = memo.find(cols);
    if (it != memo.end()) return it->second;
    CycloReal acc = field.zero();
    int sgn = 1;
    for (std::size_t c = 0; c < n; ++c) {
      if (!(cols & (1U << c))) continue;
      if (!m[row][c].is_zero()) {
        CycloReal term = m[row][c] * rec(row + 1, cols & ~(1U << c));
        if (sgn > 0) acc += term;
        else acc -= term;
      }
      sgn = -sgn;
    }
    memo.emplace(cols, acc);
    return acc;
  };
  return rec(0, (n >= 32) ? 0xFFFFFFFFU : ((1U << n) - 1));
}

}  // namespace detail

/// W_J is finite iff the form restricted to J is positive definite.
inline bool is_finite_parabolic(const CoxeterSystem& sys, const std::vector<Letter>& J) {
  if (J.size() > 20) throw ValidationError("parabolic subgroup too large for the finiteness test");
  for (std::size_t k = 1; k <= J.size(); ++k) {
    std::vector<RootVector> minor(k, RootVector(k, sys.field().zero()));
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) minor[i][j] = sys.form(J[i], J[j]);
    if (detail::determinant(minor, sys.field()).sign() <= 0) return false;
  }
  return true;
}

inline bool is_finite(const CoxeterSystem& sys) {
  std::vector<Letter> all(sys.rank());
  std::iota(all.begin(), all.end(), 0);
  return is_finite_parabolic(sys, all);
}

/// Longest element of the finite parabolic W_J: multiply by ascents in J until none is left.
inline GroupElement longest_element(const CoxeterSystem& sys, const std::vector<Letter>& J) {
  if (!is_finite_parabolic(sys, J)) throw PreconditionError("the parabolic subgroup is infinite");
  GroupElement g = GroupElement::identity(sys);
  for (bool moved = true; moved;) {
    moved = false;
    for (Letter s : J) {
      if (!g.right_descent(s)) {
        g.right_multiply(sys, s);
        moved = true;
        break;
      }
    }
  }
  return g;
}

inline GroupElement longest_element(const CoxeterSystem& sys) {
  std::vector<Letter> all(sys.rank());
  std::iota(all.begin(), all.end(), 0);
  return longest_element(sys, all);
}

/// All elements of the finite parabolic W_J.
inline std::vector<GroupElement> parabolic_elements(const CoxeterSystem& sys, const std::vector<Letter>& J,
                                                    const Caps& caps = {}) {
  if (!is_finite_parabolic(sys, J)) throw PreconditionError("the parabolic subgroup is infinite");
  std::vector<GroupElement> out{GroupElement::identity(sys)};
  std::unordered_map<GroupElement, std::size_t, GroupElementHash> seen{{out[0], 0}};
  for (std::size_t i = 0; i < out.size(); ++i) {
    for (Letter s : J) {
      GroupElement g = out[i].times(sys, s);
      if (seen.count(g)) continue;
      if (out.size() >= caps.max_ball) throw ResourceError("ball elements", caps.max_ball);
      seen.emplace(g, out.size());
      out.push_back(std::move(g));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------------------
// Weight functions on the group

inline WeightVector weight_for(const CoxeterSystem& sys, const RationalVector& values) {
  return WeightVector(sys.generators(), values);
}

/// phi extends to a weight function on W iff it is constant across odd bonds.
inline bool validate_weight(const CoxeterSystem& sys, const WeightVector& phi) {
  if (phi.size() != sys.rank()) throw ValidationError("weight vector length does not match the Coxeter system");
  for (Letter s = 0; s < sys.rank(); ++s)
    for (Letter t = s + 1; t < sys.rank(); ++t) {
      const unsigned m = sys.bond(s, t);
      if (m != kInfinity && m % 2 == 1 && phi[s] != phi[t]) return false;
    }
  return true;
}

/// Generators grouped by odd bonds; a weight function is one free parameter per group.
/// Returns the substitution matrix P (rank x groups) with phi = P params.
inline std::vector<RationalVector> odd_bond_substitution(const CoxeterSystem& sys) {
  const std::size_t n = sys.rank();
  std::vector<std::size_t> comp(n, n);
  std::size_t groups = 0;
  for (Letter s = 0; s < n; ++s) {
    if (comp[s] != n) continue;
    std::vector<Letter> stack{s};
    comp[s] = groups;
    while (!stack.empty()) {
      const Letter x = stack.back();
      stack.pop_back();
      for (Letter y = 0; y < n; ++y) {
        const unsigned m = sys.bond(x, y);
        if (x != y && m != kInfinity && m % 2 == 1 && comp[y] == n) {
          comp[y] = groups;
          stack.push_back(y);
        }
      }
    }
    ++groups;
  }
  std::vector<RationalVector> P(n, RationalVector(groups, 0));
  for (Letter s = 0; s < n; ++s) P[s][comp[s]] = 1;
  return P;
}

inline Rational weight_of_element(const CoxeterSystem& sys, const WeightVector& phi, const GroupElement& g) {
  return weight_of_word(phi, lex_word(sys, g));
}

struct GroupCellResult {
  std::vector<Word> X;  // lex forms of the images of the simple circuit words
  std::vector<Word> Y;  // lex forms of the images of the circuit-free words
  Rational bound;
  std::vector<Word> witnesses;  // circuit-free words attaining the bound
  Automaton cell_dfa{{}, 1, 0};
  Automaton language{{}, 1, 0};
};

namespace detail {

inline std::vector<Word> lex_images(const CoxeterSystem& sys, const std::vector<Word>& words) {
  std::set<Word, decltype(&shortlex_less)> out(&shortlex_less);
  for (const auto& w : words) out.insert(lex_word(sys, w));
  return {out.begin(), out.end()};
}

}  // namespace detail

inline GroupCellResult group_cell(const CoxeterSystem& sys, const WeightVector& phi, Language lang,
                                  const WeightOptions& opts = {}) {
  if (!validate_weight(sys, phi))
    throw ValidationError("weights must agree on generators joined by an odd bond");
  GroupCellResult r;
  r.language = coxeter_automaton(sys, lang, opts.caps);
  const auto p = prepare(r.language, opts.caps);
  const auto cycles = simple_cycles(p.dfa, opts.caps);
  const auto cell = cell_automaton(r.language, phi, opts);
  r.X = detail::lex_images(sys, simple_circuit_words(cycles));
  r.Y = detail::lex_images(sys, circuit_free_words(p.dfa, opts));
  r.bound = cell.bound;
  r.witnesses = cell.witnesses;
  r.cell_dfa = *cell.cell_dfa;
  return r;
}

struct ParabolicDiagnostics {
  bool ok = true;
  std::vector<std::string> violations;
};

/// Checks that g is a maximal length double coset representative for the positive-weight
/// generators and a minimal one for the negative-weight generators.
inline ParabolicDiagnostics parabolic_consistency(const CoxeterSystem& sys, const WeightVector& phi,
                                                  const GroupElement& g) {
  ParabolicDiagnostics d;
  const auto name = [&](Letter s) { return sys.generators()[s]; };
  for (Letter s = 0; s < sys.rank(); ++s) {
    if (phi[s] > 0) {
      if (!g.left_descent(s)) d.violations.push_back("l(" + name(s) + "g) != l(g)-1");
      if (!g.right_descent(s)) d.violations.push_back("l(g" + name(s) + ") != l(g)-1");
    } else if (phi[s] < 0) {
      if (g.left_descent(s)) d.violations.push_back("l(" + name(s) + "g) != l(g)+1");
      if (g.right_descent(s)) d.violations.push_back("l(g" + name(s) + ") != l(g)+1");
    }
  }
  d.ok = d.violations.empty();
  return d;
}

/// One-dimensional representation T_s -> q^psi(s) (sign +) or -q^-psi(s) (sign -): its
/// degree function is the weight function +-psi.
inline WeightVector hecke_weight(const CoxeterSystem& sys, const std::vector<Integer>& psi, const std::vector<int>& signs) {
  if (psi.size() != sys.rank() || signs.size() != sys.rank())
    throw ValidationError("psi and signs need one entry per generator");
  RationalVector values;
  for (std::size_t i = 0; i < psi.size(); ++i) {
    if (psi[i] <= 0) throw ValidationError("psi must be a positive integer on every generator");
    if (signs[i] != 1 && signs[i] != -1) throw ValidationError("signs must be + or -");
    values.emplace_back(signs[i] > 0 ? Rational(psi[i]) : Rational(-psi[i]));
  }
  for (Letter s = 0; s < sys.rank(); ++s)
    for (Letter t = s + 1; t < sys.rank(); ++t) {
      const unsigned m = sys.bond(s, t);
      if (m != kInfinity && m % 2 == 1 && (signs[s] != signs[t] || psi[s] != psi[t]))
        throw ValidationError("no such representation: generators " + sys.generators()[s] + " and " +
                              sys.generators()[t] + " are joined by an odd bond");
    }
  return weight_for(sys, values);
}

inline GroupCellResult hecke_onedim(const CoxeterSystem& sys, const std::vector<Integer>& psi,
                                    const std::vector<int>& signs, Language lang = Language::Lex,
                                    const WeightOptions& opts = {}) {
  return group_cell(sys, hecke_weight(sys, psi, signs), lang, opts);
}

/// Experimental: does some element attaining the bound lie in a finite standard parabolic?
struct SphericalProbe {
  Rational bound;
  std::vector<Word> spherical_witnesses;  // witnesses whose support generates a finite group
  std::vector<Word> other_witnesses;
};

inline SphericalProbe probe_spherical(const CoxeterSystem& sys, const WeightVector& phi, const WeightOptions& opts = {}) {
  const auto lang = shortlex_automaton(sys, opts.caps);
  const auto res = bound(lang, phi, opts);
  SphericalProbe probe;
  probe.bound = res.bound;
  for (const auto& w : res.witnesses) {
    std::vector<Letter> support(w.begin(), w.end());
    std::sort(support.begin(), support.end());
    support.erase(std::unique(support.begin(), support.end()), support.end());
    (is_finite_parabolic(sys, support) ? probe.spherical_witnesses : probe.other_witnesses).push_back(w);
  }
  return probe;
}

}  // namespace weightcell

#endif  // WEIGHTCELL_COXETER_HPP
