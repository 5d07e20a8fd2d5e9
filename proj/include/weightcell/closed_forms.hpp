#pragma once
#ifndef WEIGHTCELL_CLOSED_FORMS_HPP
#define WEIGHTCELL_CLOSED_FORMS_HPP

// Standard Coxeter systems (Bourbaki labelling) and closed-form bounds, cells and
// boundedness cones for the spherical families with unequal parameters and the affine ones.

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "weightcell/cone.hpp"
#include "weightcell/coxeter.hpp"
#include "weightcell/rational.hpp"

namespace weightcell {

namespace systems {

inline std::vector<std::vector<unsigned>> empty_matrix(std::size_t n) {
  std::vector<std::vector<unsigned>> m(n, std::vector<unsigned>(n, 2));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

inline void bond(std::vector<std::vector<unsigned>>& m, std::size_t i, std::size_t j, unsigned label) {
  m[i][j] = m[j][i] = label;
}

inline std::vector<std::string> numbered(std::size_t first, std::size_t last) {
  std::vector<std::string> g;
  for (std::size_t i = first; i <= last; ++i) g.push_back("s" + std::to_string(i));
  return g;
}

/// <s, t | (st)^m>; m = kInfinity for the infinite dihedral group.
inline CoxeterSystem dihedral(unsigned m) {
  auto mat = empty_matrix(2);
  bond(mat, 0, 1, m);
  return CoxeterSystem({"s", "t"}, mat);
}

/// Triangle group with m_su = p, m_st = q, m_tu = r.
inline CoxeterSystem triangle(unsigned p, unsigned q, unsigned r) {
  auto mat = empty_matrix(3);
  bond(mat, 0, 2, p);
  bond(mat, 0, 1, q);
  bond(mat, 1, 2, r);
  return CoxeterSystem({"s", "t", "u"}, mat);
}

inline CoxeterSystem type_a(std::size_t n) {
  auto mat = empty_matrix(n);
  for (std::size_t i = 0; i + 1 < n; ++i) bond(mat, i, i + 1, 3);
  return CoxeterSystem(numbered(1, n), mat);
}

/// s1 - s2 - ... - s(n-1) =4= sn
inline CoxeterSystem type_b(std::size_t n) {
  if (n < 2) throw ValidationError("B_n needs n >= 2");
  auto mat = empty_matrix(n);
  for (std::size_t i = 0; i + 1 < n; ++i) bond(mat, i, i + 1, 3);
  bond(mat, n - 2, n - 1, 4);
  return CoxeterSystem(numbered(1, n), mat);
}

/// s1 - s2 =4= s3 - s4
inline CoxeterSystem type_f4() {
  auto mat = empty_matrix(4);
  bond(mat, 0, 1, 3);
  bond(mat, 1, 2, 4);
  bond(mat, 2, 3, 3);
  return CoxeterSystem(numbered(1, 4), mat);
}

/// s0 and s1 both joined to s2, a chain up to s(n-1) =4= sn; n >= 3.
inline CoxeterSystem affine_b(std::size_t n) {
  if (n < 3) throw ValidationError("affine B_n needs n >= 3");
  auto mat = empty_matrix(n + 1);
  bond(mat, 0, 2, 3);
  for (std::size_t i = 1; i + 1 < n; ++i) bond(mat, i, i + 1, 3);
  bond(mat, n - 1, n, 4);
  return CoxeterSystem(numbered(0, n), mat);
}

/// s0 =4= s1 - ... - s(n-1) =4= sn; for n = 1, s0 and s1 with an infinite bond.
inline CoxeterSystem affine_c(std::size_t n) {
  if (n < 1) throw ValidationError("affine C_n needs n >= 1");
  auto mat = empty_matrix(n + 1);
  if (n == 1) {
    bond(mat, 0, 1, kInfinity);
  } else {
    for (std::size_t i = 0; i < n; ++i) bond(mat, i, i + 1, 3);
    bond(mat, 0, 1, 4);
    bond(mat, n - 1, n, 4);
  }
  return CoxeterSystem(numbered(0, n), mat);
}

/// s0 - s1 - s2 =4= s3 - s4
inline CoxeterSystem affine_f4() {
  auto mat = empty_matrix(5);
  bond(mat, 0, 1, 3);
  bond(mat, 1, 2, 3);
  bond(mat, 2, 3, 4);
  bond(mat, 3, 4, 3);
  return CoxeterSystem(numbered(0, 4), mat);
}

/// The triangle group (2,3,6) with s, t joined by 3 and t, u by 6.
inline CoxeterSystem affine_g2() { return triangle(2, 3, 6); }

}  // namespace systems

struct SphericalFormulaResult {
  Rational bound;
  std::optional<std::vector<Word>> cell;  // lex normal forms, shortlex order
};

namespace detail {

inline std::vector<Word> sorted_lex_words(const CoxeterSystem& sys, const std::vector<GroupElement>& elems) {
  std::set<Word, decltype(&shortlex_less)> out(&shortlex_less);
  for (const auto& g : elems) out.insert(lex_word(sys, g));
  return {out.begin(), out.end()};
}

inline Word digits_word(std::string_view digits) {
  Word w;
  for (char c : digits) w.push_back(static_cast<Letter>(c - '1'));
  return w;
}

template <typename... T>
Rational max_of(const Rational& first, const T&... rest) {
  Rational m = first;
  ((m = std::max(m, Rational(rest))), ...);
  return m;
}

/// Elements of `candidates` whose weight equals `value`.
inline std::vector<Word> attaining(const CoxeterSystem& sys, const WeightVector& phi,
                                   const std::vector<GroupElement>& candidates, const Rational& value) {
  std::vector<GroupElement> keep;
  for (const auto& g : candidates)
    if (weight_of_element(sys, phi, g) == value) keep.push_back(g);
  return sorted_lex_words(sys, keep);
}

}  // namespace detail

/// Finite W with phi >= 0: bound phi(w0), attained exactly on the coset w0 W_0 where W_0 is
/// generated by the zero-weight generators.
inline SphericalFormulaResult spherical_nonneg(const CoxeterSystem& sys, const WeightVector& phi) {
  if (!is_finite(sys)) throw PreconditionError("the Coxeter system is infinite");
  if (!validate_weight(sys, phi)) throw ValidationError("weights must agree on generators joined by an odd bond");
  std::vector<Letter> zero;
  for (Letter s = 0; s < sys.rank(); ++s) {
    if (phi[s] < 0) throw PreconditionError("a generator has negative weight");
    if (phi[s] == 0) zero.push_back(s);
  }
  const GroupElement w0 = longest_element(sys);
  SphericalFormulaResult r;
  r.bound = weight_of_element(sys, phi, w0);
  std::vector<GroupElement> coset;
  for (const auto& y : parabolic_elements(sys, zero)) {
    GroupElement g = w0;
    for (Letter s : lex_word(sys, y)) g.right_multiply(sys, s);
    coset.push_back(std::move(g));
  }
  r.cell = detail::sorted_lex_words(sys, coset);
  return r;
}

/// phi <= 0 everywhere: bound 0 attained on W_0.
inline SphericalFormulaResult nonpositive_case(const CoxeterSystem& sys, const WeightVector& phi) {
  std::vector<Letter> zero;
  for (Letter s = 0; s < sys.rank(); ++s)
    if (phi[s] == 0) zero.push_back(s);
  return {0, detail::sorted_lex_words(sys, parabolic_elements(sys, zero))};
}

/// Dihedral group of order 4m (bond 2m), phi(s) = a, phi(t) = b.
inline SphericalFormulaResult dihedral_bound(unsigned m, const Rational& a, const Rational& b) {
  if (m < 1) throw ValidationError("dihedral closed form needs m >= 1");
  const CoxeterSystem sys = systems::dihedral(2 * m);
  const WeightVector phi = weight_for(sys, {a, b});
  if (a >= 0 && b >= 0) return spherical_nonneg(sys, phi);
  if (a <= 0 && b <= 0) return nonpositive_case(sys, phi);

  // One weight negative, the other positive; `neg`/`pos` name the generators.
  const bool s_negative = a < 0;
  const Letter neg = s_negative ? 0 : 1;
  const Letter pos = s_negative ? 1 : 0;
  const Rational& x = s_negative ? a : b;  // negative weight
  const Rational& y = s_negative ? b : a;  // positive weight
  SphericalFormulaResult r;
  std::vector<GroupElement> cell;
  if (x + y <= 0) {
    r.bound = y;
  } else {
    r.bound = Rational(m - 1) * x + Rational(m) * y;
  }
  if (x + y < 0) {
    cell.push_back(GroupElement::from_word(sys, {pos}));
  } else if (x + y == 0) {
    for (unsigned k = 0; k < m; ++k) {
      Word w{pos};
      for (unsigned i = 0; i < k; ++i) {
        w.push_back(neg);
        w.push_back(pos);
      }
      cell.push_back(GroupElement::from_word(sys, w));
    }
  } else {
    GroupElement g = longest_element(sys);
    g.right_multiply(sys, neg);
    cell.push_back(std::move(g));
  }
  r.cell = detail::sorted_lex_words(sys, cell);
  return r;
}

/// B_n with phi(s1) = ... = phi(s(n-1)) = a and phi(sn) = b.
inline SphericalFormulaResult bn_bound(std::size_t n, const Rational& a, const Rational& b) {
  if (n < 2) throw ValidationError("B_n closed form needs n >= 2");
  SphericalFormulaResult r;
  bool first = true;
  for (std::size_t i = 0; i <= n; ++i) {
    const Rational ii(static_cast<unsigned long>(i));
    const Rational nn(static_cast<unsigned long>(n));
    const Rational f1 = ii * (ii - 1) / 2 * a + ii * b;
    const Rational f2 = (nn * (nn - 1) - (nn - ii) * (nn - ii - 1) / 2) * a + ii * b;
    if (first || f1 > r.bound) r.bound = f1;
    if (f2 > r.bound) r.bound = f2;
    first = false;
  }
  if (a == 0 || b == 0) return r;

  const CoxeterSystem sys = systems::type_b(n);
  RationalVector values(n, a);
  values[n - 1] = b;
  const WeightVector phi = weight_for(sys, values);
  const auto s = [](std::size_t k) { return static_cast<Letter>(k - 1); };  // s_k -> letter
  std::vector<Letter> J;
  for (std::size_t k = 1; k < n; ++k) J.push_back(s(k));
  const GroupElement wJ = longest_element(sys, J);

  std::vector<GroupElement> X;
  for (std::size_t i = 0; i <= n; ++i) {
    Word x, y;
    for (std::size_t j = 1; j <= i; ++j) {
      for (std::size_t k = n; k >= n - i + j; --k) x.push_back(s(k));
      for (std::size_t k = n; k >= j; --k) y.push_back(s(k));
    }
    X.push_back(GroupElement::from_word(sys, x));
    GroupElement g = wJ;
    for (Letter l : y) g.right_multiply(sys, l);
    X.push_back(std::move(g));
  }
  r.cell = detail::attaining(sys, phi, X, r.bound);
  return r;
}

/// The eleven elements that are maximal (W_{s1,s2}) and minimal (W_{s3,s4}) double coset
/// representatives in F4.
inline const std::vector<std::string>& f4_coset_words() {
  static const std::vector<std::string> words = {
      "121",          "121321",           "12132132",           "1213214321",
      "121321432132", "121323432132",     "121321324321",       "12132132432132",
      "1213214321324321", "121321324321324321", "121321324321323432132"};
  return words;
}

/// F4 with phi(s1) = phi(s2) = a and phi(s3) = phi(s4) = b.
inline SphericalFormulaResult f4_bound(const Rational& a, const Rational& b) {
  SphericalFormulaResult r;
  r.bound = detail::max_of(Rational(0), 3 * a, 3 * b, 5 * a + b, a + 5 * b, 11 * a + 7 * b, 7 * a + 11 * b, 12 * a + 9 * b,
                           9 * a + 12 * b, 12 * a + 12 * b);
  if (a == 0 || b == 0) return r;
  const CoxeterSystem sys = systems::type_f4();
  const WeightVector phi = weight_for(sys, {a, a, b, b});
  std::vector<GroupElement> X{GroupElement::identity(sys), longest_element(sys)};
  for (const auto& digits : f4_coset_words()) {
    const Word w = detail::digits_word(digits);
    Word sigma;
    for (Letter l : w) sigma.push_back(static_cast<Letter>(3 - l));
    X.push_back(GroupElement::from_word(sys, w));
    X.push_back(GroupElement::from_word(sys, sigma));
  }
  r.cell = detail::attaining(sys, phi, X, r.bound);
  return r;
}

// ---------------------------------------------------------------------------------------
// Affine cones

enum class AffineFamily { Bt, Ct, Ft4, Gt2 };

inline AffineFamily parse_affine_family(std::string_view s) {
  if (s == "Bt" || s == "bt" || s == "B~") return AffineFamily::Bt;
  if (s == "Ct" || s == "ct" || s == "C~") return AffineFamily::Ct;
  if (s == "Ft4" || s == "ft4" || s == "F~4") return AffineFamily::Ft4;
  if (s == "Gt2" || s == "gt2" || s == "G~2") return AffineFamily::Gt2;
  throw ValidationError("unknown affine family '" + std::string(s) + "' (expected Bt, Ct, Ft4 or Gt2)");
}

struct AffineConeSpec {
  AffineFamily family = AffineFamily::Bt;
  std::size_t rank = 0;
  std::vector<std::string> parameters;    // (a, b) or (a, b, c)
  std::vector<IntVector> per_coweight;    // <omega_i, 2 rho(phi)> <= 0 for each i, primitive
  HRep cone;                              // the two defining inequalities (deduplicated)
  std::string rho_basis;                  // "e" or "alpha"
  std::vector<IntVector> rho;             // coordinate i of 2 rho(phi), linear in the parameters
  std::vector<std::vector<Rational>> substitution;  // generator weight = substitution[s] . params
  CoxeterSystem system() const {
    switch (family) {
      case AffineFamily::Bt: return systems::affine_b(rank);
      case AffineFamily::Ct: return systems::affine_c(rank);
      case AffineFamily::Ft4: return systems::affine_f4();
      case AffineFamily::Gt2: return systems::affine_g2();
    }
    throw ValidationError("unknown affine family");
  }
};

namespace detail {

inline IntVector iv(std::initializer_list<long> xs) {
  IntVector v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

}  // namespace detail

inline AffineConeSpec affine_cone(AffineFamily family, std::size_t n = 0) {
  using detail::iv;
  AffineConeSpec spec;
  spec.family = family;
  switch (family) {
    case AffineFamily::Bt: {
      if (n < 3) throw ValidationError("affine B_n needs n >= 3");
      spec.rank = n;
      spec.parameters = {"a", "b"};
      const long N = static_cast<long>(n);
      for (long j = 1; j <= N; ++j) spec.per_coweight.push_back(iv({2 * N - j - 1, 1}));
      spec.cone = make_hrep(2, {iv({2 * (N - 1), 1}), iv({N - 1, 1})});
      spec.rho_basis = "e";
      for (long i = 1; i <= N; ++i) spec.rho.push_back(iv({2 * (N - i), 1}));
      for (std::size_t s = 0; s <= n; ++s) spec.substitution.push_back(s < n ? RationalVector{1, 0} : RationalVector{0, 1});
      break;
    }
    case AffineFamily::Ct: {
      if (n < 1) throw ValidationError("affine C_n needs n >= 1");
      spec.rank = n;
      spec.parameters = {"a", "b", "c"};  // a = phi(sn), b = phi(s1..s(n-1)), c = phi(s0)
      const long N = static_cast<long>(n);
      for (long i = 1; i <= N; ++i) spec.per_coweight.push_back(primitive(std::span<const Integer>(iv({1, 2 * N - i - 1, 1}))));
      spec.cone = make_hrep(3, {iv({1, 2 * (N - 1), 1}), iv({1, N - 1, 1})});
      spec.rho_basis = "e";
      for (long i = 1; i <= N; ++i) spec.rho.push_back(iv({1, 2 * (N - i), 1}));
      for (std::size_t s = 0; s <= n; ++s) {
        if (s == 0) spec.substitution.push_back({0, 0, 1});
        else if (s == n) spec.substitution.push_back({1, 0, 0});
        else spec.substitution.push_back({0, 1, 0});
      }
      break;
    }
    case AffineFamily::Ft4: {
      spec.rank = 4;
      spec.parameters = {"a", "b"};  // a = phi(s0) = phi(s1) = phi(s2), b = phi(s3) = phi(s4)
      spec.rho_basis = "alpha";
      spec.rho = {iv({10, 6}), iv({18, 12}), iv({24, 18}), iv({12, 10})};
      for (const auto& r : spec.rho) spec.per_coweight.push_back(primitive(std::span<const Integer>(r)));
      spec.cone = make_hrep(2, {iv({5, 3}), iv({6, 5})});
      for (std::size_t s = 0; s <= 4; ++s) spec.substitution.push_back(s <= 2 ? RationalVector{1, 0} : RationalVector{0, 1});
      break;
    }
    case AffineFamily::Gt2: {
      spec.rank = 2;
      spec.parameters = {"a", "b"};  // a = phi(s) = phi(t) (long roots), b = phi(u) (short root)
      spec.rho_basis = "alpha";
      spec.rho = {iv({6, 4}), iv({4, 2})};
      for (const auto& r : spec.rho) spec.per_coweight.push_back(primitive(std::span<const Integer>(r)));
      spec.cone = make_hrep(2, {iv({2, 1}), iv({3, 2})});
      spec.substitution = {{1, 0}, {1, 0}, {0, 1}};
      break;
    }
  }
  return spec;
}

/// Restricts a cone on generator weights to the parameter space: phi = P params, so each
/// normal n becomes P^T n.
inline HRep restrict_cone(const HRep& h, const std::vector<std::vector<Rational>>& substitution) {
  if (substitution.size() != h.dim) throw ValidationError("substitution does not match the cone dimension");
  const std::size_t k = substitution.empty() ? 0 : substitution[0].size();
  std::vector<IntVector> normals;
  for (const auto& n : h.normals) {
    RationalVector r(k, 0);
    for (std::size_t s = 0; s < h.dim; ++s)
      for (std::size_t j = 0; j < k; ++j) r[j] += Rational(n[s]) * substitution[s][j];
    normals.push_back(primitive(std::span<const Rational>(r)));
  }
  return make_hrep(k, normals);
}

/// Generator weights from parameter values.
inline RationalVector substitute(const std::vector<std::vector<Rational>>& substitution, const RationalVector& params) {
  RationalVector phi;
  for (const auto& row : substitution) phi.push_back(dot(row, params));
  return phi;
}

}  // namespace weightcell

#endif  // WEIGHTCELL_CLOSED_FORMS_HPP
