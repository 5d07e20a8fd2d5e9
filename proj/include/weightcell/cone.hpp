#pragma once
#ifndef WEIGHTCELL_CONE_HPP
#define WEIGHTCELL_CONE_HPP

// Rational polyhedral cones {x : <n, x> <= 0 for every normal n}: irredundant facets by
// exact LP, extreme rays and lineality by double description, and the dual direction.

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "weightcell/caps.hpp"
#include "weightcell/errors.hpp"
#include "weightcell/lp.hpp"
#include "weightcell/rational.hpp"
#include "weightcell/weights.hpp"

namespace weightcell {

struct HRep {
  std::size_t dim = 0;
  std::vector<IntVector> normals;
  friend bool operator==(const HRep&, const HRep&) = default;
};

struct VRep {
  std::size_t dim = 0;
  std::vector<IntVector> lineality;
  std::vector<IntVector> rays;
  friend bool operator==(const VRep&, const VRep&) = default;
};

/// Primitive, nonzero, first-occurrence-deduplicated normals.
inline HRep make_hrep(std::size_t dim, const std::vector<IntVector>& normals) {
  HRep h{dim, {}};
  std::set<IntVector> seen;
  for (const auto& n : normals) {
    if (n.size() != dim) throw ValidationError("normal has the wrong dimension");
    IntVector p = primitive(std::span<const Integer>(n));
    if (std::all_of(p.begin(), p.end(), [](const Integer& z) { return z == 0; })) continue;
    if (seen.insert(p).second) h.normals.push_back(std::move(p));
  }
  return h;
}

inline HRep cone_from_circuits(const std::vector<SimpleCycle>& cycles, std::size_t alphabet_size) {
  std::vector<IntVector> normals;
  for (const auto& c : cycles) normals.push_back(c.letter_counts(alphabet_size));
  return make_hrep(alphabet_size, normals);
}

/// H-representation of the bounded cone of an automaton's language.
inline HRep cone_of_automaton(const Automaton& a, const Caps& caps = {}) {
  const auto p = prepare(a, caps);
  return cone_from_circuits(simple_cycles(p.dfa, caps), a.alphabet_size());
}

namespace detail {

inline RationalMatrix as_matrix(const std::vector<IntVector>& rows) {
  RationalMatrix m;
  for (const auto& r : rows) m.push_back(to_rational(std::span<const Integer>(r)));
  return m;
}

/// Does the cone {x : <m, x> <= 0, m in rows} force <n, x> <= 0?
inline bool implied_by(const IntVector& n, const std::vector<const IntVector*>& rows) {
  RationalMatrix A;
  RationalVector b;
  for (const auto* r : rows) {
    A.push_back(to_rational(std::span<const Integer>(*r)));
    b.push_back(0);
  }
  RationalVector c = to_rational(std::span<const Integer>(n));
  A.push_back(c);
  b.push_back(1);
  return maximize_free(A, b, c).value <= 0;
}

}  // namespace detail

/// True iff every point of `a` satisfies every inequality of `b`.
inline bool cone_implies(const HRep& a, const HRep& b) {
  if (a.dim != b.dim) throw ValidationError("cone dimension mismatch");
  std::vector<const IntVector*> rows;
  for (const auto& n : a.normals) rows.push_back(&n);
  return std::all_of(b.normals.begin(), b.normals.end(), [&](const IntVector& n) { return detail::implied_by(n, rows); });
}

inline bool cones_equal(const HRep& a, const HRep& b) { return cone_implies(a, b) && cone_implies(b, a); }

struct RedundancyResult {
  HRep irredundant;
  std::vector<IntVector> redundant;
};

/// Drops, in input order, each inequality implied by the ones still kept.
inline RedundancyResult remove_redundant_detailed(const HRep& h) {
  const HRep clean = make_hrep(h.dim, h.normals);
  std::vector<char> kept(clean.normals.size(), 1);
  RedundancyResult result;
  result.irredundant.dim = h.dim;
  for (std::size_t i = 0; i < clean.normals.size(); ++i) {
    std::vector<const IntVector*> others;
    for (std::size_t j = 0; j < clean.normals.size(); ++j)
      if (j != i && kept[j]) others.push_back(&clean.normals[j]);
    if (detail::implied_by(clean.normals[i], others)) {
      kept[i] = 0;
      result.redundant.push_back(clean.normals[i]);
    }
  }
  for (std::size_t i = 0; i < clean.normals.size(); ++i)
    if (kept[i]) result.irredundant.normals.push_back(clean.normals[i]);
  return result;
}

inline HRep remove_redundant(const HRep& h) { return remove_redundant_detailed(h).irredundant; }

namespace detail {

class Bits {
 public:
  explicit Bits(std::size_t n = 0) : words_((n + 63) / 64, 0) {}
  void set(std::size_t i) { words_[i / 64] |= std::uint64_t{1} << (i % 64); }
  bool test(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1U; }
  Bits operator&(const Bits& o) const {
    Bits r = *this;
    for (std::size_t k = 0; k < words_.size(); ++k) r.words_[k] &= o.words_[k];
    return r;
  }
  bool subset_of(const Bits& o) const {
    for (std::size_t k = 0; k < words_.size(); ++k)
      if (words_[k] & ~o.words_[k]) return false;
    return true;
  }
  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(__builtin_popcountll(w));
    return c;
  }

 private:
  std::vector<std::uint64_t> words_;
};

inline RationalVector primitive_rational(const RationalVector& v) {
  return to_rational(std::span<const Integer>(primitive(std::span<const Rational>(v))));
}

/// Extreme rays of the pointed cone {y : M y <= 0}, M of full column rank k.
inline std::vector<RationalVector> pointed_rays(const RationalMatrix& M, std::size_t k, const Caps& caps) {
  if (k == 0) return {};
  const std::size_t m = M.size();
  // Greedy choice of k independent rows.
  std::vector<std::size_t> basis_rows;
  RationalMatrix chosen;
  for (std::size_t i = 0; i < m && basis_rows.size() < k; ++i) {
    chosen.push_back(M[i]);
    if (rank(chosen, k) == chosen.size()) {
      basis_rows.push_back(i);
    } else {
      chosen.pop_back();
    }
  }
  const RationalMatrix inv = inverse(chosen);

  struct Ray {
    RationalVector y;
    Bits zero;
  };
  std::vector<Ray> rays;
  for (std::size_t j = 0; j < k; ++j) {
    RationalVector y(k);
    for (std::size_t i = 0; i < k; ++i) y[i] = -inv[i][j];
    Ray r{primitive_rational(y), Bits(m)};
    for (std::size_t q = 0; q < k; ++q)
      if (q != j) r.zero.set(basis_rows[q]);
    rays.push_back(std::move(r));
  }

  std::vector<char> in_basis(m, 0);
  for (auto i : basis_rows) in_basis[i] = 1;
  for (std::size_t row = 0; row < m; ++row) {
    if (in_basis[row]) continue;
    std::vector<Rational> val(rays.size());
    std::vector<std::size_t> pos, neg;
    std::vector<Ray> next;
    for (std::size_t r = 0; r < rays.size(); ++r) {
      val[r] = dot(M[row], rays[r].y);
      if (val[r] > 0) {
        pos.push_back(r);
      } else {
        if (val[r] == 0) rays[r].zero.set(row);
        if (val[r] < 0) neg.push_back(r);
        next.push_back(rays[r]);
      }
    }
    for (auto p : pos) {
      for (auto q : neg) {
        const Bits common = rays[p].zero & rays[q].zero;
        if (common.count() + 2 < k) continue;
        bool adjacent = true;
        for (std::size_t r = 0; r < rays.size() && adjacent; ++r) {
          if (r == p || r == q) continue;
          if (common.subset_of(rays[r].zero)) adjacent = false;
        }
        if (!adjacent) continue;
        RationalVector y(k);
        for (std::size_t i = 0; i < k; ++i) y[i] = val[p] * rays[q].y[i] - val[q] * rays[p].y[i];
        Ray fresh{primitive_rational(y), common};
        fresh.zero.set(row);
        next.push_back(std::move(fresh));
        if (next.size() > caps.max_rays) throw ResourceError("extreme rays", caps.max_rays);
      }
    }
    rays = std::move(next);
  }
  std::vector<RationalVector> out;
  for (auto& r : rays) out.push_back(std::move(r.y));
  return out;
}

}  // namespace detail

/// Lineality space (kernel of the normal matrix) and extreme rays of the pointed part,
/// which lives in the orthogonal complement of the lineality space. Sorted lexicographically.
inline VRep extreme_rays(const HRep& h, const Caps& caps = {}) {
  VRep v;
  v.dim = h.dim;
  const RationalMatrix N = detail::as_matrix(h.normals);
  v.lineality = kernel_basis(N, h.dim);

  // Coordinates on the row space of N.
  const auto e = rref(N, h.dim);
  std::vector<IntVector> Q;
  for (const auto& row : e.rows) Q.push_back(primitive(std::span<const Rational>(row)));
  const std::size_t k = Q.size();
  RationalMatrix M(N.size(), RationalVector(k));
  for (std::size_t i = 0; i < N.size(); ++i)
    for (std::size_t j = 0; j < k; ++j) M[i][j] = dot(h.normals[i], Q[j]);

  for (const auto& y : detail::pointed_rays(M, k, caps)) {
    RationalVector x(h.dim, 0);
    for (std::size_t j = 0; j < k; ++j)
      for (std::size_t i = 0; i < h.dim; ++i) x[i] += y[j] * Rational(Q[j][i]);
    v.rays.push_back(primitive(std::span<const Rational>(x)));
  }
  std::sort(v.rays.begin(), v.rays.end());
  v.rays.erase(std::unique(v.rays.begin(), v.rays.end()), v.rays.end());
  return v;
}

/// Irredundant H-representation of cone(rays) + span(lineality).
inline HRep facets_from_rays(const VRep& v, const Caps& caps = {}) {
  HRep dual{v.dim, v.rays};
  for (const auto& l : v.lineality) {
    dual.normals.push_back(l);
    IntVector neg = l;
    for (auto& z : neg) z = -z;
    dual.normals.push_back(std::move(neg));
  }
  dual = make_hrep(v.dim, dual.normals);
  const VRep dv = extreme_rays(dual, caps);
  std::vector<IntVector> normals = dv.rays;
  for (const auto& l : dv.lineality) {
    normals.push_back(l);
    IntVector neg = l;
    for (auto& z : neg) z = -z;
    normals.push_back(std::move(neg));
  }
  return remove_redundant(make_hrep(v.dim, normals));
}

inline bool contains(const HRep& h, const RationalVector& phi) {
  if (phi.size() != h.dim) throw ValidationError("dimension mismatch");
  return std::all_of(h.normals.begin(), h.normals.end(), [&](const IntVector& n) { return dot(n, phi) <= 0; });
}

inline bool interior(const HRep& h, const RationalVector& phi) {
  if (phi.size() != h.dim) throw ValidationError("dimension mismatch");
  return std::all_of(h.normals.begin(), h.normals.end(), [&](const IntVector& n) { return dot(n, phi) < 0; });
}

inline bool contains(const HRep& h, const WeightVector& phi) { return contains(h, phi.values()); }
inline bool interior(const HRep& h, const WeightVector& phi) { return interior(h, phi.values()); }

/// Random point of cone(rays) + span(lineality) with small integer coefficients; about a
/// third of the ray coefficients are zero so that faces of the cone are sampled too.
template <typename Rng>
RationalVector sample_point(const VRep& v, Rng& rng, int spread = 5) {
  std::uniform_int_distribution<int> coef(0, spread);
  std::uniform_int_distribution<int> free_coef(-spread, spread);
  std::uniform_int_distribution<int> den(1, 4);
  std::uniform_int_distribution<int> drop(0, 2);
  RationalVector x(v.dim, 0);
  for (const auto& r : v.rays) {
    if (drop(rng) == 0) continue;
    const Rational c = make_rational(coef(rng), den(rng));
    for (std::size_t i = 0; i < v.dim; ++i) x[i] += c * Rational(r[i]);
  }
  for (const auto& l : v.lineality) {
    const Rational c = make_rational(free_coef(rng), den(rng));
    for (std::size_t i = 0; i < v.dim; ++i) x[i] += c * Rational(l[i]);
  }
  return x;
}

namespace detail {

inline std::string int_rows_json(const std::vector<IntVector>& rows) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < rows.size(); ++i) {
    os << (i ? ", " : "") << '[';
    for (std::size_t j = 0; j < rows[i].size(); ++j) os << (j ? ", " : "") << rows[i][j];
    os << ']';
  }
  os << ']';
  return os.str();
}

}  // namespace detail

inline std::string cone_to_json(const HRep& h, const VRep& v) {
  std::ostringstream os;
  os << "{\n  \"dim\": " << h.dim << ",\n  \"normals\": " << detail::int_rows_json(h.normals)
     << ",\n  \"lineality\": " << detail::int_rows_json(v.lineality) << ",\n  \"rays\": " << detail::int_rows_json(v.rays)
     << "\n}\n";
  return os.str();
}

}  // namespace weightcell

#endif  // WEIGHTCELL_CONE_HPP
