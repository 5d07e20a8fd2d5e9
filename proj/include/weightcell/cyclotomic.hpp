#pragma once
#ifndef WEIGHTCELL_CYCLOTOMIC_HPP
#define WEIGHTCELL_CYCLOTOMIC_HPP

// Exact arithmetic in the real cyclotomic field Q(2cos(pi/M)).
//
// Elements are stored in the power basis of x = 2cos(pi/M) modulo the minimal polynomial
// of x, so the representation is faithful: an element is zero iff all coefficients are.
// Signs are decided by rational interval arithmetic on an isolating interval for x.

#include <cmath>
#include <cstddef>
#include <functional>
#include <memory>
#include <numbers>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "weightcell/errors.hpp"
#include "weightcell/rational.hpp"

namespace weightcell {

/// Integer polynomial, coefficients from the constant term upwards.
using IntPoly = std::vector<Integer>;

namespace detail {

inline void trim_poly(IntPoly& p) {
  while (p.size() > 1 && p.back() == 0) p.pop_back();
}

inline IntPoly poly_mul(const IntPoly& a, const IntPoly& b) {
  IntPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  trim_poly(r);
  return r;
}

// Exact division by a monic divisor; the remainder must vanish.
inline IntPoly poly_div_exact(IntPoly num, const IntPoly& den) {
  const std::size_t dn = den.size() - 1;
  if (num.size() < den.size()) return IntPoly{0};
  IntPoly q(num.size() - dn, 0);
  for (std::size_t k = num.size(); k-- > dn;) {
    Integer c = num[k];
    q[k - dn] = c;
    if (c == 0) continue;
    for (std::size_t i = 0; i <= dn; ++i) num[k - dn + i] -= c * den[i];
  }
  trim_poly(q);
  return q;
}

inline unsigned euler_phi(unsigned n) {
  unsigned result = n;
  for (unsigned p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      result -= result / p;
    }
  }
  if (n > 1) result -= result / n;
  return result;
}

}  // namespace detail

/// The n-th cyclotomic polynomial, via x^n - 1 = prod_{d | n} Phi_d(x).
inline IntPoly cyclotomic_polynomial(unsigned n) {
  if (n == 0) throw ValidationError("cyclotomic polynomial of order 0");
  IntPoly p(n + 1, 0);
  p[0] = -1;
  p[n] = 1;
  for (unsigned d = 1; d < n; ++d) {
    if (n % d == 0) p = detail::poly_div_exact(p, cyclotomic_polynomial(d));
  }
  return p;
}

/// The degree-k integer polynomial T with T(y + 1/y) = y^k + y^-k.
inline IntPoly chebyshev_hat(unsigned k) {
  IntPoly prev{2};
  if (k == 0) return prev;
  IntPoly cur{0, 1};
  for (unsigned i = 1; i < k; ++i) {
    IntPoly next(cur.size() + 1, 0);
    for (std::size_t j = 0; j < cur.size(); ++j) next[j + 1] += cur[j];
    for (std::size_t j = 0; j < prev.size(); ++j) next[j] -= prev[j];
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

/// Monic minimal polynomial of 2cos(pi/M) over Q.
///
/// For M >= 2 the cyclotomic polynomial of order 2M is palindromic of even degree 2k and
/// equals z^k g(z + 1/z); g is recovered by peeling off the top Laurent coefficient.
inline IntPoly minimal_polynomial_of_2cos(unsigned M) {
  if (M == 0) throw ValidationError("modulus must be positive");
  if (M == 1) return IntPoly{2, 1};
  IntPoly phi = cyclotomic_polynomial(2 * M);
  const std::size_t k = (phi.size() - 1) / 2;
  // Laurent coefficient of z^j sits at phi[k + j], j in [-k, k].
  IntPoly g(k + 1, 0);
  for (std::size_t j = k + 1; j-- > 0;) {
    Integer c = phi[k + j];
    g[j] = c;
    if (c == 0) continue;
    // subtract c * (z + 1/z)^j = c * sum_i binom(j, i) z^{j - 2i}
    Integer binom = 1;
    for (std::size_t i = 0; i <= j; ++i) {
      phi[k + j - 2 * i] -= c * binom;
      binom = binom * static_cast<unsigned long>(j - i) / static_cast<unsigned long>(i + 1);
    }
  }
  return g;
}

inline Rational eval_poly(const IntPoly& p, const Rational& x) {
  Rational acc = 0;
  for (std::size_t i = p.size(); i-- > 0;) acc = acc * x + p[i];
  return acc;
}

class CycloReal;

/// The field Q(2cos(pi/M)). Cheap to copy; all elements share the immutable field data.
class RealCyclotomicField {
 public:
  explicit RealCyclotomicField(unsigned modulus) : data_(std::make_shared<Data>(modulus)) {}

  unsigned modulus() const noexcept { return data_->modulus; }
  std::size_t degree() const noexcept { return data_->minpoly.size() - 1; }
  const IntPoly& minimal_polynomial() const noexcept { return data_->minpoly; }

  CycloReal zero() const;
  CycloReal one() const;
  CycloReal from_rational(const Rational& q) const;
  /// x = 2cos(pi/M) itself.
  CycloReal generator() const;
  /// 2cos(pi/m) for a bond label m dividing the modulus.
  CycloReal two_cos(unsigned m) const;

  /// Real value of the generator, for diagnostics only.
  double generator_value() const noexcept { return 2.0 * std::cos(std::numbers::pi / data_->modulus); }

  friend bool operator==(const RealCyclotomicField& a, const RealCyclotomicField& b) {
    return a.data_ == b.data_ || a.data_->modulus == b.data_->modulus;
  }

 private:
  friend class CycloReal;

  struct Data {
    explicit Data(unsigned M);
    unsigned modulus;
    IntPoly minpoly;
    // Isolating interval [lo, hi] for x; f(lo) has sign lo_sign. Only used when degree > 1.
    Rational lo, hi;
    int lo_sign = 0;
  };

  explicit RealCyclotomicField(std::shared_ptr<const Data> d) : data_(std::move(d)) {}

  std::shared_ptr<const Data> data_;
};

/// An element of Q(2cos(pi/M)).
class CycloReal {
 public:
  CycloReal() = default;

  const RealCyclotomicField& field() const { return field_; }
  const RationalVector& coeffs() const noexcept { return coeffs_; }

  bool is_zero() const {
    for (const auto& c : coeffs_)
      if (c != 0) return false;
    return true;
  }

  /// Whether the element lies in Q; returns the rational through `out` when it does.
  bool is_rational(Rational* out = nullptr) const {
    for (std::size_t i = 1; i < coeffs_.size(); ++i)
      if (coeffs_[i] != 0) return false;
    if (out) *out = coeffs_.empty() ? Rational(0) : coeffs_[0];
    return true;
  }

  /// Exact sign under the real embedding x -> 2cos(pi/M).
  int sign() const;

  double to_double() const {
    const double x = field_.generator_value();
    double acc = 0.0;
    for (std::size_t i = coeffs_.size(); i-- > 0;) acc = acc * x + coeffs_[i].get_d();
    return acc;
  }

  std::string to_string() const {
    std::ostringstream os;
    bool any = false;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
      if (coeffs_[i] == 0) continue;
      if (any) os << " + ";
      os << coeffs_[i];
      if (i == 1) os << "*x";
      if (i > 1) os << "*x^" << i;
      any = true;
    }
    if (!any) os << '0';
    return os.str();
  }

  CycloReal& operator+=(const CycloReal& o) {
    check_same_field(o);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    return *this;
  }
  CycloReal& operator-=(const CycloReal& o) {
    check_same_field(o);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
    return *this;
  }
  CycloReal& operator*=(const Rational& q) {
    for (auto& c : coeffs_) c *= q;
    return *this;
  }
  CycloReal& operator*=(const CycloReal& o) {
    *this = *this * o;
    return *this;
  }

  friend CycloReal operator+(CycloReal a, const CycloReal& b) { return a += b; }
  friend CycloReal operator-(CycloReal a, const CycloReal& b) { return a -= b; }
  friend CycloReal operator*(CycloReal a, const Rational& q) { return a *= q; }
  friend CycloReal operator*(const Rational& q, CycloReal a) { return a *= q; }
  friend CycloReal operator-(CycloReal a) {
    for (auto& c : a.coeffs_) c = -c;
    return a;
  }

  friend CycloReal operator*(const CycloReal& a, const CycloReal& b) {
    a.check_same_field(b);
    const std::size_t d = a.coeffs_.size();
    RationalVector prod(2 * d - 1, 0);
    for (std::size_t i = 0; i < d; ++i) {
      if (a.coeffs_[i] == 0) continue;
      for (std::size_t j = 0; j < d; ++j) {
        if (b.coeffs_[j] == 0) continue;
        prod[i + j] += a.coeffs_[i] * b.coeffs_[j];
      }
    }
    const IntPoly& f = a.field_.minimal_polynomial();
    for (std::size_t k = prod.size(); k-- > d;) {
      if (prod[k] == 0) continue;
      const Rational c = prod[k];
      for (std::size_t i = 0; i <= d; ++i) prod[k - d + i] -= c * f[i];
    }
    prod.resize(d);
    return CycloReal(a.field_, std::move(prod));
  }

  friend bool operator==(const CycloReal& a, const CycloReal& b) {
    return a.field_.modulus() == b.field_.modulus() && a.coeffs_ == b.coeffs_;
  }
  /// Structural (not numeric) order, for use as a container key.
  friend bool operator<(const CycloReal& a, const CycloReal& b) { return a.coeffs_ < b.coeffs_; }

  std::size_t hash() const noexcept {
    std::size_t h = 0x9e3779b97f4a7c15ULL;
    for (const auto& c : coeffs_) {
      const std::size_t n = mpz_size(c.get_num_mpz_t()) ? mpz_getlimbn(c.get_num_mpz_t(), 0) : 0;
      const std::size_t dd = mpz_getlimbn(c.get_den_mpz_t(), 0);
      h ^= (n * 31 + dd + static_cast<std::size_t>(mpz_sgn(c.get_num_mpz_t()) + 1)) + 0x9e3779b97f4a7c15ULL +
           (h << 6) + (h >> 2);
    }
    return h;
  }

  friend std::ostream& operator<<(std::ostream& os, const CycloReal& x) { return os << x.to_string(); }

 private:
  friend class RealCyclotomicField;

  CycloReal(RealCyclotomicField f, RationalVector c) : field_(std::move(f)), coeffs_(std::move(c)) {}

  void check_same_field(const CycloReal& o) const {
    if (field_.modulus() != o.field_.modulus() || coeffs_.size() != o.coeffs_.size()) {
      throw ValidationError("cyclotomic elements from different fields");
    }
  }

  RealCyclotomicField field_{1};
  RationalVector coeffs_{Rational(0)};
};

inline RealCyclotomicField::Data::Data(unsigned M) : modulus(M), minpoly(minimal_polynomial_of_2cos(M)) {
  if (minpoly.size() - 1 <= 1) return;
  // For M >= 4 the generator is the largest root of the minimal polynomial, and its
  // nearest conjugate 2cos(3pi/M) is far away compared with this starting width.
  const double x = 2.0 * std::cos(std::numbers::pi / M);
  lo = Rational(x - 1e-9);
  hi = Rational(x + 1e-9);
  lo_sign = sgn(eval_poly(minpoly, lo));
  const int hi_sign = sgn(eval_poly(minpoly, hi));
  if (lo_sign == 0 || hi_sign == 0 || lo_sign == hi_sign) {
    throw std::logic_error("failed to isolate 2cos(pi/M) for M = " + std::to_string(M));
  }
  for (int i = 0; i < 40; ++i) {
    Rational mid = (lo + hi) / 2;
    const int s = sgn(eval_poly(minpoly, mid));
    if (s == lo_sign) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
}

inline CycloReal RealCyclotomicField::zero() const { return CycloReal(*this, RationalVector(degree(), 0)); }

inline CycloReal RealCyclotomicField::one() const { return from_rational(1); }

inline CycloReal RealCyclotomicField::from_rational(const Rational& q) const {
  RationalVector c(degree(), 0);
  c[0] = q;
  return CycloReal(*this, std::move(c));
}

inline CycloReal RealCyclotomicField::generator() const {
  if (degree() == 1) return from_rational(-Rational(minimal_polynomial()[0]));
  RationalVector c(degree(), 0);
  c[1] = 1;
  return CycloReal(*this, std::move(c));
}

inline CycloReal RealCyclotomicField::two_cos(unsigned m) const {
  if (m < 1 || modulus() % m != 0) {
    throw ValidationError("bond label " + std::to_string(m) + " does not divide modulus " +
                          std::to_string(modulus()));
  }
  // 2cos(pi/m) = 2cos(k * pi/M) = T_k(x) with k = M/m.
  const IntPoly t = chebyshev_hat(modulus() / m);
  const CycloReal x = generator();
  CycloReal acc = zero();
  for (std::size_t i = t.size(); i-- > 0;) acc = acc * x + from_rational(Rational(t[i]));
  return acc;
}

inline int CycloReal::sign() const {
  Rational q;
  if (is_rational(&q)) return sgn(q);
  const auto& d = *field_.data_;
  Rational lo = d.lo;
  Rational hi = d.hi;
  // lo > 0 here: degree > 1 forces M >= 4, so x >= sqrt(2).
  for (;;) {
    Rational vlo = 0, vhi = 0;
    Rational plo = 1, phi = 1;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
      const Rational& c = coeffs_[i];
      if (c >= 0) {
        vlo += c * plo;
        vhi += c * phi;
      } else {
        vlo += c * phi;
        vhi += c * plo;
      }
      plo *= lo;
      phi *= hi;
    }
    if (vlo > 0) return 1;
    if (vhi < 0) return -1;
    // Nonzero algebraic number: refine the enclosure of x and try again.
    for (int i = 0; i < 32; ++i) {
      Rational mid = (lo + hi) / 2;
      if (sgn(eval_poly(d.minpoly, mid)) == d.lo_sign) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
  }
}

inline int compare(const CycloReal& a, const CycloReal& b) { return (a - b).sign(); }

/// embed_2cos(m, M): 2cos(pi/m) in Q(2cos(pi/M)).
inline CycloReal embed_2cos(unsigned m, const RealCyclotomicField& field) { return field.two_cos(m); }

struct CycloRealHash {
  std::size_t operator()(const CycloReal& x) const noexcept { return x.hash(); }
};

}  // namespace weightcell

#endif  // WEIGHTCELL_CYCLOTOMIC_HPP
