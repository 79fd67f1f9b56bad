#pragma once

#include <gmpxx.h>

#include <Eigen/Core>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>

namespace sbim {

using Rational = mpq_class;

inline bool is_zero(const Rational& x) { return sgn(x) == 0; }
inline std::string to_string(const Rational& x) { return x.get_str(); }
inline Rational rational_from_string(const std::string& s) {
  Rational r;
  if (r.set_str(s, 10) != 0) throw std::invalid_argument("bad rational: " + s);
  r.canonicalize();
  return r;
}

/// Element of F_p with runtime modulus. Values built from plain integer
/// literals carry modulus 0 and bind to the other operand's modulus on
/// first use, so generic code can write K(1), K(-2) etc.
struct Fp {
  std::int64_t v = 0;
  std::uint32_t p = 0;

  Fp() = default;
  Fp(int x) : v(x) {}
  Fp(std::int64_t x, std::uint32_t mod) : v(x), p(mod) { reduce(); }

  void reduce() {
    if (p == 0) return;
    v %= static_cast<std::int64_t>(p);
    if (v < 0) v += p;
  }

  static std::uint32_t join(std::uint32_t a, std::uint32_t b) {
    if (a == 0) return b;
    if (b == 0) return a;
    if (a != b) throw std::invalid_argument("mixed prime-field moduli");
    return a;
  }

  friend Fp operator+(const Fp& a, const Fp& b) { return Fp(a.v + b.v, join(a.p, b.p)); }
  friend Fp operator-(const Fp& a, const Fp& b) { return Fp(a.v - b.v, join(a.p, b.p)); }
  friend Fp operator*(const Fp& a, const Fp& b) { return Fp(a.v * b.v, join(a.p, b.p)); }
  Fp operator-() const { return Fp(-v, p); }
  Fp& operator+=(const Fp& o) { return *this = *this + o; }
  Fp& operator-=(const Fp& o) { return *this = *this - o; }
  Fp& operator*=(const Fp& o) { return *this = *this * o; }

  Fp inverse() const {
    if (p == 0) {
      if (v == 1 || v == -1) return *this;
      throw std::domain_error("inverse of unbound Fp value");
    }
    std::int64_t a = v % p, m = p;
    if (a < 0) a += m;
    if (a == 0) throw std::domain_error("division by zero in F_p");
    std::int64_t x0 = 0, x1 = 1, r0 = m, r1 = a;
    while (r1 != 0) {
      std::int64_t q = r0 / r1;
      std::int64_t t = r0 - q * r1;
      r0 = r1;
      r1 = t;
      t = x0 - q * x1;
      x0 = x1;
      x1 = t;
    }
    if (r0 != 1) throw std::domain_error("noninvertible element in F_p");
    return Fp(x0, p);
  }

  friend Fp operator/(const Fp& a, const Fp& b) {
    Fp bb(b.v, join(a.p, b.p));
    return a * bb.inverse();
  }
  Fp& operator/=(const Fp& o) { return *this = *this / o; }

  friend bool operator==(const Fp& a, const Fp& b) {
    std::uint32_t m = join(a.p, b.p);
    if (m == 0) return a.v == b.v;
    return Fp(a.v, m).v == Fp(b.v, m).v;
  }
  friend bool operator!=(const Fp& a, const Fp& b) { return !(a == b); }
};

inline bool is_zero(const Fp& x) {
  if (x.p == 0) return x.v == 0;
  return x.v % static_cast<std::int64_t>(x.p) == 0;
}
inline std::string to_string(const Fp& x) {
  Fp c = x;
  c.reduce();
  return std::to_string(c.v);
}
inline std::ostream& operator<<(std::ostream& os, const Fp& x) { return os << to_string(x); }

/// Coefficient field selector: Q or F_p.
struct FieldSpec {
  std::uint32_t p = 0;  // 0 = rationals

  bool rational() const { return p == 0; }

  static FieldSpec rationals() { return FieldSpec{0}; }
  static FieldSpec prime(std::uint32_t p) {
    if (p < 2) throw std::invalid_argument("characteristic must be a prime");
    for (std::uint32_t d = 2; d * d <= p; ++d)
      if (p % d == 0) throw std::invalid_argument("characteristic must be a prime");
    return FieldSpec{p};
  }
  static FieldSpec parse(const std::string& s) {
    if (s == "Q" || s == "q" || s == "rational" || s == "rationals") return rationals();
    std::string t = (s.size() > 1 && (s[0] == 'F' || s[0] == 'f')) ? s.substr(1) : s;
    return prime(static_cast<std::uint32_t>(std::stoul(t)));
  }
  std::string str() const { return p == 0 ? "Q" : "F" + std::to_string(p); }

  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;
};

template <class K>
K scalar_from_int(const FieldSpec& field, std::int64_t n);
template <>
inline Rational scalar_from_int<Rational>(const FieldSpec&, std::int64_t n) {
  return Rational(static_cast<long>(n));
}
template <>
inline Fp scalar_from_int<Fp>(const FieldSpec& field, std::int64_t n) {
  return Fp(n, field.p);
}

template <class K>
K scalar_from_string(const FieldSpec& field, const std::string& s);
template <>
inline Rational scalar_from_string<Rational>(const FieldSpec&, const std::string& s) {
  return rational_from_string(s);
}
template <>
inline Fp scalar_from_string<Fp>(const FieldSpec& field, const std::string& s) {
  return Fp(std::stoll(s), field.p);
}

using IntMat = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;
using IntVec = Eigen::Matrix<std::int64_t, Eigen::Dynamic, 1>;

template <class K>
using DenseMat = Eigen::Matrix<K, Eigen::Dynamic, Eigen::Dynamic>;
template <class K>
using DenseVec = Eigen::Matrix<K, Eigen::Dynamic, 1>;

}  // namespace sbim

namespace Eigen {

template <>
struct NumTraits<mpq_class> : GenericNumTraits<mpq_class> {
  typedef mpq_class Real;
  typedef mpq_class NonInteger;
  typedef mpq_class Nested;
  typedef mpq_class Literal;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 6,
    AddCost = 100,
    MulCost = 100
  };
  static inline Real epsilon() { return Real(0); }
  static inline Real dummy_precision() { return Real(0); }
  static inline int digits10() { return 0; }
};

template <>
struct NumTraits<sbim::Fp> : GenericNumTraits<sbim::Fp> {
  typedef sbim::Fp Real;
  typedef sbim::Fp NonInteger;
  typedef sbim::Fp Nested;
  typedef sbim::Fp Literal;
  enum {
    IsComplex = 0,
    IsInteger = 1,
    IsSigned = 0,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 2,
    MulCost = 2
  };
  static inline Real epsilon() { return Real(0); }
  static inline Real dummy_precision() { return Real(0); }
  static inline int digits10() { return 0; }
};

}  // namespace Eigen
