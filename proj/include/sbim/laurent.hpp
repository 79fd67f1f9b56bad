#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "sbim/root_datum.hpp"
#include "sbim/scalars.hpp"

namespace sbim {

/// Exponent of a Laurent monomial: integer coordinates over the lattice
/// basis, stored with trailing zeros stripped so constants are the empty
/// vector regardless of rank.
using Exps = std::vector<std::int32_t>;

inline Exps strip(Exps e) {
  while (!e.empty() && e.back() == 0) e.pop_back();
  return e;
}

inline Exps exps_from_vec(const IntVec& v) {
  Exps e(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) e[i] = static_cast<std::int32_t>(v(i));
  return strip(std::move(e));
}

inline IntVec vec_from_exps(const Exps& e, int n) {
  if (e.size() > static_cast<std::size_t>(n)) throw std::invalid_argument("exponent has too many coordinates");
  IntVec v = IntVec::Zero(n);
  for (std::size_t i = 0; i < e.size(); ++i) v(static_cast<Eigen::Index>(i)) = e[i];
  return v;
}

/// Lexicographic order with implicit zero extension.
struct ExpLess {
  bool operator()(const Exps& a, const Exps& b) const {
    std::size_t n = std::max(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i) {
      std::int32_t av = i < a.size() ? a[i] : 0;
      std::int32_t bv = i < b.size() ? b[i] : 0;
      if (av != bv) return av < bv;
    }
    return false;
  }
};

inline Exps exps_add(const Exps& a, const Exps& b) {
  Exps out(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (i < a.size()) out[i] += a[i];
    if (i < b.size()) out[i] += b[i];
  }
  return strip(std::move(out));
}

inline Exps exps_sub(const Exps& a, const Exps& b) {
  Exps out(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (i < a.size()) out[i] += a[i];
    if (i < b.size()) out[i] -= b[i];
  }
  return strip(std::move(out));
}

inline Exps exps_neg(const Exps& a) {
  Exps out = a;
  for (auto& x : out) x = -x;
  return out;
}

/// Sparse multivariate Laurent polynomial over the field K: a finite map
/// exponent -> nonzero coefficient, in canonical exponent order.
template <class K>
class LaurentPoly {
 public:
  using Terms = std::map<Exps, K, ExpLess>;

  LaurentPoly() = default;
  LaurentPoly(int c) {
    if (c != 0) terms_[{}] = K(c);
  }
  explicit LaurentPoly(const K& c) {
    if (!is_zero(c)) terms_[{}] = c;
  }

  static LaurentPoly monomial(Exps e, K c) {
    LaurentPoly p;
    if (!is_zero(c)) p.terms_[strip(std::move(e))] = std::move(c);
    return p;
  }
  static LaurentPoly basis_char(const IntVec& lambda, K c = K(1)) { return monomial(exps_from_vec(lambda), c); }

  const Terms& terms() const { return terms_; }
  bool zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }

  void add_term(const Exps& e, const K& c) {
    if (is_zero(c)) return;
    auto key = strip(e);
    auto it = terms_.find(key);
    if (it == terms_.end()) {
      terms_.emplace(std::move(key), c);
    } else {
      it->second += c;
      if (is_zero(it->second)) terms_.erase(it);
    }
  }

  LaurentPoly& operator+=(const LaurentPoly& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  LaurentPoly& operator-=(const LaurentPoly& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }
  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  LaurentPoly operator-() const {
    LaurentPoly out;
    for (const auto& [e, c] : terms_) out.terms_.emplace(e, -c);
    return out;
  }

  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly out;
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) out.add_term(exps_add(ea, eb), ca * cb);
    return out;
  }
  LaurentPoly& operator*=(const LaurentPoly& o) { return *this = *this * o; }

  friend LaurentPoly operator*(const LaurentPoly& a, const K& c) {
    LaurentPoly out;
    if (is_zero(c)) return out;
    for (const auto& [e, x] : a.terms_) out.add_term(e, x * c);
    return out;
  }

  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const LaurentPoly& a, const LaurentPoly& b) { return !(a == b); }

  /// Nonzero scalar times a single monomial?
  std::optional<std::pair<Exps, K>> unit_monomial() const {
    if (terms_.size() != 1) return std::nullopt;
    return *terms_.begin();
  }

  int support_radius() const {
    int r = 0;
    for (const auto& [e, c] : terms_)
      for (auto x : e) r = std::max(r, std::abs(static_cast<int>(x)));
    return r;
  }

 private:
  Terms terms_;
};

template <class K>
K field_inv(const K& x);
template <>
inline Rational field_inv<Rational>(const Rational& x) {
  if (is_zero(x)) throw std::domain_error("division by zero");
  return Rational(1) / x;
}
template <>
inline Fp field_inv<Fp>(const Fp& x) {
  return x.inverse();
}

/// Exact division in the Laurent ring. Returns the quotient when the divisor
/// divides exactly, nullopt otherwise.
template <class K>
std::optional<LaurentPoly<K>> exact_divide(const LaurentPoly<K>& f, const LaurentPoly<K>& g) {
  if (g.zero()) throw std::invalid_argument("division by the zero polynomial");
  if (f.zero()) return LaurentPoly<K>();

  // Shift both supports so the componentwise minimum sits at the origin.
  auto min_corner = [](const LaurentPoly<K>& p) {
    std::size_t len = 0;
    for (const auto& [e, c] : p.terms()) len = std::max(len, e.size());
    Exps m(len, 0);
    bool first = true;
    for (const auto& [e, c] : p.terms()) {
      for (std::size_t i = 0; i < len; ++i) {
        std::int32_t v = i < e.size() ? e[i] : 0;
        m[i] = first ? v : std::min(m[i], v);
      }
      first = false;
    }
    return m;
  };
  Exps mf = min_corner(f), mg = min_corner(g);
  LaurentPoly<K> fs, gs;
  for (const auto& [e, c] : f.terms()) fs.add_term(exps_sub(e, mf), c);
  for (const auto& [e, c] : g.terms()) gs.add_term(exps_sub(e, mg), c);

  const auto& glead = *gs.terms().rbegin();
  LaurentPoly<K> q, r = fs;
  while (!r.zero()) {
    const auto& rlead = *r.terms().rbegin();
    Exps diff(std::max(rlead.first.size(), glead.first.size()), 0);
    for (std::size_t i = 0; i < diff.size(); ++i) {
      std::int32_t rv = i < rlead.first.size() ? rlead.first[i] : 0;
      std::int32_t gv = i < glead.first.size() ? glead.first[i] : 0;
      diff[i] = rv - gv;
      if (diff[i] < 0) return std::nullopt;
    }
    K coeff = rlead.second * field_inv(glead.second);
    auto t = LaurentPoly<K>::monomial(diff, coeff);
    q += t;
    r -= t * gs;
  }
  // Undo the shifts: f/g = q * x^(mf - mg).
  LaurentPoly<K> out;
  Exps shift = exps_sub(mf, mg);
  for (const auto& [e, c] : q.terms()) out.add_term(exps_add(e, shift), c);
  return out;
}

/// Ring automorphism e^lambda -> e^(w lambda).
template <class K>
LaurentPoly<K> weyl_act(const IntMat& w, const LaurentPoly<K>& f) {
  LaurentPoly<K> out;
  const int n = static_cast<int>(w.cols());
  for (const auto& [e, c] : f.terms()) out.add_term(exps_from_vec(w * vec_from_exps(e, n)), c);
  return out;
}

template <class K>
LaurentPoly<K> weyl_act(const WeylElement& w, const LaurentPoly<K>& f) {
  return weyl_act(w.matrix, f);
}

/// Demazure operator (f - sf)/(e^w - e^(sw)) for the fundamental coweight w
/// dual to the simple root s. Lands in the s-invariants; division is exact.
template <class K>
LaurentPoly<K> demazure(const RootDatum& datum, int s, const LaurentPoly<K>& f) {
  if (!datum.adjoint) throw DatumError("demazure requires adjoint data");
  const IntVec& omega = datum.fundamental_coweights.at(s);
  const IntMat& refl = datum.reflection.at(s);
  LaurentPoly<K> numer = f - weyl_act(refl, f);
  if (numer.zero()) return {};
  LaurentPoly<K> denom = LaurentPoly<K>::basis_char(omega) - LaurentPoly<K>::basis_char(refl * omega);
  auto q = exact_divide(numer, denom);
  if (!q) throw std::logic_error("demazure: exact division failed (arithmetic bug)");
  if (weyl_act(refl, *q) != *q) throw std::logic_error("demazure: result is not s-invariant (arithmetic bug)");
  return *q;
}

/// f = a + e^w b with a, b s-invariant; returns (a, b).
template <class K>
std::pair<LaurentPoly<K>, LaurentPoly<K>> rs_decompose(const RootDatum& datum, int s, const LaurentPoly<K>& f) {
  const IntVec& omega = datum.fundamental_coweights.at(s);
  LaurentPoly<K> b = demazure(datum, s, f);
  LaurentPoly<K> a = f - LaurentPoly<K>::basis_char(omega) * b;
  return {std::move(a), std::move(b)};
}

/// Matrix of R -> Hom_{R^s}(R, R^s) in the bases {1, e^w} and {1*, (e^w)*}:
/// the column of u lists the coordinates of e^w * u over {1, e^w}, swapped.
template <class K>
DenseMat<LaurentPoly<K>> selfadjoint_matrix(const RootDatum& datum, int s) {
  const IntVec& omega = datum.fundamental_coweights.at(s);
  auto ew = LaurentPoly<K>::basis_char(omega);
  DenseMat<LaurentPoly<K>> m(2, 2);
  auto [a1, b1] = rs_decompose(datum, s, ew);
  auto [a2, b2] = rs_decompose(datum, s, ew * ew);
  m(0, 0) = b1;
  m(1, 0) = a1;
  m(0, 1) = b2;
  m(1, 1) = a2;
  return m;
}

template <class K>
LaurentPoly<K> orbit_sum(const RootSystem& rs, const IntVec& lambda) {
  std::vector<IntVec> orbit;
  for (const auto& w : rs.weyl.elements()) {
    IntVec mu = w.matrix * lambda;
    bool seen = false;
    for (const auto& v : orbit)
      if (v == mu) {
        seen = true;
        break;
      }
    if (!seen) orbit.push_back(mu);
  }
  LaurentPoly<K> out;
  for (const auto& mu : orbit) out += LaurentPoly<K>::basis_char(mu);
  return out;
}

template <class K>
K pow_int(const K& base, std::int64_t e) {
  if (e < 0) return pow_int(field_inv(base), -e);
  K acc(1), b = base;
  while (e > 0) {
    if (e & 1) acc *= b;
    b *= b;
    e >>= 1;
  }
  return acc;
}

/// Evaluation at a point of the dual torus: e^lambda -> prod chi_i^(lambda_i).
template <class K>
K evaluate(const LaurentPoly<K>& f, const std::vector<K>& chi) {
  K out(0);
  for (const auto& [e, c] : f.terms()) {
    K term = c;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (i >= chi.size()) throw std::invalid_argument("evaluation point has too few coordinates");
      term *= pow_int(chi[i], e[i]);
    }
    out += term;
  }
  return out;
}

template <class K>
std::string display(const LaurentPoly<K>& f) {
  if (f.zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [e, c] : f.terms()) {
    if (!first) out += " + ";
    first = false;
    out += to_string(c);
    if (!e.empty()) {
      out += "*e[";
      for (std::size_t i = 0; i < e.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(e[i]);
      }
      out += "]";
    }
  }
  return out;
}

template <class K>
std::ostream& operator<<(std::ostream& os, const LaurentPoly<K>& f) {
  return os << display(f);
}

/// Serialized form: sorted (exponent-coordinates, coefficient) string pairs,
/// exponents padded to the lattice rank.
template <class K>
std::vector<std::pair<std::string, std::string>> to_entries(const LaurentPoly<K>& f, int n) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& [e, c] : f.terms()) {
    std::string key;
    for (int i = 0; i < n; ++i) {
      if (i) key += ",";
      key += std::to_string(i < static_cast<int>(e.size()) ? e[i] : 0);
    }
    out.emplace_back(key, to_string(c));
  }
  return out;
}

template <class K>
LaurentPoly<K> from_entries(const FieldSpec& field, const std::vector<std::pair<std::string, std::string>>& entries) {
  LaurentPoly<K> out;
  for (const auto& [key, val] : entries) {
    Exps e;
    std::size_t pos = 0;
    while (pos <= key.size()) {
      std::size_t next = key.find(',', pos);
      if (next == std::string::npos) next = key.size();
      e.push_back(static_cast<std::int32_t>(std::stol(key.substr(pos, next - pos))));
      pos = next + 1;
    }
    out.add_term(strip(std::move(e)), scalar_from_string<K>(field, val));
  }
  return out;
}

}  // namespace sbim

namespace Eigen {
template <class K>
struct NumTraits<sbim::LaurentPoly<K>> : GenericNumTraits<sbim::LaurentPoly<K>> {
  typedef sbim::LaurentPoly<K> Real;
  typedef sbim::LaurentPoly<K> NonInteger;
  typedef sbim::LaurentPoly<K> Nested;
  typedef sbim::LaurentPoly<K> Literal;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 10,
    AddCost = 200,
    MulCost = 400
  };
  static inline Real epsilon() { return Real(); }
  static inline Real dummy_precision() { return Real(); }
  static inline int digits10() { return 0; }
};
}  // namespace Eigen
