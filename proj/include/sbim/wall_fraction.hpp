#pragma once

#include <map>
#include <memory>
#include <optional>

#include "sbim/laurent.hpp"
#include "sbim/root_datum.hpp"

namespace sbim {

using SystemPtr = std::shared_ptr<const RootSystem>;

inline SystemPtr make_system(const std::string& preset) { return std::make_shared<RootSystem>(preset_datum(preset)); }
inline SystemPtr make_system(RootDatum d) { return std::make_shared<RootSystem>(std::move(d)); }

template <class K>
LaurentPoly<K> wall_poly(const RootSystem& rs, int wall) {
  return LaurentPoly<K>::basis_char(rs.positives.at(wall).coroot) - LaurentPoly<K>(1);
}

/// Element of the group ring localized away from all walls except an
/// optionally allowed one: numerator / prod (e^beta' - 1)^m, where each
/// beta' is a positive coroot different from the allowed wall. Denominators
/// stay in factored form; equality is decided by cross-multiplication.
template <class K>
class WallFraction {
 public:
  WallFraction() = default;
  WallFraction(int c) : num_(c) {}

  WallFraction(SystemPtr sys, std::optional<int> allowed, LaurentPoly<K> num, std::map<int, int> den = {})
      : sys_(std::move(sys)), allowed_(allowed), num_(std::move(num)), den_(std::move(den)) {
    for (const auto& [w, m] : den_) {
      if (m <= 0) throw std::invalid_argument("wall exponent must be positive");
      if (allowed_ && *allowed_ == w) throw std::invalid_argument("denominator uses the allowed wall");
      if (w < 0 || w >= sys_->wall_count()) throw std::invalid_argument("bad wall index");
    }
    normalize();
  }

  const LaurentPoly<K>& numerator() const { return num_; }
  const std::map<int, int>& denominator_walls() const { return den_; }
  const std::optional<int>& allowed_wall() const { return allowed_; }
  const SystemPtr& system() const { return sys_; }
  bool zero() const { return num_.zero(); }

  friend WallFraction operator+(const WallFraction& a, const WallFraction& b) {
    auto [sys, allowed] = join(a, b);
    std::map<int, int> den;
    for (const auto& [w, m] : a.den_) den[w] = m;
    for (const auto& [w, m] : b.den_) den[w] = std::max(den[w], m);
    LaurentPoly<K> na = a.num_, nb = b.num_;
    for (const auto& [w, m] : den) {
      auto wp = wall_poly<K>(*sys, w);
      int ma = m - lookup(a.den_, w);
      int mb = m - lookup(b.den_, w);
      for (int i = 0; i < ma; ++i) na *= wp;
      for (int i = 0; i < mb; ++i) nb *= wp;
    }
    return WallFraction(sys, allowed, na + nb, std::move(den));
  }
  friend WallFraction operator-(const WallFraction& a, const WallFraction& b) { return a + (-b); }
  WallFraction operator-() const {
    WallFraction out = *this;
    out.num_ = -out.num_;
    return out;
  }

  friend WallFraction operator*(const WallFraction& a, const WallFraction& b) {
    auto [sys, allowed] = join(a, b);
    std::map<int, int> den = a.den_;
    for (const auto& [w, m] : b.den_) den[w] += m;
    return WallFraction(sys, allowed, a.num_ * b.num_, std::move(den));
  }
  WallFraction& operator+=(const WallFraction& o) { return *this = *this + o; }
  WallFraction& operator-=(const WallFraction& o) { return *this = *this - o; }
  WallFraction& operator*=(const WallFraction& o) { return *this = *this * o; }

  friend bool operator==(const WallFraction& a, const WallFraction& b) {
    if (!a.sys_ && !b.sys_) return a.num_ == b.num_;
    auto [sys, allowed] = join(a, b);
    LaurentPoly<K> lhs = a.num_, rhs = b.num_;
    for (const auto& [w, m] : b.den_) {
      auto wp = wall_poly<K>(*sys, w);
      for (int i = 0; i < m; ++i) lhs *= wp;
    }
    for (const auto& [w, m] : a.den_) {
      auto wp = wall_poly<K>(*sys, w);
      for (int i = 0; i < m; ++i) rhs *= wp;
    }
    return lhs == rhs;
  }
  friend bool operator!=(const WallFraction& a, const WallFraction& b) { return !(a == b); }

  std::optional<std::pair<Exps, K>> unit_monomial() const {
    return num_.unit_monomial();  // wall factors in the denominator are units already
  }

 private:
  static int lookup(const std::map<int, int>& m, int k) {
    auto it = m.find(k);
    return it == m.end() ? 0 : it->second;
  }

  static std::pair<SystemPtr, std::optional<int>> join(const WallFraction& a, const WallFraction& b) {
    SystemPtr sys = a.sys_ ? a.sys_ : b.sys_;
    if (a.sys_ && b.sys_ && a.sys_ != b.sys_) throw std::invalid_argument("mixed root systems");
    std::optional<int> allowed = a.allowed_ ? a.allowed_ : b.allowed_;
    if (a.allowed_ && b.allowed_ && *a.allowed_ != *b.allowed_) throw std::invalid_argument("mixed allowed walls");
    return {sys, allowed};
  }

  // Cancel wall factors that divide the numerator exactly.
  void normalize() {
    if (!sys_) return;
    if (num_.zero()) {
      den_.clear();
      return;
    }
    for (auto it = den_.begin(); it != den_.end();) {
      auto wp = wall_poly<K>(*sys_, it->first);
      while (it->second > 0) {
        auto q = exact_divide(num_, wp);
        if (!q) break;
        num_ = *q;
        --it->second;
      }
      it = (it->second == 0) ? den_.erase(it) : std::next(it);
    }
  }

  SystemPtr sys_;
  std::optional<int> allowed_;
  LaurentPoly<K> num_;
  std::map<int, int> den_;
};

template <class K>
K evaluate(const WallFraction<K>& f, const std::vector<K>& chi) {
  K out = evaluate(f.numerator(), chi);
  if (!f.system()) return out;
  for (const auto& [w, m] : f.denominator_walls()) {
    K d = evaluate(wall_poly<K>(*f.system(), w), chi);
    if (is_zero(d)) throw std::domain_error("wall denominator vanishes at the evaluation point");
    out *= pow_int(field_inv(d), m);
  }
  return out;
}

template <class K>
std::string display(const WallFraction<K>& f) {
  std::string out = "(" + display(f.numerator()) + ")";
  for (const auto& [w, m] : f.denominator_walls())
    out += " / wall" + std::to_string(w) + "^" + std::to_string(m);
  return out;
}

template <class K>
std::ostream& operator<<(std::ostream& os, const WallFraction<K>& f) {
  return os << display(f);
}

}  // namespace sbim

namespace Eigen {
template <class K>
struct NumTraits<sbim::WallFraction<K>> : GenericNumTraits<sbim::WallFraction<K>> {
  typedef sbim::WallFraction<K> Real;
  typedef sbim::WallFraction<K> NonInteger;
  typedef sbim::WallFraction<K> Nested;
  typedef sbim::WallFraction<K> Literal;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 10,
    AddCost = 400,
    MulCost = 800
  };
  static inline Real epsilon() { return Real(); }
  static inline Real dummy_precision() { return Real(); }
  static inline int digits10() { return 0; }
};
}  // namespace Eigen
