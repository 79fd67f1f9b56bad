#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "sbim/hecke.hpp"
#include "sbim/linalg.hpp"
#include "sbim/wall_fraction.hpp"

namespace sbim {

template <class R>
struct RingTraits;
template <class K>
struct RingTraits<LaurentPoly<K>> {
  using Field = K;
  static constexpr bool is_localized = false;
};
template <class K>
struct RingTraits<WallFraction<K>> {
  using Field = K;
  static constexpr bool is_localized = true;
};

/// An R-bimodule presented as a free right R-module: a rank together with
/// commuting invertible matrices giving the left action of the lattice
/// basis characters (and their inverses).
template <class R>
struct MatrixBimodule {
  using Field = typename RingTraits<R>::Field;

  SystemPtr sys;
  FieldSpec field;
  std::optional<int> allowed_wall;  // set for localized instances
  int rank = 0;
  std::vector<DenseMat<R>> left;      // action of e^{basis i}
  std::vector<DenseMat<R>> left_inv;  // action of e^{-basis i}
  std::vector<R> gen_det;             // determinant of left[i], a unit monomial
  std::string recipe;

  int lattice_rank() const { return sys->datum.lattice_rank; }

  R embed(const LaurentPoly<Field>& f) const {
    if constexpr (RingTraits<R>::is_localized)
      return R(sys, allowed_wall, f);
    else
      return f;
  }
};

template <class K>
using PlainBimodule = MatrixBimodule<LaurentPoly<K>>;
template <class K>
using LocalBimodule = MatrixBimodule<WallFraction<K>>;

template <class R>
struct BimoduleMap {
  DenseMat<R> matrix;  // target.rank x source.rank
};

/// Power of a unit monomial, negative exponents included.
template <class K>
LaurentPoly<K> unit_pow(const LaurentPoly<K>& u, std::int64_t k) {
  auto mono = u.unit_monomial();
  if (!mono) throw std::logic_error("unit_pow: not a unit monomial");
  Exps e = mono->first;
  for (auto& x : e) x = static_cast<std::int32_t>(x * k);
  return LaurentPoly<K>::monomial(e, pow_int(mono->second, k));
}

template <class K>
WallFraction<K> unit_pow(const WallFraction<K>& u, std::int64_t k) {
  if (k >= 0) {
    WallFraction<K> acc(1), b = u;
    for (std::int64_t i = 0; i < k; ++i) acc *= b;
    return acc;
  }
  auto mono = u.unit_monomial();
  if (!mono || !u.denominator_walls().empty())
    throw std::logic_error("unit_pow: cannot invert this localized element");
  Exps e = mono->first;
  for (auto& x : e) x = static_cast<std::int32_t>(x * k);
  return WallFraction<K>(u.system(), u.allowed_wall(),
                         LaurentPoly<K>::monomial(e, pow_int(mono->second, k)));
}

/// L(f) = sum_c f_mu prod L_i^{mu_i}: the ring homomorphism R -> Mat_n(R).
template <class R>
DenseMat<R> extend_left_action(const MatrixBimodule<R>& m, const LaurentPoly<typename RingTraits<R>::Field>& f) {
  DenseMat<R> out(m.rank, m.rank);
  for (Eigen::Index i = 0; i < out.rows(); ++i)
    for (Eigen::Index j = 0; j < out.cols(); ++j) out(i, j) = R(0);
  const int n = m.lattice_rank();
  for (const auto& [e, c] : f.terms()) {
    DenseMat<R> term = ring_identity<R>(m.rank);
    for (int i = 0; i < n; ++i) {
      std::int64_t k = i < static_cast<int>(e.size()) ? e[i] : 0;
      const DenseMat<R>& gen = k >= 0 ? m.left[i] : m.left_inv[i];
      for (std::int64_t rep = 0; rep < std::llabs(k); ++rep) term = mat_mul(term, gen);
    }
    R coeff = m.embed(LaurentPoly<typename RingTraits<R>::Field>(c));
    for (Eigen::Index a = 0; a < term.rows(); ++a)
      for (Eigen::Index b = 0; b < term.cols(); ++b) out(a, b) += term(a, b) * coeff;
  }
  return out;
}

/// Determinant of extend_left_action(m, f) for a unit monomial f, from the
/// cached generator determinants.
template <class R>
R extend_det(const MatrixBimodule<R>& m, const LaurentPoly<typename RingTraits<R>::Field>& f) {
  auto mono = f.unit_monomial();
  if (!mono) throw std::logic_error("extend_det: not a unit monomial");
  R out = m.embed(LaurentPoly<typename RingTraits<R>::Field>(pow_int(mono->second, m.rank)));
  for (std::size_t i = 0; i < mono->first.size(); ++i)
    if (mono->first[i] != 0) out = out * unit_pow(m.gen_det[i], mono->first[i]);
  return out;
}

/// Construction-time invariants: generators commute, inverses match, and the
/// generator determinants are unit monomials. Direct fraction-free
/// determinants cross-check the cached ones at small rank.
template <class R>
void verify_bimodule(const MatrixBimodule<R>& m) {
  const int n = m.lattice_rank();
  for (int i = 0; i < n; ++i) {
    if (!(mat_mul(m.left[i], m.left_inv[i]) == ring_identity<R>(m.rank)))
      throw std::logic_error("bimodule invariant: generator inverse mismatch");
    for (int j = i + 1; j < n; ++j)
      if (!(mat_mul(m.left[i], m.left[j]) == mat_mul(m.left[j], m.left[i])))
        throw std::logic_error("bimodule invariant: left actions do not commute");
    if (!m.gen_det[i].unit_monomial()) throw std::logic_error("bimodule invariant: determinant is not a unit");
  }
  if constexpr (!RingTraits<R>::is_localized) {
    if (m.rank <= 6)
      for (int i = 0; i < n; ++i)
        if (!(bareiss_det(m.left[i]) == m.gen_det[i]))
          throw std::logic_error("bimodule invariant: cached determinant mismatch");
  }
}

/// R_w: rank one, left action of e^lambda is right multiplication by
/// e^(w lambda).
template <class K>
PlainBimodule<K> graph_bimodule(SystemPtr sys, FieldSpec field, int w) {
  PlainBimodule<K> m;
  m.sys = std::move(sys);
  m.field = field;
  m.rank = 1;
  const auto& elt = m.sys->weyl.at(w);
  const int n = m.sys->datum.lattice_rank;
  for (int i = 0; i < n; ++i) {
    IntVec ei = IntVec::Zero(n);
    ei(i) = 1;
    DenseMat<LaurentPoly<K>> l(1, 1), linv(1, 1);
    l(0, 0) = LaurentPoly<K>::basis_char(elt.matrix * ei);
    linv(0, 0) = LaurentPoly<K>::basis_char(-(elt.matrix * ei));
    m.left.push_back(l);
    m.left_inv.push_back(linv);
    m.gen_det.push_back(l(0, 0));
  }
  m.recipe = "graph:" + std::to_string(w);
  verify_bimodule(m);
  return m;
}

/// One induction step R tensor_{R^s} M. Basis {1 (x) b_k, e^w (x) b_k}; the
/// left action of e^lambda routes through the decomposition
/// e^(lambda + eps*w) = a + e^w b with a, b s-invariant.
template <class K>
PlainBimodule<K> induct(int s, const PlainBimodule<K>& inner) {
  const RootDatum& datum = inner.sys->datum;
  if (!datum.adjoint) throw DatumError("induct requires adjoint data");
  if (inner.allowed_wall) throw std::invalid_argument("induct requires the plain ring");
  const IntVec& omega = datum.fundamental_coweights.at(s);
  const int n = datum.lattice_rank;

  PlainBimodule<K> m;
  m.sys = inner.sys;
  m.field = inner.field;
  m.rank = 2 * inner.rank;

  auto poly = [&](const IntVec& v) { return LaurentPoly<K>::basis_char(v); };
  auto build = [&](const IntVec& lambda) {
    auto [a0, b0] = rs_decompose(datum, s, poly(lambda));
    auto [a1, b1] = rs_decompose(datum, s, poly(lambda + omega));
    DenseMat<LaurentPoly<K>> out(m.rank, m.rank);
    auto put = [&](int br, int bc, const DenseMat<LaurentPoly<K>>& block) {
      for (Eigen::Index i = 0; i < block.rows(); ++i)
        for (Eigen::Index j = 0; j < block.cols(); ++j) out(br * inner.rank + i, bc * inner.rank + j) = block(i, j);
    };
    put(0, 0, extend_left_action(inner, a0));
    put(0, 1, extend_left_action(inner, a1));
    put(1, 0, extend_left_action(inner, b0));
    put(1, 1, extend_left_action(inner, b1));
    return out;
  };

  for (int i = 0; i < n; ++i) {
    IntVec ei = IntVec::Zero(n);
    ei(i) = 1;
    m.left.push_back(build(ei));
    m.left_inv.push_back(build(-ei));
    // det L'(lambda) = det L_inner(e^(lambda + s lambda)) by the commuting
    // block determinant identity; the norm e^(lambda + s lambda) is a unit.
    IntVec norm = ei + datum.reflection[s] * ei;
    m.gen_det.push_back(extend_det(inner, poly(norm)));
  }
  m.recipe = "induct:" + std::to_string(s) + "(" + inner.recipe + ")";
  verify_bimodule(m);
  return m;
}

/// Bott-Samelson bimodule of a word of simple indices.
template <class K>
PlainBimodule<K> bott_samelson(SystemPtr sys, FieldSpec field, const std::vector<int>& word) {
  PlainBimodule<K> m = graph_bimodule<K>(std::move(sys), field, 0);
  for (auto it = word.rbegin(); it != word.rend(); ++it) m = induct(*it, m);
  std::string w;
  for (std::size_t k = 0; k < word.size(); ++k) w += (k ? "," : "") + std::to_string(word[k]);
  m.recipe = "bs:[" + w + "]";
  return m;
}

/// Bimodule tensor product, normalized so that
/// tensor(graph(v), graph(w)) = graph(vw).
template <class K>
PlainBimodule<K> tensor(const PlainBimodule<K>& a, const PlainBimodule<K>& b) {
  if (a.sys != b.sys || !(a.field == b.field) || a.allowed_wall != b.allowed_wall)
    throw std::invalid_argument("tensor: mismatched contexts");
  PlainBimodule<K> m;
  m.sys = a.sys;
  m.field = a.field;
  m.rank = a.rank * b.rank;
  const int n = a.lattice_rank();

  auto assemble = [&](const DenseMat<LaurentPoly<K>>& amat) {
    DenseMat<LaurentPoly<K>> out(m.rank, m.rank);
    for (Eigen::Index i = 0; i < amat.rows(); ++i)
      for (Eigen::Index j = 0; j < amat.cols(); ++j) {
        DenseMat<LaurentPoly<K>> block = extend_left_action(b, amat(i, j));
        for (Eigen::Index k = 0; k < block.rows(); ++k)
          for (Eigen::Index l = 0; l < block.cols(); ++l) out(i * b.rank + k, j * b.rank + l) = block(k, l);
      }
    return out;
  };
  for (int i = 0; i < n; ++i) {
    m.left.push_back(assemble(a.left[i]));
    m.left_inv.push_back(assemble(a.left_inv[i]));
    m.gen_det.push_back(extend_det(b, a.gen_det[i]));
  }
  m.recipe = "tensor(" + a.recipe + "," + b.recipe + ")";
  verify_bimodule(m);
  return m;
}

/// Right localization away from all walls except the allowed one.
template <class K>
LocalBimodule<K> localize(const PlainBimodule<K>& a, int wall) {
  LocalBimodule<K> m;
  m.sys = a.sys;
  m.field = a.field;
  m.allowed_wall = wall;
  m.rank = a.rank;
  auto lift = [&](const DenseMat<LaurentPoly<K>>& src) {
    DenseMat<WallFraction<K>> out(src.rows(), src.cols());
    for (Eigen::Index i = 0; i < src.rows(); ++i)
      for (Eigen::Index j = 0; j < src.cols(); ++j) out(i, j) = WallFraction<K>(a.sys, wall, src(i, j));
    return out;
  };
  for (std::size_t i = 0; i < a.left.size(); ++i) {
    m.left.push_back(lift(a.left[i]));
    m.left_inv.push_back(lift(a.left_inv[i]));
    m.gen_det.push_back(WallFraction<K>(a.sys, wall, a.gen_det[i]));
  }
  m.recipe = "loc:" + std::to_string(wall) + "(" + a.recipe + ")";
  if (m.rank <= 4) verify_bimodule(m);
  return m;
}

/// A rational point of the dual torus with pairwise distinct prime
/// coordinates: evaluation is injective on every finite set of lattice
/// vectors, and off every wall.
template <class K>
struct SeparatingPoint {
  std::vector<K> chi;
};

inline const std::vector<std::int64_t>& small_primes() {
  static const std::vector<std::int64_t> p{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  return p;
}

template <class K>
std::vector<K> weyl_value_tuple(const RootSystem& rs, const std::vector<K>& chi, int w) {
  const int n = rs.datum.lattice_rank;
  std::vector<K> tuple;
  for (int i = 0; i < n; ++i) {
    IntVec ei = IntVec::Zero(n);
    ei(i) = 1;
    tuple.push_back(evaluate(LaurentPoly<K>::basis_char(rs.weyl.at(w).matrix * ei), chi));
  }
  return tuple;
}

template <class K>
bool separates_weyl_tuples(const RootSystem& rs, const std::vector<K>& chi) {
  std::vector<std::vector<K>> tuples;
  for (int w = 0; w < rs.weyl.size(); ++w) tuples.push_back(weyl_value_tuple(rs, chi, w));
  for (std::size_t a = 0; a < tuples.size(); ++a)
    for (std::size_t b = a + 1; b < tuples.size(); ++b)
      if (tuples[a] == tuples[b]) return false;
  return true;
}

inline SeparatingPoint<Rational> separating_point(const RootSystem& rs) {
  SeparatingPoint<Rational> pt;
  const int n = rs.datum.lattice_rank;
  if (n > static_cast<int>(small_primes().size())) throw std::runtime_error("separating point: rank too large");
  for (int i = 0; i < n; ++i) pt.chi.emplace_back(static_cast<long>(small_primes()[i]));
  // Unique factorization makes lambda -> chi(lambda) injective; assert it on
  // the orbit set anyway.
  std::vector<std::pair<IntVec, Rational>> values;
  for (const auto& w : rs.weyl.elements())
    for (int i = 0; i < n; ++i) {
      IntVec ei = IntVec::Zero(n);
      ei(i) = 1;
      IntVec lam = w.matrix * ei;
      Rational val = evaluate(LaurentPoly<Rational>::basis_char(lam), pt.chi);
      for (const auto& [mu, known] : values)
        if (val == known && mu != lam) throw std::logic_error("separating point failed injectivity");
      values.emplace_back(lam, val);
    }
  return pt;
}

/// Admissible evaluation point over F_p: off every wall and separating the
/// Weyl value tuples. Found by enumeration of (F_p^x)^n.
inline std::optional<std::vector<Fp>> admissible_point_fp(const RootSystem& rs, std::uint32_t p) {
  const int n = rs.datum.lattice_rank;
  const std::int64_t m = p - 1;
  std::int64_t total = 1;
  for (int i = 0; i < n; ++i) total *= m;
  // Powers of a primitive root enumerate the unit group deterministically.
  std::int64_t g = 0;
  for (std::int64_t c = 2; c < p; ++c) {
    std::int64_t x = 1;
    int order = 0;
    do {
      x = x * c % p;
      ++order;
    } while (x != 1);
    if (order == m) {
      g = c;
      break;
    }
  }
  if (g == 0 && p == 2) g = 1;
  for (std::int64_t it = 0; it < total; ++it) {
    std::int64_t x = it;
    std::vector<Fp> chi;
    for (int i = 0; i < n; ++i) {
      chi.push_back(pow_int(Fp(g, p), x % m + 1));
      x /= m;
    }
    bool off_walls = true;
    for (const auto& cr : rs.positives)
      if (evaluate(LaurentPoly<Fp>::basis_char(cr.coroot), chi) == Fp(1, p)) {
        off_walls = false;
        break;
      }
    if (off_walls && separates_weyl_tuples(rs, chi)) return chi;
  }
  return std::nullopt;
}

template <class R>
std::vector<DenseMat<typename RingTraits<R>::Field>> fiber(const MatrixBimodule<R>& m,
                                                           const std::vector<typename RingTraits<R>::Field>& chi) {
  using K = typename RingTraits<R>::Field;
  std::vector<DenseMat<K>> out;
  for (const auto& l : m.left) {
    DenseMat<K> f(l.rows(), l.cols());
    for (Eigen::Index i = 0; i < l.rows(); ++i)
      for (Eigen::Index j = 0; j < l.cols(); ++j) f(i, j) = evaluate(l(i, j), chi);
    out.push_back(std::move(f));
  }
  return out;
}

enum class FiberStatus { Clean, Defective, NotGraphFiltered };

struct Decomposition {
  DeltaCharacter character;
  FiberStatus status = FiberStatus::Clean;
};

template <class K>
DenseMat<K> stack_shifted(const std::vector<DenseMat<K>>& mats, const std::vector<K>& tuple, int power) {
  const Eigen::Index r = mats.at(0).rows();
  DenseMat<K> stacked(static_cast<Eigen::Index>(mats.size()) * r, r);
  for (std::size_t i = 0; i < mats.size(); ++i) {
    DenseMat<K> shifted = mats[i];
    for (Eigen::Index d = 0; d < r; ++d) shifted(d, d) -= tuple[i];
    DenseMat<K> p = ring_identity<K>(r);
    for (int k = 0; k < power; ++k) p = mat_mul(p, shifted);
    for (Eigen::Index a = 0; a < r; ++a)
      for (Eigen::Index b = 0; b < r; ++b) stacked(static_cast<Eigen::Index>(i) * r + a, b) = p(a, b);
  }
  return stacked;
}

/// Joint eigenspace decomposition of the fiber at a separating point,
/// matched against the Weyl value tuples.
template <class R>
Decomposition generic_decompose(const MatrixBimodule<R>& m) {
  using K = typename RingTraits<R>::Field;
  std::vector<K> chi;
  if constexpr (std::is_same_v<K, Rational>) {
    chi = separating_point(*m.sys).chi;
  } else {
    auto found = admissible_point_fp(*m.sys, m.field.p);
    if (!found) throw std::runtime_error("generic_decompose: no admissible point over " + m.field.str());
    chi = *found;
  }
  auto mats = fiber(m, chi);

  Decomposition out;
  int total = 0;
  for (int w = 0; w < m.sys->weyl.size(); ++w) {
    auto tuple = weyl_value_tuple(*m.sys, chi, w);
    int dim = m.rank - rank(stack_shifted(mats, tuple, 1));
    if (dim > 0) out.character.mult[w] = static_cast<std::uint64_t>(dim);
    total += dim;
  }
  if (total == m.rank) {
    out.status = FiberStatus::Clean;
    return out;
  }
  int gen_total = 0;
  for (int w = 0; w < m.sys->weyl.size(); ++w) {
    auto tuple = weyl_value_tuple(*m.sys, chi, w);
    gen_total += m.rank - rank(stack_shifted(mats, tuple, m.rank));
  }
  out.status = (gen_total == m.rank) ? FiberStatus::Defective : FiberStatus::NotGraphFiltered;
  return out;
}

/// All intertwiners M -> N whose entries have support radius at most
/// box_radius: a basis over the scalar field, each map re-verified exactly.
template <class K>
std::vector<BimoduleMap<LaurentPoly<K>>> hom_bounded(const PlainBimodule<K>& src, const PlainBimodule<K>& tgt,
                                                     int box_radius) {
  if (src.sys != tgt.sys || !(src.field == tgt.field)) throw std::invalid_argument("hom_bounded: mixed contexts");
  const int n = src.lattice_rank();

  // Box exponents in deterministic lex order.
  std::vector<Exps> box;
  {
    std::vector<std::int32_t> e(n, -box_radius);
    while (true) {
      Exps key(e.begin(), e.end());
      box.push_back(strip(std::move(key)));
      int i = 0;
      while (i < n && e[i] == box_radius) {
        e[i] = -box_radius;
        ++i;
      }
      if (i == n) break;
      ++e[i];
    }
  }
  std::map<Exps, int, ExpLess> box_index;
  for (std::size_t k = 0; k < box.size(); ++k) box_index[box[k]] = static_cast<int>(k);
  const int bc = static_cast<int>(box.size());
  auto col_of = [&](int a, int b, int e) { return (a * src.rank + b) * bc + e; };

  SparseEliminator<K> elim(tgt.rank * src.rank * bc);
  for (int i = 0; i < n; ++i) {
    for (int a = 0; a < tgt.rank; ++a)
      for (int b = 0; b < src.rank; ++b) {
        std::map<Exps, std::map<int, K>, ExpLess> rows;
        for (int c = 0; c < src.rank; ++c) {
          for (const auto& [el, cl] : src.left[i](c, b).terms())
            for (int e = 0; e < bc; ++e) rows[exps_add(box[e], el)][col_of(a, c, e)] += cl;
          for (const auto& [el, cl] : tgt.left[i](a, c).terms())
            for (int e = 0; e < bc; ++e) rows[exps_add(box[e], el)][col_of(c, b, e)] += -cl;
        }
        for (auto& [mu, row] : rows) {
          typename SparseEliminator<K>::Row r(row.begin(), row.end());
          elim.add_row(std::move(r));
        }
      }
  }

  std::vector<BimoduleMap<LaurentPoly<K>>> out;
  for (const auto& vec : elim.nullspace()) {
    DenseMat<LaurentPoly<K>> x(tgt.rank, src.rank);
    for (int a = 0; a < tgt.rank; ++a)
      for (int b = 0; b < src.rank; ++b) {
        LaurentPoly<K> entry;
        for (int e = 0; e < bc; ++e) entry.add_term(box[e], vec(col_of(a, b, e)));
        x(a, b) = std::move(entry);
      }
    BimoduleMap<LaurentPoly<K>> map{std::move(x)};
    for (int i = 0; i < n; ++i)
      if (!(mat_mul(map.matrix, src.left[i]) == mat_mul(tgt.left[i], map.matrix)))
        throw std::logic_error("hom_bounded: solver output fails exact verification");
    out.push_back(std::move(map));
  }
  return out;
}

template <class K>
bool is_intertwiner(const PlainBimodule<K>& src, const PlainBimodule<K>& tgt,
                    const DenseMat<LaurentPoly<K>>& x) {
  for (int i = 0; i < src.lattice_rank(); ++i)
    if (!(mat_mul(x, src.left[i]) == mat_mul(tgt.left[i], x))) return false;
  return true;
}

struct NotInSpan {
  std::string offending_numerator;
  std::string offending_denominator;
};

/// Express a map over candidate maps with right-multiplication coefficients
/// in R, by Cramer solves over the fraction field plus exact verification.
template <class K>
std::variant<std::vector<LaurentPoly<K>>, NotInSpan> span_membership(
    const PlainBimodule<K>& src, const PlainBimodule<K>& tgt, const DenseMat<LaurentPoly<K>>& map,
    const std::vector<DenseMat<LaurentPoly<K>>>& candidates) {
  const int m = static_cast<int>(candidates.size());
  const int positions = tgt.rank * src.rank;
  if (m == 0) return NotInSpan{"1", "0 candidates"};

  // Independence at a separating point, and pivot-position selection.
  std::vector<K> chi;
  if constexpr (std::is_same_v<K, Rational>)
    chi = separating_point(*src.sys).chi;
  else {
    auto found = admissible_point_fp(*src.sys, src.field.p);
    if (!found) throw std::runtime_error("span_membership: no admissible point");
    chi = *found;
  }
  DenseMat<K> a0(positions, m);
  for (int j = 0; j < m; ++j)
    for (int pos = 0; pos < positions; ++pos)
      a0(pos, j) = evaluate(candidates[j](pos / src.rank, pos % src.rank), chi);
  DenseMat<K> a0t = a0.transpose();
  Rref<K> rt = rref(a0t);
  if (rt.rank < m) throw std::invalid_argument("span_membership: candidates are dependent");
  std::vector<int> pivot_rows = rt.pivot_cols;  // rows of a0 forming an invertible m x m block

  DenseMat<LaurentPoly<K>> s(m, m);
  DenseVec<LaurentPoly<K>> t(m);
  for (int r = 0; r < m; ++r) {
    for (int j = 0; j < m; ++j) s(r, j) = candidates[j](pivot_rows[r] / src.rank, pivot_rows[r] % src.rank);
    t(r) = map(pivot_rows[r] / src.rank, pivot_rows[r] % src.rank);
  }
  LaurentPoly<K> det = bareiss_det(s);
  if (det.zero()) throw std::invalid_argument("span_membership: candidates are dependent");

  std::vector<LaurentPoly<K>> coeffs;
  for (int j = 0; j < m; ++j) {
    DenseMat<LaurentPoly<K>> sj = s;
    for (int r = 0; r < m; ++r) sj(r, j) = t(r);
    LaurentPoly<K> detj = bareiss_det(sj);
    auto q = exact_divide(detj, det);
    if (!q) return NotInSpan{display(detj), display(det)};
    coeffs.push_back(*q);
  }
  // Exact verification over every position.
  for (int pos = 0; pos < positions; ++pos) {
    LaurentPoly<K> acc;
    for (int j = 0; j < m; ++j) acc += candidates[j](pos / src.rank, pos % src.rank) * coeffs[j];
    if (!(acc == map(pos / src.rank, pos % src.rank)))
      return NotInSpan{display(acc - map(pos / src.rank, pos % src.rank)), "inconsistent-outside-pivots"};
  }
  return coeffs;
}

}  // namespace sbim
