#pragma once

#include <string>
#include <variant>
#include <vector>

#include "sbim/bimodule.hpp"
#include "sbim/fixed_locus.hpp"
#include "sbim/smith.hpp"

namespace sbim {

struct SteinbergBasis {
  std::vector<IntVec> exps;  // one monomial exponent per Weyl element, canonical order
  bool verified = false;
  bool from_search = false;  // greedy fallback was used
};

/// Candidate exponents lambda_w = w^{-1}(sum of omega_j over the simple
/// roots sent negative by w^{-1}). Only a candidate: basis_check decides.
std::vector<IntVec> steinberg_candidate(const RootSystem& rs);

struct BasisCertificate {
  bool ok = false;
  bool independent = false;
  std::string failing_target;
  std::string witness_numerator;
  std::string witness_denominator;
};

/// Certify that {e^(lambda_j) (x) 1} is a right-R basis of R (x)_{R^W} R:
/// independence at a separating point plus exact fraction-clearing expansions
/// of 1 (x) 1 and of all e^(+-e_i) . (e^(lambda_j) (x) 1).
template <class K>
BasisCertificate basis_check(const RootSystem& rs, const FieldSpec& field, const std::vector<IntVec>& exps);

template <class K>
SteinbergBasis steinberg_basis(SystemPtr sys, const FieldSpec& field);

template <class K>
struct BigBimodule {
  PlainBimodule<K> inner;
  SteinbergBasis basis;
  DenseMat<LaurentPoly<K>> embedding;  // row w, column j: e^(w lambda_j)
};

template <class K>
BigBimodule<K> build_big_bimodule(SystemPtr sys, const FieldSpec& field, const SteinbergBasis& basis);

struct EndReport {
  int box_radius = 0;
  int candidate_count = 0;
  bool candidates_are_endomorphisms = false;
  bool candidates_independent = false;
  int bounded_dim = 0;
  int not_in_span = 0;
  bool containment = false;
  std::vector<std::pair<int, bool>> separation_per_wall;
  bool pass = false;
};

/// Finite-box endomorphism check of the big bimodule: the left
/// multiplications by the Steinberg basis are independent endomorphisms and
/// every bounded intertwiner lies in their right-R span; localized
/// cross-checks run the wall separation for every positive coroot.
template <class K>
EndReport end_check(SystemPtr sys, const FieldSpec& field, int box_radius);

template <class K>
struct SesReport {
  int s = 0;
  BimoduleMap<LaurentPoly<K>> inclusion;   // R_1 -> B_s
  BimoduleMap<LaurentPoly<K>> projection;  // B_s -> R_s
  bool intertwiners_ok = false;
  bool composite_zero = false;
  bool generic_ranks_ok = false;  // ranks (1, 2, 1), exact at the generic fiber

  bool pass() const { return intertwiners_ok && composite_zero && generic_ranks_ok; }
};

template <class K>
SesReport<K> ses_rank1(SystemPtr sys, const FieldSpec& field, int s);

struct SplitBlock {
  std::vector<int> members;  // {w} or {w, wt}, by multiplicity support
  int expected_dim = 0;
  int eigen_dim = 0;
  int generalized_dim = 0;
  bool clean = false;  // single-member block: must be semisimple
  bool ok = false;
};

struct SplitReport {
  std::vector<int> word;
  int wall = 0;
  bool found_point = false;
  std::vector<Rational> chi;
  std::vector<SplitBlock> blocks;
  bool partition_matches = false;
  bool pass = false;
  std::string note;
};

/// Fiber of the Bott-Samelson bimodule at a point on exactly the chosen
/// wall: generalized joint eigenblocks must realize the {w, wt} pairing.
SplitReport localized_split_check(SystemPtr sys, const std::vector<int>& word, int wall);

/// Deterministic wall-point search used by localized_split_check; exposed
/// for reporting. Coordinates are signs times powers of 3.
std::optional<std::vector<Rational>> find_wall_point(const RootSystem& rs, int wall);

struct Pi1Pair {
  int w = 0, v = 0;
  int free_rank = 0;
  std::vector<std::int64_t> invariant_factors;
};

/// Graph-intersection character lattices for the bimonodromy lattice
/// {(lambda, mu) : lambda - mu in sub}: Q = Lambda_bi / (ker phi_w + ker
/// phi_v) with phi_w(lambda, mu) = w^-1 lambda + mu.
std::vector<Pi1Pair> pi1_report(const RootSystem& rs, const IntMat& sublattice);

// ---------------------------------------------------------------------------
// implementation

inline std::vector<IntVec> steinberg_candidate(const RootSystem& rs) {
  const RootDatum& d = rs.datum;
  if (!d.adjoint) throw DatumError("steinberg_candidate requires adjoint data");
  std::vector<IntVec> out;
  for (int w = 0; w < rs.weyl.size(); ++w) {
    IntMat winv = rs.weyl.at(rs.weyl.inverse(w)).matrix;
    IntVec sum = IntVec::Zero(d.lattice_rank);
    for (int j = 0; j < d.rank; ++j)
      if (d.is_negative_coroot_combination(winv * d.simple_coroots[j])) sum += d.fundamental_coweights[j];
    out.push_back(winv * sum);
  }
  return out;
}

namespace detail {

template <class K>
std::vector<K> decomposition_point(const RootSystem& rs, const FieldSpec& field) {
  if constexpr (std::is_same_v<K, Rational>) {
    (void)field;
    return separating_point(rs).chi;
  } else {
    auto found = admissible_point_fp(rs, field.p);
    if (!found) throw std::runtime_error("no admissible evaluation point over " + field.str());
    return *found;
  }
}

/// Column vector (e^(w(lambda)))_w over the Laurent ring.
template <class K>
DenseVec<LaurentPoly<K>> orbit_column(const RootSystem& rs, const IntVec& lambda) {
  DenseVec<LaurentPoly<K>> col(rs.weyl.size());
  for (int w = 0; w < rs.weyl.size(); ++w)
    col(w) = LaurentPoly<K>::basis_char(rs.weyl.at(w).matrix * lambda);
  return col;
}

template <class K>
struct SteinbergSolver {
  const RootSystem& rs;
  DenseMat<LaurentPoly<K>> s;  // |W| x |W| embedding matrix
  LaurentPoly<K> det;

  SteinbergSolver(const RootSystem& rs_, const std::vector<IntVec>& exps) : rs(rs_) {
    const int W = rs.weyl.size();
    s = DenseMat<LaurentPoly<K>>(W, W);
    for (int j = 0; j < W; ++j) {
      auto col = orbit_column<K>(rs, exps[j]);
      for (int w = 0; w < W; ++w) s(w, j) = col(w);
    }
    det = bareiss_det(s);
  }

  /// Cramer solve of S c = target; nullopt with witness when a coefficient
  /// falls outside the ring.
  std::variant<std::vector<LaurentPoly<K>>, NotInSpan> expand(const DenseVec<LaurentPoly<K>>& target) const {
    const int W = rs.weyl.size();
    std::vector<LaurentPoly<K>> coeffs;
    for (int j = 0; j < W; ++j) {
      DenseMat<LaurentPoly<K>> sj = s;
      for (int w = 0; w < W; ++w) sj(w, j) = target(w);
      LaurentPoly<K> detj = bareiss_det(sj);
      auto q = exact_divide(detj, det);
      if (!q) return NotInSpan{display(detj), display(det)};
      coeffs.push_back(*q);
    }
    return coeffs;
  }
};

}  // namespace detail

template <class K>
BasisCertificate basis_check(const RootSystem& rs, const FieldSpec& field, const std::vector<IntVec>& exps) {
  const int W = rs.weyl.size();
  if (static_cast<int>(exps.size()) != W) throw std::invalid_argument("basis_check: need |W| exponents");
  BasisCertificate cert;

  auto chi = detail::decomposition_point<K>(rs, field);
  DenseMat<K> at_point(W, W);
  for (int j = 0; j < W; ++j)
    for (int w = 0; w < W; ++w)
      at_point(w, j) = evaluate(LaurentPoly<K>::basis_char(rs.weyl.at(w).matrix * exps[j]), chi);
  cert.independent = (rank(at_point) == W);
  if (!cert.independent) {
    cert.failing_target = "independence at the separating point";
    return cert;
  }

  detail::SteinbergSolver<K> solver(rs, exps);
  const int n = rs.datum.lattice_rank;
  std::vector<std::pair<std::string, IntVec>> targets;
  targets.emplace_back("1(x)1", IntVec::Zero(n));
  for (int j = 0; j < W; ++j)
    for (int i = 0; i < n; ++i)
      for (int sign : {+1, -1}) {
        IntVec ei = IntVec::Zero(n);
        ei(i) = sign;
        targets.emplace_back("e^(" + std::to_string(sign * (i + 1)) + ") . b" + std::to_string(j), exps[j] + ei);
      }
  for (const auto& [label, lambda] : targets) {
    auto res = solver.expand(detail::orbit_column<K>(rs, lambda));
    if (std::holds_alternative<NotInSpan>(res)) {
      const auto& w = std::get<NotInSpan>(res);
      cert.failing_target = label;
      cert.witness_numerator = w.offending_numerator;
      cert.witness_denominator = w.offending_denominator;
      return cert;
    }
  }
  cert.ok = true;
  return cert;
}

template <class K>
SteinbergBasis steinberg_basis(SystemPtr sys, const FieldSpec& field) {
  const RootSystem& rs = *sys;
  SteinbergBasis basis;
  basis.exps = steinberg_candidate(rs);
  if (basis_check<K>(rs, field, basis.exps).ok) {
    basis.verified = true;
    return basis;
  }
  // Bounded greedy fallback over monomials in a small box.
  basis.from_search = true;
  const int W = rs.weyl.size();
  const int n = rs.datum.lattice_rank;
  auto chi = detail::decomposition_point<K>(rs, field);
  for (int radius = 1; radius <= 2; ++radius) {
    std::vector<IntVec> chosen;
    DenseMat<K> cols(W, 0);
    std::vector<std::int32_t> e(n, -radius);
    while (true) {
      IntVec lambda(n);
      for (int i = 0; i < n; ++i) lambda(i) = e[i];
      DenseMat<K> trial(W, cols.cols() + 1);
      for (Eigen::Index j = 0; j < cols.cols(); ++j) trial.col(j) = cols.col(j);
      for (int w = 0; w < W; ++w)
        trial(w, cols.cols()) = evaluate(LaurentPoly<K>::basis_char(rs.weyl.at(w).matrix * lambda), chi);
      if (rank(trial) == static_cast<int>(trial.cols())) {
        cols = trial;
        chosen.push_back(lambda);
        if (static_cast<int>(chosen.size()) == W) break;
      }
      int i = 0;
      while (i < n && e[i] == radius) {
        e[i] = -radius;
        ++i;
      }
      if (i == n) break;
      ++e[i];
    }
    if (static_cast<int>(chosen.size()) == W && basis_check<K>(rs, field, chosen).ok) {
      basis.exps = chosen;
      basis.verified = true;
      return basis;
    }
  }
  throw std::runtime_error("steinberg_basis: no verifiable candidate found within the search box");
}

template <class K>
BigBimodule<K> build_big_bimodule(SystemPtr sys, const FieldSpec& field, const SteinbergBasis& basis) {
  const RootSystem& rs = *sys;
  if (!basis.verified) throw std::invalid_argument("build_big_bimodule: basis is not verified");
  const int W = rs.weyl.size();
  const int n = rs.datum.lattice_rank;

  BigBimodule<K> big;
  big.basis = basis;
  big.inner.sys = sys;
  big.inner.field = field;
  big.inner.rank = W;
  big.embedding = DenseMat<LaurentPoly<K>>(W, W);
  for (int j = 0; j < W; ++j) {
    auto col = detail::orbit_column<K>(rs, basis.exps[j]);
    for (int w = 0; w < W; ++w) big.embedding(w, j) = col(w);
  }

  detail::SteinbergSolver<K> solver(rs, basis.exps);
  auto action_of = [&](const IntVec& shift) {
    DenseMat<LaurentPoly<K>> l(W, W);
    for (int j = 0; j < W; ++j) {
      auto res = solver.expand(detail::orbit_column<K>(rs, basis.exps[j] + shift));
      if (std::holds_alternative<NotInSpan>(res))
        throw std::logic_error("build_big_bimodule: expansion failed over a verified basis");
      const auto& coeffs = std::get<std::vector<LaurentPoly<K>>>(res);
      for (int i = 0; i < W; ++i) l(i, j) = coeffs[i];
    }
    return l;
  };
  for (int i = 0; i < n; ++i) {
    IntVec ei = IntVec::Zero(n);
    ei(i) = 1;
    big.inner.left.push_back(action_of(ei));
    big.inner.left_inv.push_back(action_of(-ei));
    big.inner.gen_det.push_back(bareiss_det(big.inner.left.back()));
  }
  big.inner.recipe = "big";
  verify_bimodule(big.inner);

  // The embedding must intertwine the action with the diagonal characters.
  for (int i = 0; i < n; ++i) {
    IntVec ei = IntVec::Zero(n);
    ei(i) = 1;
    DenseMat<LaurentPoly<K>> diag(W, W);
    for (int a = 0; a < W; ++a)
      for (int b = 0; b < W; ++b)
        diag(a, b) = (a == b) ? LaurentPoly<K>::basis_char(rs.weyl.at(a).matrix * ei) : LaurentPoly<K>();
    if (!(mat_mul(big.embedding, big.inner.left[i]) == mat_mul(diag, big.embedding)))
      throw std::logic_error("build_big_bimodule: embedding does not reproduce the left action");
  }

  auto dec = generic_decompose(big.inner);
  if (dec.status != FiberStatus::Clean) throw std::logic_error("build_big_bimodule: fiber is not semisimple");
  for (int w = 0; w < W; ++w)
    if (dec.character.of(w) != 1) throw std::logic_error("build_big_bimodule: multiplicities are not all one");
  return big;
}

template <class K>
EndReport end_check(SystemPtr sys, const FieldSpec& field, int box_radius) {
  const RootSystem& rs = *sys;
  EndReport report;
  report.box_radius = box_radius;

  SteinbergBasis basis = steinberg_basis<K>(sys, field);
  BigBimodule<K> big = build_big_bimodule<K>(sys, field, basis);
  const int W = rs.weyl.size();
  report.candidate_count = W;

  std::vector<DenseMat<LaurentPoly<K>>> candidates;
  for (int j = 0; j < W; ++j)
    candidates.push_back(extend_left_action(big.inner, LaurentPoly<K>::basis_char(basis.exps[j])));

  report.candidates_are_endomorphisms = true;
  for (const auto& c : candidates)
    if (!is_intertwiner(big.inner, big.inner, c)) report.candidates_are_endomorphisms = false;

  auto chi = detail::decomposition_point<K>(rs, field);
  DenseMat<K> flat(W * W, W);
  for (int j = 0; j < W; ++j)
    for (int pos = 0; pos < W * W; ++pos) flat(pos, j) = evaluate(candidates[j](pos / W, pos % W), chi);
  report.candidates_independent = (rank(flat) == W);

  auto maps = hom_bounded(big.inner, big.inner, box_radius);
  report.bounded_dim = static_cast<int>(maps.size());
  for (const auto& m : maps) {
    auto res = span_membership(big.inner, big.inner, m.matrix, candidates);
    if (std::holds_alternative<NotInSpan>(res)) ++report.not_in_span;
  }
  report.containment = (report.not_in_span == 0);

  for (int wall = 0; wall < rs.wall_count(); ++wall)
    report.separation_per_wall.emplace_back(wall, separation_check(rs, wall, field.p).pass);

  report.pass = report.candidates_are_endomorphisms && report.candidates_independent && report.containment;
  for (const auto& [wall, ok] : report.separation_per_wall) report.pass = report.pass && ok;
  return report;
}

template <class K>
SesReport<K> ses_rank1(SystemPtr sys, const FieldSpec& field, int s) {
  const RootSystem& rs = *sys;
  if (!rs.datum.adjoint) throw DatumError("ses_rank1 requires adjoint data");
  SesReport<K> rep;
  rep.s = s;
  const IntVec& omega = rs.datum.fundamental_coweights.at(s);
  IntVec somega = rs.datum.reflection[s] * omega;

  auto r1 = graph_bimodule<K>(sys, field, rs.weyl.identity());
  auto bs = bott_samelson<K>(sys, field, {s});
  auto rsec = graph_bimodule<K>(sys, field, rs.weyl.simple(s));

  rep.inclusion.matrix = DenseMat<LaurentPoly<K>>(2, 1);
  rep.inclusion.matrix(0, 0) = -LaurentPoly<K>::basis_char(somega);
  rep.inclusion.matrix(1, 0) = LaurentPoly<K>(1);
  rep.projection.matrix = DenseMat<LaurentPoly<K>>(1, 2);
  rep.projection.matrix(0, 0) = LaurentPoly<K>(1);
  rep.projection.matrix(0, 1) = LaurentPoly<K>::basis_char(somega);

  rep.intertwiners_ok = is_intertwiner(r1, bs, rep.inclusion.matrix) && is_intertwiner(bs, rsec, rep.projection.matrix);
  rep.composite_zero = is_zero_mat(mat_mul(rep.projection.matrix, rep.inclusion.matrix));

  auto chi = detail::decomposition_point<K>(rs, field);
  auto eval_mat = [&](const DenseMat<LaurentPoly<K>>& m) {
    DenseMat<K> out(m.rows(), m.cols());
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      for (Eigen::Index j = 0; j < m.cols(); ++j) out(i, j) = evaluate(m(i, j), chi);
    return out;
  };
  rep.generic_ranks_ok = (rank(eval_mat(rep.inclusion.matrix)) == 1) && (rank(eval_mat(rep.projection.matrix)) == 1);
  return rep;
}

inline std::optional<std::vector<Rational>> find_wall_point(const RootSystem& rs, int wall) {
  const int n = rs.datum.lattice_rank;
  auto admissible = [&](const std::vector<Rational>& chi) {
    for (int b = 0; b < rs.wall_count(); ++b) {
      Rational v = evaluate(LaurentPoly<Rational>::basis_char(rs.positives[b].coroot), chi);
      if (b == wall ? (v != 1) : (v == 1)) return false;
    }
    bool identity = true;
    for (const auto& x : chi)
      if (x != 1) identity = false;
    if (identity) return false;
    // Distinct <t>-cosets must stay separated at the point.
    int t = rs.positives[wall].reflection;
    std::vector<std::vector<Rational>> tuples;
    for (int w = 0; w < rs.weyl.size(); ++w) tuples.push_back(weyl_value_tuple(rs, chi, w));
    for (int w = 0; w < rs.weyl.size(); ++w)
      for (int v = 0; v < rs.weyl.size(); ++v) {
        bool same_block = (v == w) || (v == rs.weyl.product(w, t));
        if (!same_block && tuples[w] == tuples[v]) return false;
      }
    return true;
  };

  for (int phase = 0; phase < 2; ++phase) {
    for (int radius = 0; radius <= 4; ++radius) {
      // Lex-descending exponent sweep at the given max-radius shell.
      std::vector<int> c(n, radius);
      while (true) {
        int maxabs = 0;
        for (int x : c) maxabs = std::max(maxabs, std::abs(x));
        if (maxabs == radius) {
          const std::uint32_t sign_total = phase == 0 ? 1u : (1u << n);
          for (std::uint32_t signs = phase == 0 ? 0 : 1; signs < sign_total; ++signs) {
            std::vector<Rational> chi;
            for (int i = 0; i < n; ++i) {
              Rational v = pow_int(Rational(3), c[i]);
              if (signs & (1u << i)) v = -v;
              chi.push_back(v);
            }
            if (admissible(chi)) return chi;
          }
        }
        int i = 0;
        while (i < n && c[i] == -radius) {
          c[i] = radius;
          ++i;
        }
        if (i == n) break;
        --c[i];
      }
    }
  }
  return std::nullopt;
}

inline SplitReport localized_split_check(SystemPtr sys, const std::vector<int>& word, int wall) {
  const RootSystem& rs = *sys;
  SplitReport report;
  report.word = word;
  report.wall = wall;

  auto point = find_wall_point(rs, wall);
  if (!point) {
    report.note = "no admissible wall point in the search box";
    return report;
  }
  report.found_point = true;
  report.chi = *point;

  auto big = bott_samelson<Rational>(sys, FieldSpec::rationals(), word);
  auto mats = fiber(big, report.chi);
  DeltaCharacter ch = delta_char_bott_samelson(rs.weyl, word);

  const int t = rs.positives[wall].reflection;
  bool all_ok = true;
  int total = 0;
  std::vector<bool> seen(rs.weyl.size(), false);
  for (int w = 0; w < rs.weyl.size(); ++w) {
    int wt = rs.weyl.product(w, t);
    if (seen[w] || seen[wt]) continue;
    seen[w] = seen[wt] = true;
    int expected = static_cast<int>(ch.of(w) + ch.of(wt));
    if (expected == 0) continue;
    SplitBlock block;
    if (ch.of(w)) block.members.push_back(w);
    if (ch.of(wt) && wt != w) block.members.push_back(wt);
    block.expected_dim = expected;
    block.clean = (block.members.size() == 1);
    auto tuple = weyl_value_tuple(rs, report.chi, w);
    block.eigen_dim = big.rank - rank(stack_shifted(mats, tuple, 1));
    block.generalized_dim = big.rank - rank(stack_shifted(mats, tuple, big.rank));
    block.ok = (block.generalized_dim == expected) && (!block.clean || block.eigen_dim == expected);
    all_ok = all_ok && block.ok;
    total += block.generalized_dim;
    report.blocks.push_back(std::move(block));
  }
  report.partition_matches = (total == big.rank);
  report.pass = all_ok && report.partition_matches;
  return report;
}

inline std::vector<Pi1Pair> pi1_report(const RootSystem& rs, const IntMat& sublattice) {
  const int n = rs.datum.lattice_rank;
  if (sublattice.rows() != n || sublattice.cols() != n)
    throw std::invalid_argument("pi1_report: sublattice must be square of the lattice rank");
  {
    SmithResult s = smith_normal_form(sublattice);
    if (s.rank < n) throw std::invalid_argument("pi1_report: not a finite-index sublattice");
  }

  // Basis of {(lambda, mu) : lambda - mu in sub}: diagonal plus (sub, 0).
  IntMat basis = IntMat::Zero(2 * n, 2 * n);
  for (int i = 0; i < n; ++i) {
    basis(i, i) = 1;
    basis(n + i, i) = 1;
  }
  basis.block(0, n, n, n) = sublattice;

  auto kernel_of = [&](int w) {
    IntMat f(n, 2 * n);
    IntMat winv = rs.weyl.at(rs.weyl.inverse(w)).matrix;
    f.block(0, 0, n, n) = winv;
    f.block(0, n, n, n) = IntMat::Identity(n, n);
    IntMat fw = f * basis;
    SmithResult s = smith_normal_form(fw);
    IntMat kernel(2 * n, 2 * n - s.rank);
    for (int j = s.rank; j < 2 * n; ++j) kernel.col(j - s.rank) = s.V.col(j);
    return kernel;
  };

  std::vector<Pi1Pair> out;
  for (int w = 0; w < rs.weyl.size(); ++w)
    for (int v = w; v < rs.weyl.size(); ++v) {
      IntMat kw = kernel_of(w), kv = kernel_of(v);
      IntMat joined(2 * n, kw.cols() + kv.cols());
      joined.block(0, 0, 2 * n, kw.cols()) = kw;
      joined.block(0, kw.cols(), 2 * n, kv.cols()) = kv;
      SmithResult s = smith_normal_form(joined);
      Pi1Pair pair;
      pair.w = w;
      pair.v = v;
      pair.free_rank = 2 * n - s.rank;
      for (auto d : s.diag)
        if (d > 1) pair.invariant_factors.push_back(d);
      out.push_back(std::move(pair));
    }
  return out;
}

}  // namespace sbim
