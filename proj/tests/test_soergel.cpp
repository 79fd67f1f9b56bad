#include <doctest.h>

#include "sbim/soergel.hpp"

using namespace sbim;

namespace {
using Poly = LaurentPoly<Rational>;

Poly e(std::initializer_list<std::int32_t> exps) { return Poly::monomial(Exps(exps), Rational(1)); }
}  // namespace

TEST_CASE("steinberg candidate exponents") {
  RootSystem pgl2 = preset_system("PGL2");
  auto cand = steinberg_candidate(pgl2);
  REQUIRE(cand.size() == 2);
  CHECK(cand[0] == IntVec::Zero(1));            // identity always gets 0
  CHECK(cand[1] == (IntVec(1) << -1).finished());  // lambda_s = -omega

  RootSystem pgl3 = preset_system("PGL3");
  auto cand3 = steinberg_candidate(pgl3);
  REQUIRE(cand3.size() == 6);
  CHECK(cand3[0] == IntVec::Zero(2));
}

TEST_CASE("basis_check certifies the candidates and rejects {0, 2 omega}") {
  FieldSpec q = FieldSpec::rationals();
  RootSystem pgl2 = preset_system("PGL2");
  auto cert = basis_check<Rational>(pgl2, q, steinberg_candidate(pgl2));
  CHECK(cert.ok);
  CHECK(cert.independent);

  // {0, omega} is the textbook verified set.
  std::vector<IntVec> omega_set{IntVec::Zero(1), IntVec::Ones(1)};
  CHECK(basis_check<Rational>(pgl2, q, omega_set).ok);

  // Negative control: expanding e^omega over {1, e^(2 omega)} needs
  // 1/(e^omega + e^-omega), which is not in the ring.
  std::vector<IntVec> bad{IntVec::Zero(1), (IntVec(1) << 2).finished()};
  auto certbad = basis_check<Rational>(pgl2, q, bad);
  CHECK_FALSE(certbad.ok);
  CHECK(certbad.independent);
  CHECK(!certbad.witness_numerator.empty());
  CHECK(!certbad.witness_denominator.empty());

  RootSystem pgl3 = preset_system("PGL3");
  auto cert3 = basis_check<Rational>(pgl3, q, steinberg_candidate(pgl3));
  CHECK(cert3.ok);
}

TEST_CASE("steinberg_basis verifies at runtime") {
  FieldSpec q = FieldSpec::rationals();
  for (const char* name : {"PGL2", "PGL3"}) {
    auto sys = make_system(name);
    SteinbergBasis basis = steinberg_basis<Rational>(sys, q);
    CHECK(basis.verified);
    CHECK_FALSE(basis.from_search);
    CHECK(basis.exps.size() == static_cast<std::size_t>(sys->weyl.size()));
  }
}

TEST_CASE("big bimodule: construction and decomposition") {
  FieldSpec q = FieldSpec::rationals();
  auto pgl2 = make_system("PGL2");
  auto basis2 = steinberg_basis<Rational>(pgl2, q);
  auto big2 = build_big_bimodule<Rational>(pgl2, q, basis2);
  CHECK(big2.inner.rank == 2);
  auto dec2 = generic_decompose(big2.inner);
  CHECK(dec2.status == FiberStatus::Clean);
  for (int w = 0; w < 2; ++w) CHECK(dec2.character.of(w) == 1);

  // For rank one the big bimodule is B_s: some bounded intertwiner is
  // invertible (an isomorphism onto the Bott-Samelson presentation).
  auto bs = bott_samelson<Rational>(pgl2, q, {0});
  auto maps = hom_bounded(big2.inner, bs, 2);
  bool found_iso = false;
  auto pt = separating_point(*pgl2);
  for (const auto& m : maps) {
    DenseMat<Rational> f(2, 2);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) f(i, j) = evaluate(m.matrix(i, j), pt.chi);
    if (rank(f) == 2) found_iso = true;
  }
  CHECK(found_iso);

  auto pgl3 = make_system("PGL3");
  auto basis3 = steinberg_basis<Rational>(pgl3, q);
  auto big3 = build_big_bimodule<Rational>(pgl3, q, basis3);
  CHECK(big3.inner.rank == 6);
  auto dec3 = generic_decompose(big3.inner);
  CHECK(dec3.status == FiberStatus::Clean);
  for (int w = 0; w < 6; ++w) CHECK(dec3.character.of(w) == 1);

  // W-invariant orbit sums act as scalars on the big bimodule.
  IntVec lam = (IntVec(2) << 1, 0).finished();
  Poly f = orbit_sum<Rational>(*pgl3, lam);
  DenseMat<Poly> lf = extend_left_action(big3.inner, f);
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) CHECK(lf(i, j) == (i == j ? f : Poly()));
}

TEST_CASE("end_check on PGL2") {
  FieldSpec q = FieldSpec::rationals();
  auto pgl2 = make_system("PGL2");
  EndReport rep = end_check<Rational>(pgl2, q, 3);
  CHECK(rep.pass);
  CHECK(rep.candidate_count == 2);
  CHECK(rep.candidates_are_endomorphisms);
  CHECK(rep.candidates_independent);
  CHECK(rep.bounded_dim == 12);  // 7 boxed multiples of I, 5 of L(omega)
  CHECK(rep.not_in_span == 0);
  for (const auto& [wall, ok] : rep.separation_per_wall) CHECK(ok);

  // Degenerate box: only scalars, still inside the span.
  EndReport rep0 = end_check<Rational>(pgl2, q, 0);
  CHECK(rep0.pass);
  CHECK(rep0.bounded_dim == 1);
}

TEST_CASE("end_check containment holds at every box radius up to the bound") {
  FieldSpec q = FieldSpec::rationals();
  auto pgl2 = make_system("PGL2");
  int prev = -1;
  for (int box = 0; box <= 3; ++box) {
    EndReport rep = end_check<Rational>(pgl2, q, box);
    CHECK(rep.pass);
    CHECK(rep.not_in_span == 0);
    CHECK(rep.bounded_dim > prev);  // strictly more room, strictly more maps
    prev = rep.bounded_dim;
  }
  auto pgl3 = make_system("PGL3");
  prev = -1;
  for (int box = 0; box <= 2; ++box) {
    EndReport rep = end_check<Rational>(pgl3, q, box);
    CHECK(rep.pass);
    CHECK(rep.candidate_count == 6);
    CHECK(rep.candidates_independent);
    CHECK(rep.not_in_span == 0);
    CHECK(rep.bounded_dim > prev);
    prev = rep.bounded_dim;
  }
}

TEST_CASE("rank-one exact sequence maps") {
  FieldSpec q = FieldSpec::rationals();
  for (const char* name : {"PGL2", "PGL3"}) {
    auto sys = make_system(name);
    for (int s = 0; s < sys->datum.rank; ++s) {
      SesReport<Rational> rep = ses_rank1<Rational>(sys, q, s);
      CHECK(rep.intertwiners_ok);
      CHECK(rep.composite_zero);
      CHECK(rep.generic_ranks_ok);
      CHECK(rep.pass());
    }
  }

  // PGL2 explicit data: iota = (-e^(s omega), 1), pi = (1, e^(s omega)).
  auto pgl2 = make_system("PGL2");
  SesReport<Rational> rep = ses_rank1<Rational>(pgl2, q, 0);
  CHECK(rep.inclusion.matrix(0, 0) == -e({-1}));
  CHECK(rep.inclusion.matrix(1, 0) == Poly(1));
  CHECK(rep.projection.matrix(0, 0) == Poly(1));
  CHECK(rep.projection.matrix(0, 1) == e({-1}));

  // Fiber of pi at chi(omega) = 2 is onto: the row evaluates to (1, 1/2).
  std::vector<Rational> chi{Rational(2)};
  CHECK(evaluate(rep.projection.matrix(0, 0), chi) == 1);
  CHECK(evaluate(rep.projection.matrix(0, 1), chi) == Rational(1, 2));
}

TEST_CASE("wall point search hits the pinned points") {
  auto pgl2 = make_system("PGL2");
  auto p2 = find_wall_point(*pgl2, 0);
  REQUIRE(p2);
  CHECK((*p2)[0] == Rational(-1));

  auto pgl3 = make_system("PGL3");
  auto p3 = find_wall_point(*pgl3, 0);
  REQUIRE(p3);
  CHECK((*p3)[0] == Rational(3));
  CHECK((*p3)[1] == Rational(9));
}

TEST_CASE("localized splitting of Bott-Samelson fibers") {
  auto pgl2 = make_system("PGL2");
  SplitReport rep2 = localized_split_check(pgl2, {0}, 0);
  CHECK(rep2.pass);
  REQUIRE(rep2.blocks.size() == 1);
  CHECK(rep2.blocks[0].members == std::vector<int>{0, 1});
  CHECK(rep2.blocks[0].generalized_dim == 2);
  CHECK(rep2.blocks[0].eigen_dim == 1);  // nonsplit across the wall

  auto pgl3 = make_system("PGL3");
  SplitReport rep3 = localized_split_check(pgl3, {0, 1, 0}, 0);
  CHECK(rep3.pass);
  CHECK(rep3.chi == std::vector<Rational>{Rational(3), Rational(9)});
  CHECK(rep3.blocks.size() == 3);  // the three <s1>-cosets
  int total = 0;
  for (const auto& b : rep3.blocks) total += b.generalized_dim;
  CHECK(total == 8);

  // A word that misses some cosets produces clean one-member blocks.
  SplitReport repc = localized_split_check(pgl3, {1}, 0);
  CHECK(repc.pass);
  for (const auto& b : repc.blocks) {
    CHECK(b.clean);
    CHECK(b.eigen_dim == b.expected_dim);
  }

  // Other walls and words, including the nonsimple coroot.
  for (int wall = 0; wall < pgl3->wall_count(); ++wall) {
    for (const std::vector<int>& word : {std::vector<int>{0, 1}, std::vector<int>{1, 0, 1}}) {
      SplitReport rep = localized_split_check(pgl3, word, wall);
      CHECK(rep.found_point);
      CHECK(rep.pass);
    }
  }
}

TEST_CASE("end_check over a prime field") {
  auto pgl2 = make_system("PGL2");
  EndReport rep = end_check<Fp>(pgl2, FieldSpec::prime(5), 2);
  CHECK(rep.pass);
  CHECK(rep.candidate_count == 2);
  CHECK(rep.not_in_span == 0);
}

TEST_CASE("pi1 on the full lattice reproduces the fixed-locus descriptors") {
  for (const char* name : {"PGL2", "PGL3"}) {
    RootSystem rs = preset_system(name);
    IntMat id = IntMat::Identity(rs.datum.lattice_rank, rs.datum.lattice_rank);
    auto pairs = pi1_report(rs, id);
    for (const auto& p : pairs) {
      int u = rs.weyl.product(rs.weyl.inverse(p.w), p.v);
      FixedLocusDescriptor fl = fixed_locus(rs, u);
      CHECK(p.free_rank == fl.free_rank);
      CHECK(p.invariant_factors == fl.invariant_factors);
    }
  }
}

TEST_CASE("big bimodule fibers at wall points split into {w, wt} blocks") {
  // The localized endomorphism picture: at a point on exactly one wall, the
  // rank-|W| fiber decomposes into |W|/2 generalized eigenblocks of
  // dimension two, pairing the <t>-cosets.
  FieldSpec q = FieldSpec::rationals();
  for (const char* name : {"PGL2", "PGL3"}) {
    auto sys = make_system(name);
    auto big = build_big_bimodule<Rational>(sys, q, steinberg_basis<Rational>(sys, q));
    for (int wall = 0; wall < sys->wall_count(); ++wall) {
      auto point = find_wall_point(*sys, wall);
      REQUIRE(point);
      auto mats = fiber(big.inner, *point);
      int t = sys->positives[wall].reflection;
      std::vector<bool> seen(sys->weyl.size(), false);
      int blocks = 0;
      for (int w = 0; w < sys->weyl.size(); ++w) {
        if (seen[w]) continue;
        int wt = sys->weyl.product(w, t);
        seen[w] = seen[wt] = true;
        ++blocks;
        auto tuple = weyl_value_tuple(*sys, *point, w);
        int gen_dim = big.inner.rank - rank(stack_shifted(mats, tuple, big.inner.rank));
        CHECK(gen_dim == 2);
      }
      CHECK(blocks == sys->weyl.size() / 2);
    }
  }
}

TEST_CASE("pi1 report separates the SL2 graphs") {
  auto ambient = make_system("PGL2");

  IntMat unmodified = IntMat::Identity(1, 1);
  auto full = pi1_report(*ambient, unmodified);
  REQUIRE(full.size() == 3);  // (e,e), (e,s), (s,s)
  for (const auto& p : full) {
    if (p.w == p.v) {
      CHECK(p.free_rank == 1);
      CHECK(p.invariant_factors.empty());
    } else {
      CHECK(p.free_rank == 0);
      CHECK(p.invariant_factors == std::vector<std::int64_t>{2});
    }
  }

  IntMat modified(1, 1);
  modified << 2;
  auto sep = pi1_report(*ambient, modified);
  for (const auto& p : sep) {
    if (p.w != p.v) {
      CHECK(p.free_rank == 0);
      CHECK(p.invariant_factors.empty());  // single intersection point
    }
  }

  IntMat singular = IntMat::Zero(1, 1);
  CHECK_THROWS_AS(pi1_report(*ambient, singular), std::invalid_argument);
}
