#include <doctest.h>

#include "sbim/fixed_locus.hpp"
#include "sbim/hecke.hpp"
#include "sbim/linalg.hpp"
#include "sbim/smith.hpp"

using namespace sbim;

namespace {

// Finite-field oracle: count characters chi: lattice -> Z/(q-1) lying on
// Gamma_w cap Gamma_v and avoiding every wall except the allowed one.
std::int64_t fq_intersection_count(const RootSystem& rs, int w, int v, int allowed, std::int64_t q) {
  const int n = rs.datum.lattice_rank;
  const std::int64_t m = q - 1;
  IntMat diff = rs.weyl.at(w).matrix - rs.weyl.at(v).matrix;
  std::int64_t total = 1;
  for (int i = 0; i < n; ++i) total *= m;
  std::int64_t count = 0;
  for (std::int64_t it = 0; it < total; ++it) {
    std::int64_t x = it;
    std::vector<std::int64_t> a(n);
    for (int i = 0; i < n; ++i) {
      a[i] = x % m;
      x /= m;
    }
    auto pairing = [&](const IntVec& lam) {
      std::int64_t acc = 0;
      for (int i = 0; i < n; ++i) acc += a[i] * lam(i);
      return ((acc % m) + m) % m;
    };
    bool on_graph = true;
    for (int i = 0; i < n && on_graph; ++i) {
      IntVec ei = IntVec::Zero(n);
      ei(i) = 1;
      if (pairing(diff * ei) != 0) on_graph = false;
    }
    if (!on_graph) continue;
    bool off_other_walls = true;
    for (int b = 0; b < rs.wall_count() && off_other_walls; ++b) {
      if (b == allowed) continue;
      if (pairing(rs.positives[b].coroot) == 0) off_other_walls = false;
    }
    if (off_other_walls) ++count;
  }
  return count;
}

}  // namespace

TEST_CASE("smith normal form") {
  IntMat a(2, 2);
  a << 2, 4, 6, 8;
  SmithResult s = smith_normal_form(a);
  CHECK(s.U * a * s.V == s.D);
  REQUIRE(s.diag.size() == 2);
  CHECK(s.diag[0] == 2);
  CHECK(s.diag[1] == 4);  // det = -8, invariant factors 2 | 4

  IntMat zero = IntMat::Zero(2, 3);
  CHECK(smith_normal_form(zero).rank == 0);

  IntMat b(1, 1);
  b << -2;
  SmithResult sb = smith_normal_form(b);
  CHECK(sb.diag == std::vector<std::int64_t>{2});

  // Divisibility chain on a few fixed matrices.
  IntMat c(3, 3);
  c << 2, 0, 0, 0, 3, 0, 0, 0, 5;
  SmithResult sc = smith_normal_form(c);
  for (std::size_t i = 0; i + 1 < sc.diag.size(); ++i) CHECK(sc.diag[i + 1] % sc.diag[i] == 0);
  CHECK(sc.diag.back() == 30);
}

TEST_CASE("smith normal form on random matrices") {
  std::uint64_t state = 12345;
  auto next = [&]() {
    state = state * 6364136223846793005ull + 1442695040888963407ull;
    return static_cast<std::int64_t>((state >> 33) % 9) - 4;
  };
  auto int_det = [](const IntMat& m) {
    DenseMat<Rational> r(m.rows(), m.cols());
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      for (Eigen::Index j = 0; j < m.cols(); ++j) r(i, j) = Rational(static_cast<long>(m(i, j)));
    return bareiss_det(r);
  };
  for (int rep = 0; rep < 40; ++rep) {
    int rows = 1 + static_cast<int>((state >> 7) % 4);
    int cols = 1 + static_cast<int>((state >> 13) % 4);
    IntMat a(rows, cols);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) a(i, j) = next();
    SmithResult s = smith_normal_form(a);
    CHECK(s.U * a * s.V == s.D);
    Rational du = int_det(s.U), dv = int_det(s.V);
    CHECK((du == 1 || du == -1));
    CHECK((dv == 1 || dv == -1));
    for (std::size_t k = 0; k + 1 < s.diag.size(); ++k) {
      CHECK(s.diag[k] > 0);
      CHECK(s.diag[k + 1] % s.diag[k] == 0);
    }
  }
}

TEST_CASE("fixed locus descriptors") {
  RootSystem pgl2 = preset_system("PGL2");
  FixedLocusDescriptor id = fixed_locus(pgl2, 0);
  CHECK(id.free_rank == 1);
  CHECK(id.invariant_factors.empty());

  FixedLocusDescriptor fs = fixed_locus(pgl2, 1);  // u = s: (s-1) = (-2) on Z omega
  CHECK(fs.free_rank == 0);
  CHECK(fs.invariant_factors == std::vector<std::int64_t>{2});
  CHECK(fs.component_count() == 2);

  RootSystem sl2 = preset_system("SL2");
  FixedLocusDescriptor fsl = fixed_locus(sl2, 1);
  CHECK(fsl.invariant_factors == std::vector<std::int64_t>{2});  // graphs meet at two points

  // Gamma_w cap Gamma_v depends only on w^-1 v: conjugates share descriptors.
  RootSystem pgl3 = preset_system("PGL3");
  for (int u = 0; u < pgl3.weyl.size(); ++u)
    for (int x = 0; x < pgl3.weyl.size(); ++x) {
      int conj = pgl3.weyl.product(pgl3.weyl.product(pgl3.weyl.inverse(x), u), x);
      FixedLocusDescriptor a = fixed_locus(pgl3, u);
      FixedLocusDescriptor b = fixed_locus(pgl3, conj);
      CHECK(a.free_rank == b.free_rank);
      CHECK(a.invariant_factors == b.invariant_factors);
    }
}

TEST_CASE("component_on_wall") {
  RootSystem pgl2 = preset_system("PGL2");
  FixedLocusDescriptor fs = fixed_locus(pgl2, 1);
  auto chars = torsion_characters(fs);
  REQUIRE(chars.size() == 2);
  // alpha = 2 omega has image 0 in Z/2: both components sit on the wall.
  for (const auto& psi : chars) CHECK(component_on_wall(pgl2, fs, 0, psi));

  RootSystem sl2 = preset_system("SL2");
  FixedLocusDescriptor fsl = fixed_locus(sl2, 1);
  // alpha-vee generates Z/2: the psi = 1 component (the point -1) is off the wall.
  CHECK(component_on_wall(sl2, fsl, 0, TorsionChar{0}));
  CHECK_FALSE(component_on_wall(sl2, fsl, 0, TorsionChar{1}));

  // Identity component is on the wall iff the free part vanishes.
  RootSystem pgl3 = preset_system("PGL3");
  FixedLocusDescriptor fid = fixed_locus(pgl3, 0);
  auto trivial = torsion_characters(fid);
  REQUIRE(trivial.size() == 1);
  for (int b = 0; b < pgl3.wall_count(); ++b) CHECK_FALSE(component_on_wall(pgl3, fid, b, trivial[0]));
}

TEST_CASE("separation check on adjoint data") {
  RootSystem pgl2 = preset_system("PGL2");
  CHECK(separation_check(pgl2, 0).pass);

  RootSystem pgl3 = preset_system("PGL3");
  for (int wall = 0; wall < pgl3.wall_count(); ++wall) {
    SeparationReport rep = separation_check(pgl3, wall);
    CHECK(rep.pass);
    // Survivors pair exactly {w, wt}, matching the block prediction.
    for (const auto& pr : rep.pairs) {
      CHECK(pr.survives() == pr.block_pair);
      CHECK(pr.block_pair == localized_block(pgl3, pr.w, pr.v, wall));
    }
  }

  // Gamma_1 cap Gamma_{s2} is killed by the wall alpha2 when beta = alpha1.
  SeparationReport rep = separation_check(pgl3, 0);
  int s2 = pgl3.weyl.simple(1);
  bool found = false;
  for (const auto& pr : rep.pairs) {
    if (pr.w != 0 || pr.v != s2) continue;
    found = true;
    REQUIRE(pr.components.size() == 1);
    CHECK(pr.components[0].status == ComponentStatus::Killed);
    CHECK(pr.components[0].killer_wall == 1);
  }
  CHECK(found);
}

TEST_CASE("separation check reports the SL2 violation") {
  RootSystem sl2 = preset_system("SL2");
  SeparationReport rep = separation_check(sl2, 0);
  CHECK_FALSE(rep.pass);
  REQUIRE(rep.violations.size() == 2);  // ordered pairs (e, s) and (s, e)
  for (const auto& v : rep.violations) CHECK(v.psi == TorsionChar{1});
  // Both fixed points have order dividing 2; exactly one is off the wall.
  for (const auto& pr : rep.pairs) {
    REQUIRE(pr.components.size() == 2);
    int off = 0, on = 0;
    for (const auto& c : pr.components) {
      if (c.status == ComponentStatus::SurvivesOffWall) ++off;
      if (c.status == ComponentStatus::SurvivesOnWall) ++on;
    }
    CHECK(off == 1);
    CHECK(on == 1);
  }
}

TEST_CASE("finite-field enumeration confirms the localization verdicts") {
  RootSystem pgl3 = preset_system("PGL3");
  for (int wall = 0; wall < pgl3.wall_count(); ++wall) {
    int t = pgl3.positives[wall].reflection;
    for (std::int64_t q : {5, 7}) {
      for (int w = 0; w < pgl3.weyl.size(); ++w)
        for (int v = 0; v < pgl3.weyl.size(); ++v) {
          if (w == v) continue;
          std::int64_t pts = fq_intersection_count(pgl3, w, v, wall, q);
          if (v != pgl3.weyl.product(w, t)) CHECK(pts == 0);
        }
    }
  }
  // SL2: the order-2 point survives away from the allowed wall.
  RootSystem sl2 = preset_system("SL2");
  std::int64_t all_pts = fq_intersection_count(sl2, 0, 1, 0, 5);
  CHECK(all_pts == 2);  // +1 and -1 both lie on Gamma_1 cap Gamma_s
}

TEST_CASE("fq point counts: formula vs brute force") {
  RootSystem pgl2 = preset_system("PGL2");
  FqCount c = fq_point_count(pgl2, 1, 5);
  CHECK(c.formula == 2);  // gcd(2, 4)
  CHECK(c.brute == 2);

  RootSystem pgl3 = preset_system("PGL3");
  FqCount cid = fq_point_count(pgl3, 0, 3);
  CHECK(cid.formula == 4);  // (q-1)^2
  CHECK(cid.brute == 4);

  int rot = pgl3.weyl.product(pgl3.weyl.simple(0), pgl3.weyl.simple(1));  // order 3
  FqCount c3 = fq_point_count(pgl3, rot, 7);
  CHECK(c3.formula == 3);  // gcd(3, 6)
  CHECK(c3.brute == 3);

  for (const char* name : {"PGL2", "SL2", "PGL3"}) {
    RootSystem rs = preset_system(name);
    for (int u = 0; u < rs.weyl.size(); ++u)
      for (std::int64_t q : {3, 4, 5, 7, 8, 9}) {
        FqCount cnt = fq_point_count(rs, u, q);
        CHECK(cnt.formula == cnt.brute);
      }
  }
}

TEST_CASE("enumeration cap guards the brute force") {
  RootSystem pgl3 = preset_system("PGL3");
  CHECK_THROWS_AS(fq_point_count(pgl3, 0, 10'000), std::runtime_error);
}

TEST_CASE("characteristic flags") {
  RootSystem pgl2 = preset_system("PGL2");
  CHECK(fixed_locus(pgl2, 1, 2).char_p_flag);
  CHECK_FALSE(fixed_locus(pgl2, 1, 5).char_p_flag);
  // Combinatorial outputs are unchanged in characteristic p.
  SeparationReport rp = separation_check(pgl2, 0, 5);
  SeparationReport r0 = separation_check(pgl2, 0, 0);
  CHECK(rp.pass == r0.pass);
  REQUIRE(rp.pairs.size() == r0.pairs.size());
  for (std::size_t i = 0; i < rp.pairs.size(); ++i) {
    REQUIRE(rp.pairs[i].components.size() == r0.pairs[i].components.size());
    for (std::size_t k = 0; k < rp.pairs[i].components.size(); ++k)
      CHECK(rp.pairs[i].components[k].status == r0.pairs[i].components[k].status);
  }
}
