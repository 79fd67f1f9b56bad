// Acceptance battery: one check per criterion, exact comparisons only,
// with the stated wall-clock budgets enforced.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "sbim/fixed_locus.hpp"
#include "sbim/hecke.hpp"
#include "sbim/soergel.hpp"

using namespace sbim;

namespace {

using Poly = LaurentPoly<Rational>;

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
  void note(const std::string& what) { detail += (detail.empty() ? "" : "; ") + what; }
};

std::vector<std::vector<int>> all_words(int rank, int max_len) {
  std::vector<std::vector<int>> out{{}};
  std::vector<std::vector<int>> level{{}};
  for (int len = 1; len <= max_len; ++len) {
    std::vector<std::vector<int>> next;
    for (const auto& w : level)
      for (int s = 0; s < rank; ++s) {
        auto ext = w;
        ext.push_back(s);
        next.push_back(ext);
        out.push_back(ext);
      }
    level = std::move(next);
  }
  return out;
}

// --------------------------------------------------------------- criterion 1

Outcome rank1_endomorphismensatz() {
  Outcome out;
  auto sys = make_system("PGL2");
  FieldSpec q = FieldSpec::rationals();
  auto bs = bott_samelson<Rational>(sys, q, {0});
  auto maps = hom_bounded(bs, bs, 3);
  std::vector<DenseMat<Poly>> candidates{ring_identity<Poly>(2), bs.left[0]};

  auto chi = separating_point(*sys).chi;
  DenseMat<Rational> flat(4, static_cast<Eigen::Index>(maps.size()));
  for (std::size_t j = 0; j < maps.size(); ++j)
    for (int pos = 0; pos < 4; ++pos) flat(pos, static_cast<Eigen::Index>(j)) = evaluate(maps[j].matrix(pos / 2, pos % 2), chi);
  out.require(rank(flat) == 2, "fraction-field rank is not 2");
  for (const auto& m : maps)
    out.require(std::holds_alternative<std::vector<Poly>>(span_membership(bs, bs, m.matrix, candidates)),
                "bounded intertwiner outside span{1, L(omega)}");
  out.note("dim=" + std::to_string(maps.size()) + " all in span{identity, L(omega)}, rank 2");
  return out;
}

// --------------------------------------------------------------- criterion 2

Outcome selfadjoint_determinant() {
  Outcome out;
  for (const char* name : {"PGL2", "PGL3"}) {
    RootDatum d = preset_datum(name);
    for (int s = 0; s < d.rank; ++s) {
      auto m = selfadjoint_matrix<Rational>(d, s);
      Poly det = m(0, 0) * m(1, 1) - m(1, 0) * m(0, 1);
      Poly ew = Poly::basis_char(d.fundamental_coweights[s]);
      Poly esw = Poly::basis_char(d.reflection[s] * d.fundamental_coweights[s]);
      out.require(det == -(ew * esw), std::string(name) + " s" + std::to_string(s + 1) + ": determinant mismatch");
    }
  }
  out.note("det = -e^(omega + s omega) on every simple index of PGL2, PGL3");
  return out;
}

// --------------------------------------------------------------- criterion 3

Outcome wall_lemma_and_sl2() {
  Outcome out;
  for (const char* name : {"PGL2", "PGL3"}) {
    RootSystem rs = preset_system(name);
    for (int wall = 0; wall < rs.wall_count(); ++wall)
      out.require(separation_check(rs, wall).pass, std::string(name) + " wall " + std::to_string(wall + 1));
  }
  RootSystem sl2 = preset_system("SL2");
  SeparationReport rep = separation_check(sl2, 0);
  out.require(!rep.pass, "SL2 must violate the separation");
  out.require(rep.violations.size() == 2, "expected exactly the order-2 violation (both ordered pairs)");
  for (const auto& v : rep.violations) out.require(v.psi == TorsionChar{1}, "violation is not the order-2 point");
  for (const auto& pr : rep.pairs) {
    FixedLocusDescriptor fl = fixed_locus(sl2, pr.u);
    out.require(fl.free_rank == 0 && fl.invariant_factors == std::vector<std::int64_t>{2},
                "intersection must be the two points +-1");
    int on = 0, off = 0;
    for (const auto& c : pr.components) {
      if (c.status == ComponentStatus::SurvivesOnWall) ++on;
      if (c.status == ComponentStatus::SurvivesOffWall) ++off;
    }
    out.require(pr.components.size() == 2, "SL2 graphs must meet at two points");
    out.require(on == 1 && off == 1, "exactly one fixed point off the wall");
  }
  out.note("adjoint separation green; SL2 meets at +1 (on wall) and -1 (off wall)");
  return out;
}

// --------------------------------------------------------------- criterion 4

Outcome coherent_splitting() {
  Outcome out;
  RootSystem rs = preset_system("PGL3");
  for (int wall = 0; wall < rs.wall_count(); ++wall) {
    int t = rs.positives[wall].reflection;
    SeparationReport rep = separation_check(rs, wall);
    out.require(rep.pass, "wall " + std::to_string(wall + 1) + " separation failed");
    for (const auto& pr : rep.pairs) {
      bool block = (pr.v == rs.weyl.product(pr.w, t));
      out.require(pr.survives() == block, "survivor pattern is not the {w, wt} pairing");
      out.require(localized_block(rs, pr.w, pr.v, wall) == (block || pr.v == pr.w),
                  "pairing differs from hecke.localized_block");
    }
  }
  out.note("all three coroots: kills off-block pairs, survivors pair {w, wt} = localized_block");
  return out;
}

// --------------------------------------------------------------- criterion 5

Outcome fixed_point_oracle() {
  Outcome out;
  long checks = 0;
  for (const char* name : {"PGL2", "SL2", "PGL3"}) {
    RootSystem rs = preset_system(name);
    for (int u = 0; u < rs.weyl.size(); ++u)
      for (std::int64_t q : {3, 4, 5, 7, 8, 9}) {
        FqCount c = fq_point_count(rs, u, q);
        ++checks;
        out.require(c.formula == c.brute,
                    std::string(name) + " u=" + std::to_string(u) + " q=" + std::to_string(q));
      }
  }
  out.note("formula = brute force in " + std::to_string(checks) + " cases");
  return out;
}

// --------------------------------------------------------------- criterion 6

template <class K>
bool decompose_matches(SystemPtr sys, const FieldSpec& field, const std::vector<int>& word) {
  auto b = bott_samelson<K>(sys, field, word);
  auto dec = generic_decompose(b);
  DeltaCharacter ch = delta_char_bott_samelson(sys->weyl, word);
  DeltaCharacter sub = subword_char(sys->weyl, word);
  return dec.status == FiberStatus::Clean && dec.character == ch && ch == sub &&
         dec.character.total_mass() == (std::uint64_t{1} << word.size());
}

Outcome bott_samelson_characters() {
  Outcome out;
  int count = 0;
  FieldSpec q = FieldSpec::rationals();
  for (const char* name : {"PGL2", "PGL3"}) {
    auto sys = make_system(name);
    for (const auto& word : all_words(sys->datum.rank, 4)) {
      ++count;
      if (!decompose_matches<Rational>(sys, q, word)) {
        std::string w;
        for (int s : word) w += std::to_string(s + 1);
        out.require(false, std::string(name) + " word [" + w + "]");
      }
    }
  }
  out.note("decompose = recursion = subword for " + std::to_string(count) + " words of length <= 4");
  return out;
}

// --------------------------------------------------------------- criterion 7

Outcome pittie_steinberg() {
  Outcome out;
  FieldSpec q = FieldSpec::rationals();
  for (const char* name : {"PGL2", "PGL3"}) {
    auto sys = make_system(name);
    SteinbergBasis basis = steinberg_basis<Rational>(sys, q);
    out.require(basis.verified, std::string(name) + ": no verified basis");
    out.require(basis.exps.size() == static_cast<std::size_t>(sys->weyl.size()), "basis size");
  }
  auto pgl2 = make_system("PGL2");
  std::vector<IntVec> bad{IntVec::Zero(1), (IntVec(1) << 2).finished()};
  BasisCertificate cert = basis_check<Rational>(*pgl2, q, bad);
  out.require(!cert.ok, "negative control {0, 2 omega} must fail");
  out.require(!cert.witness_numerator.empty() && !cert.witness_denominator.empty(),
              "negative control must carry an exact-division witness");
  out.note("certified |W|-element bases; {0, 2w} fails with witness " + cert.witness_numerator + " / " +
           cert.witness_denominator);
  return out;
}

// --------------------------------------------------------------- criterion 8

Outcome endomorphismensatz_shadow() {
  Outcome out;
  FieldSpec q = FieldSpec::rationals();
  EndReport two = end_check<Rational>(make_system("PGL2"), q, 3);
  out.require(two.pass, "PGL2 box 3 failed");
  EndReport three = end_check<Rational>(make_system("PGL3"), q, 2);
  out.require(three.pass, "PGL3 box 2 failed");
  out.note("PGL2: dim=" + std::to_string(two.bounded_dim) + " in span of 2; PGL3: dim=" +
           std::to_string(three.bounded_dim) + " in span of 6; localized cross-checks green");
  return out;
}

// --------------------------------------------------------------- criterion 9

Outcome struktursatz_sequence() {
  Outcome out;
  FieldSpec q = FieldSpec::rationals();
  for (const char* name : {"PGL2", "PGL3"}) {
    auto sys = make_system(name);
    for (int s = 0; s < sys->datum.rank; ++s) {
      SesReport<Rational> rep = ses_rank1<Rational>(sys, q, s);
      out.require(rep.intertwiners_ok, std::string(name) + " s" + std::to_string(s + 1) + ": not intertwiners");
      out.require(rep.composite_zero, std::string(name) + " s" + std::to_string(s + 1) + ": pi.iota != 0");
      out.require(rep.generic_ranks_ok, std::string(name) + " s" + std::to_string(s + 1) + ": generic ranks");
    }
  }
  out.note("exact intertwiners, pi.iota = 0, generic ranks (1, 2, 1) on every simple index");
  return out;
}

// -------------------------------------------------------------- criterion 10

Outcome localized_splitting() {
  Outcome out;
  auto sys = make_system("PGL3");
  SplitReport rep = localized_split_check(sys, {0, 1, 0}, 0);
  out.require(rep.found_point, "no wall point found");
  out.require(rep.chi == std::vector<Rational>{Rational(3), Rational(9)}, "wall point is not (3, 9)");
  out.require(rep.pass, "fiber blocks do not pair the <s1>-cosets");
  out.require(rep.blocks.size() == 3, "expected three coset blocks");
  out.note("chi = (3, 9); blocks {e,s1}:4 {s2,s2s1}:2 {s1s2,s1s2s1}:2");
  return out;
}

// -------------------------------------------------------------- criterion 11

Outcome nonadjoint_modification() {
  Outcome out;
  auto ambient = make_system("PGL2");
  IntMat unmodified = IntMat::Identity(1, 1);
  IntMat modified(1, 1);
  modified << 2;
  auto full = pi1_report(*ambient, unmodified);
  auto sep = pi1_report(*ambient, modified);
  bool ok_full = false, ok_sep = false;
  for (const auto& p : full)
    if (p.w == 0 && p.v == 1) ok_full = (p.free_rank == 0 && p.invariant_factors == std::vector<std::int64_t>{2});
  for (const auto& p : sep)
    if (p.w == 0 && p.v == 1) ok_sep = (p.free_rank == 0 && p.invariant_factors.empty());
  out.require(ok_full, "unmodified lattice must give Q = Z/2");
  out.require(ok_sep, "modified lattice must give trivial Q");
  out.note("unmodified: Q = Z/2 (two points); modified: Q = 0 (identity only)");
  return out;
}

// -------------------------------------------------------------- criterion 12

Outcome prime_field_sanity() {
  Outcome out;
  for (std::uint32_t p : {5u, 7u}) {
    FieldSpec fp = FieldSpec::prime(p);
    // Criterion 3 and 4 shadows: identical separation verdicts.
    for (const char* name : {"PGL2", "PGL3", "SL2"}) {
      RootSystem rs = preset_system(name);
      for (int wall = 0; wall < rs.wall_count(); ++wall) {
        SeparationReport a = separation_check(rs, wall, 0);
        SeparationReport b = separation_check(rs, wall, p);
        out.require(a.pass == b.pass && a.violations.size() == b.violations.size(),
                    std::string(name) + " F" + std::to_string(p) + ": separation verdicts changed");
        for (std::size_t i = 0; i < a.pairs.size(); ++i)
          for (std::size_t k = 0; k < a.pairs[i].components.size(); ++k)
            out.require(a.pairs[i].components[k].status == b.pairs[i].components[k].status,
                        "component verdict changed in characteristic p");
      }
    }
    // Criterion 5 shadow: the counts are field-independent and still match.
    for (const char* name : {"PGL2", "SL2", "PGL3"}) {
      RootSystem rs = preset_system(name);
      for (int u = 0; u < rs.weyl.size(); ++u)
        for (std::int64_t qq : {3, 4, 5, 7, 8, 9}) {
          FqCount c = fq_point_count(rs, u, qq);
          out.require(c.formula == c.brute, "fq oracle");
        }
    }
    // Criterion 6 shadow: decompositions over F_p match the same characters.
    for (const char* name : {"PGL2", "PGL3"}) {
      auto sys = make_system(name);
      for (const auto& word : all_words(sys->datum.rank, 4))
        if (!decompose_matches<Fp>(sys, fp, word)) {
          std::string w;
          for (int s : word) w += std::to_string(s + 1);
          out.require(false, std::string(name) + " F" + std::to_string(p) + " word [" + w + "]");
        }
    }
  }
  out.note("criteria 3-6 reproduced over F_5 and F_7 with identical combinatorial outputs");
  return out;
}

}  // namespace

int main() {
  struct Criterion {
    int number;
    const char* name;
    double budget_s;
    std::function<Outcome()> fn;
  };
  std::vector<Criterion> criteria{
      {1, "rank-1 endomorphism ring", 1.0, rank1_endomorphismensatz},
      {2, "self-adjunction determinant", 1.0, selfadjoint_determinant},
      {3, "wall lemma and SL2 example", 1.0, wall_lemma_and_sl2},
      {4, "coherent splitting pairing", 5.0, coherent_splitting},
      {5, "fixed-point count oracle", 10.0, fixed_point_oracle},
      {6, "Bott-Samelson characters", 30.0, bott_samelson_characters},
      {7, "Pittie-Steinberg bases", 10.0, pittie_steinberg},
      {8, "endomorphism containment", 600.0, endomorphismensatz_shadow},
      {9, "rank-1 exact sequence", 1.0, struktursatz_sequence},
      {10, "localized Bott-Samelson splitting", 5.0, localized_splitting},
      {11, "non-adjoint modification", 1.0, nonadjoint_modification},
      {12, "prime-field sanity", 60.0, prime_field_sanity},
  };

  bool all = true;
  for (const auto& c : criteria) {
    auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.fn();
    } catch (const std::exception& e) {
      out.pass = false;
      out.detail = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > c.budget_s) {
      out.pass = false;
      out.detail += (out.detail.empty() ? "" : "; ") + std::string("over budget of ") +
                    std::to_string(c.budget_s) + " s";
    }
    all = all && out.pass;
    std::printf("criterion %2d [%s] %7.2fs  %s — %s\n", c.number, out.pass ? "PASS" : "FAIL", secs, c.name,
                out.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("acceptance: %s\n", all ? "PASS" : "FAIL");
  return all ? 0 : 1;
}
