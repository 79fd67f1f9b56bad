#include "sbim/fixed_locus.hpp"

#include <numeric>

namespace sbim {

namespace {

std::int64_t positive_mod(std::int64_t a, std::int64_t m) {
  a %= m;
  return a < 0 ? a + m : a;
}

}  // namespace

FixedLocusDescriptor::Image FixedLocusDescriptor::image_of(const IntVec& v) const {
  IntVec moved = transform * v;
  Image img;
  const int r = static_cast<int>(diag.size());
  std::vector<std::int64_t> free_part;
  for (int i = 0; i < r; ++i) {
    if (diag[i] == 1) continue;
    img.torsion.push_back(positive_mod(moved(i), diag[i]));
  }
  img.free = IntVec(moved.size() - r);
  for (Eigen::Index i = r; i < moved.size(); ++i) img.free(i - r) = moved(i);
  return img;
}

std::int64_t FixedLocusDescriptor::component_count() const {
  std::int64_t c = 1;
  for (auto d : invariant_factors) c *= d;
  return c;
}

FixedLocusDescriptor fixed_locus(const RootSystem& rs, int u, std::uint32_t char_p) {
  const int n = rs.datum.lattice_rank;
  IntMat a = rs.weyl.at(u).matrix - IntMat::Identity(n, n);
  SmithResult snf = smith_normal_form(a);

  FixedLocusDescriptor fl;
  fl.element = u;
  fl.free_rank = n - snf.rank;
  fl.transform = snf.U;
  fl.diag = snf.diag;
  for (auto d : snf.diag)
    if (d > 1) fl.invariant_factors.push_back(d);
  if (char_p != 0)
    for (auto d : fl.invariant_factors)
      if (d % char_p == 0) fl.char_p_flag = true;
  for (const auto& cr : rs.positives) fl.coroot_images.push_back(fl.image_of(cr.coroot));
  return fl;
}

std::vector<TorsionChar> torsion_characters(const FixedLocusDescriptor& fl) {
  std::vector<TorsionChar> out{{}};
  for (auto d : fl.invariant_factors) {
    std::vector<TorsionChar> next;
    for (const auto& base : out)
      for (std::int64_t r = 0; r < d; ++r) {
        TorsionChar t = base;
        t.push_back(r);
        next.push_back(std::move(t));
      }
    out = std::move(next);
  }
  return out;
}

bool component_on_wall(const FixedLocusDescriptor& fl, const FixedLocusDescriptor::Image& image,
                       const TorsionChar& psi) {
  for (Eigen::Index i = 0; i < image.free.size(); ++i)
    if (image.free(i) != 0) return false;
  // psi(x) = 1 iff sum psi_i x_i / d_i is an integer.
  if (psi.size() != fl.invariant_factors.size() || image.torsion.size() != psi.size())
    throw std::invalid_argument("component_on_wall: malformed character");
  // Common denominator: product would overflow for large factors; factors
  // here are tiny, accumulate exactly with a running rational check.
  std::int64_t num = 0, den = 1;
  for (std::size_t i = 0; i < psi.size(); ++i) {
    std::int64_t d = fl.invariant_factors[i];
    num = num * d + psi[i] * image.torsion[i] * den;
    den *= d;
  }
  return positive_mod(num, den) == 0;
}

bool component_on_wall(const RootSystem& rs, const FixedLocusDescriptor& fl, int wall, const TorsionChar& psi) {
  (void)rs;
  return component_on_wall(fl, fl.coroot_images.at(wall), psi);
}

SeparationReport separation_check(const RootSystem& rs, int wall, std::uint32_t char_p) {
  SeparationReport report;
  report.wall = wall;
  report.characteristic = char_p;
  const int t = rs.positives.at(wall).reflection;
  const int W = rs.weyl.size();

  bool ok = true;
  for (int w = 0; w < W; ++w) {
    for (int v = 0; v < W; ++v) {
      if (w == v) continue;
      PairReport pr;
      pr.w = w;
      pr.v = v;
      pr.u = rs.weyl.product(rs.weyl.inverse(w), v);
      pr.block_pair = (v == rs.weyl.product(w, t));
      FixedLocusDescriptor fl = fixed_locus(rs, pr.u, char_p);
      pr.char_p_flag = fl.char_p_flag;
      for (const auto& psi : torsion_characters(fl)) {
        ComponentVerdict cv;
        cv.psi = psi;
        cv.status = ComponentStatus::SurvivesOffWall;
        for (int b = 0; b < rs.wall_count(); ++b) {
          if (b == wall) continue;
          if (component_on_wall(fl, fl.coroot_images[b], psi)) {
            cv.status = ComponentStatus::Killed;
            cv.killer_wall = b;
            break;
          }
        }
        if (cv.status != ComponentStatus::Killed && component_on_wall(fl, fl.coroot_images[wall], psi))
          cv.status = ComponentStatus::SurvivesOnWall;
        if (cv.status == ComponentStatus::SurvivesOnWall && !pr.block_pair) {
          ok = false;
          report.violations.push_back({w, v, psi, "intersection outside the {w, wt} pairing survives"});
        }
        if (cv.status == ComponentStatus::SurvivesOffWall) {
          ok = false;
          report.violations.push_back({w, v, psi, "fixed point off the allowed wall survives localization"});
        }
        pr.components.push_back(std::move(cv));
      }
      report.pairs.push_back(std::move(pr));
    }
  }
  report.pass = ok;
  return report;
}

FqCount fq_point_count(const RootSystem& rs, int u, std::int64_t q, std::int64_t cap) {
  if (q < 2) throw std::invalid_argument("q must be at least 2");
  const std::int64_t m = q - 1;
  const int n = rs.datum.lattice_rank;

  FixedLocusDescriptor fl = fixed_locus(rs, u, 0);
  FqCount out;
  out.formula = 1;
  for (int i = 0; i < fl.free_rank; ++i) out.formula *= m;
  for (auto d : fl.diag) out.formula *= std::gcd(d, m);

  // Brute force: characters lattice -> Z/(q-1) fixed by u.
  std::int64_t total = 1;
  for (int i = 0; i < n; ++i) {
    total *= m;
    if (total > cap) throw std::runtime_error("fq_point_count: enumeration cap exceeded");
  }
  IntMat a = (rs.weyl.at(u).matrix - IntMat::Identity(n, n)).transpose();
  std::vector<std::int64_t> digits(n, 0);
  out.brute = 0;
  for (std::int64_t it = 0; it < total; ++it) {
    std::int64_t x = it;
    for (int i = 0; i < n; ++i) {
      digits[i] = x % m;
      x /= m;
    }
    bool fixed = true;
    for (int i = 0; i < n && fixed; ++i) {
      std::int64_t acc = 0;
      for (int j = 0; j < n; ++j) acc += a(i, j) * digits[j];
      if (positive_mod(acc, m) != 0) fixed = false;
    }
    if (fixed) ++out.brute;
  }
  return out;
}

}  // namespace sbim
