#include "sbim/smith.hpp"

#include <cstdlib>
#include <stdexcept>

namespace sbim {

namespace {

bool find_pivot(const IntMat& m, int t, int& pi, int& pj) {
  std::int64_t best = 0;
  pi = pj = -1;
  for (Eigen::Index i = t; i < m.rows(); ++i)
    for (Eigen::Index j = t; j < m.cols(); ++j) {
      std::int64_t a = std::llabs(m(i, j));
      if (a != 0 && (pi < 0 || a < best)) {
        best = a;
        pi = static_cast<int>(i);
        pj = static_cast<int>(j);
      }
    }
  return pi >= 0;
}

}  // namespace

SmithResult smith_normal_form(const IntMat& a) {
  SmithResult r;
  const int n = static_cast<int>(a.rows());
  const int m = static_cast<int>(a.cols());
  r.D = a;
  r.U = IntMat::Identity(n, n);
  r.V = IntMat::Identity(m, m);
  IntMat& d = r.D;

  int t = 0;
  const int steps_cap = 1 << 20;
  int steps = 0;
  while (t < n && t < m) {
    int pi, pj;
    if (!find_pivot(d, t, pi, pj)) break;
    if (pi != t) {
      d.row(t).swap(d.row(pi));
      r.U.row(t).swap(r.U.row(pi));
    }
    if (pj != t) {
      d.col(t).swap(d.col(pj));
      r.V.col(t).swap(r.V.col(pj));
    }

    bool dirty = false;
    for (int i = t + 1; i < n; ++i) {
      std::int64_t q = d(i, t) / d(t, t);
      if (q != 0) {
        d.row(i) -= q * d.row(t);
        r.U.row(i) -= q * r.U.row(t);
      }
      if (d(i, t) != 0) dirty = true;
    }
    for (int j = t + 1; j < m; ++j) {
      std::int64_t q = d(t, j) / d(t, t);
      if (q != 0) {
        d.col(j) -= q * d.col(t);
        r.V.col(j) -= q * r.V.col(t);
      }
      if (d(t, j) != 0) dirty = true;
    }
    if (++steps > steps_cap) throw std::runtime_error("smith_normal_form did not terminate");
    if (dirty) continue;  // smaller remainders moved into the submatrix; re-pivot

    // Pivot must divide every remaining entry; if not, fold the offending
    // row into row t and restart this corner.
    bool divides = true;
    for (int i = t + 1; i < n && divides; ++i)
      for (int j = t + 1; j < m && divides; ++j)
        if (d(i, j) % d(t, t) != 0) {
          d.row(t) += d.row(i);
          r.U.row(t) += r.U.row(i);
          divides = false;
        }
    if (!divides) continue;

    if (d(t, t) < 0) {
      d.row(t) = -d.row(t);
      r.U.row(t) = -r.U.row(t);
    }
    ++t;
  }
  r.rank = t;
  for (int i = 0; i < t; ++i) r.diag.push_back(d(i, i));
  return r;
}

}  // namespace sbim
