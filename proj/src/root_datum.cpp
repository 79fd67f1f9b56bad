#include "sbim/root_datum.hpp"

#include <algorithm>
#include <sstream>

namespace sbim {

namespace {

std::vector<std::int64_t> matrix_key(const IntMat& m) {
  std::vector<std::int64_t> key;
  key.reserve(m.size());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) key.push_back(m(i, j));
  return key;
}

// Symmetrize the Cartan matrix and test positive definiteness; finite type
// generalized Cartan matrices are exactly the positive definite ones.
void check_finite_type(const IntMat& a) {
  const int r = static_cast<int>(a.rows());
  if (a.cols() != r || r == 0) throw DatumError("Cartan matrix must be square and nonempty");
  for (int i = 0; i < r; ++i) {
    if (a(i, i) != 2) throw DatumError("Cartan diagonal must be 2");
    for (int j = 0; j < r; ++j) {
      if (i == j) continue;
      if (a(i, j) > 0) throw DatumError("Cartan off-diagonal must be nonpositive");
      if ((a(i, j) == 0) != (a(j, i) == 0)) throw DatumError("Cartan zero pattern must be symmetric");
    }
  }
  // Assign symmetrizer d with d_i a_ij = d_j a_ji by walking the graph.
  std::vector<Rational> d(r, Rational(0));
  for (int start = 0; start < r; ++start) {
    if (!is_zero(d[start])) continue;
    d[start] = 1;
    std::vector<int> stack{start};
    while (!stack.empty()) {
      int i = stack.back();
      stack.pop_back();
      for (int j = 0; j < r; ++j) {
        if (i == j || a(i, j) == 0) continue;
        Rational want = d[i] * Rational(static_cast<long>(a(i, j))) / Rational(static_cast<long>(a(j, i)));
        if (is_zero(d[j])) {
          d[j] = want;
          stack.push_back(j);
        } else if (d[j] != want) {
          throw DatumError("Cartan matrix is not symmetrizable");
        }
      }
    }
  }
  DenseMat<Rational> s(r, r);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) s(i, j) = d[i] * Rational(static_cast<long>(a(i, j)));
  // Leading principal minors via fraction-free elimination.
  DenseMat<Rational> m = s;
  Rational minor(1);
  for (int k = 0; k < r; ++k) {
    if (is_zero(m(k, k))) throw DatumError("Cartan matrix is not of finite type");
    minor *= m(k, k);
    if (sgn(minor) <= 0) throw DatumError("Cartan matrix is not of finite type");
    for (int i = k + 1; i < r; ++i) {
      Rational f = m(i, k) / m(k, k);
      for (int j = k; j < r; ++j) m(i, j) -= f * m(k, j);
    }
  }
}

DenseMat<Rational> rational_inverse(const std::vector<IntVec>& columns) {
  const int n = static_cast<int>(columns.size());
  DenseMat<Rational> m(n, 2 * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      m(i, j) = Rational(static_cast<long>(columns[j](i)));
      m(i, n + j) = (i == j) ? 1 : 0;
    }
  for (int k = 0; k < n; ++k) {
    int piv = -1;
    for (int i = k; i < n; ++i)
      if (!is_zero(m(i, k))) {
        piv = i;
        break;
      }
    if (piv < 0) throw DatumError("simple coroots do not span the lattice rationally");
    if (piv != k) m.row(k).swap(m.row(piv));
    Rational inv = Rational(1) / m(k, k);
    for (int j = 0; j < 2 * n; ++j) m(k, j) *= inv;
    for (int i = 0; i < n; ++i) {
      if (i == k || is_zero(m(i, k))) continue;
      Rational f = m(i, k);
      for (int j = 0; j < 2 * n; ++j) m(i, j) -= f * m(k, j);
    }
  }
  return m.block(0, n, n, n);
}

}  // namespace

DenseVec<Rational> RootDatum::coroot_coords(const IntVec& v) const {
  DenseVec<Rational> out(rank);
  for (int i = 0; i < rank; ++i) {
    Rational acc(0);
    for (int j = 0; j < lattice_rank; ++j) acc += coroot_basis_inv(i, j) * Rational(static_cast<long>(v(j)));
    out(i) = acc;
  }
  return out;
}

bool RootDatum::is_positive_coroot_combination(const IntVec& v) const {
  auto c = coroot_coords(v);
  bool nonzero = false;
  for (int i = 0; i < rank; ++i) {
    if (sgn(c(i)) < 0) return false;
    if (sgn(c(i)) > 0) nonzero = true;
  }
  return nonzero;
}

bool RootDatum::is_negative_coroot_combination(const IntVec& v) const {
  IntVec neg = -v;
  return is_positive_coroot_combination(neg);
}

RootDatum build_datum(const DatumSpec& spec) {
  check_finite_type(spec.cartan);
  RootDatum d;
  d.name = spec.name;
  d.rank = static_cast<int>(spec.cartan.rows());
  d.cartan = spec.cartan;
  d.adjoint = !spec.coroot_rows.has_value();

  if (d.adjoint) {
    d.lattice_rank = d.rank;
    for (int j = 0; j < d.rank; ++j) {
      IntVec alpha = spec.cartan.row(j).transpose();
      d.simple_coroots.push_back(alpha);
      IntVec check = IntVec::Zero(d.rank);
      check(j) = 1;
      d.simple_roots.push_back(check);
      IntVec omega = IntVec::Zero(d.rank);
      omega(j) = 1;
      d.fundamental_coweights.push_back(omega);
    }
  } else {
    const IntMat& rows = *spec.coroot_rows;
    if (rows.rows() != d.rank) throw DatumError("coroot matrix must have one row per simple root");
    d.lattice_rank = static_cast<int>(rows.cols());
    if (d.lattice_rank != d.rank) throw DatumError("semisimple data require lattice rank = rank");
    for (int j = 0; j < d.rank; ++j) d.simple_coroots.push_back(rows.row(j).transpose());
    // Solve <alpha_i, check_j> = A_ij for the dual roots; they must be integral.
    std::vector<IntVec> cols = d.simple_coroots;
    DenseMat<Rational> inv = rational_inverse(cols);  // inverse of (columns = coroots)
    for (int j = 0; j < d.rank; ++j) {
      IntVec check(d.lattice_rank);
      for (int k = 0; k < d.lattice_rank; ++k) {
        Rational acc(0);
        for (int i = 0; i < d.rank; ++i) acc += Rational(static_cast<long>(d.cartan(i, j))) * inv(i, k);
        if (acc.get_den() != 1) throw DatumError("pairing data are not integral");
        check(k) = static_cast<std::int64_t>(acc.get_num().get_si());
      }
      d.simple_roots.push_back(check);
    }
  }

  for (int i = 0; i < d.rank; ++i)
    for (int j = 0; j < d.rank; ++j)
      if (d.simple_coroots[i].dot(d.simple_roots[j]) != d.cartan(i, j))
        throw DatumError("pairing does not match the Cartan matrix");

  d.embedding = IntMat(d.rank, d.lattice_rank);
  for (int j = 0; j < d.rank; ++j) d.embedding.row(j) = d.simple_roots[j].transpose();

  for (int j = 0; j < d.rank; ++j) {
    IntMat s = IntMat::Identity(d.lattice_rank, d.lattice_rank);
    s -= d.simple_coroots[j] * d.simple_roots[j].transpose();
    d.reflection.push_back(s);
    if ((s * s) != IntMat::Identity(d.lattice_rank, d.lattice_rank))
      throw DatumError("simple reflection is not an involution");
  }

  d.coroot_basis_inv = rational_inverse(d.simple_coroots);
  return d;
}

RootDatum preset_datum(const std::string& name) {
  DatumSpec spec;
  spec.name = name;
  if (name == "PGL2") {
    spec.cartan = IntMat(1, 1);
    spec.cartan << 2;
  } else if (name == "PGL3") {
    spec.cartan = IntMat(2, 2);
    spec.cartan << 2, -1, -1, 2;
  } else if (name == "SL2") {
    spec.cartan = IntMat(1, 1);
    spec.cartan << 2;
    IntMat rows(1, 1);
    rows << 1;  // lattice generated by the coroot itself, index 2 in the adjoint lattice
    spec.coroot_rows = rows;
  } else {
    throw DatumError("unknown preset: " + name);
  }
  return build_datum(spec);
}

DatumSpec parse_datum_file(const std::string& text) {
  std::istringstream in(text);
  DatumSpec spec;
  std::string tok;
  bool have_cartan = false, have_lattice = false;
  while (in >> tok) {
    if (tok == "name") {
      if (!(in >> spec.name)) throw DatumError("datum file: missing name");
    } else if (tok == "cartan") {
      int r = 0;
      if (!(in >> r) || r <= 0) throw DatumError("datum file: bad cartan rank");
      spec.cartan = IntMat(r, r);
      for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j)
          if (!(in >> spec.cartan(i, j))) throw DatumError("datum file: truncated cartan matrix");
      have_cartan = true;
    } else if (tok == "lattice") {
      std::string kind;
      if (!(in >> kind)) throw DatumError("datum file: missing lattice");
      if (kind == "adjoint") {
        spec.coroot_rows.reset();
      } else {
        if (!have_cartan) throw DatumError("datum file: lattice before cartan");
        int n = std::stoi(kind);
        IntMat rows(spec.cartan.rows(), n);
        for (Eigen::Index i = 0; i < rows.rows(); ++i)
          for (int j = 0; j < n; ++j)
            if (!(in >> rows(i, j))) throw DatumError("datum file: truncated lattice matrix");
        spec.coroot_rows = rows;
      }
      have_lattice = true;
    } else {
      throw DatumError("datum file: unknown field '" + tok + "'");
    }
  }
  if (spec.name.empty() || !have_cartan || !have_lattice) throw DatumError("datum file: need name, cartan, lattice");
  return spec;
}

WeylGroup::WeylGroup(const RootDatum& datum, std::size_t cap) : rank_(datum.rank) {
  const int n = datum.lattice_rank;
  WeylElement id{IntMat::Identity(n, n), {}};
  elements_.push_back(id);
  by_matrix_[matrix_key(id.matrix)] = 0;

  std::size_t cursor = 0;
  while (cursor < elements_.size()) {
    // Take a stable snapshot index; elements_ grows while iterating.
    WeylElement w = elements_[cursor];
    for (int j = 0; j < rank_; ++j) {
      IntMat m = datum.reflection[j] * w.matrix;  // w, then s_j
      auto key = matrix_key(m);
      if (by_matrix_.count(key)) continue;
      if (elements_.size() >= cap) throw DatumError("Weyl enumeration safety cap exceeded");
      WeylElement next{m, w.word};
      next.word.push_back(j);
      by_matrix_[key] = static_cast<int>(elements_.size());
      elements_.push_back(std::move(next));
    }
    ++cursor;
  }

  // Canonical order is (length, lex word); BFS discovery order already
  // satisfies it, the sort pins it.
  std::stable_sort(elements_.begin(), elements_.end(), [](const WeylElement& a, const WeylElement& b) {
    if (a.length() != b.length()) return a.length() < b.length();
    return a.word < b.word;
  });
  by_matrix_.clear();
  for (int i = 0; i < size(); ++i) by_matrix_[matrix_key(elements_[i].matrix)] = i;

  simple_.assign(rank_, -1);
  for (int j = 0; j < rank_; ++j) simple_[j] = index_of(datum.reflection[j]);

  inverse_.assign(size(), -1);
  for (int a = 0; a < size(); ++a) {
    for (int b = 0; b < size(); ++b) {
      if (elements_[b].matrix * elements_[a].matrix == id.matrix) {
        inverse_[a] = b;
        break;
      }
    }
    if (inverse_[a] < 0) throw DatumError("group closure failure");
  }
}

int WeylGroup::product(int a, int b) const { return index_of(elements_.at(b).matrix * elements_.at(a).matrix); }

int WeylGroup::index_of(const IntMat& m) const {
  auto it = by_matrix_.find(matrix_key(m));
  if (it == by_matrix_.end()) throw DatumError("matrix is not a Weyl group element");
  return it->second;
}

IntVec act(const WeylElement& w, const IntVec& v) {
  if (w.matrix.cols() != v.size()) throw DatumError("dimension mismatch in Weyl action");
  return w.matrix * v;
}

std::vector<CorootReflection> positive_coroots(const RootDatum& datum, const WeylGroup& g) {
  struct Entry {
    IntVec coroot;
    IntVec root;
  };
  std::vector<Entry> found;
  auto seen = [&](const IntVec& v) {
    for (const auto& e : found)
      if (e.coroot == v) return true;
    return false;
  };
  std::vector<Entry> queue;
  for (int j = 0; j < datum.rank; ++j) queue.push_back({datum.simple_coroots[j], datum.simple_roots[j]});
  while (!queue.empty()) {
    Entry e = queue.back();
    queue.pop_back();
    if (seen(e.coroot)) continue;
    found.push_back(e);
    for (int j = 0; j < datum.rank; ++j) {
      IntVec c = datum.reflection[j] * e.coroot;
      IntVec r = datum.reflection[j].transpose() * e.root;
      if (datum.is_positive_coroot_combination(c) && !seen(c)) queue.push_back({c, r});
    }
  }
  // Deterministic order: by height, then coroot coordinates (so that the
  // simple coroots come first, in index order).
  std::sort(found.begin(), found.end(), [&](const Entry& a, const Entry& b) {
    auto ca = datum.coroot_coords(a.coroot), cb = datum.coroot_coords(b.coroot);
    Rational ha(0), hb(0);
    for (int i = 0; i < datum.rank; ++i) {
      ha += ca(i);
      hb += cb(i);
    }
    if (ha != hb) return ha < hb;
    for (int i = 0; i < datum.rank; ++i)
      if (ca(i) != cb(i)) return ca(i) > cb(i);
    return false;
  });
  std::vector<CorootReflection> out;
  const int n = datum.lattice_rank;
  for (const auto& e : found) {
    IntMat t = IntMat::Identity(n, n) - e.coroot * e.root.transpose();
    CorootReflection cr{e.coroot, e.root, g.index_of(t)};
    if (t * e.coroot != -e.coroot) throw DatumError("reflection does not negate its coroot");
    out.push_back(std::move(cr));
  }
  return out;
}

std::vector<int> coset_min_reps(const WeylGroup& g, int s) {
  std::vector<int> reps;
  const int gen = g.simple(s);
  for (int w = 0; w < g.size(); ++w)
    if (g.length(w) < g.length(g.product(w, gen))) reps.push_back(w);
  return reps;
}

bool length_additive(const WeylGroup& g, int v, int w) {
  return g.length(g.product(v, w)) == g.length(v) + g.length(w);
}

std::string word_name(const WeylElement& w) {
  if (w.word.empty()) return "e";
  std::string out;
  for (std::size_t k = 0; k < w.word.size(); ++k) {
    if (k) out += "*";
    out += "s" + std::to_string(w.word[k] + 1);
  }
  return out;
}

}  // namespace sbim
