#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sbim/scalars.hpp"

namespace sbim {

/// Thrown for invalid root-datum input (non finite type, inconsistent pairing).
struct DatumError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Element of the Weyl group: integer matrix acting on the coweight lattice
/// plus a canonical reduced word. Words read left to right: the word
/// {i1, ..., ik} is "apply s_{i1} first", so its matrix is S_{ik} ... S_{i1}.
struct WeylElement {
  IntMat matrix;
  std::vector<int> word;

  int length() const { return static_cast<int>(word.size()); }
  friend bool operator==(const WeylElement& a, const WeylElement& b) { return a.matrix == b.matrix; }
};

struct DatumSpec {
  std::string name;
  IntMat cartan;
  /// Rows are the simple coroots in the chosen basis of the lattice;
  /// unset means adjoint (lattice basis = fundamental coweights).
  std::optional<IntMat> coroot_rows;
};

struct RootDatum {
  std::string name;
  int rank = 0;          // number of simple roots
  int lattice_rank = 0;  // dimension of the coweight lattice
  IntMat cartan;
  std::vector<IntVec> simple_coroots;  // coordinates of alpha_j in the lattice basis
  std::vector<IntVec> simple_roots;    // coordinates of the dual root in the dual basis
  bool adjoint = false;
  std::vector<IntVec> fundamental_coweights;  // adjoint data only: the basis vectors
  IntMat embedding;  // row j = pairing with the j-th simple root: lattice -> adjoint lattice
  std::vector<IntMat> reflection;         // simple reflection matrices on the lattice
  DenseMat<Rational> coroot_basis_inv;    // inverse of (columns = simple coroots)

  /// Coordinates of a lattice vector over the simple coroots.
  DenseVec<Rational> coroot_coords(const IntVec& v) const;
  bool is_positive_coroot_combination(const IntVec& v) const;
  bool is_negative_coroot_combination(const IntVec& v) const;
};

RootDatum build_datum(const DatumSpec& spec);
RootDatum preset_datum(const std::string& name);  // PGL2, PGL3, SL2
DatumSpec parse_datum_file(const std::string& text);

/// The full Weyl group, enumerated by closure under the simple reflections.
/// Elements are canonically ordered by (length, lexicographic word) and
/// identified by their integer matrices.
class WeylGroup {
 public:
  explicit WeylGroup(const RootDatum& datum, std::size_t cap = 200000);

  int size() const { return static_cast<int>(elements_.size()); }
  const WeylElement& at(int i) const { return elements_.at(i); }
  const std::vector<WeylElement>& elements() const { return elements_; }
  int identity() const { return 0; }
  int simple(int j) const { return simple_.at(j); }
  /// Product in left-to-right composition order: "apply a, then b".
  int product(int a, int b) const;
  int inverse(int a) const { return inverse_.at(a); }
  int index_of(const IntMat& m) const;
  int longest() const { return size() - 1; }
  int length(int a) const { return elements_.at(a).length(); }
  int rank() const { return rank_; }

 private:
  int rank_ = 0;
  std::vector<WeylElement> elements_;
  std::vector<int> simple_;
  std::vector<int> inverse_;
  std::map<std::vector<std::int64_t>, int> by_matrix_;
};

IntVec act(const WeylElement& w, const IntVec& v);

struct CorootReflection {
  IntVec coroot;
  IntVec root;     // covector coordinates
  int reflection;  // group index of the reflection
};

std::vector<CorootReflection> positive_coroots(const RootDatum& datum, const WeylGroup& g);

/// Minimal-length representatives of the cosets w<s>, i.e. all w with
/// l(w) < l(ws).
std::vector<int> coset_min_reps(const WeylGroup& g, int s);
bool length_additive(const WeylGroup& g, int v, int w);

/// Root datum together with its enumerated Weyl group and positive coroots.
struct RootSystem {
  RootDatum datum;
  WeylGroup weyl;
  std::vector<CorootReflection> positives;

  explicit RootSystem(RootDatum d) : datum(std::move(d)), weyl(datum), positives(positive_coroots(datum, weyl)) {}

  int wall_count() const { return static_cast<int>(positives.size()); }
};

inline RootSystem preset_system(const std::string& name) { return RootSystem(preset_datum(name)); }

/// One-line display of a Weyl element, e.g. "s1*s2" or "e".
std::string word_name(const WeylElement& w);

}  // namespace sbim
