#pragma once

#include <string>
#include <vector>

#include "sbim/root_datum.hpp"
#include "sbim/smith.hpp"

namespace sbim {

/// Character tuple of the torsion part of Q = lattice/(u-1)lattice:
/// residues psi_i modulo the invariant factors d_i.
using TorsionChar = std::vector<std::int64_t>;

/// The fixed subscheme of u on the dual torus, described by the Smith normal
/// form of (u - 1): free rank, invariant factors, and the image of every
/// positive coroot in Q.
struct FixedLocusDescriptor {
  int element = 0;  // group index of u
  int free_rank = 0;
  std::vector<std::int64_t> invariant_factors;  // the d_i > 1, in divisibility order
  struct Image {
    IntVec free;                        // coordinates in the free part
    std::vector<std::int64_t> torsion;  // residues mod the invariant factors
  };
  std::vector<Image> coroot_images;  // one per positive coroot, in their canonical order
  bool char_p_flag = false;          // an invariant factor shares a factor with the characteristic

  IntMat transform;                // row transform U of the Smith normal form of (u-1)
  std::vector<std::int64_t> diag;  // all nonzero diagonal entries (including 1s)

  Image image_of(const IntVec& v) const;
  std::int64_t component_count() const;
};

FixedLocusDescriptor fixed_locus(const RootSystem& rs, int u, std::uint32_t char_p = 0);

std::vector<TorsionChar> torsion_characters(const FixedLocusDescriptor& fl);

/// Does e^(beta') - 1 vanish identically on the component indexed by psi?
bool component_on_wall(const FixedLocusDescriptor& fl, const FixedLocusDescriptor::Image& image,
                       const TorsionChar& psi);
bool component_on_wall(const RootSystem& rs, const FixedLocusDescriptor& fl, int wall, const TorsionChar& psi);

enum class ComponentStatus { Killed, SurvivesOnWall, SurvivesOffWall };

struct ComponentVerdict {
  TorsionChar psi;
  ComponentStatus status = ComponentStatus::Killed;
  int killer_wall = -1;  // a wall whose function vanishes on the component, when killed
};

struct PairReport {
  int w = 0, v = 0;
  int u = 0;            // w^-1 v
  bool block_pair = false;  // v in {w, wt} for the allowed wall's reflection
  bool char_p_flag = false;
  std::vector<ComponentVerdict> components;

  bool survives() const {
    for (const auto& c : components)
      if (c.status != ComponentStatus::Killed) return true;
    return false;
  }
};

/// Wall-separation report for one allowed wall: for every ordered pair of
/// distinct Weyl elements, the components of the graph intersection and
/// whether right localization away from the other walls kills them.
struct SeparationReport {
  int wall = 0;
  std::uint32_t characteristic = 0;
  std::vector<PairReport> pairs;
  bool pass = false;  // all survivors sit on the allowed wall inside {w, wt} pairs

  struct Violation {
    int w, v;
    TorsionChar psi;
    std::string reason;
  };
  std::vector<Violation> violations;
};

SeparationReport separation_check(const RootSystem& rs, int wall, std::uint32_t char_p = 0);

/// F_q point count of the fixed subscheme of u: Smith-normal-form formula
/// next to a brute-force enumeration of characters into Z/(q-1).
struct FqCount {
  std::int64_t formula = 0;
  std::int64_t brute = 0;
};

FqCount fq_point_count(const RootSystem& rs, int u, std::int64_t q, std::int64_t cap = 4'000'000);

}  // namespace sbim
