#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "sbim/root_datum.hpp"

namespace sbim {

/// Multiset of Weyl elements (by group index): standard-filtration
/// multiplicities of a tilting-type object.
struct DeltaCharacter {
  std::map<int, std::uint64_t> mult;

  std::uint64_t total_mass() const {
    std::uint64_t m = 0;
    for (const auto& [w, c] : mult) m += c;
    return m;
  }
  std::uint64_t of(int w) const {
    auto it = mult.find(w);
    return it == mult.end() ? 0 : it->second;
  }
  friend bool operator==(const DeltaCharacter&, const DeltaCharacter&) = default;
};

/// Character of the Bott-Samelson object of a word, by the one-letter
/// recursion new(u) = old(u) + old(us).
DeltaCharacter delta_char_bott_samelson(const WeylGroup& g, const std::vector<int>& word);

/// Independent oracle: multiply out all 2^r subwords.
DeltaCharacter subword_char(const WeylGroup& g, const std::vector<int>& word, std::size_t cap = 20);

enum class SymbolKind { Standard, Costandard, SimpleTilting };

struct ConvSymbol {
  SymbolKind kind = SymbolKind::Standard;
  int index = 0;  // group index; for SimpleTilting, the simple-reflection index

  friend bool operator==(const ConvSymbol&, const ConvSymbol&) = default;
};

using ConvolutionExpr = std::vector<ConvSymbol>;

/// Standard * standard (or costandard * costandard) when lengths add;
/// nullopt encodes LengthNotAdditive (a value, not an error).
std::optional<ConvSymbol> convolve_standards(const WeylGroup& g, SymbolKind kind, int v, int w);

/// Cancel adjacent inverse pairs (standard then costandard of the inverse,
/// in either order) to the unit, and drop unit factors. Idempotent.
ConvolutionExpr simplify_inverse_pairs(const WeylGroup& g, ConvolutionExpr expr);

/// Can Hom between localized standards indexed by w and v be nonzero?
/// True exactly on the blocks v in {w, wt}.
bool localized_block(const RootSystem& rs, int w, int v, int wall);

}  // namespace sbim
