#include "sbim/hecke.hpp"

#include <stdexcept>

namespace sbim {

DeltaCharacter delta_char_bott_samelson(const WeylGroup& g, const std::vector<int>& word) {
  DeltaCharacter ch;
  ch.mult[g.identity()] = 1;
  for (int letter : word) {
    int s = g.simple(letter);
    DeltaCharacter next;
    for (int u = 0; u < g.size(); ++u) {
      std::uint64_t m = ch.of(u) + ch.of(g.product(u, s));
      if (m) next.mult[u] = m;
    }
    ch = std::move(next);
  }
  return ch;
}

DeltaCharacter subword_char(const WeylGroup& g, const std::vector<int>& word, std::size_t cap) {
  if (word.size() > cap) throw std::runtime_error("subword_char: word length exceeds the enumeration cap");
  DeltaCharacter ch;
  const std::size_t r = word.size();
  for (std::size_t mask = 0; mask < (std::size_t{1} << r); ++mask) {
    int u = g.identity();
    for (std::size_t k = 0; k < r; ++k)
      if (mask & (std::size_t{1} << k)) u = g.product(u, g.simple(word[k]));
    ++ch.mult[u];
  }
  return ch;
}

std::optional<ConvSymbol> convolve_standards(const WeylGroup& g, SymbolKind kind, int v, int w) {
  if (kind == SymbolKind::SimpleTilting) throw std::invalid_argument("convolve_standards: need a standard kind");
  if (!length_additive(g, v, w)) return std::nullopt;
  return ConvSymbol{kind, g.product(v, w)};
}

ConvolutionExpr simplify_inverse_pairs(const WeylGroup& g, ConvolutionExpr expr) {
  bool changed = true;
  while (changed) {
    changed = false;
    // Inverse pairs first.
    for (std::size_t k = 0; k + 1 < expr.size(); ++k) {
      const ConvSymbol& a = expr[k];
      const ConvSymbol& b = expr[k + 1];
      bool std_costd = a.kind == SymbolKind::Standard && b.kind == SymbolKind::Costandard &&
                       b.index == g.inverse(a.index);
      bool costd_std = a.kind == SymbolKind::Costandard && b.kind == SymbolKind::Standard &&
                       a.index == g.inverse(b.index);
      if (std_costd || costd_std) {
        expr[k] = ConvSymbol{SymbolKind::Standard, g.identity()};
        expr.erase(expr.begin() + static_cast<std::ptrdiff_t>(k) + 1);
        changed = true;
        break;
      }
    }
    if (changed) continue;
    // Unit elimination.
    for (std::size_t k = 0; k < expr.size(); ++k) {
      if (expr[k].kind != SymbolKind::SimpleTilting && expr[k].index == g.identity() && expr.size() > 1) {
        expr.erase(expr.begin() + static_cast<std::ptrdiff_t>(k));
        changed = true;
        break;
      }
    }
  }
  if (expr.empty()) expr.push_back(ConvSymbol{SymbolKind::Standard, g.identity()});
  return expr;
}

bool localized_block(const RootSystem& rs, int w, int v, int wall) {
  int t = rs.positives.at(wall).reflection;
  return v == w || v == rs.weyl.product(w, t);
}

}  // namespace sbim
