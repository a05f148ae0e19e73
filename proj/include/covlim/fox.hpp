#pragma once

// Free differential calculus pushed into the integral group ring of Z^n.
// For w in F', w lies in F'' exactly when every abelianized Fox derivative
// of w vanishes (Magnus embedding). Independent of the grid route in grid.hpp.

#include <cstdint>
#include <map>
#include <vector>

#include "covlim/bigint.hpp"
#include "covlim/word.hpp"

namespace covlim {

/// Laurent polynomial in t_1..t_n with exact coefficients, keyed by exponent.
using LaurentPoly = std::map<std::vector<std::int64_t>, Integer>;

/// Abelianized Fox derivatives d w / d x_j for j = 1..rank.
inline std::vector<LaurentPoly> abelianized_fox_derivatives(const Word& w) {
  std::vector<LaurentPoly> d(w.rank());
  std::vector<std::int64_t> prefix(w.rank(), 0);
  auto add = [](LaurentPoly& p, const std::vector<std::int64_t>& mono, int c) {
    auto [it, fresh] = p.try_emplace(mono, 0);
    it->second += c;
    if (it->second == 0) p.erase(it);
  };
  for (Letter l : w.letters()) {
    const int j = std::abs(l) - 1;
    if (l > 0) {
      // d(u x)/dx = du/dx + u
      add(d[j], prefix, 1);
      ++prefix[j];
    } else {
      // d(u X)/dx = du/dx - u X
      --prefix[j];
      add(d[j], prefix, -1);
    }
  }
  return d;
}

inline bool fox_oracle_second_derived(const Word& w) {
  if (!is_in_first_derived(w)) return false;
  for (const auto& p : abelianized_fox_derivatives(w))
    if (!p.empty()) return false;
  return true;
}

}  // namespace covlim
