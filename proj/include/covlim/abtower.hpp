#pragma once

// Mittag-Leffler decisions for inverse sequences of finitely generated free
// abelian groups Z^{n_1} <- Z^{n_2} <- ... given by integer bond matrices.

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "covlim/lattice.hpp"

namespace covlim {

/// Levels Z^{ranks[i]}; bonds[i] maps level i+1 to level i (ranks[i] x ranks[i+1]).
struct AbelianTower {
  std::vector<std::size_t> ranks;
  std::vector<IntMatrix> bonds;
  /// Declares that the bond pattern observed at the horizon repeats forever.
  bool stationary = false;

  std::size_t levels() const { return ranks.size(); }

  void validate() const {
    if (ranks.empty()) throw input_error("abelian tower needs at least one level");
    if (bonds.size() + 1 < ranks.size()) throw input_error("abelian tower is missing bonds");
    for (std::size_t i = 0; i + 1 < ranks.size(); ++i)
      if (bonds[i].rows() != ranks[i] || bonds[i].cols() != ranks[i + 1])
        throw input_error("bond " + std::to_string(i + 1) + " has wrong dimensions");
  }

  static AbelianTower constant(const IntMatrix& a, std::size_t levels) {
    AbelianTower t;
    t.ranks.assign(levels, a.rows());
    t.bonds.assign(levels - 1, a);
    t.stationary = true;
    return t;
  }
};

enum class MLStatus { ML, NotML, ObservedStable, Undetermined };

inline std::string to_string(MLStatus s) {
  switch (s) {
    case MLStatus::ML: return "ML";
    case MLStatus::NotML: return "NotML";
    case MLStatus::ObservedStable: return "ObservedStable";
    case MLStatus::Undetermined: return "Undetermined";
  }
  return "?";
}

/// Per-level evidence, levels 1-based.
struct LevelWitness {
  std::size_t level = 1;
  /// Im(level j -> level) is constant from j = stable_from on (as far as checked).
  std::optional<std::size_t> stable_from;
  /// Im(level j2 -> level) is strictly smaller than Im(level j1 -> level).
  std::optional<std::pair<std::size_t, std::size_t>> descent;
  std::optional<Integer> descent_index;
};

struct MLVerdict {
  MLStatus status = MLStatus::Undetermined;
  /// "stationary-exact", "epimorphic-bonds", "observed" or "unsupported".
  std::string proof;
  std::size_t horizon = 0;
  /// For ObservedStable: the largest level index any chain needed to settle.
  std::size_t observed_stable_at = 0;
  bool stationary_declared = false;
  std::vector<LevelWitness> levels;
};

/// Im(A^0) ⊇ Im(A^1) ⊇ ... ⊇ Im(A^count-1).
inline std::vector<Lattice> power_image_chain(const IntMatrix& a, std::size_t count) {
  std::vector<Lattice> chain;
  IntMatrix p = IntMatrix::identity(a.rows());
  for (std::size_t k = 0; k < count; ++k) {
    Lattice L = image_lattice(p);
    if (!chain.empty() && !chain.back().contains(L))
      throw std::logic_error("image chain is not decreasing");
    chain.push_back(std::move(L));
    p = p * a;
  }
  return chain;
}

/// Exact decision for the constant tower Z^n <-A- Z^n <-A- ... .
///
/// rank Im(A^k) settles by k = n. From then on A maps Im(A^k) onto
/// Im(A^{k+1}) injectively, so [Im(A^k) : Im(A^{k+1})] is the constant
/// |det| of A on the eventual image: 1 means the chain has stopped, anything
/// larger means it descends forever.
inline MLVerdict ml_decide_stationary(const IntMatrix& a) {
  if (a.rows() != a.cols()) throw input_error("stationary decision needs a square matrix");
  const std::size_t n = a.rows();
  auto chain = power_image_chain(a, n + 2);

  MLVerdict v;
  v.proof = "stationary-exact";
  v.stationary_declared = true;
  v.horizon = n + 2;
  LevelWitness w;
  auto idx = lattice_index(chain[n], chain[n + 1]);
  if (!idx) throw std::logic_error("rank of the power image chain did not settle by k = n");
  if (*idx == 1) {
    std::size_t k = 0;
    while (!(chain[k] == chain[k + 1])) ++k;
    v.status = MLStatus::ML;
    w.stable_from = k + 1;  // Im(level k+1 -> level 1) = Im(A^k)
  } else {
    v.status = MLStatus::NotML;
    w.descent = std::make_pair(n + 1, n + 2);
    w.descent_index = *idx;
  }
  v.levels.push_back(w);
  return v;
}

/// Im(level j -> level i) for j = i..horizon (1-based levels).
inline std::vector<Lattice> image_chain(const AbelianTower& t, std::size_t level, std::size_t horizon) {
  std::vector<Lattice> chain;
  IntMatrix composite = IntMatrix::identity(t.ranks[level - 1]);
  for (std::size_t j = level; j <= horizon; ++j) {
    Lattice L = image_lattice(composite);
    if (!chain.empty() && !chain.back().contains(L))
      throw std::logic_error("image chain is not decreasing");
    chain.push_back(std::move(L));
    if (j < horizon) composite = composite * t.bonds[j - 1];
  }
  return chain;
}

inline bool bonds_constant(const AbelianTower& t, std::size_t horizon) {
  for (std::size_t i = 1; i + 1 < horizon; ++i)
    if (!(t.bonds[i] == t.bonds[0])) return false;
  return horizon >= 2 && t.bonds[0].rows() == t.bonds[0].cols();
}

/// Observes the tower up to `horizon`. Exact when the tower is declared
/// stationary and its observed bonds agree, or when every bond is onto.
inline MLVerdict ml_observe(const AbelianTower& t, std::size_t horizon) {
  t.validate();
  if (horizon < 1 || horizon > t.levels()) throw input_error("horizon exceeds the available levels");

  if (t.stationary && bonds_constant(t, horizon)) {
    MLVerdict s = ml_decide_stationary(t.bonds[0]);
    MLVerdict v;
    v.status = s.status;
    v.proof = s.proof;
    v.horizon = horizon;
    v.stationary_declared = true;
    for (std::size_t i = 1; i <= horizon; ++i) {
      LevelWitness w = s.levels.front();
      w.level = i;
      if (w.stable_from) *w.stable_from += i - 1;
      if (w.descent) w.descent = std::make_pair(w.descent->first + i - 1, w.descent->second + i - 1);
      v.levels.push_back(w);
    }
    return v;
  }

  MLVerdict v;
  v.horizon = horizon;
  v.stationary_declared = t.stationary;
  bool all_onto = horizon >= 2;
  for (std::size_t i = 0; i + 1 < horizon; ++i)
    if (!(image_lattice(t.bonds[i]) == Lattice::whole(t.ranks[i]))) all_onto = false;

  bool all_settled = true;
  for (std::size_t i = 1; i < horizon; ++i) {
    auto chain = image_chain(t, i, horizon);
    LevelWitness w;
    w.level = i;
    std::size_t k = chain.size() - 1;
    while (k > 0 && chain[k - 1] == chain[k]) --k;
    if (k + 1 < chain.size()) {
      w.stable_from = i + k;
      v.observed_stable_at = std::max(v.observed_stable_at, i + k);
    } else {
      all_settled = false;
      auto idx = lattice_index(chain[k - 1], chain[k]);
      w.descent = std::make_pair(i + k - 1, i + k);
      if (idx) w.descent_index = *idx;
    }
    v.levels.push_back(w);
  }

  if (all_onto) {
    v.status = MLStatus::ML;
    v.proof = "epimorphic-bonds";
  } else if (all_settled && horizon >= 2) {
    v.status = MLStatus::ObservedStable;
    v.proof = "observed";
  } else {
    v.status = MLStatus::Undetermined;
    v.proof = "observed";
  }
  return v;
}

enum class Lim1 { Trivial, Nontrivial, Unknown };

inline std::string to_string(Lim1 l) {
  switch (l) {
    case Lim1::Trivial: return "Trivial";
    case Lim1::Nontrivial: return "Nontrivial";
    case Lim1::Unknown: return "Unknown";
  }
  return "?";
}

/// ML gives a trivial lim^1; for countable levels (always the case here) the
/// converse holds, so a certified failure gives a nontrivial one.
inline Lim1 lim1_verdict(const MLVerdict& v) {
  switch (v.status) {
    case MLStatus::ML: return Lim1::Trivial;
    case MLStatus::NotML: return Lim1::Nontrivial;
    case MLStatus::ObservedStable: return v.stationary_declared ? Lim1::Trivial : Lim1::Unknown;
    case MLStatus::Undetermined: return Lim1::Unknown;
  }
  return Lim1::Unknown;
}

}  // namespace covlim
