#pragma once

// Covering towers over a polyhedral expansion: per-level groups, subgroups
// (the fundamental groups of the covering spaces) and bonding maps.

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "covlim/grid.hpp"
#include "covlim/lattice.hpp"
#include "covlim/stallings.hpp"
#include "covlim/word.hpp"

namespace covlim {

enum class BaseKind {
  WedgeExpansion,  // Hawaiian earring approximated by finite wedges
  TowerComplete,   // pi_1(X) is the inverse limit of the level groups
  CountablePi1,    // pi_1(X) countable; every level is pi_1(X) itself
};

inline std::string to_string(BaseKind b) {
  switch (b) {
    case BaseKind::WedgeExpansion: return "wedge";
    case BaseKind::TowerComplete: return "tower-complete";
    case BaseKind::CountablePi1: return "countable-pi1";
  }
  return "?";
}

enum class GroupKind { Free, Abelian };

/// Finitely generated subgroup of a free level.
struct FiniteGenSubgroup {
  CoreGraph core;
};

/// On an abelian level Z^n: the lattice itself. On a free level F_n: the
/// preimage of the lattice under abelianization F_n -> Z^n, which contains
/// F_n'. Kernels of homomorphisms to abelian groups are of this form.
struct LatticeSubgroup {
  Lattice lattice;
};

/// Subgroup of F_2' (the fundamental group of the planar integer grid) cut
/// out by the winding numbers around the first `squares` plaquettes.
struct GridCycleKernel {
  std::size_t squares = 0;
};

using Subgroup = std::variant<FiniteGenSubgroup, LatticeSubgroup, GridCycleKernel>;

/// Level i+1 -> level i.
using Bond = std::variant<FreeHom, IntMatrix>;

struct LevelSpec {
  std::size_t rank = 1;
  GroupKind kind = GroupKind::Free;
  Subgroup subgroup;
  /// Map from this level to the previous one; unused on the first level.
  std::optional<Bond> bond;
  std::string description;
};

struct CoveringTower {
  std::string name;
  BaseKind base = BaseKind::WedgeExpansion;
  std::vector<LevelSpec> levels;
  std::size_t horizon = 8;
  /// The pattern observed at the horizon is declared to continue forever.
  bool stationary = false;
  /// Every covering is regular: subgroups must be normal.
  bool regular = false;

  /// Levels actually examined.
  std::size_t effective_horizon() const { return std::min(horizon, levels.size()); }
  const LevelSpec& level(std::size_t i) const { return levels.at(i - 1); }
};

// ---------------------------------------------------------------------------

/// Abelian shadow of the bond from level i to level i-1 (1-based i >= 2).
inline IntMatrix bond_matrix(const CoveringTower& t, std::size_t i) {
  const Bond& b = *t.level(i).bond;
  if (const auto* h = std::get_if<FreeHom>(&b)) return abelianize(*h);
  return std::get<IntMatrix>(b);
}

inline bool bond_is_deletion(const CoveringTower& t, std::size_t i) {
  const Bond& b = *t.level(i).bond;
  if (const auto* h = std::get_if<FreeHom>(&b)) return h->is_deletion();
  const auto& m = std::get<IntMatrix>(b);
  return m == IntMatrix::deletion(m.cols(), m.rows());
}

inline bool bond_is_identity(const CoveringTower& t, std::size_t i) {
  const Bond& b = *t.level(i).bond;
  if (const auto* h = std::get_if<FreeHom>(&b)) return *h == FreeHom::identity(h->source_rank);
  const auto& m = std::get<IntMatrix>(b);
  return m == IntMatrix::identity(m.rows());
}

/// Word x_1^{v_1} ... x_n^{v_n} abelianizing to v.
inline Word word_of_vector(const IntVector& v) {
  Word w(static_cast<int>(v.size()));
  for (std::size_t k = 0; k < v.size(); ++k)
    w = multiply(w, power(Word::generator(static_cast<int>(k + 1), static_cast<int>(v.size())),
                          static_cast<std::int64_t>(v[k])));
  return w;
}

inline IntVector to_int_vector(const ExponentVector& e) { return IntVector(e.begin(), e.end()); }

inline bool grid_kernel_member(std::size_t squares, const Word& w) {
  if (w.rank() != 2) throw input_error("grid cycle kernels live in rank 2");
  if (!is_in_first_derived(w)) return false;
  GridPath p = lift_to_grid(w);
  for (const Plaquette& sq : plaquette_order(squares))
    if (winding_number(p, sq) != 0) return false;
  return true;
}

/// Membership of a word in the subgroup of a free level.
inline bool contains(const LevelSpec& lvl, const Word& w) {
  if (lvl.kind != GroupKind::Free) throw input_error("word membership on an abelian level");
  return std::visit(
      [&](const auto& s) -> bool {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, FiniteGenSubgroup>)
          return s.core.member(w);
        else if constexpr (std::is_same_v<S, LatticeSubgroup>)
          return s.lattice.contains(to_int_vector(exponent_vector(w)));
        else
          return grid_kernel_member(s.squares, w);
      },
      lvl.subgroup);
}

inline std::string describe(const Subgroup& s, GroupKind kind) {
  return std::visit(
      [&](const auto& x) -> std::string {
        using S = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<S, FiniteGenSubgroup>) {
          if (x.core.is_trivial()) return "trivial subgroup";
          if (x.core.is_whole_group()) return "whole group";
          auto cov = complete_to_covering(x.core);
          return "f.g. subgroup of rank " + std::to_string(x.core.subgroup_rank()) +
                 (cov ? ", index " + std::to_string(cov->index()) : ", infinite index");
        } else if constexpr (std::is_same_v<S, LatticeSubgroup>) {
          return (kind == GroupKind::Free ? "abelianization preimage of " : "") + to_string(x.lattice);
        } else {
          return "grid cycle kernel of the first " + std::to_string(x.squares) + " plaquettes";
        }
      },
      s);
}

// ---------------------------------------------------------------------------

struct Violation {
  std::size_t level = 0;  // 1-based; 0 for tower-wide problems
  std::string kind;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

namespace detail {

inline void check_shapes(const CoveringTower& t, std::size_t i, ValidationReport& rep) {
  const LevelSpec& L = t.level(i);
  auto bad = [&](const std::string& kind, const std::string& msg) { rep.violations.push_back({i, kind, msg}); };
  if (L.rank < 1) bad("shape", "rank must be positive");
  std::visit(
      [&](const auto& s) {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, FiniteGenSubgroup>) {
          if (L.kind != GroupKind::Free) bad("shape", "generator subgroups need a free level");
          if (static_cast<std::size_t>(s.core.rank()) != L.rank) bad("shape", "subgroup rank differs from level rank");
        } else if constexpr (std::is_same_v<S, LatticeSubgroup>) {
          if (s.lattice.ambient() != L.rank) bad("shape", "lattice lives in the wrong ambient rank");
        } else {
          if (L.kind != GroupKind::Free || L.rank != 2) bad("shape", "grid cycle kernels need a free level of rank 2");
        }
      },
      L.subgroup);
  if (i == 1) return;
  if (!L.bond) {
    bad("shape", "missing bond");
    return;
  }
  const std::size_t prev = t.level(i - 1).rank;
  if (const auto* h = std::get_if<FreeHom>(&*L.bond)) {
    if (L.kind != GroupKind::Free) bad("shape", "free homomorphism bond on an abelian level");
    if (static_cast<std::size_t>(h->source_rank) != L.rank || static_cast<std::size_t>(h->target_rank) != prev)
      bad("shape", "bond has wrong source or target rank");
  } else {
    const auto& m = std::get<IntMatrix>(*L.bond);
    if (L.kind != GroupKind::Abelian) bad("shape", "matrix bond on a free level");
    if (m.cols() != L.rank || m.rows() != prev) bad("shape", "bond matrix has wrong dimensions");
  }
  if (t.level(i - 1).kind != L.kind) bad("shape", "levels mix free and abelian groups");
}

/// bond(H_i) inside H_{i-1}; nullopt when the combination cannot be checked.
inline std::optional<std::string> containment_failure(const CoveringTower& t, std::size_t i, bool& checkable) {
  checkable = true;
  const LevelSpec& src = t.level(i);
  const LevelSpec& dst = t.level(i - 1);
  if (src.kind == GroupKind::Abelian) {
    const auto* a = std::get_if<LatticeSubgroup>(&src.subgroup);
    const auto* b = std::get_if<LatticeSubgroup>(&dst.subgroup);
    if (!a || !b) {
      checkable = false;
      return std::nullopt;
    }
    const IntMatrix& m = std::get<IntMatrix>(*src.bond);
    for (const auto& col : a->lattice.basis().columns())
      if (!b->lattice.contains(m * col))
        return "image of " + to_string(col) + " is " + to_string(m * col) + ", outside the level subgroup";
    return std::nullopt;
  }

  const FreeHom& h = std::get<FreeHom>(*src.bond);
  if (const auto* fg = std::get_if<FiniteGenSubgroup>(&src.subgroup)) {
    for (const Word& g : fg->core.generators()) {
      Word img = apply_hom(h, g);
      if (!contains(dst, img)) return "generator " + to_string(g) + " maps to " + to_string(img) + ", outside the level subgroup";
    }
    return std::nullopt;
  }
  if (const auto* lat = std::get_if<LatticeSubgroup>(&src.subgroup)) {
    // ab^-1(K) is normally generated by the commutators [x_a, x_b] together
    // with words realizing a basis of K.
    std::vector<Word> normal_gens;
    const int n = static_cast<int>(src.rank);
    for (int a = 1; a <= n; ++a)
      for (int b = a + 1; b <= n; ++b) normal_gens.push_back(commutator(Word::generator(a, n), Word::generator(b, n)));
    std::vector<Word> plain_gens;
    for (const auto& col : lat->lattice.basis().columns()) plain_gens.push_back(word_of_vector(col));

    if (const auto* dl = std::get_if<LatticeSubgroup>(&dst.subgroup)) {
      const IntMatrix m = abelianize(h);
      for (const Word& g : plain_gens) {
        IntVector img = m * to_int_vector(exponent_vector(g));
        if (!dl->lattice.contains(img)) return "image of " + to_string(g) + " abelianizes outside the level lattice";
      }
      return std::nullopt;
    }
    if (const auto* dfg = std::get_if<FiniteGenSubgroup>(&dst.subgroup)) {
      auto cov = complete_to_covering(dfg->core);
      if (!cov || !is_normal(*cov)) {
        checkable = false;
        return std::nullopt;
      }
      for (const auto* gens : {&normal_gens, &plain_gens})
        for (const Word& g : *gens) {
          Word img = apply_hom(h, g);
          if (!dfg->core.member(img)) return "image of " + to_string(g) + " is " + to_string(img) + ", outside the level subgroup";
        }
      return std::nullopt;
    }
    checkable = false;
    return std::nullopt;
  }
  const auto& gk = std::get<GridCycleKernel>(src.subgroup);
  const auto* dk = std::get_if<GridCycleKernel>(&dst.subgroup);
  if (!dk || !bond_is_identity(t, i)) {
    checkable = false;
    return std::nullopt;
  }
  if (gk.squares < dk->squares) return "kernel constrains fewer plaquettes than the level below it";
  return std::nullopt;
}

inline bool subgroup_is_normal(const LevelSpec& L, std::string& why) {
  if (const auto* fg = std::get_if<FiniteGenSubgroup>(&L.subgroup)) {
    if (fg->core.is_trivial()) return true;
    auto cov = complete_to_covering(fg->core);
    if (!cov) {
      why = "nontrivial finitely generated subgroup of infinite index cannot be normal";
      return false;
    }
    if (!is_normal(*cov)) {
      why = "coset graph is not vertex-transitive";
      return false;
    }
  }
  return true;
}

}  // namespace detail

inline ValidationReport validate_tower(const CoveringTower& t) {
  ValidationReport rep;
  if (t.levels.empty()) {
    rep.violations.push_back({0, "shape", "tower has no levels"});
    return rep;
  }
  if (t.horizon < 1) rep.violations.push_back({0, "shape", "horizon must be positive"});
  for (std::size_t i = 1; i <= t.levels.size(); ++i) detail::check_shapes(t, i, rep);
  if (!rep.ok()) return rep;

  if (t.base == BaseKind::CountablePi1)
    for (std::size_t i = 2; i <= t.levels.size(); ++i)
      if (!bond_is_identity(t, i))
        rep.violations.push_back({i, "base", "over a fixed base every bond must be the identity"});

  for (std::size_t i = 2; i <= t.levels.size(); ++i) {
    bool checkable = true;
    if (auto fail = detail::containment_failure(t, i, checkable))
      rep.violations.push_back({i - 1, "containment", *fail});
    else if (!checkable)
      rep.violations.push_back({i - 1, "unverifiable", "cannot check that the bond carries the subgroup into level " +
                                                          std::to_string(i - 1) + " for this combination of descriptors"});
  }
  if (t.regular)
    for (std::size_t i = 1; i <= t.levels.size(); ++i) {
      std::string why;
      if (!detail::subgroup_is_normal(t.level(i), why)) rep.violations.push_back({i, "normality", why});
    }
  return rep;
}

}  // namespace covlim
