#pragma once

// Path-connectivity verdicts for inverse limits of covering towers.
//
// The total space of the limit is path-connected exactly when the tower of
// subgroups is Mittag-Leffler and pi_1(X) maps onto lim pi_1(X_i)/H_i. The
// engine certifies each half where it can and otherwise answers Unknown.

#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "covlim/abtower.hpp"
#include "covlim/tower.hpp"

namespace covlim {

/// Key/value store for subgroup images under bonds (values are core encodings).
class ImageCache {
public:
  virtual ~ImageCache() = default;
  virtual std::optional<std::string> load(const std::string& key) = 0;
  virtual void store(const std::string& key, const std::string& value) = 0;
};

inline std::string image_cache_key(const CoreGraph& core, const FreeHom& h) {
  return "image1\n" + core.encoding() + "\n" + std::to_string(h.target_rank) + "\n" + to_string(h);
}

inline CoreGraph cached_image_under_hom(const CoreGraph& core, const FreeHom& h, ImageCache* cache) {
  if (!cache) return image_under_hom(core, h);
  const std::string key = image_cache_key(core, h);
  if (auto hit = cache->load(key)) {
    try {
      return CoreGraph::from_encoding(*hit);
    } catch (const input_error&) {
      // unreadable entry: recompute and overwrite
    }
  }
  CoreGraph img = image_under_hom(core, h);
  cache->store(key, img.encoding());
  return img;
}

struct Unsupported {
  std::string reason;
};

/// Im(H_j -> G_i) in whichever representation the tower uses.
using SubgroupImage = std::variant<CoreGraph, Lattice, GridCycleKernel, Unsupported>;

/// Equality of two images; nullopt when they cannot be compared.
inline std::optional<bool> same_subgroup(const SubgroupImage& a, const SubgroupImage& b) {
  if (a.index() != b.index() || std::holds_alternative<Unsupported>(a)) return std::nullopt;
  if (const auto* x = std::get_if<CoreGraph>(&a)) return equal_subgroups(*x, std::get<CoreGraph>(b));
  if (const auto* x = std::get_if<Lattice>(&a)) return lattice_equal(*x, std::get<Lattice>(b));
  return std::get<GridCycleKernel>(a).squares == std::get<GridCycleKernel>(b).squares;
}

struct QuotientData {
  enum class Kind { Finite, Abelian, Unsupported };
  Kind kind = Kind::Unsupported;
  std::optional<Integer> order;
  /// Invariant factors without units; 0 stands for a Z summand.
  IntVector invariants;
  std::optional<CoveringGraph> coset_graph;
  std::string note;
};

struct TailCriterion {
  enum class Status { Holds, Fails, Unsupported };
  Status status = Status::Unsupported;
  std::size_t level = 0;  // first level pair (level, level+1) that failed
  std::string witness;
  std::string reason;
};

enum class Connectivity { Connected, Disconnected, Unknown };

inline std::string to_string(Connectivity c) {
  switch (c) {
    case Connectivity::Connected: return "Connected";
    case Connectivity::Disconnected: return "Disconnected";
    case Connectivity::Unknown: return "Unknown";
  }
  return "?";
}

struct RuleFiring {
  std::string tag;
  std::string detail;
};

struct Verdict {
  Connectivity status = Connectivity::Unknown;
  std::vector<RuleFiring> rules;
  std::vector<std::string> witnesses;
  std::size_t horizon = 0;

  bool fired(const std::string& tag) const {
    for (const auto& r : rules)
      if (r.tag == tag) return true;
    return false;
  }
};

struct Pi1Report {
  std::string summary;
  std::optional<std::size_t> rank;  // rank of the limit when computed exactly
  std::vector<std::string> details;
};

/// Analysis of one tower up to a fixed horizon; memoizes subgroup images.
class TowerAnalysis {
public:
  enum class Family { Generators, Lattices, GridKernels, Mixed };

  TowerAnalysis(const CoveringTower& t, std::optional<std::size_t> horizon = std::nullopt,
                ImageCache* cache = nullptr)
      : t_(t), h_(std::min(horizon.value_or(t.horizon), t.levels.size())), cache_(cache) {
    if (h_ < 1) throw input_error("horizon must be positive");
    family_ = detect_family();
  }

  std::size_t horizon() const { return h_; }
  Family family() const { return family_; }

  /// Im(H_j -> G_level) for j = level..horizon.
  std::vector<SubgroupImage> subgroup_image_chain(std::size_t level) {
    std::vector<SubgroupImage> chain;
    for (std::size_t j = level; j <= h_; ++j) chain.push_back(image_of(j, level));
    return chain;
  }

  MLVerdict ml_verdict();
  QuotientData quotient_data(std::size_t level);
  TailCriterion tail_generation_criterion();
  Verdict connectivity_verdict();
  Pi1Report pi1_of_limit();

  /// Induced tower of the lattices K_i with their restricted bonds.
  AbelianTower lattice_subtower();

private:
  Family detect_family() const {
    std::optional<std::size_t> first;
    for (std::size_t i = 1; i <= h_; ++i) {
      std::size_t k = t_.level(i).subgroup.index();
      if (!first) first = k;
      if (*first != k) return Family::Mixed;
    }
    switch (*first) {
      case 0: return Family::Generators;
      case 1: return Family::Lattices;
      default: return Family::GridKernels;
    }
  }

  bool free_bond_onto(std::size_t i) {
    auto it = onto_.find(i);
    if (it != onto_.end()) return it->second;
    const auto& b = *t_.level(i).bond;
    bool onto = std::holds_alternative<FreeHom>(b) ? is_surjective(std::get<FreeHom>(b)) : true;
    return onto_[i] = onto;
  }

  SubgroupImage image_of(std::size_t j, std::size_t i) {
    if (auto it = images_.find({j, i}); it != images_.end()) return it->second;
    SubgroupImage out = compute_image(j, i);
    images_.emplace(std::make_pair(j, i), out);
    return out;
  }

  SubgroupImage compute_image(std::size_t j, std::size_t i) {
    const LevelSpec& L = t_.level(j);
    if (j == i) {
      return std::visit(
          [](const auto& s) -> SubgroupImage {
            using S = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<S, FiniteGenSubgroup>)
              return s.core;
            else if constexpr (std::is_same_v<S, LatticeSubgroup>)
              return s.lattice;
            else
              return s;
          },
          L.subgroup);
    }
    SubgroupImage above = image_of(j, i + 1);
    const Bond& bond = *t_.level(i + 1).bond;
    if (const auto* core = std::get_if<CoreGraph>(&above))
      return cached_image_under_hom(*core, std::get<FreeHom>(bond), cache_);
    if (const auto* lat = std::get_if<Lattice>(&above)) {
      if (t_.level(i + 1).kind == GroupKind::Free && !free_bond_onto(i + 1))
        return Unsupported{"bond into level " + std::to_string(i) +
                           " is not onto, so images of abelianization preimages are not preimages"};
      return image(bond_matrix(t_, i + 1), *lat);
    }
    if (std::holds_alternative<GridCycleKernel>(above)) {
      if (!bond_is_identity(t_, i + 1)) return Unsupported{"grid cycle kernels only move along identity bonds"};
      return above;
    }
    return above;
  }

  MLVerdict observe_chains();

  /// H_i vs H_{i+1} under identity bonds: equal, or a witness of strictness.
  std::optional<std::pair<bool, std::string>> compare_consecutive(std::size_t i);

  CoveringTower t_;
  std::size_t h_;
  ImageCache* cache_;
  Family family_;
  std::map<std::pair<std::size_t, std::size_t>, SubgroupImage> images_;
  std::map<std::size_t, bool> onto_;
};

// ---------------------------------------------------------------------------

inline AbelianTower TowerAnalysis::lattice_subtower() {
  if (family_ != Family::Lattices) throw input_error("tower does not consist of lattice subgroups");
  AbelianTower at;
  at.stationary = t_.stationary;
  for (std::size_t i = 1; i <= h_; ++i) {
    const Lattice& K = std::get<LatticeSubgroup>(t_.level(i).subgroup).lattice;
    at.ranks.push_back(K.rank());
    if (i == 1) continue;
    const Lattice& below = std::get<LatticeSubgroup>(t_.level(i - 1).subgroup).lattice;
    const IntMatrix B = bond_matrix(t_, i);
    std::vector<IntVector> cols;
    for (const auto& c : K.basis().columns()) {
      auto coords = below.coordinates(B * c);
      if (!coords) throw input_error("bond does not carry the level subgroup into the one below (validate first)");
      cols.push_back(*coords);
    }
    at.bonds.push_back(IntMatrix::from_columns(below.rank(), cols));
  }
  return at;
}

inline MLVerdict TowerAnalysis::observe_chains() {
  MLVerdict v;
  v.horizon = h_;
  v.stationary_declared = t_.stationary;
  v.proof = "observed";
  bool epimorphic = h_ >= 2;
  bool settled = true;
  for (std::size_t i = 1; i < h_; ++i) {
    auto chain = subgroup_image_chain(i);
    auto onto = same_subgroup(chain[0], chain[1]);
    if (!onto) {
      v.status = MLStatus::Undetermined;
      v.proof = "unsupported";
      return v;
    }
    if (!*onto) epimorphic = false;
    LevelWitness w;
    w.level = i;
    std::size_t k = chain.size() - 1;
    for (;;) {
      if (k == 0) break;
      auto eq = same_subgroup(chain[k - 1], chain[k]);
      if (!eq) {
        v.status = MLStatus::Undetermined;
        v.proof = "unsupported";
        return v;
      }
      if (!*eq) break;
      --k;
    }
    if (k + 1 < chain.size()) {
      w.stable_from = i + k;
      v.observed_stable_at = std::max(v.observed_stable_at, i + k);
    } else {
      settled = false;
      w.descent = std::make_pair(i + k - 1, i + k);
    }
    v.levels.push_back(w);
  }
  if (epimorphic) {
    v.status = MLStatus::ML;
    v.proof = "epimorphic-bonds";
  } else if (settled && h_ >= 2) {
    v.status = MLStatus::ObservedStable;
  } else {
    v.status = MLStatus::Undetermined;
  }
  return v;
}

inline MLVerdict TowerAnalysis::ml_verdict() {
  switch (family_) {
    case Family::Lattices: {
      if (t_.level(1).kind == GroupKind::Free)
        for (std::size_t i = 2; i <= h_; ++i)
          if (!free_bond_onto(i)) {
            MLVerdict v;
            v.horizon = h_;
            v.proof = "unsupported";
            return v;
          }
      return ml_observe(lattice_subtower(), h_);
    }
    case Family::Generators:
    case Family::GridKernels:
      return observe_chains();
    case Family::Mixed:
      break;
  }
  MLVerdict v;
  v.horizon = h_;
  v.proof = "mixed-descriptors";
  return v;
}

inline std::optional<std::pair<bool, std::string>> TowerAnalysis::compare_consecutive(std::size_t i) {
  const LevelSpec& a = t_.level(i);
  const LevelSpec& b = t_.level(i + 1);
  if (a.subgroup.index() != b.subgroup.index()) return std::nullopt;
  if (const auto* x = std::get_if<FiniteGenSubgroup>(&a.subgroup)) {
    const auto& y = std::get<FiniteGenSubgroup>(b.subgroup);
    if (equal_subgroups(x->core, y.core)) return std::make_pair(true, std::string());
    for (const Word& g : x->core.generators())
      if (!y.core.member(g)) return std::make_pair(false, to_string(g));
    return std::make_pair(false, std::string("(subgroups differ)"));
  }
  if (const auto* x = std::get_if<LatticeSubgroup>(&a.subgroup)) {
    const auto& y = std::get<LatticeSubgroup>(b.subgroup);
    if (x->lattice == y.lattice) return std::make_pair(true, std::string());
    for (const auto& c : x->lattice.basis().columns())
      if (!y.lattice.contains(c))
        return std::make_pair(false, a.kind == GroupKind::Free ? to_string(word_of_vector(c)) : to_string(c));
    return std::make_pair(false, std::string("(lattices differ)"));
  }
  const auto& x = std::get<GridCycleKernel>(a.subgroup);
  const auto& y = std::get<GridCycleKernel>(b.subgroup);
  if (x.squares == y.squares) return std::make_pair(true, std::string());
  if (x.squares > y.squares) return std::nullopt;
  Plaquette sq = plaquette_order(x.squares + 1).back();
  Word loop = plaquette_loop(sq);
  if (!grid_kernel_member(x.squares, loop) || grid_kernel_member(y.squares, loop))
    throw std::logic_error("plaquette loop does not separate consecutive grid kernels");
  return std::make_pair(false, to_string(loop));
}

inline QuotientData TowerAnalysis::quotient_data(std::size_t level) {
  const LevelSpec& L = t_.level(level);
  QuotientData q;
  if (const auto* fg = std::get_if<FiniteGenSubgroup>(&L.subgroup)) {
    if (auto cov = complete_to_covering(fg->core)) {
      q.kind = QuotientData::Kind::Finite;
      q.order = Integer(cov->index());
      q.coset_graph = std::move(cov);
      if (!is_normal(*q.coset_graph)) q.note = "subgroup is not normal: quotient is a coset space";
    } else {
      q.note = "infinite-index subgroup of a free group: nonabelian infinite quotient";
    }
    return q;
  }
  if (const auto* lat = std::get_if<LatticeSubgroup>(&L.subgroup)) {
    for (const auto& d : quotient_invariants(lat->lattice))
      if (d != 1) q.invariants.push_back(d);
    if (!lat->lattice.is_full_rank()) {
      q.kind = QuotientData::Kind::Abelian;
      return q;
    }
    q.kind = QuotientData::Kind::Finite;
    Integer order = 1;
    for (const auto& d : q.invariants) order *= d;
    q.order = order;
    constexpr int kMaxCosetGraph = 1 << 14;
    if (L.kind == GroupKind::Free && order <= kMaxCosetGraph) {
      const int n = static_cast<int>(L.rank);
      std::map<IntVector, int> id;
      std::vector<IntVector> reps{IntVector(n, 0)};
      id[reps[0]] = 0;
      LabeledGraph g;
      g.rank = n;
      for (std::size_t r = 0; r < reps.size(); ++r)
        for (int k = 0; k < n; ++k) {
          IntVector u = reps[r];
          u[k] += 1;
          u = lat->lattice.reduce(u);
          auto [it, fresh] = id.try_emplace(u, static_cast<int>(reps.size()));
          if (fresh) reps.push_back(u);
          g.edges.push_back({static_cast<int>(r), it->second, k + 1});
        }
      g.vertex_count = static_cast<int>(reps.size());
      q.coset_graph = complete_to_covering(fold(g));
    }
    return q;
  }
  q.note = "quotient of F_2' by a grid cycle kernel is not finitely presented here";
  return q;
}

inline TailCriterion TowerAnalysis::tail_generation_criterion() {
  TailCriterion r;
  r.status = TailCriterion::Status::Holds;
  for (std::size_t i = 1; i < h_; ++i) {
    if (!bond_is_deletion(t_, i + 1)) {
      r.status = TailCriterion::Status::Unsupported;
      r.level = i;
      r.reason = "bond into level " + std::to_string(i) + " is not a deletion projection";
      return r;
    }
    const LevelSpec& lo = t_.level(i);
    const LevelSpec& hi = t_.level(i + 1);
    const auto* klo = std::get_if<LatticeSubgroup>(&lo.subgroup);
    const auto* khi = std::get_if<LatticeSubgroup>(&hi.subgroup);
    if (klo && khi) {
      // Q = Z^n / K. ker(Q_{i+1} -> Q_i) lifts to the preimage of K_i; the
      // new generators generate (K_{i+1} + span of the new axes) / K_{i+1}.
      Lattice kernel = preimage(bond_matrix(t_, i + 1), klo->lattice);
      std::vector<IntVector> fresh;
      for (std::size_t k = lo.rank; k < hi.rank; ++k) {
        IntVector e(hi.rank, 0);
        e[k] = 1;
        fresh.push_back(e);
      }
      Lattice generated = lattice_sum(khi->lattice, Lattice::span(hi.rank, fresh));
      if (!(kernel == generated)) {
        r.status = TailCriterion::Status::Fails;
        r.level = i;
        for (const auto& c : kernel.basis().columns())
          if (!generated.contains(c)) {
            r.witness = hi.kind == GroupKind::Free ? to_string(word_of_vector(c)) : to_string(c);
            break;
          }
        return r;
      }
      continue;
    }
    const auto* glo = std::get_if<FiniteGenSubgroup>(&lo.subgroup);
    const auto* ghi = std::get_if<FiniteGenSubgroup>(&hi.subgroup);
    if (glo && ghi) {
      // The preimage of H_i under the deletion is H_i * <<new generators>>.
      // It equals J = <H_{i+1}, new generators> iff J contains H_i and is normal.
      const int n = static_cast<int>(hi.rank);
      std::vector<Word> gens = ghi->core.generators();
      for (std::size_t k = lo.rank + 1; k <= hi.rank; ++k) gens.push_back(Word::generator(static_cast<int>(k), n));
      CoreGraph J = core_from_generators(gens, n);
      std::optional<Word> outside;
      for (const Word& g : glo->core.generators())
        if (Word lg = g.lifted(n); !J.member(lg)) {
          outside = lg;
          break;
        }
      if (!outside)
        for (const Word& g : J.generators()) {
          for (int k = 1; k <= n && !outside; ++k)
            for (int s : {1, -1}) {
              Word c = conjugate(g, Word::generator(k, n, s));
              if (!J.member(c)) {
                outside = c;
                break;
              }
            }
          if (outside) break;
        }
      if (outside) {
        r.status = TailCriterion::Status::Fails;
        r.level = i;
        r.witness = to_string(*outside);
        return r;
      }
      continue;
    }
    r.status = TailCriterion::Status::Unsupported;
    r.level = i;
    r.reason = "quotients at level " + std::to_string(i) + " are neither abelian nor given by generators";
    return r;
  }
  return r;
}

namespace detail {

inline std::string witness_line(const LevelWitness& w) {
  std::ostringstream os;
  os << "level " << w.level;
  if (w.stable_from) os << " stable from " << *w.stable_from;
  if (w.descent) {
    os << " Im(" << w.descent->second << "->" << w.level << ") < Im(" << w.descent->first << "->" << w.level << ")";
    if (w.descent_index) os << " index " << *w.descent_index;
  }
  return os.str();
}

}  // namespace detail

inline Verdict TowerAnalysis::connectivity_verdict() {
  Verdict v;
  v.horizon = h_;
  auto fire = [&](std::string tag, std::string detail = {}) { v.rules.push_back({std::move(tag), std::move(detail)}); };

  if (t_.base == BaseKind::CountablePi1) {
    // Every subgroup lives in the same countable group: ML means eventually
    // constant, and a tower that keeps shrinking disconnects the limit.
    if (h_ < 2) {
      fire("CountablePi1-undetermined", "a single level shows no descent");
      return v;
    }
    auto cmp = compare_consecutive(h_ - 1);
    if (!cmp) {
      fire("CountablePi1-undetermined", "consecutive subgroups cannot be compared");
      return v;
    }
    if (!cmp->first) {
      v.witnesses.push_back("level " + std::to_string(h_ - 1) + " strictly contains level " + std::to_string(h_) +
                            ": " + cmp->second);
      if (!t_.stationary) {
        fire("Stationarity-undeclared", "descent observed at the horizon but not declared to persist");
        return v;
      }
      v.status = Connectivity::Disconnected;
      fire("CountablePi1-rule", "strict descent at the horizon persists by declaration: not eventually constant");
      return v;
    }
    if (!t_.stationary) {
      fire("Stationarity-undeclared", "constant at the horizon but not declared to stay constant");
      return v;
    }
    v.status = Connectivity::Connected;
    fire("CountablePi1-eventually-constant", "the tower is a covering from level " + std::to_string(h_ - 1) + " on");
    fire("ML-ok", "proof=eventually-constant");
    fire("Surjectivity-ok", "covering of a connected base");
    return v;
  }

  MLVerdict ml = ml_verdict();
  Lim1 lim1 = lim1_verdict(ml);
  if (lim1 == Lim1::Nontrivial) {
    v.status = Connectivity::Disconnected;
    fire("ML-fail", "proof=" + ml.proof);
    for (const auto& w : ml.levels)
      if (w.descent) v.witnesses.push_back(detail::witness_line(w));
    return v;
  }
  if (lim1 == Lim1::Unknown) {
    fire("ML-undetermined", "status=" + to_string(ml.status) + " proof=" + ml.proof);
    for (const auto& w : ml.levels) v.witnesses.push_back(detail::witness_line(w));
    return v;
  }
  fire("ML-ok", "proof=" + ml.proof);

  if (t_.base == BaseKind::TowerComplete) {
    v.status = Connectivity::Connected;
    fire("Surjectivity-ok", "pi_1 of the base is the inverse limit of the level groups");
    return v;
  }

  TailCriterion tail = tail_generation_criterion();
  switch (tail.status) {
    case TailCriterion::Status::Holds:
      v.status = Connectivity::Connected;
      fire("Surjectivity-ok", "tail-generation criterion holds at every level pair up to the horizon");
      break;
    case TailCriterion::Status::Fails:
      fire("Surjectivity-criterion-fails", "sufficient criterion fails at level " + std::to_string(tail.level));
      v.witnesses.push_back("level " + std::to_string(tail.level + 1) + " kernel element outside the new-generator subgroup: " +
                            tail.witness);
      break;
    case TailCriterion::Status::Unsupported:
      fire("Surjectivity-undetermined", tail.reason);
      break;
  }
  return v;
}

inline Pi1Report TowerAnalysis::pi1_of_limit() {
  Pi1Report r;
  switch (family_) {
    case Family::Generators: {
      bool trivial = true;
      for (std::size_t i = 1; i <= h_; ++i) {
        const auto& core = std::get<FiniteGenSubgroup>(t_.level(i).subgroup).core;
        trivial = trivial && core.is_trivial();
        r.details.push_back("level " + std::to_string(i) + ": " + describe(t_.level(i).subgroup, GroupKind::Free));
      }
      if (trivial) {
        r.summary = "trivial";
        r.rank = 0;
      } else {
        r.summary = "inverse limit of the level subgroups under the bonds";
      }
      return r;
    }
    case Family::GridKernels:
      r.summary = "intersection of the grid cycle kernels: the second derived subgroup F_2''";
      return r;
    case Family::Mixed:
      r.summary = "inverse limit of the level subgroups (mixed descriptors, not computed)";
      return r;
    case Family::Lattices:
      break;
  }

  bool all_zero = true;
  for (std::size_t i = 1; i <= h_; ++i) {
    const auto& K = std::get<LatticeSubgroup>(t_.level(i).subgroup).lattice;
    all_zero = all_zero && K.rank() == 0;
    r.details.push_back("level " + std::to_string(i) + ": " + describe(t_.level(i).subgroup, t_.level(i).kind));
  }
  if (t_.level(1).kind == GroupKind::Free) {
    r.summary = all_zero ? "inverse limit of the commutator subgroups F_i' (the Z-kernel of lim F_i)"
                         : "inverse limit of the abelianization preimages of the level lattices";
    return r;
  }
  if (all_zero) {
    r.summary = "trivial";
    r.rank = 0;
    return r;
  }
  AbelianTower at = lattice_subtower();
  MLVerdict ml = ml_observe(at, h_);
  if (at.stationary && bonds_constant(at, h_)) {
    const IntMatrix& A = at.bonds[0];
    if (ml.status == MLStatus::ML) {
      // images settle on L = Im(A^k) and A restricts to an automorphism of L
      auto chain = power_image_chain(A, A.rows() + 1);
      r.rank = chain.back().rank();
      r.summary = "free abelian of rank " + std::to_string(*r.rank);
      return r;
    }
    if (A.rows() == 1) {
      // a coherent sequence under multiplication by |a| > 1 is infinitely divisible
      r.rank = 0;
      r.summary = "trivial (0): no nonzero coherent sequence under multiplication by " + to_string(A(0, 0));
      return r;
    }
    r.summary = "eventual images descend; the limit is the largest sublattice on which the bond is unimodular (not computed)";
    return r;
  }
  if (ml.status == MLStatus::ML) {
    r.summary = "maps onto the stable images at every level (epimorphic bonds)";
    return r;
  }
  r.summary = "not determined at this horizon";
  return r;
}

// ---------------------------------------------------------------------------

inline std::vector<SubgroupImage> subgroup_image_chain(const CoveringTower& t, std::size_t level, std::size_t horizon,
                                                       ImageCache* cache = nullptr) {
  return TowerAnalysis(t, horizon, cache).subgroup_image_chain(level);
}

inline QuotientData quotient_data(const CoveringTower& t, std::size_t level) {
  return TowerAnalysis(t).quotient_data(level);
}

inline TailCriterion tail_generation_criterion(const CoveringTower& t, std::size_t horizon) {
  return TowerAnalysis(t, horizon).tail_generation_criterion();
}

inline Verdict connectivity_verdict(const CoveringTower& t, std::optional<std::size_t> horizon = std::nullopt,
                                    ImageCache* cache = nullptr) {
  return TowerAnalysis(t, horizon, cache).connectivity_verdict();
}

inline Pi1Report pi1_of_limit(const CoveringTower& t, std::optional<std::size_t> horizon = std::nullopt) {
  return TowerAnalysis(t, horizon).pi1_of_limit();
}

/// Line-oriented report: STATUS, HORIZON, then one RULE line per rule fired
/// and one WITNESS line per witness.
inline std::string format_report(const CoveringTower& t, const Verdict& v) {
  std::ostringstream os;
  os << "STATUS: " << to_string(v.status) << '\n';
  os << "TOWER: " << (t.name.empty() ? "(unnamed)" : t.name) << " base=" << to_string(t.base) << '\n';
  os << "HORIZON: " << v.horizon << '\n';
  for (const auto& r : v.rules) os << "RULE: " << r.tag << (r.detail.empty() ? "" : " " + r.detail) << '\n';
  for (const auto& w : v.witnesses) os << "WITNESS: " << w << '\n';
  return os.str();
}

}  // namespace covlim
