#pragma once

// Stallings core graphs of finitely generated subgroups of F_n.

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "covlim/word.hpp"

namespace covlim {

struct LabeledEdge {
  int source;
  int target;
  int label;  // generator index, 1-based
};

/// Unfolded basepointed graph labeled by generators; input to fold().
struct LabeledGraph {
  int rank = 1;
  int vertex_count = 1;
  int basepoint = 0;
  std::vector<LabeledEdge> edges;
};

/// Wedge of one petal per nontrivial word, all glued at vertex 0.
inline LabeledGraph wedge_of_words(const std::vector<Word>& gens, int rank) {
  LabeledGraph g;
  g.rank = rank;
  for (const Word& w : gens) {
    if (w.rank() != rank) throw input_error("generator rank mismatch");
    if (w.empty()) continue;
    int prev = 0;
    const auto& ls = w.letters();
    for (std::size_t i = 0; i < ls.size(); ++i) {
      int next = (i + 1 == ls.size()) ? 0 : g.vertex_count++;
      Letter l = ls[i];
      if (l > 0)
        g.edges.push_back({prev, next, l});
      else
        g.edges.push_back({next, prev, -l});
      prev = next;
    }
  }
  return g;
}

/// Folded, pruned, canonically numbered graph. Vertex 0 is the basepoint.
class CoreGraph {
public:
  static constexpr int kNone = -1;

  CoreGraph() : CoreGraph(1) {}
  explicit CoreGraph(int rank) : rank_(rank), vertices_(1), arcs_(2 * rank, kNone) {}

  int rank() const { return rank_; }
  int vertex_count() const { return vertices_; }
  int edge_count() const {
    int e = 0;
    for (int v = 0; v < vertices_; ++v)
      for (int l = 1; l <= rank_; ++l)
        if (target(v, l) != kNone) ++e;
    return e;
  }

  /// Target of the arc at `v` with signed label `l`, or kNone.
  int target(int v, Letter l) const { return arcs_[slot(v, l)]; }

  /// Rank of the subgroup: E - V + 1.
  int subgroup_rank() const { return edge_count() - vertex_count() + 1; }

  /// Every vertex has an outgoing and an incoming arc for every label.
  bool is_complete() const {
    return std::find(arcs_.begin(), arcs_.end(), kNone) == arcs_.end();
  }

  bool is_whole_group() const { return vertices_ == 1 && is_complete(); }
  bool is_trivial() const { return edge_count() == 0; }

  bool member(const Word& w) const {
    if (w.rank() != rank_) throw input_error("rank mismatch in membership test");
    int v = 0;
    for (Letter l : w.letters()) {
      v = target(v, l);
      if (v == kNone) return false;
    }
    return v == 0;
  }

  /// Label of some path from the basepoint to v, along the BFS tree.
  std::vector<Word> tree_paths() const {
    std::vector<Word> path(vertices_, Word(rank_));
    std::vector<bool> seen(vertices_, false);
    std::deque<int> q{0};
    seen[0] = true;
    while (!q.empty()) {
      int v = q.front();
      q.pop_front();
      for (Letter l : signed_labels()) {
        int u = target(v, l);
        if (u != kNone && !seen[u]) {
          seen[u] = true;
          path[u] = multiply(path[v], Word::generator(std::abs(l), rank_, l > 0 ? 1 : -1));
          q.push_back(u);
        }
      }
    }
    return path;
  }

  /// Free basis of the subgroup: one word per edge outside the BFS tree.
  std::vector<Word> generators() const {
    std::vector<Word> path = tree_paths();
    std::vector<Word> gens;
    for (int v = 0; v < vertices_; ++v)
      for (int l = 1; l <= rank_; ++l) {
        int u = target(v, l);
        if (u == kNone) continue;
        Word g = multiply(multiply(path[v], Word::generator(l, rank_)), invert(path[u]));
        if (!g.empty()) gens.push_back(g);
      }
    return gens;
  }

  /// Byte string identifying the graph up to basepointed labeled isomorphism.
  std::string encoding() const {
    std::ostringstream os;
    os << "core1 " << rank_ << ' ' << vertices_;
    for (int v = 0; v < vertices_; ++v)
      for (int l = 1; l <= rank_; ++l)
        if (int u = target(v, l); u != kNone) os << ' ' << v << ':' << l << ':' << u;
    return os.str();
  }

  static CoreGraph from_encoding(const std::string& text) {
    std::istringstream is(text);
    std::string tag;
    int rank = 0, n = 0;
    if (!(is >> tag >> rank >> n) || tag != "core1" || rank < 1 || n < 1)
      throw input_error("bad core graph encoding");
    LabeledGraph g;
    g.rank = rank;
    g.vertex_count = n;
    std::string tok;
    while (is >> tok) {
      int v, l, u;
      char c1, c2;
      std::istringstream ts(tok);
      if (!(ts >> v >> c1 >> l >> c2 >> u) || c1 != ':' || c2 != ':' || v < 0 || u < 0 ||
          v >= n || u >= n || l < 1 || l > rank)
        throw input_error("bad core graph edge '" + tok + "'");
      g.edges.push_back({v, u, l});
    }
    CoreGraph c = fold_impl(g);
    if (c.encoding() != text) throw input_error("core graph encoding is not canonical");
    return c;
  }

  /// Same graph with the basepoint moved to `v`, renumbered canonically.
  /// Represents a conjugate subgroup when the graph is complete.
  CoreGraph rebased(int v) const {
    LabeledGraph g = as_labeled();
    g.basepoint = v;
    return canonical(g, false);
  }

  LabeledGraph as_labeled() const {
    LabeledGraph g;
    g.rank = rank_;
    g.vertex_count = vertices_;
    for (int v = 0; v < vertices_; ++v)
      for (int l = 1; l <= rank_; ++l)
        if (int u = target(v, l); u != kNone) g.edges.push_back({v, u, l});
    return g;
  }

  friend bool operator==(const CoreGraph& a, const CoreGraph& b) {
    return a.rank_ == b.rank_ && a.vertices_ == b.vertices_ && a.arcs_ == b.arcs_;
  }

  friend CoreGraph fold(const LabeledGraph&);

private:
  std::size_t slot(int v, Letter l) const {
    return static_cast<std::size_t>(v) * 2 * rank_ + (std::abs(l) - 1) * 2 + (l < 0 ? 1 : 0);
  }

  /// Canonical arc order: x1, X1, x2, X2, ...
  std::vector<Letter> signed_labels() const {
    std::vector<Letter> ls;
    for (int l = 1; l <= rank_; ++l) {
      ls.push_back(l);
      ls.push_back(-l);
    }
    return ls;
  }

  static CoreGraph fold_impl(const LabeledGraph& g);

  /// BFS renumbering from the basepoint of an already folded graph; vertices
  /// unreachable from the basepoint are dropped. Optionally prunes hairs.
  static CoreGraph canonical(const LabeledGraph& g, bool prune);

  int rank_;
  int vertices_;
  std::vector<int> arcs_;
};

namespace detail {

/// Union-find folding with per-vertex arc tables keyed by signed label.
class Folder {
public:
  explicit Folder(const LabeledGraph& g) : parent_(g.vertex_count), arcs_(g.vertex_count) {
    std::iota(parent_.begin(), parent_.end(), 0);
    for (const auto& e : g.edges) {
      insert_arc(e.source, e.label, e.target);
      insert_arc(e.target, -e.label, e.source);
      drain();
    }
  }

  int find(int v) {
    while (parent_[v] != v) {
      parent_[v] = parent_[parent_[v]];
      v = parent_[v];
    }
    return v;
  }

  const std::map<Letter, int>& arcs(int root) const { return arcs_[root]; }

private:
  void insert_arc(int from, Letter l, int to) {
    from = find(from);
    auto [it, fresh] = arcs_[from].try_emplace(l, to);
    if (!fresh) pending_.emplace_back(it->second, to);
  }

  void drain() {
    while (!pending_.empty()) {
      auto [a, b] = pending_.front();
      pending_.pop_front();
      a = find(a);
      b = find(b);
      if (a == b) continue;
      if (arcs_[a].size() < arcs_[b].size()) std::swap(a, b);
      parent_[b] = a;
      auto moved = std::move(arcs_[b]);
      arcs_[b].clear();
      for (const auto& [l, t] : moved) insert_arc(a, l, t);
    }
  }

  std::vector<int> parent_;
  std::vector<std::map<Letter, int>> arcs_;
  std::deque<std::pair<int, int>> pending_;
};

}  // namespace detail

inline CoreGraph CoreGraph::canonical(const LabeledGraph& g, bool prune) {
  // arcs[v][signed label] for a folded graph
  const int n = g.vertex_count;
  std::vector<std::map<Letter, int>> arcs(n);
  for (const auto& e : g.edges) {
    arcs[e.source][e.label] = e.target;
    arcs[e.target][-e.label] = e.source;
  }
  std::vector<bool> alive(n, true);
  if (prune) {
    std::deque<int> q;
    for (int v = 0; v < n; ++v)
      if (v != g.basepoint && arcs[v].size() <= 1) q.push_back(v);
    while (!q.empty()) {
      int v = q.front();
      q.pop_front();
      if (!alive[v] || v == g.basepoint || arcs[v].size() > 1) continue;
      alive[v] = false;
      for (const auto& [l, u] : arcs[v]) {
        arcs[u].erase(-l);
        if (u != g.basepoint && arcs[u].size() <= 1) q.push_back(u);
      }
      arcs[v].clear();
    }
  }

  CoreGraph c(g.rank);
  std::vector<int> id(n, kNone);
  std::vector<int> order{g.basepoint};
  id[g.basepoint] = 0;
  const auto labels = c.signed_labels();
  for (std::size_t i = 0; i < order.size(); ++i)
    for (Letter l : labels) {
      auto it = arcs[order[i]].find(l);
      if (it != arcs[order[i]].end() && id[it->second] == kNone) {
        id[it->second] = static_cast<int>(order.size());
        order.push_back(it->second);
      }
    }
  c.vertices_ = static_cast<int>(order.size());
  c.arcs_.assign(static_cast<std::size_t>(c.vertices_) * 2 * g.rank, kNone);
  for (int v : order)
    for (const auto& [l, u] : arcs[v]) c.arcs_[c.slot(id[v], l)] = id[u];
  return c;
}

inline CoreGraph CoreGraph::fold_impl(const LabeledGraph& g) {
  if (g.vertex_count < 1 || g.basepoint < 0 || g.basepoint >= g.vertex_count)
    throw input_error("graph needs a basepoint");
  detail::Folder f(g);
  LabeledGraph folded;
  folded.rank = g.rank;
  folded.vertex_count = g.vertex_count;
  folded.basepoint = f.find(g.basepoint);
  for (int v = 0; v < g.vertex_count; ++v) {
    if (f.find(v) != v) continue;
    for (const auto& [l, t] : f.arcs(v))
      if (l > 0) folded.edges.push_back({v, f.find(t), l});
  }
  return canonical(folded, true);
}

/// Folds and prunes to the core; the result does not depend on edge order.
inline CoreGraph fold(const LabeledGraph& g) { return CoreGraph::fold_impl(g); }

inline CoreGraph core_from_generators(const std::vector<Word>& gens, int rank) {
  return fold(wedge_of_words(gens, rank));
}

inline bool member(const CoreGraph& core, const Word& w) { return core.member(w); }

inline CoreGraph image_under_hom(const CoreGraph& core, const FreeHom& h) {
  if (core.rank() != h.source_rank) throw input_error("rank mismatch in subgroup image");
  std::vector<Word> imgs;
  for (const Word& g : core.generators()) imgs.push_back(apply_hom(h, g));
  return core_from_generators(imgs, h.target_rank);
}

inline bool equal_subgroups(const CoreGraph& a, const CoreGraph& b) {
  if (a.rank() != b.rank()) throw input_error("rank mismatch comparing subgroups");
  return a.encoding() == b.encoding();
}

/// A complete core graph: the Schreier coset graph of a finite-index subgroup.
class CoveringGraph {
public:
  const CoreGraph& graph() const { return graph_; }
  int index() const { return graph_.vertex_count(); }
  int rank() const { return graph_.rank(); }

  friend std::optional<CoveringGraph> complete_to_covering(const CoreGraph&);

private:
  explicit CoveringGraph(CoreGraph g) : graph_(std::move(g)) {}
  CoreGraph graph_;
};

/// The covering graph when the subgroup has finite index, nullopt otherwise.
inline std::optional<CoveringGraph> complete_to_covering(const CoreGraph& core) {
  if (!core.is_complete()) return std::nullopt;
  return CoveringGraph(core);
}

/// The subgroup based at every vertex is the same (regular covering).
inline bool is_normal(const CoveringGraph& cov) {
  const std::string base = cov.graph().encoding();
  for (int v = 1; v < cov.index(); ++v)
    if (cov.graph().rebased(v).encoding() != base) return false;
  return true;
}

inline int index(const CoveringGraph& cov) { return cov.index(); }
inline int subgroup_rank(const CoreGraph& core) { return core.subgroup_rank(); }

/// h(F_source) is all of F_target.
inline bool is_surjective(const FreeHom& h) {
  return core_from_generators(h.images, h.target_rank).is_whole_group();
}

}  // namespace covlim
