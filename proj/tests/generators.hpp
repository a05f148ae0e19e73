#pragma once

// Seeded random generators for property tests.

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include "covlim/covlim.hpp"

namespace covlim::testing {

class Gen {
public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  std::int64_t uniform(std::int64_t lo, std::int64_t hi) { return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng_); }
  bool coin() { return uniform(0, 1) == 1; }
  std::mt19937_64& engine() { return rng_; }

  Letter letter(int rank) {
    int k = static_cast<int>(uniform(1, rank));
    return coin() ? k : -k;
  }

  /// Reduced word built letter by letter, length exactly `len`.
  Word reduced_word(int rank, std::size_t len) {
    std::vector<Letter> raw;
    while (raw.size() < len) {
      Letter l = letter(rank);
      if (!raw.empty() && raw.back() == -l) continue;
      raw.push_back(l);
    }
    return Word(raw, rank);
  }

  Word word(int rank, std::size_t max_len) { return reduced_word(rank, static_cast<std::size_t>(uniform(0, max_len))); }

  /// Product of `count` commutators of random words.
  Word commutator_product(int rank, std::size_t count, std::size_t max_len) {
    Word w(rank);
    for (std::size_t i = 0; i < count; ++i) w = multiply(w, commutator(word(rank, max_len), word(rank, max_len)));
    return w;
  }

  /// Random element of F': a short product of conjugated commutators.
  Word derived_element(int rank, std::size_t max_len) {
    Word w(rank);
    std::size_t count = static_cast<std::size_t>(uniform(1, 2));
    for (std::size_t i = 0; i < count; ++i)
      w = multiply(w, conjugate(commutator(word(rank, max_len), word(rank, max_len)), word(rank, max_len)));
    return w;
  }

  IntMatrix matrix(std::size_t rows, std::size_t cols, std::int64_t lo, std::int64_t hi) {
    IntMatrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t c = 0; c < cols; ++c) m(r, c) = Integer(uniform(lo, hi));
    return m;
  }

  /// Random transitive action of F_rank on {0..index-1}, one permutation per generator.
  std::vector<std::vector<int>> transitive_action(int rank, int index) {
    for (;;) {
      std::vector<std::vector<int>> perms(rank, std::vector<int>(index));
      for (auto& p : perms) {
        std::iota(p.begin(), p.end(), 0);
        std::shuffle(p.begin(), p.end(), rng_);
      }
      std::vector<bool> seen(index, false);
      std::vector<int> stack{0};
      seen[0] = true;
      int reached = 1;
      while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (const auto& p : perms) {
          int u = p[v];
          if (!seen[u]) {
            seen[u] = true;
            ++reached;
            stack.push_back(u);
          }
          auto it = std::find(p.begin(), p.end(), v);
          int w = static_cast<int>(it - p.begin());
          if (!seen[w]) {
            seen[w] = true;
            ++reached;
            stack.push_back(w);
          }
        }
      }
      if (reached == index) return perms;
    }
  }

private:
  std::mt19937_64 rng_;
};

/// Schreier graph of a permutation action, as an unfolded labeled graph.
inline LabeledGraph action_graph(const std::vector<std::vector<int>>& perms) {
  LabeledGraph g;
  g.rank = static_cast<int>(perms.size());
  g.vertex_count = static_cast<int>(perms.front().size());
  for (std::size_t k = 0; k < perms.size(); ++k)
    for (int v = 0; v < g.vertex_count; ++v) g.edges.push_back({v, perms[k][v], static_cast<int>(k + 1)});
  return g;
}

// Relabels vertices (keeping the basepoint at 0) and shuffles the edge list.
inline LabeledGraph scramble(const LabeledGraph& g, Gen& gen) {
  std::vector<int> perm(g.vertex_count);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin() + 1, perm.end(), gen.engine());
  LabeledGraph out = g;
  for (auto& e : out.edges) {
    e.source = perm[e.source];
    e.target = perm[e.target];
  }
  std::shuffle(out.edges.begin(), out.edges.end(), gen.engine());
  return out;
}

/// Coherent sequence: random word at the top level, deletion projections below.
inline CoherentWordSeq random_coherent(Gen& gen, std::size_t horizon, std::size_t max_len) {
  CoherentWordSeq s;
  s.words.resize(horizon, Word(1));
  s.words[horizon - 1] = gen.word(static_cast<int>(horizon), max_len);
  for (std::size_t i = horizon - 1; i >= 1; --i)
    s.words[i - 1] = apply_hom(FreeHom::deletion(static_cast<int>(i + 1), static_cast<int>(i)), s.words[i]);
  return s;
}

inline Word W(const char* text, int rank) { return parse_word(text, rank); }

}  // namespace covlim::testing
