#pragma once

// Lifts of words to the integer grid (the cover of the n-petal rose with
// group F_n'), cycle classes of closed lifts, and F'' membership.

#include <cstdint>
#include <deque>
#include <map>
#include <set>
#include <stdexcept>
#include <vector>

#include "covlim/word.hpp"

namespace covlim {

using GridPoint = std::vector<std::int64_t>;

struct GridStep {
  int axis;  // 1-based, matches the generator index
  int sign;  // +1 or -1
  friend bool operator==(const GridStep&, const GridStep&) = default;
};

struct GridPath {
  std::vector<GridPoint> vertices;  // vertices.size() == steps.size() + 1
  std::vector<GridStep> steps;

  bool closed() const { return vertices.front() == vertices.back(); }
  const GridPoint& endpoint() const { return vertices.back(); }
};

/// Unit edge of the grid from `base` to `base + e_axis`.
struct GridEdge {
  GridPoint base;
  int axis;
  friend auto operator<=>(const GridEdge&, const GridEdge&) = default;
};

inline GridPath lift_to_grid(const Word& w) {
  GridPath p;
  GridPoint cur(w.rank(), 0);
  p.vertices.push_back(cur);
  for (Letter l : w.letters()) {
    int axis = std::abs(l);
    int sign = l > 0 ? 1 : -1;
    cur[axis - 1] += sign;
    p.steps.push_back({axis, sign});
    p.vertices.push_back(cur);
  }
  return p;
}

/// Net signed traversal count of every grid edge the path uses.
inline std::map<GridEdge, std::int64_t> edge_traversals(const GridPath& p) {
  std::map<GridEdge, std::int64_t> net;
  for (std::size_t i = 0; i < p.steps.size(); ++i) {
    const auto& s = p.steps[i];
    GridEdge e{s.sign > 0 ? p.vertices[i] : p.vertices[i + 1], s.axis};
    net[e] += s.sign;
  }
  return net;
}

/// Coefficients of a closed path in the cycle space of its visited subgraph,
/// one per non-tree edge. Only nonzero-ness is basis independent.
struct CycleClass {
  std::vector<GridEdge> non_tree_edges;
  std::vector<std::int64_t> coefficients;

  bool is_zero() const {
    for (auto c : coefficients)
      if (c != 0) return false;
    return true;
  }
};

inline CycleClass grid_homology_class(const GridPath& p) {
  if (!p.closed()) throw input_error("grid homology class needs a closed path");
  const std::size_t dim = p.vertices.front().size();

  // every visited edge is a key, including those with net count zero
  const std::map<GridEdge, std::int64_t> net = edge_traversals(p);

  // Breadth-first spanning tree from the origin; neighbours by axis, + before -.
  std::set<GridEdge> tree;
  std::set<GridPoint> seen;
  std::deque<GridPoint> queue;
  const GridPoint origin(dim, 0);
  seen.insert(origin);
  queue.push_back(origin);
  while (!queue.empty()) {
    GridPoint v = queue.front();
    queue.pop_front();
    for (int axis = 1; axis <= static_cast<int>(dim); ++axis) {
      GridEdge fwd{v, axis};
      if (net.count(fwd)) {
        GridPoint u = v;
        ++u[axis - 1];
        if (seen.insert(u).second) {
          tree.insert(fwd);
          queue.push_back(u);
        }
      }
      GridPoint u = v;
      --u[axis - 1];
      GridEdge back{u, axis};
      if (net.count(back) && seen.insert(u).second) {
        tree.insert(back);
        queue.push_back(u);
      }
    }
  }

  CycleClass cls;
  for (const auto& [e, c] : net) {
    if (tree.count(e)) continue;
    cls.non_tree_edges.push_back(e);
    cls.coefficients.push_back(c);
  }
  return cls;
}

/// Membership in F'' = [F',F']: the grid lift closes up and is null-homologous.
inline bool is_in_second_derived(const Word& w) {
  if (!is_in_first_derived(w)) return false;
  return grid_homology_class(lift_to_grid(w)).is_zero();
}

// ---------------------------------------------------------------------------
// Plaquettes of the planar grid (rank 2). H_1 of the planar grid is free abelian
// on the unit squares; the coefficient of a square is the winding number of
// the loop around its centre.

/// Unit square with lower-left corner (x, y).
struct Plaquette {
  std::int64_t x;
  std::int64_t y;
  friend auto operator<=>(const Plaquette&, const Plaquette&) = default;
};

/// The first `count` plaquettes in ring order around the origin: ring r holds
/// the squares whose corner (x, y) has max(|x + 1/2|, |y + 1/2|) = r + 1/2,
/// ordered by (x, y) within a ring.
inline std::vector<Plaquette> plaquette_order(std::size_t count) {
  std::vector<Plaquette> out;
  for (std::int64_t r = 0; out.size() < count; ++r) {
    std::vector<Plaquette> ring;
    for (std::int64_t x = -r - 1; x <= r; ++x)
      for (std::int64_t y = -r - 1; y <= r; ++y) {
        std::int64_t rx = x >= 0 ? x : -x - 1;
        std::int64_t ry = y >= 0 ? y : -y - 1;
        if (std::max(rx, ry) == r) ring.push_back({x, y});
      }
    for (const auto& q : ring) {
      if (out.size() == count) break;
      out.push_back(q);
    }
  }
  return out;
}

/// Winding number of a closed planar path around the centre of `sq`, counted
/// by signed crossings of the rightward ray from the centre.
inline std::int64_t winding_number(const GridPath& p, const Plaquette& sq) {
  if (p.vertices.front().size() != 2) throw input_error("winding numbers need a rank-2 path");
  if (!p.closed()) throw input_error("winding numbers need a closed path");
  std::int64_t wind = 0;
  for (std::size_t i = 0; i < p.steps.size(); ++i) {
    const auto& s = p.steps[i];
    if (s.axis != 2) continue;
    const GridPoint& lo = s.sign > 0 ? p.vertices[i] : p.vertices[i + 1];
    if (lo[0] > sq.x && lo[1] == sq.y) wind += s.sign;
  }
  return wind;
}

/// Loop x1^x x2^y [x1,x2] x2^-y x1^-x: winds once around `sq` and nowhere else.
inline Word plaquette_loop(const Plaquette& sq) {
  Word to = multiply(power(Word::generator(1, 2), sq.x), power(Word::generator(2, 2), sq.y));
  return conjugate(commutator(Word::generator(1, 2), Word::generator(2, 2)), to);
}

}  // namespace covlim
