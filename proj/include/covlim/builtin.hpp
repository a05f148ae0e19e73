#pragma once

// Built-in towers, generated as tower files for a given number of levels.

#include <optional>
#include <string>
#include <vector>

#include "covlim/engine.hpp"
#include "covlim/tower_io.hpp"

namespace covlim {

struct BuiltinTower {
  std::string name;
  std::string anchor;  // what the tower models
  Connectivity expected;
  json (*make)(std::size_t levels);
};

namespace detail {

inline json unit_rows(std::size_t n) {
  json rows = json::array();
  for (std::size_t r = 0; r < n; ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < n; ++c) row.push_back(r == c ? 1 : 0);
    rows.push_back(row);
  }
  return rows;
}

inline json tower_header(const char* name, const char* base, std::size_t levels, bool stationary, bool regular) {
  return {{"format", 1}, {"name", name},           {"base", base},        {"horizon", levels},
          {"stationary", stationary}, {"regular", regular}, {"levels", json::array()}};
}

inline json torus_universal(std::size_t h) {
  json t = tower_header("torus-universal", "tower-complete", h, false, true);
  for (std::size_t i = 1; i <= h; ++i)
    t["levels"].push_back({{"rank", i}, {"kind", "abelian"}, {"subgroup", {{"lattice", json::array()}}},
                           {"description", "universal cover of the i-torus"}});
  return t;
}

inline json cw_torus(std::size_t h) {
  // One countable group Z^N (N = h + 1 stands in for the direct sum of
  // countably many Z) with H_i spanned by e_i, ..., e_N.
  const std::size_t n = h + 1;
  json t = tower_header("cw-torus", "countable-pi1", h, true, true);
  for (std::size_t i = 1; i <= h; ++i) {
    json lat = json::array();
    for (std::size_t k = i; k <= n; ++k) {
      json e = json::array();
      for (std::size_t c = 1; c <= n; ++c) e.push_back(c == k ? 1 : 0);
      lat.push_back(e);
    }
    json L = {{"rank", n}, {"kind", "abelian"}, {"subgroup", {{"lattice", lat}}}};
    if (i > 1) L["bond"] = "identity";
    t["levels"].push_back(L);
  }
  return t;
}

inline json squaring(std::size_t h) {
  json t = tower_header("squaring", "wedge", h, true, true);
  for (std::size_t i = 1; i <= h; ++i)
    t["levels"].push_back({{"rank", i},
                           {"subgroup", {{"kernel-to", {{"type", "Z/2^" + std::to_string(i)}, {"images", unit_rows(i)}}}}},
                           {"bond", "deletion"},
                           {"description", "2^i-fold cover unwrapping each circle twice"}});
  t["levels"][0].erase("bond");
  return t;
}

inline json solenoid_twist(std::size_t h) {
  if (h > 61) throw input_error("solenoid-twist supports at most 61 levels");
  json t = tower_header("solenoid-twist", "tower-complete", h, true, false);
  for (std::size_t i = 1; i <= h; ++i) {
    json v = json::array();
    for (std::size_t k = i + 1; k-- > 0;) v.push_back(std::int64_t(1) << k);
    t["levels"].push_back({{"rank", i + 1},
                           {"kind", "abelian"},
                           {"subgroup", {{"lattice", json::array({v})}}},
                           {"description", "cyclic subgroup generated by (2^i, ..., 2, 1)"}});
  }
  return t;
}

inline json grid(std::size_t h) {
  json t = tower_header("grid", "wedge", h, true, true);
  for (std::size_t i = 1; i <= h; ++i)
    t["levels"].push_back({{"rank", i},
                           {"subgroup", {{"kernel-to", {{"type", "Z^" + std::to_string(i)}, {"images", unit_rows(i)}}}}},
                           {"description", "commutator subgroup: the Z^i grid cover"}});
  return t;
}

inline json second_derived(std::size_t h) {
  // Subtower of the rank-2 grid: the loops with zero winding number around
  // each of the first i plaquettes. The intersection is F_2''.
  json t = tower_header("second-derived", "countable-pi1", h, true, false);
  for (std::size_t i = 1; i <= h; ++i) {
    json L = {{"rank", 2}, {"subgroup", {{"grid-cycle-kernel", {{"squares", i}}}}}};
    if (i > 1) L["bond"] = "identity";
    t["levels"].push_back(L);
  }
  return t;
}

inline json universal_cover(std::size_t h) {
  json t = tower_header("universal-cover", "wedge", h, true, true);
  for (std::size_t i = 1; i <= h; ++i)
    t["levels"].push_back({{"rank", i}, {"subgroup", {{"generators", json::array()}}},
                           {"description", "universal cover of the wedge of i circles"}});
  return t;
}

}  // namespace detail

inline const std::vector<BuiltinTower>& builtin_towers() {
  static const std::vector<BuiltinTower> all = {
      {"torus-universal", "universal covers of the finite tori, over the infinite torus", Connectivity::Connected,
       detail::torus_universal},
      {"cw-torus", "covers of the CW infinite torus with fibres the tails of the direct sum of Z", Connectivity::Disconnected,
       detail::cw_torus},
      {"squaring", "2^i-fold covers of the Hawaiian earring approximants, quotients (Z/2)^i", Connectivity::Connected,
       detail::squaring},
      {"solenoid-twist", "abelian tower with subgroups <(2^i, ..., 2, 1)>, not Mittag-Leffler", Connectivity::Disconnected,
       detail::solenoid_twist},
      {"grid", "Z^i grid covers (commutator subgroups) of the Hawaiian earring approximants", Connectivity::Connected,
       detail::grid},
      {"second-derived", "covers of the planar grid cutting F_2' down towards F_2''", Connectivity::Disconnected,
       detail::second_derived},
      {"universal-cover", "universal covers of the wedges of i circles", Connectivity::Unknown, detail::universal_cover},
  };
  return all;
}

inline const BuiltinTower* find_builtin(const std::string& name) {
  for (const auto& b : builtin_towers())
    if (b.name == name) return &b;
  return nullptr;
}

inline CoveringTower builtin_tower(const std::string& name, std::size_t levels = 8) {
  const BuiltinTower* b = find_builtin(name);
  if (!b) throw input_error("no built-in tower named \"" + name + "\"");
  return parse_tower(b->make(levels));
}

}  // namespace covlim
