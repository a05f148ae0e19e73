#pragma once

// JSON tower files (format 1).
//
//   {"format": 1, "name": "...", "base": "wedge" | "tower-complete" | "countable-pi1",
//    "stationary": bool, "regular": bool, "horizon": int,
//    "levels": [{"rank": n, "kind": "free" | "abelian", "description": "...",
//                "subgroup": {"generators": ["x1 x1", ...]}
//                          | {"kernel-to": {"type": "Z^k" | "Z/m^k", "images": [[...], ...]}}
//                          | {"lattice": [[...], ...]}
//                          | {"grid-cycle-kernel": {"squares": k}},
//                "bond": "deletion" | "identity" | {"images": ["word", ...] | [[...], ...]}}]}
//
// A level's bond maps it to the previous level; it defaults to the deletion
// projection and is ignored on the first level.

#include <fstream>
#include <regex>
#include <set>
#include <sstream>
#include <string>

#include <json.hpp>

#include "covlim/tower.hpp"

namespace covlim {

using json = nlohmann::json;

namespace detail {

inline void only_keys(const json& j, const std::string& where, std::initializer_list<const char*> allowed) {
  if (!j.is_object()) throw input_error(where + ": expected an object");
  std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& [k, _] : j.items())
    if (!ok.count(k)) throw input_error(where + ": unknown field \"" + k + "\"");
}

inline const json& field(const json& j, const std::string& where, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) throw input_error(where + ": missing field \"" + key + "\"");
  return *it;
}

inline std::int64_t as_int(const json& j, const std::string& where) {
  if (!j.is_number_integer()) throw input_error(where + ": expected an integer");
  return j.get<std::int64_t>();
}

inline std::string as_string(const json& j, const std::string& where) {
  if (!j.is_string()) throw input_error(where + ": expected a string");
  return j.get<std::string>();
}

inline std::vector<IntVector> int_rows(const json& j, const std::string& where, std::size_t width) {
  if (!j.is_array()) throw input_error(where + ": expected a list of integer lists");
  std::vector<IntVector> out;
  for (std::size_t r = 0; r < j.size(); ++r) {
    const std::string w = where + "[" + std::to_string(r) + "]";
    if (!j[r].is_array() || j[r].size() != width)
      throw input_error(w + ": expected a list of " + std::to_string(width) + " integers");
    IntVector v;
    for (std::size_t c = 0; c < width; ++c) v.push_back(Integer(as_int(j[r][c], w)));
    out.push_back(std::move(v));
  }
  return out;
}

inline Word word_in(const json& j, const std::string& where, std::size_t rank) {
  try {
    return parse_word(as_string(j, where), static_cast<int>(rank));
  } catch (const input_error& e) {
    throw input_error(where + ": " + e.what());
  }
}

inline Subgroup parse_subgroup(const json& j, const std::string& where, std::size_t rank, GroupKind kind) {
  only_keys(j, where, {"generators", "kernel-to", "lattice", "grid-cycle-kernel"});
  if (j.size() != 1) throw input_error(where + ": give exactly one subgroup descriptor");

  if (j.contains("generators")) {
    if (kind != GroupKind::Free) throw input_error(where + ": generator lists need a free level");
    const json& g = j["generators"];
    if (!g.is_array()) throw input_error(where + ".generators: expected a list of words");
    std::vector<Word> gens;
    for (std::size_t k = 0; k < g.size(); ++k)
      gens.push_back(word_in(g[k], where + ".generators[" + std::to_string(k) + "]", rank));
    return FiniteGenSubgroup{core_from_generators(gens, static_cast<int>(rank))};
  }
  if (j.contains("lattice")) return LatticeSubgroup{Lattice::span(rank, int_rows(j["lattice"], where + ".lattice", rank))};
  if (j.contains("grid-cycle-kernel")) {
    const std::string w = where + ".grid-cycle-kernel";
    const json& g = j["grid-cycle-kernel"];
    only_keys(g, w, {"squares"});
    std::int64_t squares = as_int(field(g, w, "squares"), w + ".squares");
    if (squares < 0) throw input_error(w + ".squares: must be non-negative");
    return GridCycleKernel{static_cast<std::size_t>(squares)};
  }

  const std::string w = where + ".kernel-to";
  const json& k = j["kernel-to"];
  only_keys(k, w, {"type", "images"});
  static const std::regex type_re(R"(Z(?:/([0-9]+))?(?:\^([0-9]+))?)");
  const std::string type = as_string(field(k, w, "type"), w + ".type");
  std::smatch m;
  if (!std::regex_match(type, m, type_re)) throw input_error(w + ".type: expected Z^k or Z/m^k, got \"" + type + "\"");
  const std::size_t width = m[2].matched ? std::stoul(m[2].str()) : 1;
  const json& imgs = field(k, w, "images");
  if (!imgs.is_array() || imgs.size() != rank)
    throw input_error(w + ".images: expected one image per generator (" + std::to_string(rank) + ")");
  IntMatrix P = IntMatrix::from_columns(width, int_rows(imgs, w + ".images", width));
  if (!m[1].matched) return LatticeSubgroup{kernel_lattice(P)};
  const Integer modulus(m[1].str());
  if (modulus < 1) throw input_error(w + ".type: modulus must be positive");
  IntMatrix mI = IntMatrix::identity(width);
  for (std::size_t r = 0; r < width; ++r) mI(r, r) = modulus;
  return LatticeSubgroup{preimage(P, Lattice::span(mI))};
}

inline Bond parse_bond(const json& j, const std::string& where, std::size_t rank, std::size_t prev, GroupKind kind) {
  const int n = static_cast<int>(rank), p = static_cast<int>(prev);
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "deletion") {
      if (prev > rank) throw input_error(where + ": deletion projection cannot increase rank");
      if (kind == GroupKind::Free) return FreeHom::deletion(n, p);
      return IntMatrix::deletion(rank, prev);
    }
    if (s == "identity") {
      if (prev != rank) throw input_error(where + ": identity bond needs equal ranks");
      if (kind == GroupKind::Free) return FreeHom::identity(n);
      return IntMatrix::identity(rank);
    }
    throw input_error(where + ": unknown bond \"" + s + "\"");
  }
  only_keys(j, where, {"images"});
  const json& imgs = field(j, where, "images");
  if (!imgs.is_array() || imgs.size() != rank)
    throw input_error(where + ".images: expected one image per generator (" + std::to_string(rank) + ")");
  if (kind == GroupKind::Abelian) return IntMatrix::from_columns(prev, int_rows(imgs, where + ".images", prev));
  std::vector<Word> words;
  for (std::size_t k = 0; k < rank; ++k) words.push_back(word_in(imgs[k], where + ".images[" + std::to_string(k) + "]", prev));
  return FreeHom(n, p, std::move(words));
}

}  // namespace detail

inline BaseKind parse_base(const std::string& s) {
  if (s == "wedge") return BaseKind::WedgeExpansion;
  if (s == "tower-complete") return BaseKind::TowerComplete;
  if (s == "countable-pi1") return BaseKind::CountablePi1;
  throw input_error("base: expected wedge, tower-complete or countable-pi1, got \"" + s + "\"");
}

/// Builds the tower described by `j`; structural errors throw input_error.
/// Semantic checks (containment, normality) are left to validate_tower.
inline CoveringTower parse_tower(const json& j) {
  using namespace detail;
  only_keys(j, "tower", {"format", "name", "base", "stationary", "regular", "horizon", "levels"});
  if (j.contains("format") && as_int(j["format"], "format") != 1) throw input_error("format: only format 1 is supported");
  CoveringTower t;
  if (j.contains("name")) t.name = as_string(j["name"], "name");
  t.base = parse_base(as_string(field(j, "tower", "base"), "base"));
  if (j.contains("stationary")) {
    if (!j["stationary"].is_boolean()) throw input_error("stationary: expected true or false");
    t.stationary = j["stationary"].get<bool>();
  }
  if (j.contains("regular")) {
    if (!j["regular"].is_boolean()) throw input_error("regular: expected true or false");
    t.regular = j["regular"].get<bool>();
  }
  if (j.contains("horizon")) {
    std::int64_t h = as_int(j["horizon"], "horizon");
    if (h < 1) throw input_error("horizon: must be positive");
    t.horizon = static_cast<std::size_t>(h);
  }
  const json& levels = field(j, "tower", "levels");
  if (!levels.is_array() || levels.empty()) throw input_error("levels: expected a non-empty list");
  for (std::size_t i = 0; i < levels.size(); ++i) {
    const std::string where = "levels[" + std::to_string(i) + "]";
    const json& L = levels[i];
    only_keys(L, where, {"rank", "kind", "subgroup", "bond", "description"});
    LevelSpec spec;
    std::int64_t rank = as_int(field(L, where, "rank"), where + ".rank");
    if (rank < 1) throw input_error(where + ".rank: must be positive");
    spec.rank = static_cast<std::size_t>(rank);
    if (L.contains("kind")) {
      const std::string k = as_string(L["kind"], where + ".kind");
      if (k == "abelian")
        spec.kind = GroupKind::Abelian;
      else if (k != "free")
        throw input_error(where + ".kind: expected free or abelian");
    }
    if (L.contains("description")) spec.description = as_string(L["description"], where + ".description");
    spec.subgroup = parse_subgroup(field(L, where, "subgroup"), where + ".subgroup", spec.rank, spec.kind);
    if (i > 0) {
      const LevelSpec& prev = t.levels.back();
      if (prev.kind != spec.kind) throw input_error(where + ".kind: levels mix free and abelian groups");
      spec.bond = parse_bond(L.contains("bond") ? L["bond"] : json("deletion"), where + ".bond", spec.rank, prev.rank,
                             spec.kind);
    }
    t.levels.push_back(std::move(spec));
  }
  return t;
}

inline CoveringTower parse_tower_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw input_error(std::string("malformed JSON: ") + e.what());
  }
  return parse_tower(j);
}

inline CoveringTower load_tower_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw input_error("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_tower_text(buf.str());
}

}  // namespace covlim
