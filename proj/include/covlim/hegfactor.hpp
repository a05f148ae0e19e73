#pragma once

// Finite-horizon elements of lim F_n: coherent word sequences, their
// exponent profiles, and the splitting w = g k with g an ordered tail word
// x_1^{e_1} x_2^{e_2} ... and k in the commutator subgroup at every level.

#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "covlim/word.hpp"

namespace covlim {

/// words[i-1] = w_i in F_i.
struct CoherentWordSeq {
  std::vector<Word> words;

  std::size_t horizon() const { return words.size(); }
  const Word& at(std::size_t level) const { return words.at(level - 1); }
};

struct CoherenceViolation {
  std::size_t level = 0;  // w_{level+1} does not project to w_level
  std::string message;
};

inline std::optional<CoherenceViolation> validate_coherent(const CoherentWordSeq& s) {
  for (std::size_t i = 1; i <= s.horizon(); ++i)
    if (static_cast<std::size_t>(s.at(i).rank()) != i)
      return CoherenceViolation{i, "w_" + std::to_string(i) + " must live in F_" + std::to_string(i)};
  for (std::size_t i = 1; i < s.horizon(); ++i) {
    Word down = apply_hom(FreeHom::deletion(static_cast<int>(i + 1), static_cast<int>(i)), s.at(i + 1));
    if (down != s.at(i))
      return CoherenceViolation{i, "w_" + std::to_string(i + 1) + " projects to " + to_string(down) + ", not " +
                                       to_string(s.at(i))};
  }
  return std::nullopt;
}

inline void require_coherent(const CoherentWordSeq& s) {
  if (auto v = validate_coherent(s)) throw input_error("incoherent sequence at level " + std::to_string(v->level) + ": " + v->message);
}

/// Entry i is the exponent sum of x_i in w_h.
inline std::vector<std::int64_t> exponent_profile(const CoherentWordSeq& s) {
  if (s.words.empty()) return {};
  return exponent_vector(s.words.back());
}

struct TailWord {
  std::vector<std::int64_t> exponents;

  /// x_1^{e_1} ... x_level^{e_level} in F_level.
  Word truncation(std::size_t level) const {
    const int n = static_cast<int>(level);
    Word w(n);
    for (std::size_t k = 0; k < level && k < exponents.size(); ++k)
      w = multiply(w, power(Word::generator(static_cast<int>(k + 1), n), exponents[k]));
    return w;
  }

  bool is_identity() const {
    for (auto e : exponents)
      if (e != 0) return false;
    return true;
  }
};

struct Factorization {
  TailWord g;
  CoherentWordSeq k;
};

/// g is the ordered tail word with the profile of s; k_i = g_i^{-1} w_i has
/// zero exponent vector at every level.
inline Factorization factor_tail_kernel(const CoherentWordSeq& s) {
  require_coherent(s);
  Factorization f;
  f.g.exponents = exponent_profile(s);
  for (std::size_t i = 1; i <= s.horizon(); ++i) f.k.words.push_back(multiply(invert(f.g.truncation(i)), s.at(i)));
  return f;
}

/// Levels i with multiply(g_i, k_i) != w_i or k_i outside F_i'; empty means certified.
inline std::vector<std::size_t> factorization_failures(const CoherentWordSeq& s, const Factorization& f) {
  std::vector<std::size_t> bad;
  for (std::size_t i = 1; i <= s.horizon(); ++i)
    if (multiply(f.g.truncation(i), f.k.at(i)) != s.at(i) || !is_in_first_derived(f.k.at(i))) bad.push_back(i);
  return bad;
}

struct OccurrenceReport {
  /// counts[i-1] = occurrences of x_i^{+-1} in w_h.
  std::vector<std::size_t> counts;
  /// Generators whose counts grew strictly over the last three levels.
  std::vector<std::size_t> growing;
};

inline std::size_t occurrences(const Word& w, std::size_t generator) {
  std::size_t c = 0;
  for (Letter l : w.letters())
    if (static_cast<std::size_t>(std::abs(l)) == generator) ++c;
  return c;
}

inline OccurrenceReport letter_occurrence_report(const CoherentWordSeq& s) {
  OccurrenceReport r;
  const std::size_t h = s.horizon();
  for (std::size_t i = 1; i <= h; ++i) r.counts.push_back(occurrences(s.at(h), i));
  if (h >= 3)
    for (std::size_t i = 1; i <= h - 2; ++i) {
      std::size_t a = occurrences(s.at(h - 2), i), b = occurrences(s.at(h - 1), i), c = occurrences(s.at(h), i);
      if (a < b && b < c) r.growing.push_back(i);
    }
  return r;
}

/// One word per line, line i in F_i; blank lines and '#' comments are skipped.
inline CoherentWordSeq parse_coherent_text(const std::string& text) {
  CoherentWordSeq s;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const int level = static_cast<int>(s.words.size()) + 1;
    try {
      s.words.push_back(parse_word(line, level));
    } catch (const input_error& e) {
      throw input_error("level " + std::to_string(level) + ": " + e.what());
    }
  }
  return s;
}

inline CoherentWordSeq load_coherent_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw input_error("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_coherent_text(buf.str());
}

}  // namespace covlim
