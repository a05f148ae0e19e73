#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace covlim {

/// Raised on malformed input: bad word syntax, index out of range, rank mismatch.
class input_error : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// A letter is a signed generator index: +k is x_k, -k is its inverse X_k.
using Letter = int;

using ExponentVector = std::vector<std::int64_t>;

/// Freely reduced word in the free group of the given rank.
class Word {
public:
  Word() = default;
  explicit Word(int rank) : rank_(rank) { check_rank(rank); }

  /// Reduces `raw` on construction.
  Word(std::vector<Letter> raw, int rank) : rank_(rank) {
    check_rank(rank);
    letters_.reserve(raw.size());
    for (Letter l : raw) push(l);
  }

  static Word generator(int index, int rank, int sign = 1) {
    return Word({sign > 0 ? index : -index}, rank);
  }

  int rank() const { return rank_; }
  const std::vector<Letter>& letters() const { return letters_; }
  std::size_t length() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }

  /// Same letters viewed in a free group of larger (or equal) rank.
  Word lifted(int rank) const {
    if (rank < max_index())
      throw input_error("cannot view word in rank " + std::to_string(rank));
    Word w(rank);
    w.letters_ = letters_;
    return w;
  }

  int max_index() const {
    int m = 0;
    for (Letter l : letters_) m = std::max(m, std::abs(l));
    return m;
  }

  friend bool operator==(const Word&, const Word&) = default;
  friend auto operator<=>(const Word&, const Word&) = default;

private:
  friend Word multiply(const Word&, const Word&);

  static void check_rank(int rank) {
    if (rank < 1) throw input_error("free group rank must be positive");
  }

  void push(Letter l) {
    if (l == 0 || std::abs(l) > rank_)
      throw input_error("generator index " + std::to_string(std::abs(l)) +
                        " out of range for rank " + std::to_string(rank_));
    if (!letters_.empty() && letters_.back() == -l)
      letters_.pop_back();
    else
      letters_.push_back(l);
  }

  int rank_ = 1;
  std::vector<Letter> letters_;
};

inline Word reduce(const std::vector<Letter>& raw, int rank) { return Word(raw, rank); }

inline void require_same_rank(const Word& a, const Word& b) {
  if (a.rank() != b.rank())
    throw input_error("rank mismatch: " + std::to_string(a.rank()) + " vs " +
                      std::to_string(b.rank()));
}

inline Word multiply(const Word& a, const Word& b) {
  require_same_rank(a, b);
  Word r = a;
  for (Letter l : b.letters()) r.push(l);
  return r;
}

inline Word invert(const Word& a) {
  std::vector<Letter> raw(a.letters().rbegin(), a.letters().rend());
  for (Letter& l : raw) l = -l;
  return Word(std::move(raw), a.rank());
}

inline Word power(const Word& a, std::int64_t n) {
  Word base = n < 0 ? invert(a) : a;
  Word r(a.rank());
  for (std::int64_t i = 0; i < (n < 0 ? -n : n); ++i) r = multiply(r, base);
  return r;
}

/// [a,b] = a b a^-1 b^-1
inline Word commutator(const Word& a, const Word& b) {
  return multiply(multiply(a, b), multiply(invert(a), invert(b)));
}

inline Word conjugate(const Word& w, const Word& by) {
  return multiply(multiply(by, w), invert(by));
}

// ---------------------------------------------------------------------------
// Text form: "x3" is generator 3, "X3" its inverse, "x3^-2" a power,
// "[u,v]" a commutator, "(u)^k" a grouped power, "1" the identity.

namespace detail {

class WordParser {
public:
  WordParser(std::string_view text, int rank) : text_(text), rank_(rank) {}

  std::vector<Letter> parse_all() {
    auto r = parse_sequence();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected character");
    return r;
  }

  int max_index_seen() const { return max_index_; }

private:
  [[noreturn]] void fail(const std::string& what) const {
    throw input_error("word syntax error at position " + std::to_string(pos_) + " in \"" +
                      std::string(text_) + "\": " + what);
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool at(char c) {
    skip_space();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  std::int64_t parse_int(bool allow_sign) {
    skip_space();
    bool neg = false;
    if (allow_sign && pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) {
      neg = text_[pos_] == '-';
      ++pos_;
    }
    std::size_t start = pos_;
    std::int64_t v = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      v = v * 10 + (text_[pos_] - '0');
      if (v > (std::int64_t{1} << 40)) fail("number too large");
      ++pos_;
    }
    if (start == pos_) fail("expected a number");
    return neg ? -v : v;
  }

  std::vector<Letter> parse_sequence() {
    std::vector<Letter> out;
    for (;;) {
      skip_space();
      if (pos_ == text_.size() || text_[pos_] == ',' || text_[pos_] == ']' || text_[pos_] == ')')
        return out;
      auto f = parse_factor();
      out.insert(out.end(), f.begin(), f.end());
    }
  }

  static std::vector<Letter> inverse(const std::vector<Letter>& w) {
    std::vector<Letter> r(w.rbegin(), w.rend());
    for (Letter& l : r) l = -l;
    return r;
  }

  std::vector<Letter> parse_factor() {
    std::vector<Letter> atom = parse_atom();
    if (!at('^')) return atom;
    ++pos_;
    std::int64_t e = parse_int(true);
    if (e < -100000 || e > 100000) fail("exponent too large");
    std::vector<Letter> base = e < 0 ? inverse(atom) : atom;
    std::vector<Letter> out;
    for (std::int64_t i = 0; i < (e < 0 ? -e : e); ++i) out.insert(out.end(), base.begin(), base.end());
    return out;
  }

  std::vector<Letter> parse_atom() {
    skip_space();
    char c = text_[pos_];
    if (c == 'x' || c == 'X') {
      ++pos_;
      std::int64_t idx = parse_int(false);
      if (idx < 1) fail("generator indices start at 1");
      if (rank_ > 0 && idx > rank_)
        throw input_error("generator index " + std::to_string(idx) + " out of range for rank " +
                          std::to_string(rank_));
      if (idx > 1000000) fail("generator index too large");
      max_index_ = std::max<int>(max_index_, static_cast<int>(idx));
      return {c == 'x' ? static_cast<Letter>(idx) : -static_cast<Letter>(idx)};
    }
    if (c == '1') {
      ++pos_;
      return {};
    }
    if (c == '[') {
      ++pos_;
      auto a = parse_sequence();
      if (!at(',')) fail("expected ',' in commutator");
      ++pos_;
      auto b = parse_sequence();
      if (!at(']')) fail("expected ']'");
      ++pos_;
      std::vector<Letter> out = a;
      out.insert(out.end(), b.begin(), b.end());
      auto ai = inverse(a), bi = inverse(b);
      out.insert(out.end(), ai.begin(), ai.end());
      out.insert(out.end(), bi.begin(), bi.end());
      return out;
    }
    if (c == '(') {
      ++pos_;
      auto a = parse_sequence();
      if (!at(')')) fail("expected ')'");
      ++pos_;
      return a;
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int rank_;
  int max_index_ = 0;
};

}  // namespace detail

/// Parses the text form in the free group of rank `rank`.
inline Word parse_word(std::string_view text, int rank) {
  detail::WordParser p(text, rank);
  return Word(p.parse_all(), rank);
}

/// Largest generator index mentioned in `text` (0 for the identity).
inline int max_generator_index(std::string_view text) {
  detail::WordParser p(text, 0);
  p.parse_all();
  return p.max_index_seen();
}

inline std::string to_string(const Word& w) {
  if (w.empty()) return "1";
  std::string s;
  for (Letter l : w.letters()) {
    if (!s.empty()) s += ' ';
    s += l > 0 ? 'x' : 'X';
    s += std::to_string(std::abs(l));
  }
  return s;
}

// ---------------------------------------------------------------------------

/// Homomorphism F_source -> F_target given by the images of the source generators.
struct FreeHom {
  int source_rank = 1;
  int target_rank = 1;
  std::vector<Word> images;

  FreeHom() = default;
  FreeHom(int source, int target, std::vector<Word> imgs)
      : source_rank(source), target_rank(target), images(std::move(imgs)) {
    if (static_cast<int>(images.size()) != source_rank)
      throw input_error("homomorphism needs one image per source generator");
    for (const Word& w : images)
      if (w.rank() != target_rank) throw input_error("homomorphism image has wrong rank");
  }

  static FreeHom identity(int rank) {
    std::vector<Word> imgs;
    for (int k = 1; k <= rank; ++k) imgs.push_back(Word::generator(k, rank));
    return FreeHom(rank, rank, std::move(imgs));
  }

  /// F_source -> F_target keeping x_1..x_target and killing the rest.
  static FreeHom deletion(int source, int target) {
    if (target > source) throw input_error("deletion projection must not increase rank");
    std::vector<Word> imgs;
    for (int k = 1; k <= source; ++k)
      imgs.push_back(k <= target ? Word::generator(k, target) : Word(target));
    return FreeHom(source, target, std::move(imgs));
  }

  bool is_deletion() const { return *this == deletion(source_rank, target_rank); }

  friend bool operator==(const FreeHom&, const FreeHom&) = default;
};

inline Word apply_hom(const FreeHom& h, const Word& w) {
  if (w.rank() != h.source_rank)
    throw input_error("rank mismatch applying homomorphism: word rank " +
                      std::to_string(w.rank()) + ", source rank " +
                      std::to_string(h.source_rank));
  std::vector<Letter> raw;
  for (Letter l : w.letters()) {
    const auto& img = h.images[std::abs(l) - 1].letters();
    if (l > 0)
      raw.insert(raw.end(), img.begin(), img.end());
    else
      for (auto it = img.rbegin(); it != img.rend(); ++it) raw.push_back(-*it);
  }
  return Word(std::move(raw), h.target_rank);
}

/// g after f.
inline FreeHom compose(const FreeHom& g, const FreeHom& f) {
  if (f.target_rank != g.source_rank) throw input_error("cannot compose homomorphisms");
  std::vector<Word> imgs;
  for (const Word& w : f.images) imgs.push_back(apply_hom(g, w));
  return FreeHom(f.source_rank, g.target_rank, std::move(imgs));
}

inline std::string to_string(const FreeHom& h) {
  std::string s;
  for (int k = 0; k < h.source_rank; ++k) {
    if (k) s += "; ";
    s += "x" + std::to_string(k + 1) + "->" + to_string(h.images[k]);
  }
  return s;
}

// ---------------------------------------------------------------------------

inline ExponentVector exponent_vector(const Word& w) {
  ExponentVector v(w.rank(), 0);
  for (Letter l : w.letters()) v[std::abs(l) - 1] += l > 0 ? 1 : -1;
  return v;
}

/// Membership in F' = [F,F]: every exponent sum vanishes.
inline bool is_in_first_derived(const Word& w) {
  for (auto e : exponent_vector(w))
    if (e != 0) return false;
  return true;
}

}  // namespace covlim
