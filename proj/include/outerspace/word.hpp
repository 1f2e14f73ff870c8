#pragma once

// Reduced words in the free group F_n.
//
// Letters are integer coded: generator x_i is +i and its inverse is -i, for
// 1 <= i <= rank. A Word is always freely reduced; anything built from raw
// letters goes through reduce().

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "outerspace/errors.hpp"

namespace outerspace {

using Letter = int;

class Word {
 public:
  Word() = default;
  explicit Word(int rank) : rank_(rank) {}

  // Validates letter indices against the rank and freely reduces.
  static Word from_letters(int rank, std::span<const Letter> letters);
  static Word from_letters(int rank, std::initializer_list<Letter> letters) {
    return from_letters(rank, std::span<const Letter>(letters.begin(), letters.size()));
  }
  static Word generator(int rank, int index) { return from_letters(rank, {index}); }

  int rank() const { return rank_; }
  const std::vector<Letter>& letters() const { return letters_; }
  std::size_t length() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  Letter front() const { return letters_.front(); }
  Letter back() const { return letters_.back(); }

  Word inverse() const {
    Word out(rank_);
    out.letters_.reserve(letters_.size());
    for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) out.letters_.push_back(-*it);
    return out;
  }

  // In-place right multiplication by an already-valid word.
  Word& operator*=(const Word& rhs) {
    require_same_rank(rank_, rhs.rank_);
    for (Letter l : rhs.letters_) push_reduced(l);
    return *this;
  }
  friend Word operator*(Word lhs, const Word& rhs) { return lhs *= rhs; }

  // Appends one letter with free cancellation; the letter must be valid.
  void push_reduced(Letter l) {
    if (!letters_.empty() && letters_.back() == -l) {
      letters_.pop_back();
    } else {
      letters_.push_back(l);
    }
  }

  friend bool operator==(const Word&, const Word&) = default;

 private:
  int rank_ = 0;
  std::vector<Letter> letters_;
};

inline void validate_letter(int rank, Letter l) {
  if (l == 0 || std::abs(l) > rank) {
    throw MalformedInput("letter index " + std::to_string(l) + " outside rank " +
                         std::to_string(rank));
  }
}

inline Word Word::from_letters(int rank, std::span<const Letter> letters) {
  if (rank < 1) throw MalformedInput("rank must be positive");
  Word w(rank);
  w.letters_.reserve(letters.size());
  for (Letter l : letters) {
    validate_letter(rank, l);
    w.push_reduced(l);
  }
  return w;
}

inline Word reduce(int rank, std::span<const Letter> letters) {
  return Word::from_letters(rank, letters);
}

inline Word power(const Word& w, int exponent) {
  Word base = exponent < 0 ? w.inverse() : w;
  Word out(w.rank());
  for (int i = 0; i < std::abs(exponent); ++i) out *= base;
  return out;
}

struct CyclicReduction {
  Word core;
  Word conjugator;  // w == conjugator * core * conjugator^-1
};

inline CyclicReduction cyclic_reduce(const Word& w) {
  const auto& ls = w.letters();
  std::size_t lo = 0;
  std::size_t hi = ls.size();
  while (hi - lo >= 2 && ls[lo] == -ls[hi - 1]) {
    ++lo;
    --hi;
  }
  CyclicReduction out{Word(w.rank()), Word(w.rank())};
  out.core = Word::from_letters(w.rank(), std::span<const Letter>(ls.data() + lo, hi - lo));
  out.conjugator = Word::from_letters(w.rank(), std::span<const Letter>(ls.data(), lo));
  return out;
}

inline std::size_t cyclic_length(const Word& w) { return cyclic_reduce(w).core.length(); }

// Total order on letters used for canonical forms: a < a' < b < b' < ...
inline int letter_order(Letter l) { return 2 * (std::abs(l) - 1) + (l < 0 ? 1 : 0); }

inline bool letters_less(std::span<const Letter> a, std::span<const Letter> b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(),
                                      [](Letter x, Letter y) { return letter_order(x) < letter_order(y); });
}

// Canonical word order: shorter first, then lexicographic in letter_order.
inline bool canonical_less(const Word& a, const Word& b) {
  if (a.length() != b.length()) return a.length() < b.length();
  return letters_less(a.letters(), b.letters());
}

// Start index of the lexicographically least rotation (Booth's algorithm).
inline std::size_t least_rotation(const std::vector<int>& s) {
  const std::size_t n = s.size();
  if (n == 0) return 0;
  std::vector<long> fail(2 * n, -1);
  std::size_t k = 0;
  for (std::size_t j = 1; j < 2 * n; ++j) {
    const int sj = s[j % n];
    long i = fail[j - k - 1];
    while (i != -1 && sj != s[(k + static_cast<std::size_t>(i) + 1) % n]) {
      if (sj < s[(k + static_cast<std::size_t>(i) + 1) % n]) k = j - static_cast<std::size_t>(i) - 1;
      i = fail[static_cast<std::size_t>(i)];
    }
    if (i == -1 && sj != s[k % n]) {
      if (sj < s[k % n]) k = j;
      fail[j - k] = -1;
    } else {
      fail[j - k] = i + 1;
    }
  }
  return k % n;
}

// Canonical representative of the conjugacy class of w up to inversion:
// the cyclic reduction, then the least rotation of it or of its inverse.
inline Word canonical_class(const Word& w) {
  Word core = cyclic_reduce(w).core;
  if (core.length() <= 1) {
    if (core.length() == 1 && core.front() < 0) return core.inverse();
    return core;
  }
  const std::size_t n = core.length();
  std::vector<Letter> best;
  std::vector<int> keys(n);
  std::vector<Letter> rotation(n);
  for (const Word& candidate : {core, core.inverse()}) {
    const auto& ls = candidate.letters();
    for (std::size_t i = 0; i < n; ++i) keys[i] = letter_order(ls[i]);
    const std::size_t r = least_rotation(keys);
    for (std::size_t i = 0; i < n; ++i) rotation[i] = ls[(r + i) % n];
    if (best.empty() || letters_less(rotation, best)) best = rotation;
  }
  return Word::from_letters(w.rank(), best);
}

// Splits a cyclically reduced word into root^exponent with exponent maximal.
inline std::pair<Word, int> primitive_root(const Word& core) {
  const auto& ls = core.letters();
  const std::size_t n = ls.size();
  for (std::size_t p = 1; p < n; ++p) {
    if (n % p != 0) continue;
    bool periodic = true;
    for (std::size_t i = p; i < n && periodic; ++i) periodic = ls[i] == ls[i - p];
    if (periodic) {
      return {Word::from_letters(core.rank(), std::span<const Letter>(ls.data(), p)),
              static_cast<int>(n / p)};
    }
  }
  return {core, 1};
}

// Textual form: letters a, b, c, ... for generators. An inverse is written
// with a trailing apostrophe (a'), as an upper-case letter (A), or with a
// leading minus (-a). Whitespace between letters is optional; "1" denotes
// the identity.
inline Word parse_word(std::string_view text, int rank) {
  std::vector<Letter> letters;
  bool pending_minus = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c)) || c == '*' || c == '.') continue;
    if (c == '1' && !pending_minus) continue;
    if (c == '-') {
      if (pending_minus) throw MalformedInput("double minus in word '" + std::string(text) + "'");
      pending_minus = true;
      continue;
    }
    Letter l = 0;
    if (c >= 'a' && c <= 'z') {
      l = c - 'a' + 1;
    } else if (c >= 'A' && c <= 'Z') {
      l = -(c - 'A' + 1);
    } else {
      throw MalformedInput("unexpected character '" + std::string(1, c) + "' in word '" +
                           std::string(text) + "'");
    }
    while (i + 1 < text.size() && text[i + 1] == '\'') {
      l = -l;
      ++i;
    }
    if (pending_minus) l = -l;
    pending_minus = false;
    letters.push_back(l);
  }
  if (pending_minus) throw MalformedInput("dangling minus in word '" + std::string(text) + "'");
  return Word::from_letters(rank, letters);
}

inline std::string format_letter(Letter l) {
  std::string s(1, static_cast<char>('a' + std::abs(l) - 1));
  if (l < 0) s += '\'';
  return s;
}

inline std::string format_word(const Word& w) {
  std::string out;
  for (Letter l : w.letters()) {
    if (!out.empty()) out += ' ';
    out += format_letter(l);
  }
  return out;
}

}  // namespace outerspace
