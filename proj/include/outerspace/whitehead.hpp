#pragma once

// Length-reduction phase of Whitehead's algorithm at small rank.
//
// Only the non-permutation ("type 2") Whitehead automorphisms can change
// cyclic length. For a letter m and a choice, for every other generator x,
// of one of x -> x, x m, m^-1 x, m^-1 x m, we get one such automorphism.
// By peak reduction, a primitive cyclic word that is not a single letter
// always admits a strictly length-reducing Whitehead automorphism, so a
// final length of 1 certifies primitivity.

#include <vector>

#include "outerspace/automorphism.hpp"
#include "outerspace/errors.hpp"
#include "outerspace/word.hpp"

namespace outerspace {

inline constexpr int kMaxWhiteheadRank = 4;

inline std::vector<Automorphism> whitehead_automorphisms(int rank) {
  if (rank > kMaxWhiteheadRank) {
    throw UnsupportedInput("Whitehead enumeration supports rank <= 4");
  }
  std::vector<Automorphism> out;
  int choices = 1;
  for (int i = 1; i < rank; ++i) choices *= 4;
  for (int g = 1; g <= rank; ++g) {
    for (int sign : {1, -1}) {
      const Word m = Word::generator(rank, g * sign);
      const Word m_inv = m.inverse();
      for (int code = 1; code < choices; ++code) {
        std::vector<Word> images;
        int c = code;
        for (int x = 1; x <= rank; ++x) {
          const Word gx = Word::generator(rank, x);
          if (x == g) {
            images.push_back(gx);
            continue;
          }
          switch (c % 4) {
            case 0: images.push_back(gx); break;
            case 1: images.push_back(gx * m); break;
            case 2: images.push_back(m_inv * gx); break;
            default: images.push_back(m_inv * gx * m); break;
          }
          c /= 4;
        }
        out.push_back(Automorphism::from_images(std::move(images)));
      }
    }
  }
  return out;
}

struct WhiteheadResult {
  std::size_t minimal_length = 0;
  Word witness;
  int steps = 0;
  bool primitive() const { return minimal_length == 1; }
};

inline WhiteheadResult whitehead_length_reduce(const Word& w) {
  const auto autos = whitehead_automorphisms(w.rank());
  WhiteheadResult r;
  r.witness = cyclic_reduce(w).core;
  while (true) {
    const std::size_t current = r.witness.length();
    std::size_t best_len = current;
    Word best;
    for (const auto& a : autos) {
      Word image = cyclic_reduce(a.apply(r.witness)).core;
      if (image.length() < best_len) {
        best_len = image.length();
        best = std::move(image);
      }
    }
    if (best_len == current) break;
    r.witness = std::move(best);
    ++r.steps;
  }
  r.minimal_length = r.witness.length();
  return r;
}

}  // namespace outerspace
