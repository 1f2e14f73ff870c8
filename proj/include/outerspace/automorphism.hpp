#pragma once

// Automorphisms of F_n as products of elementary Nielsen moves.
//
// A factorization m_1, ..., m_k denotes the automorphism m_1 o m_2 o ... o m_k.
// Replaying it from the identity acts on the tuple of generator images:
// each move rewrites the current images (e.g. right_multiply a by b sets
// image(a) <- image(a) * image(b)). With this convention composition is
// concatenation and inversion is reversal with each move inverted.

#include <optional>
#include <string>
#include <vector>

#include "outerspace/errors.hpp"
#include "outerspace/word.hpp"

namespace outerspace {

enum class MoveKind { RightMultiply, LeftMultiply, Invert, Transpose };

struct NielsenMove {
  MoveKind kind = MoveKind::Invert;
  int target = 1;      // 1-based generator index
  int other = 0;       // multiplier / transposition partner; unused for Invert
  bool inverse = false;  // multiply by other^-1 instead of other

  static NielsenMove right_multiply(int target, int by, bool inv = false) {
    return {MoveKind::RightMultiply, target, by, inv};
  }
  static NielsenMove left_multiply(int target, int by, bool inv = false) {
    return {MoveKind::LeftMultiply, target, by, inv};
  }
  static NielsenMove invert(int target) { return {MoveKind::Invert, target, 0, false}; }
  static NielsenMove transpose(int a, int b) { return {MoveKind::Transpose, a, b, false}; }

  NielsenMove inverted() const {
    NielsenMove m = *this;
    if (kind == MoveKind::RightMultiply || kind == MoveKind::LeftMultiply) m.inverse = !inverse;
    return m;
  }

  friend bool operator==(const NielsenMove&, const NielsenMove&) = default;
};

inline void validate_move(int rank, const NielsenMove& m) {
  auto in_range = [rank](int i) { return i >= 1 && i <= rank; };
  if (!in_range(m.target)) throw MalformedInput("Nielsen move target out of rank");
  if (m.kind != MoveKind::Invert) {
    if (!in_range(m.other)) throw MalformedInput("Nielsen move partner out of rank");
    if (m.other == m.target) throw MalformedInput("Nielsen move needs two distinct generators");
  }
}

// Applies one move to a tuple of images (precomposition by the move).
inline void replay_move(std::vector<Word>& images, const NielsenMove& m) {
  Word& t = images[m.target - 1];
  switch (m.kind) {
    case MoveKind::RightMultiply:
      t = t * (m.inverse ? images[m.other - 1].inverse() : images[m.other - 1]);
      break;
    case MoveKind::LeftMultiply:
      t = (m.inverse ? images[m.other - 1].inverse() : images[m.other - 1]) * t;
      break;
    case MoveKind::Invert:
      t = t.inverse();
      break;
    case MoveKind::Transpose:
      std::swap(t, images[m.other - 1]);
      break;
  }
}

class Automorphism {
 public:
  static Automorphism identity(int rank) { return from_moves(rank, {}); }

  static Automorphism from_moves(int rank, std::vector<NielsenMove> moves) {
    if (rank < 2) throw MalformedInput("automorphisms need rank >= 2");
    Automorphism a;
    a.rank_ = rank;
    for (int i = 1; i <= rank; ++i) a.images_.push_back(Word::generator(rank, i));
    for (const auto& m : moves) {
      validate_move(rank, m);
      replay_move(a.images_, m);
    }
    a.moves_ = std::move(moves);
    return a;
  }

  // Raw images are accepted but cannot be inverted.
  static Automorphism from_images(std::vector<Word> images) {
    if (images.size() < 2) throw MalformedInput("automorphisms need rank >= 2");
    Automorphism a;
    a.rank_ = static_cast<int>(images.size());
    for (const auto& w : images) {
      require_same_rank(a.rank_, w.rank());
      if (w.empty()) throw MalformedInput("generator image is trivial");
    }
    a.images_ = std::move(images);
    return a;
  }

  int rank() const { return rank_; }
  const std::vector<Word>& images() const { return images_; }
  const Word& image(int generator) const { return images_.at(generator - 1); }
  bool invertible() const { return moves_.has_value(); }
  const std::optional<std::vector<NielsenMove>>& moves() const { return moves_; }

  Word apply(const Word& w) const {
    require_same_rank(rank_, w.rank());
    Word out(rank_);
    for (Letter l : w.letters()) {
      if (l > 0) {
        out *= images_[l - 1];
      } else {
        out *= images_[-l - 1].inverse();
      }
    }
    return out;
  }

 private:
  int rank_ = 0;
  std::vector<Word> images_;
  std::optional<std::vector<NielsenMove>> moves_;
};

inline Word apply(const Automorphism& phi, const Word& w) { return phi.apply(w); }

// compose(phi, psi) = phi o psi, i.e. apply psi first.
inline Automorphism compose(const Automorphism& phi, const Automorphism& psi) {
  require_same_rank(phi.rank(), psi.rank());
  if (phi.invertible() && psi.invertible()) {
    std::vector<NielsenMove> moves = *phi.moves();
    moves.insert(moves.end(), psi.moves()->begin(), psi.moves()->end());
    return Automorphism::from_moves(phi.rank(), std::move(moves));
  }
  std::vector<Word> images;
  for (const auto& w : psi.images()) images.push_back(phi.apply(w));
  return Automorphism::from_images(std::move(images));
}

inline Automorphism invert(const Automorphism& phi) {
  if (!phi.invertible()) {
    throw UnsupportedInput("automorphism given by images only has no stored Nielsen factorization");
  }
  std::vector<NielsenMove> moves;
  const auto& fwd = *phi.moves();
  for (auto it = fwd.rbegin(); it != fwd.rend(); ++it) moves.push_back(it->inverted());
  return Automorphism::from_moves(phi.rank(), std::move(moves));
}

inline Automorphism power(const Automorphism& phi, int exponent) {
  Automorphism base = exponent < 0 ? invert(phi) : phi;
  Automorphism out = Automorphism::identity(phi.rank());
  for (int i = 0; i < std::abs(exponent); ++i) out = compose(out, base);
  return out;
}

// a -> b, b -> c, c -> ab at rank 3 (generalises to x_i -> x_{i+1},
// x_n -> x_1 x_2 at rank n).
inline Automorphism tribonacci_like(int rank = 3) {
  std::vector<NielsenMove> moves;
  for (int i = 1; i < rank; ++i) moves.push_back(NielsenMove::transpose(i, i + 1));
  moves.push_back(NielsenMove::right_multiply(rank, 1));
  return Automorphism::from_moves(rank, std::move(moves));
}

}  // namespace outerspace
