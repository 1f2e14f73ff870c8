#pragma once

// Inverting a basis map F_n -> F_n by Stallings folding.
//
// Given words m_1..m_n over a second alphabet e_1..e_n, we build a rose
// whose i-th petal is subdivided and spells m_i. Every edge also carries an
// x-label; the last edge of petal i carries x_i so that reading a based loop
// gives an x-word u and an e-word v with m(u) = v. Folding keeps that
// invariant by twisting x-labels at the vertex being absorbed. When the
// m_i form a basis the folded graph is the standard rose and the x-label of
// the loop e_k is the preimage of e_k.

#include <vector>

#include "outerspace/errors.hpp"
#include "outerspace/word.hpp"

namespace outerspace::detail {

struct FoldEdge {
  int from;
  int to;
  int letter;  // > 0; reading from -> to spells e_letter
  Word label;
  bool alive = true;
};

class FoldingGraph {
 public:
  FoldingGraph(int rank, const std::vector<Word>& petals) : rank_(rank) {
    vertex_count_ = 1;
    for (std::size_t i = 0; i < petals.size(); ++i) {
      const auto& ls = petals[i].letters();
      if (ls.empty()) throw InvariantViolation("marking sends a generator to the identity");
      int prev = 0;
      for (std::size_t j = 0; j < ls.size(); ++j) {
        const bool last = j + 1 == ls.size();
        const int next = last ? 0 : vertex_count_++;
        Word label = last ? Word::generator(rank, static_cast<int>(i) + 1) : Word(rank);
        if (ls[j] > 0) {
          edges_.push_back({prev, next, ls[j], std::move(label)});
        } else {
          edges_.push_back({next, prev, -ls[j], label.inverse()});
        }
        prev = next;
      }
    }
  }

  std::vector<Word> fold_to_inverse() {
    while (fold_once()) {
    }
    std::vector<Word> inverse(rank_, Word(rank_));
    std::vector<bool> seen(rank_, false);
    int alive = 0;
    for (const auto& e : edges_) {
      if (!e.alive) continue;
      ++alive;
      if (e.from != 0 || e.to != 0 || seen[e.letter - 1]) {
        throw InvariantViolation("marking is not a homotopy equivalence");
      }
      seen[e.letter - 1] = true;
      inverse[e.letter - 1] = e.label;
    }
    if (alive != rank_) throw InvariantViolation("marking is not a homotopy equivalence");
    return inverse;
  }

 private:
  struct End {
    int edge;
    int outgoing;  // signed letter read when leaving the vertex along this end
    int other;
    Word read;  // x-label read in that direction
  };

  std::vector<End> ends_at(int v) const {
    std::vector<End> out;
    for (int i = 0; i < static_cast<int>(edges_.size()); ++i) {
      const auto& e = edges_[i];
      if (!e.alive) continue;
      if (e.from == v) out.push_back({i, e.letter, e.to, e.label});
      if (e.to == v) out.push_back({i, -e.letter, e.from, e.label.inverse()});
    }
    return out;
  }

  // Conjugates the labels around v by g; based loops keep their x-words.
  void twist(int v, const Word& g) {
    const Word g_inv = g.inverse();
    for (auto& e : edges_) {
      if (!e.alive) continue;
      if (e.to == v) e.label = e.label * g;
      if (e.from == v) e.label = g_inv * e.label;
    }
  }

  void merge(int absorbed, int into) {
    for (auto& e : edges_) {
      if (!e.alive) continue;
      if (e.from == absorbed) e.from = into;
      if (e.to == absorbed) e.to = into;
    }
  }

  bool fold_once() {
    for (int v = 0; v < vertex_count_; ++v) {
      const auto ends = ends_at(v);
      for (std::size_t i = 0; i < ends.size(); ++i) {
        for (std::size_t j = i + 1; j < ends.size(); ++j) {
          if (ends[i].outgoing != ends[j].outgoing || ends[i].edge == ends[j].edge) continue;
          fold(v, ends[i], ends[j]);
          return true;
        }
      }
    }
    return false;
  }

  void fold(int v, const End& a, const End& b) {
    const int u = a.other;
    const int w = b.other;
    if (u == w) {
      // Parallel edges: injectivity forces equal labels.
      if (!(a.read == b.read)) throw InvariantViolation("marking is not injective");
      edges_[b.edge].alive = false;
      return;
    }
    if (w != 0 && w != v) {
      twist(w, b.read.inverse() * a.read);
      merge(w, u);
      edges_[b.edge].alive = false;
    } else if (u != 0 && u != v) {
      twist(u, a.read.inverse() * b.read);
      merge(u, w);
      edges_[a.edge].alive = false;
    } else if (w == v) {
      // b is a loop at v and u is the base vertex.
      twist(v, b.read.inverse() * a.read);
      merge(v, u);
      edges_[b.edge].alive = false;
    } else {
      twist(v, a.read.inverse() * b.read);
      merge(v, w);
      edges_[a.edge].alive = false;
    }
  }

  int rank_;
  int vertex_count_ = 0;
  std::vector<FoldEdge> edges_;
};

// images[i] is the image of x_{i+1}, a word in the letters e_1..e_n.
// Returns the preimage of each e_k, or throws if the images are not a basis.
inline std::vector<Word> invert_basis_map(int rank, const std::vector<Word>& images) {
  if (static_cast<int>(images.size()) != rank) {
    throw InvariantViolation("basis map needs exactly rank images");
  }
  FoldingGraph g(rank, images);
  return g.fold_to_inverse();
}

}  // namespace outerspace::detail
