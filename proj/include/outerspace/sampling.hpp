#pragma once

// Seeded random points of the spine and random automorphisms.
//
// A random spine point: start from a rose, apply a few random expansions,
// draw lengths uniformly from [0.2, 1], normalize to volume one and reject
// until the systole is at least epsilon, then precompose the marking with a
// short random Nielsen word.

#include <cstdint>
#include <random>
#include <vector>

#include "outerspace/automorphism.hpp"
#include "outerspace/builders.hpp"
#include "outerspace/marked_graph.hpp"

namespace outerspace {

using Rng = std::mt19937_64;

inline int uniform_int(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }
inline double uniform_real(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline NielsenMove random_nielsen_move(Rng& rng, int rank) {
  const int target = uniform_int(rng, 1, rank);
  int other = uniform_int(rng, 1, rank - 1);
  if (other >= target) ++other;
  const int kind = uniform_int(rng, 0, 9);
  if (kind < 4) return NielsenMove::right_multiply(target, other, uniform_int(rng, 0, 1) == 1);
  if (kind < 8) return NielsenMove::left_multiply(target, other, uniform_int(rng, 0, 1) == 1);
  if (kind < 9) return NielsenMove::invert(target);
  return NielsenMove::transpose(target, other);
}

inline Automorphism random_automorphism(Rng& rng, int rank, int moves) {
  std::vector<NielsenMove> ms;
  for (int i = 0; i < moves; ++i) ms.push_back(random_nielsen_move(rng, rank));
  return Automorphism::from_moves(rank, std::move(ms));
}

inline Word random_word(Rng& rng, int rank, int length) {
  std::vector<Letter> ls;
  while (static_cast<int>(ls.size()) < length) {
    Letter l = uniform_int(rng, 1, rank) * (uniform_int(rng, 0, 1) == 1 ? -1 : 1);
    if (!ls.empty() && ls.back() == -l) continue;
    ls.push_back(l);
  }
  return Word::from_letters(rank, ls);
}

// Random topology with the marking of the rose carried along.
inline MarkedGraph random_topology(Rng& rng, int rank, int max_expansions) {
  MarkedGraph g = unit_rose(rank);
  const int steps = uniform_int(rng, 0, max_expansions);
  for (int i = 0; i < steps; ++i) {
    std::vector<int> splittable;
    for (int v = 0; v < g.vertex_count(); ++v) {
      if (g.valence(v) >= 4) splittable.push_back(v);
    }
    if (splittable.empty()) break;
    const int v = splittable[uniform_int(rng, 0, static_cast<int>(splittable.size()) - 1)];
    auto options = expansions(g, v);
    g = options[uniform_int(rng, 0, static_cast<int>(options.size()) - 1)].graph;
  }
  return g;
}

inline MarkedGraph random_lengths(Rng& rng, const MarkedGraph& topology, double eps) {
  for (int attempt = 0; attempt < 1000; ++attempt) {
    std::vector<double> lengths;
    for (int e = 0; e < topology.edge_count(); ++e) lengths.push_back(uniform_real(rng, 0.2, 1.0));
    MarkedGraph g = normalize_volume(topology.with_lengths(lengths));
    if (in_spine(g, eps, 0.0)) return g;
  }
  throw PreconditionFailed("could not draw lengths inside the epsilon-spine");
}

struct SpineSamplerConfig {
  std::uint64_t seed = 1;
  int max_expansions = 3;
  int nielsen_moves = 3;
};

inline MarkedGraph random_spine_point(Rng& rng, int rank, double eps, int max_expansions = 3,
                                      int nielsen_moves = 3) {
  const MarkedGraph topo = random_topology(rng, rank, max_expansions);
  const MarkedGraph metric = random_lengths(rng, topo, eps);
  return precompose_marking(metric, random_automorphism(rng, rank, nielsen_moves));
}

inline std::vector<MarkedGraph> random_spine_points(const SpineSamplerConfig& cfg, int rank, double eps,
                                                    int count) {
  Rng rng(cfg.seed);
  std::vector<MarkedGraph> out;
  for (int i = 0; i < count; ++i) {
    out.push_back(random_spine_point(rng, rank, eps, cfg.max_expansions, cfg.nielsen_moves));
  }
  return out;
}

}  // namespace outerspace
