#pragma once

// Lipschitz distance through candidate loops.
//
// The optimal Lipschitz constant of a difference of markings X -> Y is the
// largest ratio ||w||_Y / ||w||_X over the candidate loops of X, so no
// optimal map is ever built. The witness candidate is the loop of maximal
// dilatation.

#include <cmath>
#include <utility>
#include <vector>

#include "outerspace/errors.hpp"
#include "outerspace/marked_graph.hpp"
#include "outerspace/parallel.hpp"

namespace outerspace {

struct StretchReport {
  double factor = 0.0;
  Word witness;
  std::vector<std::pair<Word, double>> per_candidate;  // canonical word order
};

// Relative slack under which two ratios count as tied; the earliest
// candidate in canonical order wins a tie.
inline constexpr double kTieTolerance = 1e-14;

inline StretchReport stretch(const std::vector<Candidate>& from_candidates, const MarkedGraph& y) {
  StretchReport r;
  r.per_candidate.resize(from_candidates.size());
  parallel_for(from_candidates.size(), [&](std::size_t i) {
    const auto& c = from_candidates[i];
    if (!(c.loop.length > 0.0)) throw PreconditionFailed("candidate loop of zero length in source graph");
    r.per_candidate[i] = {c.word, length_of(y, c.word) / c.loop.length};
  });
  for (const auto& pc : r.per_candidate) r.factor = std::max(r.factor, pc.second);
  for (const auto& pc : r.per_candidate) {
    if (pc.second >= r.factor * (1.0 - kTieTolerance)) {
      r.witness = pc.first;
      break;
    }
  }
  return r;
}

inline StretchReport stretch(const MarkedGraph& x, const MarkedGraph& y) {
  require_same_rank(x.rank(), y.rank());
  return stretch(candidates(x), y);
}

inline double d_L(const MarkedGraph& x, const MarkedGraph& y) { return std::log(stretch(x, y).factor); }

inline double d_sym(const MarkedGraph& x, const MarkedGraph& y) { return d_L(x, y) + d_L(y, x); }

// b with b * t in Sigma(x): the optimal Lipschitz constant x -> b t is one.
inline double sigma_scale(const MarkedGraph& x, const MarkedGraph& t) { return 1.0 / stretch(x, t).factor; }

// Candidate sets are reusable across many distance evaluations.
class DistanceCache {
 public:
  explicit DistanceCache(const std::vector<MarkedGraph>& points) : points_(points) {
    cands_.resize(points_.size());
    parallel_for(points_.size(), [&](std::size_t i) { cands_[i] = candidates(points_[i]); });
  }
  double d_L(std::size_t i, std::size_t j) const { return std::log(stretch(cands_[i], points_[j]).factor); }
  double d_sym(std::size_t i, std::size_t j) const { return d_L(i, j) + d_L(j, i); }
  const std::vector<Candidate>& candidates_of(std::size_t i) const { return cands_[i]; }

 private:
  std::vector<MarkedGraph> points_;
  std::vector<std::vector<Candidate>> cands_;
};

}  // namespace outerspace
