#pragma once

// Rational geodesic currents: finite positive combinations of duals of
// conjugacy classes, and their length pairing with marked graphs.

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "outerspace/automorphism.hpp"
#include "outerspace/errors.hpp"
#include "outerspace/marked_graph.hpp"
#include "outerspace/word.hpp"

namespace outerspace {

struct Atom {
  Word cls;  // canonical_class, never a proper power
  double weight = 0.0;
};

class RationalCurrent {
 public:
  RationalCurrent() = default;
  explicit RationalCurrent(int rank) : rank_(rank) {}

  // Canonicalizes classes, folds w^k into k * dual(w), merges repeats.
  static RationalCurrent from_atoms(int rank, const std::vector<std::pair<Word, double>>& atoms) {
    RationalCurrent c(rank);
    for (const auto& [w, weight] : atoms) {
      require_same_rank(rank, w.rank());
      if (!(weight > 0.0) || !std::isfinite(weight)) throw MalformedInput("current weights must be positive");
      const Word core = canonical_class(w);
      if (core.empty()) throw MalformedInput("current atom is the trivial class");
      auto [root, k] = primitive_root(core);
      c.atoms_.push_back({canonical_class(root), weight * k});
    }
    std::stable_sort(c.atoms_.begin(), c.atoms_.end(),
                     [](const Atom& a, const Atom& b) { return canonical_less(a.cls, b.cls); });
    std::vector<Atom> merged;
    for (auto& a : c.atoms_) {
      if (!merged.empty() && merged.back().cls == a.cls) {
        merged.back().weight += a.weight;
      } else {
        merged.push_back(std::move(a));
      }
    }
    c.atoms_ = std::move(merged);
    return c;
  }

  static RationalCurrent dual(const Word& w, double weight = 1.0) {
    return from_atoms(w.rank(), {{w, weight}});
  }

  int rank() const { return rank_; }
  const std::vector<Atom>& atoms() const { return atoms_; }
  bool empty() const { return atoms_.empty(); }

  double total_weight() const {
    double t = 0.0;
    for (const auto& a : atoms_) t += a.weight;
    return t;
  }

  RationalCurrent scaled(double t) const {
    if (!(t > 0.0) || !std::isfinite(t)) throw MalformedInput("current scale must be positive");
    RationalCurrent c = *this;
    for (auto& a : c.atoms_) a.weight *= t;
    return c;
  }

  friend RationalCurrent operator+(const RationalCurrent& a, const RationalCurrent& b) {
    require_same_rank(a.rank_, b.rank_);
    std::vector<std::pair<Word, double>> all;
    for (const auto& x : a.atoms_) all.emplace_back(x.cls, x.weight);
    for (const auto& x : b.atoms_) all.emplace_back(x.cls, x.weight);
    return from_atoms(a.rank_, all);
  }

 private:
  int rank_ = 0;
  std::vector<Atom> atoms_;
};

inline double pairing(const MarkedGraph& t, const RationalCurrent& nu) {
  require_same_rank(t.rank(), nu.rank());
  double total = 0.0;
  for (const auto& a : nu.atoms()) total += a.weight * length_of(t, a.cls);
  return total;
}

// Objective coefficients: sum of weight * crossing vector over the atoms.
inline std::vector<double> crossing_weights(const MarkedGraph& t, const RationalCurrent& nu) {
  require_same_rank(t.rank(), nu.rank());
  std::vector<double> out(t.edge_count(), 0.0);
  for (const auto& a : nu.atoms()) {
    const auto counts = crossing_vector(t, a.cls);
    for (int e = 0; e < t.edge_count(); ++e) out[e] += a.weight * counts[e];
  }
  return out;
}

inline RationalCurrent normalize_at(const MarkedGraph& x, const RationalCurrent& nu) {
  const double p = pairing(x, nu);
  if (!(p > 0.0)) throw InvariantViolation("current has zero pairing with the basepoint");
  return nu.scaled(1.0 / p);
}

inline RationalCurrent apply_to_current(const Automorphism& phi, const RationalCurrent& nu) {
  require_same_rank(phi.rank(), nu.rank());
  std::vector<std::pair<Word, double>> atoms;
  for (const auto& a : nu.atoms()) atoms.emplace_back(phi.apply(a.cls), a.weight);
  return RationalCurrent::from_atoms(nu.rank(), atoms);
}

// e^s mu + e^-s nu.
inline RationalCurrent weighted_sum(const RationalCurrent& mu, const RationalCurrent& nu, double s) {
  return mu.scaled(std::exp(s)) + nu.scaled(std::exp(-s));
}

// Equal up to a positive scalar.
inline bool projectively_equal(const RationalCurrent& a, const RationalCurrent& b, double tol = 1e-12) {
  if (a.atoms().size() != b.atoms().size() || a.empty()) return false;
  const double ratio = b.atoms().front().weight / a.atoms().front().weight;
  for (std::size_t i = 0; i < a.atoms().size(); ++i) {
    if (!(a.atoms()[i].cls == b.atoms()[i].cls)) return false;
    if (std::abs(b.atoms()[i].weight - ratio * a.atoms()[i].weight) > tol * std::abs(b.atoms()[i].weight)) {
      return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Power iteration toward the attracting and repelling currents of phi.

struct IwipApproximation {
  Automorphism phi;
  Word seed;
  int k = 0;
  RationalCurrent forward;
  RationalCurrent backward;
  double lambda_forward = 0.0;
  double lambda_backward = 0.0;
  std::vector<double> history_forward;   // lambda estimate after j steps, j = 0..k
  std::vector<double> history_backward;
  bool converged = false;    // last two estimates differ by < tol in both directions
  bool exponential = false;  // growth looks exponential in both directions
};

namespace detail {

struct GrowthRun {
  Word word;  // cyclically reduced phi^k(seed)
  std::vector<double> lambdas;
};

inline GrowthRun iterate_growth(const Automorphism& phi, const Word& seed, int k, const MarkedGraph& base) {
  GrowthRun run;
  Word w = cyclic_reduce(seed).core;
  double len = length_of(base, w);
  for (int j = 0; j <= k; ++j) {
    Word next = cyclic_reduce(phi.apply(w)).core;
    if (next.empty()) throw InvariantViolation("seed iterates to the identity");
    const double next_len = length_of(base, next);
    run.lambdas.push_back(next_len / len);
    if (j < k) {
      w = std::move(next);
      len = next_len;
    }
  }
  run.word = std::move(w);
  return run;
}

// Polynomial growth of degree d gives lambda_j - 1 ~ d / j, which halves
// between j/2 and j; exponential growth keeps it roughly constant.
inline bool looks_exponential(const std::vector<double>& lambdas) {
  const std::size_t k = lambdas.size() - 1;
  if (k < 4) return false;
  const double late = lambdas[k] - 1.0;
  const double mid = lambdas[k / 2] - 1.0;
  return late > 1e-9 && late > 0.75 * mid;
}

}  // namespace detail

inline IwipApproximation iwip_pair_approx(const Automorphism& phi, const Word& seed, int k,
                                          const MarkedGraph& base, double tol = 1e-6) {
  require_same_rank(phi.rank(), seed.rank());
  require_same_rank(phi.rank(), base.rank());
  if (k < 0) throw MalformedInput("iteration depth must be nonnegative");
  if (cyclic_reduce(seed).core.empty()) throw MalformedInput("seed must be nontrivial");
  const Automorphism phi_inv = invert(phi);
  IwipApproximation r{phi, seed, k, {}, {}, 0.0, 0.0, {}, {}, false, false};
  const auto fwd = detail::iterate_growth(phi, seed, k, base);
  const auto bwd = detail::iterate_growth(phi_inv, seed, k, base);
  r.forward = normalize_at(base, RationalCurrent::dual(fwd.word));
  r.backward = normalize_at(base, RationalCurrent::dual(bwd.word));
  r.history_forward = fwd.lambdas;
  r.history_backward = bwd.lambdas;
  r.lambda_forward = fwd.lambdas.back();
  r.lambda_backward = bwd.lambdas.back();
  if (k >= 1) {
    r.converged = std::abs(fwd.lambdas[k] - fwd.lambdas[k - 1]) < tol &&
                  std::abs(bwd.lambdas[k] - bwd.lambdas[k - 1]) < tol;
  }
  r.exponential = detail::looks_exponential(fwd.lambdas) && detail::looks_exponential(bwd.lambdas);
  return r;
}

// ---------------------------------------------------------------------------
// Sampling evidence for positivity of a pair.

struct PositivityReport {
  double min_value = 0.0;  // min over sample points of <T, mu + nu>
  int argmin = -1;
  bool diagonal = false;   // mu and nu projectively equal
  // Sample words w whose loop, with every edge it misses shrunk to length
  // zero, gives a degenerate tree on which both currents vanish.
  std::vector<std::pair<int, Word>> annihilating;  // (sample point index, word)
  double delta = 0.0;
  bool pass() const { return !diagonal && annihilating.empty() && min_value > delta; }
};

inline PositivityReport positivity_check(const RationalCurrent& mu, const RationalCurrent& nu,
                                         const std::vector<MarkedGraph>& sample_points,
                                         const std::vector<Word>& sample_words, double delta = 1e-9) {
  require_same_rank(mu.rank(), nu.rank());
  PositivityReport r;
  r.delta = delta;
  r.diagonal = projectively_equal(mu, nu);
  const RationalCurrent sum = mu + nu;
  bool first = true;
  for (std::size_t i = 0; i < sample_points.size(); ++i) {
    const auto& t = sample_points[i];
    const double v = pairing(t, sum);
    if (first || v < r.min_value) {
      r.min_value = v;
      r.argmin = static_cast<int>(i);
      first = false;
    }
    const auto wm = crossing_weights(t, mu);
    const auto wn = crossing_weights(t, nu);
    for (const auto& w : sample_words) {
      if (cyclic_reduce(w).core.empty()) continue;
      const auto support = crossing_vector(t, w);
      double pm = 0.0;
      double pn = 0.0;
      for (int e = 0; e < t.edge_count(); ++e) {
        if (support[e] == 0) continue;
        pm += wm[e] * t.edge(e).length;
        pn += wn[e] * t.edge(e).length;
      }
      if (pm <= delta && pn <= delta) r.annihilating.emplace_back(static_cast<int>(i), w);
    }
  }
  return r;
}

}  // namespace outerspace
