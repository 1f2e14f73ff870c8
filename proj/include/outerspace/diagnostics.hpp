#pragma once

// Sampling-based checks of the quantitative statements about contracting
// pairs, their axes and the projection to an axis. Nothing here proves a
// statement; each check reports the worst sample it saw, with seeds so the
// run can be reproduced.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "outerspace/current.hpp"
#include "outerspace/lipschitz.hpp"
#include "outerspace/minima.hpp"
#include "outerspace/sampling.hpp"

namespace outerspace {

// ---------------------------------------------------------------------------
// Coarse geodesics.

struct GeodesicDefect {
  double D = 0.0;
  int worst_i = -1;
  int worst_j = -1;
};

inline GeodesicDefect coarse_defect(const std::vector<std::pair<double, MarkedGraph>>& samples) {
  if (samples.size() < 2) throw PreconditionFailed("coarse defect needs at least two samples");
  for (std::size_t i = 1; i < samples.size(); ++i) {
    if (!(samples[i].first > samples[i - 1].first)) throw PreconditionFailed("parameters must increase strictly");
  }
  std::vector<MarkedGraph> pts;
  for (const auto& s : samples) pts.push_back(s.second);
  const DistanceCache cache(pts);
  GeodesicDefect g;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      const double defect = std::abs(cache.d_sym(i, j) - (samples[j].first - samples[i].first));
      if (g.worst_i < 0 || defect > g.D) {
        g.D = defect;
        g.worst_i = static_cast<int>(i);
        g.worst_j = static_cast<int>(j);
      }
    }
  }
  return g;
}

inline std::vector<std::pair<double, MarkedGraph>> reparametrize(const AxisSample& axis, double factor) {
  std::vector<std::pair<double, MarkedGraph>> out;
  for (const auto& p : axis.samples) out.emplace_back(factor * p.s, p.point);
  return out;
}

// Largest d_sym between consecutive samples: the empirical coarse constant
// of a sampled axis.
inline double axis_coarse_constant(const AxisSample& axis) {
  double c = 0.0;
  for (std::size_t i = 1; i < axis.samples.size(); ++i) {
    c = std::max(c, d_sym(axis.samples[i - 1].point, axis.samples[i].point));
  }
  return c;
}

inline double distance_to_axis(const MarkedGraph& t, const AxisSample& axis, int* nearest = nullptr) {
  double best = std::numeric_limits<double>::infinity();
  const auto cands = candidates(t);
  for (std::size_t i = 0; i < axis.samples.size(); ++i) {
    const auto& p = axis.samples[i].point;
    const double d = std::log(stretch(cands, p).factor) + d_L(p, t);
    if (d < best) {
      best = d;
      if (nearest != nullptr) *nearest = static_cast<int>(i);
    }
  }
  return best;
}

// ---------------------------------------------------------------------------
// Fitting B from the first clause.

struct FitB {
  double B = 1.0;
  double s_attaining = 0.0;
};

// The ratio <x,e^s mu> / <x,e^-s nu> at the stored minima; B is the largest
// ratio or inverse ratio, and at least 1.
inline FitB fit_B(const AxisSample& axis) {
  FitB f;
  for (const auto& p : axis.samples) {
    const double r = std::exp(2.0 * p.s) * pairing(p.point, axis.mu) / pairing(p.point, axis.nu);
    const double b = std::max(r, 1.0 / r);
    if (b > f.B) {
      f.B = b;
      f.s_attaining = p.s;
    }
  }
  return f;
}

inline FitB fit_B(const RationalCurrent& mu, const RationalCurrent& nu, double eps, double s_min, double s_max,
                  double step, const MarkedGraph& start, int budget) {
  return fit_B(axis(mu, nu, s_min, s_max, step, eps, budget, start));
}

// ---------------------------------------------------------------------------
// Coarse-geodesic bounds along lines of minima.

struct MinislineRow {
  double s = 0.0;
  double distance = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  bool pass() const { return distance >= lower && distance <= upper; }
  double margin() const { return std::min(distance - lower, upper - distance); }
};

struct MinislineReport {
  double B = 1.0;
  std::vector<MinislineRow> rows;
  bool pass() const {
    return std::all_of(rows.begin(), rows.end(), [](const MinislineRow& r) { return r.pass(); });
  }
};

// x is the stored minimum at s = 0, y_s the stored minimum at s.
inline MinislineReport check_minisline(const AxisSample& axis, double B, const std::vector<double>& s_list) {
  if (!(B >= 1.0)) throw MalformedInput("B must be at least 1");
  auto at = [&](double s) -> const MarkedGraph& {
    for (const auto& p : axis.samples) {
      if (std::abs(p.s - s) < 1e-9) return p.point;
    }
    throw PreconditionFailed("parameter " + std::to_string(s) + " is not on the sampled grid");
  };
  const MarkedGraph& x = at(0.0);
  MinislineReport r;
  r.B = B;
  for (double s : s_list) {
    const double d = d_sym(x, at(s));
    r.rows.push_back({s, d, 2.0 * s - 2.0 * std::log(B), 2.0 * s + 8.0 * std::log(B) + 2.0 * std::log(2.0)});
  }
  return r;
}

// ---------------------------------------------------------------------------
// Random walks in the spine.

struct WalkConfig {
  double length_sigma = 0.15;  // multiplicative log-normal length noise per step
  double nielsen_probability = 0.3;
};

inline MarkedGraph perturb(Rng& rng, const MarkedGraph& g, const WalkConfig& cfg) {
  MarkedGraph h = g;
  if (uniform_real(rng, 0.0, 1.0) < cfg.nielsen_probability) {
    h = act(Automorphism::from_moves(g.rank(), {random_nielsen_move(rng, g.rank())}), h);
  }
  std::normal_distribution<double> noise(0.0, cfg.length_sigma);
  auto lengths = h.lengths();
  for (double& l : lengths) l *= std::exp(noise(rng));
  return normalize_volume(h.with_lengths(lengths));
}

// Seeded walk points; non-spine proposals are rejected and the walk stays.
inline std::vector<MarkedGraph> walk_points(Rng& rng, const MarkedGraph& from, int walks, int steps, double eps,
                                            const WalkConfig& cfg) {
  std::vector<MarkedGraph> out;
  for (int w = 0; w < walks; ++w) {
    MarkedGraph cur = from;
    for (int s = 0; s < steps; ++s) {
      MarkedGraph next = perturb(rng, cur, cfg);
      if (!in_spine(next, eps, 0.0)) continue;
      cur = std::move(next);
      out.push_back(cur);
    }
  }
  return out;
}

// Points of Bal(mu, nu) in the spine: on a random topology, minimize a random
// positive objective subject to volume one, the cycle constraints and
// <T, mu> = <T, nu>.
inline std::optional<MarkedGraph> random_balanced_point(Rng& rng, const RationalCurrent& mu,
                                                        const RationalCurrent& nu, double eps,
                                                        const MarkedGraph& base) {
  const MarkedGraph topo = precompose_marking(random_topology(rng, base.rank(), 3),
                                              random_automorphism(rng, base.rank(), uniform_int(rng, 0, 4)));
  const int ne = topo.edge_count();
  const auto cm = crossing_weights(topo, mu);
  const auto cn = crossing_weights(topo, nu);
  LinearProgram lp;
  for (int e = 0; e < ne; ++e) lp.objective.push_back(uniform_real(rng, 0.0, 1.0));
  lp.add_row(std::vector<double>(ne, 1.0), Sense::Equal, 1.0);
  std::vector<double> diff(ne);
  for (int e = 0; e < ne; ++e) diff[e] = cm[e] - cn[e];
  lp.add_row(diff, Sense::Equal, 0.0);
  for (const auto& c : embedded_cycles(topo)) {
    const auto counts = indicator(topo, c.steps);
    lp.add_row(std::vector<double>(counts.begin(), counts.end()), Sense::GreaterEqual, eps);
  }
  const auto sol = solve_lp(lp);
  if (sol.status != LpStatus::Optimal) return std::nullopt;
  auto lengths = sol.x;
  for (double& l : lengths) {
    if (l < 1e-12) l = 0.0;
  }
  return collapse_short_edges(topo.with_lengths(lengths));
}

// ---------------------------------------------------------------------------
// The five clauses.

struct SamplerConfig {
  std::uint64_t seed = 1;
  int walks = 20;             // clause 2: walks from x
  int walk_steps = 10;
  int adversarial_walks = 10;
  int adversarial_steps = 25;
  int proposals = 8;
  int sigma_samples = 100;    // clause 4: random points of the spine, scaled into Sigma(x)
  int balanced_samples = 10;  // clause 5: points of Bal(mu, nu)
  int far_samples = 200;      // clause 5: candidate points of Bal(e^s mu, e^-s nu), |s| > B
  double s_step = 0.25;       // clause 3 grid on [-1, 1]
  int budget = 200;
  WalkConfig walk;
};

struct ClauseResult {
  int clause = 0;
  bool pass = true;
  int checked = 0;
  double worst = 0.0;   // worst observed value of the checked quantity
  double margin = 0.0;  // worst - threshold (negative on failure)
  std::string witness;
  std::string note;
};

struct ContractionReport {
  double B = 1.0;
  double eps = kDefaultEpsilon;
  SamplerConfig config;
  double x_value = 0.0;
  std::vector<ClauseResult> clauses;
  bool pass() const {
    return std::all_of(clauses.begin(), clauses.end(), [](const ClauseResult& c) { return c.pass; });
  }
};

inline std::string describe(const MarkedGraph& g) {
  std::string s = "graph V=" + std::to_string(g.vertex_count()) + " E=" + std::to_string(g.edge_count()) +
                  " lengths=";
  for (int e = 0; e < g.edge_count(); ++e) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%s%.6g", e == 0 ? "" : ",", g.edge(e).length);
    s += buf;
  }
  s += " marking=";
  for (int i = 1; i <= g.rank(); ++i) {
    s += (i == 1 ? "" : ";");
    for (Step st : g.marking(i)) s += g.edge(st.edge).id + (st.forward ? "+" : "-");
  }
  return s;
}

inline ContractionReport check_contracting(const RationalCurrent& mu, const RationalCurrent& nu, double B,
                                           double eps, const SamplerConfig& cfg, const MarkedGraph& start) {
  require_same_rank(mu.rank(), nu.rank());
  if (!(B >= 1.0)) throw MalformedInput("B must be at least 1");
  ContractionReport rep;
  rep.B = B;
  rep.eps = eps;
  rep.config = cfg;
  Rng rng(cfg.seed);

  const RationalCurrent sum = mu + nu;
  const MinResult xr = minimize(sum, eps, start, cfg.budget);
  const MarkedGraph& x = xr.point;
  rep.x_value = xr.value;
  const auto x_cands = candidates(x);
  auto dist = [&](const MarkedGraph& y) { return std::log(stretch(x_cands, y).factor) + d_L(y, x); };

  {  // 1: <x,mu>/<x,nu> in [1/B, B]
    ClauseResult c;
    c.clause = 1;
    const double r = pairing(x, mu) / pairing(x, nu);
    const double worst = std::max(r, 1.0 / r);
    c.checked = 1;
    c.worst = worst;
    c.margin = B - worst;
    c.pass = worst <= B;
    c.witness = "ratio " + std::to_string(r);
    rep.clauses.push_back(c);
  }
  {  // 2: d(x,y) > B implies <y,mu+nu>/<x,mu+nu> >= 2
    ClauseResult c;
    c.clause = 2;
    c.worst = std::numeric_limits<double>::infinity();
    auto record = [&](const MarkedGraph& y, double d, double ratio) {
      if (!(d > B)) return;
      ++c.checked;
      if (ratio < c.worst) {
        c.worst = ratio;
        c.witness = "d=" + std::to_string(d) + " ratio=" + std::to_string(ratio) + " " + describe(y);
      }
    };
    for (const auto& y : walk_points(rng, x, cfg.walks, cfg.walk_steps, eps, cfg.walk)) {
      record(y, dist(y), pairing(y, sum) / xr.value);
    }
    // Adversarial walks: among a few proposals, move to the farthest one
    // whose ratio is still below 2, else to the one with the smallest ratio.
    for (int w = 0; w < cfg.adversarial_walks; ++w) {
      MarkedGraph cur = x;
      for (int s = 0; s < cfg.adversarial_steps; ++s) {
        std::optional<MarkedGraph> pick;
        double pick_d = 0.0;
        double pick_r = 0.0;
        for (int p = 0; p < cfg.proposals; ++p) {
          MarkedGraph y = perturb(rng, cur, cfg.walk);
          if (!in_spine(y, eps, 0.0)) continue;
          const double d = dist(y);
          const double r = pairing(y, sum) / xr.value;
          const bool better = !pick || (r < 2.0 && (pick_r >= 2.0 || d > pick_d)) || (r >= 2.0 && pick_r >= 2.0 && r < pick_r);
          if (better) {
            pick = y;
            pick_d = d;
            pick_r = r;
          }
        }
        if (!pick) continue;
        cur = *pick;
        record(cur, pick_d, pick_r);
      }
    }
    c.pass = c.checked == 0 || c.worst >= 2.0;
    c.margin = c.checked == 0 ? 0.0 : c.worst - 2.0;
    if (c.checked == 0) {
      c.worst = 0.0;
      c.note = "no sampled point farther than B";
    }
    rep.clauses.push_back(c);
  }
  {  // 3: for s in [-1,1] some y in Min(e^s mu + e^-s nu) within B of x
    ClauseResult c;
    c.clause = 3;
    MarkedGraph warm = x;
    for (double s : axis_grid(-1.0, 1.0, cfg.s_step)) {
      const MinResult y = minimize_from(weighted_sum(mu, nu, s), eps, {x, warm}, cfg.budget);
      warm = y.point;
      const double d = dist(y.point);
      ++c.checked;
      if (d > c.worst || c.checked == 1) {
        c.worst = d;
        c.witness = "s=" + std::to_string(s) + " d=" + std::to_string(d);
      }
    }
    c.margin = B - c.worst;
    c.pass = c.worst <= B;
    rep.clauses.push_back(c);
  }
  const RationalCurrent mu_x = normalize_at(x, mu);
  const RationalCurrent nu_x = normalize_at(x, nu);
  {  // 4: <T, mu~ + nu~> >= 1/B on Sigma(x)
    ClauseResult c;
    c.clause = 4;
    c.worst = std::numeric_limits<double>::infinity();
    const RationalCurrent tilde = mu_x + nu_x;
    for (int i = 0; i < cfg.sigma_samples; ++i) {
      const MarkedGraph t = random_spine_point(rng, x.rank(), eps);
      const double b = 1.0 / stretch(x_cands, t).factor;
      const double v = b * pairing(t, tilde);
      ++c.checked;
      if (v < c.worst) {
        c.worst = v;
        c.witness = "value=" + std::to_string(v) + " " + describe(t);
      }
    }
    c.margin = c.worst - 1.0 / B;
    c.pass = c.worst >= 1.0 / B;
    rep.clauses.push_back(c);
  }
  {  // 5: basic duals of balanced trees stay >= 1/B on far balanced parts of Sigma(x)
    ClauseResult c;
    c.clause = 5;
    c.note = "boundary trees of the balanced sets are not sampled";
    std::vector<RationalCurrent> xis;
    std::vector<std::vector<Letter>> seen;
    for (int i = 0; i < cfg.balanced_samples; ++i) {
      const auto t = random_balanced_point(rng, mu, nu, eps, x);
      if (!t) continue;
      for (const auto& cand : candidates(*t)) {
        if (std::find(seen.begin(), seen.end(), cand.word.letters()) != seen.end()) continue;
        seen.push_back(cand.word.letters());
        xis.push_back(normalize_at(x, RationalCurrent::dual(cand.word)));
      }
    }
    c.worst = std::numeric_limits<double>::infinity();
    int far = 0;
    for (int i = 0; i < cfg.far_samples; ++i) {
      const MarkedGraph t = random_spine_point(rng, x.rank(), eps);
      const double s = balance_param(t, mu, nu);
      if (std::abs(s) <= B) continue;
      ++far;
      const double b = 1.0 / stretch(x_cands, t).factor;
      for (const auto& xi : xis) {
        const double v = b * pairing(t, xi);
        ++c.checked;
        if (v < c.worst) {
          c.worst = v;
          c.witness = "s=" + std::to_string(s) + " xi=" + format_word(xi.atoms().front().cls) +
                      " value=" + std::to_string(v);
        }
      }
    }
    if (c.checked == 0) {
      c.worst = 0.0;
      c.margin = 0.0;
      c.pass = true;
      c.note += "; no sampled tree balanced beyond |s| > B";
    } else {
      c.margin = c.worst - 1.0 / B;
      c.pass = c.worst >= 1.0 / B;
    }
    c.note += "; basic duals=" + std::to_string(xis.size()) + ", far trees=" + std::to_string(far);
    rep.clauses.push_back(c);
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Projections of balls.

struct BallSamplerConfig {
  std::uint64_t seed = 1;
  int budget = 200;
  int max_attempts_per_sample = 200;
  WalkConfig walk{0.1, 0.2};
};

// Points reached from the center by accepted short steps that stay inside
// the closed d_sym ball. Later samples extend earlier ones, so asking for
// more samples only adds points.
inline std::vector<MarkedGraph> ball_samples(const MarkedGraph& center, double radius, int n, double eps,
                                             const BallSamplerConfig& cfg) {
  std::vector<MarkedGraph> out;
  if (radius <= 0.0) {
    for (int i = 0; i < n; ++i) out.push_back(center);
    return out;
  }
  Rng rng(cfg.seed);
  const auto c_cands = candidates(center);
  MarkedGraph cur = center;
  int attempts = 0;
  while (static_cast<int>(out.size()) < n) {
    if (++attempts > cfg.max_attempts_per_sample * std::max(1, n)) {
      throw InvariantViolation("ball sampler stalled");
    }
    MarkedGraph next = perturb(rng, cur, cfg.walk);
    if (!in_spine(next, eps, 0.0)) continue;
    const double d = std::log(stretch(c_cands, next).factor) + d_L(next, center);
    if (d > radius) continue;
    cur = next;
    out.push_back(std::move(next));
  }
  return out;
}

struct BallProjection {
  double diameter = 0.0;
  int witness_i = -1;
  int witness_j = -1;
  double distance_to_axis = 0.0;
  int samples = 0;
  int distinct_projections = 0;
  std::vector<MarkedGraph> projections;
};

// Same combinatorics and marking, lengths equal up to tol.
inline bool same_point(const MarkedGraph& a, const MarkedGraph& b, double tol = 1e-9) {
  if (a.edge_count() != b.edge_count() || a.vertex_count() != b.vertex_count()) return false;
  for (int e = 0; e < a.edge_count(); ++e) {
    if (std::abs(a.edge(e).length - b.edge(e).length) > tol) return false;
  }
  for (int i = 1; i <= a.rank(); ++i) {
    if (a.marking(i) != b.marking(i)) return false;
  }
  for (int e = 0; e < a.edge_count(); ++e) {
    if (a.edge(e).tail != b.edge(e).tail || a.edge(e).head != b.edge(e).head) return false;
  }
  return true;
}

// Projects each ball sample (balance, then minimize from the sample and from
// the axis sample nearest the balance parameter) and measures the diameter.
inline BallProjection ball_projection_diameter(const RationalCurrent& mu, const RationalCurrent& nu,
                                               const MarkedGraph& center, double radius, int n, double eps,
                                               const AxisSample& reference, const BallSamplerConfig& cfg,
                                               bool skip_precondition = false) {
  BallProjection out;
  int nearest = -1;
  out.distance_to_axis = distance_to_axis(center, reference, &nearest);
  if (!skip_precondition && !(out.distance_to_axis > radius)) {
    throw PreconditionFailed("ball of radius " + std::to_string(radius) + " meets the sampled axis near s=" +
                             std::to_string(reference.samples[nearest].s));
  }
  const auto pts = ball_samples(center, radius, n, eps, cfg);
  out.samples = static_cast<int>(pts.size());
  std::vector<MarkedGraph> distinct;
  for (const auto& y : pts) {
    const double s = balance_param(y, mu, nu);
    std::size_t k = 0;
    for (std::size_t i = 1; i < reference.samples.size(); ++i) {
      if (std::abs(reference.samples[i].s - s) < std::abs(reference.samples[k].s - s)) k = i;
    }
    const MinResult r = project(y, mu, nu, eps, cfg.budget, {reference.samples[k].point});
    out.projections.push_back(r.point);
    bool dup = false;
    for (const auto& d : distinct) dup = dup || same_point(d, r.point);
    if (!dup) distinct.push_back(r.point);
  }
  out.distinct_projections = static_cast<int>(distinct.size());
  const DistanceCache cache(distinct);
  for (std::size_t i = 0; i < distinct.size(); ++i) {
    for (std::size_t j = i + 1; j < distinct.size(); ++j) {
      const double d = cache.d_sym(i, j);
      if (d > out.diameter) {
        out.diameter = d;
        out.witness_i = static_cast<int>(i);
        out.witness_j = static_cast<int>(j);
      }
    }
  }
  return out;
}

// First seeded random spine point at d_sym >= min_distance from the sampled
// axis, for balls that stay clear of it.
inline MarkedGraph ball_center(const AxisSample& axis, double min_distance, double eps, std::uint64_t seed,
                               int attempts = 1000) {
  Rng rng(seed);
  const int rank = axis.mu.rank();
  for (int i = 0; i < attempts; ++i) {
    MarkedGraph t = random_spine_point(rng, rank, eps, 3, 6);
    if (distance_to_axis(t, axis) >= min_distance) return t;
  }
  throw PreconditionFailed("no sampled spine point is far enough from the axis");
}

// ---------------------------------------------------------------------------
// Thin geodesics.

struct ThinGeodesic {
  double min_distance = 0.0;
  int attained_at = -1;
  MarkedGraph projection;
};

// Minimum over the path of d_sym to the projection of the path's first point.
inline ThinGeodesic thin_geodesic_check(const std::vector<std::pair<double, MarkedGraph>>& path,
                                        const RationalCurrent& mu, const RationalCurrent& nu, double eps,
                                        int budget, const std::vector<MarkedGraph>& extra_starts = {}) {
  if (path.empty()) throw PreconditionFailed("empty path");
  const MinResult p = project(path.front().second, mu, nu, eps, budget, extra_starts);
  ThinGeodesic out{std::numeric_limits<double>::infinity(), -1, p.point};
  const auto p_cands = candidates(p.point);
  for (std::size_t i = 0; i < path.size(); ++i) {
    const double d = std::log(stretch(p_cands, path[i].second).factor) + d_L(path[i].second, p.point);
    if (d < out.min_distance) {
      out.min_distance = d;
      out.attained_at = static_cast<int>(i);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Truncated axes and overlaps of sampled axes.

// The translate g.A: sample points moved by g, same parameters, currents
// moved by g (Min is equivariant).
inline AxisSample translate(const Automorphism& g, const AxisSample& a) {
  AxisSample out{apply_to_current(g, a.mu), apply_to_current(g, a.nu), {}, a.step};
  for (const auto& p : a.samples) out.samples.push_back({p.s, act(g, p.point), p.value});
  return out;
}

class PairDistances {
 public:
  PairDistances(const AxisSample& a, const AxisSample& b) {
    std::vector<MarkedGraph> pts;
    for (const auto& p : a.samples) pts.push_back(p.point);
    for (const auto& p : b.samples) pts.push_back(p.point);
    const DistanceCache cache(pts);
    const std::size_t na = a.samples.size();
    d_.assign(na, std::vector<double>(b.samples.size(), 0.0));
    for (std::size_t i = 0; i < na; ++i) {
      for (std::size_t j = 0; j < b.samples.size(); ++j) d_[i][j] = cache.d_sym(i, na + j);
    }
  }
  double operator()(std::size_t i, std::size_t j) const { return d_[i][j]; }

  // Sampled Hausdorff distance between index ranges [a0, a1] and [b0, b1].
  double hausdorff(std::size_t a0, std::size_t a1, std::size_t b0, std::size_t b1) const {
    double h = 0.0;
    for (std::size_t i = a0; i <= a1; ++i) {
      double m = std::numeric_limits<double>::infinity();
      for (std::size_t j = b0; j <= b1; ++j) m = std::min(m, d_[i][j]);
      h = std::max(h, m);
    }
    for (std::size_t j = b0; j <= b1; ++j) {
      double m = std::numeric_limits<double>::infinity();
      for (std::size_t i = a0; i <= a1; ++i) m = std::min(m, d_[i][j]);
      h = std::max(h, m);
    }
    return h;
  }

 private:
  std::vector<std::vector<double>> d_;
};

struct Truncation {
  bool degenerate = false;
  double cut_plus = 0.0;   // ray {s >= cut_plus} follows the first reference
  double cut_minus = 0.0;  // ray {s <= cut_minus} follows the second reference
  double hausdorff_plus = 0.0;
  double hausdorff_minus = 0.0;
};

// Rays of `a` toward +s are compared with rays of `ref_plus` toward +s (the
// two axes share their first current), rays toward -s with `ref_minus`. The
// cut on each side is the grid point giving the longest ray whose sampled
// Hausdorff distance to some reference ray is at most 2C.
inline Truncation truncated_axis(const AxisSample& a, const AxisSample& ref_plus, const AxisSample& ref_minus,
                                 double C) {
  Truncation t;
  const std::size_t n = a.samples.size();
  if (n == 0) throw PreconditionFailed("empty axis");
  bool found_plus = false;
  {
    const PairDistances pd(a, ref_plus);
    const std::size_t m = ref_plus.samples.size();
    for (std::size_t i = 0; i < n && !found_plus; ++i) {
      for (std::size_t j = 0; j < m; ++j) {
        const double h = pd.hausdorff(i, n - 1, j, m - 1);
        if (h <= 2.0 * C) {
          found_plus = true;
          t.cut_plus = a.samples[i].s;
          t.hausdorff_plus = h;
          break;
        }
      }
    }
  }
  bool found_minus = false;
  {
    const PairDistances pd(a, ref_minus);
    const std::size_t m = ref_minus.samples.size();
    for (std::size_t i = n; i-- > 0 && !found_minus;) {
      for (std::size_t j = m; j-- > 0;) {
        const double h = pd.hausdorff(0, i, 0, j);
        if (h <= 2.0 * C) {
          found_minus = true;
          t.cut_minus = a.samples[i].s;
          t.hausdorff_minus = h;
          break;
        }
      }
    }
  }
  t.degenerate = !found_plus || !found_minus;
  return t;
}

struct Overlap {
  double tau = 0.0;
  double tau_plus = 0.0;
  double tau_minus = 0.0;
  double s_a = 0.0;  // balance parameters of x on the two axes
  double s_b = 0.0;
};

// tau_x of two axes sampled on the same grid. The rays toward +s start at
// the grid point 0; they count only when x balances at a nonnegative
// parameter on both axes, and tau_plus is the length of the longest interval
// [0, L] on the grid over which the two ray pieces stay within sampled
// Hausdorff distance 2C. Likewise toward -s.
inline Overlap overlap_tau(const AxisSample& a, const AxisSample& b, const MarkedGraph& x, double C) {
  if (a.samples.size() != b.samples.size()) throw PreconditionFailed("axes must share a grid");
  for (std::size_t i = 0; i < a.samples.size(); ++i) {
    if (std::abs(a.samples[i].s - b.samples[i].s) > 1e-9) throw PreconditionFailed("axes must share a grid");
  }
  Overlap o;
  o.s_a = balance_param(x, a.mu, a.nu);
  o.s_b = balance_param(x, b.mu, b.nu);
  std::size_t zero = 0;
  for (std::size_t i = 1; i < a.samples.size(); ++i) {
    if (std::abs(a.samples[i].s) < std::abs(a.samples[zero].s)) zero = i;
  }
  const PairDistances pd(a, b);
  const std::size_t n = a.samples.size();
  if (o.s_a >= 0.0 && o.s_b >= 0.0) {
    for (std::size_t k = zero; k < n; ++k) {
      if (pd.hausdorff(zero, k, zero, k) > 2.0 * C) break;
      o.tau_plus = a.samples[k].s - a.samples[zero].s;
    }
  }
  if (o.s_a <= 0.0 && o.s_b <= 0.0) {
    for (std::size_t k = zero + 1; k-- > 0;) {
      if (pd.hausdorff(k, zero, k, zero) > 2.0 * C) break;
      o.tau_minus = a.samples[zero].s - a.samples[k].s;
    }
  }
  o.tau = std::max(o.tau_plus, o.tau_minus);
  return o;
}

inline std::vector<std::vector<double>> tau_matrix(const std::vector<AxisSample>& axes, const MarkedGraph& x,
                                                   double C) {
  const std::size_t n = axes.size();
  std::vector<std::vector<double>> m(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m[i][j] = overlap_tau(axes[i], axes[j], x, C).tau;
  }
  return m;
}

// Ordered triples (a, b, c) with tau(a,c) < min(tau(a,b), tau(b,c)) - slack.
inline std::vector<std::array<int, 3>> ultrametric_violations(const std::vector<std::vector<double>>& m,
                                                              double slack) {
  std::vector<std::array<int, 3>> out;
  const int n = static_cast<int>(m.size());
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      for (int c = 0; c < n; ++c) {
        if (m[a][c] < std::min(m[a][b], m[b][c]) - slack - 1e-9) out.push_back({a, b, c});
      }
    }
  }
  return out;
}

}  // namespace outerspace
