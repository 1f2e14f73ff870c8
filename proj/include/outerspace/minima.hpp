#pragma once

// Minimizing <T, current> over the epsilon-spine.
//
// On a fixed topology with fixed marking the pairing is linear in the edge
// lengths (through crossing vectors), and spine membership is a finite set
// of linear constraints, one per embedded cycle. So each simplex of the
// spine is one linear program. Descent moves between simplices by
// collapsing the zero edges of an optimum and trying every single-vertex
// expansion of the collapsed graph.

#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "outerspace/current.hpp"
#include "outerspace/errors.hpp"
#include "outerspace/lipschitz.hpp"
#include "outerspace/marked_graph.hpp"
#include "outerspace/simplex.hpp"

namespace outerspace {

inline constexpr double kDefaultEpsilon = 0.05;
inline constexpr double kImprovement = 1e-9;

struct MinResult {
  MarkedGraph point;                 // zero edges collapsed
  std::vector<double> raw_lengths;   // LP optimum on the topology that produced it
  double value = 0.0;                // pairing(point, current)
  int topology_visits = 1;
  int lp_solves = 0;
  LpCertificate certificate;
  std::vector<double> duals;  // row 0: volume; then one per embedded cycle
  bool budget_exhausted = false;
  bool local = true;  // only local optimality across topologies is claimed
};

inline void require_volume_one(const MarkedGraph& g, double tol = 1e-9) {
  if (std::abs(g.volume() - 1.0) > tol) throw PreconditionFailed("spine point must have volume 1");
}

namespace detail {

inline MinResult solve_topology(const MarkedGraph& g, const RationalCurrent& current, double eps, bool lexmin) {
  require_same_rank(g.rank(), current.rank());
  if (!(eps > 0.0)) throw MalformedInput("epsilon must be positive");
  const int ne = g.edge_count();
  const auto cycles = embedded_cycles(g);
  LinearProgram lp;
  lp.objective = crossing_weights(g, current);
  lp.add_row(std::vector<double>(ne, 1.0), Sense::Equal, 1.0);
  for (const auto& c : cycles) {
    const auto counts = indicator(g, c.steps);
    lp.add_row(std::vector<double>(counts.begin(), counts.end()), Sense::GreaterEqual, eps);
  }
  const LpSolution sol = lexmin ? solve_lp_lexmin(lp) : solve_lp(lp);
  if (sol.status == LpStatus::Infeasible) {
    std::string which = "volume constraint";
    for (int r : sol.violated_rows) {
      if (r == 0) continue;
      which = "cycle";
      for (Step s : cycles[r - 1].steps) which += " " + g.edge(s.edge).id + (s.forward ? "+" : "-");
      break;
    }
    throw Infeasible("epsilon " + std::to_string(eps) + " is infeasible on this topology: " + which);
  }
  if (sol.status != LpStatus::Optimal) throw InvariantViolation("bounded LP reported unbounded");

  std::vector<double> lengths = sol.x;
  for (double& l : lengths) {
    if (l < 1e-12) l = 0.0;
  }
  MinResult r{collapse_short_edges(g.with_lengths(lengths)), lengths, 0.0, 1, 1, {}, sol.duals, false, true};
  r.value = pairing(r.point, current);
  r.certificate = check_certificate(lp, sol);
  return r;
}

}  // namespace detail

// Exact minimum over one closed simplex of the spine; among optimal length
// vectors the lexicographically smallest (in edge order) is returned.
inline MinResult min_on_topology(const MarkedGraph& g, const RationalCurrent& current, double eps) {
  return detail::solve_topology(g, current, eps, true);
}

// Topologies sharing a face with g's simplex after one collapse: every
// expansion of g, and every expansion of g with one non-loop edge collapsed
// (a Whitehead move when the expansion differs from the collapsed edge).
inline std::vector<MarkedGraph> neighbor_topologies(const MarkedGraph& g) {
  std::vector<MarkedGraph> out;
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (g.valence(v) < 4) continue;
    for (auto& ex : expansions(g, v)) out.push_back(std::move(ex.graph));
  }
  for (int e = 0; e < g.edge_count(); ++e) {
    if (g.edge(e).is_loop()) continue;
    auto lengths = g.lengths();
    lengths[e] = 0.0;
    const MarkedGraph collapsed = collapse_edge(g.with_lengths(lengths), e);
    const int merged = g.edge(e).tail > g.edge(e).head ? g.edge(e).tail - 1 : g.edge(e).tail;
    out.push_back(collapsed);
    for (auto& ex : expansions(collapsed, merged)) out.push_back(std::move(ex.graph));
  }
  return out;
}

inline MinResult minimize(const RationalCurrent& current, double eps, const MarkedGraph& start, int budget) {
  require_same_rank(current.rank(), start.rank());
  require_volume_one(start);
  if (!in_spine(start, eps)) throw PreconditionFailed("start point is outside the epsilon-spine");
  if (budget < 1) throw MalformedInput("budget must be at least 1");

  // Candidate topologies are compared on plain LP optima; only the final one
  // is re-solved with the lexicographic tie-break.
  MinResult best = detail::solve_topology(start, current, eps, false);
  MarkedGraph best_topology = start;
  int solves = 1;
  int visits = 1;
  while (true) {
    if (visits >= budget) {
      best.budget_exhausted = true;
      break;
    }
    std::optional<MinResult> move;
    std::optional<MarkedGraph> move_topology;
    for (auto& topology : neighbor_topologies(best.point)) {
      try {
        MinResult cand = detail::solve_topology(topology, current, eps, false);
        ++solves;
        const double bar = (move ? move->value : best.value) - kImprovement * std::max(1.0, best.value);
        if (cand.value < bar) {
          move = std::move(cand);
          move_topology = std::move(topology);
        }
      } catch (const Infeasible&) {
        ++solves;
      }
    }
    if (!move) break;
    best = std::move(*move);
    best_topology = std::move(*move_topology);
    ++visits;
  }
  const bool exhausted = best.budget_exhausted;
  best = min_on_topology(best_topology, current, eps);
  ++solves;
  best.budget_exhausted = exhausted;
  best.topology_visits = visits;
  best.lp_solves = solves;
  return best;
}

// s with T balanced for e^s mu and e^-s nu.
inline double balance_param(const MarkedGraph& t, const RationalCurrent& mu, const RationalCurrent& nu) {
  const double pm = pairing(t, mu);
  const double pn = pairing(t, nu);
  if (!(pm > 0.0) || !(pn > 0.0)) throw PreconditionFailed("balance needs positive pairings");
  return 0.5 * std::log(pn / pm);
}

struct AxisPoint {
  double s = 0.0;
  MarkedGraph point;
  double value = 0.0;
};

struct AxisSample {
  RationalCurrent mu;
  RationalCurrent nu;
  std::vector<AxisPoint> samples;  // s strictly increasing
  double step = 0.0;
};

inline std::vector<double> axis_grid(double s_min, double s_max, double step) {
  if (!(step > 0.0)) throw MalformedInput("grid step must be positive");
  if (s_max < s_min) throw MalformedInput("empty parameter range");
  std::vector<double> grid;
  const long count = static_cast<long>(std::floor((s_max - s_min) / step + 1e-9));
  for (long i = 0; i <= count; ++i) grid.push_back(s_min + static_cast<double>(i) * step);
  return grid;
}

// Better of a warm start and the caller's start; the warm start wins ties.
inline MinResult minimize_from(const RationalCurrent& current, double eps, const std::vector<MarkedGraph>& starts,
                               int budget) {
  std::optional<MinResult> best;
  for (const auto& st : starts) {
    MinResult r = minimize(current, eps, st, budget);
    if (!best || r.value < best->value - kImprovement * std::max(1.0, best->value)) best = std::move(r);
  }
  if (!best) throw MalformedInput("no start points");
  return *best;
}

inline AxisSample axis(const RationalCurrent& mu, const RationalCurrent& nu, double s_min, double s_max,
                       double step, double eps, int budget, const MarkedGraph& start) {
  require_same_rank(mu.rank(), nu.rank());
  const auto grid = axis_grid(s_min, s_max, step);
  std::size_t origin = 0;
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (std::abs(grid[i]) < std::abs(grid[origin])) origin = i;
  }
  std::vector<std::optional<AxisPoint>> pts(grid.size());
  auto solve_at = [&](std::size_t i, const std::vector<MarkedGraph>& starts) {
    const MinResult r = minimize_from(weighted_sum(mu, nu, grid[i]), eps, starts, budget);
    pts[i] = AxisPoint{grid[i], r.point, r.value};
  };
  solve_at(origin, {start});
  for (std::size_t i = origin + 1; i < grid.size(); ++i) solve_at(i, {pts[i - 1]->point, start});
  for (std::size_t i = origin; i-- > 0;) solve_at(i, {pts[i + 1]->point, start});
  // Refinement to a lower envelope: whenever the minimum stored at one grid
  // point does better at another parameter than that parameter's own
  // minimum, descend from it there. At the fixed point no stored sample
  // beats any other at its parameter.
  for (int pass = 0; pass < 16; ++pass) {
    bool changed = false;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const RationalCurrent cur = weighted_sum(mu, nu, grid[i]);
      for (std::size_t j = 0; j < grid.size(); ++j) {
        const double bar = pts[i]->value - kImprovement * std::max(1.0, pts[i]->value);
        if (j == i || !(pairing(pts[j]->point, cur) < bar)) continue;
        const MinResult r = minimize(cur, eps, pts[j]->point, budget);
        if (r.value < bar) {
          pts[i] = AxisPoint{grid[i], r.point, r.value};
          changed = true;
        }
      }
    }
    if (!changed) break;
  }
  AxisSample out{mu, nu, {}, step};
  for (auto& p : pts) out.samples.push_back(std::move(*p));
  return out;
}

// A realization of the projection to the axis: balance T, then minimize.
inline MinResult project(const MarkedGraph& t, const RationalCurrent& mu, const RationalCurrent& nu, double eps,
                         int budget, const std::vector<MarkedGraph>& extra_starts = {}) {
  const double s = balance_param(t, mu, nu);
  std::vector<MarkedGraph> starts = {t};
  starts.insert(starts.end(), extra_starts.begin(), extra_starts.end());
  return minimize_from(weighted_sum(mu, nu, s), eps, starts, budget);
}

}  // namespace outerspace
