#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "oracles.hpp"
#include "outerspace/builders.hpp"
#include "outerspace/current.hpp"
#include "outerspace/minima.hpp"
#include "outerspace/sampling.hpp"

using namespace outerspace;

namespace {

constexpr double kEps = 0.05;

Word w3(const char* text) { return parse_word(text, 3); }
RationalCurrent dual3(const char* text, double weight = 1.0) { return RationalCurrent::dual(w3(text), weight); }
const MarkedGraph kRose = unit_rose(3);
const MarkedGraph kParallel = parallel_edges_graph({0.25, 0.25, 0.25, 0.25});

RationalCurrent random_current(Rng& rng, int rank) {
  std::vector<std::pair<Word, double>> atoms;
  const int count = uniform_int(rng, 1, 3);
  while (static_cast<int>(atoms.size()) < count) {
    const Word w = random_word(rng, rank, uniform_int(rng, 1, 6));
    if (cyclic_reduce(w).core.empty()) continue;
    atoms.emplace_back(w, uniform_real(rng, 0.1, 1.0));
  }
  return RationalCurrent::from_atoms(rank, atoms);
}

std::vector<std::vector<int>> cycle_rows(const MarkedGraph& g) {
  std::vector<std::vector<int>> rows;
  for (const auto& c : embedded_cycles(g)) rows.push_back(indicator(g, c.steps));
  return rows;
}

// The same marked graph with its edges listed in reverse order.
MarkedGraph reverse_edges(const MarkedGraph& g) {
  const int ne = g.edge_count();
  std::vector<Edge> edges;
  for (int e = ne - 1; e >= 0; --e) {
    Edge copy = g.edge(e);
    copy.length_text.clear();
    edges.push_back(copy);
  }
  std::vector<EdgePath> marking;
  for (int i = 1; i <= g.rank(); ++i) {
    EdgePath p;
    for (Step s : g.marking(i)) p.push_back({ne - 1 - s.edge, s.forward});
    marking.push_back(p);
  }
  return MarkedGraph::build(g.rank(), g.vertex_ids(), edges, g.basepoint(), marking);
}

void expect_feasible(const MinResult& r, double eps) {
  EXPECT_GE(systole(r.point).length, eps - 1e-9);
  EXPECT_NEAR(r.point.volume(), 1.0, 1e-9);
}

}  // namespace

TEST(MinOnTopology, VolumeObjectiveIsConstant) {
  const auto r = min_on_topology(kRose, dual3("a") + dual3("b") + dual3("c"), 0.1);
  EXPECT_NEAR(r.value, 1.0, 1e-12);
  EXPECT_NEAR(r.raw_lengths[0], 0.1, 1e-9);
  EXPECT_NEAR(r.raw_lengths[1], 0.1, 1e-9);
  EXPECT_NEAR(r.raw_lengths[2], 0.8, 1e-9);
  EXPECT_TRUE(r.certificate.verified);
}

TEST(MinOnTopology, SinglePetal) {
  const auto r = min_on_topology(kRose, dual3("a"), 0.1);
  EXPECT_NEAR(r.value, 0.1, 1e-12);
  EXPECT_NEAR(r.raw_lengths[0], 0.1, 1e-12);
  EXPECT_NEAR(r.raw_lengths[1] + r.raw_lengths[2], 0.9, 1e-12);
}

TEST(MinOnTopology, ClosedFormOnRoseForGeneratorCurrents) {
  // Supported petals sit at epsilon, the rest takes the remaining volume.
  const std::vector<std::vector<double>> weights = {{1, 0, 0}, {2, 3, 0}, {0.5, 0, 4}, {1, 1, 1}, {0, 0, 7}};
  for (const auto& w : weights) {
    std::vector<std::pair<Word, double>> atoms;
    int support = 0;
    double total = 0.0;
    for (int i = 0; i < 3; ++i) {
      if (w[i] == 0) continue;
      atoms.emplace_back(Word::generator(3, i + 1), w[i]);
      ++support;
      total += w[i];
    }
    const auto cur = RationalCurrent::from_atoms(3, atoms);
    const auto r = min_on_topology(kRose, cur, kEps);
    double expected = total * kEps;
    if (support == 3) {
      // All petals supported: the spare volume goes to the cheapest one.
      const double cheapest = *std::min_element(w.begin(), w.end());
      expected = (total - cheapest) * kEps + cheapest * (1.0 - 2.0 * kEps);
    }
    EXPECT_DOUBLE_EQ(r.value, expected);
  }
}

TEST(MinOnTopology, InfeasibleEpsilonNamesACycle) {
  try {
    min_on_topology(kRose, dual3("a"), 0.4);
    FAIL() << "expected Infeasible";
  } catch (const Infeasible& e) {
    EXPECT_NE(std::string(e.what()).find("cycle"), std::string::npos);
  }
}

TEST(MinOnTopology, MatchesGridOracle) {
  Rng rng(404);
  for (const auto* g : {&kRose, &kParallel}) {
    const auto rows = cycle_rows(*g);
    for (int i = 0; i < 10; ++i) {
      const auto cur = random_current(rng, 3);
      const auto r = min_on_topology(*g, cur, kEps);
      const auto c = crossing_weights(*g, cur);
      const double L = *std::max_element(c.begin(), c.end());
      const double grid = oracle::grid_min(c, rows, kEps, 0.02);
      EXPECT_LE(r.value, grid + 1e-9);
      EXPECT_GE(r.value, grid - 0.02 * L);
      expect_feasible(r, kEps);
    }
  }
}

TEST(MinOnTopology, RelabelingEdgesKeepsValue) {
  Rng rng(9);
  for (int i = 0; i < 10; ++i) {
    const auto cur = random_current(rng, 3);
    for (const auto* g : {&kRose, &kParallel}) {
      const auto a = min_on_topology(*g, cur, kEps);
      const auto b = min_on_topology(reverse_edges(*g), cur, kEps);
      EXPECT_NEAR(a.value, b.value, 1e-12);
    }
  }
}

TEST(Minimize, FullSupportLeavesTheRose) {
  // A separating edge crossed by none of a, b, c absorbs the spare volume.
  const auto r = minimize(dual3("a") + dual3("b") + dual3("c"), kEps, kRose, 50);
  EXPECT_NEAR(r.value, 3 * kEps, 1e-9);
  EXPECT_EQ(r.topology_visits, 2);
  expect_feasible(r, kEps);
}

TEST(Minimize, ResultInvariants) {
  Rng rng(17);
  for (int i = 0; i < 15; ++i) {
    const auto cur = random_current(rng, 3);
    const auto start = random_spine_point(rng, 3, kEps);
    const auto r = minimize(cur, kEps, start, 100);
    expect_feasible(r, kEps);
    EXPECT_NEAR(r.value, pairing(r.point, cur), 1e-9);
    EXPECT_TRUE(r.certificate.verified);
    EXPECT_LE(r.value, min_on_topology(start, cur, kEps).value + 1e-9);
    for (double l : r.point.lengths()) EXPECT_GT(l, 0.0);
  }
}

TEST(Minimize, ScaleEquivariant) {
  Rng rng(23);
  for (int i = 0; i < 8; ++i) {
    const auto cur = random_current(rng, 3);
    const auto a = minimize(cur, kEps, kRose, 100);
    const auto b = minimize(cur.scaled(4.0), kEps, kRose, 100);
    EXPECT_NEAR(b.value, 4.0 * a.value, 1e-9 * std::max(1.0, b.value));
    EXPECT_NEAR(d_sym(a.point, b.point), 0.0, 1e-9);
  }
}

TEST(Minimize, RestartIsIdempotent) {
  Rng rng(29);
  for (int i = 0; i < 8; ++i) {
    const auto cur = random_current(rng, 3);
    const auto a = minimize(cur, kEps, kRose, 100);
    const auto b = minimize(cur, kEps, a.point, 100);
    EXPECT_NEAR(a.value, b.value, 1e-9);
  }
}

TEST(Minimize, RejectsBadStart) {
  EXPECT_THROW(minimize(dual3("a"), kEps, rose({0.01, 0.5, 0.49}), 10), PreconditionFailed);
  EXPECT_THROW(minimize(dual3("a"), kEps, rose({1.0, 1.0, 1.0}), 10), PreconditionFailed);
  EXPECT_THROW(minimize(dual3("a"), kEps, unit_rose(2), 10), RankMismatch);
}

TEST(Minimize, BudgetFlag) {
  const auto r = minimize(dual3("a") + dual3("b") + dual3("c"), kEps, kRose, 1);
  EXPECT_TRUE(r.budget_exhausted);
  EXPECT_NEAR(r.value, 1.0, 1e-9);
}

TEST(Balance, Examples) {
  const auto t = rose({0.5, 0.25, 0.25});
  EXPECT_NEAR(balance_param(t, dual3("b"), dual3("c")), 0.0, 1e-15);
  EXPECT_NEAR(balance_param(t, dual3("b"), dual3("a")), std::log(2.0) / 2, 1e-15);
  EXPECT_NEAR(balance_param(t, dual3("b"), dual3("a", 2.0)), std::log(2.0), 1e-15);
  EXPECT_DOUBLE_EQ(balance_param(t, dual3("a"), dual3("b c")), -balance_param(t, dual3("b c"), dual3("a")));
  const double s = balance_param(t, dual3("a"), dual3("b c a"));
  EXPECT_NEAR(pairing(t, dual3("a").scaled(std::exp(s))), pairing(t, dual3("b c a").scaled(std::exp(-s))), 1e-15);
}

namespace {

struct PairFixture {
  RationalCurrent mu = dual3("a") + dual3("a b c", 2.0);
  RationalCurrent nu = dual3("b") + dual3("b a c", 2.0);  // image of mu under a <-> b
};

}  // namespace

TEST(Axis, SymmetricPairHasSymmetricValues) {
  const PairFixture p;
  const auto a = axis(p.mu, p.nu, -2.0, 2.0, 0.5, kEps, 100, kRose);
  const std::size_t n = a.samples.size();
  for (std::size_t i = 0; i < n; ++i) {
    EXPECT_NEAR(a.samples[i].value, a.samples[n - 1 - i].value, 1e-9) << "s = " << a.samples[i].s;
  }
}

TEST(Axis, SwappingThePairReflectsTheParameter) {
  const auto mu = dual3("a b'") + dual3("c");
  const auto nu = dual3("b c c") + dual3("a c'");
  const auto a = axis(mu, nu, -2.0, 2.0, 0.5, kEps, 100, kRose);
  const auto b = axis(nu, mu, -2.0, 2.0, 0.5, kEps, 100, kRose);
  const std::size_t n = a.samples.size();
  for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(a.samples[i].value, b.samples[n - 1 - i].value, 1e-9);
}

TEST(Axis, SamplesFormALowerEnvelope) {
  const auto phi = tribonacci_like(3);
  const auto pr = iwip_pair_approx(phi, w3("a"), 10, kRose);
  const auto a = axis(pr.forward, pr.backward, -4.0, 4.0, 0.5, kEps, 200, kRose);
  for (std::size_t i = 1; i < a.samples.size(); ++i) EXPECT_GT(a.samples[i].s, a.samples[i - 1].s);
  for (const auto& p : a.samples) {
    EXPECT_GE(systole(p.point).length, kEps - 1e-9);
    const auto cur = weighted_sum(pr.forward, pr.backward, p.s);
    EXPECT_NEAR(p.value, pairing(p.point, cur), 1e-9);
    for (const auto& q : a.samples) EXPECT_GE(pairing(q.point, cur), p.value - 1e-9 * std::max(1.0, p.value));
  }
}

TEST(Project, InvariantUnderOppositeRescaling) {
  const auto mu = dual3("a b'") + dual3("c");
  const auto nu = dual3("b c c") + dual3("a c'");
  Rng rng(31);
  for (int i = 0; i < 5; ++i) {
    const auto t = random_spine_point(rng, 3, kEps);
    const double s = balance_param(t, mu, nu);
    const double shift = 0.7;
    const auto mu2 = mu.scaled(std::exp(shift));
    const auto nu2 = nu.scaled(std::exp(-shift));
    EXPECT_NEAR(balance_param(t, mu2, nu2), s - shift, 1e-12);
    const auto a = project(t, mu, nu, kEps, 100);
    const auto b = project(t, mu2, nu2, kEps, 100);
    EXPECT_NEAR(a.value, b.value, 1e-9 * std::max(1.0, a.value));
  }
}

TEST(Project, EquivariantInValue) {
  const auto mu = dual3("a b'") + dual3("c");
  const auto nu = dual3("b c c") + dual3("a c'");
  Rng rng(37);
  for (int i = 0; i < 5; ++i) {
    const auto t = random_spine_point(rng, 3, kEps);
    const auto phi = random_automorphism(rng, 3, 4);
    const auto a = project(t, mu, nu, kEps, 100);
    const auto b = project(act(phi, t), apply_to_current(phi, mu), apply_to_current(phi, nu), kEps, 100,
                           {act(phi, a.point)});
    EXPECT_NEAR(a.value, b.value, 1e-9 * std::max(1.0, a.value));
  }
}

TEST(Project, PointOnTheAxisProjectsNearby) {
  const auto phi = tribonacci_like(3);
  const auto pr = iwip_pair_approx(phi, w3("a"), 10, kRose);
  const auto a = axis(pr.forward, pr.backward, -2.0, 2.0, 0.5, kEps, 200, kRose);
  double coarse = 0.0;
  for (std::size_t i = 1; i < a.samples.size(); ++i) {
    coarse = std::max(coarse, d_sym(a.samples[i - 1].point, a.samples[i].point));
  }
  for (const auto& p : a.samples) {
    const auto r = project(p.point, pr.forward, pr.backward, kEps, 200);
    double nearest = INFINITY;
    for (const auto& q : a.samples) nearest = std::min(nearest, d_sym(r.point, q.point));
    EXPECT_LE(nearest, coarse + 1e-9);
  }
}
