#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "outerspace/builders.hpp"
#include "outerspace/diagnostics.hpp"

using namespace outerspace;

namespace {

constexpr double kEps = 0.05;

Word w3(const char* text) { return parse_word(text, 3); }
RationalCurrent dual3(const char* text, double weight = 1.0) { return RationalCurrent::dual(w3(text), weight); }
const MarkedGraph kRose = unit_rose(3);

// The k = 10 pair of a -> b, b -> c, c -> ab and its axis, computed once.
struct Tribonacci {
  IwipApproximation pair;
  AxisSample line;
  Tribonacci()
      : pair(iwip_pair_approx(tribonacci_like(3), w3("a"), 10, kRose)),
        line(axis(pair.forward, pair.backward, -6.0, 6.0, 0.5, kEps, 200, kRose)) {}
};

const Tribonacci& tribonacci() {
  static const Tribonacci t;
  return t;
}

}  // namespace

TEST(CoarseDefect, TrivialCases) {
  const auto y = rose({0.5, 0.25, 0.25});
  const double d = d_sym(kRose, y);
  EXPECT_NEAR(coarse_defect({{0.0, kRose}, {d, y}}).D, 0.0, 1e-15);
  const auto c = coarse_defect({{0.0, kRose}, {0.5, kRose}, {2.0, kRose}});
  EXPECT_DOUBLE_EQ(c.D, 2.0);
  EXPECT_EQ(c.worst_i, 0);
  EXPECT_EQ(c.worst_j, 2);
  EXPECT_THROW(coarse_defect({{0.0, kRose}}), PreconditionFailed);
  EXPECT_THROW(coarse_defect({{0.0, kRose}, {0.0, y}}), PreconditionFailed);
}

TEST(CoarseDefect, ReversalWithNegatedParameters) {
  const auto& t = tribonacci();
  auto samples = reparametrize(t.line, 2.0);
  std::vector<std::pair<double, MarkedGraph>> reversed;
  for (auto it = samples.rbegin(); it != samples.rend(); ++it) reversed.emplace_back(-it->first, it->second);
  EXPECT_NEAR(coarse_defect(samples).D, coarse_defect(reversed).D, 1e-12);
}

TEST(CoarseDefect, AxisIsACoarseGeodesicWithinTheFittedBound) {
  const auto& t = tribonacci();
  const double B = fit_B(t.line).B;
  const auto c = coarse_defect(reparametrize(t.line, 2.0));
  EXPECT_LE(c.D, 8.0 * std::log(B) + 2.0 * std::log(2.0));
}

TEST(FitB, BalancedPairAtZero) {
  const auto a = axis(dual3("a"), dual3("b"), 0.0, 0.0, 0.5, kEps, 100, kRose);
  EXPECT_DOUBLE_EQ(fit_B(a).B, 1.0);
}

TEST(FitB, RescalingShiftsTheGrid) {
  const auto mu = dual3("a b'") + dual3("c");
  const auto nu = dual3("b c c") + dual3("a c'");
  const auto a = axis(mu, nu, -2.0, 2.0, 0.5, kEps, 100, kRose);
  // e^s e^2 mu + e^-s nu = e (e^{s+1} mu + e^{-(s+1)} nu)
  const auto b = axis(mu.scaled(std::exp(2.0)), nu, -3.0, 1.0, 0.5, kEps, 100, kRose);
  ASSERT_EQ(a.samples.size(), b.samples.size());
  for (std::size_t i = 0; i < a.samples.size(); ++i) {
    EXPECT_NEAR(b.samples[i].value, std::exp(1.0) * a.samples[i].value, 1e-9);
  }
  // Min can be a face; on the same chosen points the fitted B agrees.
  AxisSample shifted = a;
  shifted.mu = mu.scaled(std::exp(2.0));
  for (auto& p : shifted.samples) p.s -= 1.0;
  EXPECT_NEAR(fit_B(shifted).B, fit_B(a).B, 1e-9 * fit_B(a).B);
  EXPECT_NEAR(fit_B(shifted).s_attaining, fit_B(a).s_attaining - 1.0, 1e-12);
}

TEST(FitB, TribonacciIsFinite) {
  const auto f = fit_B(tribonacci().line);
  EXPECT_TRUE(std::isfinite(f.B));
  EXPECT_GE(f.B, 1.0);
}

TEST(Minisline, ZeroParameterRow) {
  const auto& t = tribonacci();
  const double B = fit_B(t.line).B;
  const auto r = check_minisline(t.line, B, {0.0});
  ASSERT_EQ(r.rows.size(), 1u);
  EXPECT_DOUBLE_EQ(r.rows[0].distance, 0.0);
  EXPECT_DOUBLE_EQ(r.rows[0].upper, 8.0 * std::log(B) + 2.0 * std::log(2.0));
  EXPECT_TRUE(r.pass());
}

TEST(Minisline, FittedBPassesAndUnitBFails) {
  const auto& t = tribonacci();
  const std::vector<double> s = {1, 2, 3, 4, 5, 6};
  EXPECT_TRUE(check_minisline(t.line, fit_B(t.line).B, s).pass());
  const auto tight = check_minisline(t.line, 1.0, s);
  EXPECT_FALSE(tight.pass());
  bool lower_violation = false;
  for (const auto& row : tight.rows) lower_violation = lower_violation || row.distance < row.lower;
  EXPECT_TRUE(lower_violation);
  EXPECT_THROW(check_minisline(t.line, 0.5, s), MalformedInput);
  EXPECT_THROW(check_minisline(t.line, 2.0, {0.3}), PreconditionFailed);
}

TEST(Minisline, MarginsAreMonotoneInB) {
  const auto& t = tribonacci();
  const std::vector<double> s = {-3, -1, 0, 1, 2, 4, 6};
  bool was_pass = false;
  for (double B : {1.0, 1.5, 2.0, 4.0, 10.0, 100.0, 1000.0}) {
    const auto r = check_minisline(t.line, B, s);
    for (std::size_t i = 0; i < r.rows.size(); ++i) {
      const auto prev = check_minisline(t.line, std::max(1.0, B / 2.0), s).rows[i];
      EXPECT_GE(r.rows[i].margin(), prev.margin() - 1e-12);
    }
    if (was_pass) EXPECT_TRUE(r.pass());
    was_pass = r.pass();
  }
}

TEST(Contracting, DiagonalPairFailsClauseTwoWithAWitness) {
  const auto a = dual3("a");
  const double B = fit_B(axis(a, a, -1.0, 1.0, 0.5, kEps, 100, kRose)).B;
  SamplerConfig cfg;
  const auto rep = check_contracting(a, a, B, kEps, cfg, kRose);
  ASSERT_EQ(rep.clauses.size(), 5u);
  EXPECT_FALSE(rep.clauses[1].pass);
  EXPECT_GT(rep.clauses[1].checked, 0);
  EXPECT_LT(rep.clauses[1].worst, 2.0);
  EXPECT_FALSE(rep.clauses[1].witness.empty());
  EXPECT_FALSE(rep.pass());
}

TEST(Contracting, TribonacciPassesAtTwiceTheFittedB) {
  const auto& t = tribonacci();
  const double B = 2.0 * fit_B(t.line).B;
  const auto rep = check_contracting(t.pair.forward, t.pair.backward, B, kEps, SamplerConfig{}, kRose);
  for (const auto& c : rep.clauses) EXPECT_TRUE(c.pass) << "clause " << c.clause << " " << c.witness;
  EXPECT_EQ(rep.clauses[2].checked, 9);
}

TEST(Contracting, ClauseThreeAtZeroIsExact) {
  SamplerConfig cfg;
  cfg.s_step = 1.0;
  const auto mu = dual3("a b'") + dual3("c");
  const auto nu = dual3("b c c") + dual3("a c'");
  const auto rep = check_contracting(mu, nu, 1e6, kEps, cfg, kRose);
  EXPECT_EQ(rep.clauses[2].checked, 3);
  EXPECT_TRUE(rep.clauses[2].pass);
}

TEST(Contracting, SeededReportsAreReproducible) {
  const auto a = dual3("a");
  SamplerConfig cfg;
  cfg.seed = 12;
  const auto r1 = check_contracting(a, a, 5.0, kEps, cfg, kRose);
  const auto r2 = check_contracting(a, a, 5.0, kEps, cfg, kRose);
  for (int i = 0; i < 5; ++i) {
    EXPECT_EQ(r1.clauses[i].checked, r2.clauses[i].checked);
    EXPECT_EQ(r1.clauses[i].worst, r2.clauses[i].worst);
    EXPECT_EQ(r1.clauses[i].witness, r2.clauses[i].witness);
  }
}

TEST(Ball, RadiusZeroHasZeroDiameter) {
  const auto& t = tribonacci();
  const auto center = ball_center(t.line, 1.0, kEps, 1);
  const auto r = ball_projection_diameter(t.pair.forward, t.pair.backward, center, 0.0, 10, kEps, t.line, {});
  EXPECT_EQ(r.diameter, 0.0);
}

TEST(Ball, SamplesStayInsideAndExtendPrefixes) {
  const auto center = rose({0.4, 0.35, 0.25});
  BallSamplerConfig cfg;
  cfg.seed = 3;
  const auto a = ball_samples(center, 1.0, 20, kEps, cfg);
  const auto b = ball_samples(center, 1.0, 40, kEps, cfg);
  ASSERT_EQ(a.size(), 20u);
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_TRUE(same_point(a[i], b[i], 0.0));
  for (const auto& p : b) {
    EXPECT_LE(d_sym(center, p), 1.0 + 1e-12);
    EXPECT_TRUE(in_spine(p, kEps, 0.0));
  }
}

TEST(Ball, DiameterIsMonotoneUnderRefinement) {
  const auto& t = tribonacci();
  const auto center = ball_center(t.line, 3.0, kEps, 2);
  double prev = 0.0;
  for (int n : {5, 10, 20}) {
    const auto r = ball_projection_diameter(t.pair.forward, t.pair.backward, center, 2.0, n, kEps, t.line, {});
    EXPECT_GE(r.diameter, prev);
    prev = r.diameter;
  }
}

TEST(Ball, PreconditionNamesTheAxis) {
  const auto& t = tribonacci();
  const auto& on_axis = t.line.samples[12].point;
  try {
    ball_projection_diameter(t.pair.forward, t.pair.backward, on_axis, 1.0, 5, kEps, t.line, {});
    FAIL() << "expected PreconditionFailed";
  } catch (const PreconditionFailed& e) {
    EXPECT_NE(std::string(e.what()).find("s="), std::string::npos);
  }
  const auto r = ball_projection_diameter(t.pair.forward, t.pair.backward, on_axis, 0.1, 10, kEps, t.line, {}, true);
  EXPECT_EQ(r.distance_to_axis, 0.0);
}

TEST(Ball, SmallBallOnTheAxisProjectsNearItsSample) {
  const auto& t = tribonacci();
  const double C = axis_coarse_constant(t.line);
  const auto& sample = t.line.samples[12];
  const auto pts = ball_samples(sample.point, 0.1, 10, kEps, {});
  for (const auto& p : pts) {
    const auto r = project(p, t.pair.forward, t.pair.backward, kEps, 200, {sample.point});
    EXPECT_LE(d_sym(r.point, sample.point), C + 1e-9);
  }
}

TEST(ThinGeodesic, PathThroughTheProjection) {
  const auto& t = tribonacci();
  Rng rng(8);
  const auto x = random_spine_point(rng, 3, kEps);
  const auto px = project(x, t.pair.forward, t.pair.backward, kEps, 200);
  std::vector<std::pair<double, MarkedGraph>> path = {{0.0, x}, {1.0, px.point}};
  for (std::size_t i = 13; i < t.line.samples.size(); ++i) path.emplace_back(1.0 + i, t.line.samples[i].point);
  const auto r = thin_geodesic_check(path, t.pair.forward, t.pair.backward, kEps, 200);
  EXPECT_NEAR(r.min_distance, 0.0, 1e-9);
  EXPECT_EQ(r.attained_at, 1);
}

TEST(ThinGeodesic, PathStartingOnTheAxis) {
  const auto& t = tribonacci();
  const double C = axis_coarse_constant(t.line);
  std::vector<std::pair<double, MarkedGraph>> path;
  for (std::size_t i = 10; i < 16; ++i) path.emplace_back(static_cast<double>(i), t.line.samples[i].point);
  const auto r = thin_geodesic_check(path, t.pair.forward, t.pair.backward, kEps, 200);
  EXPECT_LE(r.min_distance, C + 1e-9);
  EXPECT_THROW(thin_geodesic_check({}, t.pair.forward, t.pair.backward, kEps, 200), PreconditionFailed);
}

TEST(Truncation, AgainstItselfKeepsTheWholeAxis) {
  const auto& t = tribonacci();
  const auto tr = truncated_axis(t.line, t.line, t.line, 0.5);
  EXPECT_FALSE(tr.degenerate);
  EXPECT_EQ(tr.cut_plus, t.line.samples.front().s);
  EXPECT_EQ(tr.cut_minus, t.line.samples.back().s);
}

TEST(Truncation, ZeroConstantWithDistinctReferencesIsDegenerate) {
  const auto& t = tribonacci();
  const auto moved = translate(Automorphism::from_moves(3, {NielsenMove::right_multiply(1, 2)}), t.line);
  EXPECT_TRUE(truncated_axis(t.line, moved, moved, 0.0).degenerate);
}

TEST(Truncation, NielsenTranslateCutIsReproducible) {
  const auto& t = tribonacci();
  const auto moved = translate(Automorphism::from_moves(3, {NielsenMove::right_multiply(1, 2)}), t.line);
  const double C = axis_coarse_constant(t.line);
  const auto a = truncated_axis(t.line, moved, moved, C / 2.0);
  const auto b = truncated_axis(t.line, moved, moved, C / 2.0);
  EXPECT_EQ(a.degenerate, b.degenerate);
  EXPECT_EQ(a.cut_plus, b.cut_plus);
  EXPECT_EQ(a.cut_minus, b.cut_minus);
  EXPECT_LE(a.hausdorff_plus, C);
}

TEST(Overlap, AxisAgainstItselfCoversTheRay) {
  const auto& t = tribonacci();
  Rng rng(2);
  const auto x = random_spine_point(rng, 3, kEps);
  const auto o = overlap_tau(t.line, t.line, x, 0.1);
  const double ray = o.s_a >= 0.0 ? t.line.samples.back().s : -t.line.samples.front().s;
  EXPECT_DOUBLE_EQ(o.tau, ray);
}

TEST(Overlap, FarTranslatesWithSmallConstant) {
  const auto& t = tribonacci();
  const auto g = Automorphism::from_moves(
      3, {NielsenMove::right_multiply(1, 2), NielsenMove::right_multiply(1, 2), NielsenMove::left_multiply(3, 1),
          NielsenMove::right_multiply(2, 3, true)});
  const auto far = translate(g, t.line);
  EXPECT_EQ(overlap_tau(t.line, far, kRose, 0.01).tau, 0.0);
}

TEST(Overlap, SignGateDisablesOppositeSides) {
  const auto& t = tribonacci();
  const auto phi = tribonacci_like(3);
  Rng rng(7);
  const auto x = random_spine_point(rng, 3, kEps);
  const auto a = translate(phi, t.line);
  const auto b = translate(invert(phi), t.line);
  const auto o = overlap_tau(a, b, x, 100.0);
  if ((o.s_a < 0.0) != (o.s_b < 0.0)) EXPECT_EQ(o.tau, 0.0);
}

TEST(Overlap, UltrametricOnTranslates) {
  const auto& t = tribonacci();
  const std::vector<AxisSample> axes = {
      t.line, translate(tribonacci_like(3), t.line),
      translate(Automorphism::from_moves(3, {NielsenMove::right_multiply(1, 2)}), t.line)};
  const double C = axis_coarse_constant(t.line);
  Rng rng(7);
  for (int trial = 0; trial < 2; ++trial) {
    const auto x = random_spine_point(rng, 3, kEps);
    for (double c : {C, C / 2.0, C / 4.0}) {
      const auto m = tau_matrix(axes, x, c);
      EXPECT_TRUE(ultrametric_violations(m, t.line.step).empty()) << "C = " << c;
    }
  }
}
