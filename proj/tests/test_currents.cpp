#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "outerspace/builders.hpp"
#include "outerspace/current.hpp"
#include "outerspace/sampling.hpp"

using namespace outerspace;

namespace {

Word w3(const char* text) { return parse_word(text, 3); }
const MarkedGraph kRose = unit_rose(3);
RationalCurrent dual3(const char* text, double weight = 1.0) { return RationalCurrent::dual(w3(text), weight); }

}  // namespace

TEST(Current, CanonicalAtoms) {
  const auto c = RationalCurrent::from_atoms(3, {{w3("b a"), 1.0}, {w3("a' b'"), 2.0}, {w3("a a"), 1.5}});
  ASSERT_EQ(c.atoms().size(), 2u);
  EXPECT_EQ(c.atoms()[0].cls, w3("a"));
  EXPECT_DOUBLE_EQ(c.atoms()[0].weight, 3.0);
  EXPECT_EQ(c.atoms()[1].cls, w3("a b"));
  EXPECT_DOUBLE_EQ(c.atoms()[1].weight, 3.0);
  EXPECT_THROW(RationalCurrent::from_atoms(3, {{w3("a"), 0.0}}), MalformedInput);
  EXPECT_THROW(RationalCurrent::from_atoms(3, {{w3("a a'"), 1.0}}), MalformedInput);
}

TEST(Pairing, Examples) {
  EXPECT_DOUBLE_EQ(pairing(kRose, dual3("a")), 1.0 / 3);
  EXPECT_DOUBLE_EQ(pairing(kRose, dual3("a") + dual3("b c", 2.0)), 5.0 / 3);
  EXPECT_THROW(pairing(unit_rose(2), dual3("a")), RankMismatch);
}

TEST(Pairing, ExactlyBilinearUnderPowerOfTwoScaling) {
  Rng rng(71);
  for (int i = 0; i < 20; ++i) {
    const auto g = random_spine_point(rng, 3, 0.05);
    const auto nu = dual3("a b c'", 0.7) + RationalCurrent::dual(random_word(rng, 3, 7), 1.3);
    for (double c : {0.5, 2.0, 4.0}) {
      EXPECT_EQ(pairing(rescale(g, c), nu), c * pairing(g, nu));
      EXPECT_EQ(pairing(g, nu.scaled(c)), c * pairing(g, nu));
    }
    EXPECT_NEAR(pairing(rescale(g, 3.0), nu), 3.0 * pairing(g, nu), 1e-14);
  }
}

TEST(Pairing, Equivariance) {
  Rng rng(73);
  for (int i = 0; i < 20; ++i) {
    const auto g = random_spine_point(rng, 3, 0.05);
    const auto phi = random_automorphism(rng, 3, 4);
    const auto nu = RationalCurrent::dual(random_word(rng, 3, 6), 1.0) +
                    RationalCurrent::dual(random_word(rng, 3, 4), 0.5);
    EXPECT_NEAR(pairing(act(phi, g), nu), pairing(g, apply_to_current(invert(phi), nu)), 1e-12);
    EXPECT_NEAR(pairing(precompose_marking(g, phi), nu), pairing(g, apply_to_current(phi, nu)), 1e-12);
    EXPECT_NEAR(pairing(act(phi, g), apply_to_current(phi, nu)), pairing(g, nu), 1e-12);
  }
}

TEST(Pairing, SpineLowerBound) {
  Rng rng(79);
  for (int i = 0; i < 20; ++i) {
    const auto g = random_spine_point(rng, 3, 0.05);
    const auto nu = RationalCurrent::dual(random_word(rng, 3, 5), 2.0) +
                    RationalCurrent::dual(random_word(rng, 3, 3), 0.25);
    EXPECT_GE(pairing(g, nu), 0.05 * nu.total_weight() - 1e-12);
  }
}

TEST(NormalizeAt, Examples) {
  const auto n = normalize_at(kRose, dual3("a"));
  EXPECT_DOUBLE_EQ(n.atoms()[0].weight, 3.0);
  EXPECT_DOUBLE_EQ(pairing(kRose, n), 1.0);
  const auto again = normalize_at(kRose, n);
  EXPECT_DOUBLE_EQ(again.atoms()[0].weight, 3.0);
  const auto one = dual3("a", 3.0);
  EXPECT_EQ(normalize_at(kRose, one).atoms()[0].weight, 3.0);
}

TEST(ApplyToCurrent, Examples) {
  const auto phi = tribonacci_like(3);
  EXPECT_EQ(apply_to_current(phi, dual3("a")).atoms()[0].cls, w3("b"));
  const auto nu = dual3("a", 2.0) + dual3("b c'", 0.5);
  const auto id = apply_to_current(Automorphism::identity(3), nu);
  EXPECT_EQ(id.atoms().size(), nu.atoms().size());
  Rng rng(83);
  for (int i = 0; i < 20; ++i) {
    const auto psi = random_automorphism(rng, 3, 5);
    const auto mu = RationalCurrent::dual(random_word(rng, 3, 6), 1.5) + dual3("a b", 0.25);
    const auto image = apply_to_current(psi, mu);
    EXPECT_DOUBLE_EQ(image.total_weight(), mu.total_weight());
    EXPECT_EQ(image.atoms().size(), mu.atoms().size());
  }
}

TEST(Iwip, TribonacciGrowth) {
  const auto phi = tribonacci_like(3);
  const auto r = iwip_pair_approx(phi, w3("a"), 25, kRose);
  EXPECT_NEAR(r.lambda_forward, oracle::plastic_number(), 1e-3);
  // Transition matrix: column j counts letters of the image of x_j.
  const std::vector<std::vector<double>> m = {{0, 0, 1}, {1, 0, 1}, {0, 1, 0}};
  EXPECT_NEAR(oracle::perron_root(m), oracle::plastic_number(), 1e-9);
  EXPECT_TRUE(r.exponential);
  EXPECT_GT(r.lambda_backward, 1.0);
  ASSERT_EQ(r.forward.atoms().size(), 1u);
  ASSERT_EQ(r.backward.atoms().size(), 1u);
  EXPECT_NEAR(pairing(kRose, r.forward), 1.0, 1e-12);
  // The subdominant roots are complex, so successive differences oscillate;
  // their envelope (max over a window of three steps) shrinks geometrically.
  auto diff = [&](int k) { return std::abs(r.history_forward[k] - r.history_forward[k - 1]); };
  auto envelope = [&](int k) { return std::max({diff(k), diff(k + 1), diff(k + 2)}); };
  for (int k = 5; k + 5 <= 25; ++k) EXPECT_LT(envelope(k + 3), 0.9 * envelope(k)) << k;
}

TEST(Iwip, DepthZero) {
  const auto r = iwip_pair_approx(tribonacci_like(3), w3("a b"), 0, kRose);
  EXPECT_EQ(r.forward.atoms()[0].cls, w3("a b"));
  EXPECT_DOUBLE_EQ(r.forward.atoms()[0].weight, 1.5);
}

TEST(Iwip, PolynomialGrowthIsFlagged) {
  const auto psi = Automorphism::from_moves(3, {NielsenMove::right_multiply(3, 1)});
  EXPECT_EQ(psi.image(3), w3("c a"));
  const auto r = iwip_pair_approx(psi, w3("c"), 25, kRose);
  EXPECT_FALSE(r.exponential);
  EXPECT_LT(r.lambda_forward, 1.05);
  EXPECT_THROW(iwip_pair_approx(Automorphism::from_images({w3("b"), w3("c"), w3("a b")}), w3("a"), 3, kRose),
               UnsupportedInput);
}

TEST(Positivity, DiagonalAndCollapsingPairsAreFlagged) {
  SpineSamplerConfig cfg;
  cfg.seed = 89;
  auto pts = random_spine_points(cfg, 3, 0.05, 5);
  pts.push_back(kRose);
  const auto words = oracle::conjugacy_classes(3, 2);
  const auto diag = positivity_check(dual3("a"), dual3("a"), pts, words);
  EXPECT_TRUE(diag.diagonal);
  EXPECT_GT(diag.min_value, 0.0);
  EXPECT_FALSE(diag.pass());
  const auto ab = positivity_check(dual3("a"), dual3("b"), pts, words);
  EXPECT_FALSE(ab.diagonal);
  EXPECT_FALSE(ab.pass());
  bool found_c = false;
  for (const auto& [idx, w] : ab.annihilating) found_c = found_c || w == w3("c");
  EXPECT_TRUE(found_c);
  const auto iw = iwip_pair_approx(tribonacci_like(3), w3("a"), 10, kRose);
  const auto good = positivity_check(iw.forward, iw.backward, pts, oracle::conjugacy_classes(3, 4));
  EXPECT_TRUE(good.pass());
  EXPECT_GT(good.min_value, 0.1);
}
