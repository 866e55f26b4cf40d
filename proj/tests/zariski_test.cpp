#include <gtest/gtest.h>

#include <random>

#include "support/errors.hpp"
#include "support/oracles.hpp"
#include "wbdelta/zariski.hpp"

using namespace wbdelta;

namespace {

Rational q(long p, long d = 1) { return make_rational(p, d); }

}  // namespace

TEST(DecomposeAt, UnitWeightExamples) {
  const auto c = build_wbu_config(1, 1);
  const auto r1 = decompose_at(c, 1, 1, q(1, 2));
  EXPECT_TRUE(r1.negative.is_zero());
  EXPECT_TRUE(r1.support.empty());

  const auto r2 = decompose_at(c, 1, 1, q(6, 5));
  EXPECT_EQ(r2.negative, (DivisorExpr{{curve::L, q(1, 10)}}));

  const auto r3 = decompose_at(c, 1, 1, q(3, 2));
  EXPECT_EQ(r3.negative, (DivisorExpr{{curve::L, q(1, 2)}, {curve::D, q(1, 2)}}));
  EXPECT_EQ(r3.positive_square, 0);
  EXPECT_TRUE(r3.positive.is_zero());
}

TEST(DecomposeAt, OutOfRange) {
  const auto c = build_wbu_config(1, 1);
  EXPECT_ERRC(decompose_at(c, 1, 1, q(-1, 10)), Errc::out_of_range);
  EXPECT_ERRC(decompose_at(c, 1, 1, q(8, 5)), Errc::out_of_range);
}

TEST(DecomposeAt, PositivePartIsNef) {
  for (const auto& w : chamber_pairs(30)) {
    const auto c = build_wbu_config(w.a, w.b);
    const Rational tau = pseudoeffective_threshold(w.a, w.b);
    for (int k = 0; k <= 20; ++k) {
      const Rational t = tau * Rational(k) / Rational(20);
      const auto pt = decompose_at(c, w.a, w.b, t);
      for (const auto& name : c.curves()) {
        const Rational pc = intersect_curve(c, pt.positive, name);
        ASSERT_GE(pc, 0);
        if (std::find(pt.support.begin(), pt.support.end(), name) != pt.support.end()) {
          ASSERT_EQ(pc, 0);
        }
      }
      for (const auto& [name, coeff] : pt.negative.terms()) {
        ASSERT_GT(coeff, 0);
        ASSERT_NE(name, curve::E);
      }
    }
  }
}

TEST(DecomposeFamily, UnitWeights) {
  const auto c = build_wbu_config(1, 1);
  const auto z = decompose_family(c, 1, 1);
  EXPECT_EQ(z.breakpoints(), (std::vector<Rational>{q(0), q(1), q(7, 5), q(3, 2)}));
  EXPECT_EQ(z.tau, q(3, 2));
  EXPECT_EQ(z.tau_reason, "positive-part-vanishes");
  EXPECT_EQ(z.regions[2].negative.coefficient(curve::L), (Polynomial{q(-4), q(3)}));
  EXPECT_EQ(z.regions[2].negative.coefficient(curve::D), (Polynomial{q(-7), q(5)}));
  EXPECT_TRUE(check_decomposition(c, z).empty());
}

TEST(DecomposeFamily, MatchesClosedFormOnChamber) {
  for (const auto& w : chamber_pairs(60)) {
    SCOPED_TRACE(std::to_string(w.a) + "," + std::to_string(w.b));
    const auto c = build_wbu_config(w.a, w.b);
    const auto generic = decompose_family(c, w.a, w.b);
    const auto closed = closed_form_family(c, w.a, w.b);
    ASSERT_TRUE(same_regions(generic, closed));
    const Rational ra(static_cast<long>(w.a)), rb(static_cast<long>(w.b));
    EXPECT_EQ(generic.breakpoints(),
              (std::vector<Rational>{q(0), rb, ra * (3 * ra + 4 * rb) / (3 * ra + 2 * rb), (ra + 2 * rb) / 2}));
    const auto violations = check_decomposition(c, generic);
    EXPECT_TRUE(violations.empty()) << (violations.empty() ? "" : violations.front());
  }
}

TEST(DecomposeFamily, RegionThreeGramDeterminant) {
  for (const auto& w : chamber_pairs(60)) {
    const auto c = build_wbu_config(w.a, w.b);
    const Rational ra(static_cast<long>(w.a)), rb(static_cast<long>(w.b));
    const Rational det = c.self_intersection(curve::L) * c.self_intersection(curve::D) -
                         c.intersection(curve::L, curve::D) * c.intersection(curve::L, curve::D);
    EXPECT_EQ(det, ((ra + rb) / rb) * (4 * rb / ra - 3) - 1);
    EXPECT_GT(det, 0);
  }
}

TEST(DecomposeFamily, JointContinuity) {
  for (const auto& w : chamber_pairs(40)) {
    const auto c = build_wbu_config(w.a, w.b);
    const auto z = closed_form_family(c, w.a, w.b);
    const Rational t2 = z.regions[2].lo;
    EXPECT_EQ(z.regions[1].negative.coefficient(curve::L)(t2), z.regions[2].negative.coefficient(curve::L)(t2));
    EXPECT_EQ(z.regions[2].negative.coefficient(curve::D)(t2), 0);
  }
}

TEST(DecomposeFamily, OutsideChamberIsDifferent) {
  // (5,4): the closed-form joint a(3a+4b)/(3a+2b) = 155/23 lies beyond (a+2b)/2 = 13/2.
  const auto c = build_wbu_config(5, 4, ChamberCheck::skip);
  EXPECT_GT(q(155, 23), pseudoeffective_threshold(5, 4));
  EXPECT_ERRC(closed_form_family(c, 5, 4), Errc::chamber_violation);
  const auto z = decompose_family(c, 5, 4);
  EXPECT_EQ(z.regions.size(), 2u);
  EXPECT_EQ(z.tau_reason, "exceptional-coefficient-zero");
  EXPECT_NE(z.volume(c)(z.tau), 0);
}

TEST(CrossValidate, Examples) {
  const auto r11 = cross_validate(build_wbu_config(1, 1), 1, 1, 11);
  EXPECT_TRUE(r11.ok());
  EXPECT_EQ(r11.points_checked, 33u);
  EXPECT_TRUE(cross_validate(build_wbu_config(8, 7), 8, 7, 11).ok());
  EXPECT_ERRC(cross_validate(build_wbu_config(1, 1), 1, 1, 0), Errc::domain);
}

TEST(CrossValidate, Sweep) {
  for (const auto& w : chamber_pairs(30)) {
    const auto rep = cross_validate(build_wbu_config(w.a, w.b), w.a, w.b, 5);
    ASSERT_TRUE(rep.ok()) << w.a << "," << w.b;
  }
}

TEST(Linalg, DeterminantAndSolve) {
  const RationalMatrix m{{q(-2), q(1)}, {q(1), q(-1)}};
  EXPECT_EQ(determinant(m), 1);
  EXPECT_TRUE(is_negative_definite(m));
  EXPECT_FALSE(is_negative_definite(RationalMatrix{{q(-1), q(2)}, {q(2), q(-1)}}));
  EXPECT_EQ(solve_linear(m, {q(-1, 2), q(0)}), (std::vector<Rational>{q(1, 2), q(1, 2)}));
  EXPECT_ERRC(solve_linear(RationalMatrix{{q(1), q(2)}, {q(2), q(4)}}, {q(0), q(0)}),
              Errc::degenerate_configuration);
}

TEST(LinearAlgebra, SolveMatchesDenseResidual) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 1 + trial % 6;
    RationalMatrix m(n, std::vector<Rational>(n));
    std::vector<Rational> rhs(n);
    for (auto& row : m)
      for (auto& e : row) e = (rng() % 3 == 0) ? Rational(0) : oracle::random_rational(rng, 9);
    for (auto& r : rhs) r = oracle::random_rational(rng, 9);
    if (determinant(m) == 0) {
      EXPECT_ERRC(solve_linear(m, rhs), Errc::degenerate_configuration);
      continue;
    }
    const auto x = solve_linear(m, rhs);
    for (std::size_t i = 0; i < n; ++i) {
      Rational acc = 0;
      for (std::size_t j = 0; j < n; ++j) acc += m[i][j] * x[j];
      ASSERT_EQ(acc, rhs[i]);
    }
  }
}
