#include <gtest/gtest.h>

#include "support/errors.hpp"
#include "wbdelta/lattice.hpp"

using namespace wbdelta;

namespace {

Rational q(long p, long d = 1) { return make_rational(p, d); }

SurfaceConfig chain(const std::vector<long>& selfints) {
  std::vector<std::string> names;
  const std::size_t n = selfints.size();
  std::vector<std::vector<Rational>> gram(n, std::vector<Rational>(n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) {
    names.push_back(std::string(1, static_cast<char>('A' + i)));
    gram[i][i] = selfints[i];
    if (i + 1 < n) gram[i][i + 1] = gram[i + 1][i] = 1;
  }
  return SurfaceConfig(names, gram);
}

DivisorExpr pullback_anticanonical(std::int64_t a, std::int64_t b) {
  const auto config = build_wbu_config(a, b, ChamberCheck::skip);
  return evaluate_family(anticanonical_family(config, a, b), 0);
}

}  // namespace

TEST(Lattice, UnitWeightsGram) {
  const auto c = build_wbu_config(1, 1);
  EXPECT_EQ(c.self_intersection(curve::E), -1);
  EXPECT_EQ(c.self_intersection(curve::L), -2);
  EXPECT_EQ(c.self_intersection(curve::D), -1);
  EXPECT_EQ(c.intersection(curve::L, curve::E), 1);
  EXPECT_EQ(c.intersection(curve::D, curve::E), 2);
  EXPECT_EQ(c.intersection(curve::D, curve::L), 1);
}

TEST(Lattice, FiveFourGram) {
  EXPECT_ERRC(build_wbu_config(5, 4), Errc::chamber_violation);
  const auto c = build_wbu_config(5, 4, ChamberCheck::skip);
  EXPECT_EQ(c.self_intersection(curve::E), q(-1, 20));
  EXPECT_EQ(c.self_intersection(curve::D), q(-1, 5));
  EXPECT_EQ(c.self_intersection(curve::L), q(-9, 4));
  EXPECT_EQ(c.intersection(curve::E, curve::L), q(1, 4));
  EXPECT_EQ(c.intersection(curve::E, curve::D), q(2, 5));
}

TEST(Lattice, WeightValidation) {
  EXPECT_ERRC(build_wbu_config(2, 1), Errc::chamber_violation);
  EXPECT_ERRC(build_wbu_config(4, 2), Errc::invalid_weights);
  EXPECT_ERRC(build_wbu_config(0, 1), Errc::invalid_weights);
  EXPECT_ERRC(build_wbu_config(4, 5), Errc::chamber_violation);
  EXPECT_ERRC(build_wbu_config(7, 6), Errc::chamber_violation);
  EXPECT_ERRC(build_wbu_config(13, 11), Errc::chamber_violation);
  EXPECT_NO_THROW(build_wbu_config(8, 7));
  EXPECT_NO_THROW(build_wbu_config(15, 13));
  EXPECT_ERRC(build_wbu_config(4, 2, ChamberCheck::skip), Errc::invalid_weights);
}

TEST(Lattice, ChamberPairs) {
  const auto pairs = chamber_pairs(7);
  const std::vector<Weights> expected{{1, 1}};
  EXPECT_EQ(pairs, expected);
  EXPECT_EQ(chamber_pairs(9), (std::vector<Weights>{{1, 1}, {8, 7}, {9, 8}}));
  EXPECT_EQ(chamber_pairs(15).back(), (Weights{15, 14}));
  EXPECT_EQ(chamber_pairs(50).size(), 103u);
  EXPECT_EQ(pairs, expected);
}

TEST(Lattice, AnticanonicalFamilyUnitWeights) {
  const auto c = build_wbu_config(1, 1);
  const auto fam = anticanonical_family(c, 1, 1);
  const auto at0 = evaluate_family(fam, 0);
  EXPECT_EQ(self_intersection(c, at0), 2);
  EXPECT_EQ(intersect_curve(c, at0, curve::E), 0);
  // Family self-intersection 2 - t^2/(ab) as a polynomial in t.
  EXPECT_EQ(self_intersection(c, fam), (Polynomial{q(2), q(0), q(-1)}));
}

TEST(Lattice, AnticanonicalFamilyFiveFour) {
  const auto c = build_wbu_config(5, 4, ChamberCheck::skip);
  const auto at0 = pullback_anticanonical(5, 4);
  EXPECT_EQ(intersect_curve(c, at0, curve::L), 1);
  EXPECT_EQ(intersect_curve(c, at0, curve::D), 3);
  EXPECT_EQ(self_intersection(c, at0), 2);
}

TEST(Lattice, LogDiscrepancy) {
  EXPECT_EQ(log_discrepancy_E(1, 1), 2);
  EXPECT_EQ(log_discrepancy_E(5, 4), 9);
  EXPECT_EQ(log_discrepancy_E(7, 6), 13);
  EXPECT_ERRC(log_discrepancy_E(6, 4), Errc::invalid_weights);
}

TEST(Lattice, PullbackIdentitiesSweep) {
  std::vector<Weights> pairs = chamber_pairs(60);
  for (std::int64_t a = 2; a <= 30; ++a)
    for (std::int64_t b = 1; b < a; ++b)
      if (std::gcd(a, b) == 1 && !in_chamber(a, b)) pairs.push_back({a, b});
  for (const auto& w : pairs) {
    SCOPED_TRACE(std::to_string(w.a) + "," + std::to_string(w.b));
    const auto c = build_wbu_config(w.a, w.b, ChamberCheck::skip);
    const auto k = pullback_anticanonical(w.a, w.b);
    EXPECT_EQ(self_intersection(c, k), 2);
    EXPECT_EQ(intersect_curve(c, k, curve::E), 0);
    EXPECT_EQ(intersect_curve(c, k, curve::L), 1);
    EXPECT_EQ(intersect_curve(c, k, curve::D), 3);

    const DivisorExpr pl{{curve::L, q(1)}, {curve::E, q(static_cast<long>(w.a))}};
    EXPECT_EQ(intersect_curve(c, pl, curve::E), 0);
    EXPECT_EQ(self_intersection(c, pl), -1);
    const DivisorExpr pd{{curve::D, q(1)}, {curve::E, q(static_cast<long>(2 * w.b))}};
    EXPECT_EQ(intersect_curve(c, pd, curve::E), 0);
    EXPECT_EQ(self_intersection(c, pd), 3);
  }
}

TEST(Lattice, BlowdownChains) {
  const auto ab = blowdown_update(chain({-1, -2}), "A");
  EXPECT_EQ(ab.curves(), std::vector<std::string>{"B"});
  EXPECT_EQ(ab.self_intersection("B"), -1);

  const auto abc = blowdown_update(blowdown_update(chain({-1, -2, -2}), "A"), "B");
  EXPECT_EQ(abc.self_intersection("C"), -1);

  EXPECT_ERRC(blowdown_update(chain({-2, -1}), "A"), Errc::not_contractible);
  EXPECT_ERRC(blowdown_update(chain({-1}), "Z"), Errc::domain);
}

TEST(Lattice, BlowdownRaisesNeighbours) {
  // A(-3) - X(-1) - B(-4): both neighbours go up by one and become adjacent.
  const auto c = blowdown_update(chain({-3, -1, -4}), "B");
  EXPECT_EQ(c.self_intersection("A"), -2);
  EXPECT_EQ(c.self_intersection("C"), -3);
  EXPECT_EQ(c.intersection("A", "C"), 1);
}

TEST(Lattice, ConfigValidation) {
  EXPECT_ERRC(SurfaceConfig({"A", "A"}, {{q(-1), q(0)}, {q(0), q(-1)}}), Errc::domain);
  EXPECT_ERRC(SurfaceConfig({"A", "B"}, {{q(-1), q(1)}, {q(0), q(-1)}}), Errc::domain);
  EXPECT_ERRC(SurfaceConfig({"A"}, {{q(-1), q(0)}}), Errc::domain);
}

TEST(Lattice, DivisorArithmetic) {
  const DivisorExpr x{{"A", q(1)}, {"B", q(2)}};
  const DivisorExpr y{{"B", q(-2)}};
  EXPECT_EQ((x + y), (DivisorExpr{{"A", q(1)}}));
  EXPECT_TRUE((x - x).is_zero());
  EXPECT_EQ((q(3) * x).coefficient("B"), 6);
  EXPECT_EQ(x.coefficient("Z"), 0);
}

TEST(Lattice, FamilyCoefficientsAreCanonical) {
  const auto c = build_wbu_config(10, 9);
  const Polynomial e = anticanonical_family(c, 10, 9).coefficient(curve::E);
  EXPECT_EQ(e.coeff(0).get_den(), 1);
  EXPECT_EQ(e, (Polynomial{q(14), q(-1)}));
}

TEST(Lattice, BlowdownOnWeightedConfig) {
  // The update only reads C.X, so L^2 plays no role; E.L = 1/b moves E^2 by 1/b^2 and E.D by 1/b.
  const auto c = build_wbu_config(9, 8);
  const auto gram = c.gram();
  auto full = c.gram();
  std::vector<bool> alive{true, true, true};
  contract_in_place(full, alive, 1);
  EXPECT_FALSE(alive[1]);
  EXPECT_EQ(full[0][0], gram[0][0] + q(1, 64));
  EXPECT_EQ(full[0][2], gram[0][2] + q(1, 8));
  EXPECT_EQ(full[2][2], gram[2][2] + 1);
}
