#include <gtest/gtest.h>

#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "hyperdot/measures.hpp"
#include "hyperdot/uncertainty.hpp"

using namespace hyperdot;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

SystemSpec make(SystemKind kind, int d) {
  SystemSpec s;
  s.kind = kind;
  s.d = d;
  return s;
}

double rel(double a, double b) { return std::fabs(a / b - 1.0); }

// Valid Renyi-relation grid: 20 points in [1/2, alpha_R).
std::vector<double> renyi_grid(const SystemSpec& s) {
  const double ar = thresholds(s).alpha_r;
  const double hi = std::isinf(ar) ? 5.0 : 0.5 + 0.98 * (ar - 0.5);
  std::vector<double> g;
  for (int i = 0; i < 20; ++i) g.push_back(0.5 + (hi - 0.5) * i / 19.0);
  return g;
}

}  // namespace

TEST(Conjugate, Examples) {
  EXPECT_DOUBLE_EQ(conjugate_beta(1.0), 1.0);
  EXPECT_DOUBLE_EQ(conjugate_beta(0.75), 1.5);
  EXPECT_NEAR(conjugate_beta(0.5 + 1e-9), 2.5e8, 25.0);  // (1/2 + 1e-9) / 2e-9; 0.5 + 1e-9 is inexact
  EXPECT_TRUE(std::isinf(conjugate_beta(0.5)));
  EXPECT_DOUBLE_EQ(conjugate_beta(kInf), 0.5);
  EXPECT_THROW(conjugate_beta(0.4), std::domain_error);
}

TEST(Conjugate, Involution) {
  for (int i = 1; i <= 2000; ++i) {
    const double a = 0.5 + 9.5 * i / 2000.0;
    // Relative: recovering alpha from a rounded beta amplifies by 2 alpha - 1.
    EXPECT_NEAR(conjugate_beta(conjugate_beta(a)), a, 1e-14 * a) << a;
    EXPECT_NEAR(1 / a + 1 / conjugate_beta(a), 2.0, 1e-14) << a;
  }
}

TEST(Shannon, Examples) {
  const auto d3 = shannon_check(make(SystemKind::DirichletDot, 3));
  EXPECT_LT(rel(d3.left, 6.6173), 2e-4);
  EXPECT_LT(rel(d3.right, 6.4342), 2e-5);
  EXPECT_EQ(d3.verdict, Verdict::Strict);
  const auto n3 = shannon_check(make(SystemKind::NeumannDot, 3));
  EXPECT_LT(rel(n3.left, 8.2108), 2e-4);
  EXPECT_EQ(n3.verdict, Verdict::Strict);
  const auto n4 = shannon_check(make(SystemKind::NeumannDot, 4));
  EXPECT_LT(rel(n4.left, 11.005), 2e-4);
  EXPECT_LT(rel(n4.right, 8.5789), 2e-5);
}

TEST(Renyi, RightSide) {
  EXPECT_NEAR(renyi_right_side(3, 0.5), 3 * std::log(2 * kPi), 1e-14);
  EXPECT_NEAR(renyi_right_side(3, 0.5), 5.5136, 1e-4);
  for (int d : {2, 3, 7}) {
    EXPECT_NEAR(renyi_right_side(d, 1.0), d * (1 + std::log(kPi)), 1e-14);
    // Analytic limits are continuous with the generic formula.
    for (double h : {1e-12, 1e-9, 1e-7, -1e-7}) EXPECT_NEAR(renyi_right_side(d, 1.0 + h), renyi_right_side(d, 1.0), 1e-6);
    // Generic form against the textbook expression where it is well conditioned.
    for (double a : {0.6, 0.8, 1.3, 4.0}) {
      const double b = a / (2 * a - 1);
      EXPECT_NEAR(renyi_right_side(d, a), -0.5 * d * (std::log(a / kPi) / (1 - a) + std::log(b / kPi) / (1 - b)), 1e-12);
    }
    EXPECT_NEAR(renyi_right_side(d, 0.5 + 1e-12), renyi_right_side(d, 0.5), 1e-9);
    // Symmetric under alpha <-> beta.
    EXPECT_NEAR(renyi_right_side(d, 0.7), renyi_right_side(d, conjugate_beta(0.7)), 1e-12);
  }
}

TEST(Renyi, GroundIdentityAtHalf) {
  for (SystemKind k : {SystemKind::DirichletDot, SystemKind::NeumannDot, SystemKind::Hydrogen})
    for (int d = 2; d <= 6; ++d) {
      if (k == SystemKind::Hydrogen && d < 3) continue;
      const auto c = renyi_sum(make(k, d), {}, 0.5);
      EXPECT_EQ(c.verdict, Verdict::Identity) << to_string(k) << d << " slack " << c.slack;
      EXPECT_LT(std::fabs(c.left - d * std::log(2 * kPi)), 1e-6);
    }
}

TEST(Renyi, OutOfRange) {
  EXPECT_THROW(renyi_sum(make(SystemKind::NeumannDot, 3), {}, 1.5), std::out_of_range);
  EXPECT_THROW(renyi_sum(make(SystemKind::NeumannDot, 3), {}, 0.45), std::out_of_range);
  EXPECT_THROW(renyi_sum(make(SystemKind::DirichletDot, 6), {}, 2.0), std::out_of_range);
  EXPECT_NO_THROW(renyi_sum(make(SystemKind::DirichletDot, 3), {}, 50.0));
}

TEST(Renyi, NeumannGrowthTowardRightEdge) {
  const SystemSpec s = make(SystemKind::NeumannDot, 3);
  double prev = -kInf;
  for (double a : {1.4, 1.45, 1.49}) {
    const auto c = renyi_sum(s, {}, a);
    EXPECT_GT(c.left, prev) << a;
    EXPECT_EQ(c.verdict, Verdict::Strict);
    prev = c.left;
  }
}

TEST(Renyi, OrderOneIsShannon) {
  for (SystemKind k : {SystemKind::DirichletDot, SystemKind::NeumannDot})
    for (int d = 2; d <= 6; ++d) {
      const auto r = renyi_sum(make(k, d), {}, 1.0);
      const auto s = shannon_check(make(k, d));
      EXPECT_NEAR(r.left, s.left, 1e-6);
      EXPECT_NEAR(r.right, s.right, 1e-12);
    }
}

TEST(Tsallis, Examples) {
  for (SystemKind k : {SystemKind::DirichletDot, SystemKind::NeumannDot, SystemKind::Hydrogen})
    for (int d = 3; d <= 6; ++d) {
      const auto c = tsallis_sides(make(k, d), {}, 1.0);
      EXPECT_NEAR(c.left, std::pow(kPi, -0.25 * d), 1e-10);
      EXPECT_NEAR(c.right, std::pow(kPi, -0.25 * d), 1e-10);
    }
  EXPECT_NEAR(std::pow(kPi, -0.75), 0.42377, 1e-5);
  const auto half = tsallis_sides(make(SystemKind::DirichletDot, 3), {}, 0.5);
  EXPECT_NEAR(half.left, half.right, 1e-8);
  EXPECT_LT(rel(half.left, 0.10132), 5e-5);
  const auto mid = tsallis_sides(make(SystemKind::DirichletDot, 3), {}, 0.75);
  EXPECT_EQ(mid.verdict, Verdict::Strict);
  EXPECT_GT(mid.left, mid.right);
  EXPECT_THROW(tsallis_sides(make(SystemKind::DirichletDot, 3), {}, 1.2), std::out_of_range);
}

TEST(Tsallis, HalfIdentityEqualsOriginValue) {
  // At alpha = 1/2 both sides are the momentum wavefunction at the origin,
  // Phi(0) = (2 pi)^{-d/2} int psi.
  for (SystemKind k : {SystemKind::DirichletDot, SystemKind::NeumannDot})
    for (int d = 2; d <= 5; ++d) {
      const auto c = tsallis_sides(make(k, d), {}, 0.5);
      EXPECT_NEAR(c.left, c.right, 1e-8 * c.left) << to_string(k) << d;
    }
}

TEST(Hydrogen, PositionClosedForm) {
  EXPECT_NEAR(hydrogen_renyi_closed(3, 2.0, Space::Position), std::log(8 * kPi), 1e-12);
  // Independent route: quadrature of the normalized ground profile.
  for (int d = 3; d <= 6; ++d)
    for (double a : {0.3, 0.8, 2.0, 7.0}) {
      const RenyiPoint q = renyi(make(SystemKind::Hydrogen, d), {}, Space::Position, a);
      EXPECT_NEAR(hydrogen_renyi_closed(d, a, Space::Position), q.value, 1e-9) << d << " " << a;
    }
  const double sh = shannon(make(SystemKind::Hydrogen, 3), {}, Space::Position);
  for (double a : {1.0 - 1e-6, 1.0 + 1e-6}) EXPECT_NEAR(hydrogen_renyi_closed(3, a, Space::Position), sh, 1e-4);
}

TEST(Hydrogen, MomentumClosedFormAndPole) {
  for (int d = 3; d <= 6; ++d) {
    for (double a : {0.6, 0.9, 1.7, 4.0}) {
      const RenyiPoint q = renyi(make(SystemKind::Hydrogen, d), {}, Space::Momentum, a);
      EXPECT_NEAR(hydrogen_renyi_closed(d, a, Space::Momentum), q.value, 1e-9) << d << " " << a;
    }
    const double th = d / (2.0 * (d + 1.0));
    EXPECT_DOUBLE_EQ(thresholds(make(SystemKind::Hydrogen, d)).alpha_th, th);
    double prev = -kInf;
    for (double e : {1e-1, 1e-2, 1e-3, 1e-5}) {
      const double v = hydrogen_renyi_closed(d, th * (1 + e), Space::Momentum);
      EXPECT_GT(v, prev) << d << " " << e;
      prev = v;
    }
    // The divergence is the Gamma pole: -ln(e) growth per decade.
    const double g1 = hydrogen_renyi_closed(d, th * (1 + 1e-6), Space::Momentum);
    const double g2 = hydrogen_renyi_closed(d, th * (1 + 1e-7), Space::Momentum);
    EXPECT_NEAR((g2 - g1) * (1 - th) / std::log(10.0), 1.0, 1e-3) << d;
    EXPECT_THROW(hydrogen_renyi_closed(d, th, Space::Momentum), std::domain_error);
  }
}

TEST(Hydrogen, SumClosedFormIsSumOfComponents) {
  for (int d = 3; d <= 5; ++d)
    for (double a : {0.6, 1.3, 3.0}) {
      const auto c = renyi_sum(make(SystemKind::Hydrogen, d), {}, a);
      EXPECT_NEAR(hydrogen_renyi_sum_closed(d, a), c.left, 1e-8);
      EXPECT_EQ(c.verdict, Verdict::Strict);
    }
}

TEST(Hydrogen, AlphaMax) {
  EXPECT_NEAR(hydrogen_alpha_max(3), 1.1798, 1e-3);
  EXPECT_NEAR(hydrogen_alpha_max(4), 1.1498, 1e-3);
  EXPECT_NEAR(hydrogen_alpha_max(5), 1.1272, 1e-3);
  double prev = kInf;
  for (int d = 3; d <= 20; ++d) {
    const double a = hydrogen_alpha_max(d);
    EXPECT_LT(a, prev) << d;
    EXPECT_GT(a, 1.0) << d;
    // Stationary: neighbours lie below.
    const double f = hydrogen_renyi_sum_closed(d, a);
    EXPECT_GE(f, hydrogen_renyi_sum_closed(d, a + 1e-3)) << d;
    EXPECT_GE(f, hydrogen_renyi_sum_closed(d, a - 1e-3)) << d;
    prev = a;
  }
}

TEST(Hydrogen, Asymptote) {
  EXPECT_NEAR(hydrogen_sum_asymptote(3), 5.5136, 1e-3);
  EXPECT_NEAR(hydrogen_sum_asymptote(3), 2 * std::log(4 * kPi) + std::log(kPi / 2), 1e-12);
  EXPECT_GT(hydrogen_sum_asymptote(4), hydrogen_sum_asymptote(3));
  EXPECT_TRUE(std::isfinite(hydrogen_sum_asymptote(4)));
  // The approach is governed by the position term d ln(alpha)/(alpha-1)
  // plus O(1/alpha); the sum comes within 1e-2 beyond alpha ~ 2e3.
  for (double a : {1e3, 1e4, 1e5}) {
    const double gap = hydrogen_renyi_sum_closed(3, a) - hydrogen_sum_asymptote(3);
    EXPECT_LT(std::fabs(gap - 3 * std::log(a) / (a - 1)), 5.0 / a) << a;
  }
  EXPECT_LT(std::fabs(hydrogen_renyi_sum_closed(3, 1e4) - hydrogen_sum_asymptote(3)), 1e-2);
  EXPECT_LT(std::fabs(hydrogen_renyi_sum_closed(3, 1e3) - hydrogen_sum_asymptote(3)), 2e-2);
  // Independent route: Renyi limits of the quadrature densities.
  const SystemSpec h = make(SystemKind::Hydrogen, 3);
  const double lim = renyi(h, {}, Space::Position, kInf).value + renyi(h, {}, Space::Momentum, 0.5 + 1e-9).value;
  EXPECT_NEAR(lim, hydrogen_sum_asymptote(3), 1e-6);
}

TEST(NearHalf, Expansion) {
  EXPECT_NEAR(near_half_expansion(3, 0.5), 3 * std::log(2 * kPi), 1e-14);
  EXPECT_NEAR(near_half_expansion(3, 0.51), 3 * (std::log(2 * kPi) - (1 + std::log(0.02)) * 0.02), 1e-14);
  EXPECT_NEAR(near_half_expansion(3, 0.51), renyi_right_side(3, 0.51), 1e-2);
  double prev_err = kInf;
  for (double h : {0.04, 0.02, 0.01}) {
    const double a = 0.5 + h, e = 2 * h;
    const double err = std::fabs(renyi_right_side(3, a) - near_half_expansion(3, a));
    EXPECT_LT(err, 5 * e * e * 3) << h;
    // Exact remainder d [e - ln(1+e) - e^2 ln(e)/(1-e)] of the closed right side.
    EXPECT_NEAR(renyi_right_side(3, a) - near_half_expansion(3, a),
                3 * (e - std::log1p(e) - e * e * std::log(e) / (1 - e)), 1e-12);
    if (std::isfinite(prev_err)) {
      // Quadratic up to the logarithm: ratio between 2^2 (1 - ...) and 2^2.
      EXPECT_GT(prev_err / err, 3.0) << h;
      EXPECT_LT(prev_err / err, 4.0) << h;
    }
    prev_err = err;
  }
}

TEST(Invariants, NeverViolated) {
  for (SystemKind k : {SystemKind::DirichletDot, SystemKind::NeumannDot, SystemKind::Hydrogen})
    for (int d = 2; d <= 8; ++d)
      for (int n = 1; n <= 3; ++n) {
        if (k == SystemKind::Hydrogen && d < 3) continue;
        const SystemSpec s = make(k, d);
        EXPECT_NE(shannon_check(s, {n, 0}).verdict, Verdict::Violated);
        for (double a : renyi_grid(s)) {
          const auto c = renyi_sum(s, {n, 0}, a);
          EXPECT_NE(c.verdict, Verdict::Violated) << to_string(k) << " d=" << d << " n=" << n << " a=" << a;
        }
        for (int i = 0; i <= 10; ++i) {
          const auto c = tsallis_sides(s, {n, 0}, 0.5 + 0.05 * i);
          EXPECT_NE(c.verdict, Verdict::Violated) << to_string(k) << " d=" << d << " n=" << n;
        }
      }
}

TEST(Invariants, ExcitedStrictAtHalf) {
  for (SystemKind k : {SystemKind::DirichletDot, SystemKind::NeumannDot, SystemKind::Hydrogen})
    for (int d = 3; d <= 6; ++d)
      for (int n = 2; n <= 3; ++n) {
        const auto c = renyi_sum(make(k, d), {n, 0}, 0.5);
        EXPECT_EQ(c.verdict, Verdict::Strict) << to_string(k) << d << n;
        EXPECT_GT(c.slack, 1e-3) << to_string(k) << d << n;
      }
}

TEST(Verdicts, Classify) {
  EXPECT_EQ(classify(0.0), Verdict::Identity);
  EXPECT_EQ(classify(5e-7), Verdict::Identity);
  EXPECT_EQ(classify(-5e-7), Verdict::Identity);
  EXPECT_EQ(classify(2e-6), Verdict::Strict);
  EXPECT_EQ(classify(-2e-6), Verdict::Violated);
  EXPECT_EQ(to_string(Verdict::Violated), "violated");
  EXPECT_EQ(to_string(RelationKind::Renyi), "renyi");
}
