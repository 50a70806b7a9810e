#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "field_oracle.hpp"
#include "roughcontact/errors.hpp"
#include "roughcontact/power_law.hpp"
#include "roughcontact/test_field.hpp"

using namespace roughcontact;

namespace {

constexpr double kAlphas[] = {0.25, 0.5, 0.75, 1.0};
constexpr double kGaps[] = {1e-6, 1e-4, 1e-2};

double P(double s) { return 3 * s * s - 2 * s * s * s; }

struct Sampler {
  std::mt19937_64 rng{20240611};
  GapPoint interior(const RoughProfile& p, double h) {
    std::uniform_real_distribution<double> u1(-p.delta(), p.delta()), u2(0.02, 0.98);
    double x1 = 0.0;
    while (std::abs(x1) < 1e-9) x1 = u1(rng);
    return {x1, u2(rng) * gamma(p, h, x1)};
  }
};

double rel_err(const Matrix2& a, const Matrix2& b) {
  double diff = 0.0, scale = 0.0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      diff = std::max(diff, std::abs(a[i][j] - b[i][j]));
      scale = std::max(scale, std::abs(b[i][j]));
    }
  return diff / scale;
}

double rel_err(const Vec2& a, const std::array<double, 2>& b) {
  const double diff = std::max(std::abs(a[0] - b[0]), std::abs(a[1] - b[1]));
  return diff / std::max(std::abs(b[0]), std::abs(b[1]));
}

}  // namespace

TEST(TestField, PhiBoundaryValues) {
  const RoughProfile p(0.5);
  const double h = 1e-3;
  for (double x1 : {-0.7, 0.0, 0.2}) {
    const double top = gamma(p, h, x1);
    EXPECT_NEAR(phi(p, h, {x1, top}), 1.0, 1e-15);
    EXPECT_EQ(phi(p, h, {x1, 0.0}), 0.0);
    EXPECT_NEAR(phi(p, h, {x1, 0.5 * top}), 0.5, 1e-15);
  }
}

TEST(TestField, VelocityBoundaryContract) {
  std::mt19937_64 rng(7);
  for (double a : kAlphas) {
    const RoughProfile p(a);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (double h : kGaps) {
      for (int k = 0; k < 100; ++k) {
        const double x1 = u(rng);
        const Vec2 top = velocity(p, h, {x1, gamma(p, h, x1)});
        EXPECT_LE(std::hypot(top[0], top[1] - 1.0), 1e-12);
        const Vec2 wall = velocity(p, h, {x1, 0.0});
        EXPECT_LE(std::hypot(wall[0], wall[1]), 1e-12);
      }
    }
  }
}

TEST(TestField, VelocityMatchesClosedFormOracle) {
  Sampler s;
  for (double a : kAlphas) {
    const RoughProfile p(a);
    for (double h : kGaps) {
      const oracle::Field f{a, 1.0, h};
      for (int k = 0; k < 20; ++k) {
        const GapPoint pt = s.interior(p, h);
        EXPECT_LE(rel_err(velocity(p, h, pt), f.w(pt.x1, pt.x2)), 1e-12);
      }
    }
  }
}

TEST(TestField, VelocityOnAxis) {
  const RoughProfile p(0.25);
  const double h = 1e-4;
  for (double u : {0.1, 0.5, 0.9}) {
    const Vec2 w = velocity(p, h, {0.0, u * h});
    EXPECT_EQ(w[0], 0.0);
    EXPECT_NEAR(w[1], P(u), 1e-15);
  }
}

TEST(TestField, WallShearEntry) {
  const RoughProfile p(0.75);
  const double h = 1e-3;
  for (double x1 : {-0.4, 0.05, 0.9}) {
    const auto g = velocity_gradient(p, h, {x1, 0.0});
    ASSERT_TRUE(g.has_value());
    const double top = gamma(p, h, x1);
    EXPECT_NEAR((*g)[1][0] / (-6.0 * x1 / (top * top)), 1.0, 1e-13);
  }
}

TEST(TestField, DivergenceFreeInClosedForm) {
  Sampler s;
  for (double a : kAlphas) {
    const RoughProfile p(a);
    for (double h : kGaps) {
      for (int k = 0; k < 100; ++k) {
        const GapPoint pt = s.interior(p, h);
        const auto g = velocity_gradient(p, h, pt);
        ASSERT_TRUE(g.has_value());
        const double scale = std::max({1.0, std::abs((*g)[0][0]), std::abs((*g)[1][1])});
        EXPECT_LE(std::abs(trace(*g)), 1e-12 * scale);
      }
    }
  }
}

TEST(TestField, GradientMatchesFiniteDifferences) {
  Sampler s;
  for (double a : kAlphas) {
    const RoughProfile p(a);
    for (double h : kGaps) {
      const oracle::Field f{a, 1.0, h};
      for (int k = 0; k < 100; ++k) {
        const GapPoint pt = s.interior(p, h);
        const auto g = velocity_gradient(p, h, pt);
        ASSERT_TRUE(g.has_value());
        const auto fd = oracle::gradient(f, pt.x1, pt.x2);
        EXPECT_LE(rel_err(*g, fd), 1e-6) << "alpha=" << a << " h=" << h << " x1=" << pt.x1;
        EXPECT_LE(std::abs(fd[0][0] + fd[1][1]), 1e-6 * std::max(1.0, std::abs(fd[0][0])));
      }
    }
  }
}

TEST(TestField, GradientUndefinedOnCuspLineForRoughProfiles) {
  EXPECT_FALSE(velocity_gradient(RoughProfile(0.5), 1e-4, {0.0, 5e-5}).has_value());
  EXPECT_TRUE(velocity_gradient(RoughProfile(1.0), 1e-4, {0.0, 5e-5}).has_value());
}

TEST(TestField, HDerivativeMatchesFiniteDifferences) {
  Sampler s;
  for (double a : kAlphas) {
    const RoughProfile p(a);
    for (double h : kGaps) {
      const oracle::Field f{a, 1.0, h};
      for (int k = 0; k < 100; ++k) {
        const GapPoint pt = s.interior(p, h);
        EXPECT_LE(rel_err(dh_velocity(p, h, pt), oracle::dh_w(f, pt.x1, pt.x2)), 1e-5)
            << "alpha=" << a << " h=" << h << " x1=" << pt.x1;
      }
    }
  }
}

TEST(TestField, HDerivativeSpotValues) {
  const RoughProfile p(0.5);
  const double h = 1e-3;
  const Vec2 wall = dh_velocity(p, h, {0.3, 0.0});
  EXPECT_EQ(wall[0], 0.0);
  EXPECT_EQ(wall[1], 0.0);
  const Vec2 axis = dh_velocity(p, h, {0.0, 0.5 * h});
  EXPECT_EQ(axis[0], 0.0);
  EXPECT_NEAR(axis[1] * h, -0.75, 1e-13);
}

TEST(TestField, TangentialDerivativeOfPhiAlongSolidVanishes) {
  for (double a : kAlphas) {
    const RoughProfile p(a);
    for (double x1 : {-0.6, 0.01, 0.3}) {
      const double h = 1e-3;
      const StreamJet jet = stream_jet(p, h, {x1, gamma(p, h, x1)});
      const double slope = *gamma_derivative(p, h, x1, 1);
      EXPECT_LE(std::abs(jet.phi.d1 + slope * jet.phi.d2), 1e-8 * std::abs(jet.phi.d2) + 1e-8);
    }
  }
}

TEST(TestField, PressureOnAxisAndParity) {
  const RoughProfile p(0.5);
  const double h = 1e-3;
  const double s = 0.3;
  const double on_axis = pressure(p, h, {0.0, s * h});
  EXPECT_NEAR(on_axis * h, 6 * s - 6 * s * s, 1e-12);
  Sampler smp;
  for (int k = 0; k < 20; ++k) {
    const GapPoint pt = smp.interior(p, h);
    const double a = pressure(p, h, pt), b = pressure(p, h, {-pt.x1, pt.x2});
    EXPECT_NEAR(a, b, 1e-10 * std::abs(a));
  }
}

TEST(TestField, PressureIncrementsMatchOracle) {
  Sampler smp;
  for (double a : {0.25, 1.0}) {
    const RoughProfile p(a);
    const double h = 1e-4;
    const oracle::Field f{a, 1.0, h};
    for (int k = 0; k < 20; ++k) {
      const GapPoint pt = smp.interior(p, h);
      const double dx = -0.1 * pt.x1;
      const double x2 = std::min(pt.x2, 0.5 * gamma(p, h, pt.x1 + dx));
      const double lib = pressure(p, h, {pt.x1 + dx, x2}) - pressure(p, h, pt);
      const double ref = f.pressure_step(pt.x1, pt.x2, dx, x2 - pt.x2);
      EXPECT_NEAR(lib, ref, 1e-8 * std::max(std::abs(ref), std::abs(pressure(p, h, pt))));
    }
  }
}

TEST(TestField, PressureGradientMatchesFiniteDifferences) {
  Sampler smp;
  for (double a : kAlphas) {
    const RoughProfile p(a);
    for (double h : kGaps) {
      const oracle::Field f{a, 1.0, h};
      for (int k = 0; k < 20; ++k) {
        const GapPoint pt = smp.interior(p, h);
        const StreamJet jet = stream_jet(p, h, pt);
        const double g = jet.gamma;
        const Vec2 grad_q{jet.psi.d112 + 12.0 * pt.x1 / (g * g * g), jet.psi.d122};
        const oracle::Steps st = oracle::local_steps(f, pt.x1);
        const std::array<double, 2> fd{
            oracle::d1([&](double e) { return f.pressure_step(pt.x1, pt.x2, e, 0.0); }, st.e1),
            oracle::d1([&](double e) { return f.pressure_step(pt.x1, pt.x2, 0.0, e); }, st.e2)};
        EXPECT_LE(rel_err(grad_q, fd), 1e-5) << "alpha=" << a << " h=" << h;
      }
    }
  }
}

TEST(TestField, StokesResidualMatchesFiniteDifferences) {
  Sampler smp;
  for (double a : kAlphas) {
    const RoughProfile p(a);
    for (double h : kGaps) {
      const oracle::Field f{a, 1.0, h};
      for (int k = 0; k < 50; ++k) {
        const GapPoint pt = smp.interior(p, h);
        const auto r = stokes_residual(p, h, pt);
        ASSERT_TRUE(r.has_value());
        EXPECT_LE(rel_err(*r, oracle::stokes_residual(f, pt.x1, pt.x2)), 1e-4)
            << "alpha=" << a << " h=" << h << " x1=" << pt.x1;
      }
    }
  }
}

TEST(TestField, StokesResidualScalesWithViscosity) {
  const RoughProfile p(0.75);
  const GapPoint pt{0.2, 0.5 * gamma(p, 1e-3, 0.2)};
  const Vec2 r1 = *stokes_residual(p, 1e-3, pt, 1.0);
  const Vec2 r3 = *stokes_residual(p, 1e-3, pt, 3.0);
  EXPECT_NEAR(r3[0], 3.0 * r1[0], 1e-12 * std::abs(r3[0]));
  EXPECT_NEAR(r3[1], 3.0 * r1[1], 1e-12 * std::abs(r3[1]));
}

TEST(TestField, SmoothProfileResidualFiniteOnAxis) {
  const RoughProfile p(1.0);
  const double h = 1e-2;
  std::vector<double> mags;
  for (double x1 : {1e-2, 1e-4, 1e-6, 0.0}) {
    const auto r = stokes_residual(p, h, {x1, 0.3 * gamma(p, h, x1)});
    ASSERT_TRUE(r.has_value());
    mags.push_back(std::hypot((*r)[0], (*r)[1]));
  }
  EXPECT_LE(*std::max_element(mags.begin(), mags.end()) / mags.front(), 2.0);
  const auto r0 = *stokes_residual(p, h, {0.0, 0.3 * h});
  const oracle::Field near{1.0, 1.0, h};
  // Centred stencil straddling the axis; the field is smooth there for alpha = 1.
  const double e1 = 1e-4, e2 = 0.25 * h, x2 = 0.3 * h;
  std::array<double, 2> lap{};
  for (int j = 0; j < 2; ++j) {
    lap[j] = oracle::d2([&](double a) { return near.w(a, x2)[j]; }, e1) +
             oracle::d2([&](double b) { return near.w(0.0, x2 + b)[j]; }, e2);
  }
  const double q1 = oracle::d1([&](double a) { return near.pressure_step(0.0, x2, a, 0.0); }, e1);
  const double q2 = oracle::d1([&](double b) { return near.pressure_step(0.0, x2, 0.0, b); }, e2);
  EXPECT_LE(rel_err(r0, {lap[0] - q1, lap[1] - q2}), 1e-4);
}

TEST(TestField, SecondDerivativeSingularityAtCusp) {
  for (double a : {0.25, 0.5, 0.75}) {
    const RoughProfile p(a);
    const double h = 1e-3;
    std::vector<PowerLawSample> samples;
    for (double x1 : log_spaced(1e-9, 1e-7, 9)) {
      const StreamJet jet = stream_jet(p, h, {x1, 0.5 * gamma(p, h, x1)});
      samples.push_back({x1, std::abs(jet.phi.d11)});
    }
    const PowerLawFit fit = fit_power_law(samples, FitWindow{1e-9, 1e-7});
    EXPECT_NEAR(fit.exponent, a - 1.0, 0.05) << "alpha=" << a;
  }
}

TEST(TestField, FieldSampleBundlesAllQuantities) {
  const RoughProfile p(0.5);
  const GapPoint pt{0.1, 0.5 * gamma(p, 1e-3, 0.1)};
  const FieldSample fs = field_sample(p, 1e-3, pt);
  EXPECT_EQ(fs.w, velocity(p, 1e-3, pt));
  ASSERT_TRUE(fs.grad_w.has_value());
  ASSERT_TRUE(fs.residual.has_value());
  EXPECT_EQ(fs.q, pressure(p, 1e-3, pt));
  const FieldSample cusp = field_sample(p, 1e-3, {0.0, 5e-4});
  EXPECT_FALSE(cusp.grad_w.has_value());
  EXPECT_FALSE(cusp.residual.has_value());
}

TEST(TestField, PointsOutsideTheGapAreRejected) {
  const RoughProfile p(0.5);
  EXPECT_THROW(velocity(p, 1e-3, {0.1, 1.0}), DomainError);
  EXPECT_THROW(velocity(p, 1e-3, {0.1, -1e-6}), DomainError);
  EXPECT_THROW(velocity(p, 1e-3, {1.5, 0.0}), DomainError);
  EXPECT_THROW(velocity(p, 0.0, {0.1, 0.0}), DomainError);
}
