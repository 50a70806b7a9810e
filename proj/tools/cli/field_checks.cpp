#include "field_checks.hpp"

#include <algorithm>
#include <cmath>

#include "roughcontact/quadrature.hpp"

namespace roughcontact::cli {

namespace {

template <class F>
double first(F&& f, double e) {
  return (f(-2.0 * e) - 8.0 * f(-e) + 8.0 * f(e) - f(2.0 * e)) / (12.0 * e);
}

template <class F>
double second(F&& f, double e) {
  return (-f(-2.0 * e) + 16.0 * f(-e) - 30.0 * f(0.0) + 16.0 * f(e) - f(2.0 * e)) / (12.0 * e * e);
}

Vec2 w_at(const RoughProfile& profile, double h, double x1, double x2) {
  return velocity_of(stream_jet(profile, h, {x1, x2}));
}

// 12 int_a^b t / gamma^3 dt, the x1-increment of the pressure integral term.
double lubrication_increment(const RoughProfile& profile, double h, double a, double b) {
  if (a == b) return 0.0;
  if (b < a) return -lubrication_increment(profile, h, b, a);
  auto f = [&](double t) {
    const double g = gamma_jet(profile, h, t).g;
    return 12.0 * t / (g * g * g);
  };
  const double pts[2] = {a, b};
  QuadratureOptions o;
  o.rel_tol = 1e-13;
  return integrate_adaptive_scalar(f, pts, o).value[0];
}

}  // namespace

FieldCheck check_field_point(const RoughProfile& profile, double h, GapPoint p, double mu) {
  FieldCheck out;
  const StreamJet jet = stream_jet(profile, h, p);
  const GammaJet gj = gamma_jet(profile, h, p.x1);

  // x2: the field is a cubic in x2, differentiated exactly by the stencils.
  const double e2 = 0.25 * gj.g;
  double l1 = std::abs(gj.g1) > 0.0 ? gj.g / std::abs(gj.g1) : profile.delta();
  if (profile.alpha() < 1.0) l1 = std::min(l1, std::abs(p.x1));
  const double e1 = 5e-4 * l1;

  if (jet.valid.second) {
    const Matrix2 g = gradient_of(jet);
    out.abs_div = std::abs(trace(g));
    double scale = 0.0, diff = 0.0;
    for (int j = 0; j < 2; ++j) {
      const double fd1 = first([&](double a) { return w_at(profile, h, p.x1 + a, p.x2)[j]; }, e1);
      const double fd2 = first([&](double b) { return w_at(profile, h, p.x1, p.x2 + b)[j]; }, e2);
      scale = std::max({scale, std::abs(g[0][j]), std::abs(g[1][j])});
      diff = std::max({diff, std::abs(fd1 - g[0][j]), std::abs(fd2 - g[1][j])});
    }
    out.grad_rel = scale > 0.0 ? diff / scale : diff;
  }

  {
    const Vec2 dh = dh_velocity(profile, h, p);
    const double eh = std::min(0.25 * h, 5e-4 * gj.g);
    Vec2 fd{};
    for (int j = 0; j < 2; ++j) {
      fd[j] = first([&](double d) { return w_at(profile, h + d, p.x1, p.x2)[j]; }, eh);
    }
    const double scale = std::hypot(dh[0], dh[1]);
    const double diff = std::hypot(fd[0] - dh[0], fd[1] - dh[1]);
    out.dh_rel = scale > 0.0 ? diff / scale : diff;
  }

  if (!jet.valid.second || !jet.valid.third) {
    out.residual_defined = false;
    return out;
  }
  const Vec2 res{-2.0 * mu * jet.psi.d112, mu * jet.psi.d111};
  Vec2 lap{};
  for (int j = 0; j < 2; ++j) {
    lap[j] = second([&](double a) { return w_at(profile, h, p.x1 + a, p.x2)[j]; }, e1) +
             second([&](double b) { return w_at(profile, h, p.x1, p.x2 + b)[j]; }, e2);
  }
  // q(x + d) - q(x) with the shared integral cancelled analytically.
  auto dq = [&](double a, double b) {
    return stream_jet(profile, h, {p.x1 + a, p.x2 + b}).psi.d12 - jet.psi.d12 +
           lubrication_increment(profile, h, p.x1, p.x1 + a);
  };
  const double q1 = first([&](double a) { return dq(a, 0.0); }, e1);
  const double q2 = first([&](double b) { return dq(0.0, b); }, e2);
  const Vec2 fd{mu * (lap[0] - q1), mu * (lap[1] - q2)};
  const double scale = std::hypot(res[0], res[1]);
  const double diff = std::hypot(fd[0] - res[0], fd[1] - res[1]);
  out.residual_rel = scale > 0.0 ? diff / scale : diff;
  return out;
}

}  // namespace roughcontact::cli
