#include "roughcontact/norms.hpp"

#include <algorithm>
#include <cmath>

#include "roughcontact/errors.hpp"

namespace roughcontact {

std::vector<double> gap_breakpoints(const RoughProfile& profile, double h) {
  const std::vector<double> half = graded_breakpoints(profile, h, profile.delta());
  std::vector<double> points;
  points.reserve(2 * half.size());
  for (auto it = half.rbegin(); it != half.rend(); ++it) points.push_back(-*it);
  points.insert(points.end(), half.begin() + 1, half.end());
  return points;
}

QuadratureResult<1> gap_integral(const std::function<double(GapPoint)>& integrand,
                                 const RoughProfile& profile, double h, double tol) {
  if (!(h > 0.0)) throw DomainError("gap_integral: h must be > 0");
  if (!(tol > 0.0)) throw DomainError("gap_integral: tol must be > 0");
  QuadratureOptions options;
  options.rel_tol = tol;
  auto f = [&](GapPoint p) { return std::array<double, 1>{integrand(p)}; };
  return integrate_gap<1>(f, profile, h, options);
}

GapNormIntegrals gap_norm_integrals(const RoughProfile& profile, double h, double tol) {
  if (!(h > 0.0)) throw DomainError("gap_norm_integrals: h must be > 0");
  QuadratureOptions options;
  options.rel_tol = tol;
  auto f = [&](GapPoint p) {
    const StreamJet jet = stream_jet(profile, h, p);
    const Vec2 w = velocity_of(jet);
    const HJet hj = h_jet(profile, h, p);
    const double dh1 = -p.x1 * hj.d2;
    const double dh2 = hj.phi + p.x1 * hj.d1;
    const double g2 = jet.gamma * jet.gamma;
    return std::array<double, 3>{w[0] * w[0] + w[1] * w[1], grad_sq_of(jet),
                                 g2 * (dh1 * dh1 + dh2 * dh2)};
  };
  const auto result = integrate_gap<3>(f, profile, h, options);
  return {result.value[0], result.value[1], result.value[2], result.max_rel_error()};
}

OuterCalibration calibrate_outer(const RoughProfile& profile, double h_max, double tol) {
  if (!(h_max > 0.0)) throw DomainError("calibrate_outer: h_max must be > 0");
  QuadratureOptions options;
  options.rel_tol = tol;
  auto f = [&](GapPoint p) {
    const StreamJet jet = stream_jet(profile, h_max, p);
    return std::array<double, 2>{grad_sq_of(jet), strain_sq_of(jet)};
  };
  const auto result = integrate_outer_strips<2>(f, profile, h_max, options);
  OuterCalibration outer;
  outer.h_max = h_max;
  outer.grad_sq = result.value[0];
  outer.strain_sq = result.value[1];
  return outer;
}

double weighted_column(const RoughProfile& profile, double h, double x1) {
  const GaussLegendreRule& rule = gauss_legendre_16();
  const double top = gamma_jet(profile, h, x1).g;
  double acc = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const StreamJet jet = stream_jet(profile, h, {x1, 0.5 * top * (1.0 + rule.nodes[i])});
    acc += rule.weights[i] * grad_sq_of(jet);
  }
  acc *= 0.5 * top;
  return std::pow(top, 1.5) * std::sqrt(acc);
}

std::vector<ColumnValue> weighted_sup_profile(const RoughProfile& profile, double h, int n_x1) {
  if (n_x1 < 16) throw DomainError("weighted_sup_profile: need n_x1 >= 16");
  if (!(h > 0.0)) throw DomainError("weighted_sup_profile: h must be > 0");
  const int m = n_x1 / 2;
  const double d = profile.delta();
  std::vector<ColumnValue> out(2 * m);
  for (int k = 1; k <= m; ++k) {
    const double x1 = d * double(k) / m;
    const double right = weighted_column(profile, h, x1);
    const double left = weighted_column(profile, h, -x1);
    out[m - k] = {-x1, left};
    out[m + k - 1] = {x1, right};
  }
  return out;
}

Prop8Report prop8_suite(const RoughProfile& profile, double h, const OuterCalibration& outer,
                        const NormOptions& options) {
  if (!(h > 0.0)) throw DomainError("prop8_suite: h must be > 0");
  const GapNormIntegrals gap = gap_norm_integrals(profile, h, options.tol);
  const auto columns = weighted_sup_profile(profile, h, options.sup_samples);
  Prop8Report report;
  report.h = h;
  report.l2_w = std::sqrt(gap.w_sq);
  report.l2_grad_w = std::sqrt(gap.grad_sq);
  report.weighted_dh = std::sqrt(gap.dh_weighted);
  report.weighted_sup = 0.0;
  for (const auto& c : columns) report.weighted_sup = std::max(report.weighted_sup, c.value);
  report.outer_const = outer.grad_sq;
  report.max_rel_error = gap.max_rel_error;
  return report;
}

Prop8Report prop8_suite(const RoughProfile& profile, double h, const NormOptions& options) {
  return prop8_suite(profile, h, calibrate_outer(profile, options.h_max, options.tol), options);
}

}  // namespace roughcontact
