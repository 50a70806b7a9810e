#pragma once

// Norms and weighted functionals of the gap test field, integrated over the
// gap region by graded x1 panels times 16-point Gauss columns in x2.

#include <algorithm>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "roughcontact/gap_geometry.hpp"
#include "roughcontact/power_law.hpp"
#include "roughcontact/test_field.hpp"

namespace roughcontact {

/// Symmetric panel breakpoints on [-delta, delta], graded towards x1 = 0.
std::vector<double> gap_breakpoints(const RoughProfile& profile, double h);

/// Integrates a vector-valued pointwise functional f(GapPoint) ->
/// std::array<double, K> over the columns 0 <= x2 <= gamma_h(x1) for x1
/// spanning the breakpoints: x1 by adaptive Gauss-Kronrod, x2 by 16-point Gauss.
template <std::size_t K, class F>
QuadratureResult<K> integrate_columns(F&& f, const RoughProfile& profile, double h,
                                      std::span<const double> breakpoints,
                                      const QuadratureOptions& options) {
  const GaussLegendreRule& rule = gauss_legendre_16();
  auto column = [&](double x1) {
    const double half = 0.5 * gamma_jet(profile, h, x1).g;
    std::array<double, K> acc{};
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      const std::array<double, K> v = f(GapPoint{x1, half * (1.0 + rule.nodes[i])});
      for (std::size_t k = 0; k < K; ++k) acc[k] += rule.weights[i] * v[k];
    }
    for (auto& a : acc) a *= half;
    return acc;
  };
  return integrate_adaptive<K>(column, breakpoints, options);
}

/// integrate_columns over the gap region |x1| < delta.
template <std::size_t K, class F>
QuadratureResult<K> integrate_gap(F&& f, const RoughProfile& profile, double h,
                                  const QuadratureOptions& options) {
  const auto points = gap_breakpoints(profile, h);
  return integrate_columns<K>(f, profile, h, points, options);
}

/// integrate_columns over the outer strips delta < |x1| < 2 delta, where the
/// cutoff blends the gap field into the regular outer field.
template <std::size_t K, class F>
QuadratureResult<K> integrate_outer_strips(F&& f, const RoughProfile& profile, double h,
                                           const QuadratureOptions& options) {
  constexpr int kPanels = 8;
  const double d = profile.delta();
  QuadratureResult<K> total;
  for (double sign : {-1.0, 1.0}) {
    std::vector<double> pts;
    for (int i = 0; i <= kPanels; ++i) pts.push_back(d * (1.0 + double(i) / kPanels));
    if (sign < 0.0) {
      for (auto& x : pts) x = -x;
      std::reverse(pts.begin(), pts.end());
    }
    const auto part = integrate_columns<K>(f, profile, h, pts, options);
    for (std::size_t k = 0; k < K; ++k) {
      total.value[k] += part.value[k];
      total.error[k] += part.error[k];
    }
    total.panels += part.panels;
  }
  return total;
}

/// Scalar gap integral; the estimated relative error is <= tol on success.
QuadratureResult<1> gap_integral(const std::function<double(GapPoint)>& integrand,
                                 const RoughProfile& profile, double h, double tol = 1e-8);

/// Squared norms over the gap region (no outer contribution).
struct GapNormIntegrals {
  double w_sq = 0.0;         // int |w|^2
  double grad_sq = 0.0;      // int |grad w|^2
  double dh_weighted = 0.0;  // int gamma^2 |d_h w|^2
  double max_rel_error = 0.0;
};

GapNormIntegrals gap_norm_integrals(const RoughProfile& profile, double h, double tol = 1e-8);

/// h-independent outer-region constants, measured once on the outer strip at h_max.
struct OuterCalibration {
  double h_max = 1e-3;
  double grad_sq = 0.0;    // int_{outer} |grad w|^2
  double strain_sq = 0.0;  // int_{outer} D(w):D(w)
};

OuterCalibration calibrate_outer(const RoughProfile& profile, double h_max = 1e-3,
                                 double tol = 1e-8);

struct Prop8Report {
  double h = 0.0;
  double l2_w = 0.0;
  double l2_grad_w = 0.0;
  double weighted_sup = 0.0;
  double weighted_dh = 0.0;
  /// Outer-strip squared gradient norm from the h_max calibration.
  double outer_const = 0.0;
  double max_rel_error = 0.0;
};

struct NormOptions {
  double tol = 1e-8;
  double h_max = 1e-3;
  int sup_samples = 64;
};

Prop8Report prop8_suite(const RoughProfile& profile, double h, const NormOptions& options = {});

/// Same as prop8_suite with a precomputed outer calibration (for sweeps).
Prop8Report prop8_suite(const RoughProfile& profile, double h, const OuterCalibration& outer,
                        const NormOptions& options = {});

struct ColumnValue {
  double x1;
  double value;  // gamma^{3/2} (int_0^gamma |grad w|^2 dx2)^{1/2}
};

/// Column values at x1 = +-delta k / m, k = 1..m, m = n_x1 / 2, ordered by x1.
std::vector<ColumnValue> weighted_sup_profile(const RoughProfile& profile, double h, int n_x1);

/// gamma^{3/2} (int_0^gamma |grad w|^2 dx2)^{1/2} at one abscissa.
double weighted_column(const RoughProfile& profile, double h, double x1);

}  // namespace roughcontact
