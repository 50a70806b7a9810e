#pragma once

// Adaptive Gauss-Kronrod (G7/K15) integration over a list of panels, for
// vector-valued integrands, plus fixed-order Gauss-Legendre rules.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <sstream>
#include <vector>

#include "roughcontact/errors.hpp"

namespace roughcontact {

struct QuadratureOptions {
  double rel_tol = 1e-8;
  double abs_tol = 0.0;
  std::size_t max_panels = 20000;
};

template <std::size_t K>
struct QuadratureResult {
  std::array<double, K> value{};
  std::array<double, K> error{};
  std::size_t panels = 0;

  /// Largest estimated error relative to the magnitude of its component.
  double max_rel_error() const {
    double worst = 0.0;
    for (std::size_t k = 0; k < K; ++k) {
      const double mag = std::abs(value[k]);
      if (mag > 0.0) {
        worst = std::max(worst, error[k] / mag);
      } else if (error[k] > 0.0) {
        return std::numeric_limits<double>::infinity();
      }
    }
    return worst;
  }
};

/// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1].
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

GaussLegendreRule gauss_legendre(int n);

/// The 16-point rule, computed once.
const GaussLegendreRule& gauss_legendre_16();

namespace detail {

inline constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};

inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

// Gauss weights for the odd-indexed Kronrod nodes (1, 3, 5, 7).
inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <std::size_t K>
struct Panel {
  double a;
  double b;
  std::array<double, K> value;
  std::array<double, K> error;
};

template <std::size_t K, class F>
Panel<K> kronrod15(F& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  std::array<double, K> kronrod{};
  std::array<double, K> gauss{};

  const std::array<double, K> fc = f(center);
  for (std::size_t k = 0; k < K; ++k) {
    kronrod[k] = kKronrodWeights[7] * fc[k];
    gauss[k] = kGaussWeights[3] * fc[k];
  }
  for (std::size_t j = 0; j < 7; ++j) {
    const double dx = half * kKronrodNodes[j];
    const std::array<double, K> lo = f(center - dx);
    const std::array<double, K> hi = f(center + dx);
    for (std::size_t k = 0; k < K; ++k) {
      const double sum = lo[k] + hi[k];
      kronrod[k] += kKronrodWeights[j] * sum;
      if (j % 2 == 1) gauss[k] += kGaussWeights[j / 2] * sum;
    }
  }
  Panel<K> panel{a, b, {}, {}};
  for (std::size_t k = 0; k < K; ++k) {
    panel.value[k] = kronrod[k] * half;
    panel.error[k] = std::abs((kronrod[k] - gauss[k]) * half);
  }
  return panel;
}

}  // namespace detail

/// Integrates f over [breakpoints.front(), breakpoints.back()], starting from
/// the given panels and bisecting the worst one until every component meets
/// max(rel_tol * |I_k|, abs_tol). f maps a double to std::array<double, K>.
/// Throws QuadratureError when max_panels is exhausted.
template <std::size_t K, class F>
QuadratureResult<K> integrate_adaptive(F&& f, std::span<const double> breakpoints,
                                       const QuadratureOptions& options = {}) {
  QuadratureResult<K> result;
  if (breakpoints.size() < 2) return result;

  std::vector<detail::Panel<K>> panels;
  panels.reserve(std::max<std::size_t>(64, 4 * breakpoints.size()));
  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
    if (breakpoints[i + 1] > breakpoints[i]) {
      panels.push_back(detail::kronrod15<K>(f, breakpoints[i], breakpoints[i + 1]));
    }
  }

  auto totals = [&]() {
    std::array<double, K> value{};
    std::array<double, K> error{};
    for (const auto& p : panels) {
      for (std::size_t k = 0; k < K; ++k) {
        value[k] += p.value[k];
        error[k] += p.error[k];
      }
    }
    return std::pair{value, error};
  };

  constexpr double kTiny = std::numeric_limits<double>::min();
  while (true) {
    auto [value, error] = totals();
    std::array<double, K> budget{};
    bool converged = true;
    for (std::size_t k = 0; k < K; ++k) {
      budget[k] = std::max({options.rel_tol * std::abs(value[k]), options.abs_tol, kTiny});
      if (error[k] > budget[k]) converged = false;
    }
    if (converged || panels.size() >= options.max_panels) {
      result.value = value;
      result.error = error;
      result.panels = panels.size();
      if (!converged) {
        std::ostringstream msg;
        msg << "adaptive quadrature did not reach rel_tol " << options.rel_tol << " within "
            << options.max_panels << " panels (achieved " << result.max_rel_error() << ")";
        throw QuadratureError(msg.str(), result.max_rel_error());
      }
      return result;
    }

    std::size_t worst = 0;
    double worst_badness = -1.0;
    for (std::size_t i = 0; i < panels.size(); ++i) {
      double badness = 0.0;
      for (std::size_t k = 0; k < K; ++k) {
        badness = std::max(badness, panels[i].error[k] / budget[k]);
      }
      if (badness > worst_badness) {
        worst_badness = badness;
        worst = i;
      }
    }
    const double a = panels[worst].a;
    const double b = panels[worst].b;
    const double mid = 0.5 * (a + b);
    if (!(mid > a && mid < b)) {
      // Panel cannot be split further in double precision.
      result.value = value;
      result.error = error;
      result.panels = panels.size();
      throw QuadratureError("adaptive quadrature exhausted floating-point resolution",
                            result.max_rel_error());
    }
    panels[worst] = detail::kronrod15<K>(f, a, mid);
    panels.push_back(detail::kronrod15<K>(f, mid, b));
  }
}

/// Scalar convenience wrapper around integrate_adaptive.
template <class F>
QuadratureResult<1> integrate_adaptive_scalar(F&& f, std::span<const double> breakpoints,
                                              const QuadratureOptions& options = {}) {
  auto wrapped = [&f](double x) { return std::array<double, 1>{f(x)}; };
  return integrate_adaptive<1>(wrapped, breakpoints, options);
}

}  // namespace roughcontact
