#include "roughcontact/gap_geometry.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "roughcontact/errors.hpp"

namespace roughcontact {

RoughProfile::RoughProfile(double alpha, double delta) : alpha_(alpha), delta_(delta) {
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    std::ostringstream msg;
    msg << "RoughProfile: alpha must lie in (0, 1], got " << alpha;
    throw DomainError(msg.str());
  }
  if (!(delta > 0.0) || !std::isfinite(delta)) {
    std::ostringstream msg;
    msg << "RoughProfile: delta must be positive, got " << delta;
    throw DomainError(msg.str());
  }
}

double RoughProfile::balance_scale(double h) const {
  return std::pow(h, 1.0 / (1.0 + alpha_));
}

double gamma(const RoughProfile& profile, double h, double x1) {
  if (!(h >= 0.0)) throw DomainError("gamma: gap distance h must be >= 0");
  if (!(std::abs(x1) <= 2.0 * profile.delta())) {
    throw DomainError("gamma: |x1| must not exceed 2 delta");
  }
  return h + std::pow(std::abs(x1), 1.0 + profile.alpha());
}

GammaJet gamma_jet(const RoughProfile& profile, double h, double x1) noexcept {
  const double a = profile.alpha();
  const double ax = std::abs(x1);
  const double sgn = (x1 > 0.0) - (x1 < 0.0);
  GammaJet jet{};
  jet.g = h + std::pow(ax, 1.0 + a);
  jet.g1 = (1.0 + a) * sgn * std::pow(ax, a);
  if (a == 1.0) {
    jet.g2 = 2.0;
    jet.g3 = 0.0;
  } else {
    jet.g2 = (1.0 + a) * a * std::pow(ax, a - 1.0);
    jet.g3 = (ax == 0.0) ? std::numeric_limits<double>::quiet_NaN()
                         : (1.0 + a) * a * (a - 1.0) * sgn * std::pow(ax, a - 2.0);
  }
  return jet;
}

std::optional<double> gamma_derivative(const RoughProfile& profile, double h, double x1,
                                       int order) {
  if (order < 1 || order > 3) throw DomainError("gamma_derivative: order must be 1, 2 or 3");
  if (!(h >= 0.0)) throw DomainError("gamma_derivative: gap distance h must be >= 0");
  if (!(std::abs(x1) <= 2.0 * profile.delta())) {
    throw DomainError("gamma_derivative: |x1| must not exceed 2 delta");
  }
  const GammaJet jet = gamma_jet(profile, h, x1);
  const double value = order == 1 ? jet.g1 : order == 2 ? jet.g2 : jet.g3;
  if (!std::isfinite(value)) return std::nullopt;
  return value;
}

Lemma10Regime lemma10_classify(double p, double q, const RoughProfile& profile) {
  if (!(p >= 0.0)) throw DomainError("lemma10_classify: p must be >= 0");
  if (!(q > 0.0)) throw DomainError("lemma10_classify: q must be > 0");
  const double lhs = p + 1.0;
  const double rhs = q * (1.0 + profile.alpha());
  // Decimal inputs such as (p, q, alpha) = (0.5, 1, 0.5) must land on the boundary.
  const double scale = std::max(std::abs(lhs), std::abs(rhs));
  if (std::abs(lhs - rhs) <= 8.0 * std::numeric_limits<double>::epsilon() * scale) {
    return {Lemma10Kind::Logarithmic, std::nullopt};
  }
  if (lhs < rhs) return {Lemma10Kind::PowerLaw, lhs / (1.0 + profile.alpha()) - q};
  return {Lemma10Kind::Bounded, std::nullopt};
}

const char* to_string(Lemma10Kind kind) {
  switch (kind) {
    case Lemma10Kind::PowerLaw: return "PowerLaw";
    case Lemma10Kind::Logarithmic: return "Logarithmic";
    case Lemma10Kind::Bounded: return "Bounded";
  }
  return "?";
}

std::vector<double> graded_breakpoints(const RoughProfile& profile, double h, double upper,
                                       int uniform_panels, int panels_per_decade) {
  if (!(h > 0.0)) throw DomainError("graded_breakpoints: h must be > 0");
  if (!(upper > 0.0)) return {0.0, 0.0};
  std::vector<double> points;
  const double split = std::min(profile.balance_scale(h), upper);
  points.reserve(uniform_panels + 8 * panels_per_decade + 2);
  for (int i = 0; i < uniform_panels; ++i) points.push_back(split * i / uniform_panels);
  points.push_back(split);
  if (split < upper) {
    const double decades = std::log10(upper / split);
    const int n = std::max(1, static_cast<int>(std::ceil(decades * panels_per_decade)));
    for (int i = 1; i < n; ++i) points.push_back(split * std::pow(upper / split, double(i) / n));
    points.push_back(upper);
  }
  return points;
}

QuadratureResult<1> lemma10_integral_detailed(double p, double q, const RoughProfile& profile,
                                              double h, double rel_tol) {
  if (!(h > 0.0)) throw DomainError("lemma10_integral: h must be > 0");
  if (!(p >= 0.0) || !(q > 0.0)) throw DomainError("lemma10_integral: need p >= 0, q > 0");
  const double exponent = 1.0 + profile.alpha();
  auto integrand = [&](double x) {
    return std::pow(x, p) / std::pow(h + std::pow(x, exponent), q);
  };
  const auto points = graded_breakpoints(profile, h, profile.delta());
  QuadratureOptions options;
  options.rel_tol = rel_tol;
  auto result = integrate_adaptive_scalar(integrand, points, options);
  // Even integrand: double the half-line value.
  result.value[0] *= 2.0;
  result.error[0] *= 2.0;
  return result;
}

double lemma10_integral(double p, double q, const RoughProfile& profile, double h,
                        double rel_tol) {
  return lemma10_integral_detailed(p, q, profile, h, rel_tol).value[0];
}

}  // namespace roughcontact
