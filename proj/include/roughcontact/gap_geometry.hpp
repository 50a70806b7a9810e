#pragma once

// Rough gap geometry: the cusp profile gamma_h(x1) = h + |x1|^(1+alpha) and
// the singular model integral int |x1|^p / gamma_h^q with its small-h
// classification.

#include <optional>
#include <vector>

#include "roughcontact/quadrature.hpp"

namespace roughcontact {

/// Lower boundary of the solid near its tip: cusp exponent alpha in (0, 1]
/// and half-width delta of the gap region.
class RoughProfile {
 public:
  RoughProfile(double alpha, double delta = 1.0);

  double alpha() const noexcept { return alpha_; }
  double delta() const noexcept { return delta_; }

  /// x1* = h^(1/(1+alpha)), where the two terms of gamma_h balance.
  double balance_scale(double h) const;

 private:
  double alpha_;
  double delta_;
};

/// gamma_h(x1) = h + |x1|^(1+alpha). Requires h >= 0 and |x1| <= 2 delta.
double gamma(const RoughProfile& profile, double h, double x1);

/// Derivative of gamma_h in x1 of order 1..3. Returns std::nullopt (the
/// non-finite marker) for orders 2 and 3 at x1 = 0 when alpha < 1.
std::optional<double> gamma_derivative(const RoughProfile& profile, double h, double x1,
                                       int order);

/// Unchecked gamma and its derivatives; g2/g3 are +-inf or nan on the cusp line.
struct GammaJet {
  double g;
  double g1;
  double g2;
  double g3;
};
GammaJet gamma_jet(const RoughProfile& profile, double h, double x1) noexcept;

enum class Lemma10Kind { PowerLaw, Logarithmic, Bounded };

struct Lemma10Regime {
  Lemma10Kind kind;
  /// (p+1)/(1+alpha) - q, set only for PowerLaw.
  std::optional<double> exponent;
};

Lemma10Regime lemma10_classify(double p, double q, const RoughProfile& profile);

const char* to_string(Lemma10Kind kind);

/// Panel breakpoints on [0, upper]: uniform on [0, x1*], log-spaced on [x1*, upper].
std::vector<double> graded_breakpoints(const RoughProfile& profile, double h, double upper,
                                       int uniform_panels = 4, int panels_per_decade = 4);

/// int_{-delta}^{delta} |x1|^p / (h + |x1|^(1+alpha))^q dx1.
QuadratureResult<1> lemma10_integral_detailed(double p, double q, const RoughProfile& profile,
                                              double h, double rel_tol = 1e-8);

double lemma10_integral(double p, double q, const RoughProfile& profile, double h,
                        double rel_tol = 1e-8);

}  // namespace roughcontact
