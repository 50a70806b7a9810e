#pragma once

// Quasi-static fall model n(h) hdot = -G: the energy balance
// N(h(t)) + G t = R(t) with the remainder R set to zero.

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "roughcontact/drag.hpp"
#include "roughcontact/gap_geometry.hpp"

namespace roughcontact {

/// n(h) = K h^(-beta).
struct PowerLawDrag {
  double K = 1.0;
  double beta = 0.0;
};

/// n(h) interpolated from a computed drag table.
struct ComputedTableDrag {
  std::shared_ptr<const DragTable> table;
};

using DragSource = std::variant<PowerLawDrag, ComputedTableDrag>;

/// Table of drag_coefficient on `samples` log-spaced h in [h0 / 10^decades, h0].
ComputedTableDrag make_computed_table(const RoughProfile& profile, double mu, double h0,
                                      int samples = 25, double decades = 4.0,
                                      const DragOptions& options = {}, unsigned jobs = 1);

struct FallParams {
  RoughProfile profile{1.0};
  double h0 = 1e-3;
  double G = 1.0;  // (rho_S - rho_F) g |S(0)|
  double mu = 1.0;
  DragSource drag_source = PowerLawDrag{};
  std::optional<double> h_contact;  // default 1e-9 h0
  std::optional<double> t_max;      // default 10 time scales

  double contact_threshold() const { return h_contact.value_or(1e-9 * h0); }
  /// h0 n(h0) / G.
  double time_scale() const;
  double horizon() const { return t_max.value_or(10.0 * time_scale()); }
  /// Throws DomainError on invalid fields.
  void validate() const;
};

/// n(h) for the configured source.
double model_drag(const FallParams& params, double h);

/// N(h) = int_{h0}^{h} n(s) ds (closed form for PowerLaw).
double model_potential(const FallParams& params, double h);

/// int_0^h n(s) ds, +infinity if n is not integrable at 0.
double model_integral_below(const FallParams& params, double h);

enum class FallOutcome { Collision, NoCollisionWithinHorizon };

std::string to_string(FallOutcome outcome);

struct FallSample {
  double t = 0.0;
  double h = 0.0;
  double hdot = 0.0;
};

struct FallTrajectory {
  std::vector<FallSample> samples;
  /// Time of h = 0: threshold crossing plus the tail int_0^{h_contact} n / G.
  std::optional<double> contact_time;
  /// Time at which h reached h_contact, whether or not the tail is finite.
  std::optional<double> threshold_time;
  FallOutcome classified = FallOutcome::NoCollisionWithinHorizon;
  /// Accumulated local error estimates converted to time.
  double error_estimate = 0.0;
  int accepted_steps = 0;
  int rejected_steps = 0;
};

/// Embedded Runge-Kutta-Fehlberg 4(5) with error per unit step and the step
/// clamp |dh| <= h / 4; the contact event is located by bisection.
FallTrajectory simulate_fall(const FallParams& params, double rel_tol = 1e-8);

/// K h0^(1 - beta) / ((1 - beta) G) for beta < 1, nullopt (infinite) otherwise.
std::optional<double> contact_time_closed_form(double K, double beta, double h0, double G);

/// R(t) = N(h(t)) + G t at each sample.
std::vector<double> energy_residuals(const FallTrajectory& trajectory, const FallParams& params);

/// max |R(t)| over the samples.
double energy_audit(const FallTrajectory& trajectory, const FallParams& params);

}  // namespace roughcontact
