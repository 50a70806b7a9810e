#include "roughcontact/fall_sim.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>

#include "roughcontact/errors.hpp"

namespace roughcontact {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

const DragTable& table_of(const ComputedTableDrag& source) {
  if (!source.table) throw DomainError("ComputedTableDrag: table is empty");
  return *source.table;
}

// K h0^(1-b) ((h/h0)^(1-b) - 1) / (1-b), the log form at b = 1.
double power_potential(const PowerLawDrag& p, double h0, double h) {
  const double e = 1.0 - p.beta;
  const double l = std::log(h / h0);
  if (std::abs(e) < 1e-12) return p.K * l;
  return p.K * std::pow(h0, e) * std::expm1(e * l) / e;
}

// Fehlberg 4(5) tableau.
constexpr double a21 = 1.0 / 4.0;
constexpr double a31 = 3.0 / 32.0, a32 = 9.0 / 32.0;
constexpr double a41 = 1932.0 / 2197.0, a42 = -7200.0 / 2197.0, a43 = 7296.0 / 2197.0;
constexpr double a51 = 439.0 / 216.0, a52 = -8.0, a53 = 3680.0 / 513.0, a54 = -845.0 / 4104.0;
constexpr double a61 = -8.0 / 27.0, a62 = 2.0, a63 = -3544.0 / 2565.0, a64 = 1859.0 / 4104.0,
                 a65 = -11.0 / 40.0;
constexpr std::array<double, 6> b4{25.0 / 216.0, 0.0, 1408.0 / 2565.0, 2197.0 / 4104.0, -1.0 / 5.0,
                                   0.0};
constexpr std::array<double, 6> b5{16.0 / 135.0,      0.0,          6656.0 / 12825.0,
                                   28561.0 / 56430.0, -9.0 / 50.0, 2.0 / 55.0};

struct StepResult {
  double h4 = 0.0;  // propagated
  double error = 0.0;
  bool valid = false;
};

template <class Rhs>
StepResult rkf45_step(const Rhs& f, double h, double dt) {
  StepResult out;
  std::array<double, 6> k{};
  auto stage = [&](double y) {
    return (y > 0.0 && std::isfinite(y)) ? f(y) : std::numeric_limits<double>::quiet_NaN();
  };
  k[0] = stage(h);
  k[1] = stage(h + dt * a21 * k[0]);
  k[2] = stage(h + dt * (a31 * k[0] + a32 * k[1]));
  k[3] = stage(h + dt * (a41 * k[0] + a42 * k[1] + a43 * k[2]));
  k[4] = stage(h + dt * (a51 * k[0] + a52 * k[1] + a53 * k[2] + a54 * k[3]));
  k[5] = stage(h + dt * (a61 * k[0] + a62 * k[1] + a63 * k[2] + a64 * k[3] + a65 * k[4]));
  double d4 = 0.0, d5 = 0.0;
  for (int i = 0; i < 6; ++i) {
    d4 += b4[i] * k[i];
    d5 += b5[i] * k[i];
  }
  out.h4 = h + dt * d4;
  out.error = std::abs(dt * (d5 - d4));
  out.valid = std::isfinite(out.h4) && std::isfinite(out.error) && out.h4 > 0.0;
  return out;
}

}  // namespace

ComputedTableDrag make_computed_table(const RoughProfile& profile, double mu, double h0,
                                      int samples, double decades, const DragOptions& options,
                                      unsigned jobs) {
  if (!(h0 > 0.0)) throw DomainError("make_computed_table: h0 must be > 0");
  if (samples < 3) throw DomainError("make_computed_table: need at least 3 samples");
  if (!(decades > 0.0)) throw DomainError("make_computed_table: decades must be > 0");
  DragOptions opts = options;
  opts.h_max = std::max(opts.h_max, h0);
  const auto hs = log_spaced(h0 * std::pow(10.0, -decades), h0, samples);
  return {std::make_shared<const DragTable>(DragTable::compute(profile, mu, hs, opts, jobs))};
}

double FallParams::time_scale() const { return h0 * model_drag(*this, h0) / G; }

void FallParams::validate() const {
  auto bad = [](const std::string& what) { throw DomainError("FallParams: " + what); };
  if (!(h0 > 0.0) || !std::isfinite(h0)) bad("h0 must be > 0");
  if (!(G > 0.0) || !std::isfinite(G)) bad("G must be > 0 (solid heavier than fluid)");
  if (!(mu > 0.0) || !std::isfinite(mu)) bad("mu must be > 0");
  const double hc = contact_threshold();
  if (!(hc > 0.0) || !(hc < h0)) bad("h_contact must lie in (0, h0)");
  if (t_max && !(*t_max > 0.0)) bad("t_max must be > 0");
  if (const auto* p = std::get_if<PowerLawDrag>(&drag_source)) {
    if (!(p->K > 0.0) || !std::isfinite(p->K)) bad("power-law K must be > 0");
    if (!(p->beta >= 0.0) || !std::isfinite(p->beta)) bad("power-law beta must be >= 0");
  } else {
    const DragTable& t = table_of(std::get<ComputedTableDrag>(drag_source));
    if (h0 > t.h_max() * (1.0 + 1e-12)) bad("h0 exceeds the drag table range");
  }
}

double model_drag(const FallParams& params, double h) {
  if (const auto* p = std::get_if<PowerLawDrag>(&params.drag_source)) {
    return p->K * std::pow(h, -p->beta);
  }
  return table_of(std::get<ComputedTableDrag>(params.drag_source)).drag(h);
}

double model_potential(const FallParams& params, double h) {
  if (h == params.h0) return 0.0;
  if (const auto* p = std::get_if<PowerLawDrag>(&params.drag_source)) {
    return power_potential(*p, params.h0, h);
  }
  return table_of(std::get<ComputedTableDrag>(params.drag_source)).potential(h, params.h0);
}

double model_integral_below(const FallParams& params, double h) {
  if (const auto* p = std::get_if<PowerLawDrag>(&params.drag_source)) {
    if (p->beta >= 1.0) return kInf;
    return p->K * std::pow(h, 1.0 - p->beta) / (1.0 - p->beta);
  }
  return table_of(std::get<ComputedTableDrag>(params.drag_source)).integral_below(h);
}

std::string to_string(FallOutcome outcome) {
  return outcome == FallOutcome::Collision ? "Collision" : "NoCollisionWithinHorizon";
}

FallTrajectory simulate_fall(const FallParams& params, double rel_tol) {
  params.validate();
  if (!(rel_tol > 0.0)) throw DomainError("simulate_fall: rel_tol must be > 0");

  const double G = params.G;
  const double hc = params.contact_threshold();
  const double t_max = params.horizon();
  const double scale = params.time_scale();
  auto rhs = [&](double h) { return -G / model_drag(params, h); };

  FallTrajectory traj;
  double t = 0.0;
  double h = params.h0;
  traj.samples.push_back({t, h, rhs(h)});
  double dt = 1e-3 * scale;
  const int max_steps = 2'000'000;

  while (true) {
    if (traj.accepted_steps + traj.rejected_steps > max_steps) {
      throw StepUnderflowError("simulate_fall: step budget exhausted");
    }
    const double hdot = rhs(h);
    dt = std::min(dt, 0.25 * h / std::abs(hdot));
    bool hits_horizon = false;
    if (t + dt >= t_max) {
      dt = t_max - t;
      hits_horizon = true;
    }
    if (dt <= 1e-14 * std::max(t, scale)) {
      std::ostringstream msg;
      msg << "simulate_fall: step size " << dt << " underflow at t = " << t << ", h = " << h;
      throw StepUnderflowError(msg.str());
    }

    const StepResult step = rkf45_step(rhs, h, dt);
    const double allowed = rel_tol * (step.valid ? std::abs(step.h4 - h) : h);
    if (!step.valid || std::abs(step.h4 - h) > 0.25 * h || step.error > allowed) {
      ++traj.rejected_steps;
      double factor = 0.5;
      if (step.valid && step.error > 0.0) {
        factor = std::clamp(0.9 * std::pow(allowed / step.error, 0.25), 0.2, 0.5);
      }
      dt *= factor;
      continue;
    }

    if (step.h4 <= hc) {
      // Locate h(t + s) = hc by bisection on the step length s.
      double lo = 0.0, hi = dt;
      double h_event = step.h4;
      double err_event = step.error;
      for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        const StepResult trial = rkf45_step(rhs, h, mid);
        if (trial.valid && trial.h4 > hc) {
          lo = mid;
        } else {
          hi = mid;
          if (trial.valid) {
            h_event = trial.h4;
            err_event = trial.error;
          }
        }
        if (hi - lo <= 0.5 * rel_tol * std::max(t + hi, scale * rel_tol)) break;
      }
      t += hi;
      h = h_event;
      ++traj.accepted_steps;
      traj.error_estimate += err_event * model_drag(params, std::max(h, hc)) / G;
      traj.samples.push_back({t, h, rhs(h)});
      traj.threshold_time = t;
      const double tail = model_integral_below(params, hc) / G;
      if (std::isfinite(tail) && t + tail <= t_max) {
        traj.contact_time = t + tail;
        traj.classified = FallOutcome::Collision;
      }
      return traj;
    }

    t = hits_horizon ? t_max : t + dt;
    h = step.h4;
    ++traj.accepted_steps;
    traj.error_estimate += step.error * model_drag(params, h) / G;
    traj.samples.push_back({t, h, rhs(h)});
    if (hits_horizon) return traj;

    const double factor =
        step.error > 0.0 ? std::clamp(0.9 * std::pow(allowed / step.error, 0.25), 0.2, 5.0) : 5.0;
    dt *= factor;
  }
}

std::optional<double> contact_time_closed_form(double K, double beta, double h0, double G) {
  if (!(K > 0.0) || !(h0 > 0.0) || !(G > 0.0) || !(beta >= 0.0)) {
    throw DomainError("contact_time_closed_form: need K, h0, G > 0 and beta >= 0");
  }
  if (beta >= 1.0) return std::nullopt;
  return K * std::pow(h0, 1.0 - beta) / ((1.0 - beta) * G);
}

std::vector<double> energy_residuals(const FallTrajectory& trajectory, const FallParams& params) {
  std::vector<double> r;
  r.reserve(trajectory.samples.size());
  for (const auto& s : trajectory.samples) r.push_back(model_potential(params, s.h) + params.G * s.t);
  return r;
}

double energy_audit(const FallTrajectory& trajectory, const FallParams& params) {
  double worst = 0.0;
  for (double r : energy_residuals(trajectory, params)) worst = std::max(worst, std::abs(r));
  return worst;
}

}  // namespace roughcontact
