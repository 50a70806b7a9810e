#include "roughcontact/drag.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "roughcontact/errors.hpp"
#include "roughcontact/parallel.hpp"

namespace roughcontact {

namespace {

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    std::ostringstream msg;
    msg << what << " must be positive, got " << v;
    throw DomainError(msg.str());
  }
}

// int_a^b c (s / h0)^k ds with c = n(h0).
double power_segment(double c, double h0, double k, double a, double b) {
  if (std::abs(k + 1.0) < 1e-12) return c * h0 * std::log(b / a);
  return c * h0 / (k + 1.0) * (std::pow(b / h0, k + 1.0) - std::pow(a / h0, k + 1.0));
}

}  // namespace

double dirichlet_energy(const RoughProfile& profile, double h, double mu,
                        const OuterCalibration& outer, const DragOptions& options) {
  require_positive(h, "dirichlet_energy: h");
  require_positive(mu, "dirichlet_energy: mu");
  QuadratureOptions q;
  q.rel_tol = options.tol;
  auto f = [&](GapPoint p) { return std::array<double, 1>{strain_sq_of(stream_jet(profile, h, p))}; };
  const auto gap = integrate_gap<1>(f, profile, h, q);
  return 2.0 * mu * (gap.value[0] + outer.strain_sq);
}

double dirichlet_energy(const RoughProfile& profile, double h, double mu,
                        const DragOptions& options) {
  return dirichlet_energy(profile, h, mu, calibrate_outer(profile, options.h_max, options.tol),
                          options);
}

double PairingForms::relative_discrepancy() const {
  const double scale = std::max(std::abs(by_parts), std::abs(direct));
  return scale > 0.0 ? std::abs(direct - by_parts) / scale : 0.0;
}

PairingForms residual_pairing_forms(const RoughProfile& profile, double h, double mu,
                                    const DragOptions& options) {
  require_positive(h, "residual_pairing: h");
  require_positive(mu, "residual_pairing: mu");
  PairingForms forms;

  // Direct: residual (-2 psi_112, psi_111) against w = (-psi_2, psi_1).
  {
    QuadratureOptions q;
    q.rel_tol = options.direct_tol;
    auto f = [&](GapPoint p) {
      const Jet3& s = stream_jet(profile, h, p).psi;
      return std::array<double, 1>{2.0 * s.d112 * s.d2 + s.d111 * s.d1};
    };
    forms.direct = mu * integrate_gap<1>(f, profile, h, q).value[0];
  }

  // Bulk: F (2 d2 w1 - d1 w2) = psi_11 (-2 psi_22 - psi_11).
  {
    QuadratureOptions q;
    q.rel_tol = options.tol;
    auto f = [&](GapPoint p) {
      const Jet3& s = stream_jet(profile, h, p).psi;
      return std::array<double, 1>{s.d11 * (-2.0 * s.d22 - s.d11)};
    };
    forms.bulk = mu * integrate_gap<1>(f, profile, h, q).value[0];
  }

  // Solid boundary x2 = gamma(x1): outward normal (-gamma', 1) / |.|, w = e2.
  {
    QuadratureOptions q;
    q.rel_tol = options.tol;
    auto f = [&](double x1) {
      const GammaJet gj = gamma_jet(profile, h, x1);
      return -stream_jet(profile, h, {x1, gj.g}).psi.d11 * gj.g1;
    };
    const auto points = gap_breakpoints(profile, h);
    forms.top = mu * integrate_adaptive_scalar(f, points, q).value[0];
  }

  // Lateral sides x1 = +-delta; F is odd and w2 even in x1, so both sides agree.
  {
    const GaussLegendreRule& rule = gauss_legendre_16();
    const double d = profile.delta();
    const double top = gamma_jet(profile, h, d).g;
    double acc = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      const Jet3& s = stream_jet(profile, h, {d, 0.5 * top * (1.0 + rule.nodes[i])}).psi;
      acc += rule.weights[i] * s.d11 * s.d1;
    }
    forms.lateral = mu * 2.0 * 0.5 * top * acc;
  }

  forms.by_parts = forms.top + forms.lateral + forms.bulk;
  return forms;
}

double residual_pairing(const RoughProfile& profile, double h, double mu,
                        const DragOptions& options) {
  const PairingForms forms = residual_pairing_forms(profile, h, mu, options);
  const double discrepancy = forms.relative_discrepancy();
  if (discrepancy > options.cross_check_tol) {
    std::ostringstream msg;
    msg << "residual_pairing: direct " << forms.direct << " vs by-parts " << forms.by_parts
        << " (relative discrepancy " << discrepancy << ") at h = " << h;
    throw CrossCheckError(msg.str(), discrepancy);
  }
  return forms.by_parts;
}

double reynolds_drag(const RoughProfile& profile, double h, double mu, double rel_tol) {
  require_positive(h, "reynolds_drag: h");
  require_positive(mu, "reynolds_drag: mu");
  return 12.0 * mu * lemma10_integral(2.0, 3.0, profile, h, rel_tol);
}

DragSample drag_coefficient(const RoughProfile& profile, double h, double mu,
                            const OuterCalibration& outer, const DragOptions& options) {
  DragSample sample;
  sample.h = h;
  sample.dirichlet = dirichlet_energy(profile, h, mu, outer, options);
  const PairingForms forms = residual_pairing_forms(profile, h, mu, options);
  const double discrepancy = forms.relative_discrepancy();
  if (discrepancy > options.cross_check_tol) {
    std::ostringstream msg;
    msg << "drag_coefficient: pairing cross-check failed at h = " << h << " (relative discrepancy "
        << discrepancy << ")";
    throw CrossCheckError(msg.str(), discrepancy);
  }
  sample.pairing = forms.by_parts;
  sample.pairing_direct = forms.direct;
  sample.n = sample.dirichlet + sample.pairing;
  sample.reynolds = reynolds_drag(profile, h, mu, options.tol);
  return sample;
}

DragSample drag_coefficient(const RoughProfile& profile, double h, double mu,
                            const DragOptions& options) {
  return drag_coefficient(profile, h, mu, calibrate_outer(profile, options.h_max, options.tol),
                          options);
}

double pairing_boundary_bound(const RoughProfile& profile, double h, double rel_tol) {
  require_positive(h, "pairing_boundary_bound: h");
  auto f = [&](double x1) {
    const GammaJet gj = gamma_jet(profile, h, x1);
    const double slope2 = gj.g1 * gj.g1;
    return std::abs(6.0 * x1 * slope2 / (gj.g * gj.g) * gj.g1 / (1.0 + slope2));
  };
  const auto points = graded_breakpoints(profile, h, profile.delta());
  QuadratureOptions q;
  q.rel_tol = rel_tol;
  return integrate_adaptive_scalar(f, points, q).value[0];
}

RegimeVerdict collision_regime(double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw DomainError("collision_regime: alpha must lie in (0, 1]");
  const double beta = 3.0 * alpha / (1.0 + alpha);
  // alpha = 1/2 gives beta = 1 up to rounding; the critical case does not collide.
  return {beta, alpha < 0.5};
}

double starovoitov_beta(double alpha, double p) {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw DomainError("starovoitov_beta: alpha must lie in (0, 1]");
  if (!(p > 1.0)) throw DomainError("starovoitov_beta: p must be > 1");
  return 2.0 - (p + 1.0) / (p * (1.0 + alpha)) - 1.0 / p;
}

DragTable::DragTable(std::vector<DragSample> samples) : samples_(std::move(samples)) {
  if (samples_.size() < 3) throw DegenerateInputError("DragTable: need at least 3 samples");
  for (std::size_t i = 0; i < samples_.size(); ++i) {
    if (!(samples_[i].n > 0.0)) {
      std::ostringstream msg;
      msg << "DragTable: n(h) must be positive for log-log interpolation; n(" << samples_[i].h
          << ") = " << samples_[i].n;
      throw DomainError(msg.str());
    }
    if (i > 0 && !(samples_[i].h > samples_[i - 1].h)) {
      throw DomainError("DragTable: samples must be strictly increasing in h");
    }
  }
  std::vector<PowerLawSample> pts;
  for (const auto& s : samples_) pts.push_back({s.h, s.n});
  tail_ = fit_power_law(pts, {h_min(), h_max()});

  const std::size_t m = samples_.size();
  slopes_.resize(m - 1);
  for (std::size_t i = 0; i + 1 < m; ++i) {
    slopes_[i] = std::log(samples_[i + 1].n / samples_[i].n) /
                 std::log(samples_[i + 1].h / samples_[i].h);
  }
  cumulative_.assign(m, 0.0);
  for (std::size_t i = m - 1; i-- > 0;) {
    cumulative_[i] = cumulative_[i + 1] + power_segment(samples_[i].n, samples_[i].h, slopes_[i],
                                                        samples_[i].h, samples_[i + 1].h);
  }
}

DragTable DragTable::compute(const RoughProfile& profile, double mu, std::span<const double> hs,
                             const DragOptions& options, unsigned jobs) {
  std::vector<double> sorted(hs.begin(), hs.end());
  std::sort(sorted.begin(), sorted.end());
  const OuterCalibration outer = calibrate_outer(profile, options.h_max, options.tol);
  std::vector<DragSample> samples(sorted.size());
  parallel_for(sorted.size(), jobs, [&](std::size_t i) {
    samples[i] = drag_coefficient(profile, sorted[i], mu, outer, options);
  });
  return DragTable(std::move(samples));
}

double DragTable::drag(double h) const {
  if (!(h > 0.0) || h > h_max() * (1.0 + 1e-12)) throw DomainError("DragTable::drag: h out of range");
  if (h <= h_min()) return samples_.front().n * std::pow(h / h_min(), tail_.exponent);
  const auto it = std::upper_bound(samples_.begin(), samples_.end(), h,
                                   [](double v, const DragSample& s) { return v < s.h; });
  const std::size_t i = std::min<std::size_t>(std::distance(samples_.begin(), it) - 1, slopes_.size() - 1);
  return samples_[i].n * std::pow(h / samples_[i].h, slopes_[i]);
}

double DragTable::local_exponent(double h) const {
  if (h <= h_min()) return tail_.exponent;
  const auto it = std::upper_bound(samples_.begin(), samples_.end(), h,
                                   [](double v, const DragSample& s) { return v < s.h; });
  const std::size_t i = std::min<std::size_t>(std::distance(samples_.begin(), it) - 1, slopes_.size() - 1);
  return slopes_[i];
}

double DragTable::cumulative_above(double h) const {
  if (h <= h_min()) {
    return cumulative_.front() +
           power_segment(samples_.front().n, h_min(), tail_.exponent, h, h_min());
  }
  const auto it = std::upper_bound(samples_.begin(), samples_.end(), h,
                                   [](double v, const DragSample& s) { return v < s.h; });
  const std::size_t i = std::min<std::size_t>(std::distance(samples_.begin(), it) - 1, slopes_.size() - 1);
  return cumulative_[i + 1] +
         power_segment(samples_[i].n, samples_[i].h, slopes_[i], h, samples_[i + 1].h);
}

double DragTable::potential(double h, double h0) const {
  if (!(h > 0.0) || !(h0 > 0.0) || h > h_max() * (1.0 + 1e-12) || h0 > h_max() * (1.0 + 1e-12)) {
    throw DomainError("DragTable::potential: h and h0 must lie in (0, h_max]");
  }
  if (h == h0) return 0.0;
  return cumulative_above(h0) - cumulative_above(h);
}

double DragTable::integral_below(double h) const {
  if (!(h > 0.0) || h > h_max() * (1.0 + 1e-12)) {
    throw DomainError("DragTable::integral_below: h must lie in (0, h_max]");
  }
  if (tail_.exponent <= -1.0) return std::numeric_limits<double>::infinity();
  const double below_min = samples_.front().n * h_min() / (tail_.exponent + 1.0);
  if (h <= h_min()) return below_min * std::pow(h / h_min(), tail_.exponent + 1.0);
  return below_min + cumulative_above(h_min()) - cumulative_above(h);
}

double drag_potential(const RoughProfile& profile, double h, double h0, double mu,
                      const DragOptions& options) {
  require_positive(h, "drag_potential: h");
  if (!(h <= h0)) throw DomainError("drag_potential: need 0 < h <= h0");
  if (h == h0) return 0.0;
  const auto hs = log_spaced(h, h0, 25);
  return DragTable::compute(profile, mu, hs, options).potential(h, h0);
}

}  // namespace roughcontact
