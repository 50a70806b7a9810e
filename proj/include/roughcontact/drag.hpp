#pragma once

// Drag functional of the gap test field:
//   n(h) = 2 mu int D(w_h):D(w_h) + int (mu Lap w_h - grad q_h) . w_h,
// its antiderivative N, the lubrication oracle and the regime verdicts.

#include <span>
#include <vector>

#include "roughcontact/gap_geometry.hpp"
#include "roughcontact/norms.hpp"
#include "roughcontact/power_law.hpp"

namespace roughcontact {

struct DragOptions {
  double tol = 1e-8;
  /// Quadrature tolerance for the direct residual pairing, whose integrand
  /// carries an integrable |x1|^(alpha-1) singularity.
  double direct_tol = 1e-7;
  /// Allowed relative disagreement of the two pairing evaluations.
  double cross_check_tol = 1e-3;
  double h_max = 1e-3;
};

struct DragSample {
  double h = 0.0;
  double dirichlet = 0.0;
  double pairing = 0.0;
  double n = 0.0;
  double reynolds = 0.0;
  double pairing_direct = 0.0;
};

/// 2 mu int_gap D:D + 2 mu * outer.strain_sq.
double dirichlet_energy(const RoughProfile& profile, double h, double mu,
                        const OuterCalibration& outer, const DragOptions& options = {});
double dirichlet_energy(const RoughProfile& profile, double h, double mu,
                        const DragOptions& options = {});

/// The residual pairing int_gap (mu Lap w - grad q) . w evaluated directly and
/// after integrating by parts against F = d11 psi:
///   by_parts = top + lateral + bulk, with
///   top     = int_{x2 = gamma} F w2 n1 dsigma = -int F(x1, gamma) gamma'(x1) dx1,
///   lateral = sum over x1 = +-delta of +-int_0^gamma F w2 dx2,
///   bulk    = int_gap F (2 d2 w1 - d1 w2).
struct PairingForms {
  double direct = 0.0;
  double by_parts = 0.0;
  double top = 0.0;
  double lateral = 0.0;
  double bulk = 0.0;

  double relative_discrepancy() const;
};

PairingForms residual_pairing_forms(const RoughProfile& profile, double h, double mu,
                                    const DragOptions& options = {});

/// Returns the integrated-by-parts value; throws CrossCheckError when the
/// direct evaluation disagrees by more than options.cross_check_tol.
double residual_pairing(const RoughProfile& profile, double h, double mu,
                        const DragOptions& options = {});

/// 12 mu int_{-delta}^{delta} x1^2 / gamma_h(x1)^3 dx1.
double reynolds_drag(const RoughProfile& profile, double h, double mu, double rel_tol = 1e-8);

DragSample drag_coefficient(const RoughProfile& profile, double h, double mu,
                            const OuterCalibration& outer, const DragOptions& options = {});
DragSample drag_coefficient(const RoughProfile& profile, double h, double mu,
                            const DragOptions& options = {});

/// int_0^delta |6 x1 gamma'^2 / gamma^2 * gamma' / (1 + gamma'^2)| dx1, the
/// bound on the solid-boundary term of the pairing.
double pairing_boundary_bound(const RoughProfile& profile, double h, double rel_tol = 1e-8);

struct RegimeVerdict {
  double beta = 0.0;
  bool collides = false;
};

/// beta = 3 alpha / (1 + alpha); contact in finite time iff beta < 1.
RegimeVerdict collision_regime(double alpha);

/// 2 - (p + 1) / (p (1 + alpha)) - 1 / p.
double starovoitov_beta(double alpha, double p);

/// Tabulated n(h) on increasing h with log-log piecewise-linear interpolation
/// and a power-law tail below the smallest node.
class DragTable {
 public:
  /// samples must be sorted by increasing h with n > 0 everywhere.
  explicit DragTable(std::vector<DragSample> samples);

  /// Evaluates drag_coefficient at each h (any order; stored sorted).
  static DragTable compute(const RoughProfile& profile, double mu, std::span<const double> hs,
                           const DragOptions& options = {}, unsigned jobs = 1);

  const std::vector<DragSample>& samples() const noexcept { return samples_; }
  double h_min() const noexcept { return samples_.front().h; }
  double h_max() const noexcept { return samples_.back().h; }

  /// Fitted exponent of n over the whole table (about -beta).
  const PowerLawFit& tail_fit() const noexcept { return tail_; }

  /// Interpolated n(h) for 0 < h <= h_max.
  double drag(double h) const;

  /// Local power-law exponent d ln n / d ln h at h.
  double local_exponent(double h) const;

  /// N(h) = int_{h0}^{h} n(s) ds for 0 < h, h0 <= h_max.
  double potential(double h, double h0) const;

  /// int_0^h n(s) ds; +infinity when the tail exponent is <= -1.
  double integral_below(double h) const;

 private:
  double cumulative_above(double h) const;  // int_h^{h_max} n

  std::vector<DragSample> samples_;
  std::vector<double> slopes_;      // per segment
  std::vector<double> cumulative_;  // int_{h_i}^{h_max} n
  PowerLawFit tail_;
};

/// N(h) from a 25-node log grid on [h, h0].
double drag_potential(const RoughProfile& profile, double h, double h0, double mu,
                      const DragOptions& options = {});

}  // namespace roughcontact
