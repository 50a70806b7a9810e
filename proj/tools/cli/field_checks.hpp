#pragma once

// Finite-difference cross-checks of the analytic test-field derivatives, as
// reported by `field-probe`.

#include "roughcontact/test_field.hpp"

namespace roughcontact::cli {

struct FieldCheck {
  double abs_div = 0.0;       // |trace grad w| from the closed form
  double grad_rel = 0.0;      // max-entry relative error of grad w
  double dh_rel = 0.0;        // relative error of d_h w
  double residual_rel = 0.0;  // relative error of mu Lap w - grad q
  bool residual_defined = true;
};

/// Fourth-order central differences with steps tied to the local gap scales.
FieldCheck check_field_point(const RoughProfile& profile, double h, GapPoint point, double mu);

}  // namespace roughcontact::cli
