#pragma once

#include <span>
#include <utility>
#include <vector>

namespace roughcontact {

struct PowerLawSample {
  double h;
  double value;
};

/// value ~ prefactor * h^exponent, fitted by least squares in log-log space.
struct PowerLawFit {
  double exponent = 0.0;
  double prefactor = 0.0;
  double r_squared = 0.0;
  double h_min = 0.0;
  double h_max = 0.0;
  std::size_t used = 0;

  bool trustworthy(double r_squared_floor = 0.999) const { return r_squared >= r_squared_floor; }
};

struct FitWindow {
  double h_min = 1e-7;
  double h_max = 1e-3;
};

/// Samples with h outside the window, or non-positive h/value, are ignored.
/// Throws DegenerateInputError with fewer than 3 usable samples or fewer than
/// two distinct h.
PowerLawFit fit_power_law(std::span<const PowerLawSample> samples, FitWindow window);

/// n log-spaced values from lo to hi inclusive (n >= 2).
std::vector<double> log_spaced(double lo, double hi, int n);

}  // namespace roughcontact
