#include "roughcontact/power_law.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "roughcontact/errors.hpp"

namespace roughcontact {

PowerLawFit fit_power_law(std::span<const PowerLawSample> samples, FitWindow window) {
  if (!(window.h_min > 0.0) || !(window.h_min < window.h_max)) {
    throw DomainError("fit_power_law: window must satisfy 0 < h_min < h_max");
  }
  std::vector<double> xs;
  std::vector<double> ys;
  std::set<double> distinct;
  for (const auto& s : samples) {
    if (!(s.h > 0.0) || !(s.value > 0.0) || !std::isfinite(s.value)) continue;
    // Relative slack so that log-spaced endpoints survive rounding.
    if (s.h < window.h_min * (1.0 - 1e-12) || s.h > window.h_max * (1.0 + 1e-12)) continue;
    xs.push_back(std::log(s.h));
    ys.push_back(std::log(s.value));
    distinct.insert(s.h);
  }
  if (xs.size() < 3 || distinct.size() < 2) {
    throw DegenerateInputError("fit_power_law: need at least 3 usable samples with distinct h");
  }

  const double n = static_cast<double>(xs.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
    syy += (ys[i] - my) * (ys[i] - my);
  }

  PowerLawFit fit;
  fit.exponent = sxy / sxx;
  fit.prefactor = std::exp(my - fit.exponent * mx);
  double ss_res = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double r = ys[i] - (my + fit.exponent * (xs[i] - mx));
    ss_res += r * r;
  }
  // A constant series is fitted perfectly by slope 0.
  fit.r_squared = syy > 0.0 ? std::clamp(1.0 - ss_res / syy, 0.0, 1.0) : 1.0;
  fit.h_min = std::exp(*std::min_element(xs.begin(), xs.end()));
  fit.h_max = std::exp(*std::max_element(xs.begin(), xs.end()));
  fit.used = xs.size();
  return fit;
}

std::vector<double> log_spaced(double lo, double hi, int n) {
  if (n < 2 || !(lo > 0.0) || !(hi > lo)) {
    throw DomainError("log_spaced: need n >= 2 and 0 < lo < hi");
  }
  std::vector<double> out(n);
  const double step = std::log(hi / lo) / (n - 1);
  for (int i = 0; i < n; ++i) out[i] = lo * std::exp(step * i);
  out.front() = lo;
  out.back() = hi;
  return out;
}

}  // namespace roughcontact
