#include "roughcontact/bmo.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>
#include <tuple>

#include "roughcontact/errors.hpp"
#include "roughcontact/parallel.hpp"

namespace roughcontact {

namespace {

constexpr std::array<CatalogFunction, 6> kCatalog{
    CatalogFunction::Constant, CatalogFunction::Linear,  CatalogFunction::Bump,
    CatalogFunction::LogAbs,   CatalogFunction::InvSqrt, CatalogFunction::Pow03};

struct BallStats {
  double mean_osc = -1.0;  // < 0: no masked-in cell
  double inf_osc = -1.0;
};

BallStats ball_stats(const GridFunction& f, const Ball& b, std::vector<double>& buf) {
  const double s = f.spacing;
  const double cx = f.cx(b.ci), cy = f.cy(b.cj);
  const double r2 = b.radius * b.radius;
  const int i0 = std::max(0, static_cast<int>(std::floor((cx - b.radius - f.x0) / s)));
  const int i1 = std::min(f.nx - 1, static_cast<int>(std::floor((cx + b.radius - f.x0) / s)));
  const int j0 = std::max(0, static_cast<int>(std::floor((cy - b.radius - f.y0) / s)));
  const int j1 = std::min(f.ny - 1, static_cast<int>(std::floor((cy + b.radius - f.y0) / s)));
  buf.clear();
  double sum = 0.0;
  for (int j = j0; j <= j1; ++j) {
    const double dy = std::max(std::abs(f.cy(j) - cy) - 0.5 * s, 0.0);
    for (int i = i0; i <= i1; ++i) {
      if (!f.inside(i, j)) continue;
      const double dx = std::max(std::abs(f.cx(i) - cx) - 0.5 * s, 0.0);
      if (dx * dx + dy * dy >= r2) continue;
      const double v = f.values[f.index(i, j)];
      buf.push_back(v);
      sum += v;
    }
  }
  BallStats out;
  if (buf.empty()) return out;
  const double n = static_cast<double>(buf.size());
  const double mean = sum / n;
  double dev_mean = 0.0;
  for (double v : buf) dev_mean += std::abs(v - mean);
  const auto mid = buf.begin() + (buf.size() - 1) / 2;  // lower median
  std::nth_element(buf.begin(), mid, buf.end());
  const double median = *mid;
  double dev_median = 0.0;
  for (double v : buf) dev_median += std::abs(v - median);
  out.mean_osc = dev_mean / n;
  out.inf_osc = dev_median / n;
  return out;
}

bool ball_less(const Ball& a, const Ball& b) {
  return std::tie(a.ci, a.cj, a.radius) < std::tie(b.ci, b.cj, b.radius);
}

void require_nonconstant(const BmoReport& report, const char* what) {
  if (!(report.seminorm_mean > 0.0)) {
    throw DegenerateInputError(std::string(what) + ": f is constant (BMO seminorm 0)");
  }
}

}  // namespace

std::size_t GridFunction::masked_count() const {
  return static_cast<std::size_t>(std::count_if(mask.begin(), mask.end(), [](auto m) { return m != 0; }));
}

void GridFunction::validate() const {
  if (nx <= 0 || ny <= 0) throw DomainError("GridFunction: nx and ny must be positive");
  if (!(spacing > 0.0)) throw DomainError("GridFunction: spacing must be > 0");
  const std::size_t n = static_cast<std::size_t>(nx) * ny;
  if (mask.size() != n || values.size() != n) {
    throw DomainError("GridFunction: mask and values must have nx * ny entries");
  }
  std::size_t count = 0;
  for (std::size_t k = 0; k < n; ++k) {
    if (!mask[k]) continue;
    ++count;
    if (!std::isfinite(values[k])) throw DomainError("GridFunction: non-finite value on the mask");
  }
  if (count == 0) throw DegenerateInputError("GridFunction: mask is empty");
}

GridFunction transform(const GridFunction& f, const std::function<double(double)>& fn) {
  GridFunction g = f;
  for (std::size_t k = 0; k < g.values.size(); ++k) {
    if (g.mask[k]) g.values[k] = fn(g.values[k]);
  }
  return g;
}

GridFunction rasterize_unit_disk(const std::function<double(double, double)>& fn, int n) {
  if (n < 2) throw DomainError("rasterize_unit_disk: need n >= 2");
  GridFunction g;
  g.nx = g.ny = n;
  g.spacing = 2.0 / n;
  g.x0 = g.y0 = -1.0;
  g.mask.assign(static_cast<std::size_t>(n) * n, 0);
  g.values.assign(static_cast<std::size_t>(n) * n, 0.0);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const double x = g.cx(i), y = g.cy(j);
      if (x * x + y * y >= 1.0) continue;
      g.mask[g.index(i, j)] = 1;
      g.values[g.index(i, j)] = fn(x, y);
    }
  }
  g.validate();
  return g;
}

std::span<const CatalogFunction> catalog() { return kCatalog; }

std::string to_string(CatalogFunction f) {
  switch (f) {
    case CatalogFunction::Constant: return "constant";
    case CatalogFunction::Linear: return "linear";
    case CatalogFunction::Bump: return "bump";
    case CatalogFunction::LogAbs: return "log_abs";
    case CatalogFunction::InvSqrt: return "inv_sqrt";
    case CatalogFunction::Pow03: return "pow_0.3";
  }
  return "unknown";
}

CatalogFunction catalog_from_string(const std::string& name) {
  for (CatalogFunction f : kCatalog) {
    if (to_string(f) == name) return f;
  }
  throw DomainError("unknown catalog function '" + name + "'");
}

GridFunction catalog_grid(CatalogFunction f, int n, double dilation) {
  if (!(dilation > 0.0)) throw DomainError("catalog_grid: dilation must be > 0");
  auto fn = [f, dilation](double x, double y) {
    const double X = dilation * x, Y = dilation * y;
    const double r = std::hypot(X, Y);
    switch (f) {
      case CatalogFunction::Constant: return 1.0;
      case CatalogFunction::Linear: return X;
      case CatalogFunction::Bump: return r < 1.0 ? std::exp(1.0 - 1.0 / (1.0 - r * r)) : 0.0;
      case CatalogFunction::LogAbs: return std::log(r);
      case CatalogFunction::InvSqrt: return 1.0 / std::sqrt(r);
      case CatalogFunction::Pow03: return std::pow(r, 0.3);
    }
    return 0.0;
  };
  return rasterize_unit_disk(fn, n);
}

std::vector<Ball> enumerate_balls(const GridFunction& f, const BallStrategy& strategy) {
  f.validate();
  if (!(strategy.min_radius_cells >= 2.0)) {
    throw DomainError("enumerate_balls: min_radius_cells must be >= 2");
  }
  if (!(strategy.stride_fraction > 0.0)) throw DomainError("enumerate_balls: stride_fraction must be > 0");
  int imin = f.nx, imax = -1, jmin = f.ny, jmax = -1;
  for (int j = 0; j < f.ny; ++j) {
    for (int i = 0; i < f.nx; ++i) {
      if (!f.inside(i, j)) continue;
      imin = std::min(imin, i);
      imax = std::max(imax, i);
      jmin = std::min(jmin, j);
      jmax = std::max(jmax, j);
    }
  }
  const double diameter = f.spacing * std::hypot(imax - imin + 1.0, jmax - jmin + 1.0);
  const int ai = f.nx / 2, aj = f.ny / 2;
  std::vector<Ball> balls;
  for (double r = strategy.min_radius_cells * f.spacing; r <= diameter * (1.0 + 1e-12); r *= 2.0) {
    const double cells = strategy.stride_fraction * r / f.spacing;
    const int stride = cells >= 1.0 ? 1 << static_cast<int>(std::floor(std::log2(cells))) : 1;
    for (int j = 0; j < f.ny; ++j) {
      if ((j - aj) % stride != 0) continue;
      for (int i = 0; i < f.nx; ++i) {
        if ((i - ai) % stride != 0 || !f.inside(i, j)) continue;
        balls.push_back({i, j, r});
      }
    }
  }
  return balls;
}

BmoReport bmo_seminorm(const GridFunction& f, std::span<const Ball> balls, unsigned jobs) {
  f.validate();
  if (balls.empty()) throw DegenerateInputError("bmo_seminorm: empty ball family");
  for (const Ball& b : balls) {
    if (b.ci < 0 || b.ci >= f.nx || b.cj < 0 || b.cj >= f.ny) {
      throw DomainError("bmo_seminorm: ball centre outside the grid");
    }
    if (!(b.radius >= 2.0 * f.spacing * (1.0 - 1e-12))) {
      throw DomainError("bmo_seminorm: ball radius must be >= 2 * spacing");
    }
  }
  std::vector<BallStats> stats(balls.size());
  parallel_for(balls.size(), jobs, [&](std::size_t k) {
    thread_local std::vector<double> buf;
    stats[k] = ball_stats(f, balls[k], buf);
  });

  BmoReport report;
  bool found = false;
  for (std::size_t k = 0; k < balls.size(); ++k) {
    const BallStats& s = stats[k];
    if (s.mean_osc < 0.0) continue;
    ++report.balls_evaluated;
    report.seminorm_inf = std::max(report.seminorm_inf, s.inf_osc);
    if (!found || s.mean_osc > report.seminorm_mean ||
        (s.mean_osc == report.seminorm_mean && ball_less(balls[k], report.argmax_ball))) {
      report.seminorm_mean = s.mean_osc;
      report.argmax_ball = balls[k];
      found = true;
    }
  }
  if (!found) throw DegenerateInputError("bmo_seminorm: no ball meets the mask");
  report.argmax_x = f.cx(report.argmax_ball.ci);
  report.argmax_y = f.cy(report.argmax_ball.cj);
  return report;
}

BmoReport bmo_seminorm(const GridFunction& f, const BallStrategy& strategy, unsigned jobs) {
  const std::vector<Ball> balls = enumerate_balls(f, strategy);
  return bmo_seminorm(f, balls, jobs);
}

double lp_norm(const GridFunction& f, double p) {
  f.validate();
  if (!(p >= 1.0) || !std::isfinite(p)) throw DomainError("lp_norm: p must be >= 1");
  double acc = 0.0;
  for (std::size_t k = 0; k < f.values.size(); ++k) {
    if (f.mask[k]) acc += std::pow(std::abs(f.values[k]), p);
  }
  return std::pow(acc * f.cell_area(), 1.0 / p);
}

double gradient_energy(const GridFunction& f) {
  f.validate();
  double acc = 0.0;
  const double inv = 1.0 / (2.0 * f.spacing);
  for (int j = 1; j + 1 < f.ny; ++j) {
    for (int i = 1; i + 1 < f.nx; ++i) {
      if (!f.inside(i, j) || !f.inside(i - 1, j) || !f.inside(i + 1, j) || !f.inside(i, j - 1) ||
          !f.inside(i, j + 1)) {
        continue;
      }
      const double gx = (f.values[f.index(i + 1, j)] - f.values[f.index(i - 1, j)]) * inv;
      const double gy = (f.values[f.index(i, j + 1)] - f.values[f.index(i, j - 1)]) * inv;
      acc += gx * gx + gy * gy;
    }
  }
  return acc * f.cell_area();
}

InterpolationCheck interpolation_check(const GridFunction& f, double p, double theta,
                                       const BmoReport& report) {
  if (!(p >= 1.0)) throw DomainError("interpolation_check: p must be >= 1");
  if (!(theta > 0.0 && theta < 1.0)) throw DomainError("interpolation_check: theta must lie in (0, 1)");
  require_nonconstant(report, "interpolation_check");
  InterpolationCheck out;
  out.q = p / (1.0 - theta);
  out.lq = lp_norm(f, out.q);
  out.lp = lp_norm(f, p);
  out.bmo = report.seminorm_mean;
  out.ratio = out.lq / (std::pow(out.lp, 1.0 - theta) * std::pow(out.bmo, theta));
  return out;
}

InterpolationCheck interpolation_check(const GridFunction& f, double p, double theta,
                                       const BallStrategy& strategy, unsigned jobs) {
  return interpolation_check(f, p, theta, bmo_seminorm(f, strategy, jobs));
}

EmbeddingCheck h1_embedding_check(const GridFunction& f, const BmoReport& report) {
  require_nonconstant(report, "h1_embedding_check");
  EmbeddingCheck out;
  out.bmo = report.seminorm_mean;
  const double l2 = lp_norm(f, 2.0);
  out.h1 = std::sqrt(l2 * l2 + gradient_energy(f));
  out.ratio = out.bmo / out.h1;
  return out;
}

EmbeddingCheck h1_embedding_check(const GridFunction& f, const BallStrategy& strategy,
                                  unsigned jobs) {
  return h1_embedding_check(f, bmo_seminorm(f, strategy, jobs));
}

}  // namespace roughcontact
