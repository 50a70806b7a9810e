#pragma once

// Discrete BMO toolkit on cell-sampled grid functions: mean-oscillation and
// median (inf-variant) seminorms over sampled balls, L^p norms, and the
// H^1 embedding and L^p-BMO interpolation ratios.

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace roughcontact {

/// nx * ny cells of side `spacing`; cell (i, j) has centre
/// (x0 + (i + 1/2) spacing, y0 + (j + 1/2) spacing) and index j * nx + i.
struct GridFunction {
  int nx = 0;
  int ny = 0;
  double spacing = 0.0;
  double x0 = 0.0;
  double y0 = 0.0;
  std::vector<std::uint8_t> mask;
  std::vector<double> values;

  std::size_t index(int i, int j) const { return static_cast<std::size_t>(j) * nx + i; }
  bool inside(int i, int j) const { return mask[index(i, j)] != 0; }
  double cx(int i) const { return x0 + (i + 0.5) * spacing; }
  double cy(int j) const { return y0 + (j + 0.5) * spacing; }
  double cell_area() const { return spacing * spacing; }
  std::size_t masked_count() const;

  /// Throws DomainError / DegenerateInputError on inconsistent or empty data.
  void validate() const;
};

/// Applies fn to the values (mask unchanged).
GridFunction transform(const GridFunction& f, const std::function<double(double)>& fn);

/// n x n grid on [-1, 1]^2 masked to the open unit disk, sampled at cell centres.
GridFunction rasterize_unit_disk(const std::function<double(double, double)>& fn, int n);

enum class CatalogFunction { Constant, Linear, Bump, LogAbs, InvSqrt, Pow03 };

std::span<const CatalogFunction> catalog();
std::string to_string(CatalogFunction f);
/// Throws DomainError for unknown names.
CatalogFunction catalog_from_string(const std::string& name);

/// Catalog function on the unit disk; `dilation` rescales x -> dilation * x.
GridFunction catalog_grid(CatalogFunction f, int n, double dilation = 1.0);

struct Ball {
  int ci = 0;  // centre cell
  int cj = 0;
  double radius = 0.0;
};

/// Dyadic radii 2^k * min_radius_cells * spacing up to the masked-domain
/// diameter. Centres lie on a lattice anchored at the grid centre with stride
/// 2^floor(log2(stride_fraction * radius / spacing)) cells (at least 1), so
/// small balls are centred on every masked-in cell.
struct BallStrategy {
  double min_radius_cells = 2.0;
  double stride_fraction = 0.25;
};

std::vector<Ball> enumerate_balls(const GridFunction& f, const BallStrategy& strategy = {});

struct BmoReport {
  double seminorm_mean = 0.0;
  double seminorm_inf = 0.0;
  Ball argmax_ball;
  double argmax_x = 0.0;
  double argmax_y = 0.0;
  std::size_t balls_evaluated = 0;
};

/// Balls must have radius >= 2 spacing; throws DegenerateInputError when no
/// ball contains a masked-in cell.
BmoReport bmo_seminorm(const GridFunction& f, std::span<const Ball> balls, unsigned jobs = 1);
BmoReport bmo_seminorm(const GridFunction& f, const BallStrategy& strategy = {},
                       unsigned jobs = 1);

/// (sum over masked cells |f|^p * cell area)^(1/p), p >= 1.
double lp_norm(const GridFunction& f, double p);

/// Sum of |grad f|^2 * cell area over masked cells whose four neighbours are
/// masked in, using central differences.
double gradient_energy(const GridFunction& f);

struct InterpolationCheck {
  double q = 0.0;
  double lq = 0.0;
  double lp = 0.0;
  double bmo = 0.0;
  double ratio = 0.0;
};

/// ||f||_q / (||f||_p^(1-theta) * bmo^theta) with q = p / (1 - theta).
InterpolationCheck interpolation_check(const GridFunction& f, double p, double theta,
                                       const BmoReport& report);
InterpolationCheck interpolation_check(const GridFunction& f, double p, double theta,
                                       const BallStrategy& strategy = {}, unsigned jobs = 1);

struct EmbeddingCheck {
  double bmo = 0.0;
  double h1 = 0.0;
  double ratio = 0.0;
};

/// bmo / (||f||_2^2 + gradient_energy)^(1/2).
EmbeddingCheck h1_embedding_check(const GridFunction& f, const BmoReport& report);
EmbeddingCheck h1_embedding_check(const GridFunction& f, const BallStrategy& strategy = {},
                                  unsigned jobs = 1);

}  // namespace roughcontact
