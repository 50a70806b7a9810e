// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "field_oracle.hpp"
#include "roughcontact/bmo.hpp"
#include "roughcontact/drag.hpp"
#include "roughcontact/fall_sim.hpp"
#include "roughcontact/gap_geometry.hpp"
#include "roughcontact/norms.hpp"
#include "roughcontact/power_law.hpp"
#include "roughcontact/test_field.hpp"

using namespace roughcontact;

namespace {

using Clock = std::chrono::steady_clock;

int failures = 0;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

void report(int id, const std::string& name, bool ok, const std::string& detail, double secs) {
  std::printf("[%s] C%d %s: %s (%.2f s)\n", ok ? "PASS" : "FAIL", id, name.c_str(), detail.c_str(),
              secs);
  std::fflush(stdout);
  if (!ok) ++failures;
}

void info(const std::string& text) {
  std::printf("       %s\n", text.c_str());
  std::fflush(stdout);
}

std::string fmt(const char* f, double a) {
  char buf[96];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

double max_over_min(const std::vector<double>& v) {
  const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  return *hi / *lo;
}

PowerLawFit fit(const std::vector<double>& h, const std::vector<double>& v) {
  std::vector<PowerLawSample> s;
  for (std::size_t i = 0; i < h.size(); ++i) s.push_back({h[i], v[i]});
  return fit_power_law(s, FitWindow{h.front(), h.back()});
}

constexpr double kAlphas[] = {0.25, 0.5, 0.75, 1.0};

// ---- 1 ------------------------------------------------------------------

void lemma10_oracle() {
  const auto t0 = Clock::now();
  const RoughProfile p(1.0);
  double worst = 0.0;
  for (double h : {1.0, 1e-2, 1e-4, 1e-6, 1e-8}) {
    const double exact = 2.0 / std::sqrt(h) * std::atan(1.0 / std::sqrt(h));
    worst = std::max(worst, std::abs(lemma10_integral(0.0, 1.0, p, h) / exact - 1.0));
  }
  const double secs = seconds_since(t0);
  report(1, "lemma10 arctan oracle", worst <= 1e-8 && secs < 1.0,
         fmt("max rel err %.2e (tol 1e-8)", worst), secs);
}

// ---- 2 ------------------------------------------------------------------

void lemma10_regimes() {
  const auto t0 = Clock::now();
  struct Triple {
    double p, q, alpha;
  };
  const Triple triples[] = {{0.0, 1.0, 1.0},  {0.0, 1.0, 0.5},  {2.0, 3.0, 0.5},  {1.0, 2.0, 0.25},
                            {0.0, 2.0, 0.75}, {2.0, 3.0, 1.0},  {1.0, 1.0, 1.0},  {2.0, 2.0, 0.5},
                            {0.5, 1.0, 0.5},  {2.0, 1.0, 1.0},  {1.0, 0.5, 0.25}, {0.0, 0.5, 0.5}};
  const auto h_log = log_spaced(1e-9, 1e-5, 9);
  const auto h_bounded = log_spaced(1e-7, 1e-5, 5);
  bool ok = true;
  std::vector<std::string> lines;
  for (const Triple& t : triples) {
    const RoughProfile prof(t.alpha);
    const Lemma10Regime regime = lemma10_classify(t.p, t.q, prof);
    const auto& hs = regime.kind == Lemma10Kind::Bounded ? h_bounded : h_log;
    std::vector<double> v;
    for (double h : hs) v.push_back(lemma10_integral(t.p, t.q, prof, h, 1e-10));
    char buf[160];
    bool good = false;
    if (regime.kind == Lemma10Kind::PowerLaw) {
      const double e = fit(hs, v).exponent;
      good = std::abs(e - *regime.exponent) <= 0.02;
      std::snprintf(buf, sizeof buf, "(p=%g, q=%g, alpha=%g) PowerLaw fitted %.4f, predicted %.4f",
                    t.p, t.q, t.alpha, e, *regime.exponent);
    } else if (regime.kind == Lemma10Kind::Logarithmic) {
      std::vector<double> r;
      for (std::size_t i = 0; i < hs.size(); ++i) r.push_back(v[i] / std::abs(std::log(hs[i])));
      const double spread = max_over_min(r);
      good = spread <= 3.0;
      std::snprintf(buf, sizeof buf, "(p=%g, q=%g, alpha=%g) Logarithmic value/|ln h| max/min %.3f",
                    t.p, t.q, t.alpha, spread);
    } else {
      const double spread = max_over_min(v);
      good = spread <= 1.5;
      std::snprintf(buf, sizeof buf, "(p=%g, q=%g, alpha=%g) Bounded value max/min %.4f", t.p, t.q,
                    t.alpha, spread);
    }
    ok = ok && good;
    lines.push_back(std::string(good ? "ok   " : "BAD  ") + buf);
  }
  const double secs = seconds_since(t0);
  report(2, "lemma10 regimes", ok && secs < 30.0, "12 triples, all three regimes", secs);
  for (const auto& l : lines) info(l);
}

// ---- 3-6 ----------------------------------------------------------------

struct SweepPoint {
  Prop8Report norms;
  DragSample drag;
  double by_parts_rel = 0.0;
};

struct Sweep {
  double alpha;
  std::vector<double> h;
  std::vector<SweepPoint> points;
  double norm_secs = 0.0;
  double drag_secs = 0.0;
};

std::vector<Sweep> run_sweeps() {
  std::vector<Sweep> out;
  const auto hs = log_spaced(1e-7, 1e-3, 25);
  for (double a : kAlphas) {
    const RoughProfile p(a);
    Sweep s{a, hs, {}, 0.0, 0.0};
    auto t0 = Clock::now();
    const OuterCalibration outer = calibrate_outer(p, 1e-3, 1e-8);
    std::vector<Prop8Report> norms;
    for (double h : hs) norms.push_back(prop8_suite(p, h, outer));
    s.norm_secs = seconds_since(t0);
    t0 = Clock::now();
    for (std::size_t i = 0; i < hs.size(); ++i) {
      SweepPoint pt;
      pt.norms = norms[i];
      pt.drag = drag_coefficient(p, hs[i], 1.0, outer);
      pt.by_parts_rel = std::abs(pt.drag.pairing_direct - pt.drag.pairing) / std::abs(pt.drag.pairing);
      s.points.push_back(pt);
    }
    s.drag_secs = seconds_since(t0);
    out.push_back(std::move(s));
  }
  return out;
}

template <class F>
std::vector<double> column(const Sweep& s, F f) {
  std::vector<double> v;
  for (const auto& p : s.points) v.push_back(f(p));
  return v;
}

void gradient_exponent(const std::vector<Sweep>& sweeps) {
  bool ok = true;
  double secs = 0.0;
  std::vector<std::string> lines;
  for (const auto& s : sweeps) {
    const PowerLawFit f = fit(s.h, column(s, [](const SweepPoint& p) { return p.norms.l2_grad_w; }));
    const double target = -1.5 * s.alpha / (1.0 + s.alpha);
    const bool good = std::abs(f.exponent - target) <= 0.03 && f.r_squared >= 0.999;
    ok = ok && good;
    secs += s.norm_secs;
    char buf[160];
    std::snprintf(buf, sizeof buf, "%salpha=%g fitted %.4f, target %.4f, r_squared %.6f",
                  good ? "ok   " : "BAD  ", s.alpha, f.exponent, target, f.r_squared);
    lines.push_back(buf);
  }
  report(3, "gradient norm exponent", ok && secs < 120.0, "h in [1e-7, 1e-3], 25 samples per alpha",
         secs);
  for (const auto& l : lines) info(l);
}

void bounded_norms(const std::vector<Sweep>& sweeps) {
  bool ok = true;
  std::vector<std::string> lines;
  for (const auto& s : sweeps) {
    const double a = max_over_min(column(s, [](const SweepPoint& p) { return p.norms.l2_w; }));
    const double b = max_over_min(column(s, [](const SweepPoint& p) { return p.norms.weighted_sup; }));
    const double c = max_over_min(column(s, [](const SweepPoint& p) { return p.norms.weighted_dh; }));
    const bool good = a <= 2.0 && b <= 2.0 && c <= 2.0;
    ok = ok && good;
    char buf[200];
    std::snprintf(buf, sizeof buf,
                  "%salpha=%g max/min: l2_w %.4f, weighted_sup %.4f, weighted_dh %.4f",
                  good ? "ok   " : "BAD  ", s.alpha, a, b, c);
    lines.push_back(buf);
  }
  report(4, "bounded norms", ok, "max/min <= 2 over each sweep", 0.0);
  for (const auto& l : lines) info(l);
}

void drag_exponents(const std::vector<Sweep>& sweeps) {
  bool ok = true;
  double secs = 0.0;
  std::vector<std::string> lines;
  for (const auto& s : sweeps) {
    const double beta = collision_regime(s.alpha).beta;
    const double en = fit(s.h, column(s, [](const SweepPoint& p) { return p.drag.n; })).exponent;
    const double er = fit(s.h, column(s, [](const SweepPoint& p) { return p.drag.reynolds; })).exponent;
    const bool good = std::abs(en + beta) <= 0.05 && std::abs(er + beta) <= 0.05 && std::abs(en - er) <= 0.05;
    ok = ok && good;
    secs += s.drag_secs;
    char buf[200];
    std::snprintf(buf, sizeof buf, "%salpha=%g n %.4f, reynolds %.4f, target %.4f",
                  good ? "ok   " : "BAD  ", s.alpha, en, er, -beta);
    lines.push_back(buf);
  }
  report(5, "drag exponents", ok && secs < 180.0, "n and lubrication oracle against -beta", secs);
  for (const auto& l : lines) info(l);
}

void pairing_structure(const std::vector<Sweep>& sweeps) {
  bool ok = true;
  std::vector<std::string> lines;
  for (const auto& s : sweeps) {
    double worst = 0.0;
    for (const auto& p : s.points) worst = std::max(worst, p.by_parts_rel);
    const double spread = max_over_min(column(s, [](const SweepPoint& p) {
      return std::abs(p.drag.pairing) / p.norms.l2_grad_w;
    }));
    const bool good = worst <= 1e-3 && spread <= 5.0;
    ok = ok && good;
    char buf[200];
    std::snprintf(buf, sizeof buf,
                  "%salpha=%g direct vs by-parts max rel %.2e, |pairing|/l2_grad_w max/min %.3f",
                  good ? "ok   " : "BAD  ", s.alpha, worst, spread);
    lines.push_back(buf);
  }
  report(6, "pairing structure", ok, "cross-check 1e-3, ratio max/min <= 5", 0.0);
  for (const auto& l : lines) info(l);
}

// ---- 7 ------------------------------------------------------------------

void dichotomy() {
  bool ok = true;
  double slowest = 0.0, total = 0.0;
  std::vector<std::string> lines;
  for (double a : {0.1, 0.25, 0.4, 0.5, 0.6, 0.75, 1.0}) {
    const auto t0 = Clock::now();
    FallParams p;
    p.profile = RoughProfile(a);
    p.drag_source = make_computed_table(p.profile, p.mu, p.h0);
    const FallTrajectory t = simulate_fall(p, 1e-8);
    const double secs = seconds_since(t0);
    slowest = std::max(slowest, secs);
    total += secs;
    const bool expect = a < 0.5;
    const bool good = (t.classified == FallOutcome::Collision) == expect && secs < 60.0;
    ok = ok && good;
    char buf[200];
    std::snprintf(buf, sizeof buf, "%salpha=%g %s (expected %s), %.2f s", good ? "ok   " : "BAD  ", a,
                  to_string(t.classified).c_str(), expect ? "Collision" : "NoCollisionWithinHorizon",
                  secs);
    lines.push_back(buf);
  }
  report(7, "collision dichotomy", ok, fmt("slowest alpha %.2f s", slowest), total);
  for (const auto& l : lines) info(l);
}

// ---- 8 ------------------------------------------------------------------

void ode_oracle() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> K(0.2, 5.0), beta(0.0, 0.95), logh0(-4.0, 0.0), G(0.2, 5.0);
  double worst = 0.0;
  bool ok = true;
  for (int k = 0; k < 10; ++k) {
    FallParams p;
    const PowerLawDrag d{K(rng), beta(rng)};
    p.drag_source = d;
    p.h0 = std::pow(10.0, logh0(rng));
    p.G = G(rng);
    const double T = d.K * std::pow(p.h0, 1.0 - d.beta) / ((1.0 - d.beta) * p.G);
    p.t_max = 2.0 * T;
    const FallTrajectory t = simulate_fall(p, 1e-8);
    if (!t.contact_time) {
      ok = false;
      continue;
    }
    worst = std::max(worst, std::abs(*t.contact_time / T - 1.0));
  }
  ok = ok && worst <= 1e-4;
  report(8, "separable ODE oracle", ok, fmt("10 instances, max rel err %.2e (tol 1e-4)", worst),
         seconds_since(t0));
}

// ---- 9 ------------------------------------------------------------------

double rel(const std::array<std::array<double, 2>, 2>& a, const std::array<std::array<double, 2>, 2>& b) {
  double d = 0.0, s = 0.0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      d = std::max(d, std::abs(a[i][j] - b[i][j]));
      s = std::max(s, std::abs(b[i][j]));
    }
  return d / s;
}

double rel(const std::array<double, 2>& a, const std::array<double, 2>& b) {
  return std::max(std::abs(a[0] - b[0]), std::abs(a[1] - b[1])) /
         std::max(std::abs(b[0]), std::abs(b[1]));
}

void field_identities() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double div = 0.0, grad = 0.0, dh = 0.0, res = 0.0;
  int cases = 0;
  for (double a : kAlphas) {
    const RoughProfile p(a);
    for (double h : {1e-7, 1e-5, 1e-3}) {
      ++cases;
      const oracle::Field f{a, 1.0, h};
      for (int k = 0; k < 100; ++k) {
        double x1 = 0.0;
        while (x1 == 0.0) x1 = 2.0 * u(rng) - 1.0;
        const double x2 = u(rng) * gamma(p, h, x1);
        const auto g = velocity_gradient(p, h, {x1, x2});
        const auto r = stokes_residual(p, h, {x1, x2});
        if (!g || !r) {
          grad = res = INFINITY;
          continue;
        }
        div = std::max(div, std::abs(trace(*g)));
        grad = std::max(grad, rel(*g, oracle::gradient(f, x1, x2)));
        dh = std::max(dh, rel(dh_velocity(p, h, {x1, x2}), oracle::dh_w(f, x1, x2)));
        res = std::max(res, rel(*r, oracle::stokes_residual(f, x1, x2)));
      }
    }
  }
  const bool ok = div <= 1e-10 && grad <= 1e-4 && dh <= 1e-4 && res <= 1e-4;
  char buf[200];
  std::snprintf(buf, sizeof buf,
                "%d (alpha, h) cases x 100 points: |div| %.1e, grad %.1e, dh %.1e, residual %.1e",
                cases, div, grad, dh, res);
  report(9, "field identities", ok, buf, seconds_since(t0));
}

// ---- 10, 11 -------------------------------------------------------------

struct BmoRow {
  BmoReport report;
  double interpolation = 0.0;
};

void bmo_criteria() {
  const int resolutions[] = {128, 256, 512};
  std::vector<std::vector<BmoRow>> table;
  double secs512 = 0.0;
  const auto t0 = Clock::now();
  for (CatalogFunction fn : catalog()) {
    std::vector<BmoRow> rows;
    for (int n : resolutions) {
      const auto t1 = Clock::now();
      const GridFunction g = catalog_grid(fn, n);
      BmoRow row;
      row.report = bmo_seminorm(g, BallStrategy{}, 0);
      if (row.report.seminorm_mean > 0.0) row.interpolation = interpolation_check(g, 2.0, 0.5, row.report).ratio;
      if (n == 512) secs512 += seconds_since(t1);
      rows.push_back(row);
    }
    table.push_back(rows);
  }
  const double total = seconds_since(t0);

  auto index_of = [](CatalogFunction f) {
    const auto c = catalog();
    return static_cast<std::size_t>(std::find(c.begin(), c.end(), f) - c.begin());
  };
  const auto& log_rows = table[index_of(CatalogFunction::LogAbs)];
  const auto& inv_rows = table[index_of(CatalogFunction::InvSqrt)];
  const double log_growth = log_rows[2].report.seminorm_mean / log_rows[1].report.seminorm_mean;
  const double inv_a = inv_rows[1].report.seminorm_mean / inv_rows[0].report.seminorm_mean;
  const double inv_b = inv_rows[2].report.seminorm_mean / inv_rows[1].report.seminorm_mean;
  bool sandwich = true;
  for (const auto& rows : table) {
    for (const auto& r : rows) {
      sandwich = sandwich && r.report.seminorm_inf <= r.report.seminorm_mean * (1.0 + 1e-12) &&
                 r.report.seminorm_mean <= 2.0 * r.report.seminorm_inf * (1.0 + 1e-12);
    }
  }
  const bool ok10 = log_growth <= 1.1 && inv_a >= 1.3 && inv_b >= 1.3 && sandwich && secs512 < 120.0;
  char buf[240];
  std::snprintf(buf, sizeof buf,
                "log|x| growth 256->512 %.4f, |x|^-1/2 growth %.4f and %.4f, sandwich %s; N=512 in %.2f s",
                log_growth, inv_a, inv_b, sandwich ? "holds" : "violated", secs512);
  report(10, "BMO discrimination", ok10, buf, total);

  bool ok11 = true;
  std::vector<std::string> lines;
  for (CatalogFunction fn : catalog()) {
    const auto& rows = table[index_of(fn)];
    const std::string name = to_string(fn);
    if (fn == CatalogFunction::Constant) {
      lines.push_back("n/a  constant: zero seminorm, ratio undefined");
      continue;
    }
    const double change = rows[2].interpolation / rows[1].interpolation;
    char line[200];
    if (fn == CatalogFunction::InvSqrt) {
      std::snprintf(line, sizeof line,
                    "n/a  %s: change 256->512 %.4f (not in BMO nor L^4; reported only)",
                    name.c_str(), change);
      lines.push_back(line);
      continue;
    }
    const bool good = std::abs(change - 1.0) <= 0.1;
    ok11 = ok11 && good;
    std::snprintf(line, sizeof line, "%s%s: ratio %.4f -> %.4f, change %.4f", good ? "ok   " : "BAD  ",
                  name.c_str(), rows[1].interpolation, rows[2].interpolation, change);
    lines.push_back(line);
  }
  report(11, "interpolation stability", ok11, "p = 2, theta = 1/2, N = 256 -> 512", 0.0);
  for (const auto& l : lines) info(l);
}

}  // namespace

int main() {
  const auto t0 = Clock::now();
  lemma10_oracle();
  lemma10_regimes();
  const auto sweeps = run_sweeps();
  gradient_exponent(sweeps);
  bounded_norms(sweeps);
  drag_exponents(sweeps);
  pairing_structure(sweeps);
  dichotomy();
  ode_oracle();
  field_identities();
  bmo_criteria();
  std::printf("%d of 11 criteria failed, total %.1f s\n", failures, seconds_since(t0));
  return failures == 0 ? 0 : 1;
}
