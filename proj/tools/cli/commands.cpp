#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "field_checks.hpp"
#include "output.hpp"
#include "roughcontact/bmo.hpp"
#include "roughcontact/drag.hpp"
#include "roughcontact/errors.hpp"
#include "roughcontact/fall_sim.hpp"
#include "roughcontact/gap_geometry.hpp"
#include "roughcontact/norms.hpp"
#include "roughcontact/parallel.hpp"
#include "roughcontact/power_law.hpp"
#include "roughcontact/test_field.hpp"

namespace roughcontact::cli {

namespace {

using nlohmann::json;

constexpr double kDivTolerance = 1e-10;
constexpr double kFdTolerance = 1e-4;

std::string fixed(double v, int digits = 4) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(digits);
  os << v;
  return os.str();
}

// ---- validation ---------------------------------------------------------

std::vector<RoughProfile> profiles(const RunConfig& cfg) {
  const std::vector<double> alphas = cfg.reals("alpha");
  if (alphas.empty()) throw UsageError("alpha list is empty");
  const double delta = cfg.real("delta");
  std::vector<RoughProfile> out;
  for (double a : alphas) {
    if (!(a > 0.0 && a <= 1.0)) throw UsageError("alpha " + format_real(a) + " is outside (0, 1]");
    if (!(delta > 0.0)) throw UsageError("delta must be > 0");
    out.emplace_back(a, delta);
  }
  return out;
}

void require(bool ok, const std::string& message) {
  if (!ok) throw UsageError(message);
}

double tolerance(const RunConfig& cfg) {
  const double tol = cfg.real("tol");
  require(tol > 0.0 && tol <= 1e-2, "tol must lie in (0, 1e-2]");
  return tol;
}

unsigned jobs(const RunConfig& cfg) {
  const long long j = cfg.integer("jobs");
  require(j >= 0, "jobs must be >= 0");
  return static_cast<unsigned>(j);
}

std::vector<double> h_grid(const RunConfig& cfg, int min_samples) {
  const double lo = cfg.real("h-min"), hi = cfg.real("h-max");
  const long long n = cfg.integer("samples");
  require(lo > 0.0, "h-min must be > 0");
  require(n >= min_samples, "samples must be >= " + std::to_string(min_samples));
  if (n == 1) return {lo};
  require(hi > lo, "h-max must exceed h-min");
  return log_spaced(lo, hi, static_cast<int>(n));
}

double positive(const RunConfig& cfg, const std::string& key) {
  const double v = cfg.real(key);
  require(v > 0.0, key + " must be > 0");
  return v;
}

void require_plot_target(const RunConfig& cfg) {
  require(!cfg.has("plot-script") || cfg.has("out"), "--plot-script needs --out");
}

DragOptions drag_options(double tol, double h_max) {
  DragOptions o;
  o.tol = tol;
  o.direct_tol = std::max(o.direct_tol, tol);
  o.h_max = h_max;
  return o;
}

// ---- plotting -----------------------------------------------------------

struct Curve {
  int column;  // 1-based
  std::string label;
};

std::string plot_script(const RunConfig& cfg, const std::string& title, const std::string& xlabel,
                        int xcol, const std::vector<Curve>& curves, bool log_x, bool log_y,
                        bool per_alpha) {
  std::ostringstream os;
  os << "# gnuplot script for " << csv_path(cfg) << "\n";
  os << "set datafile separator ','\n";
  if (log_x) os << "set logscale x\n";
  if (log_y) os << "set logscale y\n";
  os << "set xlabel '" << xlabel << "'\n";
  os << "set title '" << title << "'\n";
  os << "set key outside\n";
  os << "file = '" << csv_path(cfg) << "'\n";
  os << "plot \\\n";
  std::string alphas = cfg.text("alpha");
  std::replace(alphas.begin(), alphas.end(), ',', ' ');  // gnuplot word list
  for (std::size_t i = 0; i < curves.size(); ++i) {
    const auto& c = curves[i];
    const std::string y = log_y ? "abs($" + std::to_string(c.column) + ")" : "$" + std::to_string(c.column);
    if (per_alpha) {
      os << "  for [a in '" << alphas << "'] file every ::1 using " << xcol
         << ":(abs($1 - a) < 1e-12 ? " << y << " : NaN) with linespoints title '" << c.label
         << " alpha='.a";
    } else {
      os << "  file every ::1 using " << xcol << ":(" << y << ") with lines title '" << c.label << "'";
    }
    os << (i + 1 < curves.size() ? ", \\\n" : "\n");
  }
  return os.str();
}

json fit_json(const PowerLawFit& fit, std::optional<double> target) {
  json j{{"fitted", fit.exponent}, {"r_squared", fit.r_squared}, {"prefactor", fit.prefactor}};
  j["target"] = target ? json(*target) : json(nullptr);
  return j;
}

double max_over_min(const std::vector<double>& v) {
  double lo = INFINITY, hi = 0.0;
  for (double x : v) {
    lo = std::min(lo, std::abs(x));
    hi = std::max(hi, std::abs(x));
  }
  return lo > 0.0 ? hi / lo : INFINITY;
}

PowerLawFit fit_series(const std::vector<double>& hs, const std::vector<double>& values) {
  std::vector<PowerLawSample> pts;
  for (std::size_t i = 0; i < hs.size(); ++i) pts.push_back({hs[i], std::abs(values[i])});
  return fit_power_law(pts, {hs.front() * (1.0 - 1e-12), hs.back() * (1.0 + 1e-12)});
}

// ---- field-probe ----------------------------------------------------------

std::vector<GapPoint> parse_probes(const RunConfig& cfg) {
  std::vector<GapPoint> out;
  for (const auto& item : cfg.texts("probes")) {
    const auto colon = item.find(':');
    require(colon != std::string::npos, "probe '" + item + "' must be x1:x2");
    try {
      out.push_back({std::stod(item.substr(0, colon)), std::stod(item.substr(colon + 1))});
    } catch (const std::exception&) {
      throw UsageError("probe '" + item + "' must be x1:x2 with numbers");
    }
  }
  return out;
}

json vec_json(const Vec2& v) { return json::array({v[0], v[1]}); }

json sample_json(const RoughProfile& profile, double h, GapPoint p, double mu) {
  const FieldSample s = field_sample(profile, h, p, mu);
  json j{{"x1", p.x1}, {"x2", p.x2}, {"w", vec_json(s.w)}, {"dh_w", vec_json(s.dh_w)}, {"q", s.q}};
  if (s.grad_w) {
    const Matrix2& g = *s.grad_w;
    j["grad_w"] = json::array({json::array({g[0][0], g[0][1]}), json::array({g[1][0], g[1][1]})});
    j["div_w"] = trace(g);
  } else {
    j["grad_w"] = nullptr;
    j["div_w"] = nullptr;
  }
  j["stokes_residual"] = s.residual ? vec_json(*s.residual) : json(nullptr);
  return j;
}

}  // namespace

int cmd_field_probe(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto profs = profiles(cfg);
  const auto hs = h_grid(cfg, 1);
  const double mu = positive(cfg, "mu");
  const long long points = cfg.integer("points");
  require(points >= 0, "points must be >= 0");
  const auto probes = parse_probes(cfg);
  const unsigned workers = jobs(cfg);
  for (const auto& prof : profs) {
    for (double h : hs) {
      for (const auto& p : probes) require_gap_point(prof, h, p);
    }
  }

  struct Case {
    json report;
    bool passed = true;
  };
  std::vector<Case> cases(profs.size() * hs.size());
  const std::uint64_t seed = cfg.unsigned_integer("seed");
  parallel_for(cases.size(), workers, [&](std::size_t k) {
    const RoughProfile& prof = profs[k / hs.size()];
    const double h = hs[k % hs.size()];
    // One stream per case keeps the points independent of the worker count.
    std::mt19937_64 rng(seed + 0x9E3779B97F4A7C15ull * k);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    FieldCheck worst;
    int undefined = 0;
    for (long long i = 0; i < points; ++i) {
      const double x1 = prof.delta() * (2.0 * unit(rng) - 1.0);
      const double x2 = unit(rng) * gamma(prof, h, x1);
      const FieldCheck c = check_field_point(prof, h, {x1, x2}, mu);
      worst.abs_div = std::max(worst.abs_div, c.abs_div);
      worst.grad_rel = std::max(worst.grad_rel, c.grad_rel);
      worst.dh_rel = std::max(worst.dh_rel, c.dh_rel);
      if (c.residual_defined) {
        worst.residual_rel = std::max(worst.residual_rel, c.residual_rel);
      } else {
        ++undefined;
      }
    }
    const double xs = 0.5 * prof.delta();
    json r{{"alpha", prof.alpha()},
           {"h", h},
           {"random_points", points},
           {"max_abs_div", worst.abs_div},
           {"max_rel_err_grad", worst.grad_rel},
           {"max_rel_err_dh", worst.dh_rel},
           {"max_rel_err_stokes_residual", worst.residual_rel},
           {"residual_undefined_points", undefined},
           {"solid_probe", sample_json(prof, h, {xs, gamma(prof, h, xs)}, mu)},
           {"wall_probe", sample_json(prof, h, {xs, 0.0}, mu)}};
    json extra = json::array();
    for (const auto& p : probes) extra.push_back(sample_json(prof, h, p, mu));
    r["probes"] = extra;
    const bool ok = worst.abs_div <= kDivTolerance && worst.grad_rel <= kFdTolerance &&
                    worst.dh_rel <= kFdTolerance && worst.residual_rel <= kFdTolerance;
    r["passed"] = ok;
    cases[k] = {std::move(r), ok};
  });

  json summary{{"config", config_json(cfg)},
               {"tolerances", {{"divergence", kDivTolerance}, {"finite_difference", kFdTolerance}}}};
  bool all = true;
  json list = json::array();
  for (auto& c : cases) {
    all = all && c.passed;
    list.push_back(std::move(c.report));
  }
  summary["cases"] = std::move(list);
  summary["passed"] = all;
  emit(cfg, nullptr, summary, out);
  if (!all) {
    err << "field-probe: a divergence or finite-difference check exceeded its tolerance\n";
    return kNumericalFailure;
  }
  return kSuccess;
}

int cmd_sweep(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto profs = profiles(cfg);
  const auto hs = h_grid(cfg, 3);
  const double tol = tolerance(cfg);
  const double mu = positive(cfg, "mu");
  const double floor = cfg.real("r2-floor");
  require(floor >= 0.0 && floor <= 1.0, "r2-floor must lie in [0, 1]");
  const unsigned workers = jobs(cfg);
  require_plot_target(cfg);
  const double h_max = hs.back();

  std::vector<OuterCalibration> outer(profs.size());
  parallel_for(profs.size(), workers,
               [&](std::size_t a) { outer[a] = calibrate_outer(profs[a], h_max, tol); });

  const std::size_t m = hs.size();
  std::vector<Prop8Report> norms(profs.size() * m);
  std::vector<DragSample> drags(profs.size() * m);
  NormOptions nopt;
  nopt.tol = tol;
  nopt.h_max = h_max;
  const DragOptions dopt = drag_options(tol, h_max);
  parallel_for(norms.size(), workers, [&](std::size_t k) {
    const std::size_t a = k / m;
    norms[k] = prop8_suite(profs[a], hs[k % m], outer[a], nopt);
    drags[k] = drag_coefficient(profs[a], hs[k % m], mu, outer[a], dopt);
  });

  CsvTable csv({"alpha", "h", "l2_w", "l2_grad_w", "weighted_sup", "weighted_dh", "dirichlet",
                "pairing", "pairing_direct", "n", "reynolds"});
  json per_alpha = json::array();
  std::ostringstream lines;
  bool fits_ok = true;
  for (std::size_t a = 0; a < profs.size(); ++a) {
    const double alpha = profs[a].alpha();
    const double beta = collision_regime(alpha).beta;
    std::map<std::string, std::vector<double>> col;
    for (std::size_t i = 0; i < m; ++i) {
      const Prop8Report& r = norms[a * m + i];
      const DragSample& d = drags[a * m + i];
      csv.add_row({alpha, r.h, r.l2_w, r.l2_grad_w, r.weighted_sup, r.weighted_dh, d.dirichlet,
                   d.pairing, d.pairing_direct, d.n, d.reynolds});
      col["l2_w"].push_back(r.l2_w);
      col["l2_grad_w"].push_back(r.l2_grad_w);
      col["weighted_sup"].push_back(r.weighted_sup);
      col["weighted_dh"].push_back(r.weighted_dh);
      col["n"].push_back(d.n);
      col["reynolds"].push_back(d.reynolds);
      col["pairing_over_grad"].push_back(d.pairing / r.l2_grad_w);
    }
    const std::map<std::string, double> targets{{"l2_grad_w", -1.5 * alpha / (1.0 + alpha)},
                                                {"n", -beta},
                                                {"reynolds", -beta}};
    json fits, bounded;
    for (const auto& [name, target] : targets) {
      const PowerLawFit fit = fit_series(hs, col[name]);
      fits[name] = fit_json(fit, target);
      const bool ok = fit.trustworthy(floor);
      fits[name]["r_squared_ok"] = ok;
      fits_ok = fits_ok && ok;
      lines << "alpha=" << format_real(alpha) << " " << name << ": fitted " << fixed(fit.exponent)
            << ", target " << fixed(target) << ", r_squared " << fixed(fit.r_squared, 6)
            << (ok ? "" : "  [below r2-floor]") << "\n";
    }
    for (const std::string name : {"l2_w", "weighted_sup", "weighted_dh", "pairing_over_grad"}) {
      bounded[name] = {{"max_over_min", max_over_min(col[name])}};
      lines << "alpha=" << format_real(alpha) << " " << name << ": max/min "
            << fixed(max_over_min(col[name])) << "\n";
    }
    per_alpha.push_back({{"alpha", alpha}, {"beta", beta}, {"fits", fits}, {"bounded", bounded},
                         {"outer_grad_sq", outer[a].grad_sq}});
  }
  json summary{{"config", config_json(cfg)}, {"alphas", per_alpha}, {"fits_ok", fits_ok}};
  emit(cfg, &csv, summary, out);
  if (cfg.has("out")) out << lines.str();
  emit_plot_script(cfg, plot_script(cfg, "gap norms and drag", "h", 2,
                                    {{4, "l2_grad_w"}, {10, "n"}, {11, "reynolds"}}, true, true, true));
  if (!fits_ok) {
    err << "sweep-norms: a power-law fit fell below r2-floor " << format_real(floor) << "\n";
    return kNumericalFailure;
  }
  return kSuccess;
}

int cmd_drag_table(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  const auto profs = profiles(cfg);
  const auto hs = h_grid(cfg, 3);
  const double tol = tolerance(cfg);
  const double mu = positive(cfg, "mu");
  const unsigned workers = jobs(cfg);
  require_plot_target(cfg);
  const DragOptions dopt = drag_options(tol, hs.back());

  CsvTable csv({"alpha", "h", "dirichlet", "pairing", "pairing_direct", "n", "reynolds", "N_of_h"});
  json per_alpha = json::array();
  for (const auto& prof : profs) {
    const DragTable table = DragTable::compute(prof, mu, hs, dopt, workers);
    std::vector<double> hv, rey;
    for (const auto& s : table.samples()) {
      csv.add_row({prof.alpha(), s.h, s.dirichlet, s.pairing, s.pairing_direct, s.n, s.reynolds,
                   table.potential(s.h, table.h_max())});
      hv.push_back(s.h);
      rey.push_back(s.reynolds);
    }
    const RegimeVerdict verdict = collision_regime(prof.alpha());
    const double below = table.integral_below(table.h_min());
    per_alpha.push_back({{"alpha", prof.alpha()},
                         {"beta", verdict.beta},
                         {"collides", verdict.collides},
                         {"n_fit", fit_json(table.tail_fit(), -verdict.beta)},
                         {"reynolds_fit", fit_json(fit_series(hv, rey), -verdict.beta)},
                         {"tail_integrable", std::isfinite(below)}});
  }
  json summary{{"config", config_json(cfg)}, {"alphas", per_alpha}};
  emit(cfg, &csv, summary, out);
  emit_plot_script(cfg, plot_script(cfg, "drag coefficient", "h", 2,
                                    {{6, "n"}, {7, "reynolds"}}, true, true, true));
  return kSuccess;
}

int cmd_fall(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  const double tol = tolerance(cfg);
  const unsigned workers = jobs(cfg);
  require_plot_target(cfg);
  const std::string source = cfg.text("drag");
  require(source == "table" || source == "power", "drag must be 'table' or 'power'");

  FallParams params;
  params.h0 = positive(cfg, "h0");
  params.G = positive(cfg, "G");
  params.mu = positive(cfg, "mu");
  params.h_contact = cfg.optional_real("h-contact");
  params.t_max = cfg.optional_real("t-max");
  std::optional<double> alpha;
  if (source == "power") {
    params.drag_source = PowerLawDrag{positive(cfg, "K"), cfg.real("beta")};
  } else {
    const auto profs = profiles(cfg);
    require(profs.size() == 1, "fall with table drag takes exactly one alpha");
    params.profile = profs.front();
    alpha = profs.front().alpha();
    require(cfg.integer("samples") >= 3, "samples must be >= 3");
  }
  try {
    params.validate();
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
  if (source == "table") {
    params.drag_source = make_computed_table(params.profile, params.mu, params.h0,
                                             static_cast<int>(cfg.integer("samples")), 4.0,
                                             drag_options(tol, params.h0), workers);
  }

  const FallTrajectory traj = simulate_fall(params, tol);
  const std::vector<double> residuals = energy_residuals(traj, params);
  CsvTable csv({"t", "h", "hdot", "N_of_h", "R_model"});
  for (std::size_t i = 0; i < traj.samples.size(); ++i) {
    const auto& s = traj.samples[i];
    csv.add_row({s.t, s.h, s.hdot, model_potential(params, s.h), residuals[i]});
  }
  double beta = 0.0;
  if (const auto* p = std::get_if<PowerLawDrag>(&params.drag_source)) {
    beta = p->beta;
  } else {
    beta = collision_regime(*alpha).beta;
  }
  json summary{{"config", config_json(cfg)},
               {"alpha", alpha ? json(*alpha) : json(nullptr)},
               {"beta", beta},
               {"classified", to_string(traj.classified)},
               {"contact_time", traj.contact_time ? json(*traj.contact_time) : json(nullptr)},
               {"threshold_time", traj.threshold_time ? json(*traj.threshold_time) : json(nullptr)},
               {"h0", params.h0},
               {"h_contact", params.contact_threshold()},
               {"t_max", params.horizon()},
               {"time_scale", params.time_scale()},
               {"energy_audit", energy_audit(traj, params)},
               {"error_estimate", traj.error_estimate},
               {"accepted_steps", traj.accepted_steps},
               {"rejected_steps", traj.rejected_steps}};
  if (const auto* t = std::get_if<ComputedTableDrag>(&params.drag_source)) {
    summary["drag_fit"] = fit_json(t->table->tail_fit(), -beta);
  }
  emit(cfg, &csv, summary, out);
  emit_plot_script(cfg, plot_script(cfg, "quasi-static fall", "t", 1, {{2, "h"}}, false, true, false));
  return kSuccess;
}

int cmd_bmo_check(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  const auto resolutions = cfg.integers("resolutions");
  require(!resolutions.empty(), "resolutions list is empty");
  for (long long n : resolutions) require(n >= 8 && n <= 4096, "resolutions must lie in [8, 4096]");
  std::vector<CatalogFunction> fns;
  for (const auto& name : cfg.texts("functions")) {
    try {
      fns.push_back(catalog_from_string(name));
    } catch (const DomainError& e) {
      throw UsageError(e.what());
    }
  }
  require(!fns.empty(), "functions list is empty");
  const double p = cfg.real("p"), theta = cfg.real("theta");
  require(p >= 1.0, "p must be >= 1");
  require(theta > 0.0 && theta < 1.0, "theta must lie in (0, 1)");
  const unsigned workers = jobs(cfg);

  json list = json::array();
  for (CatalogFunction fn : fns) {
    json rows = json::array();
    std::vector<double> semis, interps;
    bool degenerate = false;
    for (long long n : resolutions) {
      const GridFunction g = catalog_grid(fn, static_cast<int>(n));
      const BmoReport r = bmo_seminorm(g, BallStrategy{}, workers);
      json row{{"n", n},
               {"seminorm_mean", r.seminorm_mean},
               {"seminorm_inf", r.seminorm_inf},
               {"sandwich_ok", r.seminorm_inf <= r.seminorm_mean * (1.0 + 1e-12) &&
                                   r.seminorm_mean <= 2.0 * r.seminorm_inf * (1.0 + 1e-12)},
               {"argmax_ball", {{"x", r.argmax_x}, {"y", r.argmax_y}, {"radius", r.argmax_ball.radius}}},
               {"balls", r.balls_evaluated},
               {"lp_norm", lp_norm(g, p)}};
      semis.push_back(r.seminorm_mean);
      if (r.seminorm_mean > 0.0) {
        const InterpolationCheck ic = interpolation_check(g, p, theta, r);
        const EmbeddingCheck ec = h1_embedding_check(g, r);
        row["lq_norm"] = ic.lq;
        row["interpolation_ratio"] = ic.ratio;
        row["h1_norm"] = ec.h1;
        row["embedding_ratio"] = ec.ratio;
        interps.push_back(ic.ratio);
      } else {
        degenerate = true;
        row["lq_norm"] = lp_norm(g, p / (1.0 - theta));
        row["interpolation_ratio"] = nullptr;
        row["h1_norm"] = nullptr;
        row["embedding_ratio"] = nullptr;
      }
      rows.push_back(row);
    }
    json growth = json::array(), change = json::array();
    for (std::size_t i = 1; i < semis.size(); ++i) {
      growth.push_back(semis[i - 1] > 0.0 ? json(semis[i] / semis[i - 1]) : json(nullptr));
    }
    for (std::size_t i = 1; i < interps.size(); ++i) change.push_back(interps[i] / interps[i - 1]);
    list.push_back({{"function", to_string(fn)},
                    {"degenerate", degenerate},
                    {"resolutions", rows},
                    {"seminorm_growth", growth},
                    {"interpolation_change", change}});
  }
  json summary{{"config", config_json(cfg)},
               {"q", p / (1.0 - theta)},
               {"functions", list}};
  emit(cfg, nullptr, summary, out);
  return kSuccess;
}

int cmd_lemma10(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  const auto profs = profiles(cfg);
  const auto hs = h_grid(cfg, 3);
  const double tol = tolerance(cfg);
  const double p = cfg.real("p"), q = cfg.real("q");
  require(p >= 0.0, "p must be >= 0");
  require(q >= 0.0, "q must be >= 0");
  const unsigned workers = jobs(cfg);
  require_plot_target(cfg);

  const std::size_t m = hs.size();
  std::vector<QuadratureResult<1>> values(profs.size() * m);
  parallel_for(values.size(), workers, [&](std::size_t k) {
    values[k] = lemma10_integral_detailed(p, q, profs[k / m], hs[k % m], tol);
  });

  CsvTable csv({"alpha", "p", "q", "h", "value", "error_estimate"});
  json per_alpha = json::array();
  for (std::size_t a = 0; a < profs.size(); ++a) {
    const Lemma10Regime regime = lemma10_classify(p, q, profs[a]);
    std::vector<double> v;
    for (std::size_t i = 0; i < m; ++i) {
      const auto& r = values[a * m + i];
      csv.add_row({profs[a].alpha(), p, q, hs[i], r.value[0], r.error[0]});
      v.push_back(r.value[0]);
    }
    json entry{{"alpha", profs[a].alpha()}, {"regime", to_string(regime.kind)}};
    entry["predicted_exponent"] = regime.exponent ? json(*regime.exponent) : json(nullptr);
    const PowerLawFit fit = fit_series(hs, v);
    entry["fit"] = fit_json(fit, regime.exponent);
    std::vector<double> over_log;
    for (std::size_t i = 0; i < m; ++i) over_log.push_back(v[i] / std::abs(std::log(hs[i])));
    entry["value_over_abs_log_h_max_over_min"] = max_over_min(over_log);
    entry["value_max_over_min"] = max_over_min(v);
    per_alpha.push_back(entry);
  }
  json summary{{"config", config_json(cfg)}, {"p", p}, {"q", q}, {"alphas", per_alpha}};
  emit(cfg, &csv, summary, out);
  emit_plot_script(cfg, plot_script(cfg, "int |x1|^p / gamma^q", "h", 4, {{5, "value"}}, true, true,
                                    true));
  return kSuccess;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Numerical experiments on the thin-gap test field and the quasi-static fall model",
               "roughcontact"};
  app.require_subcommand(1);
  app.fallthrough(false);

  struct Sub {
    CLI::App* app;
    std::map<std::string, std::string> values;
    std::map<std::string, CLI::Option*> options;
    std::string config_path;
  };
  const std::vector<std::pair<std::string, std::string>> commands{
      {"field-probe", "evaluate the test field and cross-check its derivatives"},
      {"sweep-norms", "gap norms, drag and power-law fits over an h sweep"},
      {"drag-table", "tabulate n(h), its lubrication oracle and N(h)"},
      {"fall", "integrate the quasi-static fall n(h) hdot = -G"},
      {"bmo-check", "BMO seminorms and inequality ratios on the function catalog"},
      {"lemma10", "int |x1|^p / (h + |x1|^(1+alpha))^q over an h sweep"}};
  std::vector<std::unique_ptr<Sub>> subs;
  for (const auto& [name, help] : commands) {
    auto sub = std::make_unique<Sub>();
    sub->app = app.add_subcommand(name, help);
    for (const auto& spec : options_for(name)) {
      std::string desc = spec.help;
      auto it = spec.command_fallback.find(name);
      const std::string fb = it != spec.command_fallback.end() ? it->second : spec.fallback;
      if (!fb.empty()) desc += " [default: " + fb + "]";
      sub->options[spec.key] = sub->app->add_option("--" + spec.key, sub->values[spec.key], desc);
    }
    sub->app->add_option("--config", sub->config_path,
                         "key = value file, or a previous run's CSV/JSON output");
    subs.push_back(std::move(sub));
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsageError;
  }

  for (const auto& sub : subs) {
    if (!sub->app->parsed()) continue;
    const std::string name = sub->app->get_name();
    try {
      std::map<std::string, std::string> flags;
      for (const auto& [key, opt] : sub->options) {
        if (opt->count() > 0) flags[key] = sub->values[key];
      }
      std::map<std::string, std::string> file;
      if (!sub->config_path.empty()) file = read_config_file(sub->config_path);
      const RunConfig cfg = RunConfig::resolve(name, flags, file);
      if (name == "field-probe") return cmd_field_probe(cfg, out, err);
      if (name == "sweep-norms") return cmd_sweep(cfg, out, err);
      if (name == "drag-table") return cmd_drag_table(cfg, out, err);
      if (name == "fall") return cmd_fall(cfg, out, err);
      if (name == "bmo-check") return cmd_bmo_check(cfg, out, err);
      if (name == "lemma10") return cmd_lemma10(cfg, out, err);
    } catch (const UsageError& e) {
      err << name << ": " << e.what() << "\n";
      return kUsageError;
    } catch (const DomainError& e) {
      err << name << ": " << e.what() << "\n";
      return kUsageError;
    } catch (const DegenerateInputError& e) {
      err << name << ": " << e.what() << "\n";
      return kUsageError;
    } catch (const std::exception& e) {
      err << name << ": numerical failure: " << e.what() << "\n";
      return kNumericalFailure;
    }
  }
  return kUsageError;
}

}  // namespace roughcontact::cli
