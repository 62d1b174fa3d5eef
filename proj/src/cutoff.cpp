// Copyright 2026 The qcutoff Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qcutoff/cutoff.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "qcutoff/contraction.hpp"
#include "qcutoff/error.hpp"

namespace qcutoff {

namespace {

double value_of(const CurvePoint& p, CurveSeries s) {
  return s == CurveSeries::Lower ? p.eta_lower : p.eta_upper;
}

CurveMethod resolve(const CutoffFamily& family, double n, CurveMethod requested) {
  if (requested != CurveMethod::Auto) return requested;
  if (family.has_pure_fixpoint()) return CurveMethod::Scalable;
  if (family.primitive()) return CurveMethod::Separable;
  if (n == std::floor(n) && n <= 3.0) return CurveMethod::BruteForce;
  throw DomainError("cutoff_curve: no valid path for family '" + family.label() + "' at n = " +
                    std::to_string(n));
}

CurvePoint evaluate(const CutoffFamily& family, double n, double t, CurveMethod method,
                    const Superoperator* joint, const CurveConfig& config) {
  CurvePoint p;
  p.t = t;
  switch (method) {
    case CurveMethod::Scalable: {
      const PureFixpointBounds b = eta_pure_fixpoint_bounds(std::clamp(family.x(t), 0.0, 1.0), n);
      p.eta_lower = b.lower;
      p.eta_upper = b.upper;
      break;
    }
    case CurveMethod::Separable: {
      const SeparableBounds b =
          eta_sep_bounds(family.site_liouvillian(), t, n, config.restarts, config.seed);
      p.eta_lower = b.tr_lower;
      p.eta_upper = b.tr_upper;
      break;
    }
    case CurveMethod::BruteForce: {
      const ContractionEstimate e = eta_tr_estimate(*joint, t, config.restarts, config.seed);
      p.eta_lower = e.eta_lower;
      p.eta_upper = e.eta_upper;
      break;
    }
    case CurveMethod::Auto:
      break;
  }
  return p;
}

double crossing(const std::vector<CurvePoint>& pts, double threshold, CurveSeries series) {
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const double v = value_of(pts[i], series);
    if (v > threshold) continue;
    if (i == 0) return pts[0].t;
    const double prev = value_of(pts[i - 1], series);
    if (prev == v) return pts[i].t;
    const double w = (prev - threshold) / (prev - v);
    return pts[i - 1].t + w * (pts[i].t - pts[i - 1].t);
  }
  return std::numeric_limits<double>::quiet_NaN();
}

}  // namespace

PrecutoffTimes precutoff_times(double gap, double n) {
  if (!(gap > 0.0) || !std::isfinite(gap)) throw DomainError("precutoff_times: gap must be positive");
  if (!(n >= 2.0)) throw DomainError("precutoff_times: n must be >= 2");
  const double t2 = std::log(n) / gap;
  return {0.5 * t2, t2};
}

std::string to_string(CurveMethod m) {
  switch (m) {
    case CurveMethod::Auto: return "auto";
    case CurveMethod::Scalable: return "pure-fixpoint";
    case CurveMethod::BruteForce: return "brute-force";
    case CurveMethod::Separable: return "separable";
  }
  return "unknown";
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Cutoff: return "cutoff";
    case Verdict::PreCutoff: return "pre-cutoff";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "unknown";
}

CutoffFamily CutoffFamily::pure_fixpoint(const LindbladModel& site, const CMatrix& psi,
                                         std::string label) {
  CutoffFamily f;
  f.label_ = std::move(label);
  f.site_model_ = site;
  f.site_ = build_liouvillian(site);
  f.modes_.emplace(f.site_, psi);
  f.analyze();
  return f;
}

CutoffFamily CutoffFamily::separable(const LindbladModel& site, std::string label) {
  CutoffFamily f;
  f.label_ = std::move(label);
  f.site_model_ = site;
  f.site_ = build_liouvillian(site);
  f.analyze();
  if (!f.primitive_) throw DomainError("CutoffFamily::separable: site generator is not primitive");
  return f;
}

void CutoffFamily::analyze() {
  SpectralOptions opts;
  opts.compute_kappa = false;
  const SpectralReport rep = spectral_report(site_, opts);
  gap_ = rep.gap;
  jordan_index_ = rep.jordan_index;
  primitive_ = rep.primitive;
}

double CutoffFamily::x(double t) const {
  if (!modes_) throw DomainError("family '" + label_ + "' has no pure stationary state");
  return modes_->x(t);
}

double CutoffFamily::nu_bar() const {
  if (!modes_) throw DomainError("family '" + label_ + "' has no pure stationary state");
  return modes_->nu_bar();
}

LindbladModel CutoffFamily::explicit_model(int n) const {
  if (n < 1) throw DomainError("explicit_model: n must be >= 1");
  if (builder_) return builder_(n);
  TensorSumModel ts;
  ts.site_model = site_model_;
  ts.n_sites = n;
  return embed(ts);
}

CutoffFamily amplitude_damping_family(double gamma, double alpha, double beta) {
  const CMatrix psi = ket_bra(2, 0, 0);
  std::ostringstream label;
  label << "amplitude_damping(gamma=" << gamma << ",alpha=" << alpha << ",beta=" << beta << ")";
  return CutoffFamily::pure_fixpoint(amplitude_damping_model(gamma, alpha, beta), psi, label.str());
}

CutoffFamily graph_state_family(double gamma) {
  std::ostringstream label;
  label << "graph_state_path(gamma=" << gamma << ")";
  CutoffFamily f = CutoffFamily::pure_fixpoint(amplitude_damping_model(gamma), ket_bra(2, 0, 0),
                                               label.str());
  f.set_explicit_builder([gamma](int n) { return graph_state_model(path_graph(n, gamma)); });
  return f;
}

CutoffFamily depolarizing_family(Eigen::Index dim, double rate) {
  std::ostringstream label;
  label << "depolarizing(dim=" << dim << ",rate=" << rate << ")";
  return CutoffFamily::separable(depolarizing_model(dim, rate), label.str());
}

CutoffCurve cutoff_curve(const CutoffFamily& family, double n, const std::vector<double>& t_grid,
                         const CurveConfig& config) {
  if (!(n >= 1.0)) throw DomainError("cutoff_curve: n must be >= 1");
  if (t_grid.empty()) throw DomainError("cutoff_curve: empty time grid");
  CutoffCurve curve;
  curve.n = n;
  curve.method = resolve(family, n, config.method);
  if (curve.method == CurveMethod::Scalable && !family.has_pure_fixpoint()) {
    throw DomainError("cutoff_curve: pure-fixpoint path needs a pure stationary state");
  }
  if (curve.method == CurveMethod::Separable && !family.primitive()) {
    throw DomainError("cutoff_curve: separable path needs a primitive site generator");
  }
  std::optional<Superoperator> joint;
  if (curve.method == CurveMethod::BruteForce) {
    if (n != std::floor(n)) throw DomainError("cutoff_curve: brute force needs integer n");
    joint = build_liouvillian(family.explicit_model(static_cast<int>(n)));
  }
  curve.points.reserve(t_grid.size());
  for (double t : t_grid) {
    if (!(t >= 0.0)) throw DomainError("cutoff_curve: negative time");
    curve.points.push_back(evaluate(family, n, t, curve.method, joint ? &*joint : nullptr, config));
  }
  return curve;
}

double estimate_cutoff_time(const CutoffCurve& curve, double threshold, CurveSeries series) {
  if (curve.points.empty()) throw DomainError("estimate_cutoff_time: empty curve");
  const double t = crossing(curve.points, threshold, series);
  if (std::isnan(t)) {
    throw DomainError("estimate_cutoff_time: curve never crosses " + std::to_string(threshold));
  }
  return t;
}

CutoffReport analyze_cutoff(const CutoffFamily& family, const std::vector<double>& n_values,
                            const CutoffOptions& options) {
  if (n_values.empty()) throw DomainError("analyze_cutoff: empty n ladder");
  if (options.grid_points < 2) throw DomainError("analyze_cutoff: grid_points must be >= 2");
  CutoffReport rep;
  rep.family = family.label();
  rep.n_values = n_values;
  std::sort(rep.n_values.begin(), rep.n_values.end());
  rep.gap = family.gap();
  rep.jordan_index = family.jordan_index();

  rep.c_probe = options.c_probe;
  for (double c : {options.c_high, options.c_low}) {
    if (std::find(rep.c_probe.begin(), rep.c_probe.end(), c) == rep.c_probe.end()) {
      rep.c_probe.push_back(c);
    }
  }
  std::sort(rep.c_probe.begin(), rep.c_probe.end());

  for (double n : rep.n_values) {
    const PrecutoffTimes pt = precutoff_times(rep.gap, n);
    rep.t1.push_back(pt.t1);
    rep.t2.push_back(pt.t2);
  }
  const double t_max = 2.0 * rep.t2.back();
  std::vector<double> grid(static_cast<std::size_t>(options.grid_points));
  for (int i = 0; i < options.grid_points; ++i) {
    grid[static_cast<std::size_t>(i)] = t_max * i / (options.grid_points - 1);
  }

  for (double n : rep.n_values) {
    CutoffCurve curve = cutoff_curve(family, n, grid, options.curve);
    const double t_hat = estimate_cutoff_time(curve, options.threshold);
    const double hi = crossing(curve.points, options.window_high, CurveSeries::Lower);
    const double lo = crossing(curve.points, options.window_low, CurveSeries::Lower);
    rep.estimated_cutoff_times.push_back(t_hat);
    rep.window_widths.push_back(lo - hi);
    std::vector<double> probe_times;
    for (double c : rep.c_probe) probe_times.push_back(c * t_hat);
    CurveConfig cfg = options.curve;
    cfg.method = curve.method;
    rep.probes.push_back(cutoff_curve(family, n, probe_times, cfg).points);
    rep.curves.push_back(std::move(curve));
  }
  classify(rep, options);
  return rep;
}

Verdict classify(CutoffReport& rep, const CutoffOptions& options) {
  const std::size_t m = rep.n_values.size();
  if (m < 3) throw DomainError("classify: n ladder needs at least 3 values");
  if (rep.estimated_cutoff_times.size() != m || rep.probes.size() != m || rep.t1.size() != m ||
      rep.t2.size() != m) {
    throw ShapeError("classify: report arrays do not match the n ladder");
  }
  if (!(rep.n_values.back() >= 100.0 * rep.n_values.front())) {
    throw DomainError("classify: n ladder must span at least two decades");
  }

  // Least-squares slope of t_hat against ln n.
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    mx += std::log(rep.n_values[i]);
    my += rep.estimated_cutoff_times[i];
  }
  mx /= static_cast<double>(m);
  my /= static_cast<double>(m);
  double sxx = 0.0, sxy = 0.0;
  rep.nu_ratios.clear();
  for (std::size_t i = 0; i < m; ++i) {
    const double dx = std::log(rep.n_values[i]) - mx;
    sxx += dx * dx;
    sxy += dx * (rep.estimated_cutoff_times[i] - my);
    rep.nu_ratios.push_back(std::log(rep.n_values[i]) / rep.estimated_cutoff_times[i]);
  }
  rep.nu_hat = sxy > 0.0 ? sxx / sxy : std::numeric_limits<double>::infinity();

  rep.sandwich_holds = true;
  for (std::size_t i = 0; i < m; ++i) {
    const double t = rep.estimated_cutoff_times[i];
    if (t < rep.t1[i] * (1.0 - options.delta) || t > rep.t2[i] * (1.0 + options.delta)) {
      rep.sandwich_holds = false;
    }
  }

  constexpr double kTrendTol = 1e-9;
  bool trends = true;
  bool certified = true;
  bool have_high = false, have_low = false;
  for (const auto& row : rep.probes) {
    if (row.size() != rep.c_probe.size()) throw ShapeError("classify: probe arrays do not match c_probe");
  }
  for (std::size_t k = 0; k < rep.c_probe.size(); ++k) {
    const double c = rep.c_probe[k];
    if (c == 1.0) continue;
    for (std::size_t i = 1; i < m; ++i) {
      const CurvePoint& a = rep.probes[i - 1][k];
      const CurvePoint& b = rep.probes[i][k];
      if (c < 1.0 && b.eta_lower < a.eta_lower - kTrendTol) trends = false;
      if (c > 1.0 && b.eta_lower > a.eta_lower + kTrendTol) trends = false;
      if (c > 1.0 && b.eta_upper > a.eta_upper + kTrendTol) certified = false;
    }
    const CurvePoint& last = rep.probes.back()[k];
    if (c == options.c_high) {
      have_high = true;
      if (last.eta_lower < options.eta_high) trends = false;
    }
    if (c == options.c_low) {
      have_low = true;
      if (last.eta_lower > options.eta_low) trends = false;
      if (last.eta_upper > options.eta_low) certified = false;
    }
  }
  if (!have_high || !have_low) throw DomainError("classify: c_probe must contain c_high and c_low");
  rep.trends_hold = trends;
  rep.certified_upper = trends && certified;

  if (trends) {
    rep.verdict = Verdict::Cutoff;
  } else if (rep.sandwich_holds) {
    rep.verdict = Verdict::PreCutoff;
  } else {
    rep.verdict = Verdict::Inconclusive;
  }

  std::ostringstream s;
  s.precision(6);
  switch (rep.verdict) {
    case Verdict::Cutoff:
      s << "cutoff at rate nu_hat=" << rep.nu_hat;
      break;
    case Verdict::PreCutoff:
      s << "pre-cutoff window [ln n/(2 gap), ln n/gap] with gap=" << rep.gap;
      break;
    case Verdict::Inconclusive:
      s << "inconclusive";
      break;
  }
  s << " (J=" << rep.jordan_index << ")";
  rep.summary = s.str();
  return rep.verdict;
}

}  // namespace qcutoff
