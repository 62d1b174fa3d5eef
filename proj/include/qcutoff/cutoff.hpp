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

#pragma once

// Cutoff experiments over families of n-fold tensor-product semigroups:
// contraction curves, pre-cutoff windows, threshold-crossing times and a
// finite-n cutoff classification.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qcutoff/liouville.hpp"
#include "qcutoff/matcore.hpp"
#include "qcutoff/models.hpp"
#include "qcutoff/spectral.hpp"

namespace qcutoff {

struct PrecutoffTimes {
  double t1 = 0.0;  // ln n / (2 gap)
  double t2 = 0.0;  // ln n / gap
};

PrecutoffTimes precutoff_times(double gap, double n);

enum class CurveMethod { Auto, Scalable, BruteForce, Separable };

std::string to_string(CurveMethod m);

// A family T_t^{(x)n} built from one site generator. Families whose site
// generator has a unique pure stationary state use the occupied-mode
// evolution of 1 - psi; primitive families use separable-input bounds;
// small n can always be handled by explicit matrices.
class CutoffFamily {
public:
  using ExplicitBuilder = std::function<LindbladModel(int n)>;

  // Site generator with pure stationary state psi (a rank-one projector).
  static CutoffFamily pure_fixpoint(const LindbladModel& site, const CMatrix& psi,
                                    std::string label);
  // Primitive site generator.
  static CutoffFamily separable(const LindbladModel& site, std::string label);

  const std::string& label() const { return label_; }
  const LindbladModel& site_model() const { return site_model_; }
  const Superoperator& site_liouvillian() const { return site_; }
  double gap() const { return gap_; }
  int jordan_index() const { return jordan_index_; }
  bool has_pure_fixpoint() const { return modes_.has_value(); }
  bool primitive() const { return primitive_; }

  // |T_t^*(1 - psi)|_inf; throws DomainError without a pure fixed point.
  double x(double t) const;
  double nu_bar() const;

  // Explicit n-site generator; defaults to the tensor sum of the site model.
  LindbladModel explicit_model(int n) const;
  void set_explicit_builder(ExplicitBuilder builder) { builder_ = std::move(builder); }

private:
  CutoffFamily() = default;
  void analyze();

  std::string label_;
  LindbladModel site_model_;
  Superoperator site_;
  std::optional<OccupiedModes> modes_;
  double gap_ = 0.0;
  int jordan_index_ = 1;
  bool primitive_ = false;
  ExplicitBuilder builder_;
};

CutoffFamily amplitude_damping_family(double gamma, double alpha = 0.0, double beta = 0.0);
// Path-graph states of n vertices; the scalable path runs through the
// graph-basis equivalence with amplitude damping at the same gamma.
CutoffFamily graph_state_family(double gamma);
CutoffFamily depolarizing_family(Eigen::Index dim, double rate);

struct CurvePoint {
  double t = 0.0;
  double eta_lower = 0.0;
  double eta_upper = 1.0;
};

struct CutoffCurve {
  double n = 1.0;
  CurveMethod method = CurveMethod::Auto;
  std::vector<CurvePoint> points;
};

struct CurveConfig {
  CurveMethod method = CurveMethod::Auto;
  int restarts = 16;
  std::uint64_t seed = 0;
};

// eta bounds on T_t^{(x)n} at each t. Throws DomainError when the requested
// method does not apply to the family or to n.
CutoffCurve cutoff_curve(const CutoffFamily& family, double n, const std::vector<double>& t_grid,
                         const CurveConfig& config = {});

enum class CurveSeries { Lower, Upper };

// First downward crossing of `threshold`, linearly interpolated. Throws
// DomainError when the curve never crosses.
double estimate_cutoff_time(const CutoffCurve& curve, double threshold = 0.5,
                            CurveSeries series = CurveSeries::Lower);

enum class Verdict { Cutoff, PreCutoff, Inconclusive };

std::string to_string(Verdict v);

struct CutoffOptions {
  std::vector<double> c_probe{0.5, 0.8, 1.2, 2.0};
  double threshold = 0.5;
  double c_high = 0.8;
  double eta_high = 0.95;
  double c_low = 1.2;
  double eta_low = 0.1;
  double window_high = 0.9;
  double window_low = 0.1;
  // Relative slack of the (t1, t2) sandwich.
  double delta = 0.05;
  int grid_points = 4000;
  CurveConfig curve;
};

struct CutoffReport {
  std::string family;
  std::vector<double> n_values;
  std::vector<double> t1;
  std::vector<double> t2;
  // Curves on the uniform grid [0, 2 max t2] used to locate crossings.
  std::vector<CutoffCurve> curves;
  std::vector<double> estimated_cutoff_times;
  std::vector<double> window_widths;
  // probes[i][k]: bounds at c_probe[k] * estimated_cutoff_times[i].
  std::vector<double> c_probe;
  std::vector<std::vector<CurvePoint>> probes;

  Verdict verdict = Verdict::Inconclusive;
  // 1 / slope of estimated_cutoff_times against ln n.
  double nu_hat = 0.0;
  // ln n / t_hat per n.
  std::vector<double> nu_ratios;
  double gap = 0.0;
  int jordan_index = 1;
  bool sandwich_holds = false;
  bool trends_hold = false;
  // The c > 1 test also holds with the certified upper bound.
  bool certified_upper = false;
  std::string summary;
};

// Curves, crossings and probes for every n, followed by classify().
CutoffReport analyze_cutoff(const CutoffFamily& family, const std::vector<double>& n_values,
                            const CutoffOptions& options = {});

// Deterministic verdict from the curves and probes already in the report.
// Throws DomainError when the n ladder has fewer than 3 values or spans
// less than two decades.
Verdict classify(CutoffReport& report, const CutoffOptions& options = {});

}  // namespace qcutoff
