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

#include <doctest.h>

#include <cmath>

#include "qcutoff/contraction.hpp"
#include "qcutoff/cutoff.hpp"
#include "qcutoff/error.hpp"
#include "qcutoff/models.hpp"

using namespace qcutoff;

namespace {

// Exact solution of 1 - (1 - e^{-gamma t})^n = threshold.
double exact_crossing(double gamma, double n, double threshold) {
  return -std::log(-std::expm1(std::log1p(-threshold) / n)) / gamma;
}

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> out;
  for (int i = 0; i < n; ++i) out.push_back(a + (b - a) * i / (n - 1));
  return out;
}

}  // namespace

TEST_CASE("precutoff times") {
  const PrecutoffTimes a = precutoff_times(0.5, std::exp(2.0));
  CHECK(a.t1 == doctest::Approx(2.0));
  CHECK(a.t2 == doctest::Approx(4.0));
  const PrecutoffTimes b = precutoff_times(0.5, 1e4);
  CHECK(b.t1 == doctest::Approx(9.2103).epsilon(1e-4));
  CHECK(b.t2 == doctest::Approx(18.4207).epsilon(1e-4));
  CHECK(b.t1 == b.t2 / 2.0);
  const double tn = std::log(1e4) / 1.0;
  // For amplitude damping ln n / gamma coincides with the lower end t1.
  CHECK(b.t1 <= tn);
  CHECK(tn < b.t2);
  CHECK(tn == doctest::Approx(b.t1));
  CHECK_THROWS_AS(precutoff_times(0.0, 10.0), DomainError);
  CHECK_THROWS_AS(precutoff_times(0.5, 1.0), DomainError);
}

TEST_CASE("scalable curve values for amplitude damping") {
  const CutoffFamily f = amplitude_damping_family(1.0);
  const double n = 1e6;
  const CutoffCurve c = cutoff_curve(f, n, {0.8 * std::log(n), 2.0 * std::log(n)});
  CHECK(c.method == CurveMethod::Scalable);
  CHECK(c.points[0].eta_lower >= 1.0 - std::exp(-std::pow(n, 0.2) / 2.0));
  CHECK(c.points[1].eta_upper == doctest::Approx(1e-3).epsilon(1e-3));
}

TEST_CASE("brute force agrees with the scalable bracket at n = 2") {
  for (const CutoffFamily& f : {amplitude_damping_family(1.0), graph_state_family(1.0)}) {
    const std::vector<double> ts{0.3, 1.0, 2.0};
    CurveConfig bf;
    bf.method = CurveMethod::BruteForce;
    bf.restarts = 12;
    const CutoffCurve exact = cutoff_curve(f, 2.0, ts, bf);
    const CutoffCurve fast = cutoff_curve(f, 2.0, ts);
    for (std::size_t i = 0; i < ts.size(); ++i) {
      CHECK(fast.points[i].eta_lower <= exact.points[i].eta_lower + 1e-6);
      CHECK(exact.points[i].eta_lower <= fast.points[i].eta_upper + 1e-6);
    }
  }
}

TEST_CASE("threshold crossing of the amplitude damping lower curve") {
  const CutoffFamily f = amplitude_damping_family(1.0);
  const double n = 1e4;
  const CutoffCurve c = cutoff_curve(f, n, linspace(0.0, 30.0, 6001));
  const double t_hat = estimate_cutoff_time(c);
  CHECK(t_hat == doctest::Approx(exact_crossing(1.0, n, 0.5)).epsilon(1e-5));
  CHECK(std::abs(t_hat / std::log(n) - 1.0) < 0.05);
  CHECK(estimate_cutoff_time(c, 0.99) < t_hat);
  CHECK(t_hat < estimate_cutoff_time(c, 0.01));
  CHECK(estimate_cutoff_time(c, 0.5, CurveSeries::Upper) > t_hat);
}

TEST_CASE("step curve crossing is exact") {
  CutoffCurve c;
  for (int i = 0; i <= 10; ++i) c.points.push_back({static_cast<double>(i), i < 4 ? 1.0 : 0.0, 1.0});
  CHECK(estimate_cutoff_time(c, 0.5) == doctest::Approx(3.5));
  CHECK(estimate_cutoff_time(c, 0.75) == doctest::Approx(3.25));
  CutoffCurve flat;
  flat.points = {{0.0, 1.0, 1.0}, {1.0, 0.9, 1.0}};
  CHECK_THROWS_AS(estimate_cutoff_time(flat), DomainError);
}

TEST_CASE("pure fixed point families show cutoff at rate gamma") {
  const std::vector<double> ladder{1e3, 1e4, 1e6};
  for (double g : {0.5, 1.0, 2.0}) {
    const CutoffReport r = analyze_cutoff(amplitude_damping_family(g), ladder);
    CHECK(r.verdict == Verdict::Cutoff);
    CHECK(std::abs(r.nu_hat / g - 1.0) < 0.05);
    CHECK(r.gap == doctest::Approx(g / 2.0));
    CHECK(r.sandwich_holds);
    for (std::size_t i = 0; i < ladder.size(); ++i) {
      const double eps = 0.05 * r.t2[i];
      CHECK(r.t1[i] - eps <= r.estimated_cutoff_times[i]);
      CHECK(r.estimated_cutoff_times[i] <= r.t2[i] + eps);
      CHECK(r.window_widths[i] > 0.0);
      CHECK(r.t1[i] == r.t2[i] / 2.0);
    }
  }
  const CutoffReport v = analyze_cutoff(amplitude_damping_family(1.0, 1.0, 1.0), ladder);
  CHECK(v.verdict == Verdict::Cutoff);
  CHECK(v.gap == doctest::Approx(1.0));
  CHECK(std::abs(v.nu_hat - 1.0) < 0.05);
  const CutoffReport gs = analyze_cutoff(graph_state_family(1.0), ladder);
  CHECK(gs.verdict == Verdict::Cutoff);
  CHECK(std::abs(gs.nu_hat - 1.0) < 0.05);
}

TEST_CASE("scalable path trends in n") {
  const CutoffFamily f = amplitude_damping_family(1.0);
  double prev_upper = 1.0;
  for (double n : {1e4, 1e5, 1e6, 1e8, 1e12}) {
    const double tn = std::log(n);
    const CutoffCurve c = cutoff_curve(f, n, {0.5 * tn, 2.0 * tn});
    CHECK(c.points[0].eta_lower > 0.99);
    CHECK(c.points[1].eta_upper <= 0.011);
    CHECK(c.points[1].eta_upper < prev_upper);
    prev_upper = c.points[1].eta_upper;
  }
}

TEST_CASE("classification is deterministic and validates the ladder") {
  const CutoffFamily f = amplitude_damping_family(1.0);
  CutoffOptions o;
  o.grid_points = 500;
  CutoffReport a = analyze_cutoff(f, {1e3, 1e4, 1e6}, o);
  const CutoffReport b = analyze_cutoff(f, {1e6, 1e3, 1e4}, o);
  CHECK(a.nu_hat == b.nu_hat);
  CHECK(a.summary == b.summary);
  CHECK(classify(a, o) == a.verdict);
  CHECK_THROWS_AS(analyze_cutoff(f, {1e3, 1e4}, o), DomainError);
  CHECK_THROWS_AS(analyze_cutoff(f, {1e3, 2e3, 5e4}, o), DomainError);
}

TEST_CASE("classify falls back to the pre-cutoff window") {
  CutoffReport r;
  r.n_values = {1e2, 1e3, 1e4};
  r.c_probe = {0.8, 1.2};
  for (double n : r.n_values) {
    const PrecutoffTimes pt = precutoff_times(0.5, n);
    r.t1.push_back(pt.t1);
    r.t2.push_back(pt.t2);
    r.estimated_cutoff_times.push_back(1.5 * pt.t1);
    // Smooth transition: no sharpening with n.
    r.probes.push_back({{0.0, 0.7, 1.0}, {0.0, 0.3, 1.0}});
  }
  CHECK(classify(r) == Verdict::PreCutoff);
  r.estimated_cutoff_times[0] = 10.0 * r.t2[0];
  CHECK(classify(r) == Verdict::Inconclusive);
}

TEST_CASE("defective family reports its Jordan index") {
  const CutoffFamily f = CutoffFamily::pure_fixpoint(cascade_model(1.0), ket_bra(3, 2, 2), "cascade");
  CHECK(f.jordan_index() == 2);
  CHECK(f.nu_bar() == doctest::Approx(1.0).epsilon(1e-8));
  CutoffOptions o;
  o.grid_points = 800;
  const CutoffReport r = analyze_cutoff(f, {1e3, 1e4, 1e6}, o);
  CHECK(r.jordan_index == 2);
  CHECK(r.summary.find("J=2") != std::string::npos);
  CHECK(r.nu_hat > 0.0);
}

TEST_CASE("separable family crosses over near ln n / (2 gap)") {
  const CutoffFamily f = depolarizing_family(2, 1.0);
  CHECK_FALSE(f.has_pure_fixpoint());
  CutoffOptions o;
  o.grid_points = 40;
  o.curve.restarts = 4;
  const CutoffReport r = analyze_cutoff(f, {1e3, 1e4, 1e6}, o);
  CHECK(r.verdict == Verdict::Cutoff);
  CHECK(std::abs(r.nu_hat / (2.0 * r.gap) - 1.0) < 0.1);
}

TEST_CASE("curve path selection errors") {
  const CutoffFamily f = amplitude_damping_family(1.0);
  CurveConfig sep;
  sep.method = CurveMethod::Separable;
  CHECK_THROWS_AS(cutoff_curve(f, 10.0, {1.0}, sep), DomainError);
  CurveConfig bf;
  bf.method = CurveMethod::BruteForce;
  CHECK_THROWS_AS(cutoff_curve(f, 2.5, {1.0}, bf), DomainError);
  CHECK_THROWS_AS(cutoff_curve(f, 10.0, {}), DomainError);
  CHECK_THROWS_AS(cutoff_curve(depolarizing_family(2, 1.0), 10.0, {1.0}, CurveConfig{CurveMethod::Scalable, 4, 0}),
                  DomainError);
}
