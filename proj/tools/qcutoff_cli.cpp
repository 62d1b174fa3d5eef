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

// qcutoff: spectra, contraction curves and cutoff reports for GKLS models.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qcutoff/contraction.hpp"
#include "qcutoff/cutoff.hpp"
#include "qcutoff/error.hpp"
#include "qcutoff/liouville.hpp"
#include "qcutoff/metrics.hpp"
#include "qcutoff/models.hpp"
#include "qcutoff/spectral.hpp"

namespace {

using namespace qcutoff;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitModel = 2;
constexpr int kExitNumerical = 3;

class UsageError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct Config {
  std::string model_path;
  std::string kind;
  double gamma = 1.0;
  double alpha = 0.0;
  double beta = 0.0;
  std::string edges;
  int n_vertices = 0;
  int dim = 2;
  std::optional<double> t_start, t_stop;
  std::optional<int> t_points;
  std::string t_scale = "linear";
  std::string n_ladder;
  int restarts = 32;
  std::uint64_t seed = 0;
  double tol = 1e-9;
  int grid_points = 4000;
  std::string out;
  std::string format = "csv";
};

std::string num(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::vector<std::pair<int, int>> parse_edges(const std::string& text) {
  std::vector<std::pair<int, int>> edges;
  if (text.empty()) return edges;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto dash = item.find('-');
    if (dash == std::string::npos) throw UsageError("bad edge '" + item + "', expected a-b");
    try {
      edges.emplace_back(std::stoi(item.substr(0, dash)), std::stoi(item.substr(dash + 1)));
    } catch (const std::exception&) {
      throw UsageError("bad edge '" + item + "', expected a-b");
    }
  }
  return edges;
}

std::vector<double> parse_ladder(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const double v = std::stod(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      out.push_back(v);
    } catch (const std::exception&) {
      throw UsageError("bad n-ladder entry '" + item + "'");
    }
  }
  return out;
}

ModelSpec model_from_config(const Config& cfg) {
  if (!cfg.model_path.empty() && !cfg.kind.empty()) {
    throw UsageError("--model and --kind are mutually exclusive");
  }
  if (!cfg.model_path.empty()) return load_model(cfg.model_path);
  if (cfg.kind.empty()) throw UsageError("one of --model or --kind is required");
  ModelSpec spec;
  spec.label = cfg.kind;
  if (cfg.kind == "amplitude_damping") {
    spec.params = AmplitudeDampingParams{cfg.gamma, cfg.alpha, cfg.beta};
  } else if (cfg.kind == "depolarizing") {
    spec.params = DepolarizingParams{cfg.dim, cfg.gamma};
  } else if (cfg.kind == "graph_state") {
    GraphSpec g;
    g.gamma = cfg.gamma;
    g.edges = parse_edges(cfg.edges);
    int n = cfg.n_vertices;
    for (const auto& [a, b] : g.edges) n = std::max({n, a + 1, b + 1});
    g.n_vertices = std::max(n, 1);
    spec.params = g;
  } else {
    throw UsageError("unknown --kind '" + cfg.kind + "'");
  }
  to_lindblad(spec);
  return spec;
}

std::vector<double> make_grid(const Config& cfg, double start, double stop, int points) {
  start = cfg.t_start.value_or(start);
  stop = cfg.t_stop.value_or(stop);
  points = cfg.t_points.value_or(points);
  if (points < 1) throw UsageError("--t-points must be positive");
  if (stop < start) throw UsageError("--t-stop must not be below --t-start");
  std::vector<double> grid;
  if (cfg.t_scale == "linear") {
    for (int i = 0; i < points; ++i) {
      grid.push_back(points == 1 ? start : start + (stop - start) * i / (points - 1));
    }
  } else if (cfg.t_scale == "log") {
    if (!(start > 0.0)) throw UsageError("--t-scale log needs --t-start > 0");
    for (int i = 0; i < points; ++i) {
      grid.push_back(points == 1 ? start
                                 : start * std::pow(stop / start, static_cast<double>(i) / (points - 1)));
    }
  } else {
    throw UsageError("--t-scale must be linear or log");
  }
  return grid;
}

void emit(const Config& cfg, const std::string& text) {
  if (cfg.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(cfg.out);
  if (!f) throw UsageError("cannot write '" + cfg.out + "'");
  f << text;
}

json complex_vector_json(const CVector& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back({v(i).real(), v(i).imag()});
  return a;
}

std::string cmd_spectrum(const Config& cfg) {
  const ModelSpec spec = model_from_config(cfg);
  const Superoperator l = build_liouvillian(to_lindblad(spec));
  SpectralOptions opts;
  opts.tol = cfg.tol;
  const SpectralReport rep = spectral_report(l, opts);
  if (cfg.format == "json") {
    json j;
    j["kind"] = spec.kind();
    j["dim"] = l.dim;
    j["gap"] = rep.gap;
    j["primitive"] = rep.primitive;
    j["jordan_index"] = rep.jordan_index;
    j["kappa"] = std::isfinite(rep.kappa) ? json(rep.kappa) : json(nullptr);
    j["kappa_flagged"] = rep.kappa_flagged;
    j["peripheral"] = rep.peripheral;
    j["eigenvalues"] = complex_vector_json(rep.eigenvalues);
    return j.dump(2) + "\n";
  }
  std::ostringstream os;
  os << "key,value\n";
  os << "kind," << spec.kind() << "\n";
  os << "dim," << l.dim << "\n";
  os << "gap," << num(rep.gap) << "\n";
  os << "primitive," << (rep.primitive ? "true" : "false") << "\n";
  os << "jordan_index," << rep.jordan_index << "\n";
  os << "kappa," << num(rep.kappa) << "\n";
  os << "kappa_flagged," << (rep.kappa_flagged ? "true" : "false") << "\n";
  os << "peripheral_count," << rep.peripheral.size() << "\n";
  for (Eigen::Index i = 0; i < rep.eigenvalues.size(); ++i) {
    os << "eigenvalue," << num(rep.eigenvalues(i).real()) << "," << num(rep.eigenvalues(i).imag())
       << "\n";
  }
  return os.str();
}

std::string cmd_contraction(const Config& cfg) {
  const ModelSpec spec = model_from_config(cfg);
  const Superoperator l = build_liouvillian(to_lindblad(spec));
  const std::vector<double> grid = make_grid(cfg, 0.0, 5.0, 11);
  std::optional<double> ad_gamma;
  if (const auto* a = std::get_if<AmplitudeDampingParams>(&spec.params)) {
    if (a->alpha == 0.0 && a->beta == 0.0) ad_gamma = a->gamma;
  }
  std::ostringstream os;
  json rows = json::array();
  os << "t,eta_lower,eta_upper,closed_form,method\n";
  for (double t : grid) {
    const ContractionEstimate e = eta_tr_estimate(l, t, cfg.restarts, cfg.seed);
    const std::optional<double> cf =
        ad_gamma ? std::optional<double>(eta_ad_closed_form(*ad_gamma, t)) : std::nullopt;
    os << num(t) << "," << num(e.eta_lower) << "," << num(e.eta_upper) << ","
       << (cf ? num(*cf) : "") << "," << e.method << "\n";
    json r;
    r["t"] = t;
    r["eta_lower"] = e.eta_lower;
    r["eta_upper"] = e.eta_upper;
    r["closed_form"] = cf ? json(*cf) : json(nullptr);
    r["method"] = e.method;
    r["restarts"] = e.restarts_used;
    r["seed"] = e.seed;
    r["converged"] = e.converged;
    r["witness"] = complex_vector_json(e.witness);
    rows.push_back(std::move(r));
  }
  if (cfg.format == "json") {
    json j;
    j["kind"] = spec.kind();
    j["rows"] = rows;
    return j.dump(2) + "\n";
  }
  return os.str();
}

std::optional<CMatrix> pure_stationary_state(const Superoperator& l) {
  const CMatrix kernel = null_space(l.matrix, 1e-8 * std::max(1.0, operator_norm(l.matrix)));
  if (kernel.cols() != 1) return std::nullopt;
  CMatrix rho = unvectorize(kernel.col(0), l.dim);
  rho /= rho.trace();
  rho = hermitian_part(rho);
  if (std::abs((rho * rho).trace().real() - 1.0) > 1e-8) return std::nullopt;
  return rho;
}

CutoffFamily family_from_spec(const ModelSpec& spec) {
  if (const auto* a = std::get_if<AmplitudeDampingParams>(&spec.params)) {
    return amplitude_damping_family(a->gamma, a->alpha, a->beta);
  }
  if (const auto* g = std::get_if<GraphSpec>(&spec.params)) return graph_state_family(g->gamma);
  if (const auto* d = std::get_if<DepolarizingParams>(&spec.params)) {
    return depolarizing_family(d->dim, d->rate);
  }
  const LindbladModel m = to_lindblad(spec);
  const Superoperator l = build_liouvillian(m);
  if (const auto psi = pure_stationary_state(l)) {
    return CutoffFamily::pure_fixpoint(m, *psi, spec.label.empty() ? "custom" : spec.label);
  }
  return CutoffFamily::separable(m, spec.label.empty() ? "custom" : spec.label);
}

std::string cmd_cutoff(const Config& cfg) {
  if (cfg.n_ladder.empty()) throw UsageError("cutoff requires --n-ladder");
  const std::vector<double> ladder = parse_ladder(cfg.n_ladder);
  const ModelSpec spec = model_from_config(cfg);
  const CutoffFamily family = family_from_spec(spec);
  CutoffOptions opts;
  opts.grid_points = cfg.grid_points;
  opts.curve.restarts = cfg.restarts;
  opts.curve.seed = cfg.seed;
  const CutoffReport rep = analyze_cutoff(family, ladder, opts);
  const std::vector<double> c_grid = make_grid(cfg, 0.0, 2.0, 21);

  json rows = json::array();
  std::ostringstream os;
  os << "n,t,eta_lower,eta_upper,t1,t2,c\n";
  CurveConfig cc = opts.curve;
  for (std::size_t i = 0; i < rep.n_values.size(); ++i) {
    std::vector<double> times;
    for (double c : c_grid) times.push_back(c * rep.estimated_cutoff_times[i]);
    cc.method = rep.curves[i].method;
    const CutoffCurve curve = cutoff_curve(family, rep.n_values[i], times, cc);
    for (std::size_t k = 0; k < c_grid.size(); ++k) {
      const CurvePoint& p = curve.points[k];
      os << num(rep.n_values[i]) << "," << num(p.t) << "," << num(p.eta_lower) << ","
         << num(p.eta_upper) << "," << num(rep.t1[i]) << "," << num(rep.t2[i]) << ","
         << num(c_grid[k]) << "\n";
      rows.push_back({{"n", rep.n_values[i]}, {"t", p.t}, {"eta_lower", p.eta_lower},
                      {"eta_upper", p.eta_upper}, {"t1", rep.t1[i]}, {"t2", rep.t2[i]},
                      {"c", c_grid[k]}});
    }
  }

  if (cfg.format == "json") {
    json j;
    j["family"] = rep.family;
    j["rows"] = rows;
    j["n_values"] = rep.n_values;
    j["t1"] = rep.t1;
    j["t2"] = rep.t2;
    j["estimated_cutoff_times"] = rep.estimated_cutoff_times;
    j["window_widths"] = rep.window_widths;
    j["verdict"] = to_string(rep.verdict);
    j["nu_hat"] = rep.nu_hat;
    j["nu_ratios"] = rep.nu_ratios;
    j["gap"] = rep.gap;
    j["jordan_index"] = rep.jordan_index;
    j["sandwich_holds"] = rep.sandwich_holds;
    j["certified_upper"] = rep.certified_upper;
    j["summary"] = rep.summary;
    return j.dump(2) + "\n";
  }
  os << "# family," << rep.family << "\n";
  os << "# verdict," << to_string(rep.verdict) << "\n";
  os << "# nu_hat," << num(rep.nu_hat) << "\n";
  os << "# gap," << num(rep.gap) << "\n";
  os << "# jordan_index," << rep.jordan_index << "\n";
  os << "# sandwich_holds," << (rep.sandwich_holds ? "true" : "false") << "\n";
  os << "# certified_upper," << (rep.certified_upper ? "true" : "false") << "\n";
  for (std::size_t i = 0; i < rep.n_values.size(); ++i) {
    os << "# t_hat," << num(rep.n_values[i]) << "," << num(rep.estimated_cutoff_times[i]) << ","
       << num(rep.nu_ratios[i]) << "," << num(rep.window_widths[i]) << "\n";
  }
  os << "# summary," << rep.summary << "\n";
  return os.str();
}

std::string cmd_model_validate(const Config& cfg) {
  const ModelSpec spec = model_from_config(cfg);
  const LindbladModel m = to_lindblad(spec);
  const Superoperator l = build_liouvillian(m);
  const double defect = trace_preservation_defect(l);
  if (cfg.format == "json") {
    json j{{"status", "ok"}, {"kind", spec.kind()}, {"label", spec.label}, {"dim", m.dim},
           {"lindblad_ops", m.lindblad_ops.size()}, {"trace_defect", defect}};
    return j.dump(2) + "\n";
  }
  std::ostringstream os;
  os << "key,value\nstatus,ok\nkind," << spec.kind() << "\nlabel," << spec.label << "\ndim,"
     << m.dim << "\nlindblad_ops," << m.lindblad_ops.size() << "\ntrace_defect," << num(defect)
     << "\n";
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectra, contraction coefficients and cutoff reports for GKLS semigroups"};
  app.require_subcommand(1, 1);
  Config cfg;

  auto add_model = [&](CLI::App* sub) {
    sub->add_option("--model", cfg.model_path, "Model file (JSON)");
    sub->add_option("--kind", cfg.kind, "amplitude_damping | graph_state | depolarizing");
    sub->add_option("--gamma", cfg.gamma, "Decay rate (depolarizing: total rate)");
    sub->add_option("--alpha", cfg.alpha, "Dephasing rate on |0>");
    sub->add_option("--beta", cfg.beta, "Dephasing rate on |1>");
    sub->add_option("--edges", cfg.edges, "Graph edges, e.g. 0-1,1-2");
    sub->add_option("--n-vertices", cfg.n_vertices, "Graph vertex count");
    sub->add_option("--dim", cfg.dim, "Depolarizing dimension");
    sub->add_option("--tol", cfg.tol, "Spectral tolerance");
    sub->add_option("--out", cfg.out, "Output path (default stdout)");
    sub->add_option("--format", cfg.format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
  };
  auto add_grid = [&](CLI::App* sub) {
    sub->add_option("--t-start", cfg.t_start, "Grid start");
    sub->add_option("--t-stop", cfg.t_stop, "Grid stop");
    sub->add_option("--t-points", cfg.t_points, "Grid points");
    sub->add_option("--t-scale", cfg.t_scale, "linear | log");
    sub->add_option("--restarts", cfg.restarts, "Optimizer restarts");
    sub->add_option("--seed", cfg.seed, "Seed for stochastic estimators");
  };

  CLI::App* spectrum = app.add_subcommand("spectrum", "Eigenvalues, gap, primitivity, J, kappa");
  add_model(spectrum);
  CLI::App* contraction = app.add_subcommand("contraction", "Trace-norm contraction curve");
  add_model(contraction);
  add_grid(contraction);
  CLI::App* cutoff = app.add_subcommand(
      "cutoff", "Cutoff report over an n ladder; the t grid is the grid of c = t / t_hat");
  add_model(cutoff);
  add_grid(cutoff);
  cutoff->add_option("--n-ladder", cfg.n_ladder, "Comma-separated n values, e.g. 1e3,1e4,1e6");
  cutoff->add_option("--grid-points", cfg.grid_points, "Time grid used to locate crossings");
  CLI::App* validate = app.add_subcommand("model-validate", "Parse and validate a model");
  add_model(validate);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    std::string text;
    if (spectrum->parsed()) text = cmd_spectrum(cfg);
    if (contraction->parsed()) text = cmd_contraction(cfg);
    if (cutoff->parsed()) text = cmd_cutoff(cfg);
    if (validate->parsed()) text = cmd_model_validate(cfg);
    emit(cfg, text);
    return kExitOk;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DomainError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ModelError& e) {
    std::cerr << "model error: " << e.what() << "\n";
    return kExitModel;
  } catch (const ShapeError& e) {
    std::cerr << "model error: " << e.what() << "\n";
    return kExitModel;
  } catch (const NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const CapExceeded& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
}
