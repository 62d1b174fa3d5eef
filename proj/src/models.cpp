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

#include "qcutoff/models.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "qcutoff/error.hpp"
#include "qcutoff/random.hpp"
#include "qcutoff/spectral.hpp"

namespace qcutoff {

namespace {

using nlohmann::json;

// op acting on qubit `site` of an n-qubit register.
CMatrix on_site(const CMatrix& op, int site, int n) {
  const Eigen::Index left = Eigen::Index(1) << site;
  const Eigen::Index right = Eigen::Index(1) << (n - site - 1);
  return kron(kron(identity(left), op), identity(right));
}

void require_graph_size(const GraphSpec& g) {
  g.validate();
  if (g.n_vertices > kMaxGraphQubits) {
    throw CapExceeded("graph has " + std::to_string(g.n_vertices) +
                      " vertices; explicit matrices are limited to " +
                      std::to_string(kMaxGraphQubits));
  }
}

void require_rate(double v, const char* what, bool strict) {
  if (!std::isfinite(v) || (strict ? !(v > 0.0) : !(v >= 0.0))) {
    throw ModelError(std::string(what) + (strict ? " must be positive" : " must be nonnegative"));
  }
}

// JSON helpers; every failure names the offending field path.

const json& field(const json& obj, const std::string& key, const std::string& path) {
  if (!obj.is_object()) throw SchemaError(path, "expected an object");
  const auto it = obj.find(key);
  if (it == obj.end()) throw SchemaError(path + "." + key, "missing field");
  return *it;
}

double as_number(const json& j, const std::string& path) {
  if (!j.is_number()) throw SchemaError(path, "expected a number");
  return j.get<double>();
}

long long as_integer(const json& j, const std::string& path) {
  if (!j.is_number_integer()) throw SchemaError(path, "expected an integer");
  return j.get<long long>();
}

cplx as_complex(const json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2) throw SchemaError(path, "expected a [re, im] pair");
  return {as_number(j[0], path + "[0]"), as_number(j[1], path + "[1]")};
}

CMatrix as_matrix(const json& j, Eigen::Index dim, const std::string& path) {
  if (!j.is_array()) throw SchemaError(path, "expected an array of rows");
  if (static_cast<Eigen::Index>(j.size()) != dim) {
    throw ShapeError(path + ": expected " + std::to_string(dim) + " rows, got " +
                     std::to_string(j.size()));
  }
  CMatrix m(dim, dim);
  for (Eigen::Index r = 0; r < dim; ++r) {
    const std::string rp = path + "[" + std::to_string(r) + "]";
    const json& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array()) throw SchemaError(rp, "expected an array of entries");
    if (static_cast<Eigen::Index>(row.size()) != dim) {
      throw ShapeError(rp + ": expected " + std::to_string(dim) + " entries, got " +
                       std::to_string(row.size()));
    }
    for (Eigen::Index c = 0; c < dim; ++c) {
      m(r, c) = as_complex(row[static_cast<std::size_t>(c)], rp + "[" + std::to_string(c) + "]");
    }
  }
  return m;
}

json matrix_json(const CMatrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

ModelParams parse_params(const std::string& kind, const json& p) {
  const std::string base = "parameters";
  if (!p.is_object()) throw SchemaError(base, "expected an object");
  if (kind == "amplitude_damping") {
    AmplitudeDampingParams a;
    a.gamma = as_number(field(p, "gamma", base), base + ".gamma");
    if (p.contains("alpha")) a.alpha = as_number(p["alpha"], base + ".alpha");
    if (p.contains("beta")) a.beta = as_number(p["beta"], base + ".beta");
    return a;
  }
  if (kind == "depolarizing") {
    DepolarizingParams d;
    d.dim = as_integer(field(p, "dim", base), base + ".dim");
    d.rate = as_number(field(p, "rate", base), base + ".rate");
    return d;
  }
  if (kind == "graph_state") {
    GraphSpec g;
    g.n_vertices = static_cast<int>(as_integer(field(p, "n_vertices", base), base + ".n_vertices"));
    g.gamma = as_number(field(p, "gamma", base), base + ".gamma");
    const json& edges = field(p, "edges", base);
    if (!edges.is_array()) throw SchemaError(base + ".edges", "expected an array of pairs");
    for (std::size_t i = 0; i < edges.size(); ++i) {
      const std::string ep = base + ".edges[" + std::to_string(i) + "]";
      if (!edges[i].is_array() || edges[i].size() != 2) throw SchemaError(ep, "expected a vertex pair");
      g.edges.emplace_back(static_cast<int>(as_integer(edges[i][0], ep + "[0]")),
                           static_cast<int>(as_integer(edges[i][1], ep + "[1]")));
    }
    return g;
  }
  if (kind == "custom") {
    LindbladModel m;
    const long long dim = as_integer(field(p, "dim", base), base + ".dim");
    if (dim < 1) throw SchemaError(base + ".dim", "must be positive");
    m.dim = dim;
    if (p.contains("hamiltonian") && !p["hamiltonian"].is_null()) {
      m.hamiltonian = as_matrix(p["hamiltonian"], m.dim, base + ".hamiltonian");
    }
    const json& ops = field(p, "lindblad_ops", base);
    if (!ops.is_array()) throw SchemaError(base + ".lindblad_ops", "expected an array of matrices");
    for (std::size_t i = 0; i < ops.size(); ++i) {
      m.lindblad_ops.push_back(
          as_matrix(ops[i], m.dim, base + ".lindblad_ops[" + std::to_string(i) + "]"));
    }
    return m;
  }
  throw SchemaError("kind", "unknown model kind '" + kind + "'");
}

}  // namespace

LindbladModel amplitude_damping_model(double gamma, double alpha, double beta) {
  require_rate(gamma, "gamma", true);
  require_rate(alpha, "alpha", false);
  require_rate(beta, "beta", false);
  LindbladModel m;
  m.dim = 2;
  m.label = "amplitude_damping";
  m.lindblad_ops.push_back(std::sqrt(gamma) * ket_bra(2, 0, 1));
  if (alpha > 0.0) m.lindblad_ops.push_back(std::sqrt(alpha) * ket_bra(2, 0, 0));
  if (beta > 0.0) m.lindblad_ops.push_back(std::sqrt(beta) * ket_bra(2, 1, 1));
  return m;
}

LindbladModel depolarizing_model(Eigen::Index dim, double rate) {
  if (dim < 2) throw ModelError("depolarizing_model: dim must be >= 2");
  require_rate(rate, "rate", true);
  LindbladModel m;
  m.dim = dim;
  m.label = "depolarizing";
  const double amp = std::sqrt(rate / static_cast<double>(dim));
  for (Eigen::Index i = 0; i < dim; ++i) {
    for (Eigen::Index j = 0; j < dim; ++j) m.lindblad_ops.push_back(amp * ket_bra(dim, i, j));
  }
  return m;
}

LindbladModel cascade_model(double a) {
  require_rate(a, "a", true);
  LindbladModel m;
  m.dim = 3;
  m.label = "cascade";
  m.lindblad_ops.push_back(std::sqrt(a) * ket_bra(3, 1, 0));
  m.lindblad_ops.push_back(std::sqrt(a) * ket_bra(3, 2, 1));
  for (Eigen::Index k = 0; k < 3; ++k) m.lindblad_ops.push_back(std::sqrt(2.0 * a) * ket_bra(3, k, k));
  return m;
}

void GraphSpec::validate() const {
  if (n_vertices < 1) throw ModelError("graph: n_vertices must be positive");
  require_rate(gamma, "graph gamma", true);
  std::set<std::pair<int, int>> seen;
  for (const auto& [a, b] : edges) {
    if (a < 0 || b < 0 || a >= n_vertices || b >= n_vertices) {
      throw ModelError("graph: edge (" + std::to_string(a) + "," + std::to_string(b) +
                       ") references a missing vertex");
    }
    if (a == b) throw ModelError("graph: self-loop at vertex " + std::to_string(a));
    if (!seen.insert(std::minmax(a, b)).second) {
      throw ModelError("graph: duplicate edge (" + std::to_string(a) + "," + std::to_string(b) + ")");
    }
  }
}

std::vector<int> GraphSpec::neighbors(int k) const {
  std::vector<int> out;
  for (const auto& [a, b] : edges) {
    if (a == k) out.push_back(b);
    if (b == k) out.push_back(a);
  }
  std::sort(out.begin(), out.end());
  return out;
}

int GraphSpec::max_degree() const {
  int best = 0;
  for (int k = 0; k < n_vertices; ++k) best = std::max(best, static_cast<int>(neighbors(k).size()));
  return best;
}

GraphSpec path_graph(int n, double gamma) {
  GraphSpec g;
  g.n_vertices = n;
  g.gamma = gamma;
  for (int k = 0; k + 1 < n; ++k) g.edges.emplace_back(k, k + 1);
  return g;
}

GraphSpec star_graph(int n, double gamma) {
  GraphSpec g;
  g.n_vertices = n;
  g.gamma = gamma;
  for (int k = 1; k < n; ++k) g.edges.emplace_back(0, k);
  return g;
}

CMatrix graph_stabilizer(const GraphSpec& g, int k) {
  require_graph_size(g);
  if (k < 0 || k >= g.n_vertices) throw DomainError("graph_stabilizer: vertex out of range");
  CMatrix s = on_site(pauli::x(), k, g.n_vertices);
  for (int j : g.neighbors(k)) s = s * on_site(pauli::z(), j, g.n_vertices);
  return s;
}

LindbladModel graph_state_model(const GraphSpec& g) {
  require_graph_size(g);
  const int n = g.n_vertices;
  const Eigen::Index dim = Eigen::Index(1) << n;
  LindbladModel m;
  m.dim = dim;
  m.label = "graph_state";
  for (int k = 0; k < n; ++k) {
    const CMatrix proj = 0.5 * (identity(dim) - graph_stabilizer(g, k));
    m.lindblad_ops.push_back(std::sqrt(g.gamma) * on_site(pauli::z(), k, n) * proj);
  }
  return m;
}

CMatrix graph_basis_unitary(const GraphSpec& g) {
  require_graph_size(g);
  const int n = g.n_vertices;
  const Eigen::Index dim = Eigen::Index(1) << n;
  CMatrix h(2, 2);
  h << 1.0, 1.0, 1.0, -1.0;
  h /= std::sqrt(2.0);
  CMatrix u = CMatrix::Identity(1, 1);
  for (int k = 0; k < n; ++k) u = kron(u, h);
  // Controlled-Z gates are diagonal: a sign for every edge with both ends set.
  for (Eigen::Index i = 0; i < dim; ++i) {
    int parity = 0;
    for (const auto& [a, b] : g.edges) {
      const bool ba = (i >> (n - 1 - a)) & 1;
      const bool bb = (i >> (n - 1 - b)) & 1;
      parity ^= static_cast<int>(ba && bb);
    }
    if (parity) u.row(i) *= -1.0;
  }
  return u;
}

CVector graph_state_vector(const GraphSpec& g) { return graph_basis_unitary(g).col(0); }

LindbladModel random_primitive_liouvillian(Eigen::Index dim, std::uint64_t seed) {
  if (dim < 2 || dim > 8) throw DomainError("random_primitive_liouvillian: dim must be in [2, 8]");
  constexpr int kRetries = 8;
  for (int attempt = 0; attempt < kRetries; ++attempt) {
    Rng rng(seed * 0x9E3779B97F4A7C15ULL + static_cast<std::uint64_t>(attempt));
    LindbladModel m;
    m.dim = dim;
    m.label = "random_primitive";
    m.hamiltonian = random_hermitian(dim, rng) / std::sqrt(static_cast<double>(dim));
    double max_rate = 0.0;
    for (int k = 0; k < 2; ++k) {
      const CMatrix op = ginibre(dim, dim, rng) / std::sqrt(static_cast<double>(dim));
      max_rate = std::max(max_rate, std::pow(operator_norm(op), 2));
      m.lindblad_ops.push_back(op);
    }
    const LindbladModel floor = depolarizing_model(dim, 0.05 * max_rate);
    m.lindblad_ops.insert(m.lindblad_ops.end(), floor.lindblad_ops.begin(), floor.lindblad_ops.end());
    try {
      if (is_primitive(build_liouvillian(m)).primitive) return m;
    } catch (const NumericalError&) {
    }
  }
  throw NumericalError("random_primitive_liouvillian: no primitive instance after " +
                       std::to_string(kRetries) + " attempts");
}

std::string ModelSpec::kind() const {
  struct Visitor {
    std::string operator()(const AmplitudeDampingParams&) const { return "amplitude_damping"; }
    std::string operator()(const GraphSpec&) const { return "graph_state"; }
    std::string operator()(const DepolarizingParams&) const { return "depolarizing"; }
    std::string operator()(const LindbladModel&) const { return "custom"; }
  };
  return std::visit(Visitor{}, params);
}

LindbladModel to_lindblad(const ModelSpec& spec) {
  struct Visitor {
    LindbladModel operator()(const AmplitudeDampingParams& p) const {
      return amplitude_damping_model(p.gamma, p.alpha, p.beta);
    }
    LindbladModel operator()(const GraphSpec& g) const { return graph_state_model(g); }
    LindbladModel operator()(const DepolarizingParams& p) const {
      return depolarizing_model(p.dim, p.rate);
    }
    LindbladModel operator()(const LindbladModel& m) const {
      m.validate();
      return m;
    }
  };
  LindbladModel m = std::visit(Visitor{}, spec.params);
  if (!spec.label.empty()) m.label = spec.label;
  return m;
}

ModelSpec parse_model(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw SchemaError("$", std::string("malformed document: ") + e.what());
  }
  if (!doc.is_object()) throw SchemaError("$", "expected an object");
  const long long version = as_integer(field(doc, "schema_version", "$"), "schema_version");
  if (version != kModelSchemaVersion) {
    throw SchemaError("schema_version", "unsupported version " + std::to_string(version));
  }
  const json& kind = field(doc, "kind", "$");
  if (!kind.is_string()) throw SchemaError("kind", "expected a string");
  ModelSpec spec;
  if (doc.contains("label")) {
    if (!doc["label"].is_string()) throw SchemaError("label", "expected a string");
    spec.label = doc["label"].get<std::string>();
  }
  spec.params = parse_params(kind.get<std::string>(), field(doc, "parameters", "$"));
  to_lindblad(spec);
  return spec;
}

std::string serialize_model(const ModelSpec& spec) {
  json doc;
  doc["schema_version"] = kModelSchemaVersion;
  doc["kind"] = spec.kind();
  doc["label"] = spec.label;
  json p = json::object();
  if (const auto* a = std::get_if<AmplitudeDampingParams>(&spec.params)) {
    p["gamma"] = a->gamma;
    p["alpha"] = a->alpha;
    p["beta"] = a->beta;
  } else if (const auto* g = std::get_if<GraphSpec>(&spec.params)) {
    p["n_vertices"] = g->n_vertices;
    p["gamma"] = g->gamma;
    json edges = json::array();
    for (const auto& [a, b] : g->edges) edges.push_back({a, b});
    p["edges"] = edges;
  } else if (const auto* d = std::get_if<DepolarizingParams>(&spec.params)) {
    p["dim"] = d->dim;
    p["rate"] = d->rate;
  } else {
    const auto& m = std::get<LindbladModel>(spec.params);
    p["dim"] = m.dim;
    if (m.hamiltonian) p["hamiltonian"] = matrix_json(*m.hamiltonian);
    json ops = json::array();
    for (const CMatrix& op : m.lindblad_ops) ops.push_back(matrix_json(op));
    p["lindblad_ops"] = ops;
  }
  doc["parameters"] = p;
  return doc.dump(2) + "\n";
}

ModelSpec load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ModelError("cannot open model file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_model(buf.str());
}

void save_model(const ModelSpec& spec, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ModelError("cannot write model file '" + path + "'");
  out << serialize_model(spec);
  if (!out) throw ModelError("write failed for '" + path + "'");
}

}  // namespace qcutoff
