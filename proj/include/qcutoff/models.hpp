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

// Model zoo and model files.
//
// Multi-site operators use site 0 as the leftmost tensor factor.

#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "qcutoff/liouville.hpp"
#include "qcutoff/matcore.hpp"

namespace qcutoff {

// Qubit decay sqrt(gamma)|0><1| with optional dephasing operators
// sqrt(alpha)|0><0| and sqrt(beta)|1><1|.
LindbladModel amplitude_damping_model(double gamma, double alpha = 0.0, double beta = 0.0);

// Generator rate * (tr(rho) 1/d - rho).
LindbladModel depolarizing_model(Eigen::Index dim, double rate);

// Three-level cascade 0 -> 1 -> 2 at rate a with dephasing; its gap a carries
// a Jordan block of size 2.
LindbladModel cascade_model(double a);

struct GraphSpec {
  int n_vertices = 1;
  std::vector<std::pair<int, int>> edges;
  double gamma = 1.0;

  // Throws ModelError on self-loops, duplicates, bad indices or gamma <= 0.
  void validate() const;
  std::vector<int> neighbors(int k) const;
  int max_degree() const;
};

GraphSpec path_graph(int n, double gamma = 1.0);
GraphSpec star_graph(int n, double gamma = 1.0);

inline constexpr int kMaxGraphQubits = 6;

// S_k = X_k prod_{j in nbhd(k)} Z_j.
CMatrix graph_stabilizer(const GraphSpec& g, int k);

// L_k = sqrt(gamma) Z_k (1 - S_k) / 2 for every vertex k.
LindbladModel graph_state_model(const GraphSpec& g);

// (prod_edges CZ) H^{(x)n}: column i is the graph-basis vector |Phi_i>.
CMatrix graph_basis_unitary(const GraphSpec& g);

// |Phi_{0...0}>.
CVector graph_state_vector(const GraphSpec& g);

// Random Hamiltonian and jump operators plus a depolarizing floor at 0.05
// times the largest jump rate. Throws NumericalError if no primitive
// instance is found within the retry budget.
LindbladModel random_primitive_liouvillian(Eigen::Index dim, std::uint64_t seed);

struct AmplitudeDampingParams {
  double gamma = 1.0;
  double alpha = 0.0;
  double beta = 0.0;
};

struct DepolarizingParams {
  Eigen::Index dim = 2;
  double rate = 1.0;
};

using ModelParams = std::variant<AmplitudeDampingParams, GraphSpec, DepolarizingParams, LindbladModel>;

struct ModelSpec {
  std::string label;
  ModelParams params;

  std::string kind() const;
};

inline constexpr int kModelSchemaVersion = 1;

LindbladModel to_lindblad(const ModelSpec& spec);

ModelSpec parse_model(const std::string& text);
std::string serialize_model(const ModelSpec& spec);

ModelSpec load_model(const std::string& path);
void save_model(const ModelSpec& spec, const std::string& path);

}  // namespace qcutoff
