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

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>

#include "qcutoff/error.hpp"
#include "qcutoff/liouville.hpp"
#include "qcutoff/models.hpp"
#include "qcutoff/spectral.hpp"

using namespace qcutoff;

namespace {

CMatrix hadamard() {
  CMatrix h(2, 2);
  h << 1.0, 1.0, 1.0, -1.0;
  return h / std::sqrt(2.0);
}

std::vector<double> sorted_re(const CVector& v) {
  std::vector<double> out;
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i).real());
  std::sort(out.begin(), out.end());
  return out;
}

double gap_of(const LindbladModel& m) {
  SpectralOptions o;
  o.compute_jordan = false;
  o.compute_kappa = false;
  o.compute_primitivity = false;
  return spectral_report(build_liouvillian(m), o).gap;
}

std::string replace_once(std::string s, const std::string& from, const std::string& to) {
  const auto pos = s.find(from);
  REQUIRE(pos != std::string::npos);
  return s.replace(pos, from.size(), to);
}

}  // namespace

TEST_CASE("amplitude damping models") {
  CHECK(gap_of(amplitude_damping_model(1.0)) == doctest::Approx(0.5));
  CHECK(gap_of(amplitude_damping_model(1.0, 1.0, 1.0)) == doctest::Approx(1.0));
  for (auto [a, b] : {std::pair{0.0, 0.0}, {1.0, 1.0}, {0.2, 0.7}}) {
    const Superoperator l = build_liouvillian(amplitude_damping_model(1.3, a, b));
    CHECK(l.apply(ket_bra(2, 0, 0)).norm() < 1e-14);
    CHECK(trace_preservation_defect(l) < 1e-14);
  }
  CHECK_THROWS_AS(amplitude_damping_model(0.0), ModelError);
  CHECK_THROWS_AS(amplitude_damping_model(1.0, -0.1), ModelError);
}

TEST_CASE("single-vertex graph operator") {
  GraphSpec g;
  g.n_vertices = 1;
  g.gamma = 2.0;
  const LindbladModel m = graph_state_model(g);
  REQUIRE(m.lindblad_ops.size() == 1);
  CVector plus(2), minus(2);
  plus << 1.0, 1.0;
  minus << 1.0, -1.0;
  plus /= std::sqrt(2.0);
  minus /= std::sqrt(2.0);
  CHECK((m.lindblad_ops[0] * plus).norm() < 1e-15);
  CHECK((m.lindblad_ops[0] * minus - std::sqrt(2.0) * plus).norm() < 1e-15);
  CHECK((graph_stabilizer(g, 0) - pauli::x()).norm() == 0.0);
  const CMatrix u = graph_basis_unitary(g);
  CHECK((u - hadamard()).norm() < 1e-15);
}

TEST_CASE("two-vertex path stabilizers") {
  const GraphSpec g = path_graph(2);
  CHECK((graph_stabilizer(g, 0) - kron(pauli::x(), pauli::z())).norm() == 0.0);
  CHECK((graph_stabilizer(g, 1) - kron(pauli::z(), pauli::x())).norm() == 0.0);
}

TEST_CASE("two-vertex graph spectrum is the pairwise sum of the qubit spectrum") {
  const Superoperator l = build_liouvillian(graph_state_model(path_graph(2, 1.0)));
  const std::vector<double> got = sorted_re(eig(l.matrix).eigenvalues);
  const std::vector<double> site{0.0, -0.5, -0.5, -1.0};
  std::vector<double> want;
  for (double a : site)
    for (double b : site) want.push_back(a + b);
  std::sort(want.begin(), want.end());
  for (std::size_t i = 0; i < want.size(); ++i) CHECK(got[i] == doctest::Approx(want[i]).epsilon(1e-9));
}

TEST_CASE("graph basis diagonalizes the stabilizers") {
  for (const GraphSpec& g : {path_graph(3), star_graph(3), GraphSpec{3, {{0, 1}, {1, 2}, {0, 2}}, 1.0}}) {
    const CMatrix u = graph_basis_unitary(g);
    CHECK((u.adjoint() * u - identity(8)).norm() < 1e-13);
    for (int k = 0; k < 3; ++k) {
      const CMatrix s = graph_stabilizer(g, k);
      for (Eigen::Index i = 0; i < 8; ++i) {
        const double sign = ((i >> (2 - k)) & 1) ? -1.0 : 1.0;
        CHECK((s * u.col(i) - sign * u.col(i)).norm() < 1e-13);
      }
    }
    const CVector phi = graph_state_vector(g);
    for (int k = 0; k < 3; ++k) CHECK((graph_stabilizer(g, k) * phi - phi).norm() < 1e-13);
  }
}

TEST_CASE("conjugation by the graph basis gives tensor-sum amplitude damping") {
  for (const GraphSpec& g : {path_graph(2, 0.7), path_graph(3, 1.0), star_graph(3, 1.3)}) {
    const Superoperator lg = build_liouvillian(graph_state_model(g));
    const Superoperator uhat = unitary_conjugation(graph_basis_unitary(g));
    const CMatrix conj = uhat.matrix.adjoint() * lg.matrix * uhat.matrix;
    const Superoperator ad = tensor_sum(TensorSumModel{amplitude_damping_model(g.gamma), g.n_vertices, {}});
    CHECK(operator_norm(conj - ad.matrix) < 1e-9);
  }
}

TEST_CASE("graph Liouvillians: gap, kernel and trace preservation") {
  for (int n : {2, 3, 4}) {
    for (const GraphSpec& g : {path_graph(n, 1.0), star_graph(n, 1.0)}) {
      const LindbladModel m = graph_state_model(g);
      CHECK(m.lindblad_ops.size() == static_cast<std::size_t>(n));
      const Superoperator l = build_liouvillian(m);
      CHECK(trace_preservation_defect(l) < 1e-12);
      CHECK(gap_of(m) == doctest::Approx(0.5).epsilon(1e-8));
      const PrimitivityResult p = is_primitive(l);
      CHECK(p.kernel_dim == 1);
      const CVector phi = graph_state_vector(g);
      CHECK((p.stationary_state - phi * phi.adjoint()).norm() < 1e-8);
    }
  }
}

TEST_CASE("graph validation") {
  CHECK(star_graph(4).max_degree() == 3);
  CHECK(path_graph(4).max_degree() == 2);
  CHECK(path_graph(4).neighbors(1) == std::vector<int>{0, 2});
  CHECK_THROWS_AS(graph_state_model(GraphSpec{2, {{0, 0}}, 1.0}), ModelError);
  CHECK_THROWS_AS(graph_state_model(GraphSpec{2, {{0, 1}, {1, 0}}, 1.0}), ModelError);
  CHECK_THROWS_AS(graph_state_model(GraphSpec{2, {{0, 2}}, 1.0}), ModelError);
  CHECK_THROWS_AS(graph_state_model(GraphSpec{2, {}, 0.0}), ModelError);
  CHECK_THROWS_AS(graph_basis_unitary(path_graph(7)), CapExceeded);
}

TEST_CASE("random primitive generators") {
  for (Eigen::Index d : {2, 3, 4}) {
    for (std::uint64_t seed : {0u, 1u, 2u}) {
      const LindbladModel m = random_primitive_liouvillian(d, seed);
      const Superoperator l = build_liouvillian(m);
      CHECK(is_primitive(l).primitive);
      CHECK(trace_preservation_defect(l) < 1e-12);
      const CVector ev = eig(l.matrix).eigenvalues;
      for (Eigen::Index i = 0; i < ev.size(); ++i) {
        CHECK(ev(i).real() <= 1e-10);
        double best = 1e9;
        for (Eigen::Index j = 0; j < ev.size(); ++j) best = std::min(best, std::abs(ev(j) - std::conj(ev(i))));
        CHECK(best < 1e-8);
      }
    }
  }
  CHECK_THROWS_AS(random_primitive_liouvillian(9, 0), DomainError);
  const LindbladModel a = random_primitive_liouvillian(3, 42);
  const LindbladModel b = random_primitive_liouvillian(3, 42);
  CHECK((a.lindblad_ops[0] - b.lindblad_ops[0]).norm() == 0.0);
}

TEST_CASE("depolarizing and cascade models") {
  CHECK(trace_preservation_defect(build_liouvillian(depolarizing_model(3, 0.5))) < 1e-14);
  CHECK(trace_preservation_defect(build_liouvillian(cascade_model(1.0))) < 1e-14);
  CHECK(build_liouvillian(cascade_model(1.0)).apply(ket_bra(3, 2, 2)).norm() < 1e-14);
  CHECK_THROWS_AS(depolarizing_model(1, 1.0), ModelError);
}

TEST_CASE("model files round-trip") {
  const auto dir = std::filesystem::temp_directory_path();
  const std::string path = (dir / "qcutoff_model_roundtrip.json").string();

  ModelSpec ad{"variant", AmplitudeDampingParams{1.0, 0.25, 0.25}};
  save_model(ad, path);
  const ModelSpec back = load_model(path);
  CHECK(back.label == "variant");
  const auto& p = std::get<AmplitudeDampingParams>(back.params);
  CHECK(p.gamma == 1.0);
  CHECK(p.alpha == 0.25);
  CHECK(p.beta == 0.25);
  CHECK(serialize_model(back) == serialize_model(ad));

  ModelSpec custom{"explicit", to_lindblad(ad)};
  std::get<LindbladModel>(custom.params).hamiltonian = 0.3 * pauli::y() + 0.1 * pauli::z();
  save_model(custom, path);
  const ModelSpec cb = load_model(path);
  const auto& m0 = std::get<LindbladModel>(custom.params);
  const auto& m1 = std::get<LindbladModel>(cb.params);
  REQUIRE(m1.lindblad_ops.size() == m0.lindblad_ops.size());
  for (std::size_t i = 0; i < m0.lindblad_ops.size(); ++i) CHECK(m1.lindblad_ops[i] == m0.lindblad_ops[i]);
  CHECK(*m1.hamiltonian == *m0.hamiltonian);

  ModelSpec graph{"g", path_graph(3, 0.5)};
  CHECK(serialize_model(parse_model(serialize_model(graph))) == serialize_model(graph));
  ModelSpec dep{"d", DepolarizingParams{3, 0.4}};
  CHECK(serialize_model(parse_model(serialize_model(dep))) == serialize_model(dep));
  std::filesystem::remove(path);
}

TEST_CASE("explicit custom model reproduces the dephasing-variant gap") {
  ModelSpec spec{"custom", amplitude_damping_model(1.0, 0.25, 0.25)};
  const ModelSpec loaded = parse_model(serialize_model(spec));
  CHECK(loaded.kind() == "custom");
  CHECK(gap_of(to_lindblad(loaded)) == doctest::Approx(0.75).epsilon(1e-10));
}

TEST_CASE("model file errors name the field") {
  const std::string good = serialize_model(ModelSpec{"c", amplitude_damping_model(1.0)});
  try {
    parse_model(replace_once(good, "[\n            1.0,\n            0.0\n          ]", "[1.0]"));
    FAIL("expected SchemaError");
  } catch (const SchemaError& e) {
    CHECK(e.path().rfind("parameters.lindblad_ops[0]", 0) == 0);
  }
  try {
    parse_model(replace_once(good, "\"custom\"", "\"bogus\""));
    FAIL("expected SchemaError");
  } catch (const SchemaError& e) {
    CHECK(e.path() == "kind");
  }
  CHECK_THROWS_AS(parse_model("{not json"), SchemaError);
  CHECK_THROWS_AS(parse_model(R"({"schema_version": 2, "kind": "custom", "parameters": {}})"), SchemaError);
  CHECK_THROWS_AS(parse_model(R"({"schema_version": 1, "kind": "amplitude_damping", "parameters": {}})"),
                  SchemaError);
  CHECK_THROWS_AS(parse_model(R"({"schema_version": 1, "kind": "custom", "parameters":
      {"dim": 2, "hamiltonian": [[[0,0],[1,0]],[[0,0],[0,0]]], "lindblad_ops": []}})"),
                  HamiltonianError);
  CHECK_THROWS_AS(parse_model(R"({"schema_version": 1, "kind": "custom", "parameters":
      {"dim": 2, "lindblad_ops": [[[[0,0],[1,0]]]]}})"),
                  ShapeError);
  CHECK_THROWS_AS(load_model("/nonexistent/model.json"), ModelError);
}
