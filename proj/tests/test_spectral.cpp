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

#include "qcutoff/contraction.hpp"
#include "qcutoff/error.hpp"
#include "qcutoff/liouville.hpp"
#include "qcutoff/models.hpp"
#include "qcutoff/random.hpp"
#include "qcutoff/spectral.hpp"

using namespace qcutoff;

namespace {

double direct_x(const Superoperator& l, const CMatrix& psi, double t) {
  const Superoperator dual = dual_superop(channel_at(l, t));
  const CMatrix y = dual.apply(identity(l.dim) - psi);
  return operator_norm(y);
}

}  // namespace

TEST_CASE("amplitude damping spectrum") {
  const Superoperator l = build_liouvillian(amplitude_damping_model(1.0));
  const SpectralReport rep = spectral_report(l);
  std::vector<double> re;
  for (Eigen::Index i = 0; i < 4; ++i) re.push_back(rep.eigenvalues(i).real());
  std::sort(re.begin(), re.end());
  CHECK(re[0] == doctest::Approx(-1.0));
  CHECK(re[1] == doctest::Approx(-0.5));
  CHECK(re[2] == doctest::Approx(-0.5));
  CHECK(std::abs(re[3]) < 1e-12);
  CHECK(rep.gap == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(rep.peripheral.size() == 1);
  CHECK(rep.jordan_index == 1);
  CHECK_FALSE(rep.primitive);
  CHECK(rep.subdominant_modulus(2.0) == doctest::Approx(std::exp(-1.0)));
}

TEST_CASE("dephasing variant gap is min(gamma, (gamma+alpha+beta)/2)") {
  for (auto [g, a, b] : {std::tuple{1.0, 1.0, 1.0}, {1.0, 0.25, 0.25}, {2.0, 0.5, 0.0}, {1.0, 3.0, 2.0}}) {
    const SpectralReport rep = spectral_report(build_liouvillian(amplitude_damping_model(g, a, b)));
    CHECK(rep.gap == doctest::Approx(std::min(g, 0.5 * (g + a + b))).epsilon(1e-10));
  }
}

TEST_CASE("depolarizing generator is primitive with maximally mixed fixed point") {
  for (Eigen::Index d : {2, 3}) {
    const Superoperator l = build_liouvillian(depolarizing_model(d, 0.7));
    const PrimitivityResult p = is_primitive(l);
    CHECK(p.primitive);
    CHECK(p.kernel_dim == 1);
    CHECK((p.stationary_state - identity(d) / static_cast<double>(d)).norm() < 1e-10);
    CHECK(p.min_eigenvalue == doctest::Approx(1.0 / d));
    CHECK(spectral_report(l).gap == doctest::Approx(0.7));
  }
}

TEST_CASE("cascade has a Jordan block of size two at the gap") {
  const Superoperator l = build_liouvillian(cascade_model(0.5));
  const SpectralReport rep = spectral_report(l);
  CHECK(rep.gap == doctest::Approx(0.5).epsilon(1e-6));
  CHECK(rep.jordan_index == 2);
  CHECK(rep.kappa_flagged);
}

TEST_CASE("asymptotic projector of a primitive generator is the long-time limit") {
  const LindbladModel m = random_primitive_liouvillian(3, 5);
  const Superoperator l = build_liouvillian(m);
  const double gap = spectral_report(l).gap;
  const Superoperator p = asymptotic_projector(l, 0.0);
  const Superoperator limit = channel_at(l, 60.0 / gap);
  CHECK((p.matrix - limit.matrix).norm() < 1e-9);
  CHECK((p.matrix * p.matrix - p.matrix).norm() < 1e-10);
  CHECK((p.matrix * l.matrix).norm() < 1e-10);
}

TEST_CASE("peripheral phases rotate under a purely Hamiltonian generator") {
  LindbladModel m;
  m.dim = 3;
  CMatrix h = CMatrix::Zero(3, 3);
  h.diagonal() << 0.0, 1.0, 2.5;
  m.hamiltonian = h;
  const Superoperator l = build_liouvillian(m);
  for (double t : {0.0, 0.7, 2.0}) {
    CHECK((asymptotic_projector(l, t).matrix - channel_at(l, t).matrix).norm() < 1e-10);
  }
}

TEST_CASE("Hamiltonian plus dephasing keeps a rotating peripheral part") {
  // Dephasing only between levels {0,1} and 2; the {0,1} coherence rotates.
  LindbladModel m;
  m.dim = 3;
  CMatrix h = CMatrix::Zero(3, 3);
  h.diagonal() << 0.0, 1.0, 3.0;
  m.hamiltonian = h;
  CMatrix z = CMatrix::Zero(3, 3);
  z.diagonal() << 1.0, 1.0, -1.0;
  m.lindblad_ops = {z};
  const Superoperator l = build_liouvillian(m);
  const SpectralReport rep = spectral_report(l);
  CHECK(rep.peripheral.size() == 5);
  CHECK(rep.gap == doctest::Approx(2.0));
  const double t = 40.0;
  CHECK((asymptotic_projector(l, t).matrix - channel_at(l, t).matrix).norm() < 1e-9);
}

TEST_CASE("decay constants sandwich the closed-form contraction") {
  const Superoperator l = build_liouvillian(amplitude_damping_model(1.0));
  const DecayConstants dc = decay_constants(l, 0.49);
  REQUIRE(std::isfinite(dc.upper));
  CHECK(dc.lower > 0.0);
  for (int i = 0; i <= 100; ++i) {
    const double t = 0.1 * i;
    const double eta = eta_ad_closed_form(1.0, t);
    CHECK(dc.lower * std::exp(-0.5 * t) <= eta + 1e-12);
    CHECK(eta <= dc.upper * std::exp(-0.49 * t) + 1e-12);
  }
  CHECK_THROWS_AS(decay_constants(l, 0.5), DomainError);
  CHECK_THROWS_AS(decay_constants(l, 0.0), DomainError);
}

TEST_CASE("decay constants for a defective generator") {
  const Superoperator l = build_liouvillian(cascade_model(1.0));
  const DecayConstants dc = decay_constants(l, 0.8);
  CHECK(dc.defective);
  CHECK(dc.jordan_index == 2);
  REQUIRE(std::isfinite(dc.upper));
  for (double t : {0.0, 0.5, 1.0, 2.0, 4.0, 8.0}) {
    const ContractionEstimate e = eta_tr_estimate(l, t, 12, 3);
    CHECK(dc.lower * std::exp(-t) <= e.eta_upper + 1e-9);
    CHECK(e.eta_lower <= dc.upper * std::exp(-0.8 * t) + 1e-9);
  }
}

TEST_CASE("norm bracket contains the closed-form contraction") {
  const Superoperator l = build_liouvillian(amplitude_damping_model(1.0));
  for (double t : {0.1, 1.0, 3.0}) {
    const NormBracket nb = norm_bracket(channel_at(l, t), asymptotic_projector(l, t));
    const double eta = eta_ad_closed_form(1.0, t);
    CHECK(nb.lower <= eta);
    CHECK(eta <= nb.upper);
    CHECK(nb.upper == doctest::Approx(nb.norm * std::sqrt(2.0) / 2.0));
  }
}

TEST_CASE("occupied modes of amplitude damping decay at gamma") {
  for (double g : {0.5, 1.0, 2.0}) {
    const Superoperator l = build_liouvillian(amplitude_damping_model(g, 0.3, 0.1));
    const OccupiedModes modes(l, ket_bra(2, 0, 0));
    CHECK(modes.nu_bar() == doctest::Approx(g).epsilon(1e-10));
    for (double t : {0.0, 1.0, 10.0, 200.0}) {
      CHECK(modes.x(t) == doctest::Approx(std::exp(-g * t)).epsilon(1e-9));
    }
  }
}

TEST_CASE("occupied modes agree with the explicit dual evolution") {
  const GraphSpec g = path_graph(2, 1.0);
  const Superoperator l = build_liouvillian(graph_state_model(g));
  const CVector phi = graph_state_vector(g);
  const CMatrix psi = phi * phi.adjoint();
  const OccupiedModes modes(l, psi);
  for (double t : {0.0, 0.5, 2.0, 5.0}) CHECK(modes.x(t) == doctest::Approx(direct_x(l, psi, t)).epsilon(1e-9));
  const double gap = spectral_report(l).gap;
  CHECK(modes.nu_bar() >= gap - 1e-9);
  CHECK(modes.nu_bar() <= 2.0 * gap + 1e-9);

  const Superoperator lc = build_liouvillian(cascade_model(1.0));
  const OccupiedModes cm(lc, ket_bra(3, 2, 2));
  for (double t : {0.0, 0.5, 2.0, 6.0}) CHECK(cm.x(t) == doctest::Approx(direct_x(lc, ket_bra(3, 2, 2), t)).epsilon(1e-8));
  CHECK(occupied_decay_rate(lc, ket_bra(3, 2, 2)) == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("occupied modes preconditions") {
  const Superoperator l = build_liouvillian(amplitude_damping_model(1.0));
  CHECK_THROWS_AS(OccupiedModes(l, ket_bra(2, 1, 1)), DomainError);
  CHECK_THROWS_AS(OccupiedModes(l, identity(2)), DomainError);
  LindbladModel deph;
  deph.dim = 2;
  deph.lindblad_ops = {pauli::z()};
  CHECK_THROWS_AS(OccupiedModes(build_liouvillian(deph), ket_bra(2, 0, 0)), DomainError);
}

TEST_CASE("spectral_report rejects non-generators") {
  CMatrix growth = CMatrix::Identity(4, 4);
  CHECK_THROWS_AS(spectral_report(Superoperator(2, growth)), DomainError);
  CMatrix decay = -CMatrix::Identity(4, 4);
  CHECK_THROWS_AS(spectral_report(Superoperator(2, decay)), DomainError);
}
