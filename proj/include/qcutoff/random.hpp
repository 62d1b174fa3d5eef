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

// Seeded generators for random states, channels and matrices. Every sampler
// takes the engine explicitly so results are reproducible from a seed.

#include <cstdint>
#include <random>
#include <vector>

#include "qcutoff/matcore.hpp"

namespace qcutoff {

using Rng = std::mt19937_64;

// Entries i.i.d. standard complex Gaussian (real and imaginary parts N(0, 1/2)).
CMatrix ginibre(Eigen::Index rows, Eigen::Index cols, Rng& rng);

// Haar-random unit vector in C^d.
CVector random_pure_vector(Eigen::Index d, Rng& rng);

// Full-rank mixed state G G^dagger / tr[G G^dagger] with square Ginibre G.
CMatrix random_density_matrix(Eigen::Index d, Rng& rng);

// |psi><psi| for a Haar-random psi.
CMatrix random_pure_state(Eigen::Index d, Rng& rng);

// Random Hermitian matrix with Gaussian entries.
CMatrix random_hermitian(Eigen::Index d, Rng& rng);

// Kraus operators of a random channel obtained from a random isometry with
// `kraus_rank` outputs.
std::vector<CMatrix> random_kraus_channel(Eigen::Index d, int kraus_rank, Rng& rng);

CMatrix apply_kraus(const std::vector<CMatrix>& kraus, const CMatrix& rho);

}  // namespace qcutoff
