// Copyright 2026 The zenogate Authors
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

// Seeded generators for property tests.

#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "zeno/linalg.hpp"

namespace zeno::testing {

class Gen {
public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng_);
  }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  double normal() { return std::normal_distribution<double>(0.0, 1.0)(rng_); }
  Complex complex_normal() { return {normal(), normal()}; }

  ComplexMatrix matrix(Eigen::Index dim) {
    ComplexMatrix m(dim, dim);
    for (Eigen::Index i = 0; i < m.size(); ++i)
      m.data()[i] = complex_normal();
    return m;
  }

  ComplexMatrix hermitian(Eigen::Index dim, double scale = 1.0) {
    const ComplexMatrix m = matrix(dim);
    return scale * 0.5 * (m + m.adjoint());
  }

  ComplexVector unit_vector(Eigen::Index dim) {
    ComplexVector v(dim);
    for (Eigen::Index i = 0; i < dim; ++i)
      v[i] = complex_normal();
    return v / v.norm();
  }

  /// Random mixed state with the given rank.
  ComplexMatrix density(Eigen::Index dim, Eigen::Index rank) {
    ComplexMatrix rho = ComplexMatrix::Zero(dim, dim);
    for (Eigen::Index k = 0; k < rank; ++k) {
      const ComplexVector v = unit_vector(dim);
      rho += uniform(0.1, 1.0) * v * v.adjoint();
    }
    return rho / rho.trace().real();
  }

private:
  std::mt19937_64 rng_;
};

} // namespace zeno::testing
