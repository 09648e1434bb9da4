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

#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

#include <Eigen/Dense>

namespace zeno {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

inline constexpr Complex kI{0.0, 1.0};
inline constexpr double kPi = std::numbers::pi;

/// Largest absolute entry; 0 for an empty matrix.
inline double max_abs(const ComplexMatrix &m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

inline bool all_finite(const ComplexMatrix &m) {
  for (Eigen::Index i = 0; i < m.size(); ++i) {
    const Complex z = m.data()[i];
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
      return false;
  }
  return true;
}

/// max |M - M^dagger|
inline double hermiticity_error(const ComplexMatrix &m) {
  if (m.rows() != m.cols())
    throw std::invalid_argument("hermiticity_error: matrix is not square");
  return max_abs(m - m.adjoint());
}

inline ComplexMatrix commutator(const ComplexMatrix &a, const ComplexMatrix &b) {
  return a * b - b * a;
}

inline ComplexMatrix anticommutator(const ComplexMatrix &a,
                                    const ComplexMatrix &b) {
  return a * b + b * a;
}

/// Computes exp(scale * m) by scaling and squaring with a truncated Taylor
/// series. The scaled matrix has 1-norm <= 1/2, so the series is summed until
/// the next term no longer changes the partial sum in double precision.
inline ComplexMatrix matrix_exponential(const ComplexMatrix &m,
                                        Complex scale = 1.0) {
  if (m.rows() != m.cols() || m.rows() == 0)
    throw std::invalid_argument("matrix_exponential: need a non-empty square matrix");
  if (!all_finite(m) || !std::isfinite(scale.real()) || !std::isfinite(scale.imag()))
    throw std::invalid_argument("matrix_exponential: non-finite input");

  const Eigen::Index n = m.rows();
  ComplexMatrix a = scale * m;
  const double norm1 = a.cwiseAbs().colwise().sum().maxCoeff();

  int squarings = 0;
  if (norm1 > 0.5)
    squarings = static_cast<int>(std::ceil(std::log2(norm1 / 0.5)));
  a /= std::ldexp(1.0, squarings);

  ComplexMatrix result = ComplexMatrix::Identity(n, n);
  ComplexMatrix term = ComplexMatrix::Identity(n, n);
  for (int k = 1; k <= 40; ++k) {
    term = (term * a) / static_cast<double>(k);
    result += term;
    if (max_abs(term) <= 1e-18 * max_abs(result))
      break;
  }
  for (int s = 0; s < squarings; ++s)
    result = result * result;
  return result;
}

} // namespace zeno
