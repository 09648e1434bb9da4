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

// Bosonic Fock space for a handful of optical modes.
//
// The coupled-fiber model works in the interaction picture with the
// narrowband approximation already applied: the free photon energies and the
// longitudinal wave-vector sum drop out, leaving only the tunneling term
// eps (a1^dag a2 + a2^dag a1) between two single wave-packet modes. Time is
// measured in units of hbar/eps everywhere in the dynamics code.

#pragma once

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstddef>
#include <memory>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "zeno/linalg.hpp"

namespace zeno {

struct FockState {
  std::vector<int> occupations;

  FockState() = default;
  FockState(std::initializer_list<int> occ) : occupations(occ) {}
  explicit FockState(std::vector<int> occ) : occupations(std::move(occ)) {}

  int total() const {
    return std::accumulate(occupations.begin(), occupations.end(), 0);
  }
  std::size_t num_modes() const { return occupations.size(); }
  int operator[](std::size_t mode) const { return occupations[mode]; }

  auto operator<=>(const FockState &) const = default;
  bool operator==(const FockState &) const = default;

  std::string label() const {
    std::string s = "|";
    for (int n : occupations)
      s += std::to_string(n);
    return s + ">";
  }
};

/// All occupation vectors with total photon number <= max_total, in
/// lexicographic order of the occupation vector.
class FockBasis {
public:
  FockBasis(int num_modes, int max_total)
      : num_modes_(num_modes), max_total_(max_total) {
    if (num_modes < 1)
      throw std::invalid_argument("FockBasis: num_modes must be >= 1");
    if (max_total < 0)
      throw std::invalid_argument("FockBasis: max_total must be >= 0");
    std::vector<int> occ(static_cast<std::size_t>(num_modes), 0);
    enumerate(occ, 0, max_total);
  }

  int num_modes() const { return num_modes_; }
  int max_total() const { return max_total_; }
  std::size_t size() const { return states_.size(); }
  const std::vector<FockState> &states() const { return states_; }
  const FockState &operator[](std::size_t i) const { return states_[i]; }

  std::optional<std::size_t> index_of(const FockState &s) const {
    auto it = std::lower_bound(states_.begin(), states_.end(), s);
    if (it == states_.end() || *it != s)
      return std::nullopt;
    return static_cast<std::size_t>(it - states_.begin());
  }

  std::size_t require_index(const FockState &s) const {
    auto idx = index_of(s);
    if (!idx)
      throw std::out_of_range("FockBasis: state " + s.label() + " not in basis");
    return *idx;
  }

  bool operator==(const FockBasis &other) const {
    return num_modes_ == other.num_modes_ && max_total_ == other.max_total_;
  }

private:
  void enumerate(std::vector<int> &occ, std::size_t mode, int remaining) {
    if (mode == occ.size()) {
      states_.emplace_back(occ);
      return;
    }
    for (int n = 0; n <= remaining; ++n) {
      occ[mode] = n;
      enumerate(occ, mode + 1, remaining - n);
    }
    occ[mode] = 0;
  }

  int num_modes_;
  int max_total_;
  std::vector<FockState> states_;
};

using BasisPtr = std::shared_ptr<const FockBasis>;

inline FockBasis enumerate_basis(int num_modes, int max_total) {
  return FockBasis(num_modes, max_total);
}

inline BasisPtr make_basis(int num_modes, int max_total) {
  return std::make_shared<const FockBasis>(num_modes, max_total);
}

/// Two modes, up to two photons: the space every gate calculation lives in.
inline BasisPtr two_mode_basis() { return make_basis(2, 2); }

/// Amplitudes over a shared Fock basis.
struct StateVector {
  BasisPtr basis;
  ComplexVector amplitudes;

  StateVector(BasisPtr b, ComplexVector amps)
      : basis(std::move(b)), amplitudes(std::move(amps)) {
    if (!basis)
      throw std::invalid_argument("StateVector: null basis");
    if (static_cast<std::size_t>(amplitudes.size()) != basis->size())
      throw std::invalid_argument("StateVector: amplitude count does not match basis");
  }

  static StateVector basis_state(BasisPtr b, const FockState &s) {
    const std::size_t idx = b->require_index(s);
    ComplexVector amps = ComplexVector::Zero(static_cast<Eigen::Index>(b->size()));
    amps[static_cast<Eigen::Index>(idx)] = 1.0;
    return StateVector(std::move(b), std::move(amps));
  }

  double squared_norm() const { return amplitudes.squaredNorm(); }

  Complex amplitude(const FockState &s) const {
    return amplitudes[static_cast<Eigen::Index>(basis->require_index(s))];
  }
};

namespace detail {
inline void check_mode(int mode, const FockBasis &basis) {
  if (mode < 1 || mode > basis.num_modes())
    throw std::invalid_argument("invalid mode index " + std::to_string(mode) +
                                " (modes are 1.." +
                                std::to_string(basis.num_modes()) + ")");
}
} // namespace detail

/// Matrix of a^dag_mode (1-based mode index). Transitions that would leave
/// the basis are dropped, which is exact inside any photon-number sector that
/// the Hamiltonian conserves.
inline ComplexMatrix creation_matrix(int mode, const FockBasis &basis) {
  detail::check_mode(mode, basis);
  const auto dim = static_cast<Eigen::Index>(basis.size());
  ComplexMatrix m = ComplexMatrix::Zero(dim, dim);
  const auto k = static_cast<std::size_t>(mode - 1);
  for (std::size_t col = 0; col < basis.size(); ++col) {
    FockState raised = basis[col];
    const int n = raised.occupations[k];
    raised.occupations[k] = n + 1;
    if (auto row = basis.index_of(raised))
      m(static_cast<Eigen::Index>(*row), static_cast<Eigen::Index>(col)) =
          std::sqrt(static_cast<double>(n + 1));
  }
  return m;
}

inline ComplexMatrix annihilation_matrix(int mode, const FockBasis &basis) {
  return creation_matrix(mode, basis).adjoint();
}

inline ComplexMatrix number_matrix(int mode, const FockBasis &basis) {
  detail::check_mode(mode, basis);
  const auto dim = static_cast<Eigen::Index>(basis.size());
  ComplexMatrix m = ComplexMatrix::Zero(dim, dim);
  for (std::size_t i = 0; i < basis.size(); ++i)
    m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) =
        basis[i].occupations[static_cast<std::size_t>(mode - 1)];
  return m;
}

inline ComplexMatrix total_number_matrix(const FockBasis &basis) {
  const auto dim = static_cast<Eigen::Index>(basis.size());
  ComplexMatrix m = ComplexMatrix::Zero(dim, dim);
  for (std::size_t i = 0; i < basis.size(); ++i)
    m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = basis[i].total();
  return m;
}

/// eps (a1^dag a2 + a2^dag a1) between modes 1 and 2.
inline ComplexMatrix coupling_hamiltonian(double epsilon, const FockBasis &basis) {
  if (basis.num_modes() < 2)
    throw std::invalid_argument("coupling_hamiltonian: need at least two modes");
  if (!std::isfinite(epsilon))
    throw std::invalid_argument("coupling_hamiltonian: epsilon must be finite");
  const ComplexMatrix a1dag = creation_matrix(1, basis);
  const ComplexMatrix a2dag = creation_matrix(2, basis);
  const ComplexMatrix hop = a1dag * a2dag.adjoint();
  return epsilon * (hop + hop.adjoint());
}

/// Basis indices of the given states, in the given order.
inline std::vector<std::size_t> indices_of(const FockBasis &basis,
                                           const std::vector<FockState> &states) {
  std::vector<std::size_t> out;
  out.reserve(states.size());
  for (const auto &s : states)
    out.push_back(basis.require_index(s));
  return out;
}

inline ComplexMatrix submatrix(const ComplexMatrix &m,
                               const std::vector<std::size_t> &idx) {
  const auto n = static_cast<Eigen::Index>(idx.size());
  ComplexMatrix out(n, n);
  for (Eigen::Index r = 0; r < n; ++r)
    for (Eigen::Index c = 0; c < n; ++c)
      out(r, c) = m(static_cast<Eigen::Index>(idx[static_cast<std::size_t>(r)]),
                    static_cast<Eigen::Index>(idx[static_cast<std::size_t>(c)]));
  return out;
}

} // namespace zeno
