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

// Non-interacting fermions in the two coupled guides, and the comparison with
// photons under a strong Zeno effect.
//
// Fermion basis: |n1 n2> with n in {0, 1}, index 2*n1 + n2, the same order as
// the computational basis. Jordan-Wigner order puts mode 1 first, so b2^dag
// picks up (-1)^{n1}.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "zeno/fock.hpp"
#include "zeno/linalg.hpp"
#include "zeno/zeno_gate.hpp"

namespace zeno {

enum class Statistics { boson, fermion };

inline constexpr Eigen::Index kFermionDim = 4;

inline Eigen::Index fermion_index(int n1, int n2) {
  if (n1 < 0 || n1 > 1 || n2 < 0 || n2 > 1)
    throw std::invalid_argument("fermion_index: occupations must be 0 or 1");
  return 2 * n1 + n2;
}

inline ComplexVector fermion_state(int n1, int n2) {
  return ComplexVector::Unit(kFermionDim, fermion_index(n1, n2));
}

struct ModeOperators {
  std::array<ComplexMatrix, 2> creation;
  std::array<ComplexMatrix, 2> annihilation;
};

/// Creation/annihilation on the two-mode occupation space {0,1}^2. For
/// bosons this is the hard-core truncation (a^dag|1> dropped), which is all
/// the path-interchange bookkeeping needs.
inline ModeOperators mode_operators(Statistics stats) {
  ModeOperators ops;
  for (auto &m : ops.creation)
    m = ComplexMatrix::Zero(kFermionDim, kFermionDim);
  for (int n2 = 0; n2 <= 1; ++n2)
    ops.creation[0](fermion_index(1, n2), fermion_index(0, n2)) = 1.0;
  for (int n1 = 0; n1 <= 1; ++n1) {
    const double sign = (stats == Statistics::fermion && n1 == 1) ? -1.0 : 1.0;
    ops.creation[1](fermion_index(n1, 1), fermion_index(n1, 0)) = sign;
  }
  for (std::size_t k = 0; k < 2; ++k)
    ops.annihilation[k] = ops.creation[k].adjoint();
  return ops;
}

inline ModeOperators fermion_operator_matrices() {
  return mode_operators(Statistics::fermion);
}

/// eps (b1^dag b2 + b2^dag b1).
inline ComplexMatrix fermion_hamiltonian(double epsilon) {
  const auto ops = fermion_operator_matrices();
  const ComplexMatrix hop = ops.creation[0] * ops.annihilation[1];
  return epsilon * (hop + hop.adjoint());
}

inline ComplexVector evolve_fermions(double epsilon, double t,
                                     const ComplexVector &input) {
  if (input.size() != kFermionDim)
    throw std::invalid_argument("evolve_fermions: input must have 4 amplitudes");
  if (t == 0.0)
    return input;
  return matrix_exponential(fermion_hamiltonian(epsilon), Complex(0.0, -t)) * input;
}

struct EquivalenceReport {
  std::array<double, 4> deviation{}; ///< per computational input
  double single_particle = 0.0;      ///< max over |01>, |10>
  double two_particle = 0.0;         ///< |11>
  double max = 0.0;
};

/// Max amplitude difference between free fermions and photons under N
/// discrete Zeno measurements, input by input. The photon side is the
/// no-failure branch without renormalization, so lost probability counts
/// against it.
inline EquivalenceReport compare_to_zeno_photons(double epsilon, double t, int n) {
  if (n < 1)
    throw std::invalid_argument("compare_to_zeno_photons: N must be >= 1");
  const BasisPtr basis = two_mode_basis();
  const ComplexMatrix h = coupling_hamiltonian(epsilon, *basis);
  const ComplexMatrix fermion_u = matrix_exponential(fermion_hamiltonian(epsilon), Complex(0.0, -t));

  EquivalenceReport report;
  for (std::size_t k = 0; k < 4; ++k) {
    const FockState in = computational_state(k);
    const ComplexVector fermion_out = fermion_u * ComplexVector::Unit(kFermionDim, static_cast<Eigen::Index>(k));
    const auto photon = run_discrete_protocol(h, StateVector::basis_state(basis, in), n, t);
    ComplexVector photon_out = ComplexVector::Zero(kFermionDim);
    for (std::size_t row = 0; row < 4; ++row)
      photon_out[static_cast<Eigen::Index>(row)] = photon.survivor.amplitude(computational_state(row));
    // The survivor never has weight outside the computational states: the
    // final measurement removed it.
    report.deviation[k] = max_abs(fermion_out - photon_out);
  }
  report.single_particle = std::max(report.deviation[1], report.deviation[2]);
  report.two_particle = report.deviation[3];
  report.max = *std::max_element(report.deviation.begin(), report.deviation.end());
  return report;
}

/// Exchanging the two paths: c1^dag^{n1} c2^dag^{n2}|0> becomes
/// c2^dag^{n1} c1^dag^{n2}|0>. Fermions pick up -1 on |11>.
inline ComplexMatrix interchange_matrix(Statistics stats) {
  const auto ops = mode_operators(stats);
  ComplexMatrix m = ComplexMatrix::Zero(kFermionDim, kFermionDim);
  const ComplexVector vacuum = fermion_state(0, 0);
  for (int n1 = 0; n1 <= 1; ++n1)
    for (int n2 = 0; n2 <= 1; ++n2) {
      ComplexVector v = vacuum;
      if (n2 == 1)
        v = ops.creation[0] * v;
      if (n1 == 1)
        v = ops.creation[1] * v;
      m.col(fermion_index(n1, n2)) = v;
    }
  return m;
}

inline ComplexVector mode_interchange(const ComplexVector &state, Statistics stats) {
  if (state.size() != kFermionDim)
    throw std::invalid_argument("mode_interchange: state must have 4 amplitudes");
  return interchange_matrix(stats) * state;
}

/// Bosonic path interchange on an arbitrary two-mode Fock state.
inline StateVector mode_interchange(const StateVector &state) {
  const FockBasis &basis = *state.basis;
  if (basis.num_modes() != 2)
    throw std::invalid_argument("mode_interchange: need a two-mode basis");
  ComplexVector out = ComplexVector::Zero(state.amplitudes.size());
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const FockState swapped{basis[i][1], basis[i][0]};
    out[static_cast<Eigen::Index>(basis.require_index(swapped))] =
        state.amplitudes[static_cast<Eigen::Index>(i)];
  }
  return StateVector(state.basis, std::move(out));
}

struct NoGoReport {
  ComplexMatrix device_sqrt_swap_prime; ///< coupled guides at pi/4 plus output phases
  ComplexMatrix device_swap_prime;      ///< its square
  ComplexMatrix fermion_interchange;
  ComplexMatrix boson_interchange;
  ComplexMatrix fermion_composition; ///< identity: the no-go theorem holds
  ComplexMatrix boson_composition;   ///< controlled-Z
};

/// Device followed by a path interchange, once with fermionic and once with
/// bosonic exchange statistics.
inline NoGoReport no_go_demo() {
  NoGoReport r;
  r.device_sqrt_swap_prime = ComplexMatrix::Zero(kFermionDim, kFermionDim);
  for (Eigen::Index k = 0; k < kFermionDim; ++k) {
    ComplexVector out = evolve_fermions(1.0, kHalfSwapTime, ComplexVector::Unit(kFermionDim, k));
    for (Eigen::Index row = 0; row < kFermionDim; ++row) {
      const int particles = static_cast<int>((row >> 1) + (row & 1));
      out[row] *= std::polar(1.0, kDefaultOutputPhase * particles);
    }
    r.device_sqrt_swap_prime.col(k) = out;
  }
  r.device_swap_prime = r.device_sqrt_swap_prime * r.device_sqrt_swap_prime;
  r.fermion_interchange = interchange_matrix(Statistics::fermion);
  r.boson_interchange = interchange_matrix(Statistics::boson);
  r.fermion_composition = r.fermion_interchange * r.device_swap_prime;
  r.boson_composition = r.boson_interchange * r.device_swap_prime;
  return r;
}

// ---------------------------------------------------------------------------
// Dressed operators and their time averages.
//
// H0 holds the photon energy and the two-photon absorption as a
// non-Hermitian term -i/(2 tau_D) on |2>. Operators are dressed in the
// bi-orthogonal form O(t) = exp(i H0^dag t) O exp(-i H0 t), under which
// amplitudes that pass through |2> decay instead of growing.

struct DressedOperatorSpec {
  enum class Which { annihilation, creation };
  Which which = Which::annihilation;
  int mode = 1;
  double tau_D = std::numeric_limits<double>::infinity();
  double photon_energy = 0.0;

  static DressedOperatorSpec annihilation(int mode, double tau_D) {
    return {Which::annihilation, mode, tau_D, 0.0};
  }
  static DressedOperatorSpec creation(int mode, double tau_D) {
    return {Which::creation, mode, tau_D, 0.0};
  }

  void validate() const {
    if (!(tau_D > 0.0))
      throw std::invalid_argument("DressedOperatorSpec: tau_D must be > 0");
    if (mode != 1 && mode != 2)
      throw std::invalid_argument("DressedOperatorSpec: mode must be 1 or 2");
  }
};

inline constexpr Eigen::Index kSingleModeDim = 3;

/// a on {|0>, |1>, |2>}.
inline ComplexMatrix single_mode_annihilation() {
  ComplexMatrix a = ComplexMatrix::Zero(kSingleModeDim, kSingleModeDim);
  a(0, 1) = 1.0;
  a(1, 2) = std::sqrt(2.0);
  return a;
}

inline ComplexMatrix single_mode_free_hamiltonian(double tau_D, double photon_energy) {
  ComplexMatrix h0 = ComplexMatrix::Zero(kSingleModeDim, kSingleModeDim);
  for (Eigen::Index n = 0; n < kSingleModeDim; ++n)
    h0(n, n) = photon_energy * static_cast<double>(n);
  if (std::isfinite(tau_D))
    h0(2, 2) += Complex(0.0, -0.5 / tau_D);
  return h0;
}

inline ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

namespace detail {
inline ComplexMatrix dress(const ComplexMatrix &op, const ComplexMatrix &h0, double t) {
  const bool diagonal = max_abs(ComplexMatrix(h0.triangularView<Eigen::StrictlyUpper>())) == 0.0 &&
                        max_abs(ComplexMatrix(h0.triangularView<Eigen::StrictlyLower>())) == 0.0;
  if (diagonal) {
    const ComplexVector d = h0.diagonal();
    ComplexMatrix out = op;
    for (Eigen::Index i = 0; i < out.rows(); ++i)
      for (Eigen::Index j = 0; j < out.cols(); ++j)
        if (out(i, j) != 0.0)
          out(i, j) *= std::exp(kI * t * (std::conj(d[i]) - d[j]));
    return out;
  }
  return matrix_exponential(h0.adjoint(), Complex(0.0, t)) * op *
         matrix_exponential(h0, Complex(0.0, -t));
}

inline ComplexMatrix schrodinger_operator(const DressedOperatorSpec &spec) {
  const ComplexMatrix a = single_mode_annihilation();
  return spec.which == DressedOperatorSpec::Which::annihilation ? a : ComplexMatrix(a.adjoint());
}
} // namespace detail

/// A(t) or A^dag(t) for a single fiber mode, on {|0>, |1>, |2>}.
inline ComplexMatrix dressed_operator(const DressedOperatorSpec &spec, double t) {
  spec.validate();
  return detail::dress(detail::schrodinger_operator(spec),
                       single_mode_free_hamiltonian(spec.tau_D, spec.photon_energy), t);
}

/// Same operator embedded in two fibers, basis index 3*n1 + n2. Both fibers
/// carry the same absorber, tau_D from `spec`.
inline ComplexMatrix dressed_operator_two_mode(const DressedOperatorSpec &spec, double t) {
  spec.validate();
  const ComplexMatrix id = ComplexMatrix::Identity(kSingleModeDim, kSingleModeDim);
  const ComplexMatrix h1 = single_mode_free_hamiltonian(spec.tau_D, spec.photon_energy);
  const ComplexMatrix h0 = kron(h1, id) + kron(id, h1);
  const ComplexMatrix local = detail::schrodinger_operator(spec);
  const ComplexMatrix op = spec.mode == 1 ? kron(local, id) : kron(id, local);
  return detail::dress(op, h0, t);
}

struct TimeAverage {
  ComplexMatrix value;
  double grid_change = 0.0; ///< max entry change between the last two grids
  std::size_t intervals = 0;
};

namespace detail {
/// (2/tau^2) * int_0^tau dt' int_0^t' dt'' A(t') B(t''), trapezoid rule on a
/// uniform grid.
template <class OpA, class OpB>
ComplexMatrix triangle_average(OpA a_at, OpB b_at, double tau, std::size_t intervals) {
  const double h = tau / static_cast<double>(intervals);
  ComplexMatrix b_prev = b_at(0.0);
  ComplexMatrix inner = ComplexMatrix::Zero(b_prev.rows(), b_prev.cols());
  ComplexMatrix outer = ComplexMatrix::Zero(b_prev.rows(), b_prev.cols());
  // inner(0) = 0, so the t' = 0 endpoint contributes nothing.
  for (std::size_t k = 1; k <= intervals; ++k) {
    const double t = h * static_cast<double>(k);
    const ComplexMatrix b_now = b_at(t);
    inner += 0.5 * h * (b_prev + b_now);
    const double w = (k == intervals) ? 0.5 * h : h;
    outer += w * (a_at(t) * inner);
    b_prev = b_now;
  }
  return (2.0 / (tau * tau)) * outer;
}

template <class OpA, class OpB>
TimeAverage converged_average(OpA a_at, OpB b_at, double tau, double min_tau_D) {
  if (!(tau > 0.0) || !std::isfinite(tau))
    throw std::invalid_argument("time_averaged_product: tau must be > 0");
  std::size_t n = 200;
  if (std::isfinite(min_tau_D))
    n = std::max<std::size_t>(n, static_cast<std::size_t>(std::ceil(20.0 * tau / min_tau_D)));
  // Trapezoid error falls as 1/n^2, so one Richardson step per doubling
  // leaves a 1/n^4 remainder. Refine until successive extrapolations agree.
  constexpr double kTolerance = 1e-9;
  constexpr std::size_t kMaxIntervals = std::size_t{1} << 22;
  ComplexMatrix coarse = triangle_average(a_at, b_at, tau, n);
  ComplexMatrix previous;
  double change = std::numeric_limits<double>::infinity();
  while (2 * n <= kMaxIntervals) {
    const ComplexMatrix fine = triangle_average(a_at, b_at, tau, 2 * n);
    ComplexMatrix extrapolated = fine + (fine - coarse) / 3.0;
    n *= 2;
    if (previous.size() != 0) {
      change = max_abs(extrapolated - previous);
      if (change <= kTolerance)
        return TimeAverage{extrapolated, change, n};
    }
    previous = std::move(extrapolated);
    coarse = fine;
  }
  std::ostringstream msg;
  msg << "time_averaged_product: quadrature not converged (grid halving changed " << change
      << " at " << n << " intervals)";
  throw std::runtime_error(msg.str());
}
} // namespace detail

/// Time-averaged product for operators on the same fiber.
inline TimeAverage time_averaged_product(const DressedOperatorSpec &a,
                                         const DressedOperatorSpec &b, double tau) {
  a.validate();
  b.validate();
  if (a.mode != b.mode)
    throw std::invalid_argument(
        "time_averaged_product: operators on different fibers need the two-mode form");
  return detail::converged_average([&](double t) { return dressed_operator(a, t); },
                                   [&](double t) { return dressed_operator(b, t); }, tau,
                                   std::min(a.tau_D, b.tau_D));
}

inline TimeAverage time_averaged_product_two_mode(const DressedOperatorSpec &a,
                                                  const DressedOperatorSpec &b,
                                                  double tau) {
  a.validate();
  b.validate();
  return detail::converged_average([&](double t) { return dressed_operator_two_mode(a, t); },
                                   [&](double t) { return dressed_operator_two_mode(b, t); },
                                   tau, std::min(a.tau_D, b.tau_D));
}

/// [A(t), A^dag(t)] at a single instant.
inline ComplexMatrix equal_time_commutator(double tau_D, double photon_energy, double t) {
  DressedOperatorSpec a{DressedOperatorSpec::Which::annihilation, 1, tau_D, photon_energy};
  DressedOperatorSpec ad{DressedOperatorSpec::Which::creation, 1, tau_D, photon_energy};
  return commutator(dressed_operator(a, t), dressed_operator(ad, t));
}

struct AnticommutatorReport {
  double tau_D = 0.0;
  double tau = 0.0;
  ComplexMatrix product_a_adag;  ///< overline(A A^dag), 3x3
  ComplexMatrix product_adag_a;  ///< overline(A^dag A), 3x3
  ComplexMatrix anticommutator;  ///< sum of the two, 3x3
  double deviation = 0.0;        ///< max |anticommutator - I| on span{|0>, |1>}
  ComplexMatrix cross_commutator; ///< overline([A_1, A_2^dag]) on {0,1}^2, basis 2*n1+n2
  double cross_deviation = 0.0;   ///< max entry over both fiber orderings
};

inline AnticommutatorReport anticommutator_report(double tau_D, double tau) {
  if (!(tau_D > 0.0) || !(tau_D < tau))
    throw std::invalid_argument("anticommutator_report: need 0 < tau_D < tau");
  AnticommutatorReport r;
  r.tau_D = tau_D;
  r.tau = tau;
  const auto a = DressedOperatorSpec::annihilation(1, tau_D);
  const auto ad = DressedOperatorSpec::creation(1, tau_D);
  r.product_a_adag = time_averaged_product(a, ad, tau).value;
  r.product_adag_a = time_averaged_product(ad, a, tau).value;
  r.anticommutator = r.product_a_adag + r.product_adag_a;
  r.deviation = max_abs(r.anticommutator.topLeftCorner(2, 2) - ComplexMatrix::Identity(2, 2));

  // Allowed two-fiber states |n1 n2>, n <= 1, sit at 3*n1 + n2.
  const std::array<Eigen::Index, 4> allowed{0, 1, 3, 4};
  auto restrict = [&](const ComplexMatrix &m) {
    ComplexMatrix out(4, 4);
    for (Eigen::Index i = 0; i < 4; ++i)
      for (Eigen::Index j = 0; j < 4; ++j)
        out(i, j) = m(allowed[static_cast<std::size_t>(i)], allowed[static_cast<std::size_t>(j)]);
    return out;
  };
  auto cross = [&](int i, int j) {
    const auto ai = DressedOperatorSpec::annihilation(i, tau_D);
    const auto ajd = DressedOperatorSpec::creation(j, tau_D);
    return restrict(time_averaged_product_two_mode(ai, ajd, tau).value -
                    time_averaged_product_two_mode(ajd, ai, tau).value);
  };
  r.cross_commutator = cross(1, 2);
  r.cross_deviation = std::max(max_abs(r.cross_commutator), max_abs(cross(2, 1)));
  return r;
}

} // namespace zeno
