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

// The coupled-fiber sqrt(SWAP') gate driven by the Zeno effect, either as N
// equally spaced "two photons in one core?" measurements or as continuous
// two-photon absorption.
//
// Logical qubits map to photon occupations: |q1 q2> is the Fock state with q1
// photons in core 1 and q2 in core 2. Computational index = 2*q1 + q2.

#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "zeno/dynamics.hpp"
#include "zeno/fock.hpp"
#include "zeno/linalg.hpp"
#include "zeno/parallel.hpp"

namespace zeno {

/// Half-transfer time: a single photon is split 50/50 between the cores.
inline constexpr double kHalfSwapTime = kPi / 4.0;
inline constexpr double kDefaultOutputPhase = kPi / 4.0;

inline FockState computational_state(std::size_t index) {
  if (index > 3)
    throw std::out_of_range("computational_state: index must be 0..3");
  return FockState{static_cast<int>(index >> 1), static_cast<int>(index & 1)};
}

inline bool is_computational(const FockState &s) {
  return s.num_modes() == 2 && s[0] <= 1 && s[1] <= 1;
}

// ---------------------------------------------------------------------------
// Reference gates on the computational basis {|00>, |01>, |10>, |11>}.

inline ComplexMatrix sqrt_swap_target() {
  const Complex p{0.5, 0.5}, m{0.5, -0.5};
  ComplexMatrix g = ComplexMatrix::Zero(4, 4);
  g(0, 0) = 1.0;
  g(1, 1) = p;
  g(1, 2) = m;
  g(2, 1) = m;
  g(2, 2) = p;
  g(3, 3) = 1.0;
  return g;
}

/// sqrt(SWAP) with an extra factor i on |11>.
inline ComplexMatrix sqrt_swap_prime_target() {
  ComplexMatrix g = sqrt_swap_target();
  g(3, 3) = kI;
  return g;
}

/// SWAP with -1 on |11>.
inline ComplexMatrix swap_prime_target() {
  ComplexMatrix g = ComplexMatrix::Zero(4, 4);
  g(0, 0) = 1.0;
  g(1, 2) = 1.0;
  g(2, 1) = 1.0;
  g(3, 3) = -1.0;
  return g;
}

inline ComplexMatrix swap_gate() {
  ComplexMatrix g = ComplexMatrix::Zero(4, 4);
  g(0, 0) = 1.0;
  g(1, 2) = 1.0;
  g(2, 1) = 1.0;
  g(3, 3) = 1.0;
  return g;
}

inline ComplexMatrix controlled_z_target() {
  ComplexMatrix g = ComplexMatrix::Identity(4, 4);
  g(3, 3) = -1.0;
  return g;
}

inline ComplexMatrix cnot_target() {
  ComplexMatrix g = ComplexMatrix::Zero(4, 4);
  g(0, 0) = 1.0;
  g(1, 1) = 1.0;
  g(2, 3) = 1.0;
  g(3, 2) = 1.0;
  return g;
}

/// Hadamard on the second (target) qubit.
inline ComplexMatrix hadamard_on_target() {
  const double r = 1.0 / std::sqrt(2.0);
  ComplexMatrix h = ComplexMatrix::Zero(4, 4);
  for (int block = 0; block < 4; block += 2) {
    h(block, block) = r;
    h(block, block + 1) = r;
    h(block + 1, block) = r;
    h(block + 1, block + 1) = -r;
  }
  return h;
}

/// SWAP * SWAP', with SWAP' obtained by squaring the sqrt(SWAP') gate.
inline ComplexMatrix compose_controlled_z() {
  const ComplexMatrix root = sqrt_swap_prime_target();
  const ComplexMatrix swap_prime = root * root;
  return swap_gate() * swap_prime;
}

// ---------------------------------------------------------------------------
// Protocols.

struct DiscreteMeasurements {
  int n;
};

struct TwoPhotonAbsorption {
  double tau_D;
};

struct ZenoProtocol {
  std::variant<DiscreteMeasurements, TwoPhotonAbsorption> kind;
  double interaction_time = kHalfSwapTime;
  double output_phase = kDefaultOutputPhase;

  static ZenoProtocol discrete(int n) { return ZenoProtocol{DiscreteMeasurements{n}}; }
  static ZenoProtocol absorption(double tau_D) {
    return ZenoProtocol{TwoPhotonAbsorption{tau_D}};
  }

  bool is_discrete() const {
    return std::holds_alternative<DiscreteMeasurements>(kind);
  }

  void validate() const {
    if (!(interaction_time > 0.0) || !std::isfinite(interaction_time))
      throw std::invalid_argument("ZenoProtocol: interaction_time must be > 0");
    if (!std::isfinite(output_phase))
      throw std::invalid_argument("ZenoProtocol: output_phase must be finite");
    if (const auto *d = std::get_if<DiscreteMeasurements>(&kind)) {
      if (d->n < 1)
        throw std::invalid_argument("ZenoProtocol: need N >= 1 measurements");
    } else {
      const double tau = std::get<TwoPhotonAbsorption>(kind).tau_D;
      if (!(tau > 0.0))
        throw std::invalid_argument("ZenoProtocol: tau_D must be > 0");
    }
  }
};

/// P_E = 1 - cos^{2N}(pi / 2N) for N equally spaced measurements over the
/// half-transfer time.
inline double closed_form_error(int n) {
  if (n < 1)
    throw std::invalid_argument("closed_form_error: N must be >= 1");
  const double c = std::cos(kPi / (2.0 * n));
  return 1.0 - std::pow(c * c, n);
}

/// Absorption time that plays the role of N measurements: N = dt / (4 tau_D).
inline double equivalent_tau_D(double n, double interaction_time = kHalfSwapTime) {
  if (!(n > 0.0))
    throw std::invalid_argument("equivalent_tau_D: N must be > 0");
  return interaction_time / (4.0 * n);
}

struct DiscreteRun {
  std::vector<double> step_success; ///< conditional success of each measurement
  double success_probability;       ///< product of step successes
  StateVector survivor;             ///< no-failure branch, not renormalized
  StateVector state;                ///< survivor renormalized (zero if none)
};

/// Alternates free evolution over duration/N with the no-double-occupancy
/// measurement, N times.
inline DiscreteRun run_discrete_protocol(const ComplexMatrix &h,
                                         const StateVector &psi0, int n,
                                         double duration) {
  if (n < 1)
    throw std::invalid_argument("run_discrete_protocol: N must be >= 1");
  if (!(duration >= 0.0))
    throw std::invalid_argument("run_discrete_protocol: duration must be >= 0");
  if (hermiticity_error(h) > 1e-12)
    throw std::invalid_argument("run_discrete_protocol: Hamiltonian is not Hermitian");

  const ComplexMatrix u = propagator(h, duration / n);
  const auto doubles = doubly_occupied_indices(*psi0.basis);
  std::vector<double> steps;
  steps.reserve(static_cast<std::size_t>(n));

  ComplexVector psi = psi0.amplitudes;
  double before = psi.squaredNorm();
  for (int k = 0; k < n; ++k) {
    psi = u * psi;
    for (std::size_t i : doubles)
      psi[static_cast<Eigen::Index>(i)] = 0.0;
    const double after = psi.squaredNorm();
    steps.push_back(before > 0.0 ? after / before : 0.0);
    before = after;
  }
  const double success = psi.squaredNorm() / psi0.squared_norm();
  ComplexVector normed = success > 0.0 ? ComplexVector(psi / psi.norm())
                                       : ComplexVector::Zero(psi.size());
  return DiscreteRun{std::move(steps), success, StateVector(psi0.basis, psi),
                     StateVector(psi0.basis, std::move(normed))};
}

inline DiscreteRun run_discrete_protocol(int n, const FockState &input,
                                         double duration = kHalfSwapTime,
                                         double epsilon = 1.0) {
  if (!is_computational(input))
    throw std::invalid_argument("run_discrete_protocol: input " + input.label() +
                                " is not a computational-basis state");
  const BasisPtr basis = two_mode_basis();
  return run_discrete_protocol(coupling_hamiltonian(epsilon, *basis),
                               StateVector::basis_state(basis, input), n, duration);
}

struct AbsorptionRun {
  DensityMatrix rho;         ///< unnormalized; trace is the survival probability
  DensityMatrix conditional; ///< rho / survival (equal to rho if nothing survived)
  double survival;
  double absorbed;           ///< integrated absorber flux
};

inline AbsorptionRun run_absorption_protocol(double tau_D, const FockState &input,
                                             double duration = kHalfSwapTime) {
  if (!(tau_D > 0.0))
    throw std::invalid_argument("run_absorption_protocol: tau_D must be > 0");
  if (!is_computational(input))
    throw std::invalid_argument("run_absorption_protocol: input " + input.label() +
                                " is not a computational-basis state");
  const BasisPtr basis = two_mode_basis();
  const ComplexMatrix h = coupling_hamiltonian(1.0, *basis);
  const AbsorptionChannel channel(tau_D, *basis);
  auto ev = evolve_density_matrix(h, DensityMatrix::pure(StateVector::basis_state(basis, input)),
                                  duration, channel);
  const double survival = ev.rho.trace();
  DensityMatrix conditional = survival > 0.0 ? ev.rho.normalized() : ev.rho;
  return AbsorptionRun{std::move(ev.rho), std::move(conditional), survival, ev.absorbed};
}

enum class ProtocolFamily { discrete, absorption };

struct ErrorPoint {
  double n;     ///< measurement count, or dt/(4 tau_D) for absorption
  double tau_D; ///< NaN for the discrete family
  double error;
};

/// Error probability for the |11> input over a grid of N values.
inline std::vector<ErrorPoint> error_curve(ProtocolFamily family,
                                           const std::vector<double> &n_grid) {
  if (n_grid.empty())
    throw std::invalid_argument("error_curve: empty grid");
  for (double n : n_grid) {
    if (family == ProtocolFamily::discrete && (!(n >= 1.0) || n != std::floor(n)))
      throw std::invalid_argument("error_curve: discrete N must be a positive integer");
    if (!(n > 0.0))
      throw std::invalid_argument("error_curve: N must be > 0");
  }
  const FockState both{1, 1};
  return parallel_map(n_grid.size(), [&](std::size_t i) {
    const double n = n_grid[i];
    if (family == ProtocolFamily::discrete) {
      const auto run = run_discrete_protocol(static_cast<int>(n), both);
      return ErrorPoint{n, std::nan(""), 1.0 - run.success_probability};
    }
    const double tau = equivalent_tau_D(n);
    return ErrorPoint{n, tau, 1.0 - run_absorption_protocol(tau, both).survival};
  });
}

/// Multiplies each amplitude by exp(i * phase * n_total).
inline StateVector apply_output_phase(const StateVector &psi,
                                      double phase_per_photon = kDefaultOutputPhase) {
  ComplexVector amps = psi.amplitudes;
  for (std::size_t i = 0; i < psi.basis->size(); ++i)
    amps[static_cast<Eigen::Index>(i)] *=
        std::polar(1.0, phase_per_photon * (*psi.basis)[i].total());
  return StateVector(psi.basis, std::move(amps));
}

struct CurvePoint {
  double t;
  double value;
};

/// Probability of finding a photon launched into core 1 still in core 1.
inline std::vector<CurvePoint> rabi_curve(const std::vector<double> &times) {
  const BasisPtr basis = two_mode_basis();
  const ComplexMatrix h = coupling_hamiltonian(1.0, *basis);
  const auto psi0 = StateVector::basis_state(basis, FockState{1, 0});
  std::vector<CurvePoint> out;
  out.reserve(times.size());
  for (double t : times)
    out.push_back({t, std::norm(evolve_state(h, psi0, t).amplitude(FockState{1, 0}))});
  return out;
}

/// P11(t) for one photon in each core, no measurements (the HOM dip at pi/4).
inline std::vector<CurvePoint> hom_curve(const std::vector<double> &times) {
  const BasisPtr basis = two_mode_basis();
  const ComplexMatrix h = coupling_hamiltonian(1.0, *basis);
  const auto psi0 = StateVector::basis_state(basis, FockState{1, 1});
  std::vector<CurvePoint> out;
  out.reserve(times.size());
  for (double t : times) {
    if (t < -1e-12 || t > kHalfSwapTime + 1e-12)
      throw std::invalid_argument("hom_curve: times must lie in [0, pi/4]");
    out.push_back({t, std::norm(evolve_state(h, psi0, t).amplitude(FockState{1, 1}))});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Gate extraction.

struct GateReport {
  ComplexMatrix conditional_map;   ///< post-selected, columns renormalized
  ComplexMatrix unconditional_map; ///< raw amplitudes, no renormalization
  std::array<double, 4> success_probability_per_input{};
  double error_probability = 0.0; ///< 1 - survival for the |11> input
  double leakage = 0.0;           ///< |11> weight outside the computational basis
  double fidelity_to_target = 0.0;
  double unconditional_fidelity = 0.0;
};

/// |tr(M^dag T)| / 4, clamped to [0, 1].
inline double gate_fidelity(const ComplexMatrix &m, const ComplexMatrix &target) {
  const double f = std::abs((m.adjoint() * target).trace()) / 4.0;
  return std::min(1.0, std::max(0.0, f));
}

inline GateReport extract_gate(const ZenoProtocol &protocol) {
  protocol.validate();
  const BasisPtr basis = two_mode_basis();
  const ComplexMatrix h = coupling_hamiltonian(1.0, *basis);

  GateReport report;
  report.conditional_map = ComplexMatrix::Zero(4, 4);
  report.unconditional_map = ComplexMatrix::Zero(4, 4);
  std::array<Eigen::Index, 4> comp_rows{};
  for (std::size_t k = 0; k < 4; ++k)
    comp_rows[k] = static_cast<Eigen::Index>(basis->require_index(computational_state(k)));

  for (std::size_t col = 0; col < 4; ++col) {
    const auto input = StateVector::basis_state(basis, computational_state(col));
    ComplexVector out;
    if (const auto *d = std::get_if<DiscreteMeasurements>(&protocol.kind)) {
      out = run_discrete_protocol(h, input, d->n, protocol.interaction_time).survivor.amplitudes;
    } else {
      // Propagate the coherence |input><vacuum|; the vacuum does not evolve,
      // so the vacuum column carries the output amplitudes with their phases.
      const double tau = std::get<TwoPhotonAbsorption>(protocol.kind).tau_D;
      const AbsorptionChannel channel(tau, *basis);
      const auto vac = static_cast<Eigen::Index>(basis->require_index(FockState{0, 0}));
      const ComplexMatrix x0 =
          input.amplitudes * ComplexVector::Unit(input.amplitudes.size(), vac).adjoint();
      const auto ev = evolve_operator(h, x0, protocol.interaction_time, channel,
                                      default_step(tau, protocol.interaction_time));
      out = ev.value.col(vac);
    }
    out = apply_output_phase(StateVector(basis, out), protocol.output_phase).amplitudes;

    double comp_weight = 0.0;
    for (std::size_t row = 0; row < 4; ++row) {
      const Complex a = out[comp_rows[row]];
      report.unconditional_map(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) = a;
      comp_weight += std::norm(a);
    }
    report.success_probability_per_input[col] = comp_weight;
    if (comp_weight > 0.0)
      report.conditional_map.col(static_cast<Eigen::Index>(col)) =
          report.unconditional_map.col(static_cast<Eigen::Index>(col)) / std::sqrt(comp_weight);
    if (col == 3) {
      report.error_probability = 1.0 - out.squaredNorm();
      report.leakage = 1.0 - comp_weight;
    }
  }
  const ComplexMatrix target = sqrt_swap_prime_target();
  report.fidelity_to_target = gate_fidelity(report.conditional_map, target);
  report.unconditional_fidelity = gate_fidelity(report.unconditional_map, target);
  return report;
}

} // namespace zeno
