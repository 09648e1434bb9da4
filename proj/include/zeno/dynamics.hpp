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

// Time evolution in the two-mode Fock space: unitary propagation, projective
// "no two photons in one mode" measurements, and density-matrix integration
// with a two-photon absorption sink.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <utility>
#include <vector>

#include <Eigen/Eigenvalues>

#include "zeno/fock.hpp"
#include "zeno/linalg.hpp"

namespace zeno {

/// True for states the two-photon absorber (or Zeno measurement) removes.
inline bool is_doubly_occupied(const FockState &s) {
  return std::any_of(s.occupations.begin(), s.occupations.end(),
                     [](int n) { return n >= 2; });
}

inline std::vector<std::size_t> doubly_occupied_indices(const FockBasis &basis) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < basis.size(); ++i)
    if (is_doubly_occupied(basis[i]))
      out.push_back(i);
  return out;
}

class DensityMatrix {
public:
  static constexpr double kHermitianTol = 1e-10;
  static constexpr double kPositivityTol = 1e-9;
  static constexpr double kTraceTol = 1e-9;

  DensityMatrix(BasisPtr basis, ComplexMatrix entries)
      : basis_(std::move(basis)), entries_(std::move(entries)) {
    check_shape();
    if (hermiticity_error(entries_) > kHermitianTol)
      throw std::invalid_argument("DensityMatrix: not Hermitian");
    if (min_eigenvalue() < -kPositivityTol)
      throw std::invalid_argument("DensityMatrix: not positive semidefinite");
    if (trace() > 1.0 + kTraceTol)
      throw std::invalid_argument("DensityMatrix: trace exceeds 1");
  }

  static DensityMatrix pure(const StateVector &psi) {
    return DensityMatrix(psi.basis, psi.amplitudes * psi.amplitudes.adjoint());
  }

  /// Skips the positivity check; used for integrator output that has already
  /// been checked against the looser diagnostic threshold.
  static DensityMatrix unchecked(BasisPtr basis, ComplexMatrix entries) {
    return DensityMatrix(std::move(basis), std::move(entries), Unchecked{});
  }

  const BasisPtr &basis() const { return basis_; }
  const ComplexMatrix &entries() const { return entries_; }
  double trace() const { return entries_.trace().real(); }
  double population(std::size_t i) const {
    return entries_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)).real();
  }
  double population(const FockState &s) const {
    return population(basis_->require_index(s));
  }

  double min_eigenvalue() const {
    const ComplexMatrix herm = 0.5 * (entries_ + entries_.adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(herm, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
  }

  /// rho / tr(rho); throws if the trace vanished.
  DensityMatrix normalized() const {
    const double tr = trace();
    if (!(tr > 0.0))
      throw std::domain_error("DensityMatrix: cannot normalize zero trace");
    return unchecked(basis_, entries_ / tr);
  }

private:
  struct Unchecked {};
  DensityMatrix(BasisPtr basis, ComplexMatrix entries, Unchecked)
      : basis_(std::move(basis)), entries_(std::move(entries)) {
    check_shape();
  }

  void check_shape() const {
    if (!basis_)
      throw std::invalid_argument("DensityMatrix: null basis");
    const auto dim = static_cast<Eigen::Index>(basis_->size());
    if (entries_.rows() != dim || entries_.cols() != dim)
      throw std::invalid_argument("DensityMatrix: shape does not match basis");
    if (!all_finite(entries_))
      throw std::invalid_argument("DensityMatrix: non-finite entries");
  }

  BasisPtr basis_;
  ComplexMatrix entries_;
};

/// Two-photon absorption acting on every doubly occupied state at rate
/// 1/tau_D. tau_D = +infinity disables the channel.
class AbsorptionChannel {
public:
  AbsorptionChannel(double tau_D, const FockBasis &basis)
      : tau_D_(tau_D), absorbed_(doubly_occupied_indices(basis)),
        dim_(basis.size()) {
    if (!(tau_D > 0.0) || std::isnan(tau_D))
      throw std::invalid_argument("AbsorptionChannel: tau_D must be > 0");
  }

  static AbsorptionChannel disabled(const FockBasis &basis) {
    return AbsorptionChannel(std::numeric_limits<double>::infinity(), basis);
  }

  double tau_D() const { return tau_D_; }
  bool enabled() const { return std::isfinite(tau_D_); }
  const std::vector<std::size_t> &absorbed_states() const { return absorbed_; }

  double rate() const { return enabled() ? 1.0 / tau_D_ : 0.0; }

  /// Gamma = rate * projector onto the absorbed states.
  ComplexMatrix rate_matrix() const {
    const auto dim = static_cast<Eigen::Index>(dim_);
    ComplexMatrix g = ComplexMatrix::Zero(dim, dim);
    for (std::size_t i : absorbed_)
      g(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = rate();
    return g;
  }

private:
  double tau_D_;
  std::vector<std::size_t> absorbed_;
  std::size_t dim_;
};

/// exp(-i H t), hbar = 1.
inline ComplexMatrix propagator(const ComplexMatrix &h, double t) {
  return matrix_exponential(h, Complex(0.0, -t));
}

inline StateVector evolve_state(const ComplexMatrix &h, const StateVector &psi0,
                                double t) {
  if (h.rows() != psi0.amplitudes.size() || h.cols() != psi0.amplitudes.size())
    throw std::invalid_argument("evolve_state: Hamiltonian dimension mismatch");
  if (hermiticity_error(h) > 1e-12)
    throw std::invalid_argument("evolve_state: Hamiltonian is not Hermitian");
  if (t == 0.0)
    return psi0;
  return StateVector(psi0.basis, propagator(h, t) * psi0.amplitudes);
}

struct ProjectionResult {
  StateVector survivor;       ///< doubly occupied amplitudes zeroed, not renormalized
  StateVector state;          ///< survivor renormalized; zero vector if undefined
  double success_probability; ///< squared norm of the survivor
  bool defined;               ///< false when nothing survived

  double failure_probability() const { return 1.0 - success_probability; }
};

/// Measurement that asks "are two photons in the same mode?" and keeps the
/// "no" branch.
inline ProjectionResult project_no_double_occupancy(const StateVector &psi) {
  ComplexVector kept = psi.amplitudes;
  for (std::size_t i : doubly_occupied_indices(*psi.basis))
    kept[static_cast<Eigen::Index>(i)] = 0.0;
  const double p = kept.squaredNorm();
  const bool defined = p > 0.0;
  ComplexVector normed = defined ? ComplexVector(kept / std::sqrt(p))
                                 : ComplexVector::Zero(kept.size());
  return ProjectionResult{StateVector(psi.basis, kept),
                          StateVector(psi.basis, std::move(normed)), p, defined};
}

/// dt = min(0.01, tau_D/10, duration/1000).
inline double default_step(double tau_D, double duration) {
  double dt = 0.01;
  if (std::isfinite(tau_D))
    dt = std::min(dt, tau_D / 10.0);
  if (duration > 0.0)
    dt = std::min(dt, duration / 1000.0);
  return dt;
}

/// Largest step evolve_density_matrix accepts.
inline double max_step(double tau_D) {
  return std::isfinite(tau_D) ? std::min(0.01, tau_D / 10.0) : 0.01;
}

struct OperatorEvolution {
  ComplexMatrix value;
  double absorbed = 0.0; ///< integral of tr(Gamma X) dt
  std::size_t steps = 0;
  double dt = 0.0;
};

/// Fixed-step RK4 for dX/dt = -i (H_eff X - X H_eff^dag) with
/// H_eff = H - (i/2) Gamma. Applies to density matrices and, by linearity, to
/// coherences such as |psi><vacuum|.
inline OperatorEvolution evolve_operator(const ComplexMatrix &h,
                                         const ComplexMatrix &x0, double t,
                                         const AbsorptionChannel &channel,
                                         double dt) {
  if (!(t >= 0.0) || !std::isfinite(t))
    throw std::invalid_argument("evolve_operator: duration must be finite and >= 0");
  if (!(dt > 0.0))
    throw std::invalid_argument("evolve_operator: step must be > 0");
  const double limit = max_step(channel.tau_D());
  if (dt > limit * (1.0 + 1e-12)) {
    std::ostringstream msg;
    msg << "evolve_operator: step " << dt << " exceeds min(0.01, tau_D/10) = " << limit;
    throw std::invalid_argument(msg.str());
  }
  if (h.rows() != x0.rows() || h.cols() != x0.cols())
    throw std::invalid_argument("evolve_operator: dimension mismatch");

  OperatorEvolution out{x0, 0.0, 0, 0.0};
  if (t == 0.0)
    return out;

  const auto steps = static_cast<std::size_t>(std::ceil(t / dt - 1e-9));
  const double h_step = t / static_cast<double>(steps);
  const ComplexMatrix gamma = channel.rate_matrix();
  const ComplexMatrix heff = h - Complex(0.0, 0.5) * gamma;
  const ComplexMatrix heff_dag = heff.adjoint();

  auto deriv = [&](const ComplexMatrix &x) -> ComplexMatrix {
    return -kI * (heff * x - x * heff_dag);
  };
  auto sink = [&](const ComplexMatrix &x) { return (gamma * x).trace().real(); };

  ComplexMatrix x = x0;
  double absorbed = 0.0;
  for (std::size_t s = 0; s < steps; ++s) {
    const ComplexMatrix k1 = deriv(x);
    const ComplexMatrix x2 = x + (0.5 * h_step) * k1;
    const ComplexMatrix k2 = deriv(x2);
    const ComplexMatrix x3 = x + (0.5 * h_step) * k2;
    const ComplexMatrix k3 = deriv(x3);
    const ComplexMatrix x4 = x + h_step * k3;
    const ComplexMatrix k4 = deriv(x4);
    absorbed += h_step / 6.0 *
                (sink(x) + 2.0 * sink(x2) + 2.0 * sink(x3) + sink(x4));
    x += (h_step / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  out.value = std::move(x);
  out.absorbed = absorbed;
  out.steps = steps;
  out.dt = h_step;
  return out;
}

struct DensityEvolution {
  DensityMatrix rho;
  double absorbed = 0.0; ///< probability that left through the absorber
  std::size_t steps = 0;
  double dt = 0.0;
};

/// Integrates the density matrix under the coupling Hamiltonian plus
/// two-photon absorption. Populations of doubly occupied states decay at
/// 1/tau_D, their coherences with the rest at 1/(2 tau_D).
inline DensityEvolution evolve_density_matrix(const ComplexMatrix &h,
                                              const DensityMatrix &rho0, double t,
                                              const AbsorptionChannel &channel,
                                              double dt) {
  if (hermiticity_error(h) > 1e-12)
    throw std::invalid_argument("evolve_density_matrix: Hamiltonian is not Hermitian");
  OperatorEvolution ev = evolve_operator(h, rho0.entries(), t, channel, dt);
  auto rho = DensityMatrix::unchecked(rho0.basis(), std::move(ev.value));
  const double min_eig = rho.min_eigenvalue();
  if (min_eig < -1e-6) {
    std::ostringstream msg;
    msg << "evolve_density_matrix: positivity violated (min eigenvalue " << min_eig
        << "); reduce the step size";
    throw std::runtime_error(msg.str());
  }
  return DensityEvolution{std::move(rho), ev.absorbed, ev.steps, ev.dt};
}

inline DensityEvolution evolve_density_matrix(const ComplexMatrix &h,
                                              const DensityMatrix &rho0, double t,
                                              const AbsorptionChannel &channel) {
  return evolve_density_matrix(h, rho0, t, channel, default_step(channel.tau_D(), t));
}

} // namespace zeno
