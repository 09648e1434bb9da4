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

#include <catch_amalgamated.hpp>

#include <Eigen/Eigenvalues>

#include "generators.hpp"
#include "zeno/zeno_gate.hpp"

using namespace zeno;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {
std::vector<double> grid(double stop, int points) {
  std::vector<double> t;
  for (int i = 0; i < points; ++i)
    t.push_back(stop * i / (points - 1));
  return t;
}

// Brute-force N-measurement protocol with a spectral propagator, for |11>.
double brute_force_error(int n) {
  const auto b = two_mode_basis();
  const ComplexMatrix h = coupling_hamiltonian(1.0, *b);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h);
  const double dt = kHalfSwapTime / n;
  const ComplexVector ph = (es.eigenvalues().cast<Complex>() * Complex(0.0, -dt)).array().exp();
  const ComplexMatrix u = es.eigenvectors() * ph.asDiagonal() * es.eigenvectors().adjoint();
  ComplexVector psi = StateVector::basis_state(b, FockState{1, 1}).amplitudes;
  for (int k = 0; k < n; ++k) {
    psi = u * psi;
    psi[static_cast<Eigen::Index>(b->require_index({2, 0}))] = 0.0;
    psi[static_cast<Eigen::Index>(b->require_index({0, 2}))] = 0.0;
  }
  return 1.0 - psi.squaredNorm();
}
} // namespace

TEST_CASE("single photon transfers as cos^2(t)") {
  for (const auto &p : rabi_curve(grid(2 * kPi, 1000)))
    CHECK_THAT(p.value, WithinAbs(std::pow(std::cos(p.t), 2), 1e-9));
}

TEST_CASE("two photons show the HOM dip cos^2(2t)") {
  const auto curve = hom_curve(grid(kHalfSwapTime, 200));
  for (const auto &p : curve)
    CHECK_THAT(p.value, WithinAbs(std::pow(std::cos(2 * p.t), 2), 1e-9));
  CHECK(curve.back().value < 1e-12);
  REQUIRE_THROWS_AS(hom_curve({1.0}), std::invalid_argument);
}

TEST_CASE("discrete protocol matches the closed form and a brute-force oracle") {
  std::vector<double> ns;
  for (int n = 1; n <= 200; ++n)
    ns.push_back(n);
  const auto curve = error_curve(ProtocolFamily::discrete, ns);
  for (const auto &p : curve) {
    const int n = static_cast<int>(p.n);
    const double c = std::cos(kPi / (2.0 * n));
    CHECK_THAT(p.error, WithinAbs(1.0 - std::pow(c, 2 * n), 1e-10));
    CHECK_THAT(closed_form_error(n), WithinAbs(1.0 - std::pow(c, 2 * n), 1e-13));
  }
  for (int n : {1, 2, 7, 64})
    CHECK_THAT(curve[static_cast<std::size_t>(n - 1)].error, WithinAbs(brute_force_error(n), 1e-12));
  CHECK_THAT(curve[0].error, WithinAbs(1.0, 1e-15));
}

TEST_CASE("error falls as pi^2 / (4N)") {
  const double e = run_discrete_protocol(1000, FockState{1, 1}).success_probability;
  CHECK_THAT(1000.0 * (1.0 - e), WithinRel(kPi * kPi / 4.0, 0.02));
}

TEST_CASE("per-step successes multiply to the total") {
  const auto run = run_discrete_protocol(17, FockState{1, 1});
  double prod = 1.0;
  for (double s : run.step_success)
    prod *= s;
  CHECK_THAT(prod, WithinRel(run.success_probability, 1e-12));
  CHECK_THAT(run.state.squared_norm(), WithinAbs(1.0, 1e-12));
}

TEST_CASE("continuous absorption tracks discrete measurements") {
  const std::vector<double> ns{10, 20, 50, 100};
  const auto abs_curve = error_curve(ProtocolFamily::absorption, ns);
  for (const auto &p : abs_curve) {
    const double discrete = closed_form_error(static_cast<int>(p.n));
    const double rel = std::abs(p.error - discrete) / discrete;
    CHECK(rel < 0.10);
    if (p.n >= 50)
      CHECK(rel < 0.03);
    CHECK_THAT(p.tau_D, WithinRel(kHalfSwapTime / (4 * p.n), 1e-15));
  }
}

TEST_CASE("curve inputs are validated") {
  REQUIRE_THROWS_AS(error_curve(ProtocolFamily::discrete, {}), std::invalid_argument);
  REQUIRE_THROWS_AS(error_curve(ProtocolFamily::discrete, {2.5}), std::invalid_argument);
  REQUIRE_THROWS_AS(error_curve(ProtocolFamily::absorption, {0.0}), std::invalid_argument);
  REQUIRE_THROWS_AS(run_discrete_protocol(0, FockState{1, 1}), std::invalid_argument);
  REQUIRE_THROWS_AS(run_discrete_protocol(3, FockState{2, 0}), std::invalid_argument);
  REQUIRE_THROWS_AS(run_absorption_protocol(0.01, FockState{0, 2}), std::invalid_argument);
  REQUIRE_THROWS_AS(ZenoProtocol::absorption(-1.0).validate(), std::invalid_argument);
}

TEST_CASE("absorption run bookkeeping") {
  const auto run = run_absorption_protocol(0.01, FockState{1, 1});
  CHECK_THAT(run.survival + run.absorbed, WithinAbs(1.0, 1e-9));
  CHECK_THAT(run.conditional.trace(), WithinAbs(1.0, 1e-12));
  // A single photon never meets the absorber.
  const auto single = run_absorption_protocol(0.01, FockState{0, 1});
  CHECK_THAT(single.survival, WithinAbs(1.0, 1e-12));
}

TEST_CASE("reference gates and the controlled-Z construction") {
  const ComplexMatrix root = sqrt_swap_prime_target();
  CHECK(max_abs(root * root - swap_prime_target()) < 1e-12);
  CHECK(max_abs(compose_controlled_z() - controlled_z_target()) == 0.0);
  CHECK(max_abs(sqrt_swap_target() * sqrt_swap_target() - swap_gate()) < 1e-15);
  const ComplexMatrix h = hadamard_on_target();
  CHECK(max_abs(h * controlled_z_target() * h - cnot_target()) < 1e-15);
  for (const ComplexMatrix &g : {root, swap_gate(), controlled_z_target(), cnot_target(), h})
    CHECK(max_abs(g.adjoint() * g - ComplexMatrix::Identity(4, 4)) < 1e-15);
}

TEST_CASE("gate extraction converges to sqrt(SWAP')") {
  const ComplexMatrix target = sqrt_swap_prime_target();
  double previous = 0.0;
  for (int n : {1, 3, 10, 30, 100, 300, 1000}) {
    const GateReport g = extract_gate(ZenoProtocol::discrete(n));
    // The single-photon block never meets the projector.
    CHECK(max_abs(g.unconditional_map.block(0, 0, 3, 3) - target.block(0, 0, 3, 3)) < 1e-12);
    CHECK_THAT(g.error_probability, WithinAbs(closed_form_error(n), 1e-12));
    CHECK(g.unconditional_fidelity >= previous);
    previous = g.unconditional_fidelity;
    for (std::size_t k = 0; k < 3; ++k)
      CHECK_THAT(g.success_probability_per_input[k], WithinAbs(1.0, 1e-12));
  }
  const GateReport g = extract_gate(ZenoProtocol::discrete(1000));
  CHECK(max_abs(g.unconditional_map - target) < 5e-3);
  CHECK(g.unconditional_fidelity > 0.999);
  CHECK(max_abs(g.conditional_map - target) < 1e-12);
  CHECK_THAT(g.leakage, WithinAbs(g.error_probability, 1e-12));
}

TEST_CASE("absorption gate has the right phases") {
  const ComplexMatrix target = sqrt_swap_prime_target();
  const GateReport g = extract_gate(ZenoProtocol::absorption(equivalent_tau_D(100)));
  CHECK(max_abs(g.unconditional_map.block(0, 0, 3, 3) - target.block(0, 0, 3, 3)) < 1e-10);
  CHECK(std::abs(g.conditional_map(3, 3) - kI) < 1e-3);
  CHECK(g.unconditional_fidelity > 0.99);
  CHECK_THAT(g.error_probability, WithinRel(closed_form_error(100), 0.03));
}

TEST_CASE("output phase is e^{i phi n}") {
  const auto b = two_mode_basis();
  testing::Gen gen(3);
  const StateVector psi(b, gen.unit_vector(6));
  const StateVector out = apply_output_phase(psi, 0.3);
  for (std::size_t i = 0; i < b->size(); ++i) {
    const auto k = static_cast<Eigen::Index>(i);
    CHECK(std::abs(out.amplitudes[k] - psi.amplitudes[k] * std::polar(1.0, 0.3 * (*b)[i].total())) < 1e-15);
  }
}
