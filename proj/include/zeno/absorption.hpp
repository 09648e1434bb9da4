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

// Two-photon absorption rate for a hollow fiber core filled with three-level
// atoms, and the device lengths that rate implies. SI units throughout.

#pragma once

#include <cmath>
#include <cstddef>
#include <istream>
#include <locale>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "zeno/linalg.hpp"

namespace zeno::absorption {

inline constexpr double kSpeedOfLight = 299792458.0; // m/s

struct AbsorptionParams {
  double wavelength = 0.0;    ///< m
  double tau_R = 0.0;         ///< radiative lifetime, s
  double tau_C = 0.0;         ///< collisional lifetime, s
  double detuning = 0.0;      ///< same energy units as M21
  double M21 = 0.0;           ///< ground -> first excited matrix element
  double L_p = 0.0;           ///< wave-packet length (one standard deviation), m
  double core_diameter = 0.0; ///< m
  double N_A = 0.0;           ///< atoms in a length c*tau_R
  double finesse = 1.0;
  double target_error = 1.0;  ///< P_E used for the device-length estimate

  void validate() const {
    auto positive = [](double v, const char *name) {
      if (!(v > 0.0) || !std::isfinite(v))
        throw std::invalid_argument(std::string("AbsorptionParams: ") + name +
                                    " must be positive and finite");
    };
    positive(wavelength, "wavelength");
    positive(tau_R, "tau_R");
    positive(tau_C, "tau_C");
    positive(L_p, "L_p");
    positive(core_diameter, "core_diameter");
    positive(N_A, "N_A");
    positive(M21, "M21");
    if (detuning == 0.0 || !std::isfinite(detuning))
      throw std::invalid_argument(
          "AbsorptionParams: detuning must be nonzero (resonant case not covered)");
    if (!(finesse >= 1.0) || !std::isfinite(finesse))
      throw std::invalid_argument("AbsorptionParams: finesse must be >= 1");
    if (!(target_error > 0.0 && target_error <= 1.0))
      throw std::invalid_argument("AbsorptionParams: target_error must be in (0, 1]");
  }

  /// Outside the collision-dominated regime the rate formula still
  /// evaluates, but the factorization assumes tau_C << tau_R.
  std::vector<std::string> warnings() const {
    std::vector<std::string> w;
    if (tau_C > tau_R)
      w.emplace_back("tau_C exceeds tau_R; rate model assumes collision-dominated linewidth");
    return w;
  }
};

/// sigma0 = (3 / 2 pi) lambda^2
inline double resonant_cross_section(double wavelength) {
  if (!(wavelength > 0.0))
    throw std::invalid_argument("resonant_cross_section: wavelength must be > 0");
  return 3.0 / (2.0 * kPi) * wavelength * wavelength;
}

/// Circular core.
inline double core_area(double diameter) {
  if (!(diameter > 0.0))
    throw std::invalid_argument("core_area: diameter must be > 0");
  return kPi * 0.25 * diameter * diameter;
}

/// sigma0 / A; close to 1 for d = 0.78 lambda.
inline double unity_mode_check(double wavelength, double core_diameter) {
  return resonant_cross_section(wavelength) / core_area(core_diameter);
}

struct Factors {
  double f_delta; ///< detuning
  double f_C;     ///< collisions
  double f_P;     ///< wave-packet length
};

inline Factors factor_breakdown(const AbsorptionParams &p) {
  p.validate();
  const double ratio = p.M21 / p.detuning;
  return Factors{ratio * ratio, p.tau_C / p.tau_R, kSpeedOfLight * p.tau_R / p.L_p};
}

/// 1/e length for a given rate: l2 = c / R2.
inline double absorption_length(double rate) {
  if (!(rate > 0.0))
    throw std::invalid_argument("absorption_length: rate must be > 0");
  return kSpeedOfLight / rate;
}

struct DeviceLength {
  double length;                 ///< m
  double single_photon_loss_factor; ///< 1/f
};

/// L = (l2 / P_E) / f^2. The bare device (P_E = 1, f = 1) is l2 itself.
inline DeviceLength device_length(double target_error, double l2, double finesse) {
  if (!(target_error > 0.0 && target_error <= 1.0))
    throw std::invalid_argument("device_length: target error must be in (0, 1]");
  if (!(l2 > 0.0))
    throw std::invalid_argument("device_length: l2 must be > 0");
  if (!(finesse >= 1.0))
    throw std::invalid_argument("device_length: finesse must be >= 1");
  return DeviceLength{l2 / target_error / (finesse * finesse), 1.0 / finesse};
}

struct RateReport {
  double sigma0 = 0.0;
  double area = 0.0;
  double f_delta = 0.0;
  double f_C = 0.0;
  double f_P = 0.0;
  double R2 = 0.0;            ///< 1/s
  double l2 = 0.0;            ///< m
  double device_length = 0.0; ///< m
  double single_photon_loss_factor = 1.0;
  std::vector<std::string> warnings;
};

/// R2 = sqrt(2/pi) N_A f_delta f_C f_P (sigma0 / A) / tau_R
inline RateReport two_photon_rate(const AbsorptionParams &p) {
  const Factors f = factor_breakdown(p);
  RateReport r;
  r.sigma0 = resonant_cross_section(p.wavelength);
  r.area = core_area(p.core_diameter);
  r.f_delta = f.f_delta;
  r.f_C = f.f_C;
  r.f_P = f.f_P;
  r.R2 = std::sqrt(2.0 / kPi) * p.N_A * f.f_delta * f.f_C * f.f_P * (r.sigma0 / r.area) / p.tau_R;
  r.l2 = absorption_length(r.R2);
  const DeviceLength d = device_length(p.target_error, r.l2, p.finesse);
  r.device_length = d.length;
  r.single_photon_loss_factor = d.single_photon_loss_factor;
  r.warnings = p.warnings();
  return r;
}

// ---------------------------------------------------------------------------
// Parameter files: one "key = value" per line, '#' starts a comment.

class ParseError : public std::runtime_error {
public:
  ParseError(std::size_t line, const std::string &what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

private:
  std::size_t line_;
};

namespace detail {
inline std::string trim(const std::string &s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos)
    return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}
} // namespace detail

inline AbsorptionParams parse_params(std::istream &in) {
  AbsorptionParams p;
  const std::map<std::string, double AbsorptionParams::*> fields{
      {"wavelength", &AbsorptionParams::wavelength},
      {"tau_R", &AbsorptionParams::tau_R},
      {"tau_C", &AbsorptionParams::tau_C},
      {"detuning", &AbsorptionParams::detuning},
      {"M21", &AbsorptionParams::M21},
      {"L_p", &AbsorptionParams::L_p},
      {"core_diameter", &AbsorptionParams::core_diameter},
      {"N_A", &AbsorptionParams::N_A},
      {"finesse", &AbsorptionParams::finesse},
      {"target_error", &AbsorptionParams::target_error},
  };
  const std::vector<std::string> required{"wavelength", "tau_R", "tau_C", "detuning",
                                          "M21", "L_p", "core_diameter", "N_A"};
  std::map<std::string, std::size_t> seen;

  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto hash = raw.find('#');
    const std::string line = detail::trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty())
      continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ParseError(line_no, "expected key = value");
    const std::string key = detail::trim(line.substr(0, eq));
    const std::string value = detail::trim(line.substr(eq + 1));
    auto field = fields.find(key);
    if (field == fields.end())
      throw ParseError(line_no, "unknown key '" + key + "'");
    if (seen.count(key))
      throw ParseError(line_no, "duplicate key '" + key + "' (first on line " +
                                    std::to_string(seen[key]) + ")");
    std::istringstream vs(value);
    vs.imbue(std::locale::classic());
    double v = 0.0;
    if (value.empty() || !(vs >> v) || !(vs >> std::ws).eof())
      throw ParseError(line_no, "value for '" + key + "' is not a number");
    p.*(field->second) = v;
    seen[key] = line_no;
  }
  for (const auto &k : required)
    if (!seen.count(k))
      throw ParseError(line_no, "missing required key '" + k + "'");
  return p;
}

} // namespace zeno::absorption
