// Copyright 2026 The latchsim Authors
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

// Fits the flux dependence of the dispersive shift to
//   shift(phi) = A cos(phi) - D(phi) (B_j cos(phi) + B_c)^2
// where D(phi) is the transversal conversion factor of the device (known
// frequencies and anharmonicity). Linear least squares on the expanded
// quadratic initializes a simplex refinement of (A, B_j, B_c).

#include <filesystem>
#include <span>
#include <vector>

#include "latchsim/circuit.hpp"

namespace latchsim {

struct FluxPoint {
    double phi_ext;
    double shift_hz;
};

struct FluxFitResult {
    double a_zz_hz = 0.0;             // longitudinal amplitude A (chi_zz(0))
    double b_xx_junction_hz = 0.0;    // junction XX amplitude, reported >= 0
    double b_xx_capacitive_hz = 0.0;  // capacitive XX amplitude (sign relative to B_j)
    double rms_residual_hz = 0.0;
    int evaluations = 0;

    // Model evaluations with the fitted parameters.
    double shift_at(const CircuitParams& device, double phi_ext) const;
    double longitudinal_fraction_at(const CircuitParams& device, double phi_ext) const;
};

FluxFitResult fit_flux_sweep(std::span<const FluxPoint> data, const CircuitParams& device);

// Synthesizes a sweep from the device model (for round trips and the CLI).
std::vector<FluxPoint> synthesize_flux_sweep(const CircuitParams& device, int n_points);

// CSV with header "phi_ext,shift_hz".
std::vector<FluxPoint> parse_flux_csv(const std::string& content);
std::string flux_csv_to_string(std::span<const FluxPoint> data);

}  // namespace latchsim
