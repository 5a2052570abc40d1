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

// Small full master-equation solver on a 3-level qubit tensor N-photon Fock
// space, drive frame. Intentionally limited (cutoff <= 32): it exists to
// bound the hybrid model's error where both apply, not to generate shots.

#include <array>
#include <complex>
#include <cstdint>
#include <vector>

namespace latchsim {

struct LindbladSystem {
    int fock_cutoff = 16;  // Fock levels 0..fock_cutoff

    // Hamiltonian/(2 pi), all in Hz:
    //   H = sum_s |s><s| (level_energy[s] + level_detuning[s] a^dag a)
    //     + (kerr/2) (a^dag a)^2 + epsilon (a + a^dag)
    //     + gxx (|1><0| a + |2><1| sqrt(2) a + h.c.)
    std::array<double, 3> level_detuning_hz{0.0, 0.0, 0.0};
    std::array<double, 3> level_energy_hz{0.0, 0.0, 0.0};
    double kerr_hz = 0.0;
    double epsilon_hz = 0.0;
    double gxx_hz = 0.0;

    // Dissipators: photon loss kappa, qubit ladder decay (2x on 2->1),
    // thermal excitation 0->1, pure dephasing on the qubit number operator.
    double kappa_hz = 0.0;
    double gamma_down_per_s = 0.0;
    double gamma_up_per_s = 0.0;
    double gamma_phi_per_s = 0.0;
};

struct OracleResult {
    std::vector<double> t_s;
    std::vector<double> n_photon;
    std::vector<double> p0, p1, p2;
    double max_trace_drift = 0.0;   // max |tr(rho) - 1| seen
    double min_eigenvalue = 0.0;    // most negative eigenvalue seen at record times
    double max_top_fock = 0.0;      // max population of the top Fock level
};

// Evolves |initial_level> x |vacuum> and records every `record_stride`
// steps. Throws ErrorKind::truncation when the top Fock level population
// exceeds 1e-6 and ErrorKind::parameter_domain on cutoff/step violations.
OracleResult lindblad_oracle(const LindbladSystem& sys, int initial_level, double duration_s,
                             double dt_s, int record_stride = 10);

// Dense Hamiltonian (row-major, dimension 3*(fock_cutoff+1)) in angular
// units; for spectrum-based cross checks.
std::vector<std::complex<double>> hamiltonian_matrix(const LindbladSystem& sys);

struct ReadoutOperatingPoint;  // duffing.hpp
struct NoiseModel;             // dynamics.hpp

// Maps the hybrid model's configuration onto the oracle system (no
// transversal coupling; same conditioned detunings, Kerr, drive and rates).
LindbladSystem lindblad_from_operating_point(const ReadoutOperatingPoint& op, double f_drive_hz,
                                             const NoiseModel& noise, int fock_cutoff);

}  // namespace latchsim
