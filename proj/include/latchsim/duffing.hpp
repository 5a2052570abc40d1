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

// Classical steady states of the driven Kerr resonator
//   alpha' = -i (Delta_d + eta |alpha|^2) alpha - (kappa/2) alpha - i eps,
// whose fixed-point photon numbers solve
//   n [(Delta_d + eta n)^2 + kappa^2/4] = eps^2.
// All *_hz fields are ordinary frequencies; dynamics converts to angular
// internally.

#include <complex>
#include <optional>
#include <span>
#include <vector>

namespace latchsim {

using cplx = std::complex<double>;

enum class Branch { dark, bright, unstable };

const char* branch_name(Branch b);

struct ResonatorDrive {
    double detuning_hz = 0.0;  // drive minus (state-conditioned) resonator frequency
    double eta_hz = 0.0;       // self-Kerr
    double kappa_hz = 1.0;     // linewidth
    double epsilon_hz = 0.0;   // drive amplitude

    void validate() const;
};

struct SteadyStateSolution {
    cplx alpha;
    double photon_number = 0.0;
    bool stable = true;
    Branch branch = Branch::dark;
};

// All non-negative fixed points, sorted by photon number ascending. Cardano
// closed form with a Newton polish; stability from the eigenvalues of the
// 2x2 linearization (real part within 1e-12*kappa of zero counts unstable).
std::vector<SteadyStateSolution> steady_states(const ResonatorDrive& drive);

// Fixed-point field amplitude for a given photon-number root.
cplx steady_alpha(const ResonatorDrive& drive, double photon_number);

// Photon numbers of the fold points (where the root count changes), when the
// drive geometry admits them: sign(eta * detuning) < 0 and
// |detuning| > (sqrt(3)/2) kappa.
std::optional<std::pair<double, double>> fold_photon_numbers(const ResonatorDrive& drive);

// Integrates the flow from alpha0 to an attractor and labels it.
Branch basin_classify(const ResonatorDrive& drive, cplx alpha0);

// Qubit-state-conditioned drive construction. The resonator frequency seen
// by the drive is pulled by 2*gzz*s(level) with s = +1/2, -1/2 for |0>,|1>
// and s = 1/2 - chi21_ratio for |2>, so that the |2> pull is chi21_ratio
// times the |1> pull.
struct ReadoutOperatingPoint {
    double f_res_hz = 0.0;     // bare resonator frequency at the operating flux
    double gzz_hz = 0.0;       // longitudinal coupling at the operating flux
    double chi21_ratio = 1.8;  // |2> dispersive pull relative to |1>
    double eta_hz = 0.0;
    double kappa_hz = 1.0;
    double epsilon_hz = 0.0;

    double state_weight(int level) const;
    double resonator_frequency_for(int level) const;
    ResonatorDrive drive_for(double f_drive_hz, int level) const;
};

struct BifurcationRow {
    double f_hz = 0.0;
    int qubit_state = 0;
    std::optional<double> n_dark, n_bright, n_unstable;
    bool bistable = false;
};

struct BifurcationSweep {
    std::vector<BifurcationRow> rows;
    // Bistable drive-frequency window [f_low, f_high]; edges refined by
    // bisection on the root count between adjacent grid frequencies.
    std::optional<std::pair<double, double>> window_hz;
};

BifurcationSweep bifurcation_sweep(const ReadoutOperatingPoint& op,
                                   std::span<const double> f_drive_hz, int qubit_state);

}  // namespace latchsim
