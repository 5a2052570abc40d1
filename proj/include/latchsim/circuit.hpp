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

// Flux-dependent qubit-resonator interaction model. The coupling junction
// contributes a coefficient set that is modulated as cos(phi_ext); the
// capacitive transversal coupling is flux-independent and interferes with
// the junction-mediated one (destructively at phi_ext = 0).

#include <cmath>

namespace latchsim {

struct CircuitParams {
    double ejc_hz = 2.0e9;            // coupling-junction Josephson energy E_JC/h
    double anharmonicity_hz = -290e6; // transmon anharmonicity, negative
    double f_qubit_max_hz = 5.2e9;    // qubit frequency at phi_ext = 0
    double f_qubit_min_hz = 4.3e9;    // qubit frequency at phi_ext = pi
    double f_res_center_hz = 6.66e9;  // resonator center frequency
    double f_res_tuning_hz = 50e6;    // full resonator tuning range
    double c_parasitic_f = 4e-15;     // junction parasitic capacitance
    double c_planar_f = 2.9e-15;      // planar-electrode mutual capacitance
    double t1_s = 15e-6;
    double t2star_s = 5.6e-6;
    double kappa_hz = 40e6;           // resonator linewidth kappa/2pi

    // Calibration constants for the default perturbative coefficient map.
    // The closed-form coefficient derivation from the circuit layout is not
    // modeled; these map the layout constants onto the observable
    // interaction amplitudes and are chosen to reproduce the measured
    // observables (tuning ranges, 90% longitudinal fraction at zero flux).
    double cal_zz = 0.012;                    // gzz(0) = cal_zz * E_JC
    double cal_kerr = 0.002;                  // eta(0) = cal_kerr * E_JC
    double cal_xx_junction = 0.08158946408;   // gxx_j(0) = cal_xx_junction * sqrt(E_JC * sqrt(fq*fr))
    double cal_xx_capacitive = -1.474856553e12; // gxx_c = cal_xx_capacitive * C_mutual * sqrt(fq*fr)

    void validate() const;  // throws ErrorKind::parameter_domain
};

struct CouplingCoefficients {
    double phi_ext = 0.0;          // external flux, radians (reduced flux quantum units)
    double dq_hz = 0.0;            // qubit frequency shift
    double dr_hz = 0.0;            // resonator frequency shift
    double eta_hz = 0.0;           // resonator self-Kerr
    double gzz_hz = 0.0;           // longitudinal coupling
    double gxx_junction_hz = 0.0;  // junction-mediated transversal coupling
    double gxx_capacitive_hz = 0.0;// capacitance-mediated transversal coupling (flux independent)

    double gxx_total_hz() const { return gxx_junction_hz + gxx_capacitive_hz; }
};

// Wraps flux to [-pi, pi].
double normalize_flux(double phi_ext);

CouplingCoefficients coupling_coefficients(const CircuitParams& params, double phi_ext);

// Cosine interpolation between the end-point frequencies.
double qubit_frequency(const CircuitParams& params, double phi_ext);
double resonator_frequency(const CircuitParams& params, double phi_ext);

// Transversal contribution to the f_C0 - f_C1 shift from the standard
// two-level-plus-anharmonicity dispersive formula,
//   chi_xx = -|g|^2 (1/D - 1/(D + a)),  D = |detuning|, a = |anharmonicity|.
// Kept as one function so an alternative derivation can be swapped in.
// Always <= 0. Throws ErrorKind::singularity at detuning = 0 or = -alpha.
double chi_xx_from_couplings(double gxx_total_hz, double detuning_hz, double anharmonicity_hz);

// f_C0 - f_C1 = chi_zz + chi_xx at the given flux.
double dispersive_shift(const CircuitParams& params, double phi_ext);
double dispersive_shift_zz(const CircuitParams& params, double phi_ext);  // 2*gzz
double dispersive_shift_xx(const CircuitParams& params, double phi_ext);  // <= 0

// |chi_zz| / (|chi_zz| + |chi_xx|), the share of the shift magnitude carried
// by the longitudinal coupling.
double longitudinal_fraction(const CircuitParams& params, double phi_ext);

}  // namespace latchsim
