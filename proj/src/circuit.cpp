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

#include "latchsim/circuit.hpp"

#include "latchsim/errors.hpp"

namespace latchsim {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

void CircuitParams::validate() const {
    require(ejc_hz > 0, ErrorKind::parameter_domain, "ejc_hz must be > 0");
    require(anharmonicity_hz < 0, ErrorKind::parameter_domain, "anharmonicity_hz must be < 0");
    require(f_qubit_max_hz > f_qubit_min_hz, ErrorKind::parameter_domain,
            "f_qubit_max_hz must exceed f_qubit_min_hz");
    require(f_qubit_min_hz > 0, ErrorKind::parameter_domain, "qubit frequencies must be > 0");
    require(f_res_center_hz > 0, ErrorKind::parameter_domain, "f_res_center_hz must be > 0");
    require(f_res_tuning_hz >= 0, ErrorKind::parameter_domain, "f_res_tuning_hz must be >= 0");
    require(c_parasitic_f >= 0 && c_planar_f >= 0, ErrorKind::parameter_domain,
            "capacitances must be >= 0");
    require(t1_s > 0, ErrorKind::parameter_domain, "t1_s must be > 0");
    require(t2star_s > 0, ErrorKind::parameter_domain, "t2star_s must be > 0");
    require(t2star_s <= 2.0 * t1_s, ErrorKind::parameter_domain, "t2star_s must be <= 2*t1_s");
    require(kappa_hz > 0, ErrorKind::parameter_domain, "kappa_hz must be > 0");
}

double normalize_flux(double phi_ext) {
    double p = std::remainder(phi_ext, 2.0 * kPi);
    if (p <= -kPi) p += 2.0 * kPi;
    return p;
}

CouplingCoefficients coupling_coefficients(const CircuitParams& params, double phi_ext) {
    params.validate();
    const double phi = normalize_flux(phi_ext);
    const double c = std::cos(phi);

    const double fq0 = params.f_qubit_max_hz;
    const double fr0 = params.f_res_center_hz + 0.5 * params.f_res_tuning_hz;
    const double fscale = std::sqrt(fq0 * fr0);

    CouplingCoefficients k;
    k.phi_ext = phi;
    k.dq_hz = 0.5 * (params.f_qubit_max_hz - params.f_qubit_min_hz) * c;
    k.dr_hz = 0.5 * params.f_res_tuning_hz * c;
    k.eta_hz = params.cal_kerr * params.ejc_hz * c;
    k.gzz_hz = params.cal_zz * params.ejc_hz * c;
    k.gxx_junction_hz = params.cal_xx_junction * std::sqrt(params.ejc_hz * fscale) * c;
    k.gxx_capacitive_hz =
        params.cal_xx_capacitive * (params.c_parasitic_f + params.c_planar_f) * fscale;
    return k;
}

double qubit_frequency(const CircuitParams& params, double phi_ext) {
    params.validate();
    const double mid = 0.5 * (params.f_qubit_max_hz + params.f_qubit_min_hz);
    const double half = 0.5 * (params.f_qubit_max_hz - params.f_qubit_min_hz);
    return mid + half * std::cos(normalize_flux(phi_ext));
}

double resonator_frequency(const CircuitParams& params, double phi_ext) {
    params.validate();
    return params.f_res_center_hz +
           0.5 * params.f_res_tuning_hz * std::cos(normalize_flux(phi_ext));
}

double chi_xx_from_couplings(double gxx_total_hz, double detuning_hz, double anharmonicity_hz) {
    const double alpha = anharmonicity_hz;
    require(detuning_hz != 0.0, ErrorKind::singularity,
            "qubit-resonator detuning is zero");
    require(detuning_hz + alpha != 0.0, ErrorKind::singularity,
            "detuning resonance at the anharmonicity-shifted transition");
    // Magnitudes keep the contribution <= 0 on either side of the resonator;
    // the signed two-level expression flips sign with the detuning while the
    // measured transversal pull does not.
    const double d = std::fabs(detuning_hz);
    const double a = std::fabs(alpha);
    const double factor = 1.0 / d - 1.0 / (d + a);
    return -(gxx_total_hz * gxx_total_hz) * factor;
}

double dispersive_shift_zz(const CircuitParams& params, double phi_ext) {
    return 2.0 * coupling_coefficients(params, phi_ext).gzz_hz;
}

double dispersive_shift_xx(const CircuitParams& params, double phi_ext) {
    const CouplingCoefficients k = coupling_coefficients(params, phi_ext);
    const double detuning =
        qubit_frequency(params, phi_ext) - resonator_frequency(params, phi_ext);
    return chi_xx_from_couplings(k.gxx_total_hz(), detuning, params.anharmonicity_hz);
}

double dispersive_shift(const CircuitParams& params, double phi_ext) {
    return dispersive_shift_zz(params, phi_ext) + dispersive_shift_xx(params, phi_ext);
}

double longitudinal_fraction(const CircuitParams& params, double phi_ext) {
    const double zz = std::fabs(dispersive_shift_zz(params, phi_ext));
    const double xx = std::fabs(dispersive_shift_xx(params, phi_ext));
    require(zz + xx > 0, ErrorKind::parameter_domain, "total dispersive shift is zero");
    return zz / (zz + xx);
}

}  // namespace latchsim
