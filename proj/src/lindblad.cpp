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

#include "latchsim/lindblad.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <cmath>

#include "latchsim/duffing.hpp"
#include "latchsim/dynamics.hpp"
#include "latchsim/errors.hpp"

namespace latchsim {

namespace {

constexpr double kTau = 6.283185307179586476925286766559;

using Mat = Eigen::MatrixXcd;

struct Superop {
    Mat h;                    // Hamiltonian, angular units
    std::vector<Mat> lindblad_ops;
    std::vector<Mat> ldl;     // precomputed L^dag L

    Mat deriv(const Mat& rho) const {
        Mat out = std::complex<double>(0.0, -1.0) * (h * rho - rho * h);
        for (size_t i = 0; i < lindblad_ops.size(); ++i) {
            const Mat& l = lindblad_ops[i];
            out += l * rho * l.adjoint() - 0.5 * (ldl[i] * rho + rho * ldl[i]);
        }
        return out;
    }
};

int dim_of(const LindbladSystem& sys) { return 3 * (sys.fock_cutoff + 1); }

int idx(const LindbladSystem& sys, int level, int fock) {
    return level * (sys.fock_cutoff + 1) + fock;
}

Mat build_hamiltonian(const LindbladSystem& sys) {
    const int nf = sys.fock_cutoff + 1;
    Mat h = Mat::Zero(dim_of(sys), dim_of(sys));
    for (int s = 0; s < 3; ++s) {
        for (int n = 0; n < nf; ++n) {
            const int i = idx(sys, s, n);
            h(i, i) = kTau * (sys.level_energy_hz[s] + sys.level_detuning_hz[s] * n +
                              0.5 * sys.kerr_hz * static_cast<double>(n) * n);
            if (n + 1 < nf) {
                const double drv = kTau * sys.epsilon_hz * std::sqrt(n + 1.0);
                h(idx(sys, s, n + 1), i) += drv;
                h(i, idx(sys, s, n + 1)) += drv;
            }
        }
    }
    if (sys.gxx_hz != 0.0) {
        for (int s = 0; s < 2; ++s) {
            const double g = kTau * sys.gxx_hz * std::sqrt(s + 1.0);
            for (int n = 1; n < nf; ++n) {
                // |s+1, n-1><s, n| sqrt(n) + h.c.
                const double amp = g * std::sqrt(static_cast<double>(n));
                h(idx(sys, s + 1, n - 1), idx(sys, s, n)) += amp;
                h(idx(sys, s, n), idx(sys, s + 1, n - 1)) += amp;
            }
        }
    }
    return h;
}

Superop build_superop(const LindbladSystem& sys) {
    const int nf = sys.fock_cutoff + 1;
    const int d = dim_of(sys);
    Superop sop;
    sop.h = build_hamiltonian(sys);

    auto add = [&](const Mat& l) {
        sop.lindblad_ops.push_back(l);
        sop.ldl.push_back(l.adjoint() * l);
    };

    if (sys.kappa_hz > 0) {
        Mat a = Mat::Zero(d, d);
        for (int s = 0; s < 3; ++s)
            for (int n = 1; n < nf; ++n)
                a(idx(sys, s, n - 1), idx(sys, s, n)) = std::sqrt(static_cast<double>(n));
        add(std::sqrt(kTau * sys.kappa_hz) * a);
    }
    if (sys.gamma_down_per_s > 0) {
        Mat l10 = Mat::Zero(d, d), l21 = Mat::Zero(d, d);
        for (int n = 0; n < nf; ++n) {
            l10(idx(sys, 0, n), idx(sys, 1, n)) = 1.0;
            l21(idx(sys, 1, n), idx(sys, 2, n)) = 1.0;
        }
        add(std::sqrt(sys.gamma_down_per_s) * l10);
        add(std::sqrt(2.0 * sys.gamma_down_per_s) * l21);
    }
    if (sys.gamma_up_per_s > 0) {
        Mat lup = Mat::Zero(d, d);
        for (int n = 0; n < nf; ++n) lup(idx(sys, 1, n), idx(sys, 0, n)) = 1.0;
        add(std::sqrt(sys.gamma_up_per_s) * lup);
    }
    if (sys.gamma_phi_per_s > 0) {
        Mat nq = Mat::Zero(d, d);
        for (int s = 0; s < 3; ++s)
            for (int n = 0; n < nf; ++n) nq(idx(sys, s, n), idx(sys, s, n)) = s;
        add(std::sqrt(2.0 * sys.gamma_phi_per_s) * nq);
    }
    return sop;
}

}  // namespace

OracleResult lindblad_oracle(const LindbladSystem& sys, int initial_level, double duration_s,
                             double dt_s, int record_stride) {
    require(sys.fock_cutoff >= 1 && sys.fock_cutoff <= 32, ErrorKind::parameter_domain,
            "fock_cutoff must be in [1, 32]");
    require(initial_level >= 0 && initial_level <= 2, ErrorKind::parameter_domain,
            "initial level must be 0..2");
    require(duration_s > 0 && dt_s > 0, ErrorKind::parameter_domain,
            "duration and dt must be > 0");
    require(record_stride >= 1, ErrorKind::parameter_domain, "record_stride must be >= 1");

    const Superop sop = build_superop(sys);
    const int nf = sys.fock_cutoff + 1;
    const int d = dim_of(sys);

    // Explicit RK4 stability bound for the fastest Hamiltonian scale.
    const double hnorm = sop.h.cwiseAbs().rowwise().sum().maxCoeff();
    require(dt_s * std::max(hnorm, 1.0) < 1.5, ErrorKind::parameter_domain,
            "dt too large for the Hamiltonian scale (trace drift would exceed 1e-9/step)");

    Mat rho = Mat::Zero(d, d);
    rho(idx(sys, initial_level, 0), idx(sys, initial_level, 0)) = 1.0;

    const long n_steps = static_cast<long>(std::ceil(duration_s / dt_s - 1e-12));
    OracleResult out;
    out.min_eigenvalue = 0.0;

    auto record = [&](double t) {
        double n_mean = 0.0, pops[3] = {0.0, 0.0, 0.0}, top = 0.0;
        for (int s = 0; s < 3; ++s) {
            for (int n = 0; n < nf; ++n) {
                const double pr = rho(idx(sys, s, n), idx(sys, s, n)).real();
                n_mean += pr * n;
                pops[s] += pr;
                if (n == sys.fock_cutoff) top += pr;
            }
        }
        out.t_s.push_back(t);
        out.n_photon.push_back(n_mean);
        out.p0.push_back(pops[0]);
        out.p1.push_back(pops[1]);
        out.p2.push_back(pops[2]);
        out.max_top_fock = std::max(out.max_top_fock, top);
        out.max_trace_drift =
            std::max(out.max_trace_drift, std::fabs(rho.trace().real() - 1.0));

        Eigen::SelfAdjointEigenSolver<Mat> es((rho + rho.adjoint()) * 0.5,
                                              Eigen::EigenvaluesOnly);
        out.min_eigenvalue = std::min(out.min_eigenvalue, es.eigenvalues().minCoeff());

        require(top <= 1e-6, ErrorKind::truncation,
                "population leaked to the top Fock level; raise the cutoff");
    };

    record(0.0);
    double t = 0.0;
    for (long i = 0; i < n_steps; ++i) {
        const double h = std::min(dt_s, duration_s - t);
        const Mat k1 = sop.deriv(rho);
        const Mat k2 = sop.deriv(rho + 0.5 * h * k1);
        const Mat k3 = sop.deriv(rho + 0.5 * h * k2);
        const Mat k4 = sop.deriv(rho + h * k3);
        rho += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        t += h;
        if ((i + 1) % record_stride == 0 || i + 1 == n_steps) record(t);
    }
    return out;
}

std::vector<std::complex<double>> hamiltonian_matrix(const LindbladSystem& sys) {
    const Mat h = build_hamiltonian(sys);
    std::vector<std::complex<double>> out(h.size());
    for (int r = 0; r < h.rows(); ++r)
        for (int c = 0; c < h.cols(); ++c) out[r * h.cols() + c] = h(r, c);
    return out;
}

LindbladSystem lindblad_from_operating_point(const ReadoutOperatingPoint& op, double f_drive_hz,
                                             const NoiseModel& noise, int fock_cutoff) {
    LindbladSystem sys;
    sys.fock_cutoff = fock_cutoff;
    for (int s = 0; s < 3; ++s)
        sys.level_detuning_hz[s] = op.drive_for(f_drive_hz, s).detuning_hz;
    sys.kerr_hz = op.eta_hz;
    sys.epsilon_hz = op.epsilon_hz;
    sys.kappa_hz = op.kappa_hz;
    sys.gamma_down_per_s = 1.0 / noise.t1_s;
    sys.gamma_up_per_s = noise.gamma_up_per_s;
    const double gphi = 1.0 / noise.t2star_s - 0.5 / noise.t1_s;
    sys.gamma_phi_per_s = std::max(gphi, 0.0);
    return sys;
}

}  // namespace latchsim
