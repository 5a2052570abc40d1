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

#include "latchsim/fluxfit.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <sstream>

#include "latchsim/errors.hpp"
#include "latchsim/io.hpp"
#include "latchsim/nelder_mead.hpp"

namespace latchsim {

namespace {

constexpr double kPi = 3.14159265358979323846;

double conversion_factor(const CircuitParams& device, double phi) {
    const double detuning = qubit_frequency(device, phi) - resonator_frequency(device, phi);
    const double d = std::fabs(detuning);
    const double a = std::fabs(device.anharmonicity_hz);
    require(d > 0 && detuning + device.anharmonicity_hz != 0.0, ErrorKind::singularity,
            "device hits a detuning resonance inside the sweep");
    return 1.0 / d - 1.0 / (d + a);
}

double model_shift(double a, double bj, double bc, double c, double dfac) {
    const double g = bj * c + bc;
    return a * c - dfac * g * g;
}

double rms(std::span<const FluxPoint> data, const std::vector<double>& cosphi,
           const std::vector<double>& dfac, double a, double bj, double bc) {
    double ss = 0.0;
    for (size_t i = 0; i < data.size(); ++i) {
        const double r = data[i].shift_hz - model_shift(a, bj, bc, cosphi[i], dfac[i]);
        ss += r * r;
    }
    return std::sqrt(ss / static_cast<double>(data.size()));
}

// Solves the symmetric system M x = b by Gaussian elimination with partial
// pivoting. Returns false when rank-deficient.
bool solve4(std::array<std::array<double, 4>, 4> m, std::array<double, 4> b,
            std::array<double, 4>& x, double pivot_tol) {
    for (int col = 0; col < 4; ++col) {
        int piv = col;
        for (int r = col + 1; r < 4; ++r)
            if (std::fabs(m[r][col]) > std::fabs(m[piv][col])) piv = r;
        if (std::fabs(m[piv][col]) < pivot_tol) return false;
        std::swap(m[piv], m[col]);
        std::swap(b[piv], b[col]);
        for (int r = col + 1; r < 4; ++r) {
            const double f = m[r][col] / m[col][col];
            for (int c = col; c < 4; ++c) m[r][c] -= f * m[col][c];
            b[r] -= f * b[col];
        }
    }
    for (int r = 3; r >= 0; --r) {
        double s = b[r];
        for (int c = r + 1; c < 4; ++c) s -= m[r][c] * x[c];
        x[r] = s / m[r][r];
    }
    return true;
}

}  // namespace

double FluxFitResult::shift_at(const CircuitParams& device, double phi_ext) const {
    const double phi = normalize_flux(phi_ext);
    return model_shift(a_zz_hz, b_xx_junction_hz, b_xx_capacitive_hz, std::cos(phi),
                       conversion_factor(device, phi));
}

double FluxFitResult::longitudinal_fraction_at(const CircuitParams& device, double phi_ext) const {
    const double phi = normalize_flux(phi_ext);
    const double zz = std::fabs(a_zz_hz * std::cos(phi));
    const double g = b_xx_junction_hz * std::cos(phi) + b_xx_capacitive_hz;
    const double xx = std::fabs(conversion_factor(device, phi) * g * g);
    require(zz + xx > 0, ErrorKind::parameter_domain, "fitted shift is identically zero");
    return zz / (zz + xx);
}

FluxFitResult fit_flux_sweep(std::span<const FluxPoint> data, const CircuitParams& device) {
    device.validate();
    require(data.size() >= 4, ErrorKind::fit_rank, "need at least 4 flux points");
    double lo = data[0].phi_ext, hi = data[0].phi_ext;
    for (const auto& p : data) {
        lo = std::min(lo, p.phi_ext);
        hi = std::max(hi, p.phi_ext);
    }
    require(hi - lo > kPi, ErrorKind::fit_rank,
            "flux points must span more than half a flux period");

    const size_t n = data.size();
    std::vector<double> cosphi(n), dfac(n);
    double scale = 0.0;
    for (size_t i = 0; i < n; ++i) {
        cosphi[i] = std::cos(normalize_flux(data[i].phi_ext));
        dfac[i] = conversion_factor(device, data[i].phi_ext);
        scale = std::max(scale, std::fabs(data[i].shift_hz));
    }

    FluxFitResult out;
    if (scale == 0.0) return out;  // all-zero data: A = B = 0, residual 0

    // Linear stage on u = (A, B_j^2, B_j B_c, B_c^2) against the basis
    // {cos, -D cos^2, -2 D cos, -D}; columns are normalized before solving.
    std::array<std::array<double, 4>, 4> m{};
    std::array<double, 4> rhs{};
    std::array<double, 4> colnorm{};
    auto basis = [&](size_t i, int k) -> double {
        switch (k) {
        case 0: return cosphi[i];
        case 1: return -dfac[i] * cosphi[i] * cosphi[i];
        case 2: return -2.0 * dfac[i] * cosphi[i];
        default: return -dfac[i];
        }
    };
    for (int k = 0; k < 4; ++k) {
        double s = 0.0;
        for (size_t i = 0; i < n; ++i) s += basis(i, k) * basis(i, k);
        colnorm[k] = std::sqrt(s);
        require(colnorm[k] > 0, ErrorKind::fit_rank, "degenerate flux design");
    }
    for (int r = 0; r < 4; ++r) {
        for (int c = 0; c < 4; ++c) {
            double s = 0.0;
            for (size_t i = 0; i < n; ++i) s += basis(i, r) * basis(i, c);
            m[r][c] = s / (colnorm[r] * colnorm[c]);
        }
        double s = 0.0;
        for (size_t i = 0; i < n; ++i) s += basis(i, r) * data[i].shift_hz;
        rhs[r] = s / (colnorm[r] * scale);
    }
    std::array<double, 4> u{};
    require(solve4(m, rhs, u, 1e-12), ErrorKind::fit_rank,
            "flux design matrix is rank deficient");
    for (int k = 0; k < 4; ++k) u[k] *= scale / colnorm[k];

    double a0 = u[0];
    double bj0 = std::sqrt(std::max(u[1], 0.0));
    double bc0;
    if (bj0 > 0) {
        bc0 = u[2] / bj0;
    } else {
        bc0 = std::sqrt(std::max(u[3], 0.0));
    }

    // Simplex refinement of the constrained three-parameter model.
    auto objective = [&](const std::vector<double>& x) {
        return rms(data, cosphi, dfac, x[0], x[1], x[2]);
    };
    NelderMeadOptions opt;
    opt.max_evaluations = 4000;
    opt.ftol_rel = 1e-12;
    opt.xtol_rel = 1e-12;
    const double bscale = std::max({std::fabs(bj0), std::fabs(bc0), std::sqrt(scale / dfac[0])});
    NelderMeadResult nm = nelder_mead(objective, {a0, bj0, bc0},
                                      {0.05 * std::max(std::fabs(a0), scale * 0.1),
                                       0.05 * bscale, 0.05 * bscale},
                                      opt);
    require(nm.converged, ErrorKind::iteration_limit, "flux fit did not converge");

    out.a_zz_hz = nm.x[0];
    out.b_xx_junction_hz = nm.x[1];
    out.b_xx_capacitive_hz = nm.x[2];
    // (B_j, B_c) -> (-B_j, -B_c) leaves the model invariant; report B_j >= 0.
    if (out.b_xx_junction_hz < 0) {
        out.b_xx_junction_hz = -out.b_xx_junction_hz;
        out.b_xx_capacitive_hz = -out.b_xx_capacitive_hz;
    }
    out.rms_residual_hz = nm.fval;
    out.evaluations = nm.evaluations;
    return out;
}

std::vector<FluxPoint> synthesize_flux_sweep(const CircuitParams& device, int n_points) {
    require(n_points >= 1, ErrorKind::parameter_domain, "n_points must be >= 1");
    std::vector<FluxPoint> pts;
    pts.reserve(n_points);
    for (int i = 0; i < n_points; ++i) {
        const double phi =
            n_points == 1 ? 0.0 : -kPi + 2.0 * kPi * static_cast<double>(i) / (n_points - 1);
        pts.push_back({phi, dispersive_shift(device, phi)});
    }
    return pts;
}

std::vector<FluxPoint> parse_flux_csv(const std::string& content) {
    std::istringstream in(content);
    std::string line;
    require(static_cast<bool>(std::getline(in, line)), ErrorKind::io, "empty flux CSV");
    auto h = split_csv_line(line);
    require(h.size() == 2 && h[0] == "phi_ext" && h[1] == "shift_hz", ErrorKind::io,
            "flux CSV header must be phi_ext,shift_hz");
    std::vector<FluxPoint> pts;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto cells = split_csv_line(line);
        require(cells.size() == 2, ErrorKind::io, "flux CSV row must have 2 cells");
        char* end = nullptr;
        FluxPoint p;
        p.phi_ext = std::strtod(cells[0].c_str(), &end);
        require(end != cells[0].c_str(), ErrorKind::io, "bad phi_ext value: " + cells[0]);
        p.shift_hz = std::strtod(cells[1].c_str(), &end);
        require(end != cells[1].c_str(), ErrorKind::io, "bad shift_hz value: " + cells[1]);
        pts.push_back(p);
    }
    return pts;
}

std::string flux_csv_to_string(std::span<const FluxPoint> data) {
    CsvTable t;
    t.header = "phi_ext,shift_hz";
    for (const auto& p : data)
        t.rows.push_back(format_double(p.phi_ext) + "," + format_double(p.shift_hz));
    return t.to_string();
}

}  // namespace latchsim
