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

#include "latchsim/duffing.hpp"

#include <algorithm>
#include <cmath>

#include "latchsim/errors.hpp"

namespace latchsim {

namespace {

constexpr double kTau = 6.283185307179586476925286766559;

// Residual of the steady-state cubic and its derivative in n.
double cubic_value(const ResonatorDrive& d, double n) {
    const double u = d.detuning_hz + d.eta_hz * n;
    return n * (u * u + 0.25 * d.kappa_hz * d.kappa_hz) - d.epsilon_hz * d.epsilon_hz;
}

double cubic_derivative(const ResonatorDrive& d, double n) {
    const double u = d.detuning_hz + d.eta_hz * n;
    return (u * u + 0.25 * d.kappa_hz * d.kappa_hz) + 2.0 * n * d.eta_hz * u;
}

// Real roots of the monic cubic t^3 + p t + q = 0.
int depressed_cubic_roots(double p, double q, double out[3]) {
    const double disc = -4.0 * p * p * p - 27.0 * q * q;
    if (disc > 0.0) {
        // Three distinct real roots (trigonometric form; p < 0 here).
        const double r = 2.0 * std::sqrt(-p / 3.0);
        double arg = 3.0 * q / (p * r);
        arg = std::clamp(arg, -1.0, 1.0);
        const double theta = std::acos(arg) / 3.0;
        for (int k = 0; k < 3; ++k)
            out[k] = r * std::cos(theta - kTau * k / 3.0);
        return 3;
    }
    // One real root (Cardano).
    const double h = std::sqrt(std::max(q * q / 4.0 + p * p * p / 27.0, 0.0));
    const double u = std::cbrt(-q / 2.0 + h);
    const double v = std::cbrt(-q / 2.0 - h);
    out[0] = u + v;
    return 1;
}

void polish_root(const ResonatorDrive& d, double& n) {
    for (int it = 0; it < 40; ++it) {
        const double f = cubic_value(d, n);
        const double df = cubic_derivative(d, n);
        if (df == 0.0) break;
        const double step = f / df;
        n -= step;
        if (std::fabs(step) <= 1e-15 * std::max(1.0, std::fabs(n))) break;
    }
    if (n < 0.0 && n > -1e-12) n = 0.0;
}

// Eigenvalue real parts of the 2x2 linearization at a fixed point with
// photon number n, in angular units.
double max_eigenvalue_real_part(const ResonatorDrive& d, double n) {
    const double kappa = kTau * d.kappa_hz;
    const double u = kTau * (d.detuning_hz + d.eta_hz * n);
    const double eta = kTau * d.eta_hz;
    // trace = -kappa, det = (u + 2 eta n_ang...)^2 ... computed directly:
    // det = kappa^2/4 + (u)(u + 2 eta n) where eta n enters once more:
    // J for (Re a, Im a) gives det = kappa^2/4 + (Delta+eta n)(Delta+3 eta n).
    const double det = 0.25 * kappa * kappa + u * (u + 2.0 * eta * n);
    const double half_tr = -0.5 * kappa;
    const double disc = half_tr * half_tr - det;
    if (disc <= 0.0) return half_tr;
    return half_tr + std::sqrt(disc);
}

Branch single_root_branch(const ResonatorDrive& d, double n) {
    if (auto folds = fold_photon_numbers(d)) {
        if (n <= folds->first) return Branch::dark;
        if (n >= folds->second) return Branch::bright;
        return n * 2.0 > folds->first + folds->second ? Branch::bright : Branch::dark;
    }
    if (d.eta_hz != 0.0) {
        // Threshold at the cusp photon number kappa/(sqrt(3)|eta|).
        return n > d.kappa_hz / (1.7320508075688772 * std::fabs(d.eta_hz)) ? Branch::bright
                                                                           : Branch::dark;
    }
    // Linear resonator: within 3 dB of the resonant response counts bright.
    const double peak = 4.0 * d.epsilon_hz * d.epsilon_hz / (d.kappa_hz * d.kappa_hz);
    return n >= 0.5 * peak ? Branch::bright : Branch::dark;
}

}  // namespace

const char* branch_name(Branch b) {
    switch (b) {
    case Branch::dark: return "dark";
    case Branch::bright: return "bright";
    case Branch::unstable: return "unstable";
    }
    return "?";
}

void ResonatorDrive::validate() const {
    require(kappa_hz > 0, ErrorKind::parameter_domain, "kappa_hz must be > 0");
    require(epsilon_hz >= 0, ErrorKind::parameter_domain, "epsilon_hz must be >= 0");
    require(std::isfinite(detuning_hz) && std::isfinite(eta_hz), ErrorKind::parameter_domain,
            "drive parameters must be finite");
}

cplx steady_alpha(const ResonatorDrive& d, double n) {
    const double kappa = kTau * d.kappa_hz;
    const double u = kTau * (d.detuning_hz + d.eta_hz * n);
    const double eps = kTau * d.epsilon_hz;
    return cplx(0.0, -eps) / cplx(0.5 * kappa, u);
}

std::optional<std::pair<double, double>> fold_photon_numbers(const ResonatorDrive& d) {
    if (d.eta_hz == 0.0 || d.eta_hz * d.detuning_hz >= 0.0) return std::nullopt;
    const double disc = d.detuning_hz * d.detuning_hz - 0.75 * d.kappa_hz * d.kappa_hz;
    if (disc <= 0.0) return std::nullopt;
    const double s = std::sqrt(disc);
    const double n1 = (-2.0 * d.detuning_hz - s) / (3.0 * d.eta_hz);
    const double n2 = (-2.0 * d.detuning_hz + s) / (3.0 * d.eta_hz);
    return std::make_pair(std::min(n1, n2), std::max(n1, n2));
}

std::vector<SteadyStateSolution> steady_states(const ResonatorDrive& drive) {
    drive.validate();

    std::vector<double> roots;
    const double eps2 = drive.epsilon_hz * drive.epsilon_hz;
    if (drive.epsilon_hz == 0.0) {
        roots.push_back(0.0);
    } else if (drive.eta_hz == 0.0) {
        roots.push_back(eps2 / (drive.detuning_hz * drive.detuning_hz +
                                0.25 * drive.kappa_hz * drive.kappa_hz));
    } else {
        // eta^2 n^3 + 2 Delta eta n^2 + (Delta^2 + kappa^2/4) n - eps^2 = 0,
        // normalized to a depressed cubic in t = n + b/3.
        const double a = drive.eta_hz * drive.eta_hz;
        const double b = 2.0 * drive.detuning_hz * drive.eta_hz / a;
        const double c = (drive.detuning_hz * drive.detuning_hz +
                          0.25 * drive.kappa_hz * drive.kappa_hz) / a;
        const double dd = -eps2 / a;
        const double p = c - b * b / 3.0;
        const double q = 2.0 * b * b * b / 27.0 - b * c / 3.0 + dd;
        double t[3];
        const int nr = depressed_cubic_roots(p, q, t);
        for (int k = 0; k < nr; ++k) {
            double n = t[k] - b / 3.0;
            polish_root(drive, n);
            if (n < 0.0) continue;
            bool dup = false;
            for (double r : roots)
                if (std::fabs(r - n) <= 1e-9 * std::max(1.0, std::fabs(n))) dup = true;
            if (!dup) roots.push_back(n);
        }
    }
    std::sort(roots.begin(), roots.end());

    std::vector<SteadyStateSolution> sols;
    sols.reserve(roots.size());
    for (double n : roots) {
        SteadyStateSolution s;
        s.photon_number = n;
        s.alpha = steady_alpha(drive, n);
        const double margin = 1e-12 * kTau * drive.kappa_hz;
        s.stable = max_eigenvalue_real_part(drive, n) < -margin;
        sols.push_back(s);
    }

    // Branch labels: with coexisting stable roots the smaller photon number
    // is dark and the larger bright; single roots are labeled against the
    // fold structure.
    std::vector<int> stable_idx;
    for (size_t i = 0; i < sols.size(); ++i) {
        if (!sols[i].stable) sols[i].branch = Branch::unstable;
        else stable_idx.push_back(static_cast<int>(i));
    }
    if (stable_idx.size() >= 2) {
        sols[stable_idx.front()].branch = Branch::dark;
        sols[stable_idx.back()].branch = Branch::bright;
        for (size_t k = 1; k + 1 < stable_idx.size(); ++k)
            sols[stable_idx[k]].branch = Branch::dark;  // not reachable for a cubic
    } else if (stable_idx.size() == 1) {
        sols[stable_idx[0]].branch = single_root_branch(drive, sols[stable_idx[0]].photon_number);
    }
    return sols;
}

Branch basin_classify(const ResonatorDrive& drive, cplx alpha0) {
    drive.validate();
    const auto sols = steady_states(drive);

    const double kappa = kTau * drive.kappa_hz;
    const double eta = kTau * drive.eta_hz;
    const double delta = kTau * drive.detuning_hz;
    const double eps = kTau * drive.epsilon_hz;
    const double dt = 0.01 / kappa;

    auto deriv = [&](cplx a) {
        const double n = std::norm(a);
        return cplx(0.0, -1.0) * (delta + eta * n) * a - 0.5 * kappa * a - cplx(0.0, eps);
    };

    cplx a = alpha0;
    const long max_steps = 1000000;
    for (long step = 0; step < max_steps; ++step) {
        const cplx k1 = deriv(a);
        const cplx k2 = deriv(a + 0.5 * dt * k1);
        const cplx k3 = deriv(a + 0.5 * dt * k2);
        const cplx k4 = deriv(a + dt * k3);
        const cplx da = dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        a += da;
        if (std::abs(da) < 1e-8) {
            // Label by the nearest stable fixed point.
            const SteadyStateSolution* best = nullptr;
            double best_d = 0.0;
            for (const auto& s : sols) {
                if (!s.stable) continue;
                const double dist = std::abs(a - s.alpha);
                if (!best || dist < best_d) {
                    best = &s;
                    best_d = dist;
                }
            }
            require(best != nullptr, ErrorKind::integration_limit,
                    "flow converged but no stable fixed point exists");
            return best->branch;
        }
    }
    fail(ErrorKind::integration_limit, "basin flow did not converge within step limit");
}

double ReadoutOperatingPoint::state_weight(int level) const {
    switch (level) {
    case 0: return 0.5;
    case 1: return -0.5;
    case 2: return 0.5 - chi21_ratio;
    default: fail(ErrorKind::parameter_domain, "qubit level must be 0, 1 or 2");
    }
}

double ReadoutOperatingPoint::resonator_frequency_for(int level) const {
    return f_res_hz + 2.0 * gzz_hz * state_weight(level);
}

ResonatorDrive ReadoutOperatingPoint::drive_for(double f_drive_hz, int level) const {
    ResonatorDrive d;
    d.detuning_hz = f_drive_hz - resonator_frequency_for(level);
    d.eta_hz = eta_hz;
    d.kappa_hz = kappa_hz;
    d.epsilon_hz = epsilon_hz;
    return d;
}

BifurcationSweep bifurcation_sweep(const ReadoutOperatingPoint& op,
                                   std::span<const double> f_drive_hz, int qubit_state) {
    require(!f_drive_hz.empty(), ErrorKind::parameter_domain, "frequency range is empty");
    require(std::is_sorted(f_drive_hz.begin(), f_drive_hz.end()), ErrorKind::parameter_domain,
            "frequency list must be sorted ascending");

    BifurcationSweep sweep;
    sweep.rows.reserve(f_drive_hz.size());

    auto root_count = [&](double f) {
        return static_cast<int>(steady_states(op.drive_for(f, qubit_state)).size());
    };

    for (double f : f_drive_hz) {
        BifurcationRow row;
        row.f_hz = f;
        row.qubit_state = qubit_state;
        const auto sols = steady_states(op.drive_for(f, qubit_state));
        for (const auto& s : sols) {
            switch (s.branch) {
            case Branch::dark: row.n_dark = s.photon_number; break;
            case Branch::bright: row.n_bright = s.photon_number; break;
            case Branch::unstable: row.n_unstable = s.photon_number; break;
            }
        }
        row.bistable = sols.size() == 3;
        sweep.rows.push_back(row);
    }

    // Window edges: bisection on the root count across each grid transition.
    auto refine = [&](double lo, double hi) {
        const int count_lo = root_count(lo);
        for (int it = 0; it < 200; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (root_count(mid) == count_lo) lo = mid;
            else hi = mid;
            if (hi - lo <= 1e-9 * std::max(1.0, std::fabs(hi))) break;
        }
        return 0.5 * (lo + hi);
    };

    std::vector<double> edges;
    for (size_t i = 0; i + 1 < f_drive_hz.size(); ++i) {
        if (root_count(f_drive_hz[i]) != root_count(f_drive_hz[i + 1]))
            edges.push_back(refine(f_drive_hz[i], f_drive_hz[i + 1]));
    }
    bool any_bistable = false;
    for (const auto& r : sweep.rows) any_bistable |= r.bistable;
    if (any_bistable) {
        double lo = f_drive_hz.front(), hi = f_drive_hz.back();
        if (!edges.empty()) {
            if (root_count(f_drive_hz.front()) == 1) lo = edges.front();
            if (root_count(f_drive_hz.back()) == 1) hi = edges.back();
        }
        sweep.window_hz = std::make_pair(lo, hi);
    }
    return sweep;
}

}  // namespace latchsim
