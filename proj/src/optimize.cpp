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

#include "latchsim/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "latchsim/errors.hpp"
#include "latchsim/io.hpp"
#include "latchsim/nelder_mead.hpp"

namespace latchsim {

namespace {

double clampd(double v, double lo, double hi) { return std::min(std::max(v, lo), hi); }

}  // namespace

OptimizationResult optimize_surface(const std::function<double(double, double)>& objective,
                                    const DriveBounds& bounds, int budget) {
    require(budget >= 9, ErrorKind::parameter_domain, "budget must be >= 9");
    require(bounds.f_drive_hi_hz > bounds.f_drive_lo_hz &&
                bounds.epsilon_hi_hz > bounds.epsilon_lo_hz,
            ErrorKind::parameter_domain, "bounds must be nonempty");

    OptimizationResult res;
    bool any_finite = false;

    auto eval = [&](double f, double eps) {
        f = clampd(f, bounds.f_drive_lo_hz, bounds.f_drive_hi_hz);
        eps = clampd(eps, bounds.epsilon_lo_hz, bounds.epsilon_hi_hz);
        const double v = objective(f, eps);
        res.trace.push_back({f, eps, v});
        if (std::isfinite(v)) any_finite = true;
        return v;
    };

    // Grid stage on cell centers; the side length never exceeds the budget.
    int g = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(budget))));
    while (g > 3 && g * g > budget) --g;
    const double fspan = bounds.f_drive_hi_hz - bounds.f_drive_lo_hz;
    const double espan = bounds.epsilon_hi_hz - bounds.epsilon_lo_hz;
    double best_f = 0.0, best_e = 0.0, best_v = 0.0;
    bool have_best = false;
    for (int i = 0; i < g; ++i) {
        for (int j = 0; j < g; ++j) {
            const double f = bounds.f_drive_lo_hz + (i + 0.5) * fspan / g;
            const double eps = bounds.epsilon_lo_hz + (j + 0.5) * espan / g;
            const double v = eval(f, eps);
            if (!have_best || v < best_v) {
                have_best = true;
                best_v = v;
                best_f = f;
                best_e = eps;
            }
        }
    }

    // Simplex refinement in bound-normalized coordinates, restarted once
    // from a perturbed best point.
    auto nm_objective = [&](const std::vector<double>& x) {
        return eval(bounds.f_drive_lo_hz + x[0] * fspan, bounds.epsilon_lo_hz + x[1] * espan);
    };
    const double cell = 1.0 / g;
    for (int stage = 0; stage < 2; ++stage) {
        const int left = budget - static_cast<int>(res.trace.size());
        const int this_budget = stage == 0 ? left / 2 : left;
        if (this_budget < 4) break;
        NelderMeadOptions opt;
        opt.max_evaluations = this_budget;
        opt.ftol_rel = 1e-6;
        opt.xtol_rel = 1e-4;
        const double jitter = stage == 0 ? 0.0 : 0.25 * cell;
        std::vector<double> x0 = {(best_f - bounds.f_drive_lo_hz) / fspan + jitter,
                                  (best_e - bounds.epsilon_lo_hz) / espan - jitter};
        nelder_mead(nm_objective, x0, {0.5 * cell, 0.5 * cell}, opt);
        for (const auto& p : res.trace) {
            if (p.infidelity < best_v) {
                best_v = p.infidelity;
                best_f = p.f_drive_hz;
                best_e = p.epsilon_hz;
            }
        }
    }

    require(any_finite, ErrorKind::search_domain, "all candidate evaluations failed");
    res.f_drive_hz = best_f;
    res.epsilon_hz = best_e;
    res.infidelity = best_v;
    res.evaluations = static_cast<int>(res.trace.size());
    return res;
}

OptimizationResult optimize_drive(const BenchmarkSetup& base, double integration_time_s,
                                  const DriveBounds& bounds, int budget, int shots_per_eval,
                                  int n_calibration, uint64_t master_seed, int threads) {
    require(integration_time_s > 0, ErrorKind::parameter_domain, "integration time must be > 0");
    auto objective = [&](double f, double eps) {
        BenchmarkSetup s = base;
        s.f_drive_hz = f;
        s.op.epsilon_hz = eps;
        s.duration_s = integration_time_s;
        s.window_end_s = 0.0;  // full window at this duration
        // Common random numbers: the master seed (hence every shot seed) is
        // shared across candidates.
        try {
            return quick_infidelity(s, shots_per_eval, n_calibration, master_seed, threads);
        } catch (const Error&) {
            return std::numeric_limits<double>::infinity();
        }
    };
    OptimizationResult res = optimize_surface(objective, bounds, budget);
    res.integration_time_s = integration_time_s;
    return res;
}

std::vector<CurvePoint> fidelity_vs_time(const BenchmarkSetup& base,
                                         std::span<const double> times_s,
                                         const DriveBounds& bounds, int per_time_budget,
                                         int n_rounds, int shots_per_round, int shots_per_eval,
                                         int n_calibration, uint64_t master_seed, int threads) {
    require(!times_s.empty(), ErrorKind::parameter_domain, "times list is empty");
    require(std::is_sorted(times_s.begin(), times_s.end()), ErrorKind::parameter_domain,
            "times must be sorted ascending");

    std::vector<CurvePoint> curve;
    curve.reserve(times_s.size());
    for (size_t ti = 0; ti < times_s.size(); ++ti) {
        const double t = times_s[ti];
        CurvePoint pt;
        pt.t_s = t;
        for (int proto = 0; proto < 2; ++proto) {
            BenchmarkSetup setup = base;
            setup.prep.x12 = proto == 1;
            const uint64_t opt_seed =
                derive_stream(master_seed, kTagOptimize, 2 * ti + proto);
            const OptimizationResult opt =
                optimize_drive(setup, t, bounds, per_time_budget, shots_per_eval,
                               n_calibration, opt_seed, threads);
            setup.f_drive_hz = opt.f_drive_hz;
            setup.op.epsilon_hz = opt.epsilon_hz;
            setup.duration_s = t;
            setup.window_end_s = 0.0;
            const uint64_t bench_seed = derive_stream(master_seed, kTagCurve, 2 * ti + proto);
            const ReadoutReport rep = benchmark(setup, n_rounds, shots_per_round,
                                                n_calibration, bench_seed, threads,
                                                /*with_budget=*/false);
            if (proto == 0) {
                pt.infidelity = rep.infidelity;
                pt.stddev = rep.stddev;
                pt.f_drive_hz = opt.f_drive_hz;
                pt.eps_hz = opt.epsilon_hz;
            } else {
                pt.infidelity_x12 = rep.infidelity;
                pt.stddev_x12 = rep.stddev;
                pt.f_drive_x12_hz = opt.f_drive_hz;
                pt.eps_x12_hz = opt.epsilon_hz;
            }
        }
        curve.push_back(pt);
    }
    return curve;
}

std::string curve_csv(std::span<const CurvePoint> curve) {
    CsvTable t;
    t.header = "t_s,infidelity,stddev,infidelity_x12,stddev_x12,f_drive_hz,eps_hz";
    for (const auto& p : curve) {
        std::string row = format_double(p.t_s);
        row += "," + format_double(p.infidelity);
        row += "," + format_double(p.stddev);
        row += "," + format_double(p.infidelity_x12);
        row += "," + format_double(p.stddev_x12);
        row += "," + format_double(p.f_drive_hz);
        row += "," + format_double(p.eps_hz);
        t.rows.push_back(row);
    }
    return t.to_string();
}

}  // namespace latchsim
