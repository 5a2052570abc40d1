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

// Drive-parameter search: coarse grid over (drive frequency, amplitude)
// followed by simplex refinement from the best cell, one restart from a
// perturbed best point. Candidates are compared on common random numbers
// (identical shot seeds), so the landscape is deterministic.

#include <functional>
#include <span>
#include <vector>

#include "latchsim/readout.hpp"

namespace latchsim {

struct DriveBounds {
    double f_drive_lo_hz, f_drive_hi_hz;
    double epsilon_lo_hz, epsilon_hi_hz;
};

struct TracePoint {
    double f_drive_hz, epsilon_hz, infidelity;
};

struct OptimizationResult {
    double integration_time_s = 0.0;
    double f_drive_hz = 0.0;
    double epsilon_hz = 0.0;
    double infidelity = 0.0;
    int evaluations = 0;
    std::vector<TracePoint> trace;
};

// Core search over a deterministic objective; exposed for testing against
// closed-form surfaces.
OptimizationResult optimize_surface(const std::function<double(double, double)>& objective,
                                    const DriveBounds& bounds, int budget);

// Simulated-infidelity search at one integration time.
OptimizationResult optimize_drive(const BenchmarkSetup& base, double integration_time_s,
                                  const DriveBounds& bounds, int budget, int shots_per_eval,
                                  int n_calibration, uint64_t master_seed, int threads);

struct CurvePoint {
    double t_s = 0.0;
    double infidelity = 0.0, stddev = 0.0;
    double infidelity_x12 = 0.0, stddev_x12 = 0.0;
    double f_drive_hz = 0.0, eps_hz = 0.0;          // optimized plain-readout drive
    double f_drive_x12_hz = 0.0, eps_x12_hz = 0.0;  // optimized pre-excitation drive
};

// Per integration time: optimize the drive for both protocols, then
// re-benchmark the optima at full statistics.
std::vector<CurvePoint> fidelity_vs_time(const BenchmarkSetup& base,
                                         std::span<const double> times_s,
                                         const DriveBounds& bounds, int per_time_budget,
                                         int n_rounds, int shots_per_round, int shots_per_eval,
                                         int n_calibration, uint64_t master_seed, int threads);

std::string curve_csv(std::span<const CurvePoint> curve);

inline constexpr uint64_t kTagOptimize = 0x6f707469;
inline constexpr uint64_t kTagCurve = 0x63757276;

}  // namespace latchsim
