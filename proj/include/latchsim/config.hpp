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

// Run configuration: one JSON document, SI base units with _hz/_s suffixed
// keys. The master seed comes from the file (or the --seed flag); nothing is
// ever seeded from the clock.

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "latchsim/circuit.hpp"
#include "latchsim/optimize.hpp"
#include "latchsim/readout.hpp"

namespace latchsim {

struct DriveConfig {
    double phi_ext = 0.0;          // operating flux
    double f_drive_hz = 0.0;
    double epsilon_hz = 0.0;
    double duration_s = 202e-9;
    double dt_factor = 0.01;       // dt = dt_factor / (2 pi kappa)
    double chi21_ratio = 1.8;
    double window_start_s = 0.0;
    double window_end_s = 0.0;     // 0: full duration
    std::string weights = "boxcar";
};

struct NoiseConfig {
    double gamma_up_per_s = 1e3;
    double drive_up_rate_per_photon_per_s = 2e3;
    double sigma_iq = 0.0;
};

struct BenchmarkConfig {
    int n_rounds = 10;
    int shots_per_round = 30000;
    int n_calibration = 2000;
};

struct OptimizeConfig {
    int budget = 40;
    int shots_per_eval = 5000;
    double f_drive_lo_hz = 0.0, f_drive_hi_hz = 0.0;
    double epsilon_lo_hz = 0.0, epsilon_hi_hz = 0.0;
    std::vector<double> times_s;
};

struct CouplingOverrides {
    std::optional<double> gzz_hz;
    std::optional<double> eta_hz;
};

struct RunConfig {
    CircuitParams circuit;
    CouplingOverrides coupling_overrides;
    NoiseConfig noise;
    DriveConfig drive;
    PreparationConfig protocol;
    BenchmarkConfig bench;
    OptimizeConfig optimize;
    uint64_t master_seed = 0;
    std::string out_dir = "out";

    void validate() const;

    // Derived physics at the operating flux.
    ReadoutOperatingPoint operating_point() const;
    NoiseModel noise_model() const;
    BenchmarkSetup benchmark_setup() const;
    DriveBounds drive_bounds() const;
};

RunConfig load_config(const std::filesystem::path& path);
RunConfig parse_config(const std::string& json_text);

}  // namespace latchsim
