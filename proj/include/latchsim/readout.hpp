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

// Shot records to labels and fidelity reports: Fisher linear discrimination
// in the IQ plane, heralded preparation, the |1> -> |2> pre-excitation
// protocol, round statistics and a counterfactual error budget.

#include <map>
#include <span>
#include <string>
#include <vector>

#include "latchsim/dynamics.hpp"
#include "latchsim/rng.hpp"

namespace latchsim {

struct Discriminator {
    cplx mean0{0.0, 0.0}, mean1{0.0, 0.0};
    // Per-class covariance (xx, xy, yy).
    double cov0[3] = {0, 0, 0};
    double cov1[3] = {0, 0, 0};
    cplx boundary_normal{0.0, 0.0};
    double boundary_offset = 0.0;

    // 0/1 decision; exact ties go to 0.
    int classify(cplx iq) const;

    std::string to_json() const;
};

// Fisher linear discriminant of two labeled clusters. Falls back to the
// perpendicular bisector when the pooled covariance is degenerate; throws
// ErrorKind::fit_rank when the classes are fully indistinguishable and
// ErrorKind::parameter_domain below 100 shots per class.
Discriminator train_discriminator(std::span<const cplx> class0, std::span<const cplx> class1);

struct PreparationConfig {
    bool herald = true;
    double herald_gap_s = 1e-6;  // idle gap between herald and sequence
    double x_gate_error = 5e-4;
    bool x12 = false;
    double x12_gate_error = 5e-4;
};

// Pre-excitation protocol switch: |1> is promoted to |2> with probability
// 1 - gate_error before the measurement drive.
PreparationConfig apply_x12(PreparationConfig prep, double gate_error);

struct PreparedLevel {
    int herald_state = 0;
    int initial_level = 0;
};

// Samples the herald outcome, the idle-gap evolution and the preparation
// gates for one nominal preparation. Always draws the same number of
// variates so protocol variants stay seed-aligned.
PreparedLevel prepare_initial_level(const PreparationConfig& prep, const NoiseModel& noise,
                                    const ChannelMask& mask, int nominal_prepared, Rng& rng);

struct HeraldResult {
    std::vector<ShotRecord> retained;
    double discarded_fraction = 0.0;
};

// Keeps shots whose herald outcome is |0>.
HeraldResult herald(std::vector<ShotRecord> shots);

struct ReadoutReport {
    double p01 = 0.0;  // measured 0 given prepared 1
    double p10 = 0.0;  // measured 1 given prepared 0
    double infidelity = 0.0;
    double fidelity = 1.0;
    std::vector<double> rounds;  // per-round infidelity
    double stddev = 0.0;
    std::map<std::string, double> budget;
    double discarded_fraction = 0.0;

    std::string to_json() const;
};

// Full measurement configuration for one benchmark run.
struct BenchmarkSetup {
    ReadoutOperatingPoint op;
    double f_drive_hz = 0.0;
    double duration_s = 202e-9;
    double dt_s = 0.0;  // 0: use 0.01/(2 pi kappa)
    double window_start_s = 0.0;
    double window_end_s = 0.0;  // 0: full duration
    WeightKind weights = WeightKind::boxcar;
    NoiseModel noise;
    PreparationConfig prep;

    double resolved_dt() const;
    double resolved_window_end() const;
};

// Raw error counts of one block of shots under a fixed discriminator.
struct ShotBlockCounts {
    long n_prepared0 = 0, errors0 = 0;
    long n_prepared1 = 0, errors1 = 0;
    long discarded = 0, total = 0;
};

// Stream tags for seed derivation (shot block / calibration).
inline constexpr uint64_t kTagShot = 0x73686f74;
inline constexpr uint64_t kTagCal = 0x63616c69;

// Simulates `n_shots` alternating preparations starting at global index
// `first_index` and classifies them. Exposed for the optimizer's
// common-random-number evaluations. `records`, when non-null, receives all
// shot records (including discarded ones) in index order.
ShotBlockCounts run_shot_block(const ShotEngine& engine, const BenchmarkSetup& setup,
                               const Discriminator& disc, long first_index, long n_shots,
                               uint64_t master_seed, int threads,
                               std::vector<ShotRecord>* records = nullptr);

// Trains the discriminator from a dedicated calibration block.
Discriminator calibrate_discriminator(const ShotEngine& engine, const BenchmarkSetup& setup,
                                      int n_calibration, uint64_t master_seed, int threads);

// herald -> preparation -> shots -> discrimination, n_rounds of
// shots_per_round each; per-round infidelity and, when requested, the
// counterfactual error budget (one channel off at a time, same seeds).
ReadoutReport benchmark(const BenchmarkSetup& setup, int n_rounds, int shots_per_round,
                        int n_calibration, uint64_t master_seed, int threads,
                        bool with_budget = true);

// Mean infidelity of a single block; the optimizer's objective.
double quick_infidelity(const BenchmarkSetup& setup, int n_shots, int n_calibration,
                        uint64_t master_seed, int threads);

std::string shots_csv(std::span<const ShotRecord> shots);

}  // namespace latchsim
