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

// Hybrid semiclassical shot model: a deterministic classical field
// conditioned on a stochastically jumping qubit. The field follows
//   alpha' = -i (Delta_d(level) + eta |alpha|^2) alpha - (kappa/2) alpha - i eps
// piecewise between qubit jumps; the detuning switches at each jump, so
// latching emerges from the flow rather than from a rule.
//
// Shots are pure functions of (configuration, seed). Jump times come from
// inverting the accumulated hazard along the deterministic path, which lets
// the engine reuse one cached no-event trajectory per qubit level; only
// shots with an event integrate further segments. Cached and live paths use
// identical step and quadrature rules, so reuse never changes a result.

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "latchsim/duffing.hpp"

namespace latchsim {

struct NoiseModel {
    double t1_s = 15e-6;
    double t2star_s = 5.6e-6;  // enters the Lindblad oracle only
    double gamma_up_per_s = 1e3;
    double drive_up_rate_per_photon_per_s = 2e3;  // upward rate r0*n from |1>, zero from |0>
    double sigma_iq = 0.0;  // per-quadrature noise std, field units * sqrt(s)

    void validate() const;
};

enum class Transition { decay_10, decay_21, thermal_01, drive_excite_up };

const char* transition_name(Transition t);

struct QubitEvent {
    double time_s;
    Transition kind;
};

struct ShotRecord {
    int prepared_state = 0;           // nominal preparation
    int initial_level = 0;            // level actually entering the measurement window
    int herald_state = 0;             // pre-measurement herald outcome
    std::vector<QubitEvent> events;   // jumps inside the measurement window
    cplx iq{0.0, 0.0};
    cplx final_field{0.0, 0.0};
    uint64_t seed = 0;
    int label = -1;                   // assigned by the discriminator
};

enum class WeightKind { boxcar, matched };

// Which physics is active; benchmark counterfactuals switch channels off
// one at a time on identical seed streams.
struct ChannelMask {
    bool t1_decay = true;
    bool thermal = true;
    bool drive_excite = true;
    bool iq_noise = true;
    bool pre_equilibrated = false;  // start the field at its attractor instead of vacuum
};

// Deterministic ring-up of the field from vacuum; returns samples at
// t = 0, dt, 2dt, ..., duration (last step partial). Requires
// dt <= 0.02 / (2 pi kappa_hz).
std::vector<cplx> ring_up(const ResonatorDrive& drive, double duration_s, double dt_s);

// Weighted quadrature of a trajectory over the window; weights are boxcar
// (w = 1 inside the window) or an arbitrary grid-sampled vector. Used by
// the engine and exposed for calibration checks.
cplx integrate_iq(std::span<const cplx> trajectory, double dt_s, double window_start_s,
                  double window_end_s, std::span<const cplx> weights = {});

class ShotEngine {
public:
    // matched_bright_level selects the driven reference path for matched
    // weights (1, or 2 when the pre-excitation protocol is active).
    ShotEngine(const ReadoutOperatingPoint& op, double f_drive_hz, double duration_s,
               double dt_s, const NoiseModel& noise, double window_start_s,
               double window_end_s, WeightKind weights = WeightKind::boxcar,
               ChannelMask mask = {}, int matched_bright_level = 1);

    // Runs one shot. Thread-safe: the engine is immutable.
    ShotRecord run(int initial_level, uint64_t seed) const;

    // No-event field path of a level, sampled on the step grid.
    std::span<const cplx> cached_path(int level) const;

    // Mean no-event IQ (no additive noise) of a level; cluster centers of
    // the ideal signal.
    cplx noiseless_iq(int level) const;

    double duration_s() const { return duration_; }
    double dt_s() const { return dt_; }
    double window_start_s() const { return win0_; }
    double window_end_s() const { return win1_; }
    const NoiseModel& noise() const { return noise_; }
    const ChannelMask& mask() const { return mask_; }
    const ReadoutOperatingPoint& operating_point() const { return op_; }
    double f_drive_hz() const { return f_drive_; }
    WeightKind weight_kind() const { return wkind_; }
    std::span<const cplx> weights() const { return weights_; }

private:
    struct LevelPath {
        std::vector<cplx> alpha;   // node i at t = min(i dt, duration)
        std::vector<double> cum_n; // left-rule integral of |alpha|^2 up to node i
        std::vector<cplx> cum_w;   // window-clipped trapezoid of alpha*w up to node i
    };

    cplx weight_at(double t) const;
    cplx start_alpha(int level) const;
    double const_rate(int level) const;
    double photon_rate(int level) const;
    void build_level(int level);

    ReadoutOperatingPoint op_;
    double f_drive_;
    double duration_;
    double dt_;
    NoiseModel noise_;
    double win0_, win1_;
    WeightKind wkind_;
    ChannelMask mask_;
    std::vector<cplx> weights_;  // grid-sampled; empty means boxcar
    double delta_ang_[3];        // angular conditioned detunings per level
    double eta_ang_, kappa_ang_, eps_ang_;
    LevelPath paths_[3];
};

// Simulates one measurement shot. Convenience wrapper that builds a
// throwaway engine; hot paths construct the engine once and call run().
ShotRecord simulate_shot(const ReadoutOperatingPoint& op, double f_drive_hz,
                         const NoiseModel& noise, int prepared_state, double duration_s,
                         double dt_s, uint64_t seed);

// Stream tags for per-purpose substreams.
inline constexpr uint64_t kStreamJump = 0x6a756d70;
inline constexpr uint64_t kStreamIq = 0x69712020;
inline constexpr uint64_t kStreamPrep = 0x70726570;

}  // namespace latchsim
