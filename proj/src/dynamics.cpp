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

#include "latchsim/dynamics.hpp"

#include <algorithm>
#include <cmath>

#include "latchsim/errors.hpp"
#include "latchsim/rng.hpp"

namespace latchsim {

namespace {

constexpr double kTau = 6.283185307179586476925286766559;

struct FlowParams {
    double delta_ang;
    double eta_ang;
    double kappa_ang;
    double eps_ang;
};

inline cplx flow_deriv(const FlowParams& p, cplx a) {
    const double n = std::norm(a);
    return cplx(0.0, -1.0) * ((p.delta_ang + p.eta_ang * n) * a + p.eps_ang) -
           0.5 * p.kappa_ang * a;
}

inline cplx rk4_step(const FlowParams& p, cplx a, double h) {
    if (h <= 0.0) return a;
    const cplx k1 = flow_deriv(p, a);
    const cplx k2 = flow_deriv(p, a + 0.5 * h * k1);
    const cplx k3 = flow_deriv(p, a + 0.5 * h * k2);
    const cplx k4 = flow_deriv(p, a + h * k3);
    return a + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

// Trapezoid contribution of the product samples (t_a, f_a)-(t_b, f_b)
// clipped to [w0, w1], with linear interpolation at the cut points.
inline cplx clipped_trapezoid(double t_a, cplx f_a, double t_b, cplx f_b, double w0, double w1) {
    const double a = std::max(t_a, w0);
    const double b = std::min(t_b, w1);
    if (b <= a || t_b <= t_a) return {0.0, 0.0};
    const cplx slope = (f_b - f_a) / (t_b - t_a);
    const cplx fa = f_a + slope * (a - t_a);
    const cplx fb = f_a + slope * (b - t_a);
    return 0.5 * (b - a) * (fa + fb);
}

}  // namespace

void NoiseModel::validate() const {
    require(t1_s > 0, ErrorKind::parameter_domain, "t1_s must be > 0");
    require(t2star_s > 0 && t2star_s <= 2.0 * t1_s, ErrorKind::parameter_domain,
            "t2star_s must be in (0, 2*t1_s]");
    require(gamma_up_per_s >= 0, ErrorKind::parameter_domain, "gamma_up_per_s must be >= 0");
    require(drive_up_rate_per_photon_per_s >= 0, ErrorKind::parameter_domain,
            "drive_up_rate_per_photon_per_s must be >= 0");
    require(sigma_iq >= 0, ErrorKind::parameter_domain, "sigma_iq must be >= 0");
}

const char* transition_name(Transition t) {
    switch (t) {
    case Transition::decay_10: return "decay_10";
    case Transition::decay_21: return "decay_21";
    case Transition::thermal_01: return "thermal_01";
    case Transition::drive_excite_up: return "drive_excite_up";
    }
    return "?";
}

std::vector<cplx> ring_up(const ResonatorDrive& drive, double duration_s, double dt_s) {
    drive.validate();
    require(duration_s > 0, ErrorKind::parameter_domain, "duration must be > 0");
    const double kappa_ang = kTau * drive.kappa_hz;
    require(dt_s > 0 && dt_s <= 0.02 / kappa_ang, ErrorKind::parameter_domain,
            "dt must satisfy dt <= 0.02/kappa (angular)");

    FlowParams p{kTau * drive.detuning_hz, kTau * drive.eta_hz, kappa_ang,
                 kTau * drive.epsilon_hz};
    const long n_steps = static_cast<long>(std::ceil(duration_s / dt_s - 1e-12));
    std::vector<cplx> traj;
    traj.reserve(n_steps + 1);
    cplx a{0.0, 0.0};
    traj.push_back(a);
    double t = 0.0;
    for (long i = 0; i < n_steps; ++i) {
        const double h = std::min(dt_s, duration_s - t);
        a = rk4_step(p, a, h);
        t += h;
        traj.push_back(a);
    }
    return traj;
}

cplx integrate_iq(std::span<const cplx> trajectory, double dt_s, double window_start_s,
                  double window_end_s, std::span<const cplx> weights) {
    require(trajectory.size() >= 2, ErrorKind::parameter_domain, "trajectory too short");
    const double span = dt_s * static_cast<double>(trajectory.size() - 1);
    require(window_end_s > window_start_s, ErrorKind::parameter_domain, "empty IQ window");
    require(window_start_s >= 0 && window_end_s <= span + 1e-12 * span,
            ErrorKind::parameter_domain, "IQ window outside trajectory span");
    if (!weights.empty())
        require(weights.size() == trajectory.size(), ErrorKind::parameter_domain,
                "weights must be sampled on the trajectory grid");

    cplx acc{0.0, 0.0};
    for (size_t i = 0; i + 1 < trajectory.size(); ++i) {
        const double ta = dt_s * static_cast<double>(i);
        const double tb = dt_s * static_cast<double>(i + 1);
        const cplx fa = weights.empty() ? trajectory[i] : trajectory[i] * weights[i];
        const cplx fb = weights.empty() ? trajectory[i + 1] : trajectory[i + 1] * weights[i + 1];
        acc += clipped_trapezoid(ta, fa, tb, fb, window_start_s, window_end_s);
    }
    return acc;
}

ShotEngine::ShotEngine(const ReadoutOperatingPoint& op, double f_drive_hz, double duration_s,
                       double dt_s, const NoiseModel& noise, double window_start_s,
                       double window_end_s, WeightKind weights, ChannelMask mask,
                       int matched_bright_level)
    : op_(op), f_drive_(f_drive_hz), duration_(duration_s), dt_(dt_s), noise_(noise),
      win0_(window_start_s), win1_(window_end_s), wkind_(weights), mask_(mask) {
    require(matched_bright_level >= 1 && matched_bright_level <= 2, ErrorKind::parameter_domain,
            "matched_bright_level must be 1 or 2");
    noise_.validate();
    require(duration_ > 0, ErrorKind::parameter_domain, "duration must be > 0");
    kappa_ang_ = kTau * op_.kappa_hz;
    require(dt_ > 0 && dt_ <= 0.02 / kappa_ang_, ErrorKind::parameter_domain,
            "dt must satisfy dt <= 0.02/kappa (angular)");
    require(win1_ > win0_, ErrorKind::parameter_domain, "empty IQ window");
    require(win0_ >= 0 && win1_ <= duration_ * (1.0 + 1e-12), ErrorKind::parameter_domain,
            "IQ window outside the measurement duration");
    eta_ang_ = kTau * op_.eta_hz;
    eps_ang_ = kTau * op_.epsilon_hz;
    for (int level = 0; level < 3; ++level)
        delta_ang_[level] = kTau * op_.drive_for(f_drive_, level).detuning_hz;

    // Field paths first (the matched weights derive from them), then the
    // weighted cumulative integrals.
    for (int level = 0; level < 3; ++level) build_level(level);

    if (wkind_ == WeightKind::matched) {
        // Matched filter: conjugate of the deterministic mean-path difference
        // between the dark reference (level 0) and the driven path, scaled so
        // the window-integrated |w|^2 equals the window length
        // (boxcar-equivalent noise bandwidth).
        const auto& p0 = paths_[0].alpha;
        const auto& p1 = paths_[matched_bright_level].alpha;
        weights_.resize(p0.size());
        for (size_t i = 0; i < p0.size(); ++i) weights_[i] = std::conj(p1[i] - p0[i]);
        double norm2 = 0.0;
        for (size_t i = 0; i + 1 < weights_.size(); ++i) {
            const double ta = std::min(dt_ * static_cast<double>(i), duration_);
            const double tb = std::min(dt_ * static_cast<double>(i + 1), duration_);
            const double a = std::max(ta, win0_), b = std::min(tb, win1_);
            if (b <= a) continue;
            norm2 += 0.5 * (b - a) * (std::norm(weights_[i]) + std::norm(weights_[i + 1]));
        }
        require(norm2 > 0, ErrorKind::parameter_domain,
                "matched weights degenerate: paths identical");
        const double scale = std::sqrt((win1_ - win0_) / norm2);
        for (auto& w : weights_) w *= scale;
    }

    for (int level = 0; level < 3; ++level) {
        auto& P = paths_[level];
        P.cum_w.assign(P.alpha.size(), cplx{0.0, 0.0});
        for (size_t i = 0; i + 1 < P.alpha.size(); ++i) {
            const double ta = std::min(dt_ * static_cast<double>(i), duration_);
            const double tb = std::min(dt_ * static_cast<double>(i + 1), duration_);
            const cplx fa = P.alpha[i] * weight_at(ta);
            const cplx fb = P.alpha[i + 1] * weight_at(tb);
            P.cum_w[i + 1] = P.cum_w[i] + clipped_trapezoid(ta, fa, tb, fb, win0_, win1_);
        }
    }
}

cplx ShotEngine::weight_at(double t) const {
    if (wkind_ == WeightKind::boxcar) return {1.0, 0.0};
    const double x = t / dt_;
    const size_t i = std::min(static_cast<size_t>(std::max(x, 0.0)), weights_.size() - 2);
    const double f = std::clamp(x - static_cast<double>(i), 0.0, 1.0);
    return weights_[i] + f * (weights_[i + 1] - weights_[i]);
}

cplx ShotEngine::start_alpha(int level) const {
    if (!mask_.pre_equilibrated) return {0.0, 0.0};
    // Attractor reached from vacuum: integrate well past the ring-up.
    FlowParams p{delta_ang_[level], eta_ang_, kappa_ang_, eps_ang_};
    cplx a{0.0, 0.0};
    const long n = static_cast<long>(std::ceil(60.0 / (kappa_ang_ * dt_)));
    for (long i = 0; i < n; ++i) a = rk4_step(p, a, dt_);
    return a;
}

double ShotEngine::const_rate(int level) const {
    switch (level) {
    case 0: return mask_.thermal ? noise_.gamma_up_per_s : 0.0;
    case 1: return mask_.t1_decay ? 1.0 / noise_.t1_s : 0.0;
    default: return mask_.t1_decay ? 2.0 / noise_.t1_s : 0.0;
    }
}

double ShotEngine::photon_rate(int level) const {
    return (level == 1 && mask_.drive_excite) ? noise_.drive_up_rate_per_photon_per_s : 0.0;
}

void ShotEngine::build_level(int level) {
    FlowParams p{delta_ang_[level], eta_ang_, kappa_ang_, eps_ang_};
    const long n_steps = static_cast<long>(std::ceil(duration_ / dt_ - 1e-12));
    auto& P = paths_[level];
    P.alpha.clear();
    P.cum_n.clear();
    P.alpha.reserve(n_steps + 1);
    P.cum_n.reserve(n_steps + 1);
    cplx a = start_alpha(level);
    P.alpha.push_back(a);
    P.cum_n.push_back(0.0);
    double t = 0.0;
    for (long i = 0; i < n_steps; ++i) {
        const double h = std::min(dt_, duration_ - t);
        P.cum_n.push_back(P.cum_n.back() + std::norm(a) * h);
        a = rk4_step(p, a, h);
        t += h;
        P.alpha.push_back(a);
    }
}

std::span<const cplx> ShotEngine::cached_path(int level) const {
    require(level >= 0 && level <= 2, ErrorKind::parameter_domain, "level must be 0..2");
    return paths_[level].alpha;
}

cplx ShotEngine::noiseless_iq(int level) const {
    require(level >= 0 && level <= 2, ErrorKind::parameter_domain, "level must be 0..2");
    return paths_[level].cum_w.back();
}

ShotRecord ShotEngine::run(int initial_level, uint64_t seed) const {
    require(initial_level >= 0 && initial_level <= 2, ErrorKind::parameter_domain,
            "initial level must be 0..2");
    ShotRecord rec;
    rec.prepared_state = initial_level;
    rec.initial_level = initial_level;
    rec.seed = seed;

    Rng jump_rng(derive_stream(seed, kStreamJump, 0));
    Rng iq_rng(derive_stream(seed, kStreamIq, 0));

    int level = initial_level;
    double t = 0.0;
    cplx alpha = start_alpha(level);
    cplx iq{0.0, 0.0};
    double thr = jump_rng.exponential1();
    bool first_segment = true;

    auto apply_event = [&](double t_event, double rate_const, double rate_photon, double n_at) {
        Transition kind;
        int next;
        if (level == 0) {
            kind = Transition::thermal_01;
            next = 1;
        } else if (level == 2) {
            kind = Transition::decay_21;
            next = 1;
        } else {
            const double lam = rate_const + rate_photon * n_at;
            const double u = jump_rng.uniform01();
            if (u * lam < rate_const) {
                kind = Transition::decay_10;
                next = 0;
            } else {
                kind = Transition::drive_excite_up;
                next = 2;
            }
        }
        rec.events.push_back({t_event, kind});
        level = next;
        thr = jump_rng.exponential1();
    };

    while (t < duration_ * (1.0 - 1e-15)) {
        if (first_segment) {
            first_segment = false;
            const LevelPath& P = paths_[level];
            const double c = const_rate(level);
            const double r = photon_rate(level);
            const size_t n_nodes = P.alpha.size();
            auto node_t = [&](size_t i) {
                return std::min(dt_ * static_cast<double>(i), duration_);
            };
            auto hazard = [&](size_t i) { return c * node_t(i) + r * P.cum_n[i]; };
            if (hazard(n_nodes - 1) < thr) {
                iq += P.cum_w.back();
                alpha = P.alpha.back();
                t = duration_;
                break;
            }
            // First node k with hazard(k+1) >= thr.
            size_t lo = 0, hi = n_nodes - 1;
            while (hi - lo > 1) {
                const size_t mid = (lo + hi) / 2;
                if (hazard(mid) < thr) lo = mid;
                else hi = mid;
            }
            const size_t k = lo;
            const double lam_k = c + r * std::norm(P.alpha[k]);
            const double tk = node_t(k);
            const double frac = (thr - hazard(k)) / lam_k;
            const double te = std::min(tk + frac, node_t(k + 1));
            FlowParams p{delta_ang_[level], eta_ang_, kappa_ang_, eps_ang_};
            const cplx alpha_e = rk4_step(p, P.alpha[k], te - tk);
            iq += P.cum_w[k] + clipped_trapezoid(tk, P.alpha[k] * weight_at(tk), te,
                                                 alpha_e * weight_at(te), win0_, win1_);
            t = te;
            alpha = alpha_e;
            apply_event(te, c, r, std::norm(P.alpha[k]));
            continue;
        }

        // Live segment from (t, alpha) under the current level.
        const double c = const_rate(level);
        const double r = photon_rate(level);
        FlowParams p{delta_ang_[level], eta_ang_, kappa_ang_, eps_ang_};
        double hazard = 0.0;
        bool event = false;
        while (t < duration_ * (1.0 - 1e-15)) {
            const double h = std::min(dt_, duration_ - t);
            const double n_here = std::norm(alpha);
            const double lam = c + r * n_here;
            if (lam > 0.0 && hazard + lam * h >= thr) {
                const double frac = std::min((thr - hazard) / lam, h);
                const cplx alpha_e = rk4_step(p, alpha, frac);
                iq += clipped_trapezoid(t, alpha * weight_at(t), t + frac,
                                        alpha_e * weight_at(t + frac), win0_, win1_);
                t += frac;
                alpha = alpha_e;
                apply_event(t, c, r, n_here);
                event = true;
                break;
            }
            const cplx alpha_next = rk4_step(p, alpha, h);
            iq += clipped_trapezoid(t, alpha * weight_at(t), t + h,
                                    alpha_next * weight_at(t + h), win0_, win1_);
            hazard += lam * h;
            t += h;
            alpha = alpha_next;
        }
        if (!event) break;
    }

    rec.final_field = alpha;
    if (mask_.iq_noise && noise_.sigma_iq > 0.0) {
        const double s = noise_.sigma_iq * std::sqrt(win1_ - win0_);
        iq += cplx(s * iq_rng.normal(), s * iq_rng.normal());
    }
    rec.iq = iq;
    return rec;
}

ShotRecord simulate_shot(const ReadoutOperatingPoint& op, double f_drive_hz,
                         const NoiseModel& noise, int prepared_state, double duration_s,
                         double dt_s, uint64_t seed) {
    ShotEngine engine(op, f_drive_hz, duration_s, dt_s, noise, 0.0, duration_s);
    return engine.run(prepared_state, seed);
}

}  // namespace latchsim
