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

#include "latchsim/readout.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

#include "latchsim/errors.hpp"
#include "latchsim/io.hpp"
#include "latchsim/parallel.hpp"

namespace latchsim {

namespace {

constexpr double kTau = 6.283185307179586476925286766559;

struct Moments {
    cplx mean{0.0, 0.0};
    double cov[3] = {0, 0, 0};
};

Moments moments_of(std::span<const cplx> pts) {
    Moments m;
    const double n = static_cast<double>(pts.size());
    for (cplx p : pts) m.mean += p;
    m.mean /= n;
    for (cplx p : pts) {
        const double dx = p.real() - m.mean.real();
        const double dy = p.imag() - m.mean.imag();
        m.cov[0] += dx * dx;
        m.cov[1] += dx * dy;
        m.cov[2] += dy * dy;
    }
    for (double& c : m.cov) c /= n;
    return m;
}

nlohmann::ordered_json complex_to_json(cplx z) {
    return nlohmann::ordered_json::array({z.real(), z.imag()});
}

}  // namespace

int Discriminator::classify(cplx iq) const {
    const double s = boundary_normal.real() * iq.real() + boundary_normal.imag() * iq.imag() +
                     boundary_offset;
    return s > 0.0 ? 1 : 0;
}

std::string Discriminator::to_json() const {
    nlohmann::ordered_json j;
    j["mean0"] = complex_to_json(mean0);
    j["mean1"] = complex_to_json(mean1);
    j["boundary"] = {{"normal", complex_to_json(boundary_normal)},
                     {"offset", boundary_offset}};
    return j.dump(2) + "\n";
}

Discriminator train_discriminator(std::span<const cplx> class0, std::span<const cplx> class1) {
    require(class0.size() >= 100 && class1.size() >= 100, ErrorKind::parameter_domain,
            "need at least 100 shots per class");

    const Moments m0 = moments_of(class0);
    const Moments m1 = moments_of(class1);

    Discriminator d;
    d.mean0 = m0.mean;
    d.mean1 = m1.mean;
    for (int i = 0; i < 3; ++i) {
        d.cov0[i] = m0.cov[i];
        d.cov1[i] = m1.cov[i];
    }

    // Pooled within-class scatter.
    const double sxx = 0.5 * (m0.cov[0] + m1.cov[0]);
    const double sxy = 0.5 * (m0.cov[1] + m1.cov[1]);
    const double syy = 0.5 * (m0.cov[2] + m1.cov[2]);
    const double det = sxx * syy - sxy * sxy;
    const double scale = 0.5 * (sxx + syy);
    const cplx dmean = m1.mean - m0.mean;

    cplx w;
    if (det > 1e-12 * scale * scale && scale > 0) {
        // w = Sw^{-1} (mu1 - mu0)
        w = cplx((syy * dmean.real() - sxy * dmean.imag()) / det,
                 (-sxy * dmean.real() + sxx * dmean.imag()) / det);
    } else {
        require(std::abs(dmean) > 0, ErrorKind::fit_rank,
                "degenerate training set: identical clusters");
        w = dmean;  // perpendicular bisector
    }
    d.boundary_normal = w;
    const cplx mid = 0.5 * (m0.mean + m1.mean);
    d.boundary_offset = -(w.real() * mid.real() + w.imag() * mid.imag());
    return d;
}

PreparationConfig apply_x12(PreparationConfig prep, double gate_error) {
    require(gate_error >= 0.0 && gate_error < 1.0, ErrorKind::parameter_domain,
            "x12 gate error must be in [0, 1)");
    prep.x12 = true;
    prep.x12_gate_error = gate_error;
    return prep;
}

PreparedLevel prepare_initial_level(const PreparationConfig& prep, const NoiseModel& noise,
                                    const ChannelMask& mask, int nominal_prepared, Rng& rng) {
    require(nominal_prepared == 0 || nominal_prepared == 1, ErrorKind::parameter_domain,
            "nominal preparation must be 0 or 1");
    // Fixed draw count keeps protocol variants on identical jump streams.
    const double u_herald = rng.uniform01();
    const double u_gap = rng.uniform01();
    const double u_x = rng.uniform01();
    const double u_x12 = rng.uniform01();

    const double gamma_up = mask.thermal ? noise.gamma_up_per_s : 0.0;
    const double p_eq = gamma_up * noise.t1_s / (1.0 + gamma_up * noise.t1_s);

    PreparedLevel out;
    int state = u_herald < p_eq ? 1 : 0;
    out.herald_state = state;

    if (prep.herald) {
        // Idle gap between the herald and the sequence.
        if (state == 0) {
            if (u_gap < -std::expm1(-gamma_up * prep.herald_gap_s)) state = 1;
        } else {
            if (u_gap < -std::expm1(-prep.herald_gap_s / noise.t1_s)) state = 0;
        }
    }

    if (nominal_prepared == 1) {
        const double x_err = mask.prep_gate_error ? prep.x_gate_error : 0.0;
        if (u_x >= x_err) state = state == 0 ? 1 : (state == 1 ? 0 : state);
        if (prep.x12) {
            const double x12_err = mask.prep_gate_error ? prep.x12_gate_error : 0.0;
            if (state == 1 && u_x12 >= x12_err) state = 2;
        }
    }
    out.initial_level = state;
    return out;
}

HeraldResult herald(std::vector<ShotRecord> shots) {
    HeraldResult out;
    const double total = static_cast<double>(shots.size());
    out.retained.reserve(shots.size());
    long discarded = 0;
    for (auto& s : shots) {
        if (s.herald_state == 0) out.retained.push_back(std::move(s));
        else ++discarded;
    }
    out.discarded_fraction = total > 0 ? static_cast<double>(discarded) / total : 0.0;
    return out;
}

double BenchmarkSetup::resolved_dt() const {
    return dt_s > 0 ? dt_s : 0.01 / (kTau * op.kappa_hz);
}

double BenchmarkSetup::resolved_window_end() const {
    return window_end_s > 0 ? window_end_s : duration_s;
}

namespace {

ShotEngine make_engine(const BenchmarkSetup& setup, const ChannelMask& mask) {
    return ShotEngine(setup.op, setup.f_drive_hz, setup.duration_s, setup.resolved_dt(),
                      setup.noise, setup.window_start_s, setup.resolved_window_end(),
                      setup.weights, mask, setup.prep.x12 ? 2 : 1);
}

ShotRecord simulate_indexed_shot(const ShotEngine& engine, const BenchmarkSetup& setup,
                                 uint64_t master_seed, uint64_t tag, long index) {
    const int nominal = static_cast<int>(index % 2);
    const uint64_t seed = derive_stream(master_seed, tag, static_cast<uint64_t>(index));
    Rng prep_rng(derive_stream(seed, kStreamPrep, 0));
    const PreparedLevel prep =
        prepare_initial_level(setup.prep, setup.noise, engine.mask(), nominal, prep_rng);
    ShotRecord rec = engine.run(prep.initial_level, seed);
    rec.prepared_state = nominal;
    rec.herald_state = prep.herald_state;
    return rec;
}

}  // namespace

ShotBlockCounts run_shot_block(const ShotEngine& engine, const BenchmarkSetup& setup,
                               const Discriminator& disc, long first_index, long n_shots,
                               uint64_t master_seed, int threads,
                               std::vector<ShotRecord>* records) {
    std::vector<int8_t> prepared(n_shots), kept(n_shots), error(n_shots);
    if (records) records->resize(n_shots);

    parallel_for_indexed(n_shots, threads, [&](int64_t i) {
        const long index = first_index + i;
        ShotRecord rec = simulate_indexed_shot(engine, setup, master_seed, kTagShot, index);
        rec.label = disc.classify(rec.iq);
        prepared[i] = static_cast<int8_t>(rec.prepared_state);
        kept[i] = static_cast<int8_t>(!setup.prep.herald || rec.herald_state == 0);
        error[i] = static_cast<int8_t>(rec.label != rec.prepared_state);
        if (records) (*records)[i] = std::move(rec);
    });

    ShotBlockCounts counts;
    counts.total = n_shots;
    for (long i = 0; i < n_shots; ++i) {
        if (!kept[i]) {
            ++counts.discarded;
            continue;
        }
        if (prepared[i] == 0) {
            ++counts.n_prepared0;
            counts.errors0 += error[i];
        } else {
            ++counts.n_prepared1;
            counts.errors1 += error[i];
        }
    }
    return counts;
}

Discriminator calibrate_discriminator(const ShotEngine& engine, const BenchmarkSetup& setup,
                                      int n_calibration, uint64_t master_seed, int threads) {
    const long n = 2L * n_calibration;
    std::vector<cplx> iq(n);
    std::vector<int8_t> prepared(n), kept(n);
    parallel_for_indexed(n, threads, [&](int64_t i) {
        ShotRecord rec = simulate_indexed_shot(engine, setup, master_seed, kTagCal, i);
        iq[i] = rec.iq;
        prepared[i] = static_cast<int8_t>(rec.prepared_state);
        kept[i] = static_cast<int8_t>(!setup.prep.herald || rec.herald_state == 0);
    });
    std::vector<cplx> c0, c1;
    c0.reserve(n_calibration);
    c1.reserve(n_calibration);
    for (long i = 0; i < n; ++i) {
        if (!kept[i]) continue;
        (prepared[i] == 0 ? c0 : c1).push_back(iq[i]);
    }
    return train_discriminator(c0, c1);
}

namespace {

struct PipelineResult {
    double p01 = 0.0, p10 = 0.0, infidelity = 0.0, discarded = 0.0;
    std::vector<double> rounds;
};

PipelineResult run_pipeline(const BenchmarkSetup& setup, const ChannelMask& mask, int n_rounds,
                            int shots_per_round, int n_calibration, uint64_t master_seed,
                            int threads) {
    const ShotEngine engine = make_engine(setup, mask);
    const Discriminator disc =
        calibrate_discriminator(engine, setup, n_calibration, master_seed, threads);

    PipelineResult res;
    long n0 = 0, e0 = 0, n1 = 0, e1 = 0, discarded = 0, total = 0;
    for (int round = 0; round < n_rounds; ++round) {
        const long first = static_cast<long>(round) * shots_per_round;
        const ShotBlockCounts c =
            run_shot_block(engine, setup, disc, first, shots_per_round, master_seed, threads);
        const double r01 = c.n_prepared1 > 0
                               ? static_cast<double>(c.errors1) / c.n_prepared1 : 0.0;
        const double r10 = c.n_prepared0 > 0
                               ? static_cast<double>(c.errors0) / c.n_prepared0 : 0.0;
        res.rounds.push_back(0.5 * (r01 + r10));
        n0 += c.n_prepared0;
        e0 += c.errors0;
        n1 += c.n_prepared1;
        e1 += c.errors1;
        discarded += c.discarded;
        total += c.total;
    }
    res.p01 = n1 > 0 ? static_cast<double>(e1) / n1 : 0.0;
    res.p10 = n0 > 0 ? static_cast<double>(e0) / n0 : 0.0;
    res.infidelity = 0.5 * (res.p01 + res.p10);
    res.discarded = total > 0 ? static_cast<double>(discarded) / total : 0.0;
    return res;
}

}  // namespace

ReadoutReport benchmark(const BenchmarkSetup& setup, int n_rounds, int shots_per_round,
                        int n_calibration, uint64_t master_seed, int threads,
                        bool with_budget) {
    require(n_rounds >= 2, ErrorKind::parameter_domain, "n_rounds must be >= 2");
    require(shots_per_round >= 2, ErrorKind::parameter_domain, "shots_per_round must be >= 2");

    const ChannelMask full;
    const PipelineResult main =
        run_pipeline(setup, full, n_rounds, shots_per_round, n_calibration, master_seed, threads);

    ReadoutReport rep;
    rep.p01 = main.p01;
    rep.p10 = main.p10;
    rep.infidelity = main.infidelity;
    rep.fidelity = 1.0 - main.infidelity;
    rep.rounds = main.rounds;
    rep.discarded_fraction = main.discarded;
    if (rep.rounds.size() >= 2) {
        double mean = 0.0;
        for (double r : rep.rounds) mean += r;
        mean /= static_cast<double>(rep.rounds.size());
        double ss = 0.0;
        for (double r : rep.rounds) ss += (r - mean) * (r - mean);
        rep.stddev = std::sqrt(ss / static_cast<double>(rep.rounds.size() - 1));
    }

    if (with_budget) {
        auto contribution = [&](ChannelMask mask) {
            const PipelineResult r = run_pipeline(setup, mask, n_rounds, shots_per_round,
                                                  n_calibration, master_seed, threads);
            return main.infidelity - r.infidelity;
        };
        ChannelMask m = full;
        m.iq_noise = false;
        rep.budget["separation"] = contribution(m);
        m = full;
        m.t1_decay = false;
        rep.budget["decay"] = contribution(m);
        m = full;
        m.pre_equilibrated = true;
        rep.budget["out_of_equilibrium"] = contribution(m);
        m = full;
        m.thermal = false;
        rep.budget["preparation_thermal"] = contribution(m);
        m = full;
        m.prep_gate_error = false;
        rep.budget["preparation_gate"] = contribution(m);
    }
    return rep;
}

double quick_infidelity(const BenchmarkSetup& setup, int n_shots, int n_calibration,
                        uint64_t master_seed, int threads) {
    const ChannelMask full;
    const PipelineResult r =
        run_pipeline(setup, full, 1, n_shots, n_calibration, master_seed, threads);
    return r.infidelity;
}

std::string ReadoutReport::to_json() const {
    nlohmann::ordered_json j;
    j["p01"] = p01;
    j["p10"] = p10;
    j["infidelity"] = infidelity;
    j["fidelity"] = fidelity;
    j["rounds"] = rounds;
    j["stddev"] = stddev;
    nlohmann::ordered_json b = nlohmann::ordered_json::object();
    for (const auto& [k, v] : budget) b[k] = v;
    j["budget"] = b;
    return j.dump(2) + "\n";
}

std::string shots_csv(std::span<const ShotRecord> shots) {
    CsvTable t;
    t.header = "shot_id,prepared,label_assigned,i,q,n_events,first_event_t_s";
    long id = 0;
    for (const auto& s : shots) {
        std::string row = format_int(id++);
        row += "," + format_int(s.prepared_state);
        row += "," + format_int(s.label);
        row += "," + format_double(s.iq.real());
        row += "," + format_double(s.iq.imag());
        row += "," + format_int(static_cast<long long>(s.events.size()));
        row += ",";
        if (!s.events.empty()) row += format_double(s.events.front().time_s);
        t.rows.push_back(row);
    }
    return t.to_string();
}

}  // namespace latchsim
