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

#include "latchsim/config.hpp"

#include <json.hpp>

#include "latchsim/errors.hpp"
#include "latchsim/io.hpp"

namespace latchsim {

namespace {

constexpr double kTau = 6.283185307179586476925286766559;

using json = nlohmann::json;

// Strict readers: every key in the block must be known, required keys must
// be present.
class Block {
public:
    Block(const json& j, std::string name) : j_(j), name_(std::move(name)) {
        require(j_.is_object(), ErrorKind::config, "config block '" + name_ + "' must be an object");
    }

    ~Block() = default;

    double num(const char* key) {
        mark(key);
        require(j_.contains(key), ErrorKind::config, name_ + "." + key + " is required");
        require(j_[key].is_number(), ErrorKind::config, name_ + "." + key + " must be a number");
        return j_[key].get<double>();
    }

    double num_or(const char* key, double fallback) {
        mark(key);
        if (!j_.contains(key)) return fallback;
        require(j_[key].is_number(), ErrorKind::config, name_ + "." + key + " must be a number");
        return j_[key].get<double>();
    }

    int int_or(const char* key, int fallback) {
        mark(key);
        if (!j_.contains(key)) return fallback;
        require(j_[key].is_number_integer(), ErrorKind::config,
                name_ + "." + key + " must be an integer");
        return j_[key].get<int>();
    }

    bool bool_or(const char* key, bool fallback) {
        mark(key);
        if (!j_.contains(key)) return fallback;
        require(j_[key].is_boolean(), ErrorKind::config, name_ + "." + key + " must be a boolean");
        return j_[key].get<bool>();
    }

    std::string str_or(const char* key, const std::string& fallback) {
        mark(key);
        if (!j_.contains(key)) return fallback;
        require(j_[key].is_string(), ErrorKind::config, name_ + "." + key + " must be a string");
        return j_[key].get<std::string>();
    }

    std::optional<double> opt_num(const char* key) {
        mark(key);
        if (!j_.contains(key)) return std::nullopt;
        require(j_[key].is_number(), ErrorKind::config, name_ + "." + key + " must be a number");
        return j_[key].get<double>();
    }

    std::vector<double> num_list_or(const char* key, std::vector<double> fallback) {
        mark(key);
        if (!j_.contains(key)) return fallback;
        require(j_[key].is_array(), ErrorKind::config, name_ + "." + key + " must be an array");
        std::vector<double> out;
        for (const auto& v : j_[key]) {
            require(v.is_number(), ErrorKind::config, name_ + "." + key + " entries must be numbers");
            out.push_back(v.get<double>());
        }
        return out;
    }

    const json* child(const char* key) {
        mark(key);
        if (!j_.contains(key)) return nullptr;
        return &j_[key];
    }

    void finish() const {
        for (auto it = j_.begin(); it != j_.end(); ++it) {
            bool known = false;
            for (const auto& k : seen_)
                if (k == it.key()) known = true;
            require(known, ErrorKind::config, "unknown key '" + it.key() + "' in " + name_);
        }
    }

private:
    void mark(const char* key) { seen_.emplace_back(key); }

    const json& j_;
    std::string name_;
    std::vector<std::string> seen_;
};

}  // namespace

void RunConfig::validate() const {
    circuit.validate();
    noise_model().validate();
    require(drive.duration_s > 0, ErrorKind::config, "drive.duration_s must be > 0");
    require(drive.dt_factor > 0 && drive.dt_factor <= 0.02, ErrorKind::config,
            "drive.dt_factor must be in (0, 0.02]");
    require(drive.chi21_ratio > 0, ErrorKind::config, "drive.chi21_ratio must be > 0");
    require(drive.epsilon_hz >= 0, ErrorKind::config, "drive.epsilon_hz must be >= 0");
    require(drive.weights == "boxcar" || drive.weights == "matched", ErrorKind::config,
            "drive.weights must be boxcar or matched");
    require(bench.n_rounds >= 2, ErrorKind::config, "benchmark.n_rounds must be >= 2");
    require(bench.shots_per_round >= 2, ErrorKind::config, "benchmark.shots_per_round must be >= 2");
    require(bench.n_calibration >= 100, ErrorKind::config, "benchmark.n_calibration must be >= 100");
    require(optimize.budget >= 9, ErrorKind::config, "optimize.budget must be >= 9");
    require(optimize.shots_per_eval >= 100, ErrorKind::config,
            "optimize.shots_per_eval must be >= 100");
    require(protocol.x_gate_error >= 0 && protocol.x_gate_error < 1, ErrorKind::config,
            "protocol.x_gate_error must be in [0,1)");
    require(protocol.x12_gate_error >= 0 && protocol.x12_gate_error < 1, ErrorKind::config,
            "protocol.x12_gate_error must be in [0,1)");
    require(protocol.herald_gap_s >= 0, ErrorKind::config, "protocol.herald_gap_s must be >= 0");
}

ReadoutOperatingPoint RunConfig::operating_point() const {
    const CouplingCoefficients k = coupling_coefficients(circuit, drive.phi_ext);
    ReadoutOperatingPoint op;
    op.f_res_hz = resonator_frequency(circuit, drive.phi_ext);
    op.gzz_hz = coupling_overrides.gzz_hz.value_or(k.gzz_hz);
    op.eta_hz = coupling_overrides.eta_hz.value_or(k.eta_hz);
    op.chi21_ratio = drive.chi21_ratio;
    op.kappa_hz = circuit.kappa_hz;
    op.epsilon_hz = drive.epsilon_hz;
    return op;
}

NoiseModel RunConfig::noise_model() const {
    NoiseModel n;
    n.t1_s = circuit.t1_s;
    n.t2star_s = circuit.t2star_s;
    n.gamma_up_per_s = noise.gamma_up_per_s;
    n.drive_up_rate_per_photon_per_s = noise.drive_up_rate_per_photon_per_s;
    n.sigma_iq = noise.sigma_iq;
    return n;
}

BenchmarkSetup RunConfig::benchmark_setup() const {
    BenchmarkSetup s;
    s.op = operating_point();
    s.f_drive_hz = drive.f_drive_hz;
    s.duration_s = drive.duration_s;
    s.dt_s = drive.dt_factor / (kTau * circuit.kappa_hz);
    s.window_start_s = drive.window_start_s;
    s.window_end_s = drive.window_end_s;
    s.weights = drive.weights == "matched" ? WeightKind::matched : WeightKind::boxcar;
    s.noise = noise_model();
    s.prep = protocol;
    return s;
}

DriveBounds RunConfig::drive_bounds() const {
    DriveBounds b;
    b.f_drive_lo_hz = optimize.f_drive_lo_hz;
    b.f_drive_hi_hz = optimize.f_drive_hi_hz;
    b.epsilon_lo_hz = optimize.epsilon_lo_hz;
    b.epsilon_hi_hz = optimize.epsilon_hi_hz;
    return b;
}

RunConfig parse_config(const std::string& json_text) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::parse_error& e) {
        fail(ErrorKind::config, std::string("config is not valid JSON: ") + e.what());
    }
    Block top(root, "config");
    RunConfig cfg;

    if (const json* jc = top.child("circuit")) {
        Block b(*jc, "circuit");
        cfg.circuit.ejc_hz = b.num("ejc_hz");
        cfg.circuit.anharmonicity_hz = b.num("anharmonicity_hz");
        cfg.circuit.f_qubit_max_hz = b.num("f_qubit_max_hz");
        cfg.circuit.f_qubit_min_hz = b.num("f_qubit_min_hz");
        cfg.circuit.f_res_center_hz = b.num("f_res_center_hz");
        cfg.circuit.f_res_tuning_hz = b.num("f_res_tuning_hz");
        cfg.circuit.c_parasitic_f = b.num("c_parasitic_f");
        cfg.circuit.c_planar_f = b.num("c_planar_f");
        cfg.circuit.t1_s = b.num("t1_s");
        cfg.circuit.t2star_s = b.num("t2star_s");
        cfg.circuit.kappa_hz = b.num("kappa_hz");
        if (const json* jcal = b.child("calibration")) {
            Block c(*jcal, "circuit.calibration");
            cfg.circuit.cal_zz = c.num_or("cal_zz", cfg.circuit.cal_zz);
            cfg.circuit.cal_kerr = c.num_or("cal_kerr", cfg.circuit.cal_kerr);
            cfg.circuit.cal_xx_junction = c.num_or("cal_xx_junction", cfg.circuit.cal_xx_junction);
            cfg.circuit.cal_xx_capacitive =
                c.num_or("cal_xx_capacitive", cfg.circuit.cal_xx_capacitive);
            c.finish();
        }
        b.finish();
    } else {
        fail(ErrorKind::config, "config.circuit is required");
    }

    if (const json* j = top.child("coupling_overrides")) {
        Block b(*j, "coupling_overrides");
        cfg.coupling_overrides.gzz_hz = b.opt_num("gzz_hz");
        cfg.coupling_overrides.eta_hz = b.opt_num("eta_hz");
        b.finish();
    }

    if (const json* j = top.child("noise")) {
        Block b(*j, "noise");
        cfg.noise.gamma_up_per_s = b.num_or("gamma_up_per_s", cfg.noise.gamma_up_per_s);
        cfg.noise.drive_up_rate_per_photon_per_s =
            b.num_or("drive_up_rate_per_photon_per_s", cfg.noise.drive_up_rate_per_photon_per_s);
        cfg.noise.sigma_iq = b.num_or("sigma_iq", cfg.noise.sigma_iq);
        b.finish();
    }

    if (const json* j = top.child("drive")) {
        Block b(*j, "drive");
        cfg.drive.phi_ext = b.num_or("phi_ext", 0.0);
        cfg.drive.f_drive_hz = b.num("f_drive_hz");
        cfg.drive.epsilon_hz = b.num("epsilon_hz");
        cfg.drive.duration_s = b.num_or("duration_s", cfg.drive.duration_s);
        cfg.drive.dt_factor = b.num_or("dt_factor", cfg.drive.dt_factor);
        cfg.drive.chi21_ratio = b.num_or("chi21_ratio", cfg.drive.chi21_ratio);
        cfg.drive.window_start_s = b.num_or("window_start_s", 0.0);
        cfg.drive.window_end_s = b.num_or("window_end_s", 0.0);
        cfg.drive.weights = b.str_or("weights", cfg.drive.weights);
        b.finish();
    } else {
        fail(ErrorKind::config, "config.drive is required");
    }

    if (const json* j = top.child("protocol")) {
        Block b(*j, "protocol");
        cfg.protocol.herald = b.bool_or("herald", cfg.protocol.herald);
        cfg.protocol.herald_gap_s = b.num_or("herald_gap_s", cfg.protocol.herald_gap_s);
        cfg.protocol.x12 = b.bool_or("x12", cfg.protocol.x12);
        cfg.protocol.x_gate_error = b.num_or("x_gate_error", cfg.protocol.x_gate_error);
        cfg.protocol.x12_gate_error = b.num_or("x12_gate_error", cfg.protocol.x12_gate_error);
        b.finish();
    }

    if (const json* j = top.child("benchmark")) {
        Block b(*j, "benchmark");
        cfg.bench.n_rounds = b.int_or("n_rounds", cfg.bench.n_rounds);
        cfg.bench.shots_per_round = b.int_or("shots_per_round", cfg.bench.shots_per_round);
        cfg.bench.n_calibration = b.int_or("n_calibration", cfg.bench.n_calibration);
        b.finish();
    }

    if (const json* j = top.child("optimize")) {
        Block b(*j, "optimize");
        cfg.optimize.budget = b.int_or("budget", cfg.optimize.budget);
        cfg.optimize.shots_per_eval = b.int_or("shots_per_eval", cfg.optimize.shots_per_eval);
        cfg.optimize.f_drive_lo_hz = b.num("f_drive_lo_hz");
        cfg.optimize.f_drive_hi_hz = b.num("f_drive_hi_hz");
        cfg.optimize.epsilon_lo_hz = b.num("epsilon_lo_hz");
        cfg.optimize.epsilon_hi_hz = b.num("epsilon_hi_hz");
        cfg.optimize.times_s = b.num_list_or("times_s", {});
        b.finish();
    } else {
        fail(ErrorKind::config, "config.optimize is required");
    }

    {
        const json* j = top.child("master_seed");
        require(j != nullptr, ErrorKind::config,
                "config.master_seed is required (no wall-clock seeding)");
        require(j->is_number_unsigned(), ErrorKind::config,
                "master_seed must be an unsigned integer");
        cfg.master_seed = j->get<uint64_t>();
    }
    cfg.out_dir = top.str_or("out_dir", cfg.out_dir);
    top.finish();

    cfg.validate();
    return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
    return parse_config(read_file(path));
}

}  // namespace latchsim
