// Copyright 2026 The posimet Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "posimet/json_io.h"

#include <ostream>
#include <string>

#include "posimet/errors.h"

namespace posimet {

namespace {

const Json &require(const Json &j, const std::string &key, const std::string &path) {
    if (!j.is_object()) {
        throw ConfigError(path + ": expected an object");
    }
    auto it = j.find(key);
    if (it == j.end()) {
        throw ConfigError(path + "." + key + ": missing");
    }
    return *it;
}

double number(const Json &j, const std::string &key, const std::string &path) {
    const Json &v = require(j, key, path);
    if (!v.is_number()) {
        throw ConfigError(path + "." + key + ": expected a number");
    }
    return v.get<double>();
}

double number_or(const Json &j, const std::string &key, const std::string &path, double fallback) {
    if (!j.contains(key)) {
        return fallback;
    }
    return number(j, key, path);
}

TransmonParams transmon_from_json(const Json &j, const std::string &path) {
    TransmonParams t;
    const Json &name = require(j, "name", path);
    if (!name.is_string()) {
        throw ConfigError(path + ".name: expected a string");
    }
    t.name = name.get<std::string>();
    t.frequency_ghz = number(j, "frequency_ghz", path);
    t.anharmonicity_mhz = number(j, "anharmonicity_mhz", path);
    t.t1_us = number(j, "t1_us", path);
    t.t2star_us = number(j, "t2star_us", path);
    if (j.contains("resonator_ghz")) {
        t.resonator_ghz = number(j, "resonator_ghz", path);
    }
    return t;
}

Json transmon_to_json(const TransmonParams &t) {
    Json j;
    j["name"] = t.name;
    j["frequency_ghz"] = t.frequency_ghz;
    j["anharmonicity_mhz"] = t.anharmonicity_mhz;
    j["t1_us"] = t.t1_us;
    j["t2star_us"] = t.t2star_us;
    if (t.resonator_ghz) {
        j["resonator_ghz"] = *t.resonator_ghz;
    }
    return j;
}

Confusion confusion_from_json(const Json &j, const std::string &path) {
    if (j.is_number()) {
        double f = j.get<double>();
        if (!(f >= 0 && f <= 1)) {
            throw ConfigError(path + ": readout fidelity must lie in [0, 1]");
        }
        return symmetric_confusion(f);
    }
    if (!j.is_array() || j.size() != 2 || !j[0].is_array() || !j[1].is_array() || j[0].size() != 2 ||
        j[1].size() != 2) {
        throw ConfigError(path + ": expected a fidelity or a 2x2 matrix");
    }
    Confusion c;
    for (int r = 0; r < 2; r++) {
        for (int k = 0; k < 2; k++) {
            if (!j[r][k].is_number()) {
                throw ConfigError(path + ": matrix entries must be numbers");
            }
            c(r, k) = j[r][k].get<double>();
        }
    }
    return c;
}

Json confusion_to_json(const Confusion &c) {
    return Json::array({Json::array({c(0, 0), c(0, 1)}), Json::array({c(1, 0), c(1, 1)})});
}

Json matrix_json(const Eigen::Matrix3d &m) {
    Json rows = Json::array();
    for (int r = 0; r < 3; r++) {
        rows.push_back(Json::array({m(r, 0), m(r, 1), m(r, 2)}));
    }
    return rows;
}

}  // namespace

DeviceParams device_from_json(const Json &j) {
    const std::string path = "device";
    const Json &list = require(j, "transmons", path);
    if (!list.is_array()) {
        throw ConfigError(path + ".transmons: expected an array");
    }
    DeviceParams d;
    bool seen[3] = {false, false, false};
    for (size_t i = 0; i < list.size(); i++) {
        std::string p = path + ".transmons[" + std::to_string(i) + "]";
        TransmonParams t = transmon_from_json(list[i], p);
        TransmonParams *slot = nullptr;
        if (t.name == "qubit") {
            slot = &d.qubit;
            seen[0] = true;
        } else if (t.name == "antiqubit") {
            slot = &d.antiqubit;
            seen[1] = true;
        } else if (t.name == "coupler") {
            slot = &d.coupler;
            seen[2] = true;
        } else {
            throw ConfigError(p + ".name: expected qubit, antiqubit or coupler");
        }
        *slot = t;
    }
    if (!seen[0] || !seen[1] || !seen[2]) {
        throw ConfigError(path + ".transmons: need entries named qubit, antiqubit and coupler");
    }
    d.antiqubit_amplitude_ratio = number_or(j, "antiqubit_amplitude_ratio", path, 1.0);
    try {
        d.validate();
    } catch (const DomainError &e) {
        throw ConfigError(path + ": " + e.what());
    }
    return d;
}

Json device_to_json(const DeviceParams &d) {
    Json j;
    j["transmons"] = Json::array({transmon_to_json(d.qubit), transmon_to_json(d.antiqubit), transmon_to_json(d.coupler)});
    j["antiqubit_amplitude_ratio"] = d.antiqubit_amplitude_ratio;
    return j;
}

NoiseModel noise_from_json(const Json &j) {
    const std::string path = "noise";
    if (!j.is_object()) {
        throw ConfigError(path + ": expected an object");
    }
    NoiseModel n;
    n.prep_fidelity = number_or(j, "prep_fidelity", path, 1.0);
    if (j.contains("readout")) {
        const Json &r = j["readout"];
        if (r.contains("qubit")) {
            n.qubit_confusion = confusion_from_json(r["qubit"], path + ".readout.qubit");
        }
        if (r.contains("antiqubit")) {
            n.antiqubit_confusion = confusion_from_json(r["antiqubit"], path + ".readout.antiqubit");
        }
    }
    if (j.contains("ac_stark")) {
        const Json &s = j["ac_stark"];
        const std::string sp = path + ".ac_stark";
        if (s.contains("enabled")) {
            if (!s["enabled"].is_boolean()) {
                throw ConfigError(sp + ".enabled: expected a boolean");
            }
            n.stark.enabled = s["enabled"].get<bool>();
        }
        n.stark.qubit_detuning_ghz = number_or(s, "qubit_detuning_mhz", sp, 0.0) * 1e-3;
        n.stark.antiqubit_detuning_ghz = number_or(s, "antiqubit_detuning_mhz", sp, 0.0) * 1e-3;
        n.stark.field_rate_ghz = number_or(s, "field_rate_mhz", sp, 0.0) * 1e-3;
        n.stark.drive_phase_rad = number_or(s, "drive_phase_rad", sp, 0.0);
        n.stark.max_pulse_ns = number_or(s, "max_pulse_ns", sp, 0.0);
    }
    try {
        n.validate();
    } catch (const DomainError &e) {
        throw ConfigError(path + ": " + e.what());
    }
    return n;
}

Json noise_to_json(const NoiseModel &n) {
    Json j;
    j["prep_fidelity"] = n.prep_fidelity;
    j["readout"] = {{"qubit", confusion_to_json(n.qubit_confusion)},
                    {"antiqubit", confusion_to_json(n.antiqubit_confusion)}};
    j["ac_stark"] = {{"enabled", n.stark.enabled},
                     {"qubit_detuning_mhz", n.stark.qubit_detuning_ghz * 1e3},
                     {"antiqubit_detuning_mhz", n.stark.antiqubit_detuning_ghz * 1e3},
                     {"field_rate_mhz", n.stark.field_rate_ghz * 1e3},
                     {"drive_phase_rad", n.stark.drive_phase_rad},
                     {"max_pulse_ns", n.stark.max_pulse_ns}};
    return j;
}

Json axis_to_json(const AxisVec3 &n) {
    return Json::array({n.x(), n.y(), n.z()});
}

Json shot_summary_json(const ShotRecord &r) {
    std::array<uint64_t, 4> c = r.counts();
    Json j;
    j["protocol"] = std::string(protocol_name(r.kind));
    j["axis"] = axis_to_json(r.axis);
    j["alpha"] = r.alpha;
    j["n_reps"] = r.n_reps;
    j["seed"] = r.seed;
    j["n_shots"] = r.n_shots();
    j["counts"] = {{"00", c[0]}, {"01", c[1]}, {"10", c[2]}, {"11", c[3]}};
    return j;
}

void write_shot_csv(std::ostream &out, const ShotRecord &r) {
    out << "shot_index,qubit_bit,antiqubit_bit\n";
    for (size_t i = 0; i < r.n_shots(); i++) {
        out << i << ',' << int(r.qubit_bits[i]) << ',' << int(r.antiqubit_bits[i]) << '\n';
    }
}

Json fit_report_json(const FringeFit &fit, const FiExtraction &fi) {
    Json j;
    j["A"] = fit.amplitude;
    j["phi0"] = fit.phase;
    j["B"] = fit.offset;
    j["k"] = fit.k;
    j["covariance"] = matrix_json(fit.covariance);
    j["covariance_order"] = Json::array({"A", "phi0", "B"});
    j["fi"] = fi.fi;
    j["alpha_star"] = fi.alpha_star;
    j["delta"] = fi.delta;
    j["chi2"] = fit.chi2;
    j["dof"] = fit.dof;
    j["residual_rms"] = fit.residual_rms;
    j["degenerate_phase"] = fit.degenerate_phase;
    return j;
}

Json magic_frequency_json(const MagicFrequency &m) {
    Json j;
    j["frequency_ghz"] = m.frequency_ghz;
    j["bracket_ghz"] = Json::array({m.window_lo_ghz, m.window_hi_ghz});
    j["poles_ghz"] = m.poles_ghz;
    j["iterations"] = m.iterations;
    j["qubit_shift_per_amp2_ghz"] = m.qubit_shift_per_amp2;
    j["antiqubit_shift_per_amp2_ghz"] = m.antiqubit_shift_per_amp2;
    return j;
}

Json qfim_json(const Qfim3 &m) {
    Json j;
    j["order"] = Json::array({"alpha", "theta", "phi"});
    j["matrix"] = matrix_json(m.matrix());
    return j;
}

}  // namespace posimet
