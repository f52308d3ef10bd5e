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

#include <cmath>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cli.h"
#include "posimet/errors.h"
#include "posimet/experiment.h"
#include "posimet/metrology.h"
#include "posimet/protocols.h"
#include "posimet/qfim.h"
#include "posimet/states.h"

namespace posimet::cli {

namespace {

struct GlobalOptions {
    std::string config_path;
    std::string device_path;
    std::string noise_path;
    std::optional<uint64_t> seed;
    std::optional<uint64_t> shots;
    std::vector<std::string> axes;
    std::optional<std::string> protocol;
    std::optional<double> alpha;
    std::optional<int> n_reps;
    std::string output;
    std::string format = "json";
    bool reproducible = false;
    bool noiseless = false;
};

// Payload in both shapes; the emitter picks one.
struct Report {
    Json json = Json::object();
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    bool failed_check = false;
};

std::string num(double v) {
    std::ostringstream os;
    os << std::setprecision(15) << v;
    return os.str();
}

std::string csv_field(const std::string &s) {
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string q = "\"";
    for (char c : s) {
        q += c;
        if (c == '"') {
            q += '"';
        }
    }
    return q + "\"";
}

const Json &field(const Json &obj, const std::string &key, const std::string &path) {
    if (!obj.is_object() || !obj.contains(key)) {
        throw ConfigError("config " + path + "." + key + ": missing");
    }
    return obj[key];
}

double cfg_number(const Json &obj, const std::string &key, const std::string &path) {
    const Json &v = field(obj, key, path);
    if (!v.is_number()) {
        throw ConfigError("config " + path + "." + key + ": expected a number");
    }
    return v.get<double>();
}

int64_t cfg_int(const Json &obj, const std::string &key, const std::string &path, int64_t min) {
    const Json &v = field(obj, key, path);
    if (!v.is_number_integer() || v.get<int64_t>() < min) {
        throw ConfigError("config " + path + "." + key + ": expected an integer >= " + std::to_string(min));
    }
    return v.get<int64_t>();
}

bool cfg_bool(const Json &obj, const std::string &key, const std::string &path) {
    const Json &v = field(obj, key, path);
    if (!v.is_boolean()) {
        throw ConfigError("config " + path + "." + key + ": expected a boolean");
    }
    return v.get<bool>();
}

std::string cfg_string(const Json &obj, const std::string &key, const std::string &path) {
    const Json &v = field(obj, key, path);
    if (!v.is_string()) {
        throw ConfigError("config " + path + "." + key + ": expected a string");
    }
    return v.get<std::string>();
}

// Either {"device": {...}} / {"noise": {...}} or the bare section.
Json section_file(const std::string &path, const std::string &key) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError(path + ": cannot open " + key + " file");
    }
    Json doc;
    try {
        doc = Json::parse(in);
    } catch (const nlohmann::json::parse_error &e) {
        throw ConfigError(path + ": " + e.what());
    }
    if (doc.is_object() && doc.contains(key)) {
        return doc[key];
    }
    return doc;
}

class Context {
public:
    Context(const GlobalOptions &opts, Json doc) : opts_(opts), doc_(std::move(doc)) {
        if (!opts_.device_path.empty()) {
            doc_["device"] = section_file(opts_.device_path, "device");
        }
        if (!opts_.noise_path.empty()) {
            doc_["noise"] = section_file(opts_.noise_path, "noise");
        }
    }

    const GlobalOptions &opts() const { return opts_; }
    const Json &experiment() const { return field(doc_, "experiment", "root"); }

    DeviceParams device() const { return device_from_json(field(doc_, "device", "root")); }

    NoiseModel noise() const {
        if (opts_.noiseless) {
            return NoiseModel::ideal();
        }
        return noise_from_json(field(doc_, "noise", "root"));
    }

    const Json &magic() const { return field(doc_, "magic_frequency", "root"); }

    ProtocolKind protocol() const {
        std::string name = opts_.protocol ? *opts_.protocol : cfg_string(experiment(), "protocol", "experiment");
        try {
            return parse_protocol(name);
        } catch (const DomainError &e) {
            throw ConfigError(std::string("protocol: ") + e.what());
        }
    }

    int n_reps() const {
        int n = opts_.n_reps ? *opts_.n_reps : static_cast<int>(cfg_int(experiment(), "n_reps", "experiment", 1));
        if (n < 1) {
            throw ConfigError("n_reps must be >= 1");
        }
        return n;
    }

    uint64_t seed() const {
        return opts_.seed ? *opts_.seed : static_cast<uint64_t>(cfg_int(experiment(), "seed", "experiment", 0));
    }

    uint64_t shots() const {
        uint64_t s = opts_.shots ? *opts_.shots : static_cast<uint64_t>(cfg_int(experiment(), "shots", "experiment", 1));
        if (s < 1) {
            throw ConfigError("shots must be >= 1");
        }
        return s;
    }

    std::vector<std::string> axis_labels() const {
        if (!opts_.axes.empty()) {
            return opts_.axes;
        }
        const Json &list = field(experiment(), "axes", "experiment");
        if (!list.is_array() || list.empty()) {
            throw ConfigError("config experiment.axes: expected a non-empty array");
        }
        std::vector<std::string> out;
        for (size_t i = 0; i < list.size(); i++) {
            if (!list[i].is_string()) {
                throw ConfigError("config experiment.axes[" + std::to_string(i) + "]: expected a string");
            }
            out.push_back(list[i].get<std::string>());
        }
        return out;
    }

    std::vector<double> alpha_grid(std::optional<double> lo, std::optional<double> hi, std::optional<int> points) const {
        const Json &g = field(experiment(), "alpha_grid", "experiment");
        const std::string p = "experiment.alpha_grid";
        double a = lo ? *lo : cfg_number(g, "lo_rad", p);
        double b = hi ? *hi : cfg_number(g, "hi_rad", p);
        int n = points ? *points : static_cast<int>(cfg_int(g, "points", p, 2));
        if (n < 2 || !(b > a)) {
            throw ConfigError("alpha grid: need at least 2 points and hi > lo (strictly increasing)");
        }
        return linear_grid(a, b, n);
    }

private:
    GlobalOptions opts_;
    Json doc_;
};

TwoTlsState random_state(uint64_t seed) {
    std::mt19937_64 g(seed);
    std::normal_distribution<double> d;
    Vec4 v;
    for (int i = 0; i < 4; i++) {
        v[i] = cplx(d(g), d(g));
    }
    return TwoTlsState::renormalized(v);
}

// QFI of the protocol's probe family at alpha, where the family is a pure two-TLS state.
std::optional<double> protocol_qfi(ProtocolKind kind, double alpha, const AxisVec3 &n, int n_reps) {
    const Vec4 singlet = TwoTlsState::singlet().amplitudes();
    StateFamily family;
    switch (kind) {
        case ProtocolKind::kPositronium:
            family = [&](double a) -> Eigen::VectorXcd {
                return kron2(rotation_unitary(a, n), rotation_unitary(a, n).adjoint()) * singlet;
            };
            break;
        case ProtocolKind::kPositroniumSequential:
            return sequential_positronium_qfi(n_reps, alpha, n).qfi;
        case ProtocolKind::kAgnostic:
            family = [&](double a) -> Eigen::VectorXcd { return kron2(rotation_unitary(a, n), identity2()) * singlet; };
            break;
        case ProtocolKind::kSeparableAntimatter:
            family = [&](double a) -> Eigen::VectorXcd {
                return TwoTlsState::product(rotation_unitary(a, n) * ket_x_plus(),
                                            rotation_unitary(a, n).adjoint() * ket_z_plus())
                    .amplitudes();
            };
            break;
        default:
            return std::nullopt;
    }
    return qfi_pure(family, alpha);
}

struct QfiArgs {
    bool effective_separable = false;
    bool numeric = false;
    std::string state;
    bool check_bound = false;
};

Report cmd_qfi(const Context &ctx, const QfiArgs &args) {
    Report r;
    r.header = {"quantity", "value"};
    auto row = [&](const std::string &k, double v) { r.rows.push_back({k, num(v)}); };
    bool any = false;

    if (args.effective_separable) {
        any = true;
        Json j;
        j["path"] = "closed_form";
        j["inverse_alpha_average"] = sphere_average_inverse_alpha(InverseAlphaPath::kClosedForm);
        j["effective_qfi"] = sphere_average_effective_qfi(InverseAlphaPath::kClosedForm);
        row("effective_separable.inverse_alpha_average", j["inverse_alpha_average"]);
        row("effective_separable.effective_qfi", j["effective_qfi"]);
        if (args.numeric) {
            double inv = sphere_average_inverse_alpha(InverseAlphaPath::kNumericQfim);
            j["numeric"] = {{"inverse_alpha_average", inv}, {"effective_qfi", 1.0 / inv}};
            row("effective_separable.numeric.inverse_alpha_average", inv);
            row("effective_separable.numeric.effective_qfi", 1.0 / inv);
        }
        r.json["effective_separable"] = j;
    }

    if (!args.state.empty()) {
        any = true;
        TwoTlsState psi = TwoTlsState::singlet();
        Json j;
        j["state"] = args.state;
        if (args.state == "random") {
            j["seed"] = ctx.seed();
            psi = random_state(ctx.seed());
        }
        Json amp = Json::array();
        for (int i = 0; i < 4; i++) {
            amp.push_back(Json::array({psi.amplitudes()[i].real(), psi.amplitudes()[i].imag()}));
        }
        j["amplitudes"] = amp;
        double c = concurrence(psi);
        double bound = concurrence_bound(c);
        j["concurrence"] = c;
        j["bound"] = bound;
        row("state.concurrence", c);
        row("state.bound", bound);
        Json signs = Json::array();
        for (int s : {-1, 1}) {
            AxisMaximum m = max_qfi_over_axes(psi, EvolutionSign(s));
            bool ok = m.value <= bound + 1e-5;
            std::string tag = s < 0 ? "state.s_minus." : "state.s_plus.";
            Json e;
            e["sign"] = s;
            e["max_qfi"] = m.value;
            e["argmax_axis"] = axis_to_json(m.axis);
            e["axis_independent_optimal"] = is_axis_independent_optimal(psi, EvolutionSign(s));
            if (args.check_bound) {
                e["bound_satisfied"] = ok;
                r.failed_check = r.failed_check || !ok;
                row(tag + "bound_satisfied", ok ? 1.0 : 0.0);
            }
            row(tag + "max_qfi", m.value);
            signs.push_back(e);
        }
        j["signs"] = signs;
        r.json["state"] = j;
    }

    if (ctx.opts().protocol || !any) {
        ProtocolKind kind = ctx.opts().protocol ? ctx.protocol() : ProtocolKind::kPositronium;
        std::vector<std::string> labels = ctx.opts().axes.empty() ? std::vector<std::string>{"z"} : ctx.opts().axes;
        double alpha = ctx.opts().alpha.value_or(0.3);
        int reps = ctx.opts().n_reps.value_or(1);
        Json list = Json::array();
        for (const std::string &label : labels) {
            AxisVec3 n = parse_axis(label);
            ProtocolResult pr = run_ideal({kind, n, alpha, reps});
            Json j;
            j["axis"] = label;
            j["fi"] = pr.fi;
            std::optional<double> q = protocol_qfi(kind, alpha, n, reps);
            j["qfi"] = q ? Json(*q) : Json(nullptr);
            j["v_st"] = pr.v_st;
            j["fi_per_two_vst"] = pr.fi_per_two_vst;
            j["alpha_offset"] = pr.alpha_offset;
            Json probs = Json::object();
            for (size_t i = 0; i < pr.outcome_labels.size(); i++) {
                probs[pr.outcome_labels[i]] = pr.probabilities[i];
            }
            j["probabilities"] = probs;
            list.push_back(j);
            row("protocol." + label + ".fi", pr.fi);
            if (q) {
                row("protocol." + label + ".qfi", *q);
            }
            row("protocol." + label + ".fi_per_two_vst", pr.fi_per_two_vst);
        }
        r.json["protocol"] = {{"name", std::string(protocol_name(kind))}, {"alpha", alpha}, {"n_reps", reps},
                              {"axes", list}};
    }
    return r;
}

struct SweepArgs {
    std::optional<double> lo, hi;
    std::optional<int> points;
};

Report cmd_sweep(const Context &ctx, const SweepArgs &args) {
    ProtocolKind kind = ctx.protocol();
    if (kind == ProtocolKind::kSingleQubitThreeAxis) {
        throw ConfigError("protocol: sweep needs a two-transmon protocol");
    }
    const bool separable = kind == ProtocolKind::kSeparableAntimatter;
    const int reps = ctx.n_reps();
    const NoiseModel noise = ctx.noise();
    const std::vector<double> grid = ctx.alpha_grid(args.lo, args.hi, args.points);
    const uint64_t shots = ctx.opts().shots.value_or(0);
    const uint64_t seed = ctx.seed();
    const std::vector<std::string> labels = ctx.axis_labels();
    const std::vector<std::string> outcomes =
        separable ? std::vector<std::string>{"qubit_x_plus", "antiqubit_z_plus"} : std::vector<std::string>{"psi_minus"};
    auto pick = [&](const PatternProbs &p, size_t o) {
        if (!separable) {
            return p[1];
        }
        return o == 0 ? p[0] + p[1] : p[0] + p[2];
    };

    Report r;
    r.header = {"axis", "outcome", "alpha_rad", "probability"};
    if (shots > 0) {
        r.header.push_back("frequency");
    }
    Json rows = Json::array();
    for (size_t ai = 0; ai < labels.size(); ai++) {
        AxisVec3 n = parse_axis(labels[ai]);
        for (size_t i = 0; i < grid.size(); i++) {
            ProtocolSpec spec{kind, n, grid[i], reps};
            PatternProbs model = noisy_pattern_probs(spec, noise);
            PatternProbs freq{};
            if (shots > 0) {
                freq = simulate_shots(spec, noise, shots, point_seed(seed, ai, i)).frequencies();
            }
            for (size_t o = 0; o < outcomes.size(); o++) {
                Json j;
                j["axis"] = labels[ai];
                j["outcome"] = outcomes[o];
                j["alpha_rad"] = grid[i];
                j["probability"] = pick(model, o);
                std::vector<std::string> line = {labels[ai], outcomes[o], num(grid[i]), num(pick(model, o))};
                if (shots > 0) {
                    j["frequency"] = pick(freq, o);
                    line.push_back(num(pick(freq, o)));
                }
                rows.push_back(j);
                r.rows.push_back(line);
            }
        }
    }
    r.json["protocol"] = std::string(protocol_name(kind));
    r.json["n_reps"] = reps;
    r.json["noise"] = noise_to_json(noise);
    r.json["shots_per_point"] = shots;
    if (shots > 0) {
        r.json["seed"] = seed;
    }
    r.json["rows"] = rows;
    return r;
}

struct MagicArgs {
    std::optional<double> ratio, lo, hi;
};

Report cmd_magic(const Context &ctx, const MagicArgs &args) {
    DeviceParams device = ctx.device();
    const Json &m = ctx.magic();
    double xtol = cfg_number(m, "xtol_ghz", "magic_frequency");
    struct Window {
        double ratio, lo, hi;
    };
    std::vector<Window> windows;
    const Json &list = field(m, "windows", "magic_frequency");
    if (!list.is_array()) {
        throw ConfigError("config magic_frequency.windows: expected an array");
    }
    for (size_t i = 0; i < list.size(); i++) {
        std::string p = "magic_frequency.windows[" + std::to_string(i) + "]";
        windows.push_back({cfg_number(list[i], "ratio", p), cfg_number(list[i], "lo_ghz", p),
                           cfg_number(list[i], "hi_ghz", p)});
    }
    if (args.ratio || args.lo || args.hi) {
        double ratio = args.ratio.value_or(device.antiqubit_amplitude_ratio);
        if (args.lo && args.hi) {
            windows = {{ratio, *args.lo, *args.hi}};
        } else if (!args.lo && !args.hi) {
            std::vector<Window> keep;
            for (const Window &w : windows) {
                if (std::abs(w.ratio - ratio) < 1e-12) {
                    keep.push_back(w);
                }
            }
            if (keep.empty()) {
                throw ConfigError("magic-freq: no configured window for ratio " + num(ratio) + "; pass --lo and --hi");
            }
            windows = keep;
        } else {
            throw ConfigError("magic-freq: --lo and --hi go together");
        }
    }

    Report r;
    r.header = {"ratio", "frequency_ghz", "lo_ghz", "hi_ghz", "iterations"};
    Json results = Json::array();
    for (const Window &w : windows) {
        MagicFrequency mf = magic_frequency(device, w.ratio, w.lo, w.hi, xtol);
        Json j = {{"ratio", w.ratio}};
        j.update(magic_frequency_json(mf));
        results.push_back(j);
        r.rows.push_back({num(w.ratio), num(mf.frequency_ghz), num(w.lo), num(w.hi), std::to_string(mf.iterations)});
    }
    r.json["device"] = device_to_json(device);
    r.json["results"] = results;
    return r;
}

struct ExperimentArgs {
    std::optional<double> lo, hi;
    std::optional<int> points;
    bool no_correction = false;
    std::optional<int> bootstrap;
    unsigned workers = 0;
};

Report cmd_experiment(const Context &ctx, const ExperimentArgs &args) {
    ExperimentSettings s;
    s.kind = ctx.protocol();
    s.n_reps = ctx.n_reps();
    s.noise = ctx.noise();
    s.alphas = ctx.alpha_grid(args.lo, args.hi, args.points);
    s.shots_per_point = ctx.shots();
    s.seed = ctx.seed();
    s.readout_correction = !args.no_correction && cfg_bool(ctx.experiment(), "readout_correction", "experiment");
    s.workers = args.workers;
    int resamples = args.bootstrap ? *args.bootstrap
                                   : static_cast<int>(cfg_int(ctx.experiment(), "bootstrap_resamples", "experiment", 0));
    if (resamples == 1) {
        throw ConfigError("bootstrap resamples must be 0 (off) or >= 2");
    }
    const std::vector<std::string> labels = ctx.axis_labels();
    const int k = fringe_multiplier(s.kind, s.n_reps);

    Report r;
    r.header = {"axis", "outcome", "fi", "delta", "A", "phi0", "B", "residual_rms", "reduced_chi2", "flat"};
    if (resamples > 0) {
        r.header.push_back("bootstrap_stddev");
    }
    Json axes = Json::array();
    std::vector<double> fis, deltas;
    for (size_t ai = 0; ai < labels.size(); ai++) {
        AxisVec3 n = parse_axis(labels[ai]);
        AxisResult res;
        try {
            res = run_axis_experiment(s, n, ai);
        } catch (const NumericalError &e) {
            throw NumericalError("experiment, axis " + labels[ai] + ": " + e.what());
        } catch (const DomainError &e) {
            throw DomainError("experiment, axis " + labels[ai] + ": " + e.what());
        }
        fis.push_back(res.fi);
        deltas.push_back(res.delta);
        Json a;
        a["axis"] = labels[ai];
        a["vector"] = axis_to_json(n);
        a["fi"] = res.fi;
        a["delta"] = res.delta;
        a["clip_events"] = res.clip_events;
        Json fringes = Json::array();
        for (size_t fi = 0; fi < res.fringes.size(); fi++) {
            const FringeResult &f = res.fringes[fi];
            Json j;
            j["outcome"] = f.outcome;
            j["flat"] = f.flat;
            j["fit"] = fit_report_json(f.fit, f.fi);
            std::vector<std::string> line = {labels[ai], f.outcome, num(f.fi.fi), num(f.fi.delta),
                                             num(f.fit.amplitude), num(f.fit.phase), num(f.fit.offset),
                                             num(f.fit.residual_rms), num(f.fit.reduced_chi2()), f.flat ? "1" : "0"};
            if (resamples > 0) {
                BootstrapResult b;
                try {
                    b = bootstrap_fi(f.data, k, resamples, point_seed(s.seed, ai, (1ull << 32) + fi));
                } catch (const NumericalError &e) {
                    throw NumericalError("experiment, axis " + labels[ai] + ", bootstrap: " + e.what());
                }
                j["bootstrap"] = {{"mean", b.mean}, {"stddev", b.stddev}, {"resamples", b.resamples},
                                  {"failures", b.failures}};
                line.push_back(num(b.stddev));
            }
            Json data = Json::array();
            for (const FringePoint &p : f.data) {
                data.push_back(Json::array({p.alpha, p.frequency, p.shots}));
            }
            j["data"] = data;
            fringes.push_back(j);
            r.rows.push_back(line);
        }
        a["fringes"] = fringes;
        axes.push_back(a);
    }

    double mean = 0, var = 0;
    for (size_t i = 0; i < fis.size(); i++) {
        mean += fis[i];
        var += deltas[i] * deltas[i];
    }
    mean /= fis.size();
    double delta = fis.size() == 3 ? combine_axis_uncertainty(deltas[0], deltas[1], deltas[2])
                                   : std::sqrt(var) / fis.size();

    r.json["protocol"] = std::string(protocol_name(s.kind));
    r.json["n_reps"] = s.n_reps;
    r.json["shots_per_point"] = s.shots_per_point;
    r.json["seed"] = s.seed;
    r.json["readout_correction"] = s.readout_correction;
    r.json["alpha_grid"] = {{"lo_rad", s.alphas.front()}, {"hi_rad", s.alphas.back()}, {"points", s.alphas.size()}};
    r.json["noise"] = noise_to_json(s.noise);
    r.json["axes"] = axes;
    r.json["mean_fi"] = mean;
    r.json["delta"] = delta;
    r.rows.push_back({"mean", "", num(mean), num(delta), "", "", "", "", "", ""});
    if (resamples > 0) {
        r.rows.back().push_back("");
    }
    return r;
}

Report cmd_table(const Context &ctx, int max_n) {
    if (max_n < 1) {
        throw ConfigError("--max-n must be >= 1");
    }
    double alpha = ctx.opts().alpha.value_or(0.3);
    AxisVec3 n = ctx.opts().axes.empty() ? AxisVec3::z_hat() : parse_axis(ctx.opts().axes.front());
    Report r;
    r.header = {"protocol", "quantity", "n_reps", "value", "v_st", "fi_per_two_vst"};
    Json rows = Json::array();
    auto add = [&](const std::string &name, const std::string &quantity, int reps, double value, int v_st) {
        double per = value * 2.0 / v_st;
        rows.push_back({{"protocol", name}, {"quantity", quantity}, {"n_reps", reps}, {"value", value},
                        {"v_st", v_st}, {"fi_per_two_vst", per}});
        r.rows.push_back({name, quantity, std::to_string(reps), num(value), std::to_string(v_st), num(per)});
    };
    for (ProtocolKind kind : {ProtocolKind::kPositronium, ProtocolKind::kSingleQubitThreeAxis, ProtocolKind::kAgnostic}) {
        ProtocolResult pr = run_ideal({kind, n, alpha, 1});
        add(std::string(protocol_name(kind)), "fi", 1, pr.fi, pr.v_st);
    }
    add("separable_antimatter_axis_average", "fi", 1, separable_axis_average_fi(alpha), 2);
    add("separable_antimatter_unknown_axis", "effective_qfi", 1, sphere_average_effective_qfi(), 2);
    for (int reps = 1; reps <= max_n; reps++) {
        SequentialQfi q = sequential_positronium_qfi(reps, alpha, n);
        add(std::string(protocol_name(ProtocolKind::kPositroniumSequential)), "qfi", reps, q.qfi, q.v_st);
    }
    r.json["alpha"] = alpha;
    r.json["axis"] = axis_to_json(n);
    r.json["rows"] = rows;
    return r;
}

std::string timestamp() {
    std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

void emit(const GlobalOptions &opts, const std::string &command, const Report &r, std::ostream &out) {
    std::ostringstream text;
    if (opts.format == "csv") {
        auto line = [&](const std::vector<std::string> &cells) {
            for (size_t i = 0; i < cells.size(); i++) {
                text << (i ? "," : "") << csv_field(cells[i]);
            }
            text << '\n';
        };
        line(r.header);
        for (const auto &row : r.rows) {
            line(row);
        }
    } else {
        Json doc;
        doc["command"] = command;
        doc["config_version"] = 1;
        if (!opts.reproducible) {
            doc["generated_at"] = timestamp();
        }
        doc.update(r.json);
        text << doc.dump(2) << '\n';
    }
    if (opts.output.empty()) {
        out << text.str();
        return;
    }
    std::ofstream file(opts.output, std::ios::binary);
    if (!file || !(file << text.str())) {
        throw ConfigError(opts.output + ": cannot write output");
    }
}

}  // namespace

int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Quantum-metrology simulator for qubit and antiqubit field sensing", "posimet"};
    app.require_subcommand(1, 1);

    GlobalOptions g;
    g.config_path = default_config_path();
    app.add_option("--config", g.config_path, "JSON config file")->capture_default_str();
    app.add_option("--device", g.device_path, "JSON device file, replaces config.device");
    app.add_option("--noise", g.noise_path, "JSON noise file, replaces config.noise");
    app.add_option("--seed", g.seed, "Master seed");
    app.add_option("--shots", g.shots, "Shots per alpha point");
    app.add_option("--axis", g.axes, "Field axis: x, y, z or theta,phi (repeatable)")->allow_extra_args(false);
    app.add_option("--protocol", g.protocol, "positronium, positronium_sequential, agnostic, separable_antimatter, "
                                             "single_qubit_three_axis");
    app.add_option("--alpha", g.alpha, "Phase alpha in radians");
    app.add_option("--n-reps", g.n_reps, "Sequential field applications");
    app.add_option("--output", g.output, "Write the report here instead of stdout");
    app.add_option("--format", g.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    app.add_flag("--reproducible", g.reproducible, "Omit the timestamp so reruns are byte-identical");
    app.add_flag("--noiseless", g.noiseless, "Ignore the configured noise model");

    QfiArgs qa;
    CLI::App *qfi = app.add_subcommand("qfi", "QFI/FI values, concurrence-bound checks, effective separable QFI");
    qfi->fallthrough();
    qfi->add_flag("--effective-separable", qa.effective_separable, "Sphere-averaged effective QFI with unknown axis");
    qfi->add_flag("--numeric", qa.numeric, "Also run the numeric QFIM path");
    qfi->add_option("--state", qa.state, "Probe state to check")->check(CLI::IsMember({"singlet", "random"}));
    qfi->add_flag("--check-bound", qa.check_bound, "Fail with exit 3 if max QFI exceeds 2(1 + C)");

    SweepArgs sa;
    CLI::App *sweep = app.add_subcommand("sweep", "Outcome probability (and shot frequency) versus alpha");
    sweep->fallthrough();
    sweep->add_option("--alpha-lo", sa.lo, "Grid start (rad)");
    sweep->add_option("--alpha-hi", sa.hi, "Grid end (rad)");
    sweep->add_option("--points", sa.points, "Grid points");

    MagicArgs ma;
    CLI::App *magic = app.add_subcommand("magic-freq", "Drive frequency with opposite qubit/antiqubit Stark shifts");
    magic->fallthrough();
    magic->add_option("--ratio", ma.ratio, "Antiqubit/qubit drive amplitude ratio");
    magic->add_option("--lo", ma.lo, "Window start (GHz)");
    magic->add_option("--hi", ma.hi, "Window end (GHz)");

    ExperimentArgs ea;
    CLI::App *experiment = app.add_subcommand("experiment", "Simulated shots, fringe fits and FI per axis");
    experiment->fallthrough();
    experiment->add_option("--alpha-lo", ea.lo, "Grid start (rad)");
    experiment->add_option("--alpha-hi", ea.hi, "Grid end (rad)");
    experiment->add_option("--points", ea.points, "Grid points");
    experiment->add_flag("--no-readout-correction", ea.no_correction, "Fit raw frequencies");
    experiment->add_option("--bootstrap", ea.bootstrap, "Parametric bootstrap resamples (0 = off)");
    experiment->add_option("--workers", ea.workers, "Shot-sampling threads (0 = all cores)");

    int max_n = 4;
    CLI::App *table = app.add_subcommand("protocols-table", "FI per two units of space-time volume for each strategy");
    table->fallthrough();
    table->add_option("--max-n", max_n, "Largest sequential repetition count")->capture_default_str();

    std::vector<const char *> argv;
    for (const std::string &a : args) {
        argv.push_back(a.c_str());
    }
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        Json doc = load_config(g.config_path);
        apply_env_overrides(doc, environment_overrides());
        Context ctx(g, std::move(doc));
        Report r;
        std::string name;
        if (*qfi) {
            name = "qfi";
            r = cmd_qfi(ctx, qa);
        } else if (*sweep) {
            name = "sweep";
            r = cmd_sweep(ctx, sa);
        } else if (*magic) {
            name = "magic-freq";
            r = cmd_magic(ctx, ma);
        } else if (*experiment) {
            name = "experiment";
            r = cmd_experiment(ctx, ea);
        } else {
            name = "protocols-table";
            r = cmd_table(ctx, max_n);
        }
        emit(g, name, r, out);
        if (r.failed_check) {
            err << "error: concurrence bound violated\n";
            return kExitNumerical;
        }
        return kExitOk;
    } catch (const ConfigError &e) {
        err << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const DomainError &e) {
        err << "invalid input: " << e.what() << '\n';
        return kExitConfig;
    } catch (const NumericalError &e) {
        err << "numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace posimet::cli
