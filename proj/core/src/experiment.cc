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

#include "posimet/experiment.h"

#include <array>
#include <cmath>
#include <random>

#include "posimet/errors.h"

namespace posimet {

void ExperimentSettings::validate() const {
    if (kind == ProtocolKind::kSingleQubitThreeAxis) {
        throw DomainError("the single-qubit three-axis strategy has no two-transmon experiment");
    }
    if (n_reps < 1) {
        throw DomainError("n_reps must be >= 1");
    }
    if (shots_per_point < 1) {
        throw DomainError("shots per point must be >= 1");
    }
    if (alphas.size() < 6) {
        throw DomainError("the alpha grid needs at least 6 points");
    }
    for (size_t i = 0; i < alphas.size(); i++) {
        if (!std::isfinite(alphas[i]) || alphas[i] < 0) {
            throw DomainError("alpha grid values must be finite and >= 0");
        }
        if (i > 0 && !(alphas[i] > alphas[i - 1])) {
            throw DomainError("alpha grid must be strictly increasing");
        }
    }
    noise.validate();
}

int fringe_multiplier(ProtocolKind kind, int n_reps) {
    switch (kind) {
        case ProtocolKind::kPositronium:
            return 2;
        case ProtocolKind::kPositroniumSequential:
            return 2 * n_reps;
        default:
            return 1;
    }
}

uint64_t point_seed(uint64_t seed, uint64_t axis_index, uint64_t point_index) {
    std::seed_seq seq{static_cast<uint32_t>(seed), static_cast<uint32_t>(seed >> 32),
                      static_cast<uint32_t>(axis_index), static_cast<uint32_t>(point_index)};
    std::array<uint32_t, 2> out;
    seq.generate(out.begin(), out.end());
    return (static_cast<uint64_t>(out[0]) << 32) | out[1];
}

AxisResult run_axis_experiment(const ExperimentSettings &settings, const AxisVec3 &axis, uint64_t axis_index) {
    settings.validate();
    const bool separable = settings.kind == ProtocolKind::kSeparableAntimatter;
    const int k = fringe_multiplier(settings.kind, settings.n_reps);
    const NoiseModel &noise = settings.noise;

    AxisResult out;
    out.axis = axis;
    out.fringes.resize(separable ? 2 : 1);
    if (separable) {
        out.fringes[0].outcome = "qubit_x_plus";
        out.fringes[1].outcome = "antiqubit_z_plus";
    } else {
        out.fringes[0].outcome = "psi_minus";
    }

    for (size_t i = 0; i < settings.alphas.size(); i++) {
        ProtocolSpec spec{settings.kind, axis, settings.alphas[i], settings.n_reps};
        ShotRecord rec = simulate_shots(spec, noise, settings.shots_per_point, point_seed(settings.seed, axis_index, i),
                                        settings.workers);
        CorrectedProbabilities p;
        if (settings.readout_correction) {
            p = readout_correct(rec, noise.qubit_confusion, noise.antiqubit_confusion);
            out.clip_events += p.clip_events;
        } else {
            p.probs = rec.frequencies();
        }
        if (separable) {
            out.fringes[0].data.push_back({spec.alpha, p.qubit_zero(), settings.shots_per_point});
            out.fringes[1].data.push_back({spec.alpha, p.antiqubit_zero(), settings.shots_per_point});
        } else {
            out.fringes[0].data.push_back({spec.alpha, p.psi_minus(), settings.shots_per_point});
        }
    }

    double var = 0;
    for (FringeResult &f : out.fringes) {
        f.fit = fit_fringe(f.data, k);
        f.flat = f.fit.degenerate_phase;
        f.fi = f.flat ? FiExtraction{0.0, 0.0, 0.0} : extract_fi(f.fit);
        out.fi += f.fi.fi;
        var += f.fi.delta * f.fi.delta;
    }
    out.delta = std::sqrt(var);
    return out;
}

ExperimentResult run_experiment(const ExperimentSettings &settings, const std::vector<AxisVec3> &axes) {
    if (axes.empty()) {
        throw DomainError("at least one axis is required");
    }
    ExperimentResult r;
    double sum = 0, var = 0;
    for (size_t i = 0; i < axes.size(); i++) {
        r.axes.push_back(run_axis_experiment(settings, axes[i], i));
        sum += r.axes.back().fi;
        var += r.axes.back().delta * r.axes.back().delta;
    }
    r.mean_fi = sum / axes.size();
    r.delta = axes.size() == 3 ? combine_axis_uncertainty(r.axes[0].delta, r.axes[1].delta, r.axes[2].delta)
                               : std::sqrt(var) / axes.size();
    return r;
}

std::vector<double> linear_grid(double lo, double hi, int points) {
    if (points < 2 || !(hi > lo)) {
        throw DomainError("grid needs at least 2 points and hi > lo");
    }
    std::vector<double> g(points);
    for (int i = 0; i < points; i++) {
        g[i] = lo + (hi - lo) * i / (points - 1);
    }
    return g;
}

}  // namespace posimet
