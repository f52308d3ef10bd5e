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

#ifndef POSIMET_EXPERIMENT_H
#define POSIMET_EXPERIMENT_H

#include <string>
#include <vector>

#include "posimet/estimation.h"
#include "posimet/noise.h"

namespace posimet {

// Shots -> (optional) readout correction -> fringe fit -> FI, per field axis.

struct ExperimentSettings {
    ProtocolKind kind = ProtocolKind::kPositronium;
    int n_reps = 1;
    NoiseModel noise;
    std::vector<double> alphas;
    uint64_t shots_per_point = 4000;
    uint64_t seed = 0;
    bool readout_correction = true;
    unsigned workers = 0;  // 0 = hardware concurrency

    void validate() const;
};

struct FringeResult {
    std::string outcome;
    std::vector<FringePoint> data;
    FringeFit fit;
    FiExtraction fi;
    /// Fitted amplitude below its standard error: the fringe is flat, FI taken as 0.
    bool flat = false;
};

struct AxisResult {
    AxisVec3 axis = AxisVec3::z_hat();
    std::vector<FringeResult> fringes;  // one for Bell-type readout, two for the separable pair
    double fi = 0;                      // sum over fringes
    double delta = 0;
    int clip_events = 0;
};

struct ExperimentResult {
    std::vector<AxisResult> axes;
    double mean_fi = 0;
    double delta = 0;  // (1/N) sqrt(sum delta_i^2)
};

/// Fringe multiplier of the protocol's outcome: 2 n for positronium, 1 otherwise.
int fringe_multiplier(ProtocolKind kind, int n_reps);

/// Stream seed for (master seed, axis index, point index).
uint64_t point_seed(uint64_t seed, uint64_t axis_index, uint64_t point_index);

AxisResult run_axis_experiment(const ExperimentSettings &settings, const AxisVec3 &axis, uint64_t axis_index = 0);

ExperimentResult run_experiment(const ExperimentSettings &settings, const std::vector<AxisVec3> &axes);

/// Evenly spaced grid over [lo, hi] with `points` entries.
std::vector<double> linear_grid(double lo, double hi, int points);

}  // namespace posimet

#endif
