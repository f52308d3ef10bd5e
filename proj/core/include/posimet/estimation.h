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

#ifndef POSIMET_ESTIMATION_H
#define POSIMET_ESTIMATION_H

#include <cstdint>
#include <iosfwd>
#include <vector>

#include <Eigen/Dense>

namespace posimet {

struct FringePoint {
    double alpha;
    double frequency;
    uint64_t shots;
};

/// P(a) = A cos(k a + phi0) + B with k fixed by the protocol.
struct FringeFit {
    double amplitude = 0;
    double phase = 0;
    double offset = 0;
    int k = 1;
    Eigen::Matrix3d covariance = Eigen::Matrix3d::Zero();  // order (A, phi0, B)
    double chi2 = 0;
    int dof = 0;
    double residual_rms = 0;
    int iterations = 0;
    bool degenerate_phase = false;

    double model(double alpha) const;
    double reduced_chi2() const { return dof > 0 ? chi2 / dof : 0.0; }
};

struct FitOptions {
    int max_iterations = 100;
    double tolerance = 1e-12;
};

/// Iteratively reweighted least squares with binomial weights n / (P(1 - P)); covariance from
/// the Gauss-Newton normal matrix at the optimum.
FringeFit fit_fringe(const std::vector<FringePoint> &data, int k, const FitOptions &options = {});

struct FiExtraction {
    double fi;
    double alpha_star;
    double delta;
};

/// P'^2 / (P(1 - P)) of the fitted curve at its steepest point (the first one at alpha >= 0),
/// i.e. A^2 k^2 / (B(1 - B)). delta by first-order propagation from the fit covariance.
FiExtraction extract_fi(const FringeFit &fit);

struct BootstrapResult {
    double mean;
    double stddev;
    int resamples;
    int failures;
};

/// Parametric bootstrap: each point's count redrawn Binomial(shots, frequency); per-resample
/// streams derived from `seed`.
BootstrapResult bootstrap_fi(const std::vector<FringePoint> &data, int k, int resamples, uint64_t seed);

/// (1/3) sqrt(dx^2 + dy^2 + dz^2).
double combine_axis_uncertainty(double dx, double dy, double dz);

/// CSV with header alpha_rad,outcome_frequency,shot_count.
std::vector<FringePoint> read_fringe_csv(std::istream &in);

}  // namespace posimet

#endif
