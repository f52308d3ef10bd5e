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

#include "posimet/estimation.h"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include "posimet/errors.h"

namespace posimet {

namespace {

double binomial_variance(double p, uint64_t n) {
    // Shrink toward 1/2 so that P in {0, 1} keeps a finite weight.
    double nd = static_cast<double>(n);
    double pc = (std::clamp(p, 0.0, 1.0) * nd + 0.5) / (nd + 1.0);
    return pc * (1 - pc) / nd;
}

}  // namespace

double FringeFit::model(double alpha) const {
    return amplitude * std::cos(k * alpha + phase) + offset;
}

FringeFit fit_fringe(const std::vector<FringePoint> &data, int k, const FitOptions &options) {
    if (k < 1) {
        throw DomainError("fringe multiplier k must be >= 1");
    }
    if (data.size() < 6) {
        throw DomainError("fringe fit needs at least 6 points");
    }
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (const FringePoint &p : data) {
        if (p.shots == 0) {
            throw DomainError("every fringe point needs shot_count > 0");
        }
        if (!std::isfinite(p.alpha) || !(p.frequency >= 0 && p.frequency <= 1)) {
            throw DomainError("fringe point with non-finite alpha or frequency outside [0, 1]");
        }
        lo = std::min(lo, p.alpha);
        hi = std::max(hi, p.alpha);
    }
    if (hi - lo < std::numbers::pi / k - 1e-12) {
        throw DomainError("fringe data must span at least half a period");
    }

    const Eigen::Index n = static_cast<Eigen::Index>(data.size());
    Eigen::MatrixXd x(n, 3);
    Eigen::VectorXd y(n);
    for (Eigen::Index i = 0; i < n; i++) {
        x(i, 0) = std::cos(k * data[i].alpha);
        x(i, 1) = std::sin(k * data[i].alpha);
        x(i, 2) = 1.0;
        y[i] = data[i].frequency;
    }

    Eigen::VectorXd w(n);
    for (Eigen::Index i = 0; i < n; i++) {
        w[i] = 1.0 / binomial_variance(data[i].frequency, data[i].shots);
    }
    Eigen::Vector3d beta = Eigen::Vector3d::Zero();
    Eigen::Matrix3d normal;
    int it = 0;
    bool converged = false;
    for (; it < options.max_iterations; it++) {
        normal = x.transpose() * w.asDiagonal() * x;
        Eigen::Vector3d rhs = x.transpose() * w.asDiagonal() * y;
        Eigen::LDLT<Eigen::Matrix3d> ldlt(normal);
        if (ldlt.info() != Eigen::Success || !ldlt.isPositive()) {
            throw NumericalError("fringe fit: singular normal matrix");
        }
        Eigen::Vector3d next = ldlt.solve(rhs);
        double change = (next - beta).cwiseAbs().maxCoeff();
        beta = next;
        Eigen::VectorXd pred = x * beta;
        for (Eigen::Index i = 0; i < n; i++) {
            w[i] = 1.0 / binomial_variance(pred[i], data[i].shots);
        }
        if (it > 0 && change <= options.tolerance * (1 + beta.cwiseAbs().maxCoeff())) {
            converged = true;
            it++;
            break;
        }
    }
    Eigen::VectorXd resid = y - x * beta;
    double chi2 = 0;
    for (Eigen::Index i = 0; i < n; i++) {
        chi2 += w[i] * resid[i] * resid[i];
    }
    if (!converged) {
        std::ostringstream os;
        os << "fringe fit did not converge after " << options.max_iterations << " iterations (chi2 " << chi2
           << ", rms residual " << std::sqrt(resid.squaredNorm() / n) << ")";
        throw NumericalError(os.str());
    }

    normal = x.transpose() * w.asDiagonal() * x;
    Eigen::Matrix3d cov_lin = normal.inverse();

    FringeFit fit;
    fit.k = k;
    double a = beta[0], b = beta[1];
    fit.amplitude = std::hypot(a, b);
    fit.offset = beta[2];
    fit.chi2 = chi2;
    fit.dof = static_cast<int>(n) - 3;
    fit.residual_rms = std::sqrt(resid.squaredNorm() / n);
    fit.iterations = it;

    double amp = fit.amplitude;
    Eigen::Matrix3d jac = Eigen::Matrix3d::Zero();
    jac(2, 2) = 1.0;
    if (amp > 0) {
        jac(0, 0) = a / amp;
        jac(0, 1) = b / amp;
        jac(1, 0) = b / (amp * amp);
        jac(1, 1) = -a / (amp * amp);
    }
    fit.covariance = jac * cov_lin * jac.transpose();
    double sigma_a = std::sqrt(std::max(0.0, fit.covariance(0, 0)));
    if (amp < 1e-9 || amp < sigma_a) {
        fit.degenerate_phase = true;
        fit.phase = amp < 1e-9 ? 0.0 : std::atan2(-b, a);
        // Phase is undetermined; keep only the (A, B) block.
        fit.covariance.row(1).setZero();
        fit.covariance.col(1).setZero();
        if (amp < 1e-9) {
            fit.covariance(0, 0) = cov_lin(0, 0) + cov_lin(1, 1);
            fit.covariance(0, 2) = fit.covariance(2, 0) = 0.0;
        }
    } else {
        fit.phase = std::atan2(-b, a);
    }
    return fit;
}

FiExtraction extract_fi(const FringeFit &fit) {
    if (fit.k < 1 || !std::isfinite(fit.amplitude) || !std::isfinite(fit.offset) || fit.amplitude < 0) {
        throw DomainError("invalid fringe fit");
    }
    // Steepest point of the fitted fringe: k a + phi0 = pi/2 (mod pi), smallest a >= 0.
    const double pi = std::numbers::pi;
    double u0 = std::fmod(pi / 2 - fit.phase, pi);
    if (u0 < 0) {
        u0 += pi;
    }
    double alpha_star = u0 / fit.k;

    // There P = B and |P'| = A k.
    double b = fit.offset;
    if (b < 1e-9 || b > 1 - 1e-9) {
        throw NumericalError("degenerate FI extraction: fitted P at the optimum is within 1e-9 of 0 or 1");
    }
    double a = fit.amplitude;
    double kk = static_cast<double>(fit.k) * fit.k;
    double den = b * (1 - b);
    double fi = a * a * kk / den;

    // The value does not depend on phi0; only (A, B) enter the propagation.
    Eigen::Vector3d g(2 * a * kk / den, 0.0, -a * a * kk * (1 - 2 * b) / (den * den));
    double var = g.dot(fit.covariance * g);
    return {fi, alpha_star, std::sqrt(std::max(0.0, var))};
}

BootstrapResult bootstrap_fi(const std::vector<FringePoint> &data, int k, int resamples, uint64_t seed) {
    if (resamples < 2) {
        throw DomainError("bootstrap needs at least 2 resamples");
    }
    std::vector<double> values;
    int failures = 0;
    for (int r = 0; r < resamples; r++) {
        std::seed_seq seq{static_cast<uint32_t>(seed), static_cast<uint32_t>(seed >> 32), static_cast<uint32_t>(r)};
        std::mt19937_64 g(seq);
        std::vector<FringePoint> drawn = data;
        for (FringePoint &p : drawn) {
            std::binomial_distribution<uint64_t> dist(p.shots, std::clamp(p.frequency, 0.0, 1.0));
            p.frequency = static_cast<double>(dist(g)) / static_cast<double>(p.shots);
        }
        try {
            values.push_back(extract_fi(fit_fringe(drawn, k)).fi);
        } catch (const NumericalError &) {
            failures++;
        }
    }
    if (values.size() < 2) {
        throw NumericalError("bootstrap: fewer than 2 successful resamples");
    }
    double mean = 0;
    for (double v : values) {
        mean += v;
    }
    mean /= values.size();
    double ss = 0;
    for (double v : values) {
        ss += (v - mean) * (v - mean);
    }
    return {mean, std::sqrt(ss / (values.size() - 1)), static_cast<int>(values.size()), failures};
}

double combine_axis_uncertainty(double dx, double dy, double dz) {
    if (!(dx >= 0 && dy >= 0 && dz >= 0)) {
        throw DomainError("axis uncertainties must be non-negative");
    }
    return std::sqrt(dx * dx + dy * dy + dz * dz) / 3.0;
}

std::vector<FringePoint> read_fringe_csv(std::istream &in) {
    std::vector<FringePoint> out;
    std::string line;
    int line_no = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        line_no++;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty() || line[0] == '#') {
            continue;
        }
        if (!header_seen) {
            header_seen = true;
            if (line.rfind("alpha_rad", 0) == 0) {
                continue;
            }
        }
        std::istringstream ls(line);
        std::string a, f, n;
        if (!std::getline(ls, a, ',') || !std::getline(ls, f, ',') || !std::getline(ls, n)) {
            throw DomainError("fringe CSV line " + std::to_string(line_no) + ": expected 3 columns");
        }
        try {
            size_t used = 0;
            long long shots = std::stoll(n, &used);
            if (shots <= 0) {
                throw DomainError("fringe CSV line " + std::to_string(line_no) + ": shot_count must be positive");
            }
            out.push_back({std::stod(a), std::stod(f), static_cast<uint64_t>(shots)});
        } catch (const std::logic_error &e) {
            if (dynamic_cast<const DomainError *>(&e)) {
                throw;
            }
            throw DomainError("fringe CSV line " + std::to_string(line_no) + ": cannot parse number");
        }
    }
    return out;
}

}  // namespace posimet
