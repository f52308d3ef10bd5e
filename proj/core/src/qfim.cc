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

#include "posimet/qfim.h"

#include <array>
#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "posimet/errors.h"
#include "posimet/states.h"

namespace posimet {

namespace {

constexpr double kPinvCutoff = 1e-10;

struct Nodes {
    std::vector<double> x;
    std::vector<double> w;
};

template <int N>
Nodes legendre_nodes() {
    using Rule = boost::math::quadrature::gauss<double, N>;
    Nodes out;
    const auto &abs = Rule::abscissa();
    const auto &wts = Rule::weights();
    for (size_t i = 0; i < abs.size(); i++) {
        if (abs[i] == 0.0) {
            out.x.push_back(0.0);
            out.w.push_back(wts[i]);
            continue;
        }
        out.x.push_back(abs[i]);
        out.w.push_back(wts[i]);
        out.x.push_back(-abs[i]);
        out.w.push_back(wts[i]);
    }
    return out;
}

Nodes legendre_nodes(int n) {
    switch (n) {
        case 64:
            return legendre_nodes<64>();
        case 48:
            return legendre_nodes<48>();
        default:
            throw DomainError("supported Gauss-Legendre orders are 48 and 64");
    }
}

}  // namespace

Qfim3::Qfim3(const Eigen::Matrix3d &m) : m_(m) {
    if (!m.allFinite()) {
        throw DomainError("QFIM has non-finite entries");
    }
    if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-10) {
        throw DomainError("QFIM is not symmetric");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(0.5 * (m + m.transpose()));
    if (es.eigenvalues().minCoeff() < -1e-9) {
        throw DomainError("QFIM is not positive semidefinite (min eigenvalue " +
                          std::to_string(es.eigenvalues().minCoeff()) + ")");
    }
}

Eigen::MatrixXcd sld_pure(const Eigen::VectorXcd &psi, const Eigen::VectorXcd &dpsi) {
    if (psi.size() != dpsi.size()) {
        throw DomainError("state and derivative dimensions differ");
    }
    if (std::abs(psi.squaredNorm() - 1.0) > 1e-8) {
        throw DomainError("state is not normalized");
    }
    if (std::abs(2 * psi.dot(dpsi).real()) > 1e-8) {
        throw DomainError("derivative leaves the normalized manifold");
    }
    return 2 * (dpsi * psi.adjoint() + psi * dpsi.adjoint());
}

Qfim3 qfim(const ParamFamily &family, const Eigen::Vector3d &point, double step) {
    if (!(step > 0)) {
        throw DomainError("finite-difference step must be positive");
    }
    Eigen::VectorXcd psi = family(point);
    std::array<Eigen::MatrixXcd, 3> sld;
    for (int i = 0; i < 3; i++) {
        Eigen::Vector3d e = Eigen::Vector3d::Zero();
        e[i] = step;
        Eigen::VectorXcd plus = family(point + e);
        Eigen::VectorXcd minus = family(point - e);
        if (std::abs(plus.squaredNorm() - 1.0) > 1e-8 || std::abs(minus.squaredNorm() - 1.0) > 1e-8) {
            throw DomainError("derivative stencil leaves the normalized manifold");
        }
        sld[i] = sld_pure(psi, (plus - minus) / (2 * step));
    }
    Eigen::MatrixXcd rho = psi * psi.adjoint();
    Eigen::Matrix3d m;
    for (int i = 0; i < 3; i++) {
        for (int j = i; j < 3; j++) {
            Eigen::MatrixXcd anti = sld[i] * sld[j] + sld[j] * sld[i];
            m(i, j) = m(j, i) = 0.5 * (rho * anti).trace().real();
        }
    }
    return Qfim3(m);
}

double effective_inverse_alpha(const Qfim3 &m) {
    const Eigen::Matrix3d &a = m.matrix();
    Eigen::Matrix2d nn = a.block<2, 2>(1, 1);
    Eigen::Vector2d na = a.block<2, 1>(1, 0);
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(nn);
    Eigen::Matrix2d pinv = Eigen::Matrix2d::Zero();
    for (int k = 0; k < 2; k++) {
        double lam = es.eigenvalues()[k];
        if (lam > kPinvCutoff) {
            Eigen::Vector2d v = es.eigenvectors().col(k);
            pinv += v * v.transpose() / lam;
        }
    }
    double schur = a(0, 0) - na.dot(pinv * na);
    if (!(schur > 0)) {
        throw NumericalError("alpha is not identifiable: Schur complement " + std::to_string(schur));
    }
    return 1.0 / schur;
}

double closed_form_inverse_alpha(double theta, double phi) {
    double s = std::sin(theta);
    return (7.0 + std::cos(2 * theta) + 2.0 * std::cos(2 * phi) * s * s) / 8.0;
}

Eigen::VectorXcd separable_family(const Eigen::Vector3d &params) {
    AxisVec3 n = AxisVec3::from_angles(params[1], params[2]);
    Mat2 u = rotation_unitary(params[0], n);
    return TwoTlsState::product(u * ket_x_plus(), u.adjoint() * ket_z_plus()).amplitudes();
}

double weak_field_inverse_alpha(double theta, double phi, double a0, double step) {
    auto f = [&](double a) { return effective_inverse_alpha(qfim(separable_family, {a, theta, phi}, step)); };
    auto even = [&](double a) { return 0.5 * (f(a) + f(-a)); };
    return (4.0 * even(a0) - even(2 * a0)) / 3.0;
}

double sphere_average(const SphereFunction &f, const SphereRule &rule, const SphereFunction &weight) {
    if (rule.n_phi < 3 || !(rule.polar_cap >= 0) || rule.polar_cap >= std::numbers::pi / 2) {
        throw DomainError("invalid sphere quadrature rule");
    }
    Nodes gl = legendre_nodes(rule.n_cos_theta);
    // cos(theta) restricted to [-c, c], excluding the polar caps.
    double c = std::cos(rule.polar_cap);
    double sum = 0, norm = 0;
    for (size_t i = 0; i < gl.x.size(); i++) {
        double theta = std::acos(c * gl.x[i]);
        for (int j = 0; j < rule.n_phi; j++) {
            double phi = 2 * std::numbers::pi * j / rule.n_phi;
            double w = gl.w[i] * (weight ? weight(theta, phi) : 1.0);
            sum += w * f(theta, phi);
            norm += w;
        }
    }
    if (!(norm > 0)) {
        throw DomainError("sphere weight integrates to zero");
    }
    return sum / norm;
}

double sphere_average_inverse_alpha(InverseAlphaPath path) {
    SphereFunction f;
    if (path == InverseAlphaPath::kClosedForm) {
        f = closed_form_inverse_alpha;
    } else {
        f = [](double t, double p) { return weak_field_inverse_alpha(t, p); };
    }
    double fine = sphere_average(f, {64, 128, 1e-3});
    double coarse = sphere_average(f, {48, 96, 1e-3});
    if (!std::isfinite(fine) || std::abs(fine - coarse) > 1e-7) {
        throw NumericalError("sphere quadrature did not converge (64x128 vs 48x96 differ by " +
                             std::to_string(std::abs(fine - coarse)) + ")");
    }
    return fine;
}

double sphere_average_effective_qfi(InverseAlphaPath path) {
    return 1.0 / sphere_average_inverse_alpha(path);
}

}  // namespace posimet
