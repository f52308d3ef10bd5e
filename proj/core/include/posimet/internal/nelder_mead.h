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

#ifndef POSIMET_INTERNAL_NELDER_MEAD_H
#define POSIMET_INTERNAL_NELDER_MEAD_H

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

namespace posimet::internal {

template <size_t N>
struct NelderMeadResult {
    std::array<double, N> x;
    double value;
    int iterations;
};

/// Standard Nelder-Mead (reflection 1, expansion 2, contraction 1/2, shrink 1/2), minimizing f.
/// Stops when the spread of simplex values falls below ftol.
template <size_t N, typename F>
NelderMeadResult<N> nelder_mead(F &&f, const std::array<double, N> &start, double scale, double ftol, int max_iter) {
    using Point = std::array<double, N>;
    std::array<Point, N + 1> pts;
    std::array<double, N + 1> vals;
    pts[0] = start;
    for (size_t i = 0; i < N; i++) {
        pts[i + 1] = start;
        pts[i + 1][i] += scale;
    }
    for (size_t i = 0; i <= N; i++) {
        vals[i] = f(pts[i]);
    }

    auto lerp = [](const Point &a, const Point &b, double t) {
        Point r;
        for (size_t i = 0; i < N; i++) {
            r[i] = a[i] + t * (b[i] - a[i]);
        }
        return r;
    };

    int iter = 0;
    for (; iter < max_iter; iter++) {
        std::array<size_t, N + 1> order;
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](size_t a, size_t b) { return vals[a] < vals[b]; });
        size_t best = order[0], worst = order[N], second = order[N - 1];
        if (std::abs(vals[worst] - vals[best]) <= ftol * (1 + std::abs(vals[best]))) {
            break;
        }

        Point centroid{};
        for (size_t i = 0; i <= N; i++) {
            if (i == worst) {
                continue;
            }
            for (size_t k = 0; k < N; k++) {
                centroid[k] += pts[i][k] / N;
            }
        }

        Point reflected = lerp(centroid, pts[worst], -1.0);
        double fr = f(reflected);
        if (fr < vals[best]) {
            Point expanded = lerp(centroid, pts[worst], -2.0);
            double fe = f(expanded);
            if (fe < fr) {
                pts[worst] = expanded;
                vals[worst] = fe;
            } else {
                pts[worst] = reflected;
                vals[worst] = fr;
            }
            continue;
        }
        if (fr < vals[second]) {
            pts[worst] = reflected;
            vals[worst] = fr;
            continue;
        }
        bool outside = fr < vals[worst];
        Point contracted = outside ? lerp(centroid, reflected, 0.5) : lerp(centroid, pts[worst], 0.5);
        double fc = f(contracted);
        if (fc < std::min(fr, vals[worst])) {
            pts[worst] = contracted;
            vals[worst] = fc;
            continue;
        }
        for (size_t i = 0; i <= N; i++) {
            if (i == best) {
                continue;
            }
            pts[i] = lerp(pts[best], pts[i], 0.5);
            vals[i] = f(pts[i]);
        }
    }

    size_t best = static_cast<size_t>(std::min_element(vals.begin(), vals.end()) - vals.begin());
    return {pts[best], vals[best], iter};
}

}  // namespace posimet::internal

#endif
