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

#ifndef POSIMET_INTERNAL_SEARCH_H
#define POSIMET_INTERNAL_SEARCH_H

#include <cmath>

namespace posimet::internal {

struct BisectionResult {
    double root;
    int iterations;
};

/// Bisection on [lo, hi] with f(lo), f(hi) of opposite sign; stops when the bracket is below xtol.
template <typename F>
BisectionResult bisect(F &&f, double lo, double hi, double flo, double xtol) {
    int it = 0;
    while (hi - lo > xtol && it < 200) {
        double mid = 0.5 * (lo + hi);
        double fm = f(mid);
        if (fm == 0.0) {
            return {mid, it + 1};
        }
        if ((fm < 0) == (flo < 0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
        it++;
    }
    return {0.5 * (lo + hi), it};
}

}  // namespace posimet::internal

#endif
