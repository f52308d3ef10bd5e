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
#include <numbers>
#include <vector>

#include <benchmark/benchmark.h>

#include "posimet/estimation.h"
#include "posimet/experiment.h"
#include "posimet/hardware.h"
#include "posimet/metrology.h"
#include "posimet/noise.h"
#include "posimet/qfim.h"

namespace {

using namespace posimet;

NoiseModel stark_noise() {
    NoiseModel n;
    n.prep_fidelity = 0.97;
    n.qubit_confusion = symmetric_confusion(0.978);
    n.antiqubit_confusion = symmetric_confusion(0.95);
    n.stark.enabled = true;
    n.stark.qubit_detuning_ghz = -9.52e-3;
    n.stark.antiqubit_detuning_ghz = 96.98e-3;
    n.stark.field_rate_ghz = 2.13e-3;
    return n;
}

void BM_simulate_shots(benchmark::State &state) {
    ProtocolSpec spec{ProtocolKind::kPositronium, AxisVec3::normalized({0.3, 0.4, 0.8}), 0.9, 1};
    NoiseModel noise = stark_noise();
    const auto shots = static_cast<uint64_t>(state.range(0));
    const auto workers = static_cast<unsigned>(state.range(1));
    for (auto _ : state) {
        benchmark::DoNotOptimize(simulate_shots(spec, noise, shots, 7, workers));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(shots));
}
BENCHMARK(BM_simulate_shots)->Args({4000, 1})->Args({1 << 20, 1})->Args({1 << 20, 0});

void BM_stark_unitary(benchmark::State &state) {
    StarkDrive d;
    d.detuning_ghz = 96.98e-3;
    d.field_rate_ghz = 2.13e-3;
    for (auto _ : state) {
        benchmark::DoNotOptimize(stark_driven_unitary(std::numbers::pi, 0.2, -0.1, 0.97, d));
    }
}
BENCHMARK(BM_stark_unitary);

void BM_max_qfi_over_axes(benchmark::State &state) {
    TwoTlsState psi = TwoTlsState::renormalized(Vec4(cplx(0.3, 0.1), cplx(0.5, -0.2), cplx(-0.6, 0.1), cplx(0.2, 0.4)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(max_qfi_over_axes(psi, EvolutionSign::minus()));
    }
}
BENCHMARK(BM_max_qfi_over_axes);

void BM_sphere_average(benchmark::State &state) {
    const auto path = state.range(0) == 0 ? InverseAlphaPath::kClosedForm : InverseAlphaPath::kNumericQfim;
    for (auto _ : state) {
        benchmark::DoNotOptimize(sphere_average_inverse_alpha(path));
    }
}
BENCHMARK(BM_sphere_average)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_fit_fringe(benchmark::State &state) {
    std::vector<FringePoint> data;
    for (double a : linear_grid(0, std::numbers::pi, 24)) {
        data.push_back({a, 0.45 * std::cos(2 * a + 0.1) + 0.5, 4000});
    }
    for (auto _ : state) {
        benchmark::DoNotOptimize(extract_fi(fit_fringe(data, 2)));
    }
}
BENCHMARK(BM_fit_fringe);

void BM_magic_frequency(benchmark::State &state) {
    DeviceParams d;
    d.qubit = {"qubit", 4.16748, -146.916, 28, 35, 6.69};
    d.antiqubit = {"antiqubit", 4.27398, -144.658, 17, 22, 6.88};
    d.coupler = {"coupler", 5.24975, -152.384, 14, 16, 7.08};
    for (auto _ : state) {
        benchmark::DoNotOptimize(magic_frequency(d, 1.78, 4.17, 4.19));
    }
}
BENCHMARK(BM_magic_frequency);

}  // namespace

BENCHMARK_MAIN();
