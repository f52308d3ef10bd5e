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

#ifndef POSIMET_PROTOCOLS_H
#define POSIMET_PROTOCOLS_H

#include <string>
#include <string_view>
#include <vector>

#include "posimet/metrology.h"

namespace posimet {

enum class ProtocolKind {
    kSingleQubitThreeAxis,
    kAgnostic,
    kSeparableAntimatter,
    kPositronium,
    kPositroniumSequential,
};

inline constexpr double kDegenerateOffset = 1e-4;

std::string_view protocol_name(ProtocolKind kind);
/// Accepts the names returned by protocol_name (with '-' or '_').
ProtocolKind parse_protocol(std::string_view name);

struct ProtocolSpec {
    ProtocolKind kind = ProtocolKind::kPositronium;
    AxisVec3 axis = AxisVec3::z_hat();
    double alpha = 0.0;
    int n_reps = 1;

    void validate() const;
};

struct ProtocolResult {
    std::vector<std::string> outcome_labels;
    std::vector<double> probabilities;
    double fi = 0;
    int v_st = 0;
    double fi_per_two_vst = 0;
    /// True when alpha sat on P in {0, 1}; FI was then taken at alpha + kDegenerateOffset.
    bool alpha_offset = false;
};

/// (U_a (x) U_a^dag)|Psi->, measured with {|Psi-><Psi-|, 1 - |Psi-><Psi-|}.
std::vector<double> positronium_probs(double alpha, const AxisVec3 &n);
OutcomeDistribution positronium_distribution(const AxisVec3 &n);

/// (U_a (x) 1)|Psi->, same POVM.
std::vector<double> agnostic_probs(double alpha, const AxisVec3 &n);
OutcomeDistribution agnostic_distribution(const AxisVec3 &n);

/// (U_a (x) U_a^dag)^n |Psi->, same POVM.
std::vector<double> positronium_sequential_probs(double alpha, const AxisVec3 &n, int n_reps);

struct SeparableProbs {
    double p_xplus;  // qubit, probe |x+>, rotated by U_a
    double p_zplus;  // antiqubit, probe |z+>, rotated by U_a^dag
};

SeparableProbs separable_probs(double alpha, const AxisVec3 &n);
/// FI of both measurements together (they are independent), known axis.
double separable_fi(double alpha, const AxisVec3 &n);
/// separable_fi averaged over n = x, y, z.
double separable_axis_average_fi(double alpha);

/// Per-trial FI averaged over probes |x+>, |y+>, |z+>, each measured along its instantaneous Bloch velocity.
double single_qubit_three_axis_fi(double alpha, const AxisVec3 &n);

struct SequentialQfi {
    double qfi;
    int v_st;
};

/// QFI of (U_a (x) U_a^dag)^n |Psi-> and its space-time volume 2n.
SequentialQfi sequential_positronium_qfi(int n_reps, double alpha = 0.3, const AxisVec3 &n = AxisVec3::z_hat());

ProtocolResult run_ideal(const ProtocolSpec &spec);

}  // namespace posimet

#endif
