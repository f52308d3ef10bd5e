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

#ifndef POSIMET_ERRORS_H
#define POSIMET_ERRORS_H

#include <stdexcept>
#include <string>

namespace posimet {

/// Invalid argument: out-of-range value, unnormalized state, non-unitary matrix, etc.
struct DomainError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A numerical procedure failed (no root in bracket, fit did not converge, ...).
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent configuration input.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace posimet

#endif
