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

#ifndef POSIMET_TOOLS_CLI_H
#define POSIMET_TOOLS_CLI_H

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "posimet/json_io.h"

namespace posimet::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumerical = 3;

inline constexpr const char *kEnvPrefix = "POSIMET_CFG_";

/// Path of the versioned default configuration shipped with the tool.
std::string default_config_path();

/// Reads and parses a JSON config; parse errors carry the line and column.
Json load_config(const std::string &path);

/// Applies POSIMET_CFG_<A>__<B>=value overrides (key segments lower-cased, "__" separates levels).
/// Values are parsed as JSON when possible, otherwise taken as strings.
void apply_env_overrides(Json &doc, const std::vector<std::pair<std::string, std::string>> &env);
std::vector<std::pair<std::string, std::string>> environment_overrides();

/// "x", "y", "z", or "theta,phi" in radians.
AxisVec3 parse_axis(const std::string &text);

/// Runs the tool; returns the process exit code. args[0] is the program name.
int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace posimet::cli

#endif
