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

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "cli.h"
#include "posimet/errors.h"

extern char **environ;

namespace posimet::cli {

std::string default_config_path() {
    if (const char *env = std::getenv("POSIMET_DEFAULT_CONFIG")) {
        return env;
    }
    // Installed copy first, then the one in the source tree.
    for (const char *candidate : {POSIMET_INSTALLED_CONFIG_PATH, POSIMET_SOURCE_CONFIG_PATH}) {
        if (std::ifstream(candidate)) {
            return candidate;
        }
    }
    return POSIMET_INSTALLED_CONFIG_PATH;
}

Json load_config(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError(path + ": cannot open config file");
    }
    std::stringstream buf;
    buf << in.rdbuf();
    Json doc;
    try {
        doc = Json::parse(buf.str());
    } catch (const nlohmann::json::parse_error &e) {
        // what() carries "at line L, column C".
        throw ConfigError(path + ": " + e.what());
    }
    if (!doc.is_object()) {
        throw ConfigError(path + ": top level must be an object");
    }
    auto v = doc.find("config_version");
    if (v == doc.end() || !v->is_number_integer() || v->get<int>() != 1) {
        throw ConfigError(path + ": config_version must be 1");
    }
    return doc;
}

void apply_env_overrides(Json &doc, const std::vector<std::pair<std::string, std::string>> &env) {
    const std::string prefix = kEnvPrefix;
    for (const auto &[name, value] : env) {
        if (name.rfind(prefix, 0) != 0) {
            continue;
        }
        std::string rest = name.substr(prefix.size());
        std::vector<std::string> keys;
        for (size_t pos = 0;;) {
            size_t cut = rest.find("__", pos);
            std::string seg = rest.substr(pos, cut == std::string::npos ? std::string::npos : cut - pos);
            for (char &c : seg) {
                c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
            }
            keys.push_back(seg);
            if (cut == std::string::npos) {
                break;
            }
            pos = cut + 2;
        }
        Json *node = &doc;
        std::string path;
        for (const std::string &key : keys) {
            bool index = !key.empty() && key.find_first_not_of("0123456789") == std::string::npos;
            if (node->is_array() && index) {
                size_t i = std::stoul(key);
                path += "[" + key + "]";
                if (i >= node->size()) {
                    throw ConfigError(name + ": index " + path + " out of range");
                }
                node = &(*node)[i];
                continue;
            }
            path += (path.empty() ? "" : ".") + key;
            if (!node->is_object() || !node->contains(key)) {
                throw ConfigError(name + ": no config key " + path);
            }
            node = &(*node)[key];
        }
        Json parsed = Json::parse(value, nullptr, false);
        *node = parsed.is_discarded() ? Json(value) : parsed;
    }
}

std::vector<std::pair<std::string, std::string>> environment_overrides() {
    std::vector<std::pair<std::string, std::string>> out;
    for (char **e = environ; e != nullptr && *e != nullptr; e++) {
        std::string entry = *e;
        size_t eq = entry.find('=');
        if (eq != std::string::npos && entry.rfind(kEnvPrefix, 0) == 0) {
            out.emplace_back(entry.substr(0, eq), entry.substr(eq + 1));
        }
    }
    return out;
}

AxisVec3 parse_axis(const std::string &text) {
    if (text == "x") {
        return AxisVec3::x_hat();
    }
    if (text == "y") {
        return AxisVec3::y_hat();
    }
    if (text == "z") {
        return AxisVec3::z_hat();
    }
    size_t comma = text.find(',');
    if (comma != std::string::npos) {
        try {
            size_t used_t = 0, used_p = 0;
            std::string ts = text.substr(0, comma), ps = text.substr(comma + 1);
            double theta = std::stod(ts, &used_t);
            double phi = std::stod(ps, &used_p);
            if (used_t == ts.size() && used_p == ps.size()) {
                return AxisVec3::from_angles(theta, phi);
            }
        } catch (const std::logic_error &) {
        }
    }
    throw ConfigError("axis '" + text + "': expected x, y, z or theta,phi in radians");
}

}  // namespace posimet::cli
