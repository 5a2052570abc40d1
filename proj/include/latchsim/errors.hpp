// Copyright 2026 The latchsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace latchsim {

enum class ErrorKind {
    parameter_domain,
    singularity,
    fit_rank,
    iteration_limit,
    integration_limit,
    truncation,
    search_domain,
    io,
    config,
};

inline const char* error_kind_name(ErrorKind k) {
    switch (k) {
    case ErrorKind::parameter_domain: return "parameter_domain";
    case ErrorKind::singularity: return "singularity";
    case ErrorKind::fit_rank: return "fit_rank";
    case ErrorKind::iteration_limit: return "iteration_limit";
    case ErrorKind::integration_limit: return "integration_limit";
    case ErrorKind::truncation: return "truncation";
    case ErrorKind::search_domain: return "search_domain";
    case ErrorKind::io: return "io";
    case ErrorKind::config: return "config";
    }
    return "unknown";
}

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& msg)
        : std::runtime_error(msg), kind_(kind) {}

    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& msg) {
    throw Error(kind, msg);
}

inline void require(bool cond, ErrorKind kind, const std::string& msg) {
    if (!cond) fail(kind, msg);
}

}  // namespace latchsim
