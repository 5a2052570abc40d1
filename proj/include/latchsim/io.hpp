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

#include <filesystem>
#include <string>
#include <vector>

namespace latchsim {

// Shortest round-trippable decimal form, "." decimal point regardless of
// locale. All emitted artifacts go through this so that reruns are
// byte-identical.
std::string format_double(double v);

std::string format_int(long long v);

// Writes content to path atomically (temp file in the same directory, then
// rename). Creates parent directories as needed.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

std::string read_file(const std::filesystem::path& path);

// Minimal CSV support: header + rows of preformatted cells.
struct CsvTable {
    std::string header;
    std::vector<std::string> rows;

    std::string to_string() const;
};

// Splits one CSV line on commas (no quoting; none of the formats need it).
std::vector<std::string> split_csv_line(const std::string& line);

}  // namespace latchsim
