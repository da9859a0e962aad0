// Copyright 2026 The lcupea Authors
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

// Locale-independent helpers shared by the .ham and .cfg readers and the
// trace writers.

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace lcupea {

std::vector<std::string_view> split_lines(std::string_view text);
std::vector<std::string_view> split_whitespace(std::string_view text);
std::string_view trim(std::string_view s);
std::string_view strip_comment(std::string_view line, char marker = '#');

std::optional<double> parse_double(std::string_view s);
std::optional<long long> parse_int(std::string_view s);

/// Shortest representation that round-trips ("-0.8126", not
/// "-0.81259999999999999").
std::string format_shortest(double v);
/// Fixed 17 significant digits, '.' decimal point.
std::string format_g17(double v);
/// `digits` significant digits, general notation, '.' decimal point.
std::string format_general(double v, int digits);

std::string read_text_file(const std::filesystem::path& path);

}  // namespace lcupea
