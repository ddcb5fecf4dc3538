/* Copyright 2026 The groundkit authors.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/
#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace groundkit {

// Domain-level problem with the data being processed (CLI exit code 1).
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Unreadable or unwritable files (CLI exit code 2).
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed configuration: unknown keys, out-of-range values (CLI exit code 2).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// FNV-1a, 64-bit. Stable across platforms and runs; used for cache keys and
// config fingerprints.
std::uint64_t fnv1a64(std::string_view data);
std::string fnv1a64_hex(std::string_view data);

// Rounds half away from zero (llround semantics).
long long round_half_away(double v);

// Fixed two decimals, ties rounded half away from zero: 25.5 -> "25.50".
std::string format_fixed2(double v);

// Shortest representation that round-trips: 128.0 -> "128".
std::string format_compact(double v);

std::string_view trim(std::string_view s);
std::vector<std::string> split(std::string_view s, char sep);
std::string to_lower(std::string_view s);

// One CSV record (no embedded newlines). Double quotes per RFC 4180.
std::vector<std::string> parse_csv_line(std::string_view line);
std::string csv_quote(std::string_view field);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, std::string_view content);

std::string now_iso8601();

// Runs fn(i) for i in [0, count) across `workers` threads. The first worker
// exception is rethrown on the calling thread after all workers join.
void parallel_for(std::size_t count, unsigned workers,
                  const std::function<void(std::size_t)>& fn);

}  // namespace groundkit
