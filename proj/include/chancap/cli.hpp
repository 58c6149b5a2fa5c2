// Copyright 2026 The chancap authors
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

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "chancap/verify.hpp"

namespace chancap {

// Channel description resolved from a spec string: either a named built-in
// with its parameters or a custom Kraus list.
struct ChannelDescription {
  std::string name;  // "erasure", "depolarizing", "dephasing", "identity", "custom"
  std::map<std::string, double> params;
  KrausChannel channel;
};

// Accepts three spellings:
//   - built-in text:  "erasure:d=2,eps=0.25" (d defaults to 2 where omitted)
//   - inline JSON:    '{"name": "erasure", "d": 2, "eps": 0.25}' or a raw
//                     {"din", "dout", "kraus"} Kraus listing
//   - a path to a file holding either JSON form
ChannelDescription describe_channel(const std::string& spec);
KrausChannel parse_channel_spec(const std::string& spec);

// Serializes a channel as the raw JSON Kraus listing; feeding the result back
// through parse_channel_spec reproduces the channel bit-for-bit.
std::string channel_to_json(const KrausChannel& ch);

// "start:stop:step", inclusive of stop (1e-9 slop), step > 0.
std::vector<double> parse_grid(const std::string& text);

enum class Command { kCapcurve, kScan, kVerify, kInfo, kEveBound };
enum class OutputFormat { kCsv, kJson };

struct RunConfig {
  Command command = Command::kInfo;
  std::string channel_spec;
  std::string grid = "0:2:0.25";  // capcurve
  long long n = 10000;            // scan samples / verify instances
  long long budget = 5000;        // optimizer budget
  std::uint64_t seed = 0;
  bool seed_set = false;
  double bin_width = 0.1;  // scan sidecar
  std::string out_path;    // empty -> stdout (scan requires a path)
  OutputFormat format = OutputFormat::kCsv;
  std::vector<std::string> checks;         // verify; empty -> all
  double constraint_y = 0.0;               // eve-bound MI equality level
  double constraint_tol = 0.02;            // eve-bound band half-width
  std::string rho_w = "maximally_mixed";   // eve-bound W marginal target
  std::string encoding = "identity";       // eve-bound encoding scheme
};

// Executes one command; writes outputs atomically (temp file + rename) with
// 12-significant-digit numbers and LF line endings. Returns the process exit
// code: 0 on success, 2 on usage/validation errors, 3 when an optimization
// reports infeasibility.
int run(const RunConfig& config);

// For the scan command the records land in out_path and the bin sidecar in
// this derived path (suffix "_bins" before the extension).
std::string sidecar_path(const std::string& out_path);

}  // namespace chancap
