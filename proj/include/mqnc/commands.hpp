// Copyright 2026 The MQNC Toolkit Authors
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

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mqnc/error.hpp"
#include "mqnc/io.hpp"
#include "mqnc/mqnc.hpp"
#include "mqnc/noise.hpp"

namespace mqnc {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitVerification = 3;

/// Thrown when a pipeline ran but its result failed verification (exit code 3).
class VerificationError : public Error {
 public:
  explicit VerificationError(const std::string& message) : Error(message) {}
};

/// Flags shared by every subcommand.
struct CommonOptions {
  std::string topology = "ibm-falcon-27";
  NoiseModel noise;
  /// Shots per measurement setting; 0 uses exact probabilities.
  std::size_t shots = 4000;
  /// Required whenever shots > 0.
  std::optional<std::uint64_t> seed;
  Policy policy = Policy::Postselect;
  /// "json" or "csv".
  std::string format = "json";
};

/// A finished run: the JSON record, its CSV view (empty when there is none) and a one-line summary.
struct CommandOutput {
  Json json;
  std::string csv;
  std::string summary;
  /// Text for the requested format.
  std::string render(const std::string& format) const;
};

struct ResourceOptions {
  bool mitigate = false;
};
/// Builds the butterfly resource through a device plan, estimates all stabilizer products from the
/// grouped local settings and reports fidelity and the entanglement witness.
CommandOutput cmd_resource(const CommonOptions& common, const ResourceOptions& options);

struct MqncOptions {
  bool mitigate = false;
  /// Restricts the run to one pair ("cross-0", "cross-1", "straight-0", "straight-1").
  std::optional<std::string> pair;
  std::size_t cap_points = 24;
  std::size_t grid_points = 200;
};
/// For every pair: readout calibration, pair state tomography and process tomography of
/// teleportation over the pair. Emits one report per pair; the CSV view is the Bloch grid.
CommandOutput cmd_mqnc(const CommonOptions& common, const MqncOptions& options);

struct SwitchOptions {
  std::size_t k = 0;
  /// Destination of each source; empty means the identity.
  std::vector<std::size_t> permutation;
  /// Route and verify every permutation of k ports.
  bool verify_all = false;
  /// Draw measurement outcomes from the seed instead of reporting 0 everywhere.
  bool random_outcomes = false;
};
/// Builds the k-port switch, routes and executes the permutation and verifies the matching. The
/// CSV view lists the schedule.
CommandOutput cmd_switch(const CommonOptions& common, const SwitchOptions& options);

struct CompileOptions {
  /// "butterfly", "triangle" or a graph JSON file.
  std::string target = "butterfly";
  /// Logical-to-physical map; defaults to the falcon placement for the butterfly on ibm-falcon-27.
  std::vector<std::size_t> map;
  /// Plan file to verify instead of compiling.
  std::optional<std::string> plan_file;
  /// Embed the k-port switch into a heavy-hex patch instead of compiling a target graph.
  std::optional<std::size_t> switch_k;
  std::size_t budget = 100000;
};
/// Compiles (or verifies) a rewiring plan and compares it with the SWAP-routing baseline. The CSV
/// view lists the plan steps.
CommandOutput cmd_compile(const CommonOptions& common, const CompileOptions& options);

struct CapOptions {
  std::optional<std::string> choi_file;
  /// Channel preset (see channel_preset) used when no file is given.
  std::optional<std::string> channel;
  /// Bloch-grid sample file {"bloch_grid": [{"theta", "phi", "F"}, ...]}.
  std::optional<std::string> samples_file;
  /// File {"bound": [[theta0, value], ...]} with a cap-dependent classical bound.
  std::optional<std::string> bound_file;
  std::size_t points = 24;
  std::size_t resolution = kDefaultCapResolution;
};
/// Cap-average fidelity curve around the best input direction with the classical reference line.
CommandOutput cmd_cap(const CommonOptions& common, const CapOptions& options);

/// "1,0,2" -> {1, 0, 2}.
std::vector<std::size_t> parse_index_list(const std::string& text);

}  // namespace mqnc
