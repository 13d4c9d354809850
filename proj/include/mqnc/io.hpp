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
#include <string>

#include "json.hpp"

#include "mqnc/compiler.hpp"
#include "mqnc/graph_state.hpp"
#include "mqnc/sampling.hpp"
#include "mqnc/switch.hpp"
#include "mqnc/tomography.hpp"
#include "mqnc/topology.hpp"

namespace mqnc {

/// Keys keep insertion order so that serialized output is stable.
using Json = nlohmann::ordered_json;

/// Reads and writes report errors as Error; parse failures name the offending field.
Json parse_json(const std::string& text, const std::string& what);
Json read_json_file(const std::string& path);
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

/// {"n", "edges": sorted [[i, j], ...] with i < j, "frame": ["I"|"X"|"Z"|"XZ", ...]} plus "removed"
/// listing measured-out qubits when there are any.
Json graph_to_json(const GraphState& g);
GraphState graph_from_json(const Json& j);

/// {"k", "permutation", "settings", "rounds": [[{"qubits", "basis"}, ...], ...]}.
Json schedule_to_json(const Schedule& s);
Schedule schedule_from_json(const Json& j);
/// Network graph in the graph format plus "sources", "destinations" and per-block "switches".
Json switch_network_to_json(const SwitchNetwork& net);

/// {"name", "qubits": [labels], "edges": [[label, label], ...]}. Numeric labels are written as numbers.
Json topology_to_json(const Topology& t);
Topology topology_from_json(const Json& j);
/// A built-in name (see Topology::builtin) or a path to a topology file.
Topology load_topology(const std::string& ref);

/// {"steps": [{"op", "qubits"[, "outcome"]}, ...], "logical_to_physical": [...]}.
Json plan_to_json(const RewirePlan& plan);
RewirePlan plan_from_json(const Json& j);

struct CountsFile {
  std::string basis;
  Counts counts;
  std::uint64_t seed = 0;
};
/// {"basis", "counts": {"0101": n, ...}, "seed"}.
Json counts_file_to_json(const CountsFile& c);
CountsFile counts_file_from_json(const Json& j);

/// {"choi": 4x4 array of [re, im]}.
Json choi_to_json(const Choi& c);
Choi choi_from_json(const Json& j);

/// Deterministic text form: two-space indentation and a trailing newline.
std::string dump(const Json& j);

}  // namespace mqnc
