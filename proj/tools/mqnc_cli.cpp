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

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "mqnc/commands.hpp"
#include "mqnc/error.hpp"

using namespace mqnc;

namespace {

struct RawCommon {
  std::string topology = "ibm-falcon-27";
  std::string noise = "none";
  std::size_t shots = 4000;
  std::optional<std::uint64_t> seed;
  std::string policy = "postselect";
  std::string out;
  std::string format = "json";
};

void add_common(CLI::App* app, RawCommon& raw) {
  app->add_option("--topology", raw.topology, "Built-in topology name or topology JSON file");
  app->add_option("--noise", raw.noise, "\"p1,p2,ro\", \"none\" or \"cairo-like\"");
  app->add_option("--shots", raw.shots, "Shots per measurement setting (0 = exact probabilities)");
  app->add_option("--seed", raw.seed, "Master seed (required when sampling)");
  app->add_option("--policy", raw.policy, "postselect or feedforward");
  app->add_option("--out", raw.out, "Output file (default: standard output)");
  app->add_option("--format", raw.format, "json or csv");
}

CommonOptions resolve(const RawCommon& raw) {
  CommonOptions c;
  c.topology = raw.topology;
  c.noise = NoiseModel::parse(raw.noise);
  c.shots = raw.shots;
  c.seed = raw.seed;
  c.policy = parse_policy(raw.policy);
  if (raw.format != "json" && raw.format != "csv") throw Error("unknown format '" + raw.format + "'");
  c.format = raw.format;
  return c;
}

void emit(const CommandOutput& out, const RawCommon& raw) {
  std::string text = out.render(raw.format);
  if (raw.out.empty()) {
    std::cout << text;
  } else {
    write_text_file(raw.out, text);
    std::cerr << out.summary << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Measurement-based quantum network coding toolkit"};
  app.require_subcommand(1);
  RawCommon raw;

  CLI::App* resource = app.add_subcommand("resource", "Prepare the butterfly resource and certify entanglement");
  add_common(resource, raw);
  ResourceOptions resource_opts;
  resource->add_flag("--mitigate", resource_opts.mitigate, "Apply readout mitigation from calibration runs");

  CLI::App* mqnc = app.add_subcommand("mqnc", "Network coding, pair tomography and teleportation tomography");
  add_common(mqnc, raw);
  MqncOptions mqnc_opts;
  std::string pair;
  mqnc->add_flag("--mitigate", mqnc_opts.mitigate, "Apply readout mitigation from calibration runs");
  mqnc->add_option("--pair", pair, "Only one pair: cross-0, cross-1, straight-0 or straight-1");
  mqnc->add_option("--cap-points", mqnc_opts.cap_points, "Points on the cap-angle grid");
  mqnc->add_option("--grid-points", mqnc_opts.grid_points, "Points on the Bloch grid");

  CLI::App* sw = app.add_subcommand("switch", "Route a permutation through the k-port switch");
  add_common(sw, raw);
  SwitchOptions switch_opts;
  std::string perm;
  sw->add_option("--k", switch_opts.k, "Number of ports")->required();
  sw->add_option("--permutation", perm, "Destination of each source, e.g. 2,0,1");
  sw->add_flag("--verify-all", switch_opts.verify_all, "Route and verify every permutation");
  sw->add_flag("--random-outcomes", switch_opts.random_outcomes, "Draw measurement outcomes from the seed");

  CLI::App* compile = app.add_subcommand("compile", "Compile a rewiring plan for a device topology");
  add_common(compile, raw);
  CompileOptions compile_opts;
  std::string map, plan_file;
  std::size_t switch_k = 0;
  compile->add_option("--target", compile_opts.target, "butterfly, triangle or a graph JSON file");
  compile->add_option("--map", map, "Device qubit of each logical qubit, e.g. 3,5,9,8,14,11");
  compile->add_option("--plan", plan_file, "Verify this plan file instead of compiling");
  compile->add_option("--switch", switch_k, "Embed the k-port switch into a heavy-hex patch");
  compile->add_option("--budget", compile_opts.budget, "Search budget in expanded states");

  CLI::App* cap = app.add_subcommand("cap", "Cap-average teleportation fidelity curve");
  add_common(cap, raw);
  CapOptions cap_opts;
  std::string choi_file, channel, samples_file, bound_file;
  cap->add_option("--choi", choi_file, "Choi matrix JSON file");
  cap->add_option("--channel", channel, "Channel preset, e.g. damping or depolarizing:0.2");
  cap->add_option("--samples", samples_file, "Bloch-grid sample JSON file");
  cap->add_option("--bound-table", bound_file, "Cap-dependent classical bound table");
  cap->add_option("--points", cap_opts.points, "Points on the cap-angle grid");
  cap->add_option("--resolution", cap_opts.resolution, "Integration points per cap");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    CommonOptions common = resolve(raw);
    CommandOutput out;
    if (resource->parsed()) {
      out = cmd_resource(common, resource_opts);
    } else if (mqnc->parsed()) {
      if (!pair.empty()) mqnc_opts.pair = pair;
      out = cmd_mqnc(common, mqnc_opts);
    } else if (sw->parsed()) {
      switch_opts.permutation = parse_index_list(perm);
      out = cmd_switch(common, switch_opts);
    } else if (compile->parsed()) {
      compile_opts.map = parse_index_list(map);
      if (!plan_file.empty()) compile_opts.plan_file = plan_file;
      if (compile->count("--switch") > 0) compile_opts.switch_k = switch_k;
      out = cmd_compile(common, compile_opts);
    } else {
      if (!choi_file.empty()) cap_opts.choi_file = choi_file;
      if (!channel.empty()) cap_opts.channel = channel;
      if (!samples_file.empty()) cap_opts.samples_file = samples_file;
      if (!bound_file.empty()) cap_opts.bound_file = bound_file;
      out = cmd_cap(common, cap_opts);
    }
    emit(out, raw);
    return kExitOk;
  } catch (const VerificationError& e) {
    std::cerr << "verification failed: " << e.what() << "\n";
    return kExitVerification;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}
