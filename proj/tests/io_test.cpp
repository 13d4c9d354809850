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

#include "mqnc/io.hpp"

#include <cstdio>
#include <filesystem>
#include <random>

#include "gtest/gtest.h"

#include "mqnc/error.hpp"

using namespace mqnc;

namespace {

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("mqnc_io_test_" + name)).string();
}

}  // namespace

TEST(GraphJson, RoundTripsRandomGraphs) {
  std::mt19937_64 rng(31);
  std::bernoulli_distribution coin(0.4);
  for (int t = 0; t < 50; ++t) {
    std::size_t n = 1 + t % 9;
    GraphState g(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        if (coin(rng)) g.toggle_edge(i, j);
      }
      g.set_frame(i, static_cast<FrameLabel>(rng() % 4));
    }
    if (n > 2 && coin(rng)) g.measure_z(n - 1, 0);
    Json j = graph_to_json(g);
    GraphState back = graph_from_json(parse_json(dump(j), "test"));
    EXPECT_TRUE(back == g);
    EXPECT_EQ(dump(graph_to_json(back)), dump(j));
  }
}

TEST(GraphJson, EdgesAreSortedAndFramesNamed) {
  GraphState g(3);
  g.toggle_edge(2, 1);
  g.toggle_edge(1, 0);
  g.set_frame(2, FrameLabel::XZ);
  EXPECT_EQ(graph_to_json(g).dump(), R"({"n":3,"edges":[[0,1],[1,2]],"frame":["I","I","XZ"]})");
}

TEST(GraphJson, RejectsMalformedInput) {
  EXPECT_THROW(graph_from_json(parse_json(R"({"edges": []})", "t")), Error);
  EXPECT_THROW(graph_from_json(parse_json(R"({"n": 2, "edges": [[0, 2]]})", "t")), Error);
  EXPECT_THROW(graph_from_json(parse_json(R"({"n": 2, "edges": [[0, 0]]})", "t")), Error);
  EXPECT_THROW(graph_from_json(parse_json(R"({"n": 2, "edges": [[0, 1], [1, 0]]})", "t")), Error);
  EXPECT_THROW(graph_from_json(parse_json(R"({"n": 2, "edges": [], "frame": ["I"]})", "t")), Error);
  EXPECT_THROW(graph_from_json(parse_json(R"({"n": 2, "edges": [], "frame": ["I", "Q"]})", "t")), Error);
  EXPECT_THROW(parse_json("{", "t"), Error);
}

TEST(TopologyJson, RoundTripAndFileLoading) {
  Topology falcon = Topology::falcon27();
  Json j = topology_to_json(falcon);
  EXPECT_EQ(j["qubits"][0], 0);
  Topology back = topology_from_json(j);
  EXPECT_EQ(back.name(), falcon.name());
  EXPECT_EQ(back.edges(), falcon.edges());

  std::string path = temp_path("topology.json");
  write_text_file(path, R"({"name": "tri", "qubits": ["a", "b", "c"], "edges": [["a", "b"], ["b", "c"]]})");
  Topology t = load_topology(path);
  EXPECT_EQ(t.size(), 3u);
  EXPECT_TRUE(t.coupled(t.index_of("a"), t.index_of("b")));
  EXPECT_FALSE(t.coupled(t.index_of("a"), t.index_of("c")));
  write_text_file(path, R"({"name": "bad", "qubits": [0, 1], "edges": [[0, 5]]})");
  EXPECT_THROW(load_topology(path), Error);
  std::remove(path.c_str());
  EXPECT_THROW(load_topology(temp_path("missing.json")), Error);
  EXPECT_EQ(load_topology("path:4").size(), 4u);
}

TEST(PlanJson, RoundTrip) {
  RewirePlan plan = butterfly_plan(falcon_butterfly_placement());
  plan.steps.push_back({PlanOp::Y, {7}, 1});
  Json j = plan_to_json(plan);
  EXPECT_EQ(j["steps"][0]["op"], "CZ");
  RewirePlan back = plan_from_json(j);
  EXPECT_EQ(back.steps, plan.steps);
  EXPECT_EQ(back.logical_to_physical, plan.logical_to_physical);
  EXPECT_THROW(plan_from_json(parse_json(R"({"steps": [{"op": "CZ", "qubits": [1]}], "logical_to_physical": []})",
                                         "t")),
               Error);
  EXPECT_THROW(plan_from_json(parse_json(R"({"steps": [{"op": "SWAP", "qubits": [1, 2]}], "logical_to_physical": []})",
                                         "t")),
               Error);
}

TEST(ScheduleJson, RoundTrip) {
  SwitchNetwork net = build_switch(3);
  Schedule s = route(net, {2, 0, 1});
  Json j = schedule_to_json(s);
  EXPECT_EQ(j["rounds"][0][0]["basis"].get<std::string>().size() > 0, true);
  Schedule back = schedule_from_json(parse_json(dump(j), "t"));
  EXPECT_EQ(back.k, s.k);
  EXPECT_EQ(back.permutation, s.permutation);
  EXPECT_EQ(back.settings, s.settings);
  EXPECT_EQ(back.rounds, s.rounds);
  GraphState g = execute_schedule(net, back);
  EXPECT_TRUE(verify_matching(net, {2, 0, 1}, g));
  Json nj = switch_network_to_json(net);
  EXPECT_EQ(nj["sources"].size(), 3u);
  EXPECT_EQ(graph_from_json(nj), net.graph);
}

TEST(CountsJson, RoundTripAndValidation) {
  CountsFile c{"XZ", {{"00", 10}, {"11", 5}}, 42};
  CountsFile back = counts_file_from_json(counts_file_to_json(c));
  EXPECT_EQ(back.basis, "XZ");
  EXPECT_EQ(back.counts, c.counts);
  EXPECT_EQ(back.seed, 42u);
  EXPECT_THROW(counts_file_from_json(parse_json(R"({"basis": "XZ", "counts": {"0": 1}})", "t")), Error);
  EXPECT_THROW(counts_file_from_json(parse_json(R"({"basis": "X", "counts": {"1": -1}})", "t")), Error);
  EXPECT_THROW(counts_file_from_json(parse_json(R"({"basis": "X", "counts": {"2": 1}})", "t")), Error);
}

TEST(ChoiJson, RoundTripAndValidation) {
  Choi c = choi_from_kraus(channel_preset("damping"));
  Choi back = choi_from_json(parse_json(dump(choi_to_json(c)), "t"));
  EXPECT_LT((back.j - c.j).norm(), 1e-15);
  Json real = Json::object();
  real["choi"] = {{1, 0, 0, 1}, {0, 0, 0, 0}, {0, 0, 0, 0}, {1, 0, 0, 1}};
  EXPECT_NEAR(average_gate_fidelity(choi_from_json(real)), 1.0, 1e-12);
  real["choi"][0][1] = 0.5;
  EXPECT_THROW(choi_from_json(real), Error);
  EXPECT_THROW(choi_from_json(parse_json(R"({"choi": [[1]]})", "t")), Error);
}
