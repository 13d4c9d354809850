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

#include "mqnc/graph_state.hpp"

#include <algorithm>
#include <random>

#include "gtest/gtest.h"

#include "mqnc/dense.hpp"
#include "mqnc/error.hpp"
#include "rule_oracle.hpp"

using namespace mqnc;

namespace {

std::vector<Edge> butterfly_edges() { return {{0, 1}, {4, 5}, {0, 2}, {2, 4}, {2, 3}, {1, 3}, {3, 5}}; }

::testing::AssertionResult as_result(const std::string& error) {
  if (error.empty()) return ::testing::AssertionSuccess();
  return ::testing::AssertionFailure() << error;
}

using oracle::graph_from_mask;
using oracle::randomize_frame;

::testing::AssertionResult check_lc(const GraphState& g, std::size_t a) { return as_result(oracle::check_lc(g, a)); }
::testing::AssertionResult check_single(const GraphState& g, std::size_t a, Basis basis, std::uint8_t m) {
  return as_result(oracle::check_single(g, a, basis, m));
}
::testing::AssertionResult check_x_pair(const GraphState& g, std::size_t a, std::size_t b, std::uint8_t ma,
                                        std::uint8_t mb) {
  return as_result(oracle::check_x_pair(g, a, b, ma, mb));
}
void check_all_ops(const GraphState& g) { ASSERT_TRUE(as_result(oracle::check_all_ops(g))); }

}  // namespace

TEST(GraphState, from_edges_validates) {
  EXPECT_THROW(GraphState::from_edges(3, std::vector<Edge>{{0, 3}}), QubitError);
  EXPECT_THROW(GraphState::from_edges(3, std::vector<Edge>{{1, 1}}), QubitError);
  EXPECT_THROW(GraphState::from_edges(3, std::vector<Edge>{{0, 1}, {1, 0}}), Error);
  auto g = GraphState::from_edges(3, std::vector<Edge>{{2, 0}});
  EXPECT_EQ(g.edges(), (std::vector<Edge>{{0, 2}}));
}

TEST(GraphState, local_complement_star_to_complete) {
  auto g = GraphState::from_edges(4, std::vector<Edge>{{0, 1}, {0, 2}, {0, 3}});
  g.local_complement(0);
  EXPECT_EQ(g.edge_count(), 6u);
  g.local_complement(0);
  EXPECT_EQ(g.edges(), (std::vector<Edge>{{0, 1}, {0, 2}, {0, 3}}));
}

TEST(GraphState, butterfly_x_pair_crosses) {
  auto g = GraphState::from_edges(6, butterfly_edges());
  g.measure_x_pair(2, 3, 0, 0);
  EXPECT_EQ(g.edges(), (std::vector<Edge>{{0, 5}, {1, 4}}));
  EXPECT_EQ(g.alive_count(), 4u);
}

TEST(GraphState, butterfly_z_measurements_keep_lines) {
  auto g = GraphState::from_edges(6, butterfly_edges());
  g.measure_z(2, 0);
  g.measure_z(3, 0);
  EXPECT_EQ(g.edges(), (std::vector<Edge>{{0, 1}, {4, 5}}));
  EXPECT_TRUE(g.frame_is_identity());
}

TEST(GraphState, y_measurement_on_path_joins_ends) {
  auto g = GraphState::from_edges(3, std::vector<Edge>{{0, 1}, {1, 2}});
  g.measure_y(1, 1);
  EXPECT_EQ(g.edges(), (std::vector<Edge>{{0, 2}}));
}

TEST(GraphState, x_pair_requires_edge) {
  auto g = GraphState::from_edges(3, std::vector<Edge>{{0, 1}});
  EXPECT_THROW(g.measure_x_pair(0, 2, 0, 0), QubitError);
  g.measure_z(0, 0);
  EXPECT_THROW(g.local_complement(0), QubitError);
  EXPECT_THROW(g.measure_z(0, 0), QubitError);
}

TEST(GraphState, stabilizers_commute_and_hold) {
  auto g = GraphState::from_edges(6, butterfly_edges());
  std::mt19937_64 rng(7);
  randomize_frame(g, rng);
  auto stabs = g.stabilizers();
  ASSERT_EQ(stabs.size(), 6u);
  DenseState d = dense_from_graph(g);
  for (std::size_t i = 0; i < stabs.size(); ++i) {
    EXPECT_NEAR(d.expectation(stabs[i]), 1.0, 1e-12) << stabs[i].str();
    for (std::size_t j = 0; j < stabs.size(); ++j) EXPECT_TRUE(stabs[i].commutes_with(stabs[j]));
  }
}

TEST(GraphStateOracle, exhaustive_small_graphs) {
  std::mt19937_64 rng(11);
  for (std::size_t n = 1; n <= 5; ++n) {
    const std::size_t pairs = n * (n - 1) / 2;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pairs); ++mask) {
      GraphState g = graph_from_mask(n, mask);
      check_all_ops(g);
      if (HasFatalFailure()) return;
      randomize_frame(g, rng);
      check_all_ops(g);
      if (HasFatalFailure()) return;
    }
  }
}

TEST(GraphStateOracle, random_sequences) {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + rng() % 7;
    GraphState g = graph_from_mask(n, rng() & ((std::uint64_t{1} << (n * (n - 1) / 2)) - 1));
    randomize_frame(g, rng);
    DenseState d = dense_from_graph(g);
    // A random walk of operations, each compared against the brute-force state.
    for (int step = 0; step < 6 && g.alive_count() > 1; ++step) {
      std::vector<std::size_t> alive;
      for (std::size_t q = 0; q < n; ++q)
        if (g.alive(q)) alive.push_back(q);
      const std::size_t a = alive[rng() % alive.size()];
      const std::uint8_t m = rng() & 1u;
      switch (rng() % 4) {
        case 0:
          ASSERT_TRUE(check_lc(g, a));
          g.local_complement(a);
          break;
        case 1:
          ASSERT_TRUE(check_single(g, a, Basis::Z, m));
          g.measure_z(a, m);
          break;
        case 2:
          ASSERT_TRUE(check_single(g, a, Basis::Y, m));
          g.measure_y(a, m);
          break;
        default: {
          auto nb = g.neighbors(a);
          if (nb.empty()) break;
          const std::size_t b = nb[rng() % nb.size()];
          const std::uint8_t mb = rng() & 1u;
          ASSERT_TRUE(check_x_pair(g, a, b, m, mb));
          g.measure_x_pair(a, b, m, mb);
        }
      }
    }
  }
}
