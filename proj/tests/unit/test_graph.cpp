// Copyright 2026 The etcor Authors
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


#include "doctest.h"
#include "etcor/error.hpp"
#include "etcor/graph.hpp"
#include "oracle.hpp"

using namespace etcor;

TEST_CASE("H matrix of small graphs") {
  CHECK(compute_h_matrix(Topology(1, {{0, 1}})) == Matrix{{1.0}});
  CHECK(compute_h_matrix(default_topology()) ==
        Matrix{{2, -1, 0, 0}, {-1, 2, -1, 0}, {0, -1, 2, -1}, {0, 0, -1, 1}});
  CHECK(compute_h_matrix(Topology(2, {{0, 1}, {0, 2}, {1, 2}, {2, 1}})) ==
        Matrix{{2, -1}, {-1, 2}});
}

TEST_CASE("default topology satisfies the connectivity assumption") {
  const Topology t = default_topology();
  const TopologyReport r = check_assumptions(t);
  CHECK(r.spanning_tree_rooted_at_0);
  CHECK(r.subgraph_undirected);
  CHECK(r.h_positive_definite);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(
      test::to_eigen(compute_h_matrix(t)));
  CHECK(es.eigenvalues()(0) == doctest::Approx(0.12061475842818).epsilon(1e-10));
}

TEST_CASE("assumption failures are reported") {
  // Agent 4 isolated.
  const TopologyReport isolated = check_assumptions(
      Topology(4, {{0, 1}, {1, 2}, {2, 1}, {2, 3}, {3, 2}}));
  CHECK_FALSE(isolated.spanning_tree_rooted_at_0);
  CHECK_FALSE(isolated.h_positive_definite);
  CHECK(isolated.subgraph_undirected);
  // 1 -> 2 without 2 -> 1.
  const TopologyReport directed =
      check_assumptions(Topology(2, {{0, 1}, {1, 2}}));
  CHECK(directed.spanning_tree_rooted_at_0);
  CHECK_FALSE(directed.subgraph_undirected);
  CHECK_FALSE(directed.all());
}

TEST_CASE("neighbour lists and adjacency") {
  const Topology t = default_topology();
  CHECK(t.agent_count() == 4);
  CHECK(t.adjacency(1, 0) == 1.0);
  CHECK(t.adjacency(0, 1) == 0.0);
  CHECK(t.adjacency(2, 3) == 1.0);
  const auto n1 = t.in_neighbors(1);
  CHECK(std::vector<std::size_t>(n1.begin(), n1.end()) ==
        std::vector<std::size_t>{0, 2});
  CHECK_THROWS_AS(t.adjacency(5, 0), DimensionError);
}

TEST_CASE("invalid topologies are rejected") {
  CHECK_THROWS_AS(Topology(0, {}), DomainError);
  CHECK_THROWS_AS(Topology(2, {{1, 1}}), DomainError);
  CHECK_THROWS_AS(Topology(2, {{1, 0}}), DomainError);
  CHECK_THROWS_AS(Topology(2, {{0, 3}}), DomainError);
}
