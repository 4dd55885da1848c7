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

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "etcor/linalg.hpp"

namespace etcor {

/// Directed edge (from, to): node `to` receives information from node `from`.
/// Node 0 is the exosystem, nodes 1..N are the agents.
struct Edge {
  std::size_t from = 0;
  std::size_t to = 0;

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Communication graph over the exosystem node and N agents, with unit
/// adjacency weights. Edges are kept sorted and de-duplicated.
class Topology {
 public:
  Topology() = default;
  /// Throws DomainError for self-loops, edges into node 0, or out-of-range
  /// nodes.
  Topology(std::size_t n_agents, std::vector<Edge> edges);

  std::size_t agent_count() const noexcept { return n_agents_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }

  /// a_ij in {0, 1}: 1 iff node i receives from node j.
  double adjacency(std::size_t i, std::size_t j) const;

  /// In-neighbours of node i (may include 0).
  std::span<const std::size_t> in_neighbors(std::size_t i) const;

  friend bool operator==(const Topology& a, const Topology& b) {
    return a.n_agents_ == b.n_agents_ && a.edges_ == b.edges_;
  }

 private:
  std::size_t n_agents_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<std::size_t>> in_neighbors_;
};

/// Edge (0,1) plus the undirected chain 1-2-3-4.
Topology default_topology();

/// h_ii = sum_{j=0..N} a_ij, h_ij = -a_ij for i != j (agents only).
Matrix compute_h_matrix(const Topology& t);

struct TopologyReport {
  bool spanning_tree_rooted_at_0 = false;
  bool subgraph_undirected = false;
  bool h_positive_definite = false;

  bool all() const noexcept {
    return spanning_tree_rooted_at_0 && subgraph_undirected &&
           h_positive_definite;
  }
};

TopologyReport check_assumptions(const Topology& t);

}  // namespace etcor
