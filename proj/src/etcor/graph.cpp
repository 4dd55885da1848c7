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

#include "etcor/graph.hpp"

#include <algorithm>
#include <deque>
#include <string>

#include "etcor/error.hpp"

namespace etcor {

Topology::Topology(std::size_t n_agents, std::vector<Edge> edges)
    : n_agents_(n_agents), edges_(std::move(edges)) {
  if (n_agents_ == 0) {
    throw DomainError("topology needs at least one agent");
  }
  for (const auto& e : edges_) {
    const std::string label =
        "(" + std::to_string(e.from) + "," + std::to_string(e.to) + ")";
    if (e.from > n_agents_ || e.to > n_agents_) {
      throw DomainError("edge " + label + " references a node outside 0.." +
                        std::to_string(n_agents_));
    }
    if (e.from == e.to) {
      throw DomainError("self-loop " + label + " is not allowed");
    }
    if (e.to == 0) {
      throw DomainError("edge " + label +
                        " points into the exosystem node, which has no inputs");
    }
  }
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());

  in_neighbors_.assign(n_agents_ + 1, {});
  for (const auto& e : edges_) in_neighbors_[e.to].push_back(e.from);
}

double Topology::adjacency(std::size_t i, std::size_t j) const {
  if (i > n_agents_ || j > n_agents_) {
    throw DimensionError("adjacency index out of range");
  }
  const auto& nb = in_neighbors_[i];
  return std::find(nb.begin(), nb.end(), j) != nb.end() ? 1.0 : 0.0;
}

std::span<const std::size_t> Topology::in_neighbors(std::size_t i) const {
  if (i > n_agents_) throw DimensionError("node index out of range");
  return in_neighbors_[i];
}

Topology default_topology() {
  return Topology(4, {{0, 1}, {1, 2}, {2, 1}, {2, 3}, {3, 2}, {3, 4}, {4, 3}});
}

Matrix compute_h_matrix(const Topology& t) {
  const std::size_t n = t.agent_count();
  Matrix h(n, n);
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j : t.in_neighbors(i)) {
      h(i - 1, i - 1) += 1.0;
      if (j != 0) h(i - 1, j - 1) -= 1.0;
    }
  }
  return h;
}

TopologyReport check_assumptions(const Topology& t) {
  TopologyReport report;
  const std::size_t n = t.agent_count();

  // Reachability from node 0 along information flow.
  std::vector<std::vector<std::size_t>> out(n + 1);
  for (const auto& e : t.edges()) out[e.from].push_back(e.to);
  std::vector<bool> seen(n + 1, false);
  std::deque<std::size_t> queue{0};
  seen[0] = true;
  while (!queue.empty()) {
    const std::size_t k = queue.front();
    queue.pop_front();
    for (std::size_t m : out[k]) {
      if (!seen[m]) {
        seen[m] = true;
        queue.push_back(m);
      }
    }
  }
  report.spanning_tree_rooted_at_0 =
      std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });

  report.subgraph_undirected = true;
  for (const auto& e : t.edges()) {
    if (e.from == 0) continue;
    if (t.adjacency(e.from, e.to) == 0.0) {
      report.subgraph_undirected = false;
      break;
    }
  }

  const Matrix h = compute_h_matrix(t);
  report.h_positive_definite = is_symmetric(h) && is_positive_definite(h);
  return report;
}

}  // namespace etcor
