// Copyright 2026 The tetnear Authors.
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

#include "tetnear/oracle.hpp"

#include <algorithm>

namespace tetnear::oracle {

std::vector<ElemId> brute_force_near(const Mesh& mesh, ElemId e) {
  if (e >= mesh.n_elem()) throw ElemOutOfRangeError(e, mesh.n_elem());
  const Element& el = mesh.elements()[e];
  std::vector<ElemId> out;
  for (ElemId f = 0; f < mesh.n_elem(); ++f) {
    if (f == e) continue;
    if (shared_vertex_count(el, mesh.elements()[f]) >= 1) out.push_back(f);
  }
  return out;
}

NeighborReport brute_force_near_classified(const Mesh& mesh, ElemId e) {
  if (e >= mesh.n_elem()) throw ElemOutOfRangeError(e, mesh.n_elem());
  const Element& el = mesh.elements()[e];
  NeighborReport report;
  report.elem = e;
  for (ElemId f = 0; f < mesh.n_elem(); ++f) {
    if (f == e) continue;
    const int shared = shared_vertex_count(el, mesh.elements()[f]);
    if (shared >= 1) report.neighbors.emplace_back(f, classify_nearness(shared));
  }
  return report;
}

IncidenceMap naive_incidence(const Mesh& mesh) {
  const std::uint32_t n_node = mesh.n_node();

  // Sequential appends into growable per-node lists.
  std::vector<std::vector<ElemId>> lists(n_node);
  std::array<NodeId, 4> uniq;
  for (ElemId e = 0; e < mesh.n_elem(); ++e) {
    const int k = detail::distinct_nodes(mesh.elements()[e], uniq);
    for (int i = 0; i < k; ++i) lists[uniq[i]].push_back(e);
  }

  // Canonicalize and flatten to CSR.
  std::uint64_t total = 0;
  for (auto& list : lists) {
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
    total += list.size();
  }
  if (total > std::numeric_limits<std::uint32_t>::max()) {
    throw CapacityOverflowError(total);
  }

  std::vector<std::uint32_t> offsets;
  offsets.reserve(static_cast<std::size_t>(n_node) + 1);
  offsets.push_back(0);
  std::vector<ElemId> elem_ids;
  elem_ids.reserve(static_cast<std::size_t>(total));
  for (const auto& list : lists) {
    elem_ids.insert(elem_ids.end(), list.begin(), list.end());
    offsets.push_back(static_cast<std::uint32_t>(elem_ids.size()));
  }
  return IncidenceMap(std::move(offsets), std::move(elem_ids), n_node,
                      mesh.n_elem());
}

}  // namespace tetnear::oracle
