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

#pragma once

#include <vector>

#include "tetnear/incidence.hpp"
#include "tetnear/mesh.hpp"

// Brute-force reference implementations used to verify the incidence map
// and the near-element queries on small meshes. Deliberately naive:
// quadratic pairwise scans and growable lists, single-threaded, and never
// calling into the builders or queries they check. Performance is a
// non-goal here; staying trivially auditable is the point.

namespace tetnear::oracle {

// All f != e sharing at least one vertex with e, by scanning every element
// pairwise. Sorted ascending.
std::vector<ElemId> brute_force_near(const Mesh& mesh, ElemId e);

// brute_force_near with the shared-vertex classification applied per pair.
NeighborReport brute_force_near_classified(const Mesh& mesh, ElemId e);

// Builds the incidence map with sequential appends into per-node growable
// lists, then sorts and dedups each list and converts to CSR.
IncidenceMap naive_incidence(const Mesh& mesh);

}  // namespace tetnear::oracle
