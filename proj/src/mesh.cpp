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

#include "tetnear/mesh.hpp"

#include <cmath>
#include <limits>

namespace tetnear {

const char* to_string(Nearness n) {
  switch (n) {
    case Nearness::NotNear:
      return "not-near";
    case Nearness::VertexNear:
      return "vertex-near";
    case Nearness::EdgeNear:
      return "edge-near";
    case Nearness::FaceNear:
      return "face-near";
    case Nearness::Coincident:
      return "coincident";
  }
  return "?";
}

char nearness_code(Nearness n) {
  switch (n) {
    case Nearness::VertexNear:
      return 'V';
    case Nearness::EdgeNear:
      return 'E';
    case Nearness::FaceNear:
      return 'F';
    case Nearness::Coincident:
      return 'C';
    case Nearness::NotNear:
      break;
  }
  return '-';
}

std::optional<Nearness> nearness_from_code(char code) {
  switch (code) {
    case 'V':
      return Nearness::VertexNear;
    case 'E':
      return Nearness::EdgeNear;
    case 'F':
      return Nearness::FaceNear;
    case 'C':
      return Nearness::Coincident;
    default:
      return std::nullopt;
  }
}

Mesh validate_mesh(std::vector<Node> nodes, std::vector<Element> elements,
                   ValidationMode mode, std::size_t* degenerate_count) {
  constexpr std::uint64_t kIdLimit = std::numeric_limits<std::uint32_t>::max();
  if (nodes.size() > kIdLimit) throw CapacityOverflowError(nodes.size());
  if (elements.size() > kIdLimit) throw CapacityOverflowError(elements.size());

  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const Node& p = nodes[i];
    if (!std::isfinite(p.x) || !std::isfinite(p.y) || !std::isfinite(p.z)) {
      throw NonFiniteCoordinateError(i);
    }
  }

  const auto n_node = static_cast<std::uint32_t>(nodes.size());
  std::size_t degenerate = 0;
  for (std::size_t e = 0; e < elements.size(); ++e) {
    const Element& el = elements[e];
    for (int slot = 0; slot < 4; ++slot) {
      if (el[slot] >= n_node) {
        throw IndexOutOfRangeError(e, slot, el[slot], n_node);
      }
    }
    const bool repeats = el[0] == el[1] || el[0] == el[2] || el[0] == el[3] ||
                         el[1] == el[2] || el[1] == el[3] || el[2] == el[3];
    if (repeats) {
      if (mode == ValidationMode::Strict) throw DegenerateElementError(e);
      ++degenerate;
    }
  }
  if (degenerate_count != nullptr) *degenerate_count = degenerate;
  return Mesh(std::move(nodes), std::move(elements));
}

int shared_vertex_count(const Element& a, const Element& b) {
  std::array<NodeId, 4> ua;
  const int na = detail::distinct_nodes(a, ua);
  int shared = 0;
  for (int i = 0; i < na; ++i) {
    for (NodeId j : b) {
      if (ua[i] == j) {
        ++shared;
        break;
      }
    }
  }
  return shared;
}

Nearness classify_nearness(int shared) {
  switch (shared) {
    case 0:
      return Nearness::NotNear;
    case 1:
      return Nearness::VertexNear;
    case 2:
      return Nearness::EdgeNear;
    case 3:
      return Nearness::FaceNear;
    case 4:
      return Nearness::Coincident;
    default:
      throw InvalidCountError(shared);
  }
}

}  // namespace tetnear
