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

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "tetnear/errors.hpp"

namespace tetnear {

// Node and element ids are zero-based 32-bit indices throughout the core.
// One-based external formats are converted at the io boundary.
using NodeId = std::uint32_t;
using ElemId = std::uint32_t;

struct Node {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  bool operator==(const Node&) const = default;
};

// Four node indices of a tetrahedron, in input order.
using Element = std::array<NodeId, 4>;

// Relation between two tetrahedra, derived solely from how many vertices
// they share: 1 shared vertex -> VertexNear, 2 -> EdgeNear (two vertices of
// a tetrahedron always span one of its edges), 3 -> FaceNear (three span a
// face), 4 -> Coincident (identical vertex sets, kept distinct so duplicate
// elements stay visible), 0 -> NotNear.
enum class Nearness : std::uint8_t {
  NotNear = 0,
  VertexNear = 1,
  EdgeNear = 2,
  FaceNear = 3,
  Coincident = 4,
};

const char* to_string(Nearness n);

// One-letter code used in report text: V, E, F, C ('-' for NotNear).
char nearness_code(Nearness n);
std::optional<Nearness> nearness_from_code(char code);

enum class ValidationMode {
  Strict,      // reject elements that repeat a node index
  Permissive,  // keep them; they participate with their distinct nodes only
};

// Immutable after construction; safe for concurrent readers. Node
// coordinates are validated but never enter the adjacency logic, which is
// purely combinatorial.
class Mesh {
 public:
  Mesh() = default;

  std::uint32_t n_node() const { return static_cast<std::uint32_t>(nodes_.size()); }
  std::uint32_t n_elem() const { return static_cast<std::uint32_t>(elements_.size()); }

  std::span<const Node> nodes() const { return nodes_; }
  std::span<const Element> elements() const { return elements_; }

  const Node& node(NodeId j) const { return nodes_[j]; }
  const Element& element(ElemId e) const { return elements_[e]; }

  bool operator==(const Mesh&) const = default;

 private:
  friend Mesh validate_mesh(std::vector<Node>, std::vector<Element>,
                            ValidationMode, std::size_t*);

  Mesh(std::vector<Node> nodes, std::vector<Element> elements)
      : nodes_(std::move(nodes)), elements_(std::move(elements)) {}

  std::vector<Node> nodes_;
  std::vector<Element> elements_;
};

// Checks raw node/element arrays and assembles a Mesh, preserving input
// order exactly. Throws NonFiniteCoordinateError, IndexOutOfRangeError, or
// DegenerateElementError (the latter only in Strict mode; in Permissive
// mode degenerate elements are kept and counted into *degenerate_count).
Mesh validate_mesh(std::vector<Node> nodes, std::vector<Element> elements,
                   ValidationMode mode = ValidationMode::Strict,
                   std::size_t* degenerate_count = nullptr);

// Number of distinct node ids the two elements have in common, in [0, 4].
// Symmetric in its arguments.
int shared_vertex_count(const Element& a, const Element& b);

// Maps a shared-vertex count to the Nearness class. Total on {0,...,4};
// throws InvalidCountError outside that range.
Nearness classify_nearness(int shared);

namespace detail {

// Writes the distinct node ids of `el` into `out` in first-occurrence order
// and returns how many there are (always 4 for strictly validated meshes).
inline int distinct_nodes(const Element& el, std::array<NodeId, 4>& out) {
  int n = 0;
  for (NodeId j : el) {
    bool seen = false;
    for (int i = 0; i < n; ++i) {
      seen = seen || out[i] == j;
    }
    if (!seen) out[n++] = j;
  }
  return n;
}

}  // namespace detail

}  // namespace tetnear
