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

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace tetnear {

// Base class of every error thrown by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {
inline std::string at_line(std::size_t line) {
  return line == 0 ? std::string{} : " (line " + std::to_string(line) + ")";
}
}  // namespace detail

// A node index in an element is >= the node count of the mesh.
class IndexOutOfRangeError : public Error {
 public:
  IndexOutOfRangeError(std::uint64_t elem, int slot, std::uint64_t index,
                       std::uint64_t n_node, std::size_t line = 0)
      : Error("element " + std::to_string(elem) + ", slot " +
              std::to_string(slot) + ": node index " + std::to_string(index) +
              " out of range [0, " + std::to_string(n_node) + ")" +
              detail::at_line(line)),
        elem(elem),
        slot(slot),
        index(index),
        line(line) {}

  std::uint64_t elem;
  int slot;
  std::uint64_t index;
  std::size_t line;
};

// An element repeats a node index (rejected unless validating permissively).
class DegenerateElementError : public Error {
 public:
  explicit DegenerateElementError(std::uint64_t elem, std::size_t line = 0)
      : Error("element " + std::to_string(elem) +
              " repeats a node index" + detail::at_line(line)),
        elem(elem),
        line(line) {}

  std::uint64_t elem;
  std::size_t line;
};

// A node coordinate is NaN or infinite.
class NonFiniteCoordinateError : public Error {
 public:
  explicit NonFiniteCoordinateError(std::uint64_t node, std::size_t line = 0)
      : Error("node " + std::to_string(node) +
              " has a non-finite coordinate" + detail::at_line(line)),
        node(node),
        line(line) {}

  std::uint64_t node;
  std::size_t line;
};

// A shared-vertex count outside [0, 4] was passed to classify_nearness.
class InvalidCountError : public Error {
 public:
  explicit InvalidCountError(long long count)
      : Error("shared-vertex count " + std::to_string(count) +
              " outside [0, 4]"),
        count(count) {}

  long long count;
};

// The incidence arrays would not fit the 32-bit index width.
class CapacityOverflowError : public Error {
 public:
  explicit CapacityOverflowError(std::uint64_t entries)
      : Error("incidence map needs " + std::to_string(entries) +
              " entries, which exceeds the 32-bit index range"),
        entries(entries) {}

  std::uint64_t entries;
};

class NodeOutOfRangeError : public Error {
 public:
  NodeOutOfRangeError(std::uint64_t node, std::uint64_t n_node)
      : Error("node id " + std::to_string(node) + " out of range [0, " +
              std::to_string(n_node) + ")"),
        node(node),
        n_node(n_node) {}

  std::uint64_t node;
  std::uint64_t n_node;
};

class ElemOutOfRangeError : public Error {
 public:
  ElemOutOfRangeError(std::uint64_t elem, std::uint64_t n_elem)
      : Error("element id " + std::to_string(elem) + " out of range [0, " +
              std::to_string(n_elem) + ")"),
        elem(elem),
        n_elem(n_elem) {}

  std::uint64_t elem;
  std::uint64_t n_elem;
};

// An incidence map was queried against a mesh with different dimensions.
class IncidenceMeshMismatchError : public Error {
 public:
  IncidenceMeshMismatchError(std::uint64_t inc_nodes, std::uint64_t inc_elems,
                             std::uint64_t mesh_nodes, std::uint64_t mesh_elems)
      : Error("incidence map built for " + std::to_string(inc_nodes) +
              " nodes / " + std::to_string(inc_elems) +
              " elements does not match mesh with " +
              std::to_string(mesh_nodes) + " nodes / " +
              std::to_string(mesh_elems) + " elements") {}
};

// Malformed input text; `line` is 1-based and counts every physical line.
class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t line, const std::string& reason)
      : Error("line " + std::to_string(line) + ": " + reason),
        line(line),
        reason(reason) {}

  std::size_t line;
  std::string reason;
};

// MSH file whose format header is not the supported "2.2 0 8".
class UnsupportedVersionError : public Error {
 public:
  explicit UnsupportedVersionError(const std::string& found)
      : Error("unsupported MSH format header \"" + found +
              "\" (expected \"2.2 0 8\")"),
        found(found) {}

  std::string found;
};

// The random-mesh generator rejected 1000 draws in a row for one element.
class GenerationStalledError : public Error {
 public:
  explicit GenerationStalledError(std::uint64_t elem)
      : Error("mesh generation stalled at element " + std::to_string(elem) +
              ": 1000 consecutive draws exceeded the valence budget"),
        elem(elem) {}

  std::uint64_t elem;
};

}  // namespace tetnear
