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

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "tetnear/mesh.hpp"

namespace tetnear {

// How build_incidence distributes work. Every strategy produces
// bit-identical offsets/elem_ids for any thread count.
//
//  - Serial: single-threaded two-pass counting sort (count, prefix sum,
//    fill). Fill order keeps each node's slice sorted by construction.
//  - LockedParallel: per-node growable lists; appends are protected by a
//    striped mutual-exclusion region; lists are sorted afterwards to reach
//    canonical form.
//  - CountingSortParallel (default): stable partitioned counting sort.
//    Per-worker node histograms are prefix-summed across workers into
//    private write cursors, so the scatter is lock-free and every node
//    slice comes out sorted with no post-pass.
enum class BuildStrategy {
  Serial,
  LockedParallel,
  CountingSortParallel,
};

// CLI-facing names: "serial", "locked", "countsort".
const char* to_string(BuildStrategy s);
std::optional<BuildStrategy> strategy_from_name(std::string_view name);

// Node-to-element incidence in CSR form. offsets() has n_node() + 1
// entries; the elements containing node j are the slice
//
//   elem_ids()[offsets()[j] .. offsets()[j+1])
//
// sorted ascending with no duplicates. For a mesh without degenerate
// elements the total entry count is exactly 4 * n_elem(). Immutable after
// construction and safe for unlimited concurrent readers.
class IncidenceMap {
 public:
  IncidenceMap() : offsets_(1, 0) {}

  // Takes ownership of prebuilt CSR arrays. Checks the structural
  // invariants that are cheap to check (shape, monotonicity); the per-slice
  // ordering is the builder's responsibility.
  IncidenceMap(std::vector<std::uint32_t> offsets, std::vector<ElemId> elem_ids,
               std::uint32_t n_node, std::uint32_t n_elem);

  std::uint32_t n_node() const { return n_node_; }
  std::uint32_t n_elem() const { return n_elem_; }
  std::size_t entry_count() const { return elem_ids_.size(); }

  std::span<const std::uint32_t> offsets() const { return offsets_; }
  std::span<const ElemId> elem_ids() const { return elem_ids_; }

  // The sorted, duplicate-free list of elements containing node j; empty
  // for isolated nodes. Throws NodeOutOfRangeError.
  std::span<const ElemId> elements_of(NodeId j) const;

  bool operator==(const IncidenceMap&) const = default;

 private:
  std::vector<std::uint32_t> offsets_;
  std::vector<ElemId> elem_ids_;
  std::uint32_t n_node_ = 0;
  std::uint32_t n_elem_ = 0;
};

// Builds the node-to-element incidence map for a validated mesh.
// Externally a pure function: the result depends only on the mesh, never on
// strategy or thread count. thread_count is ignored for Serial;
// lock_stripes (rounded up to a power of two) only affects LockedParallel.
// Throws CapacityOverflowError when 4 * n_elem does not fit the 32-bit
// index width.
IncidenceMap build_incidence(
    const Mesh& mesh,
    BuildStrategy strategy = BuildStrategy::CountingSortParallel,
    unsigned thread_count = 1, unsigned lock_stripes = 1024);

// Read accessor matching IncidenceMap::elements_of, as a free function.
std::span<const ElemId> elements_of_node(const IncidenceMap& inc, NodeId j);

// Sorted union of the element lists of e's nodes, with e itself removed
// (an element is not its own neighbor; true duplicates still show up as
// Coincident). Implemented as a 4-way merge of the sorted node slices with
// duplicate skipping. Throws IncidenceMeshMismatchError if inc was not
// built from a mesh of these dimensions, ElemOutOfRangeError for a bad id.
std::vector<ElemId> near_elements(const IncidenceMap& inc, const Mesh& mesh,
                                  ElemId e);

struct NeighborReport {
  ElemId elem = 0;
  // Sorted ascending by element id; Nearness is never NotNear.
  std::vector<std::pair<ElemId, Nearness>> neighbors;

  bool operator==(const NeighborReport&) const = default;
};

// near_elements plus the shared-vertex classification of each neighbor.
NeighborReport near_elements_classified(const IncidenceMap& inc,
                                        const Mesh& mesh, ElemId e);

// Streams one NeighborReport per element in ascending id order. The report
// passed to fn is reused between calls and only valid during the call.
void for_each_near(const IncidenceMap& inc, const Mesh& mesh,
                   const std::function<void(const NeighborReport&)>& fn);

// Materialized form of for_each_near; intended for small meshes.
std::vector<NeighborReport> all_near(const IncidenceMap& inc,
                                     const Mesh& mesh);

namespace detail {

// True when 4 * n_elem entries would not fit the 32-bit index width used
// for offsets and write cursors.
constexpr bool entries_would_overflow(std::uint64_t n_elem) {
  return 4 * n_elem > std::numeric_limits<std::uint32_t>::max();
}

}  // namespace detail

}  // namespace tetnear
