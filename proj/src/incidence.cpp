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

#include "tetnear/incidence.hpp"

#include <algorithm>
#include <bit>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <thread>

namespace tetnear {

namespace {

struct IndexRange {
  std::uint32_t begin = 0;
  std::uint32_t end = 0;
};

// Near-equal contiguous chunks of [0, n), at most thread_count of them, in
// ascending order.
std::vector<IndexRange> split_ranges(std::uint32_t n, unsigned thread_count) {
  std::vector<IndexRange> ranges;
  if (n == 0) return ranges;
  const auto workers =
      static_cast<unsigned>(std::min<std::uint64_t>(std::max(1u, thread_count), n));
  const std::uint64_t chunk = (static_cast<std::uint64_t>(n) + workers - 1) / workers;
  ranges.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    const auto begin = static_cast<std::uint32_t>(std::min<std::uint64_t>(w * chunk, n));
    const auto end = static_cast<std::uint32_t>(std::min<std::uint64_t>((w + 1) * chunk, n));
    if (begin < end) ranges.push_back({begin, end});
  }
  return ranges;
}

// Runs fn(worker) for worker = 0..count-1, each on its own thread when
// count > 1. Exceptions from worker bodies are not expected and would
// terminate.
template <typename Fn>
void run_workers(std::size_t count, Fn&& fn) {
  if (count == 0) return;
  if (count == 1) {
    fn(std::size_t{0});
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(count);
  for (std::size_t w = 0; w < count; ++w) {
    pool.emplace_back([&fn, w] { fn(w); });
  }
  for (auto& t : pool) t.join();
}

// Convenience wrapper: fn(worker, begin, end) over chunks of [0, n).
template <typename Fn>
void run_on_ranges(std::uint32_t n, unsigned thread_count, Fn&& fn) {
  const auto ranges = split_ranges(n, thread_count);
  run_workers(ranges.size(), [&](std::size_t w) {
    fn(static_cast<unsigned>(w), ranges[w].begin, ranges[w].end);
  });
}

std::vector<std::uint32_t> count_entries_serial(const Mesh& mesh) {
  std::vector<std::uint32_t> counts(static_cast<std::size_t>(mesh.n_node()) + 1, 0);
  std::array<NodeId, 4> uniq;
  for (const Element& el : mesh.elements()) {
    const int k = detail::distinct_nodes(el, uniq);
    for (int i = 0; i < k; ++i) ++counts[uniq[i] + 1];
  }
  return counts;
}

IncidenceMap build_serial(const Mesh& mesh) {
  const std::uint32_t n_node = mesh.n_node();
  const std::uint32_t n_elem = mesh.n_elem();

  // Pass 1: count entries per node, shifted by one so the in-place prefix
  // sum yields offsets directly.
  std::vector<std::uint32_t> offsets = count_entries_serial(mesh);
  std::inclusive_scan(offsets.begin(), offsets.end(), offsets.begin());

  // Pass 2: fill. Scanning elements in ascending id order keeps every
  // node's slice sorted with no post-pass.
  std::vector<ElemId> elem_ids(offsets[n_node]);
  std::vector<std::uint32_t> cursor(offsets.begin(), offsets.begin() + n_node);
  std::array<NodeId, 4> uniq;
  for (ElemId e = 0; e < n_elem; ++e) {
    const int k = detail::distinct_nodes(mesh.elements()[e], uniq);
    for (int i = 0; i < k; ++i) elem_ids[cursor[uniq[i]]++] = e;
  }
  return IncidenceMap(std::move(offsets), std::move(elem_ids), n_node, n_elem);
}

// Stable partitioned counting sort. Workers own contiguous ascending
// element ranges; a cross-worker prefix of the per-worker histograms gives
// every worker a private write cursor per node, so the scatter is lock-free
// and each node's slice comes out sorted by construction: slots are ordered
// first by worker rank, then by the ascending scan within the range. The
// written array is therefore a pure function of the mesh, whatever the
// thread count.
IncidenceMap build_counting_sort(const Mesh& mesh, unsigned thread_count) {
  const std::uint32_t n_node = mesh.n_node();
  const std::uint32_t n_elem = mesh.n_elem();
  const auto elements = mesh.elements();

  const auto ranges = split_ranges(n_elem, thread_count);
  const std::size_t workers = ranges.size();

  // Pass 1: per-worker node histograms over disjoint element ranges.
  std::vector<std::vector<std::uint32_t>> local(workers);
  run_workers(workers, [&](std::size_t w) {
    auto& counts = local[w];
    counts.assign(n_node, 0);
    std::array<NodeId, 4> uniq;
    for (std::uint32_t e = ranges[w].begin; e < ranges[w].end; ++e) {
      const int k = detail::distinct_nodes(elements[e], uniq);
      for (int i = 0; i < k; ++i) ++counts[uniq[i]];
    }
  });

  // Pass 2: reduce into offsets and turn each local count into that
  // worker's write base for the node.
  std::vector<std::uint32_t> offsets(static_cast<std::size_t>(n_node) + 1, 0);
  for (std::uint32_t j = 0; j < n_node; ++j) {
    std::uint32_t next = offsets[j];
    for (std::size_t w = 0; w < workers; ++w) {
      const std::uint32_t count = local[w][j];
      local[w][j] = next;
      next += count;
    }
    offsets[j + 1] = next;
  }

  // Pass 3: scatter through the private cursors into disjoint slots.
  std::vector<ElemId> elem_ids(offsets[n_node]);
  run_workers(workers, [&](std::size_t w) {
    auto& cursor = local[w];
    std::array<NodeId, 4> uniq;
    for (std::uint32_t e = ranges[w].begin; e < ranges[w].end; ++e) {
      const int k = detail::distinct_nodes(elements[e], uniq);
      for (int i = 0; i < k; ++i) elem_ids[cursor[uniq[i]]++] = e;
    }
  });

  return IncidenceMap(std::move(offsets), std::move(elem_ids), n_node, n_elem);
}

IncidenceMap build_locked(const Mesh& mesh, unsigned thread_count,
                          unsigned lock_stripes) {
  const std::uint32_t n_node = mesh.n_node();
  const std::uint32_t n_elem = mesh.n_elem();
  const auto elements = mesh.elements();

  const std::uint32_t stripes = std::bit_ceil(std::clamp(lock_stripes, 1u, 1u << 20));
  const std::uint32_t stripe_mask = stripes - 1;

  // Histogramming with per-node growable lists; an append is a critical
  // section guarded by the node's stripe lock.
  std::vector<std::vector<ElemId>> lists(n_node);
  std::vector<std::mutex> locks(stripes);
  run_on_ranges(n_elem, thread_count, [&](unsigned, std::uint32_t begin, std::uint32_t end) {
    std::array<NodeId, 4> uniq;
    for (std::uint32_t e = begin; e < end; ++e) {
      const int k = detail::distinct_nodes(elements[e], uniq);
      for (int i = 0; i < k; ++i) {
        const NodeId j = uniq[i];
        std::lock_guard<std::mutex> guard(locks[j & stripe_mask]);
        lists[j].push_back(e);
      }
    }
  });

  std::vector<std::uint32_t> offsets(static_cast<std::size_t>(n_node) + 1, 0);
  for (std::uint32_t j = 0; j < n_node; ++j) {
    offsets[j + 1] = offsets[j] + static_cast<std::uint32_t>(lists[j].size());
  }

  // Canonicalize: sort each list and flatten. One insert happens per
  // (node, element), so slices are duplicate-free once sorted.
  std::vector<ElemId> elem_ids(offsets[n_node]);
  run_on_ranges(n_node, thread_count, [&](unsigned, std::uint32_t begin, std::uint32_t end) {
    for (std::uint32_t j = begin; j < end; ++j) {
      auto& list = lists[j];
      std::sort(list.begin(), list.end());
      std::copy(list.begin(), list.end(), elem_ids.begin() + offsets[j]);
    }
  });

  return IncidenceMap(std::move(offsets), std::move(elem_ids), n_node, n_elem);
}

void check_matches(const IncidenceMap& inc, const Mesh& mesh) {
  if (inc.n_node() != mesh.n_node() || inc.n_elem() != mesh.n_elem()) {
    throw IncidenceMeshMismatchError(inc.n_node(), inc.n_elem(),
                                     mesh.n_node(), mesh.n_elem());
  }
}

// Merges the sorted element slices of e's distinct nodes into `out`,
// skipping duplicates and e itself.
void merge_near(const IncidenceMap& inc, const Mesh& mesh, ElemId e,
                std::vector<ElemId>& out) {
  out.clear();
  std::array<NodeId, 4> uniq;
  const int k = detail::distinct_nodes(mesh.elements()[e], uniq);

  const auto offsets = inc.offsets();
  const ElemId* ids = inc.elem_ids().data();
  std::array<const ElemId*, 4> head;
  std::array<const ElemId*, 4> tail;
  for (int i = 0; i < k; ++i) {
    head[i] = ids + offsets[uniq[i]];
    tail[i] = ids + offsets[uniq[i] + 1];
  }

  constexpr ElemId kDone = std::numeric_limits<ElemId>::max();
  for (;;) {
    ElemId m = kDone;
    for (int i = 0; i < k; ++i) {
      if (head[i] != tail[i]) m = std::min(m, *head[i]);
    }
    if (m == kDone) break;
    for (int i = 0; i < k; ++i) {
      if (head[i] != tail[i] && *head[i] == m) ++head[i];
    }
    if (m != e) out.push_back(m);
  }
}

void fill_report(const IncidenceMap& inc, const Mesh& mesh, ElemId e,
                 std::vector<ElemId>& scratch, NeighborReport& out) {
  merge_near(inc, mesh, e, scratch);
  out.elem = e;
  out.neighbors.clear();
  out.neighbors.reserve(scratch.size());
  const Element& el = mesh.elements()[e];
  for (ElemId f : scratch) {
    out.neighbors.emplace_back(
        f, classify_nearness(shared_vertex_count(el, mesh.elements()[f])));
  }
}

}  // namespace

const char* to_string(BuildStrategy s) {
  switch (s) {
    case BuildStrategy::Serial:
      return "serial";
    case BuildStrategy::LockedParallel:
      return "locked";
    case BuildStrategy::CountingSortParallel:
      return "countsort";
  }
  return "?";
}

std::optional<BuildStrategy> strategy_from_name(std::string_view name) {
  if (name == "serial") return BuildStrategy::Serial;
  if (name == "locked") return BuildStrategy::LockedParallel;
  if (name == "countsort") return BuildStrategy::CountingSortParallel;
  return std::nullopt;
}

IncidenceMap::IncidenceMap(std::vector<std::uint32_t> offsets,
                           std::vector<ElemId> elem_ids, std::uint32_t n_node,
                           std::uint32_t n_elem)
    : offsets_(std::move(offsets)),
      elem_ids_(std::move(elem_ids)),
      n_node_(n_node),
      n_elem_(n_elem) {
  if (offsets_.size() != static_cast<std::size_t>(n_node_) + 1) {
    throw std::invalid_argument("incidence offsets must have n_node + 1 entries");
  }
  if (offsets_.front() != 0 || offsets_.back() != elem_ids_.size()) {
    throw std::invalid_argument("incidence offsets do not span the id array");
  }
  if (!std::is_sorted(offsets_.begin(), offsets_.end())) {
    throw std::invalid_argument("incidence offsets must be non-decreasing");
  }
}

std::span<const ElemId> IncidenceMap::elements_of(NodeId j) const {
  if (j >= n_node_) throw NodeOutOfRangeError(j, n_node_);
  return std::span<const ElemId>(elem_ids_.data() + offsets_[j],
                                 offsets_[j + 1] - offsets_[j]);
}

std::span<const ElemId> elements_of_node(const IncidenceMap& inc, NodeId j) {
  return inc.elements_of(j);
}

IncidenceMap build_incidence(const Mesh& mesh, BuildStrategy strategy,
                             unsigned thread_count, unsigned lock_stripes) {
  if (detail::entries_would_overflow(mesh.n_elem())) {
    throw CapacityOverflowError(4ull * mesh.n_elem());
  }
  switch (strategy) {
    case BuildStrategy::Serial:
      return build_serial(mesh);
    case BuildStrategy::LockedParallel:
      return build_locked(mesh, thread_count, lock_stripes);
    case BuildStrategy::CountingSortParallel:
      return build_counting_sort(mesh, thread_count);
  }
  throw std::invalid_argument("unknown build strategy");
}

std::vector<ElemId> near_elements(const IncidenceMap& inc, const Mesh& mesh,
                                  ElemId e) {
  check_matches(inc, mesh);
  if (e >= mesh.n_elem()) throw ElemOutOfRangeError(e, mesh.n_elem());
  std::vector<ElemId> out;
  merge_near(inc, mesh, e, out);
  return out;
}

NeighborReport near_elements_classified(const IncidenceMap& inc,
                                        const Mesh& mesh, ElemId e) {
  check_matches(inc, mesh);
  if (e >= mesh.n_elem()) throw ElemOutOfRangeError(e, mesh.n_elem());
  NeighborReport report;
  std::vector<ElemId> scratch;
  fill_report(inc, mesh, e, scratch, report);
  return report;
}

void for_each_near(const IncidenceMap& inc, const Mesh& mesh,
                   const std::function<void(const NeighborReport&)>& fn) {
  check_matches(inc, mesh);
  NeighborReport report;
  std::vector<ElemId> scratch;
  for (ElemId e = 0; e < mesh.n_elem(); ++e) {
    fill_report(inc, mesh, e, scratch, report);
    fn(report);
  }
}

std::vector<NeighborReport> all_near(const IncidenceMap& inc,
                                     const Mesh& mesh) {
  std::vector<NeighborReport> reports;
  reports.reserve(mesh.n_elem());
  for_each_near(inc, mesh,
                [&reports](const NeighborReport& r) { reports.push_back(r); });
  return reports;
}

}  // namespace tetnear
