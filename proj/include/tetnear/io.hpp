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
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tetnear/incidence.hpp"
#include "tetnear/mesh.hpp"

// Text formats (all UTF-8 with LF line endings):
//
// Native mesh:
//   header line "N_node N_elem", then N_node lines "x y z", then N_elem
//   lines "j0 j1 j2 j3" with zero-based node indices. Token counts per line
//   are exact; blank lines and lines starting with '#' are ignored.
//
// Gmsh MSH 2.2 ASCII subset:
//   $MeshFormat header "2.2 0 8"; single $Nodes block with 1-based (or
//   arbitrary) ids, remapped to dense zero-based indices in file order;
//   single $Elements block of which only element type 4 (4-node
//   tetrahedron) entries are consumed, everything else is counted and
//   skipped. Unknown sections are skipped wholesale.
//
// Report:
//   one line per element, "e: f1(V) f2(E) ..." with neighbor class codes
//   V/E/F/C; an empty neighbor set renders as "e:". Elements and neighbors
//   ascending. parse_report(render_report(r)) == r.

namespace tetnear {

// Parses native mesh text into a validated Mesh. Errors carry the 1-based
// line: SyntaxError for malformed text, the validate_mesh errors otherwise.
Mesh parse_native(std::string_view text,
                  ValidationMode mode = ValidationMode::Strict,
                  std::size_t* degenerate_count = nullptr);

// Inverse writer; coordinates use "%.17g" so parse_native(render_native(m))
// reproduces m exactly.
std::string render_native(const Mesh& mesh);

struct MshParseResult {
  Mesh mesh;
  std::uint64_t skipped_non_tet = 0;
};

// Parses the MSH 2.2 ASCII subset. Throws UnsupportedVersionError when the
// format header is not "2.2 0 8", SyntaxError / validation errors as
// parse_native.
MshParseResult parse_msh22(std::string_view text,
                           ValidationMode mode = ValidationMode::Strict,
                           std::size_t* degenerate_count = nullptr);

// One report line including the trailing '\n'.
std::string render_report_line(const NeighborReport& report);
void append_report_line(std::string& out, const NeighborReport& report);

// Concatenation of render_report_line over the reports, which should be in
// ascending element order.
std::string render_report(std::span<const NeighborReport> reports);

std::vector<NeighborReport> parse_report(std::string_view text);

// Deterministic random mesh: node coordinates uniform in [0,1)^3, each
// element a uniformly drawn 4-subset of node ids, redrawn while any chosen
// node's running valence would exceed max_valence. A fixed (n_node, n_elem,
// max_valence, seed) always produces the same mesh, on every platform; the
// draw procedure is pinned in the README. Throws GenerationStalledError
// after 1000 consecutive rejected draws, std::invalid_argument when
// n_node < 4 or max_valence < 4.
Mesh generate_random_mesh(std::uint32_t n_node, std::uint32_t n_elem,
                          std::uint32_t max_valence, std::uint64_t seed);

}  // namespace tetnear
