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

#include "tetnear/io.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <limits>
#include <string>
#include <unordered_map>

#include "tetnear/rng.hpp"

namespace tetnear {

namespace {

constexpr std::uint64_t kU32Max = std::numeric_limits<std::uint32_t>::max();

// Hands out physical lines one at a time; line_no is 1-based and counts
// every line, so error positions match what an editor shows. A single
// trailing '\r' is tolerated on input; output is always LF.
struct Scanner {
  std::string_view text;
  std::size_t pos = 0;
  std::size_t line_no = 0;

  bool next_line(std::string_view& line) {
    if (pos >= text.size()) return false;
    const std::size_t nl = text.find('\n', pos);
    const std::size_t end = nl == std::string_view::npos ? text.size() : nl;
    line = text.substr(pos, end - pos);
    pos = nl == std::string_view::npos ? text.size() : nl + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    return true;
  }
};

bool is_space(char c) { return c == ' ' || c == '\t'; }

bool is_blank(std::string_view line) {
  for (char c : line) {
    if (!is_space(c)) return false;
  }
  return true;
}

bool is_comment(std::string_view line) {
  for (char c : line) {
    if (is_space(c)) continue;
    return c == '#';
  }
  return false;
}

void tokenize(std::string_view line, std::vector<std::string_view>& out) {
  out.clear();
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && is_space(line[i])) ++i;
    const std::size_t start = i;
    while (i < line.size() && !is_space(line[i])) ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
}

std::uint64_t parse_u64(std::string_view tok, std::size_t line, const char* what) {
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
    throw SyntaxError(line, std::string(what) + " \"" + std::string(tok) +
                                "\" is not a non-negative integer");
  }
  return value;
}

double parse_f64(std::string_view tok, std::size_t line, const char* what) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec == std::errc::result_out_of_range) {
    throw SyntaxError(line, std::string(what) + " \"" + std::string(tok) +
                                "\" is out of double range");
  }
  if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
    throw SyntaxError(line, std::string(what) + " \"" + std::string(tok) +
                                "\" is not a real number");
  }
  return value;
}

// Runs validate_mesh and rewrites node/element-level errors with the source
// line they came from.
Mesh validate_with_lines(std::vector<Node> nodes, std::vector<Element> elements,
                         const std::vector<std::size_t>& node_lines,
                         const std::vector<std::size_t>& elem_lines,
                         ValidationMode mode, std::size_t* degenerate_count) {
  const std::size_t n_node = nodes.size();
  try {
    return validate_mesh(std::move(nodes), std::move(elements), mode,
                         degenerate_count);
  } catch (const NonFiniteCoordinateError& err) {
    throw NonFiniteCoordinateError(err.node, node_lines[err.node]);
  } catch (const DegenerateElementError& err) {
    throw DegenerateElementError(err.elem, elem_lines[err.elem]);
  } catch (const IndexOutOfRangeError& err) {
    throw IndexOutOfRangeError(err.elem, err.slot, err.index, n_node,
                               elem_lines[err.elem]);
  }
}

void append_u32(std::string& out, std::uint32_t value) {
  char buf[12];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  out.append(buf, res.ptr);
}

// "%.17g"-style text, but via to_chars so the decimal point survives any
// host locale.
void append_f64(std::string& out, double value) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value,
                                 std::chars_format::general, 17);
  out.append(buf, res.ptr);
}

}  // namespace

Mesh parse_native(std::string_view text, ValidationMode mode,
                  std::size_t* degenerate_count) {
  Scanner sc{text};
  std::vector<std::string_view> toks;
  std::string_view line;

  auto next_content = [&]() -> bool {
    while (sc.next_line(line)) {
      if (is_blank(line) || is_comment(line)) continue;
      return true;
    }
    return false;
  };

  if (!next_content()) {
    throw SyntaxError(sc.line_no == 0 ? 1 : sc.line_no,
                      "missing header line \"N_node N_elem\"");
  }
  tokenize(line, toks);
  if (toks.size() != 2) {
    throw SyntaxError(sc.line_no, "header line must be exactly \"N_node N_elem\"");
  }
  const std::uint64_t n_node = parse_u64(toks[0], sc.line_no, "node count");
  const std::uint64_t n_elem = parse_u64(toks[1], sc.line_no, "element count");
  if (n_node > kU32Max || n_elem > kU32Max) {
    throw SyntaxError(sc.line_no, "mesh dimensions exceed the 32-bit index range");
  }

  std::vector<Node> nodes;
  nodes.reserve(n_node);
  std::vector<std::size_t> node_lines;
  node_lines.reserve(n_node);
  for (std::uint64_t i = 0; i < n_node; ++i) {
    if (!next_content()) {
      throw SyntaxError(sc.line_no + 1, "unexpected end of input: expected " +
                                            std::to_string(n_node) +
                                            " coordinate lines");
    }
    tokenize(line, toks);
    if (toks.size() != 3) {
      throw SyntaxError(sc.line_no, "coordinate line must have exactly 3 tokens \"x y z\"");
    }
    nodes.push_back(Node{parse_f64(toks[0], sc.line_no, "coordinate"),
                         parse_f64(toks[1], sc.line_no, "coordinate"),
                         parse_f64(toks[2], sc.line_no, "coordinate")});
    node_lines.push_back(sc.line_no);
  }

  std::vector<Element> elements;
  elements.reserve(n_elem);
  std::vector<std::size_t> elem_lines;
  elem_lines.reserve(n_elem);
  for (std::uint64_t e = 0; e < n_elem; ++e) {
    if (!next_content()) {
      throw SyntaxError(sc.line_no + 1, "unexpected end of input: expected " +
                                            std::to_string(n_elem) +
                                            " element lines");
    }
    tokenize(line, toks);
    if (toks.size() != 4) {
      throw SyntaxError(sc.line_no, "element line must have exactly 4 tokens \"j0 j1 j2 j3\"");
    }
    Element el{};
    for (int slot = 0; slot < 4; ++slot) {
      const std::uint64_t j = parse_u64(toks[slot], sc.line_no, "node index");
      if (j >= n_node) {
        throw IndexOutOfRangeError(e, slot, j, n_node, sc.line_no);
      }
      el[slot] = static_cast<NodeId>(j);
    }
    elements.push_back(el);
    elem_lines.push_back(sc.line_no);
  }

  if (next_content()) {
    throw SyntaxError(sc.line_no, "unexpected content after the last element line");
  }

  return validate_with_lines(std::move(nodes), std::move(elements), node_lines,
                             elem_lines, mode, degenerate_count);
}

std::string render_native(const Mesh& mesh) {
  std::string out;
  out.reserve(16 + 30 * static_cast<std::size_t>(mesh.n_node()) +
              24 * static_cast<std::size_t>(mesh.n_elem()));
  append_u32(out, mesh.n_node());
  out += ' ';
  append_u32(out, mesh.n_elem());
  out += '\n';
  for (const Node& p : mesh.nodes()) {
    append_f64(out, p.x);
    out += ' ';
    append_f64(out, p.y);
    out += ' ';
    append_f64(out, p.z);
    out += '\n';
  }
  for (const Element& el : mesh.elements()) {
    append_u32(out, el[0]);
    out += ' ';
    append_u32(out, el[1]);
    out += ' ';
    append_u32(out, el[2]);
    out += ' ';
    append_u32(out, el[3]);
    out += '\n';
  }
  return out;
}

MshParseResult parse_msh22(std::string_view text, ValidationMode mode,
                           std::size_t* degenerate_count) {
  Scanner sc{text};
  std::vector<std::string_view> toks;
  std::string_view line;

  auto next_content = [&]() -> bool {
    while (sc.next_line(line)) {
      if (is_blank(line)) continue;
      return true;
    }
    return false;
  };
  auto expect_marker = [&](std::string_view marker) {
    if (!next_content()) {
      throw SyntaxError(sc.line_no + 1, "unexpected end of input: expected " +
                                            std::string(marker));
    }
    tokenize(line, toks);
    if (toks.size() != 1 || toks[0] != marker) {
      throw SyntaxError(sc.line_no, "expected " + std::string(marker));
    }
  };

  expect_marker("$MeshFormat");
  if (!next_content()) {
    throw SyntaxError(sc.line_no + 1, "unexpected end of input: expected format header");
  }
  tokenize(line, toks);
  if (toks.size() != 3 || toks[0] != "2.2" || toks[1] != "0" || toks[2] != "8") {
    throw UnsupportedVersionError(std::string(line));
  }
  expect_marker("$EndMeshFormat");

  std::vector<Node> nodes;
  std::vector<std::size_t> node_lines;
  std::unordered_map<std::uint64_t, NodeId> id_map;
  std::vector<Element> elements;
  std::vector<std::size_t> elem_lines;
  std::uint64_t skipped = 0;
  bool saw_nodes = false;
  bool saw_elements = false;

  while (next_content()) {
    tokenize(line, toks);
    if (toks.size() != 1 || toks[0].empty() || toks[0][0] != '$') {
      throw SyntaxError(sc.line_no, "expected a section marker such as $Nodes");
    }
    const std::string section(toks[0]);

    if (section == "$Nodes") {
      if (saw_nodes) throw SyntaxError(sc.line_no, "duplicate $Nodes section");
      saw_nodes = true;
      if (!next_content()) {
        throw SyntaxError(sc.line_no + 1, "unexpected end of input: expected node count");
      }
      tokenize(line, toks);
      if (toks.size() != 1) throw SyntaxError(sc.line_no, "expected the node count alone on a line");
      const std::uint64_t count = parse_u64(toks[0], sc.line_no, "node count");
      if (count > kU32Max) throw SyntaxError(sc.line_no, "node count exceeds the 32-bit index range");
      nodes.reserve(count);
      node_lines.reserve(count);
      id_map.reserve(count);
      for (std::uint64_t i = 0; i < count; ++i) {
        if (!next_content()) {
          throw SyntaxError(sc.line_no + 1, "unexpected end of input inside $Nodes");
        }
        tokenize(line, toks);
        if (toks.size() != 4) {
          throw SyntaxError(sc.line_no, "node line must have exactly 4 tokens \"id x y z\"");
        }
        const std::uint64_t id = parse_u64(toks[0], sc.line_no, "node id");
        if (!id_map.emplace(id, static_cast<NodeId>(nodes.size())).second) {
          throw SyntaxError(sc.line_no, "duplicate node id " + std::to_string(id));
        }
        nodes.push_back(Node{parse_f64(toks[1], sc.line_no, "coordinate"),
                             parse_f64(toks[2], sc.line_no, "coordinate"),
                             parse_f64(toks[3], sc.line_no, "coordinate")});
        node_lines.push_back(sc.line_no);
      }
      expect_marker("$EndNodes");
    } else if (section == "$Elements") {
      if (saw_elements) throw SyntaxError(sc.line_no, "duplicate $Elements section");
      saw_elements = true;
      if (!next_content()) {
        throw SyntaxError(sc.line_no + 1, "unexpected end of input: expected element count");
      }
      tokenize(line, toks);
      if (toks.size() != 1) throw SyntaxError(sc.line_no, "expected the element count alone on a line");
      const std::uint64_t count = parse_u64(toks[0], sc.line_no, "element count");
      for (std::uint64_t i = 0; i < count; ++i) {
        if (!next_content()) {
          throw SyntaxError(sc.line_no + 1, "unexpected end of input inside $Elements");
        }
        tokenize(line, toks);
        if (toks.size() < 3) {
          throw SyntaxError(sc.line_no, "element line must start with \"id type ntags\"");
        }
        const std::uint64_t type = parse_u64(toks[1], sc.line_no, "element type");
        if (type != 4) {
          ++skipped;
          continue;
        }
        const std::uint64_t ntags = parse_u64(toks[2], sc.line_no, "tag count");
        if (toks.size() != 3 + ntags + 4) {
          throw SyntaxError(sc.line_no,
                            "tetrahedron line must have exactly 3 + ntags + 4 tokens");
        }
        Element el{};
        for (int slot = 0; slot < 4; ++slot) {
          const std::uint64_t id =
              parse_u64(toks[3 + ntags + slot], sc.line_no, "node id");
          const auto it = id_map.find(id);
          if (it == id_map.end()) {
            throw SyntaxError(sc.line_no,
                              "element references unknown node id " + std::to_string(id));
          }
          el[slot] = it->second;
        }
        elements.push_back(el);
        elem_lines.push_back(sc.line_no);
      }
      expect_marker("$EndElements");
      if (elements.size() > kU32Max) {
        throw SyntaxError(sc.line_no, "element count exceeds the 32-bit index range");
      }
    } else {
      // Skip an unrecognized section up to its matching end marker.
      const std::string end_marker = "$End" + section.substr(1);
      for (;;) {
        if (!sc.next_line(line)) {
          throw SyntaxError(sc.line_no + 1, "unterminated section " + section);
        }
        tokenize(line, toks);
        if (toks.size() == 1 && toks[0] == end_marker) break;
      }
    }
  }

  MshParseResult result;
  result.mesh = validate_with_lines(std::move(nodes), std::move(elements),
                                    node_lines, elem_lines, mode,
                                    degenerate_count);
  result.skipped_non_tet = skipped;
  return result;
}

void append_report_line(std::string& out, const NeighborReport& report) {
  append_u32(out, report.elem);
  out += ':';
  for (const auto& [f, nearness] : report.neighbors) {
    out += ' ';
    append_u32(out, f);
    out += '(';
    out += nearness_code(nearness);
    out += ')';
  }
  out += '\n';
}

std::string render_report_line(const NeighborReport& report) {
  std::string out;
  append_report_line(out, report);
  return out;
}

std::string render_report(std::span<const NeighborReport> reports) {
  std::string out;
  for (const NeighborReport& r : reports) append_report_line(out, r);
  return out;
}

std::vector<NeighborReport> parse_report(std::string_view text) {
  Scanner sc{text};
  std::vector<std::string_view> toks;
  std::string_view line;
  std::vector<NeighborReport> reports;

  while (sc.next_line(line)) {
    const std::size_t colon = line.find(':');
    if (colon == std::string_view::npos) {
      throw SyntaxError(sc.line_no, "report line is missing ':'");
    }
    NeighborReport report;
    const std::uint64_t elem = parse_u64(line.substr(0, colon), sc.line_no, "element id");
    if (elem > kU32Max) throw SyntaxError(sc.line_no, "element id exceeds the 32-bit range");
    report.elem = static_cast<ElemId>(elem);

    tokenize(line.substr(colon + 1), toks);
    report.neighbors.reserve(toks.size());
    for (std::string_view tok : toks) {
      // "<id>(<code>)"
      if (tok.size() < 4 || tok.back() != ')' || tok[tok.size() - 3] != '(') {
        throw SyntaxError(sc.line_no, "malformed neighbor token \"" + std::string(tok) + "\"");
      }
      const std::uint64_t f =
          parse_u64(tok.substr(0, tok.size() - 3), sc.line_no, "neighbor id");
      if (f > kU32Max) throw SyntaxError(sc.line_no, "neighbor id exceeds the 32-bit range");
      const auto nearness = nearness_from_code(tok[tok.size() - 2]);
      if (!nearness) {
        throw SyntaxError(sc.line_no, "unknown neighbor class code in \"" + std::string(tok) + "\"");
      }
      report.neighbors.emplace_back(static_cast<ElemId>(f), *nearness);
    }
    reports.push_back(std::move(report));
  }
  return reports;
}

Mesh generate_random_mesh(std::uint32_t n_node, std::uint32_t n_elem,
                          std::uint32_t max_valence, std::uint64_t seed) {
  if (n_node < 4) throw std::invalid_argument("generate_random_mesh: n_node must be >= 4");
  if (max_valence < 4) throw std::invalid_argument("generate_random_mesh: max_valence must be >= 4");

  Xoshiro256StarStar rng(seed);

  std::vector<Node> nodes;
  nodes.reserve(n_node);
  for (std::uint32_t i = 0; i < n_node; ++i) {
    const double x = rng.next_unit_double();
    const double y = rng.next_unit_double();
    const double z = rng.next_unit_double();
    nodes.push_back(Node{x, y, z});
  }

  std::vector<Element> elements;
  elements.reserve(n_elem);
  std::vector<std::uint32_t> valence(n_node, 0);
  for (std::uint32_t e = 0; e < n_elem; ++e) {
    unsigned stalled = 0;
    for (;;) {
      // Draw 4 distinct node ids; duplicates within the tuple are simply
      // redrawn and do not count toward the stall limit.
      Element el{};
      for (int slot = 0; slot < 4;) {
        const auto j = static_cast<NodeId>(rng.next_below(n_node));
        bool repeat = false;
        for (int i = 0; i < slot; ++i) repeat = repeat || el[i] == j;
        if (repeat) continue;
        el[slot++] = j;
      }
      bool fits = true;
      for (NodeId j : el) fits = fits && valence[j] < max_valence;
      if (fits) {
        for (NodeId j : el) ++valence[j];
        elements.push_back(el);
        break;
      }
      if (++stalled == 1000) throw GenerationStalledError(e);
    }
  }

  return validate_mesh(std::move(nodes), std::move(elements));
}

}  // namespace tetnear
