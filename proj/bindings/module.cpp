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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "tetnear/incidence.hpp"
#include "tetnear/io.hpp"
#include "tetnear/mesh.hpp"
#include "tetnear/oracle.hpp"

namespace py = pybind11;
using namespace tetnear;

namespace {

Mesh make_mesh(const std::vector<std::array<double, 3>>& coords,
               const std::vector<std::array<std::uint32_t, 4>>& elements,
               bool permissive) {
  std::vector<Node> nodes;
  nodes.reserve(coords.size());
  for (const auto& c : coords) nodes.push_back(Node{c[0], c[1], c[2]});
  std::vector<Element> elems;
  elems.reserve(elements.size());
  for (const auto& e : elements) elems.push_back(Element{e[0], e[1], e[2], e[3]});
  return validate_mesh(std::move(nodes), std::move(elems),
                       permissive ? ValidationMode::Permissive
                                  : ValidationMode::Strict);
}

}  // namespace

PYBIND11_MODULE(_tetnear, m) {
  m.doc() = "Node-to-element incidence and near-element queries for tetrahedral meshes";
  m.attr("__version__") = TETNEAR_VERSION;

  py::register_exception<Error>(m, "Error");

  py::enum_<Nearness>(m, "Nearness")
      .value("NotNear", Nearness::NotNear)
      .value("VertexNear", Nearness::VertexNear)
      .value("EdgeNear", Nearness::EdgeNear)
      .value("FaceNear", Nearness::FaceNear)
      .value("Coincident", Nearness::Coincident);

  py::enum_<BuildStrategy>(m, "BuildStrategy")
      .value("Serial", BuildStrategy::Serial)
      .value("LockedParallel", BuildStrategy::LockedParallel)
      .value("CountingSortParallel", BuildStrategy::CountingSortParallel);

  py::class_<Mesh>(m, "Mesh")
      .def(py::init(&make_mesh), py::arg("nodes"), py::arg("elements"),
           py::arg("permissive") = false,
           "Validate node coordinates and 4-tuples of node indices")
      .def_property_readonly("n_node", &Mesh::n_node)
      .def_property_readonly("n_elem", &Mesh::n_elem)
      .def_property_readonly("nodes",
                             [](const Mesh& mesh) {
                               std::vector<std::array<double, 3>> out;
                               out.reserve(mesh.n_node());
                               for (const Node& p : mesh.nodes()) {
                                 out.push_back({p.x, p.y, p.z});
                               }
                               return out;
                             })
      .def_property_readonly("elements",
                             [](const Mesh& mesh) {
                               return std::vector<Element>(
                                   mesh.elements().begin(), mesh.elements().end());
                             })
      .def("element",
           [](const Mesh& mesh, std::uint64_t e) {
             if (e >= mesh.n_elem()) throw ElemOutOfRangeError(e, mesh.n_elem());
             return mesh.element(static_cast<ElemId>(e));
           },
           py::arg("e"))
      .def("__eq__", [](const Mesh& a, const Mesh& b) { return a == b; },
           py::is_operator())
      .def("__repr__", [](const Mesh& mesh) {
        return "Mesh(n_node=" + std::to_string(mesh.n_node()) +
               ", n_elem=" + std::to_string(mesh.n_elem()) + ")";
      });

  py::class_<IncidenceMap>(m, "IncidenceMap")
      .def_property_readonly("n_node", &IncidenceMap::n_node)
      .def_property_readonly("n_elem", &IncidenceMap::n_elem)
      .def_property_readonly("entry_count", &IncidenceMap::entry_count)
      .def_property_readonly("offsets",
                             [](const IncidenceMap& inc) {
                               return std::vector<std::uint32_t>(
                                   inc.offsets().begin(), inc.offsets().end());
                             })
      .def_property_readonly("elem_ids",
                             [](const IncidenceMap& inc) {
                               return std::vector<ElemId>(
                                   inc.elem_ids().begin(), inc.elem_ids().end());
                             })
      .def("elements_of",
           [](const IncidenceMap& inc, std::uint64_t j) {
             if (j >= inc.n_node()) throw NodeOutOfRangeError(j, inc.n_node());
             const auto slice = inc.elements_of(static_cast<NodeId>(j));
             return std::vector<ElemId>(slice.begin(), slice.end());
           },
           py::arg("j"), "Sorted ids of the elements containing node j")
      .def("__eq__",
           [](const IncidenceMap& a, const IncidenceMap& b) { return a == b; },
           py::is_operator());

  py::class_<NeighborReport>(m, "NeighborReport")
      .def_readonly("elem", &NeighborReport::elem)
      .def_readonly("neighbors", &NeighborReport::neighbors)
      .def("__eq__",
           [](const NeighborReport& a, const NeighborReport& b) { return a == b; },
           py::is_operator())
      .def("__repr__", [](const NeighborReport& r) {
        return "NeighborReport(elem=" + std::to_string(r.elem) + ", " +
               std::to_string(r.neighbors.size()) + " neighbors)";
      });

  m.def("shared_vertex_count",
        [](const Mesh& mesh, std::uint64_t e, std::uint64_t f) {
          if (e >= mesh.n_elem()) throw ElemOutOfRangeError(e, mesh.n_elem());
          if (f >= mesh.n_elem()) throw ElemOutOfRangeError(f, mesh.n_elem());
          return shared_vertex_count(mesh.element(static_cast<ElemId>(e)),
                                     mesh.element(static_cast<ElemId>(f)));
        },
        py::arg("mesh"), py::arg("e"), py::arg("f"),
        "Number of distinct vertices elements e and f share");
  m.def("classify_nearness", &classify_nearness, py::arg("shared"));

  m.def("build_incidence", &build_incidence, py::arg("mesh"),
        py::arg("strategy") = BuildStrategy::CountingSortParallel,
        py::arg("threads") = 1, py::arg("lock_stripes") = 1024,
        py::call_guard<py::gil_scoped_release>(),
        "Build the node-to-element incidence map");
  m.def("near_elements", &near_elements, py::arg("inc"), py::arg("mesh"),
        py::arg("e"));
  m.def("near_elements_classified", &near_elements_classified, py::arg("inc"),
        py::arg("mesh"), py::arg("e"));
  m.def("all_near", &all_near, py::arg("inc"), py::arg("mesh"),
        py::call_guard<py::gil_scoped_release>(),
        "NeighborReport for every element, ascending");

  m.def("parse_native",
        [](const std::string& text, bool permissive) {
          return parse_native(text, permissive ? ValidationMode::Permissive
                                               : ValidationMode::Strict);
        },
        py::arg("text"), py::arg("permissive") = false);
  m.def("render_native", &render_native, py::arg("mesh"));
  m.def("parse_msh22",
        [](const std::string& text, bool permissive) {
          auto result = parse_msh22(text, permissive ? ValidationMode::Permissive
                                                     : ValidationMode::Strict);
          return py::make_tuple(std::move(result.mesh), result.skipped_non_tet);
        },
        py::arg("text"), py::arg("permissive") = false,
        "Returns (mesh, skipped_non_tet_count)");
  m.def("render_report",
        [](const std::vector<NeighborReport>& reports) {
          return render_report(reports);
        },
        py::arg("reports"));
  m.def("render_report_line", &render_report_line, py::arg("report"));
  m.def("parse_report",
        [](const std::string& text) { return parse_report(text); },
        py::arg("text"));
  m.def("generate_random_mesh", &generate_random_mesh, py::arg("n_node"),
        py::arg("n_elem"), py::arg("max_valence"), py::arg("seed"),
        py::call_guard<py::gil_scoped_release>());

  m.def("brute_force_near", &oracle::brute_force_near, py::arg("mesh"),
        py::arg("e"), "Quadratic reference scan, for verification");
  m.def("brute_force_near_classified", &oracle::brute_force_near_classified,
        py::arg("mesh"), py::arg("e"));
  m.def("naive_incidence", &oracle::naive_incidence, py::arg("mesh"),
        "List-of-lists reference build, for verification");
}
