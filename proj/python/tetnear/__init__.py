# Copyright 2026 The tetnear Authors.
# SPDX-License-Identifier: Apache-2.0

"""Node-to-element incidence and near-element queries for tetrahedral meshes."""

from ._tetnear import (
    BuildStrategy,
    Error,
    IncidenceMap,
    Mesh,
    Nearness,
    NeighborReport,
    __version__,
    all_near,
    brute_force_near,
    brute_force_near_classified,
    build_incidence,
    classify_nearness,
    generate_random_mesh,
    naive_incidence,
    near_elements,
    near_elements_classified,
    parse_msh22,
    parse_native,
    parse_report,
    render_native,
    render_report,
    render_report_line,
    shared_vertex_count,
)

__all__ = [
    "BuildStrategy",
    "Error",
    "IncidenceMap",
    "Mesh",
    "Nearness",
    "NeighborReport",
    "__version__",
    "all_near",
    "brute_force_near",
    "brute_force_near_classified",
    "build_incidence",
    "classify_nearness",
    "generate_random_mesh",
    "naive_incidence",
    "near_elements",
    "near_elements_classified",
    "parse_msh22",
    "parse_native",
    "parse_report",
    "render_native",
    "render_report",
    "render_report_line",
    "shared_vertex_count",
]
