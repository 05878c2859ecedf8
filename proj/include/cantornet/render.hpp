// Copyright (c) CantorNet contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>

namespace cantor {

// SVG emission is the one lossy path in the project: exact breakpoints are
// converted to 9-digit decimals at output time. All output is deterministic
// for fixed arguments.

/// The decision curve as a polyline with the inset shaded.
std::string render_boundary_svg(int k);

/// Cells colored by the hash of their activation pattern under the
/// recursion net; `cells` caps the raster resolution per axis.
std::string render_tessellation_svg(int k, int cells = 243);

/// Boundary plus the three lines of every dent drawn across its span.
std::string render_dnf_lines_svg(int k);

}  // namespace cantor
