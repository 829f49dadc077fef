#pragma once

#include <iosfwd>
#include <string>

#include "model.hpp"

namespace prp {

/// Reads a geometry description in "key = value" form, one pair per line.
/// '#' starts a comment, blank lines are ignored. Recognized keys:
///
///   l0                              base circumradius [m]
///   alpha_a, alpha_b, alpha_c       rail angles [rad]
///   anchor_a_x, anchor_a_y, ...     rail origins (b, c likewise) [m]
///   platform_anchor_x, _y, _z      platform attachment offset [m]
///
/// Every key is optional. Omitted alpha_b / alpha_c default to
/// alpha_a +/- 2*pi/3; omitted anchors default to the equilateral vertex
/// layout scaled by l0. A file that sets nothing but l0 (or nothing at all)
/// reproduces default_geometry(l0) exactly.
///
/// Throws ParseError on malformed lines, unknown keys, or duplicate keys.
RobotGeometry parse_geometry(std::istream& in);

/// parse_geometry on the named file. Throws IoError if unreadable.
RobotGeometry load_geometry(const std::string& path);

}  // namespace prp
