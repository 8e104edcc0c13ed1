#pragma once

#include <iosfwd>
#include <string>

#include "degen/geometry.hpp"

namespace degen {

/// Formats a double as the shortest decimal that parses back bit-identically
/// (never more than 17 significant digits).
std::string format_double(double value);

/// Writes one point per line, coordinates separated by single spaces, using
/// shortest round-trip decimals. Lines starting with '#' are comments.
void write_xyz(std::ostream& out, const PointCloud& cloud);
void write_xyz_file(const std::string& path, const PointCloud& cloud);

/// Parses a point file; every non-comment line must carry the same number
/// of finite coordinates. Reports 1-based line numbers on malformed input.
PointCloud read_xyz(std::istream& in);
PointCloud read_xyz_file(const std::string& path);

}  // namespace degen
