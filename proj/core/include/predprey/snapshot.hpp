#pragma once

#include <filesystem>
#include <iosfwd>

#include "predprey/grid.hpp"

namespace predprey {

/// Plain-text field snapshot. Header line: `dim n1 [n2] length1 [length2] t`,
/// then one row of space-separated cell values per grid line (one row in 1D,
/// n2 rows of n1 values in 2D), 17 significant digits.
struct Snapshot {
  Field field;
  double time = 0.0;
};

void write_snapshot(std::ostream& out, const Field& field, double time);
void write_snapshot(const std::filesystem::path& path, const Field& field, double time);

/// Throws Error on malformed input.
Snapshot read_snapshot(std::istream& in);
Snapshot read_snapshot(const std::filesystem::path& path);

} // namespace predprey
