#include "predprey/snapshot.hpp"

#include <fmt/format.h>

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "predprey/errors.hpp"

namespace predprey {

void write_snapshot(std::ostream& out, const Field& field, double time) {
  const Grid& g = field.grid();
  if (g.dim() == 1) {
    out << fmt::format("1 {} {:.17g} {:.17g}\n", g.cells(0), g.length(0), time);
  } else {
    out << fmt::format("2 {} {} {:.17g} {:.17g} {:.17g}\n", g.cells(0), g.cells(1), g.length(0),
                       g.length(1), time);
  }
  std::string line;
  for (int j = 0; j < g.cells(1); ++j) {
    line.clear();
    for (int i = 0; i < g.cells(0); ++i) {
      if (i > 0) line += ' ';
      line += fmt::format("{:.17g}", field[g.index(i, j)]);
    }
    line += '\n';
    out << line;
  }
}

void write_snapshot(const std::filesystem::path& path, const Field& field, double time) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open snapshot file for writing: " + path.string());
  write_snapshot(out, field, time);
}

Snapshot read_snapshot(std::istream& in) {
  std::string header;
  if (!std::getline(in, header)) throw Error("snapshot: missing header line");
  std::istringstream hs(header);
  int dim = 0;
  hs >> dim;
  std::array<int, 2> cells{0, 1};
  std::array<double, 2> length{0.0, 1.0};
  double time = 0.0;
  if (dim == 1) {
    hs >> cells[0] >> length[0] >> time;
  } else if (dim == 2) {
    hs >> cells[0] >> cells[1] >> length[0] >> length[1] >> time;
  } else {
    throw Error("snapshot: dimension must be 1 or 2");
  }
  if (hs.fail()) throw Error("snapshot: malformed header '" + header + "'");

  const Grid grid(dim, cells, length);
  std::vector<double> values;
  values.reserve(grid.cell_count());
  double x = 0.0;
  while (in >> x) values.push_back(x);
  if (values.size() != grid.cell_count()) {
    throw Error("snapshot: expected " + std::to_string(grid.cell_count()) + " values, got " +
                std::to_string(values.size()));
  }
  return {Field(grid, std::move(values)), time};
}

Snapshot read_snapshot(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open snapshot file: " + path.string());
  return read_snapshot(in);
}

} // namespace predprey
