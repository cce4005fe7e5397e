#include "predprey/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "predprey/errors.hpp"

namespace predprey {

Grid::Grid(int dim, std::array<int, 2> cells, std::array<double, 2> length) : dim_(dim) {
  if (dim != 1 && dim != 2) throw InvalidArgument("grid dim must be 1 or 2");
  for (int axis = 0; axis < dim; ++axis) {
    if (cells[axis] < 4) {
      throw InvalidArgument("grid needs at least 4 cells per axis, got " +
                            std::to_string(cells[axis]));
    }
    if (!(length[axis] > 0.0) || !std::isfinite(length[axis])) {
      throw InvalidArgument("grid length must be finite and > 0");
    }
  }
  if (dim == 1) {
    cells[1] = 1;
    length[1] = 1.0;
  }
  cells_ = cells;
  length_ = length;
  for (int axis = 0; axis < 2; ++axis) spacing_[axis] = length_[axis] / cells_[axis];
}

Grid Grid::line(int cells, double length) { return Grid(1, {cells, 1}, {length, 1.0}); }

Grid Grid::square(int cells, double length) {
  return Grid(2, {cells, cells}, {length, length});
}

double Grid::min_spacing() const noexcept {
  return dim_ == 1 ? spacing_[0] : std::min(spacing_[0], spacing_[1]);
}

double Grid::cell_volume() const noexcept {
  return dim_ == 1 ? spacing_[0] : spacing_[0] * spacing_[1];
}

double Grid::measure() const noexcept {
  return dim_ == 1 ? length_[0] : length_[0] * length_[1];
}

std::size_t Grid::face_count(int axis) const noexcept {
  if (axis >= dim_) return 0;
  const auto n0 = static_cast<std::size_t>(cells_[0]);
  const auto n1 = static_cast<std::size_t>(cells_[1]);
  return axis == 0 ? (n0 + 1) * n1 : n0 * (n1 + 1);
}

Field::Field(const Grid& grid, double value) : grid_(grid), values_(grid.cell_count(), value) {}

Field::Field(const Grid& grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.cell_count()) {
    throw InvalidArgument("field value count does not match the grid cell count");
  }
}

double Field::max() const { return *std::max_element(values_.begin(), values_.end()); }
double Field::min() const { return *std::min_element(values_.begin(), values_.end()); }

bool Field::all_finite() const noexcept {
  return std::all_of(values_.begin(), values_.end(), [](double x) { return std::isfinite(x); });
}

Field& Field::operator+=(const Field& other) {
  if (other.size() != size()) throw InvalidArgument("field size mismatch");
  for (std::size_t k = 0; k < values_.size(); ++k) values_[k] += other.values_[k];
  return *this;
}

Field& Field::operator-=(const Field& other) {
  if (other.size() != size()) throw InvalidArgument("field size mismatch");
  for (std::size_t k = 0; k < values_.size(); ++k) values_[k] -= other.values_[k];
  return *this;
}

Field& Field::operator*=(double s) noexcept {
  for (double& x : values_) x *= s;
  return *this;
}

Field operator+(Field lhs, const Field& rhs) { return lhs += rhs; }
Field operator-(Field lhs, const Field& rhs) { return lhs -= rhs; }
Field operator*(double s, Field f) { return f *= s; }

FaceField FaceField::zeros(const Grid& grid) {
  FaceField ff;
  for (int axis = 0; axis < grid.dim(); ++axis) ff.axis[axis].assign(grid.face_count(axis), 0.0);
  return ff;
}

double integrate(const Field& f) {
  double sum = 0.0;
  for (double x : f.values()) sum += x;
  return sum * f.grid().cell_volume();
}

FaceField face_gradient(const Field& f) {
  const Grid& g = f.grid();
  FaceField grad = FaceField::zeros(g);
  const int n0 = g.cells(0);
  const int n1 = g.cells(1);

  const double inv_h0 = 1.0 / g.spacing(0);
  for (int j = 0; j < n1; ++j) {
    double* row = grad.axis[0].data() + static_cast<std::size_t>(j) * (n0 + 1);
    for (int i = 1; i < n0; ++i) row[i] = (f[g.index(i, j)] - f[g.index(i - 1, j)]) * inv_h0;
  }
  if (g.dim() == 2) {
    const double inv_h1 = 1.0 / g.spacing(1);
    for (int j = 1; j < n1; ++j) {
      for (int i = 0; i < n0; ++i) {
        grad.axis[1][static_cast<std::size_t>(j) * n0 + i] =
            (f[g.index(i, j)] - f[g.index(i, j - 1)]) * inv_h1;
      }
    }
  }
  return grad;
}

Field divergence(const Grid& g, const FaceField& flux) {
  Field out(g);
  const int n0 = g.cells(0);
  const int n1 = g.cells(1);
  if (flux.axis[0].size() != g.face_count(0) ||
      (g.dim() == 2 && flux.axis[1].size() != g.face_count(1))) {
    throw InvalidArgument("face field does not match the grid");
  }

  const double inv_h0 = 1.0 / g.spacing(0);
  for (int j = 0; j < n1; ++j) {
    const double* row = flux.axis[0].data() + static_cast<std::size_t>(j) * (n0 + 1);
    for (int i = 0; i < n0; ++i) out[g.index(i, j)] = (row[i + 1] - row[i]) * inv_h0;
  }
  if (g.dim() == 2) {
    const double inv_h1 = 1.0 / g.spacing(1);
    const auto& fy = flux.axis[1];
    for (int j = 0; j < n1; ++j) {
      for (int i = 0; i < n0; ++i) {
        const std::size_t below = static_cast<std::size_t>(j) * n0 + i;
        out[g.index(i, j)] += (fy[below + n0] - fy[below]) * inv_h1;
      }
    }
  }
  return out;
}

Field laplacian_neumann(const Field& f) { return divergence(f.grid(), face_gradient(f)); }

Field cell_gradient_sq(const Field& f) {
  const Grid& g = f.grid();
  const FaceField grad = face_gradient(f);
  Field out(g);
  const int n0 = g.cells(0);
  const int n1 = g.cells(1);
  for (int j = 0; j < n1; ++j) {
    const double* row = grad.axis[0].data() + static_cast<std::size_t>(j) * (n0 + 1);
    for (int i = 0; i < n0; ++i) {
      out[g.index(i, j)] = 0.5 * (row[i] * row[i] + row[i + 1] * row[i + 1]);
    }
  }
  if (g.dim() == 2) {
    const auto& gy = grad.axis[1];
    for (int j = 0; j < n1; ++j) {
      for (int i = 0; i < n0; ++i) {
        const std::size_t below = static_cast<std::size_t>(j) * n0 + i;
        const double lo = gy[below];
        const double hi = gy[below + n0];
        out[g.index(i, j)] += 0.5 * (lo * lo + hi * hi);
      }
    }
  }
  return out;
}

} // namespace predprey
