#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

namespace predprey {

/// Uniform cell-centered mesh on [0, L1] (1D) or [0, L1] x [0, L2] (2D).
/// Boundaries are zero-flux: ghost cells mirror their interior neighbour,
/// so every boundary face carries a zero gradient.
class Grid {
public:
  Grid() = default;
  /// Throws InvalidArgument for dim outside {1,2}, fewer than 4 cells per axis
  /// or a non-positive length.
  Grid(int dim, std::array<int, 2> cells, std::array<double, 2> length);

  static Grid line(int cells, double length);
  static Grid square(int cells, double length);

  int dim() const noexcept { return dim_; }
  int cells(int axis) const noexcept { return cells_[axis]; }
  double length(int axis) const noexcept { return length_[axis]; }
  double spacing(int axis) const noexcept { return spacing_[axis]; }
  double min_spacing() const noexcept;

  std::size_t cell_count() const noexcept {
    return static_cast<std::size_t>(cells_[0]) * static_cast<std::size_t>(cells_[1]);
  }
  double cell_volume() const noexcept;
  double measure() const noexcept;

  /// Linear index of cell (i, j); j is always 0 on 1D grids.
  std::size_t index(int i, int j = 0) const noexcept {
    return static_cast<std::size_t>(j) * static_cast<std::size_t>(cells_[0]) +
           static_cast<std::size_t>(i);
  }
  double center(int axis, int i) const noexcept { return (i + 0.5) * spacing_[axis]; }

  /// Number of faces normal to `axis`, boundary faces included.
  std::size_t face_count(int axis) const noexcept;

  friend bool operator==(const Grid&, const Grid&) = default;

private:
  int dim_ = 1;
  std::array<int, 2> cells_{4, 1};
  std::array<double, 2> length_{1.0, 1.0};
  std::array<double, 2> spacing_{0.25, 1.0};
};

/// One value per cell of a grid, stored row-major (x fastest).
class Field {
public:
  Field() = default;
  explicit Field(const Grid& grid, double value = 0.0);
  Field(const Grid& grid, std::vector<double> values);

  template <class Fn>
  static Field from_function(const Grid& grid, Fn&& fn) {
    Field f(grid);
    for (int j = 0; j < grid.cells(1); ++j) {
      for (int i = 0; i < grid.cells(0); ++i) {
        const double y = grid.dim() == 2 ? grid.center(1, j) : 0.0;
        f[grid.index(i, j)] = fn(grid.center(0, i), y);
      }
    }
    return f;
  }

  const Grid& grid() const noexcept { return grid_; }
  std::size_t size() const noexcept { return values_.size(); }
  double& operator[](std::size_t k) noexcept { return values_[k]; }
  double operator[](std::size_t k) const noexcept { return values_[k]; }
  std::span<double> values() noexcept { return values_; }
  std::span<const double> values() const noexcept { return values_; }

  double max() const;
  double min() const;
  bool all_finite() const noexcept;

  Field& operator+=(const Field& other);
  Field& operator-=(const Field& other);
  Field& operator*=(double s) noexcept;

private:
  Grid grid_;
  std::vector<double> values_;
};

Field operator+(Field lhs, const Field& rhs);
Field operator-(Field lhs, const Field& rhs);
Field operator*(double s, Field f);

/// Values on the faces normal to each axis. Axis-0 faces of row j are stored
/// at j * (n0 + 1) + i (face i sits between cells i-1 and i); axis-1 faces at
/// j * n0 + i (between rows j-1 and j). Positive values point along +axis.
struct FaceField {
  std::array<std::vector<double>, 2> axis;

  static FaceField zeros(const Grid& grid);
};

/// h^dim times the sum of cell values.
double integrate(const Field& f);

/// Cell difference quotients on interior faces, zero on boundary faces.
FaceField face_gradient(const Field& f);

/// Per-cell (right face - left face) / h, summed over axes.
Field divergence(const Grid& grid, const FaceField& flux);

Field laplacian_neumann(const Field& f);

/// Per axis, the mean of the two squared adjacent face gradients, summed over axes.
Field cell_gradient_sq(const Field& f);

} // namespace predprey
