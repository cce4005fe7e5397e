#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "predprey/errors.hpp"
#include "predprey/grid.hpp"

using namespace predprey;

namespace {

Field random_field(const Grid& g, std::mt19937_64& rng, double lo = 0.1, double hi = 3.0) {
  std::uniform_real_distribution<double> dist(lo, hi);
  Field f(g);
  for (double& x : f.values()) x = dist(rng);
  return f;
}

} // namespace

TEST(Grid, RejectsInvalidShapes) {
  EXPECT_THROW(Grid(3, {8, 8}, {1, 1}), InvalidArgument);
  EXPECT_THROW(Grid::line(3, 1.0), InvalidArgument);
  EXPECT_THROW(Grid::square(8, 0.0), InvalidArgument);
  EXPECT_THROW(Grid(2, {8, 2}, {1, 1}), InvalidArgument);
}

TEST(Grid, Geometry) {
  const Grid g(2, {8, 4}, {2.0, 1.0});
  EXPECT_EQ(g.cell_count(), 32u);
  EXPECT_DOUBLE_EQ(g.spacing(0), 0.25);
  EXPECT_DOUBLE_EQ(g.spacing(1), 0.25);
  EXPECT_DOUBLE_EQ(g.measure(), 2.0);
  EXPECT_DOUBLE_EQ(g.center(0, 0), 0.125);
  EXPECT_EQ(g.index(3, 2), 19u);
  EXPECT_EQ(g.face_count(0), 9u * 4u);
  EXPECT_EQ(g.face_count(1), 8u * 5u);
}

TEST(Integrate, ConstantGivesMeasure) {
  for (int n : {4, 7, 32}) {
    EXPECT_NEAR(integrate(Field(Grid::square(n, 1.0), 1.0)), 1.0, 1e-14);
    EXPECT_NEAR(integrate(Field(Grid::line(n, 3.0), 2.5)), 7.5, 1e-13);
  }
}

TEST(Integrate, IsLinear) {
  std::mt19937_64 rng(1);
  const Grid g = Grid::square(12, 2.0);
  const Field f = random_field(g, rng);
  const Field h = random_field(g, rng);
  EXPECT_NEAR(integrate(f + h), integrate(f) + integrate(h), 1e-12);
  EXPECT_NEAR(integrate(3.0 * f), 3.0 * integrate(f), 1e-12);
}

TEST(FaceGradient, BoundaryFacesCarryZero) {
  std::mt19937_64 rng(2);
  const Grid g = Grid::square(6, 1.0);
  const FaceField grad = face_gradient(random_field(g, rng));
  for (int j = 0; j < 6; ++j) {
    EXPECT_EQ(grad.axis[0][static_cast<std::size_t>(j * 7)], 0.0);
    EXPECT_EQ(grad.axis[0][static_cast<std::size_t>(j * 7 + 6)], 0.0);
  }
  for (int i = 0; i < 6; ++i) {
    EXPECT_EQ(grad.axis[1][static_cast<std::size_t>(i)], 0.0);
    EXPECT_EQ(grad.axis[1][static_cast<std::size_t>(6 * 6 + i)], 0.0);
  }
}

TEST(FaceGradient, LinearProfileIsExactInside) {
  const Grid g = Grid::line(10, 2.0);
  const Field f = Field::from_function(g, [](double x, double) { return 3.0 * x - 1.0; });
  const FaceField grad = face_gradient(f);
  for (int i = 1; i < 10; ++i) EXPECT_NEAR(grad.axis[0][static_cast<std::size_t>(i)], 3.0, 1e-12);
}

TEST(Divergence, TelescopesToZeroWithZeroBoundaryFlux) {
  std::mt19937_64 rng(4);
  for (const Grid& g : {Grid::line(9, 1.7), Grid(2, {5, 11}, {1.0, 2.0})}) {
    FaceField flux = FaceField::zeros(g);
    std::normal_distribution<double> n01;
    for (int axis = 0; axis < g.dim(); ++axis) {
      for (double& x : flux.axis[static_cast<std::size_t>(axis)]) x = n01(rng);
    }
    // Zero the boundary faces so nothing leaves the domain.
    const int n0 = g.cells(0);
    for (int j = 0; j < g.cells(1); ++j) {
      flux.axis[0][static_cast<std::size_t>(j * (n0 + 1))] = 0.0;
      flux.axis[0][static_cast<std::size_t>(j * (n0 + 1) + n0)] = 0.0;
    }
    if (g.dim() == 2) {
      for (int i = 0; i < n0; ++i) {
        flux.axis[1][static_cast<std::size_t>(i)] = 0.0;
        flux.axis[1][static_cast<std::size_t>(g.cells(1) * n0 + i)] = 0.0;
      }
    }
    EXPECT_NEAR(integrate(divergence(g, flux)), 0.0, 1e-12);
  }
}

TEST(Laplacian, ConstantsAreInTheKernel) {
  const Field lap = laplacian_neumann(Field(Grid::square(8, 3.0), 4.2));
  for (double x : lap.values()) EXPECT_EQ(x, 0.0);
}

TEST(Laplacian, CosineModeIsAnEigenvector) {
  // The discrete Neumann Laplacian maps cos(k pi x / L) to
  // -(4 / h^2) sin^2(k pi h / (2 L)) times itself.
  const int n = 16;
  const double L = 2.0;
  const Grid g = Grid::line(n, L);
  const double w = std::numbers::pi / L;
  const Field f = Field::from_function(g, [&](double x, double) { return std::cos(w * x); });
  const Field lap = laplacian_neumann(f);
  const double h = g.spacing(0);
  const double lambda = -4.0 / (h * h) * std::pow(std::sin(w * h / 2.0), 2);
  for (std::size_t k = 0; k < f.size(); ++k) EXPECT_NEAR(lap[k], lambda * f[k], 1e-12);
}

TEST(Laplacian, IsSymmetric) {
  std::mt19937_64 rng(5);
  const Grid g = Grid(2, {6, 9}, {1.0, 1.5});
  const Field f = random_field(g, rng);
  const Field h = random_field(g, rng);
  double a = 0.0, b = 0.0;
  const Field lf = laplacian_neumann(f);
  const Field lh = laplacian_neumann(h);
  for (std::size_t k = 0; k < f.size(); ++k) {
    a += lf[k] * h[k];
    b += f[k] * lh[k];
  }
  EXPECT_NEAR(a, b, 1e-10 * std::abs(a));
}

TEST(CellGradientSq, ExponentialRampConvergesAtFirstOrder) {
  // For u = e^x on [0, 1], int |u'|^2 / u^2 = 1. The boundary cells see one
  // zero face gradient each, so the discrete value is off by O(h).
  auto error = [](int n) {
    const Grid g = Grid::line(n, 1.0);
    const Field u = Field::from_function(g, [](double x, double) { return std::exp(x); });
    const Field gsq = cell_gradient_sq(u);
    double sum = 0.0;
    for (std::size_t k = 0; k < u.size(); ++k) sum += gsq[k] / (u[k] * u[k]);
    return std::abs(sum * g.cell_volume() - 1.0);
  };
  const double e1 = error(64);
  const double e2 = error(128);
  EXPECT_LT(e1, 0.02);
  EXPECT_NEAR(e1 / e2, 2.0, 0.1);
}

TEST(Field, ArithmeticChecksShape) {
  Field a(Grid::line(4, 1.0), 1.0);
  const Field b(Grid::line(5, 1.0), 1.0);
  EXPECT_THROW(a += b, InvalidArgument);
  EXPECT_THROW(Field(Grid::line(4, 1.0), std::vector<double>(3, 0.0)), InvalidArgument);
}
