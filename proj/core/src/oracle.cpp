#include "predprey/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <initializer_list>
#include <limits>
#include <numbers>
#include <string>

#include "predprey/errors.hpp"
#include "predprey/grid.hpp"

namespace predprey::oracle {

namespace {

using Vec2 = std::array<double, 2>;

Vec2 kinetics(const ModelParams& p, const Vec2& y) {
  return {y[0] * (p.m1 - y[0] + p.a * y[1]), y[1] * (p.m2 - p.b * y[0] - y[1])};
}

// Dormand-Prince tableau.
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

struct Attempt {
  Vec2 y;
  double err; // scaled error norm; accept when <= 1
};

Attempt dopri_step(const ModelParams& p, const Vec2& y, double h, double rel_tol) {
  auto axpy = [](const Vec2& base, std::initializer_list<std::pair<double, const Vec2*>> terms,
                 double h) {
    Vec2 out = base;
    for (const auto& [c, k] : terms) {
      out[0] += h * c * (*k)[0];
      out[1] += h * c * (*k)[1];
    }
    return out;
  };
  const Vec2 k1 = kinetics(p, y);
  const Vec2 k2 = kinetics(p, axpy(y, {{a21, &k1}}, h));
  const Vec2 k3 = kinetics(p, axpy(y, {{a31, &k1}, {a32, &k2}}, h));
  const Vec2 k4 = kinetics(p, axpy(y, {{a41, &k1}, {a42, &k2}, {a43, &k3}}, h));
  const Vec2 k5 = kinetics(p, axpy(y, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}, h));
  const Vec2 k6 =
      kinetics(p, axpy(y, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}}, h));
  const Vec2 y5 = axpy(y, {{b1, &k1}, {b3, &k3}, {b4, &k4}, {b5, &k5}, {b6, &k6}}, h);
  const Vec2 k7 = kinetics(p, y5);

  double err = 0.0;
  for (int i = 0; i < 2; ++i) {
    const double e =
        h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
    // Mixed scale: relative for O(1) values, absolute floor for components near zero.
    const double scale = rel_tol * std::max({std::abs(y[i]), std::abs(y5[i]), 1e-12});
    err = std::max(err, std::abs(e) / scale);
  }
  return {y5, err};
}

// Integrates from t to t_target, adapting h in place; pushes accepted steps when `all` is set.
void advance(const ModelParams& p, Vec2& y, double& t, double t_target, double& h,
             double rel_tol, OdeTrajectory* all) {
  constexpr double kMinStep = 1e-14;
  while (t < t_target) {
    const bool last = t + h >= t_target;
    const double step = last ? t_target - t : h;
    const Attempt a = dopri_step(p, y, step, rel_tol);
    if (a.err <= 1.0) {
      y = a.y;
      t = last ? t_target : t + step;
      if (all) {
        all->times.push_back(t);
        all->u.push_back(y[0]);
        all->v.push_back(y[1]);
      }
    }
    const double factor =
        a.err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(a.err, -0.2), 0.2, 5.0);
    if (!(last && a.err <= 1.0)) h = std::max(step * factor, kMinStep);
  }
}

void check_initial(double u0, double v0) {
  if (!(u0 >= 0.0) || !(v0 >= 0.0)) throw InvalidArgument("ODE initial data must be >= 0");
}

} // namespace

OdeTrajectory homogeneous_ode(double u0, double v0, const ModelParams& p, double t_end,
                              double rel_tol) {
  p.validate();
  check_initial(u0, v0);
  if (!(t_end >= 0.0)) throw InvalidArgument("t_end must be >= 0");
  OdeTrajectory traj{{0.0}, {u0}, {v0}};
  Vec2 y{u0, v0};
  double t = 0.0;
  double h = std::min(1e-3, std::max(t_end, 1e-12));
  advance(p, y, t, t_end, h, rel_tol, &traj);
  return traj;
}

OdeTrajectory homogeneous_ode_at(double u0, double v0, const ModelParams& p,
                                 std::span<const double> times, double rel_tol) {
  p.validate();
  check_initial(u0, v0);
  OdeTrajectory traj;
  Vec2 y{u0, v0};
  double t = 0.0;
  double h = 1e-3;
  for (double target : times) {
    if (target < t) throw InvalidArgument("output times must be non-decreasing and >= 0");
    advance(p, y, t, target, h, rel_tol, nullptr);
    traj.times.push_back(target);
    traj.u.push_back(y[0]);
    traj.v.push_back(y[1]);
  }
  return traj;
}

double heat_eigenmode_error(int n_cells, int k, double d, double t, double operator_sign) {
  if (k < 0) throw InvalidArgument("mode index must be >= 0");
  if (!(t > 0.0) || !(d > 0.0)) throw InvalidArgument("heat eigenmode needs t > 0 and d > 0");
  const Grid grid = Grid::line(n_cells, 1.0);
  const double wave = k * std::numbers::pi;
  Field f = Field::from_function(grid, [&](double x, double) { return std::cos(wave * x); });

  // Classical RK4 with a step well inside its diffusive stability region.
  const double h = grid.spacing(0);
  const auto steps = static_cast<long>(std::ceil(t / (0.2 * h * h / d)));
  const double dt = t / static_cast<double>(steps);
  auto op = [&](const Field& g) { return (operator_sign * d) * laplacian_neumann(g); };
  for (long s = 0; s < steps; ++s) {
    const Field k1 = op(f);
    const Field k2 = op(f + (0.5 * dt) * k1);
    const Field k3 = op(f + (0.5 * dt) * k2);
    const Field k4 = op(f + dt * k3);
    for (std::size_t i = 0; i < f.size(); ++i) {
      f[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    if (!f.all_finite()) return std::numeric_limits<double>::infinity();
  }

  const double decay = std::exp(-d * wave * wave * t);
  double err = 0.0;
  for (int i = 0; i < n_cells; ++i) {
    const double exact = decay * std::cos(wave * grid.center(0, i));
    err = std::max(err, std::abs(f[grid.index(i)] - exact));
  }
  return err;
}

double refinement_order(std::span<const std::pair<double, double>> h_and_error) {
  if (h_and_error.size() < 2) throw InvalidArgument("refinement order needs >= 2 pairs");
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (const auto& [h, e] : h_and_error) {
    if (e == 0.0) throw DegenerateInput("error is exactly zero: discretization is exact");
    if (!(h > 0.0) || !(e > 0.0) || !std::isfinite(e)) {
      throw InvalidArgument("refinement order needs positive finite h and error");
    }
    const double x = std::log(h);
    const double y = std::log(e);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const auto n = static_cast<double>(h_and_error.size());
  const double denom = n * sxx - sx * sx;
  if (denom == 0.0) throw InvalidArgument("refinement order needs distinct spacings");
  return (n * sxy - sx * sy) / denom;
}

std::vector<std::pair<double, double>>
solver_refinement_errors(const ModelParams& p, const SchemeConfig& cfg,
                         std::span<const int> cells, int reference_cells, double length,
                         double t_end, const InitialProfile& initial) {
  auto run = [&](int n) {
    const Grid grid = Grid::line(n, length);
    State s{Field(grid), Field(grid), 0.0};
    for (int i = 0; i < n; ++i) {
      const auto [u, v] = initial(grid.center(0, i));
      s.u[grid.index(i)] = u;
      s.v[grid.index(i)] = v;
    }
    return run_to_time(s, p, cfg, t_end, t_end, {});
  };

  const State ref = run(reference_cells);
  std::vector<std::pair<double, double>> out;
  for (int n : cells) {
    if (reference_cells % n != 0) {
      throw InvalidArgument("reference resolution must be a multiple of every coarse resolution");
    }
    const int ratio = reference_cells / n;
    const State coarse = run(n);
    double err = 0.0;
    for (int i = 0; i < n; ++i) {
      double u_avg = 0.0, v_avg = 0.0;
      for (int r = 0; r < ratio; ++r) {
        u_avg += ref.u[static_cast<std::size_t>(i * ratio + r)];
        v_avg += ref.v[static_cast<std::size_t>(i * ratio + r)];
      }
      u_avg /= ratio;
      v_avg /= ratio;
      err += std::abs(coarse.u[static_cast<std::size_t>(i)] - u_avg) +
             std::abs(coarse.v[static_cast<std::size_t>(i)] - v_avg);
    }
    out.emplace_back(length / n, err * length / n);
  }
  return out;
}

} // namespace predprey::oracle
