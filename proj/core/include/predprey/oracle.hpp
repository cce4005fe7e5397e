#pragma once

#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "predprey/dynamics.hpp"
#include "predprey/model.hpp"

namespace predprey::oracle {

/// Kinetic system u' = u (m1 - u + a v), v' = v (m2 - b u - v) sampled at
/// the accepted steps of the integrator (first entry at t = 0).
struct OdeTrajectory {
  std::vector<double> times;
  std::vector<double> u;
  std::vector<double> v;
};

/// Dormand-Prince 5(4) with local error control. Shares no stepping code
/// with the PDE solver.
OdeTrajectory homogeneous_ode(double u0, double v0, const ModelParams& p, double t_end,
                              double rel_tol = 1e-10);

/// Same integrator, with steps shortened to land exactly on each requested
/// output time (which must be non-decreasing and >= 0).
OdeTrajectory homogeneous_ode_at(double u0, double v0, const ModelParams& p,
                                 std::span<const double> times, double rel_tol = 1e-10);

/// Max-norm error at time t of a pure-diffusion run on [0, 1] started from
/// cos(k pi x), against the exact e^{-d (k pi)^2 t} cos(k pi x).
/// `operator_sign` multiplies the discrete Laplacian; it exists so the
/// acceptance suite can plant a sign fault.
double heat_eigenmode_error(int n_cells, int k, double d, double t, double operator_sign = 1.0);

/// Least-squares slope of log(error) against log(h). Throws DegenerateInput
/// when an error is exactly zero and InvalidArgument for fewer than two pairs
/// or non-positive entries.
double refinement_order(std::span<const std::pair<double, double>> h_and_error);

using InitialProfile = std::function<std::pair<double, double>(double x)>;

/// 1D refinement study of the full nonlinear solver: runs each n in `cells`
/// and a reference run with `reference_cells`, and returns (h, L1 error) of u
/// and v combined, measured against cell averages of the reference.
std::vector<std::pair<double, double>>
solver_refinement_errors(const ModelParams& p, const SchemeConfig& cfg,
                         std::span<const int> cells, int reference_cells, double length,
                         double t_end, const InitialProfile& initial);

} // namespace predprey::oracle
