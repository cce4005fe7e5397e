#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string_view>

#include "predprey/dynamics.hpp"
#include "predprey/grid.hpp"
#include "predprey/model.hpp"

namespace predprey {

/// Norms, masses and Lyapunov quantities of one sampled state.
struct DiagnosticsRecord {
  double t = 0.0;
  double mass_u = 0.0;
  double linf_v = 0.0;
  double lp_v2 = 0.0;
  double lp_v4 = 0.0;
  double dist_u_L1 = 0.0;
  double dist_u_L2 = 0.0;
  double dist_v_L1 = 0.0;
  double dist_v_L2 = 0.0;
  double H_u = 0.0;
  double H_v = 0.0;
  double E = 0.0;
  double G = 0.0;
  double ulogu = 0.0;
  double gradv2_over_v = 0.0;
  double gradv4_over_v3 = 0.0;
  double clamped_mass = 0.0;
  std::size_t floored_cells = 0;
};

/// Column names of the diagnostics CSV, in declaration order.
inline constexpr std::array<std::string_view, 18> kDiagnosticsColumns{
    "t",        "mass_u",    "linf_v", "lp_v2", "lp_v4", "dist_u_L1",
    "dist_u_L2", "dist_v_L1", "dist_v_L2", "H_u", "H_v", "E",
    "G",        "ulogu",     "gradv2_over_v", "gradv4_over_v3", "clamped_mass", "floored_cells"};

/// H_xi(eta) = eta - xi - xi log(eta / xi) for xi > 0, H_0(eta) = eta.
double h_xi(double xi, double eta);

/// Integral of H_xi(max(f, u_floor)). Optionally reports how many cells were floored.
double h_integral(double xi, const Field& f, double u_floor, std::size_t* floored = nullptr);

/// E = int H_{u*}(u) + (a/b) int H_{v*}(v) + 2/(b^2 m2_hat) int (v - v*)^2.
double energy_E(const State& s, const SteadyState& ss, const ModelParams& p, double m2_hat,
                double u_floor = 1e-14);

/// G = int |grad u|^2/u^2 + int |grad v|^2/v^2 + int (u - u*)^2 + int (v - v*)^2.
double dissipation_G(const State& s, const SteadyState& ss, double u_floor = 1e-14);

/// Everything record() needs besides the state itself.
struct RecordContext {
  ModelParams params;
  SteadyState steady;
  std::optional<StabilizationCertificate> certificate;
  SchemeConfig scheme;

  /// m2_hat used inside E: the certified value, or m2+ when no certificate exists.
  double energy_m2_hat() const;
};

RecordContext make_record_context(const ModelParams& p, const SchemeConfig& cfg, double v0_sup);

DiagnosticsRecord record(const State& s, const RecordContext& ctx,
                         const RunProgress& progress = {});

struct EnergyDecayTolerances {
  /// Fixed slope tolerance; when empty 1e-6 (1 + |E_k|) / dt_k is used per interval.
  std::optional<double> slope;
  /// Multiplies whichever slope tolerance applies.
  double slope_scale = 1.0;
  double budget = 1e-6;
};

struct EnergyDecayReport {
  std::size_t intervals = 0;          ///< intervals starting at t >= T_E
  std::size_t slope_violations = 0;   ///< (E_{k+1}-E_k)/dt > -delta G_k + tol
  std::size_t monotone_violations = 0;
  double max_slope_violation = 0.0;
  double max_monotone_violation = 0.0;
  double budget_lhs = 0.0;            ///< delta * sum G_k dt_k
  double budget_rhs = 0.0;            ///< E(T_E) - E(end) + tol_budget
  bool budget_ok = true;

  double slope_pass_fraction() const noexcept {
    return intervals == 0 ? 1.0
                          : 1.0 - static_cast<double>(slope_violations) / intervals;
  }
};

/// Compares sampled E and G against dE/dt <= -delta G after the waiting time.
/// Throws InvalidArgument if the certificate carries no delta.
EnergyDecayReport check_energy_decay(std::span<const DiagnosticsRecord> records,
                                     const StabilizationCertificate& cert,
                                     const EnergyDecayTolerances& tol = {});

/// int |f - xi| - int H_xi(f) / (1 - log 2) - sqrt(8 xi |Omega|) (int H_xi(f))^(1/2),
/// evaluated on max(f, u_floor); never positive for exact arithmetic.
double check_h_lower_bound(double xi, const Field& f, double u_floor);

struct BoundsReport {
  double max_prey_excess = 0.0; ///< max over records of linf_v - max(v0_sup, m2+)
  double max_mass_excess = 0.0; ///< max over records of mass_u - mass bound
};

/// Prey sup-norm and predator mass against their a priori bounds.
BoundsReport check_a_priori_bounds(std::span<const DiagnosticsRecord> records,
                                   const ModelParams& p, double v0_sup, double measure);

void write_csv_header(std::ostream& out);
void write_csv_row(std::ostream& out, const DiagnosticsRecord& r);

} // namespace predprey
