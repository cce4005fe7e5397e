#pragma once

#include <optional>

namespace predprey {

/// Constants of the predator-prey system with attractive transitional flux.
///
///   u_t = div((d1 + chi v) grad u) - chi div(F(u) grad v) + u (m1 - u + a v)
///   v_t = d2 lap v + v (m2 - b u - v)
///
/// with F(u) = u when eps == 0 and F(u) = u / (1 + eps u) otherwise.
struct ModelParams {
  double d1 = 1.0;
  double d2 = 1.0;
  double m1 = 1.0;
  double m2 = 2.0;
  double chi = 1.0;
  double a = 1.0;
  double b = 1.0;
  double eps = 0.0;

  /// Throws InvalidArgument unless d1, d2, m1, chi, a, b > 0, eps >= 0 and all are finite.
  void validate() const;

  double m2_plus() const noexcept { return m2 > 0.0 ? m2 : 0.0; }
};

enum class Regime { Coexistence, PreyExtinction };

const char* to_string(Regime regime) noexcept;

struct SteadyState {
  double u_star = 0.0;
  double v_star = 0.0;
  Regime regime = Regime::Coexistence;
};

/// Constant steady state selected by the sign of m2 - b m1 (ties go to coexistence).
SteadyState steady_states(const ModelParams& p);

/// Outcome of the sufficient stabilization test and, when certified, the
/// constructive constants of the energy inequality dE/dt <= -delta G.
struct StabilizationCertificate {
  bool holds = false;
  double chi_sq = 0.0;
  double threshold = 0.0; ///< +inf when m2+ == 0
  std::optional<double> m2_hat;
  std::optional<double> delta;
  std::optional<double> waiting_time;
};

StabilizationCertificate check_stabilization_condition(const ModelParams& p);

/// Chooses m2_hat and delta and computes the waiting time T_E for a given
/// initial prey sup-norm. Throws ConditionViolated if the condition fails.
StabilizationCertificate certify(const ModelParams& p, double v0_sup);

/// Evaluates the three constraints delta has to satisfy for a given m2_hat.
/// Each member is true when the corresponding inequality holds strictly
/// (the first one non-strictly).
struct DeltaConstraints {
  bool below_benefit_ratio = false;  ///< delta <= a / b
  bool leaves_prey_margin = false;   ///< (1 - delta) m2_hat > m2+
  bool dissipation_balance = false;  ///< rearranged gradient/entropy balance, positive factors
  bool all() const noexcept {
    return below_benefit_ratio && leaves_prey_margin && dissipation_balance;
  }
};

DeltaConstraints check_delta_constraints(const ModelParams& p, const SteadyState& ss,
                                         double m2_hat, double delta);

/// True when m2_hat keeps the stabilization inequality strict.
bool m2_hat_admissible(const ModelParams& p, const SteadyState& ss, double m2_hat);

/// Taxis mobility F(u) = u (eps == 0) or u / (1 + eps u).
inline double taxis_mobility(double u, double eps) noexcept {
  return eps == 0.0 ? u : u / (1.0 + eps * u);
}

/// Solution of y' = y (m2 - y), y(0) = v0_sup, bounding the prey from above.
double logistic_comparison(double v0_sup, double m2, double t);

/// Smallest T >= 0 after which logistic_comparison(v0_sup, p.m2, .) stays <= m.
/// Throws InvalidTarget when m <= m2+.
double waiting_time(double m, const ModelParams& p, double v0_sup);

} // namespace predprey
