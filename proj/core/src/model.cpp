#include "predprey/model.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "predprey/errors.hpp"

namespace predprey {

namespace {

void require_positive(double value, const char* name) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw InvalidArgument(std::string(name) + " must be finite and > 0, got " +
                          std::to_string(value));
  }
}

// Right-hand side of the stabilization inequality for a given prey level m.
double stabilization_bound(const ModelParams& p, const SteadyState& ss, double m) {
  return (4.0 * p.d1 * p.d2 / (p.b * m * ss.u_star)) * (p.a * ss.v_star / m + 4.0 / p.b);
}

} // namespace

void ModelParams::validate() const {
  require_positive(d1, "d1");
  require_positive(d2, "d2");
  require_positive(m1, "m1");
  require_positive(chi, "chi");
  require_positive(a, "a");
  require_positive(b, "b");
  if (!std::isfinite(m2)) throw InvalidArgument("m2 must be finite");
  if (!(eps >= 0.0) || !std::isfinite(eps)) {
    throw InvalidArgument("eps must be finite and >= 0, got " + std::to_string(eps));
  }
}

const char* to_string(Regime regime) noexcept {
  switch (regime) {
  case Regime::Coexistence: return "coexistence";
  case Regime::PreyExtinction: return "prey_extinction";
  }
  return "unknown";
}

SteadyState steady_states(const ModelParams& p) {
  p.validate();
  if (p.m2 - p.b * p.m1 >= 0.0) {
    const double denom = p.a * p.b + 1.0;
    return {(p.m1 + p.a * p.m2) / denom, (p.m2 - p.b * p.m1) / denom, Regime::Coexistence};
  }
  return {p.m1, 0.0, Regime::PreyExtinction};
}

StabilizationCertificate check_stabilization_condition(const ModelParams& p) {
  const SteadyState ss = steady_states(p);
  StabilizationCertificate cert;
  cert.chi_sq = p.chi * p.chi;
  const double m2p = p.m2_plus();
  if (m2p == 0.0) {
    cert.threshold = std::numeric_limits<double>::infinity();
    cert.holds = true;
    return cert;
  }
  cert.threshold = stabilization_bound(p, ss, m2p);
  cert.holds = cert.chi_sq < cert.threshold;
  return cert;
}

bool m2_hat_admissible(const ModelParams& p, const SteadyState& ss, double m2_hat) {
  if (!(m2_hat > p.m2_plus())) return false;
  return p.chi * p.chi < stabilization_bound(p, ss, m2_hat);
}

DeltaConstraints check_delta_constraints(const ModelParams& p, const SteadyState& ss,
                                         double m2_hat, double delta) {
  DeltaConstraints c;
  c.below_benefit_ratio = delta <= p.a / p.b;
  c.leaves_prey_margin = (1.0 - delta) * m2_hat > p.m2_plus();

  const double reduced_d1 = p.d1 - delta / ss.u_star;
  const double second_factor =
      p.a * ss.v_star / m2_hat + 4.0 / p.b - delta * p.b / (p.d2 * m2_hat);
  if (reduced_d1 > 0.0 && second_factor > 0.0) {
    const double gradient_coeff = p.chi * p.chi * ss.u_star / (4.0 * reduced_d1) -
                                  4.0 * p.d2 / (p.b * p.b * m2_hat);
    const double lhs = gradient_coeff * m2_hat * m2_hat - p.d2 * ss.v_star * p.a / p.b;
    c.dissipation_balance = lhs < -delta;
  }
  return c;
}

StabilizationCertificate certify(const ModelParams& p, double v0_sup) {
  StabilizationCertificate cert = check_stabilization_condition(p);
  if (!cert.holds) {
    throw ConditionViolated("chi^2 = " + std::to_string(cert.chi_sq) +
                            " is not below the stabilization threshold " +
                            std::to_string(cert.threshold));
  }
  if (!(v0_sup >= 0.0) || !std::isfinite(v0_sup)) {
    throw InvalidArgument("v0_sup must be finite and >= 0");
  }
  const SteadyState ss = steady_states(p);
  const double m2p = p.m2_plus();

  // Supremum of admissible m2_hat: the bound decreases in m, so expand an
  // upper bracket geometrically, then bisect.
  double lo = m2p;
  double step = m2p > 0.0 ? m2p : 1.0;
  double hi = m2p + step;
  while (m2_hat_admissible(p, ss, hi)) {
    lo = hi;
    step *= 2.0;
    hi = m2p + step;
    if (!std::isfinite(hi)) throw Degenerate("admissible m2_hat range is unbounded");
  }
  while (hi - lo > 1e-13 * hi) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= m2p || m2_hat_admissible(p, ss, mid)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double m2_hat = 0.5 * (m2p + lo);

  // Largest delta in (0, a/b] satisfying all three constraints. The feasible
  // set is an interval starting at zero, so bisection applies.
  double d_lo = 0.0;
  double d_hi = p.a / p.b;
  if (check_delta_constraints(p, ss, m2_hat, d_hi).all()) {
    d_lo = d_hi;
  } else {
    while (d_hi - d_lo > 1e-9 * d_hi) {
      const double mid = 0.5 * (d_lo + d_hi);
      if (check_delta_constraints(p, ss, m2_hat, mid).all()) {
        d_lo = mid;
      } else {
        d_hi = mid;
      }
    }
  }
  const double delta = 0.99 * d_lo;
  if (!(delta > 0.0) || !check_delta_constraints(p, ss, m2_hat, delta).all()) {
    throw Degenerate("no positive delta satisfies the energy constraints");
  }

  cert.m2_hat = m2_hat;
  cert.delta = delta;
  cert.waiting_time = waiting_time((1.0 - delta) * m2_hat, p, v0_sup);
  return cert;
}

double logistic_comparison(double v0_sup, double m2, double t) {
  if (!(v0_sup > 0.0) || !std::isfinite(v0_sup)) {
    throw InvalidArgument("logistic_comparison requires v0_sup > 0");
  }
  if (!(t >= 0.0)) throw InvalidArgument("logistic_comparison requires t >= 0");
  if (m2 == 0.0) return 1.0 / (1.0 / v0_sup + t);

  const double growth = std::exp(-m2 * t);
  if (std::isinf(growth)) return 0.0; // m2 < 0: y decays to zero
  const double denom = 1.0 / m2 + (1.0 / v0_sup - 1.0 / m2) * growth;
  if (!(denom > 0.0) || !std::isfinite(denom)) {
    throw Degenerate("logistic comparison denominator is non-positive at t = " +
                     std::to_string(t));
  }
  return 1.0 / denom;
}

double waiting_time(double m, const ModelParams& p, double v0_sup) {
  const double m2p = p.m2_plus();
  if (!(m > m2p)) {
    throw InvalidTarget("waiting time target " + std::to_string(m) +
                        " must exceed max(0, m2) = " + std::to_string(m2p));
  }
  if (v0_sup <= m) return 0.0;
  if (p.m2 == 0.0) return 1.0 / m - 1.0 / v0_sup;
  // 1/m = 1/m2 + (1/v0 - 1/m2) exp(-m2 T); both brackets share a sign here.
  const double ratio = (1.0 / m - 1.0 / p.m2) / (1.0 / v0_sup - 1.0 / p.m2);
  return -std::log(ratio) / p.m2;
}

} // namespace predprey
