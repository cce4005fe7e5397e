#include "predprey/diagnostics.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include "predprey/errors.hpp"

namespace predprey {

namespace {

// r - 1 - log(r) without cancellation near r = 1.
double relative_entropy_kernel(double r) {
  const double z = r - 1.0;
  if (std::abs(z) < 0.1) {
    // z - log(1 + z) = sum_{k>=2} (-1)^k z^k / k
    double term = z * z;
    double sum = 0.0;
    for (int k = 2; k < 20; ++k) {
      sum += (k % 2 == 0 ? term : -term) / k;
      term *= z;
    }
    return sum;
  }
  return z - std::log(r);
}

double floored(double x, double floor, std::size_t& count) {
  if (x < floor) {
    ++count;
    return floor;
  }
  return x;
}

} // namespace

double h_xi(double xi, double eta) {
  if (xi == 0.0) return eta;
  return std::max(0.0, xi * relative_entropy_kernel(eta / xi));
}

double h_integral(double xi, const Field& f, double u_floor, std::size_t* floored_count) {
  std::size_t count = 0;
  double sum = 0.0;
  for (double x : f.values()) sum += h_xi(xi, floored(x, u_floor, count));
  if (floored_count) *floored_count = count;
  return sum * f.grid().cell_volume();
}

double energy_E(const State& s, const SteadyState& ss, const ModelParams& p, double m2_hat,
                double u_floor) {
  double quad = 0.0;
  for (double v : s.v.values()) quad += (v - ss.v_star) * (v - ss.v_star);
  quad *= s.v.grid().cell_volume();
  return h_integral(ss.u_star, s.u, u_floor) + (p.a / p.b) * h_integral(ss.v_star, s.v, u_floor) +
         2.0 / (p.b * p.b * m2_hat) * quad;
}

double dissipation_G(const State& s, const SteadyState& ss, double u_floor) {
  const Field gu = cell_gradient_sq(s.u);
  const Field gv = cell_gradient_sq(s.v);
  std::size_t ignored = 0;
  double sum = 0.0;
  for (std::size_t k = 0; k < s.u.size(); ++k) {
    const double u = floored(s.u[k], u_floor, ignored);
    const double v = floored(s.v[k], u_floor, ignored);
    const double du = s.u[k] - ss.u_star;
    const double dv = s.v[k] - ss.v_star;
    sum += gu[k] / (u * u) + gv[k] / (v * v) + du * du + dv * dv;
  }
  return sum * s.u.grid().cell_volume();
}

double RecordContext::energy_m2_hat() const {
  if (certificate && certificate->m2_hat) return *certificate->m2_hat;
  return params.m2_plus();
}

RecordContext make_record_context(const ModelParams& p, const SchemeConfig& cfg, double v0_sup) {
  RecordContext ctx{p, steady_states(p), std::nullopt, cfg};
  if (check_stabilization_condition(p).holds) ctx.certificate = certify(p, v0_sup);
  return ctx;
}

DiagnosticsRecord record(const State& s, const RecordContext& ctx, const RunProgress& progress) {
  const ModelParams& p = ctx.params;
  const SteadyState& ss = ctx.steady;
  const double floor = ctx.scheme.u_floor;
  const double vol = s.u.grid().cell_volume();
  const Field gv = cell_gradient_sq(s.v);

  DiagnosticsRecord r;
  r.t = s.t;
  r.linf_v = s.v.max();
  r.clamped_mass = progress.clamped_mass;

  double v2 = 0.0, v4 = 0.0, du1 = 0.0, du2 = 0.0, dv1 = 0.0, dv2 = 0.0;
  double ulogu = 0.0, gv2 = 0.0, gv4 = 0.0, mass = 0.0;
  std::size_t floored_cells = 0;
  for (std::size_t k = 0; k < s.u.size(); ++k) {
    const double u = s.u[k];
    const double v = s.v[k];
    mass += u;
    v2 += v * v;
    v4 += v * v * v * v;
    du1 += std::abs(u - ss.u_star);
    du2 += (u - ss.u_star) * (u - ss.u_star);
    dv1 += std::abs(v - ss.v_star);
    dv2 += (v - ss.v_star) * (v - ss.v_star);
    const double uf = floored(u, floor, floored_cells);
    const double vf = floored(v, floor, floored_cells);
    ulogu += uf * std::log(uf);
    gv2 += gv[k] / vf;
    gv4 += gv[k] * gv[k] / (vf * vf * vf);
  }
  r.mass_u = mass * vol;
  r.lp_v2 = std::sqrt(v2 * vol);
  r.lp_v4 = std::pow(v4 * vol, 0.25);
  r.dist_u_L1 = du1 * vol;
  r.dist_u_L2 = std::sqrt(du2 * vol);
  r.dist_v_L1 = dv1 * vol;
  r.dist_v_L2 = std::sqrt(dv2 * vol);
  r.ulogu = ulogu * vol;
  r.gradv2_over_v = gv2 * vol;
  r.gradv4_over_v3 = gv4 * vol;
  r.floored_cells = floored_cells;

  r.H_u = h_integral(ss.u_star, s.u, floor);
  r.H_v = h_integral(ss.v_star, s.v, floor);
  r.E = energy_E(s, ss, p, ctx.energy_m2_hat(), floor);
  r.G = dissipation_G(s, ss, floor);
  return r;
}

EnergyDecayReport check_energy_decay(std::span<const DiagnosticsRecord> records,
                                     const StabilizationCertificate& cert,
                                     const EnergyDecayTolerances& tol) {
  if (!cert.delta) throw InvalidArgument("energy decay check needs a certified delta");
  const double delta = *cert.delta;
  const double t_wait = cert.waiting_time.value_or(0.0);

  EnergyDecayReport rep;
  std::size_t first = records.size();
  for (std::size_t k = 0; k < records.size(); ++k) {
    if (records[k].t >= t_wait) {
      first = k;
      break;
    }
  }
  if (first + 1 >= records.size()) return rep;

  for (std::size_t k = first; k + 1 < records.size(); ++k) {
    const DiagnosticsRecord& r0 = records[k];
    const DiagnosticsRecord& r1 = records[k + 1];
    const double dt = r1.t - r0.t;
    if (!(dt > 0.0)) throw InvalidArgument("records must have strictly increasing times");
    const double slope_tol =
        tol.slope_scale * tol.slope.value_or(1e-6 * (1.0 + std::abs(r0.E)) / dt);
    const double slope = (r1.E - r0.E) / dt;

    ++rep.intervals;
    const double excess = slope + delta * r0.G - slope_tol;
    if (excess > 0.0) {
      ++rep.slope_violations;
      rep.max_slope_violation = std::max(rep.max_slope_violation, excess);
    }
    const double rise = (r1.E - r0.E) - slope_tol * dt;
    if (rise > 0.0) {
      ++rep.monotone_violations;
      rep.max_monotone_violation = std::max(rep.max_monotone_violation, rise);
    }
    rep.budget_lhs += delta * r0.G * dt;
  }
  rep.budget_rhs = records[first].E - records.back().E + tol.budget;
  rep.budget_ok = rep.budget_lhs <= rep.budget_rhs;
  return rep;
}

double check_h_lower_bound(double xi, const Field& f, double u_floor) {
  std::size_t ignored = 0;
  double l1 = 0.0;
  double h = 0.0;
  for (double x : f.values()) {
    const double y = floored(x, u_floor, ignored);
    l1 += std::abs(y - xi);
    h += h_xi(xi, y);
  }
  const double vol = f.grid().cell_volume();
  l1 *= vol;
  h *= vol;
  return l1 - h / (1.0 - std::log(2.0)) - std::sqrt(8.0 * xi * f.grid().measure()) * std::sqrt(h);
}

BoundsReport check_a_priori_bounds(std::span<const DiagnosticsRecord> records,
                                   const ModelParams& p, double v0_sup, double measure) {
  BoundsReport rep;
  if (records.empty()) return rep;
  const double prey_cap = std::max(v0_sup, p.m2_plus());
  const double mass_cap = std::max(records.front().mass_u, (p.m1 + p.a * prey_cap) * measure);
  rep.max_prey_excess = -std::numeric_limits<double>::infinity();
  rep.max_mass_excess = -std::numeric_limits<double>::infinity();
  for (const auto& r : records) {
    rep.max_prey_excess = std::max(rep.max_prey_excess, r.linf_v - prey_cap);
    rep.max_mass_excess = std::max(rep.max_mass_excess, r.mass_u - mass_cap);
  }
  return rep;
}

void write_csv_header(std::ostream& out) {
  for (std::size_t k = 0; k < kDiagnosticsColumns.size(); ++k) {
    if (k > 0) out << ',';
    out << kDiagnosticsColumns[k];
  }
  out << '\n';
}

void write_csv_row(std::ostream& out, const DiagnosticsRecord& r) {
  out << fmt::format(
      "{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},"
      "{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{}\n",
      r.t, r.mass_u, r.linf_v, r.lp_v2, r.lp_v4, r.dist_u_L1, r.dist_u_L2, r.dist_v_L1,
      r.dist_v_L2, r.H_u, r.H_v, r.E, r.G, r.ulogu, r.gradv2_over_v, r.gradv4_over_v3,
      r.clamped_mass, r.floored_cells);
}

} // namespace predprey
