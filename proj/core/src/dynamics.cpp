#include "predprey/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "predprey/errors.hpp"

namespace predprey {

namespace {

constexpr double kBlowUpLevel = 1e12;
constexpr double kClampMassFraction = 1e-10;
constexpr double kTinySpeed = 1e-300;

void check_state(const State& s) {
  if (!(s.u.grid() == s.v.grid())) throw InvalidArgument("u and v must share one grid");
}

// Clamps negative values to zero; returns false if the removed mass is too large.
bool clamp_negatives(Field& f, StepStats& stats) {
  double removed = 0.0;
  for (double& x : f.values()) {
    if (x < 0.0) {
      removed -= x;
      x = 0.0;
      ++stats.clamped_cells;
    }
  }
  removed *= f.grid().cell_volume();
  stats.clamped_mass += removed;
  return removed <= kClampMassFraction * std::max(integrate(f), std::numeric_limits<double>::min());
}

void check_growth(const Field& f, double t, const char* name) {
  for (double x : f.values()) {
    if (!std::isfinite(x) || std::abs(x) > kBlowUpLevel) {
      throw BlowUp(std::string("blow-up in ") + name + " at t = " + std::to_string(t), t);
    }
  }
}

} // namespace

const char* to_string(TaxisScheme scheme) noexcept {
  return scheme == TaxisScheme::Upwind ? "upwind" : "central";
}

void SchemeConfig::validate() const {
  if (!(cfl_safety > 0.0 && cfl_safety <= 1.0)) {
    throw InvalidArgument("cfl_safety must lie in (0, 1]");
  }
  if (!(reaction_limiter > 0.0 && reaction_limiter <= 1.0)) {
    throw InvalidArgument("reaction_limiter must lie in (0, 1]");
  }
  if (!(u_floor > 0.0) || !std::isfinite(u_floor)) throw InvalidArgument("u_floor must be > 0");
}

FieldPair reaction_rates(const State& s, const ModelParams& p) {
  check_state(s);
  FieldPair r{Field(s.u.grid()), Field(s.v.grid())};
  for (std::size_t k = 0; k < s.u.size(); ++k) {
    const double u = s.u[k];
    const double v = s.v[k];
    r.u[k] = u * (p.m1 - u + p.a * v);
    r.v[k] = v * (p.m2 - p.b * u - v);
  }
  return r;
}

FaceField flux_u(const State& s, const ModelParams& p, const SchemeConfig& cfg) {
  check_state(s);
  const Grid& g = s.u.grid();
  const FaceField du = face_gradient(s.u);
  const FaceField dv = face_gradient(s.v);
  FaceField flux = FaceField::zeros(g);
  const int n0 = g.cells(0);
  const int n1 = g.cells(1);

  auto face_flux = [&](std::size_t lo, std::size_t hi, double du_n, double dv_n) {
    const double v_face = 0.5 * (s.v[lo] + s.v[hi]);
    double u_face;
    if (cfg.taxis == TaxisScheme::Upwind) {
      u_face = p.chi * dv_n > 0.0 ? s.u[lo] : s.u[hi];
    } else {
      u_face = 0.5 * (s.u[lo] + s.u[hi]);
    }
    return (p.d1 + p.chi * v_face) * du_n - p.chi * taxis_mobility(u_face, p.eps) * dv_n;
  };

  for (int j = 0; j < n1; ++j) {
    const std::size_t base = static_cast<std::size_t>(j) * (n0 + 1);
    for (int i = 1; i < n0; ++i) {
      flux.axis[0][base + i] =
          face_flux(g.index(i - 1, j), g.index(i, j), du.axis[0][base + i], dv.axis[0][base + i]);
    }
  }
  if (g.dim() == 2) {
    for (int j = 1; j < n1; ++j) {
      for (int i = 0; i < n0; ++i) {
        const std::size_t f = static_cast<std::size_t>(j) * n0 + i;
        flux.axis[1][f] =
            face_flux(g.index(i, j - 1), g.index(i, j), du.axis[1][f], dv.axis[1][f]);
      }
    }
  }
  return flux;
}

FieldPair rhs(const State& s, const ModelParams& p, const SchemeConfig& cfg) {
  FieldPair out = reaction_rates(s, p);
  out.u += divergence(s.u.grid(), flux_u(s, p, cfg));
  const Field lap_v = laplacian_neumann(s.v);
  for (std::size_t k = 0; k < out.v.size(); ++k) out.v[k] += p.d2 * lap_v[k];
  return out;
}

double stable_dt(const State& s, const ModelParams& p, const SchemeConfig& cfg) {
  check_state(s);
  const Grid& g = s.u.grid();
  const double h = g.min_spacing();
  const double two_dim = 2.0 * g.dim();
  const double v_max = std::max(0.0, s.v.max());

  double dt = h * h / (two_dim * (p.d1 + p.chi * v_max));
  dt = std::min(dt, h * h / (two_dim * p.d2));

  // A cell can lose mass through all 2*dim faces at once.
  const FaceField dv = face_gradient(s.v);
  double speed = 0.0;
  for (int axis = 0; axis < g.dim(); ++axis) {
    for (double d : dv.axis[axis]) speed = std::max(speed, p.chi * std::abs(d));
  }
  dt = std::min(dt, h / (two_dim * speed + kTinySpeed));

  double decay = 0.0;
  for (std::size_t k = 0; k < s.u.size(); ++k) {
    const double u = s.u[k];
    const double v = s.v[k];
    decay = std::max(decay, -(p.m1 - u + p.a * v));
    decay = std::max(decay, -(p.m2 - p.b * u - v));
  }
  if (decay > 0.0) dt = std::min(dt, cfg.reaction_limiter / decay);

  return cfg.cfl_safety * dt;
}

State step_with_dt(const State& s, const ModelParams& p, const SchemeConfig& cfg, double dt,
                   StepStats* stats) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw InvalidArgument("step size must be > 0");
  StepStats local;
  local.dt = dt;

  const FieldPair k1 = rhs(s, p, cfg);
  State stage{s.u, s.v, s.t + dt};
  for (std::size_t k = 0; k < s.u.size(); ++k) {
    stage.u[k] += dt * k1.u[k];
    stage.v[k] += dt * k1.v[k];
  }
  check_growth(stage.u, stage.t, "u");
  check_growth(stage.v, stage.t, "v");

  const FieldPair k2 = rhs(stage, p, cfg);
  State next{s.u, s.v, s.t + dt};
  for (std::size_t k = 0; k < s.u.size(); ++k) {
    next.u[k] = 0.5 * (s.u[k] + stage.u[k] + dt * k2.u[k]);
    next.v[k] = 0.5 * (s.v[k] + stage.v[k] + dt * k2.v[k]);
  }
  check_growth(next.u, next.t, "u");
  check_growth(next.v, next.t, "v");

  const bool u_ok = clamp_negatives(next.u, local);
  const bool v_ok = clamp_negatives(next.v, local);
  if (stats) *stats = local;
  if (!u_ok || !v_ok) {
    throw BlowUp("positivity lost: clamped mass " + std::to_string(local.clamped_mass) +
                     " at t = " + std::to_string(next.t),
                 next.t);
  }
  return next;
}

State step(const State& s, const ModelParams& p, const SchemeConfig& cfg, StepStats* stats) {
  return step_with_dt(s, p, cfg, stable_dt(s, p, cfg), stats);
}

std::size_t sample_count(double t0, double t_end, double sample_every) {
  if (!(sample_every > 0.0)) throw InvalidArgument("sample_every must be > 0");
  if (t_end < t0) throw InvalidArgument("t_end must not precede the initial time");
  return static_cast<std::size_t>(std::floor((t_end - t0) / sample_every + 1e-9)) + 1;
}

State run_to_time(const State& s0, const ModelParams& p, const SchemeConfig& cfg, double t_end,
                  double sample_every, const SampleSink& sink, RunProgress* progress) {
  p.validate();
  cfg.validate();
  check_state(s0);
  const std::size_t samples = sample_count(s0.t, t_end, sample_every);

  std::vector<double> sample_times(samples);
  for (std::size_t k = 0; k < samples; ++k) {
    sample_times[k] = std::min(t_end, s0.t + static_cast<double>(k) * sample_every);
  }

  RunProgress local;
  State s = s0;
  if (sink) sink(s, local);
  std::size_t next_sample = 1;

  // Times within this slack of a target count as reaching it.
  const double slack = 1e-12 * std::max(1.0, std::abs(t_end));
  while (s.t < t_end - slack) {
    const double target = next_sample < samples ? sample_times[next_sample] : t_end;

    double dt = stable_dt(s, p, cfg);
    if (s.t + dt >= target - slack) dt = target - s.t;

    StepStats stats;
    try {
      s = step_with_dt(s, p, cfg, dt, &stats);
    } catch (const BlowUp&) {
      if (progress) *progress = local;
      throw;
    }
    if (std::abs(s.t - target) <= slack) s.t = target;
    ++local.steps;
    local.clamped_mass += stats.clamped_mass;
    local.clamped_cells += stats.clamped_cells;

    if (next_sample < samples && s.t >= sample_times[next_sample]) {
      if (sink) sink(s, local);
      ++next_sample;
    }
  }
  if (progress) *progress = local;
  return s;
}

} // namespace predprey
