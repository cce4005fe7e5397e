#pragma once

#include <cstddef>
#include <functional>

#include "predprey/grid.hpp"
#include "predprey/model.hpp"

namespace predprey {

/// Predator density u, prey density v and the simulation time.
struct State {
  Field u;
  Field v;
  double t = 0.0;
};

enum class TaxisScheme { Upwind, Central };

const char* to_string(TaxisScheme scheme) noexcept;

struct SchemeConfig {
  TaxisScheme taxis = TaxisScheme::Upwind;
  double cfl_safety = 0.4;       ///< in (0, 1]
  double reaction_limiter = 0.5; ///< max relative decrease per step, in (0, 1]
  double u_floor = 1e-14;        ///< diagnostics only

  void validate() const;
};

struct FieldPair {
  Field u;
  Field v;
};

/// Pointwise u (m1 - u + a v) and v (m2 - b u - v).
FieldPair reaction_rates(const State& s, const ModelParams& p);

/// Predator flux per face: (d1 + chi v_face) du/dn - chi F(u_face) dv/dn.
/// u_face is the upwind cell value (Upwind) or the face mean (Central);
/// boundary faces carry zero flux.
FaceField flux_u(const State& s, const ModelParams& p, const SchemeConfig& cfg);

/// Semidiscrete time derivative of (u, v).
FieldPair rhs(const State& s, const ModelParams& p, const SchemeConfig& cfg);

/// Largest explicit step keeping diffusion, drift and reaction decay within
/// cfl_safety of their stability limits; always > 0.
double stable_dt(const State& s, const ModelParams& p, const SchemeConfig& cfg);

struct StepStats {
  double dt = 0.0;
  double clamped_mass = 0.0;
  std::size_t clamped_cells = 0;
};

/// One SSP-RK2 (Heun) step of size stable_dt. Tiny negative values are clamped
/// and counted; throws BlowUp on non-finite or runaway values, or when the
/// clamped mass exceeds 1e-10 of the field's integral.
State step(const State& s, const ModelParams& p, const SchemeConfig& cfg,
           StepStats* stats = nullptr);

/// Same as step() with a caller-chosen dt.
State step_with_dt(const State& s, const ModelParams& p, const SchemeConfig& cfg, double dt,
                   StepStats* stats = nullptr);

struct RunProgress {
  std::size_t steps = 0;
  double clamped_mass = 0.0;
  std::size_t clamped_cells = 0;
};

using SampleSink = std::function<void(const State&, const RunProgress&)>;

/// Advances s0 to t_end. The sink receives the state at s0.t and at every
/// s0.t + k * sample_every <= t_end; steps are shortened so that they end
/// exactly on sample times and on t_end. Throws InvalidArgument when
/// t_end < s0.t or sample_every <= 0, and propagates BlowUp.
State run_to_time(const State& s0, const ModelParams& p, const SchemeConfig& cfg, double t_end,
                  double sample_every, const SampleSink& sink, RunProgress* progress = nullptr);

/// Number of samples run_to_time emits for the given interval.
std::size_t sample_count(double t0, double t_end, double sample_every);

} // namespace predprey
