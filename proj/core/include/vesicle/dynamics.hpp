#pragma once

#include <functional>
#include <span>
#include <stdexcept>

#include "vesicle/energy.hpp"
#include "vesicle/field.hpp"

namespace vesicle {

struct State {
  double t = 0.0;
  SpectralVector u;    // divergence-free velocity
  SpectralScalar phi;  // phase field

  static State zero(const GridSpec& g) {
    State s;
    s.u = SpectralVector::zero(g);
    s.phi = SpectralScalar::zero(g);
    return s;
  }
};

enum class Integrator { IfHeun, IfEuler };

struct StepperConfig {
  double dt_max = 1e-3;
  double cfl = 0.5;                  // in (0, 1]
  Integrator integrator = Integrator::IfHeun;
  DealiasRule dealias = DealiasRule::padded(3);
  double end_time = 0.0;
  int output_every = 1;
  double blowup_cap = 1e12;          // hard cap on ||omega||_Linf
  bool linear_only = false;          // test hook: drop all nonlinear terms

  void validate() const {
    if (dt_max <= 0.0) throw std::invalid_argument("StepperConfig: dt_max must be > 0");
    if (cfl <= 0.0 || cfl > 1.0) throw std::invalid_argument("StepperConfig: cfl must be in (0,1]");
    if (output_every < 1) throw std::invalid_argument("StepperConfig: output_every must be >= 1");
  }
};

/// Time-dependent source terms.  The velocity source is projected
/// divergence-free before use.
struct Forcing {
  std::function<SpectralVector(double)> velocity;
  std::function<SpectralScalar(double)> phase;
};

/// Raised when a coefficient goes non-finite or the vorticity cap is hit.
struct BlowUpDetected : std::runtime_error {
  double time;
  explicit BlowUpDetected(double t)
      : std::runtime_error("blow-up detected at t = " + std::to_string(t)), time(t) {}
};

/// Quantities of the pre-step state that fall out of the first RHS stage.
struct StepAux {
  double dissipation_u = 0.0;    // mu ||grad u||^2
  double dissipation_phi = 0.0;  // gamma ||dE/dphi||^2
  double kinetic = 0.0;          // (1/2)||u||^2
  EnergyBreakdown energy;
};

/// Full right-hand side with pressure eliminated: du is Leray-projected and
/// has zero mean; all products are dealiased per `rule`.
struct RhsResult {
  SpectralVector du;
  SpectralScalar dphi;
};
RhsResult rhs(const State& state, const ModelParams& params, const Forcing* forcing,
              const DealiasRule& rule = DealiasRule::padded(3));

/// Advective time step bound: min(dt_max, cfl * dx / max(||u||_Linf, 1e-12)).
double cfl_dt(const State& state, const StepperConfig& cfg);

/// One integrating-factor step of size dt.  The stiff linear symbols
/// (mu lap for u, -gamma k eps lap^2 for phi) are integrated exactly; the
/// rest advances by Heun or forward Euler.  u is re-projected afterwards.
State step(const State& state, const ModelParams& params, const StepperConfig& cfg, double dt,
           const Forcing* forcing = nullptr, StepAux* aux = nullptr);

/// Convenience overload using cfl_dt.
State step(const State& state, const ModelParams& params, const StepperConfig& cfg,
           const Forcing* forcing = nullptr);

/// Analytic reference solution used for forcing construction and
/// convergence studies.
struct ManufacturedSolution {
  std::function<SpectralVector(double)> u;
  std::function<SpectralVector(double)> dudt;
  std::function<SpectralScalar(double)> phi;
  std::function<SpectralScalar(double)> dphidt;
};

/// Forcing that makes the manufactured pair an exact solution of the system.
Forcing manufactured_forcing(const ManufacturedSolution& ms, const ModelParams& params,
                             const DealiasRule& rule = DealiasRule::padded(3));

/// Time-periodic single-mode pair (divergence-free u*, band-limited phi*).
ManufacturedSolution standard_manufactured(const GridSpec& grid, double amp_u, double amp_phi,
                                           double phi_mean, double omega_t);

enum class RunStatus { Completed, BlowUp };

struct RunResult {
  RunStatus status = RunStatus::Completed;
  double final_time = 0.0;
  int steps = 0;
};

/// Observer invoked with an immutable snapshot at t=0, every output_every
/// steps, and at the final step.  StepAux carries pre-step quantities of the
/// most recent step (zeros for the initial call).
using Observer = std::function<void(const State&, const StepAux&, bool is_final)>;

/// Advance to cfg.end_time or until blow-up is detected.  Blow-up is a
/// terminal status, not an exception; partial observer output has already
/// been delivered when it is returned.
RunResult run(State& state, const ModelParams& params, const StepperConfig& cfg,
              const Forcing* forcing, std::span<const Observer> observers);

}  // namespace vesicle
