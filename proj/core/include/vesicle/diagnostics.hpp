#pragma once

#include "vesicle/dynamics.hpp"
#include "vesicle/energy.hpp"
#include "vesicle/littlewood_paley.hpp"

namespace vesicle {

/// Per-step a priori quantities.
struct DiagnosticsRecord {
  double t = 0.0;
  double kinetic = 0.0;
  EnergyBreakdown energy;
  double dissipation_u = 0.0;          // mu ||grad u||^2
  double dissipation_phi = 0.0;        // gamma ||dE/dphi||^2
  double energy_residual = 0.0;
  double norm_u_l2 = 0.0;
  double norm_phi_h2 = 0.0;
  double norm_grad_lap_phi = 0.0;      // ||grad lap phi||_{L2}
  double norm_grad_phi_linf = 0.0;     // ||grad phi||_{Linf} (refined-grid sup)
  double h_t = 0.0;                    // windowed sup diagnostic
  BesovDiagnostics besov;              // of the vorticity
};

/// Relative defect of the energy dissipation law between two states:
/// |dH/dt + (D(prev)+D(next))/2| / (1 + (D(prev)+D(next))/2)
/// with H = kinetic + E(phi) and D = mu ||grad u||^2 + gamma ||dE/dphi||^2.
double energy_law_residual(const State& prev, const State& next, const ModelParams& params,
                           const DealiasRule& rule = DealiasRule::padded(3));

/// Running sup of ||grad lap u||^2 + eta_hat ||lap dE/dphi||^2 over a window.
struct WindowSup {
  double value = 0.0;
  void reset() { value = 0.0; }
};

double h_update(WindowSup& window, const State& state, const ModelParams& params, double eta_hat,
                const DealiasRule& rule = DealiasRule::padded(3));

/// Stateful collector: owns the h(t) window and the previous state needed by
/// the energy-law residual.
class DiagnosticsCollector {
 public:
  DiagnosticsCollector(const ModelParams& params, const DyadicCutoffs& cutoffs,
                       double eta_hat = 1.0, const DealiasRule& rule = DealiasRule::padded(3))
      : params_(params), cutoffs_(cutoffs), eta_hat_(eta_hat), rule_(rule) {}

  DiagnosticsRecord collect(const State& state);

 private:
  ModelParams params_;
  DyadicCutoffs cutoffs_;
  double eta_hat_;
  DealiasRule rule_;
  WindowSup window_;
  bool have_prev_ = false;
  State prev_;
};

/// One-shot record without residual/window history.
DiagnosticsRecord collect(const State& state, const ModelParams& params,
                          const DyadicCutoffs& cutoffs,
                          const DealiasRule& rule = DealiasRule::padded(3));

}  // namespace vesicle
