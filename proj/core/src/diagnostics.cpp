#include "vesicle/diagnostics.hpp"

#include <cmath>

#include "vesicle/fft.hpp"
#include "vesicle/spectral_ops.hpp"

namespace vesicle {

namespace {

double dissipation(const State& s, const ModelParams& p, const DealiasRule& rule) {
  const double gu = grad_l2_norm(s.u);
  const SpectralScalar chem = chemical_potential(s.phi, p, rule);
  return p.mu * gu * gu + p.gamma * parseval_sum_sq(chem);
}

double total_h(const State& s, const ModelParams& p, const DealiasRule& rule) {
  const double kinetic = 0.5 * (parseval_sum_sq(s.u[0]) + parseval_sum_sq(s.u[1]) +
                                parseval_sum_sq(s.u[2]));
  return kinetic + total_energy(s.phi, p, rule).total;
}

}  // namespace

double energy_law_residual(const State& prev, const State& next, const ModelParams& params,
                           const DealiasRule& rule) {
  if (!(next.t > prev.t))
    throw std::invalid_argument("energy_law_residual: states must be time-ordered");
  const double dh = (total_h(next, params, rule) - total_h(prev, params, rule)) /
                    (next.t - prev.t);
  const double d_mid =
      0.5 * (dissipation(prev, params, rule) + dissipation(next, params, rule));
  return std::abs(dh + d_mid) / (1.0 + d_mid);
}

double h_update(WindowSup& window, const State& state, const ModelParams& params, double eta_hat,
                const DealiasRule& rule) {
  if (eta_hat <= 0.0) throw std::invalid_argument("h_update: eta_hat must be > 0");
  double grad_lap_u = 0.0;
  for (int j = 0; j < 3; ++j) {
    const double n = grad_l2_norm(laplacian(state.u[j]));
    grad_lap_u += n * n;
  }
  const SpectralScalar lap_chem = laplacian(chemical_potential(state.phi, params, rule));
  const double bracket = grad_lap_u + eta_hat * parseval_sum_sq(lap_chem);
  window.value = std::max(window.value, bracket);
  return window.value;
}

DiagnosticsRecord collect(const State& state, const ModelParams& params,
                          const DyadicCutoffs& cutoffs, const DealiasRule& rule) {
  DiagnosticsRecord r;
  r.t = state.t;
  r.kinetic = 0.5 * (parseval_sum_sq(state.u[0]) + parseval_sum_sq(state.u[1]) +
                     parseval_sum_sq(state.u[2]));
  r.energy = total_energy(state.phi, params, rule);
  r.energy.kinetic = r.kinetic;
  const double gu = grad_l2_norm(state.u);
  r.dissipation_u = params.mu * gu * gu;
  const SpectralScalar chem = chemical_potential(state.phi, params, rule);
  r.dissipation_phi = params.gamma * parseval_sum_sq(chem);
  r.norm_u_l2 = l2_norm(state.u);
  r.norm_phi_h2 = sobolev_norm(state.phi, 2.0, /*homogeneous=*/false);
  r.norm_grad_lap_phi = grad_l2_norm(laplacian(state.phi));
  r.norm_grad_phi_linf = linf_norm(gradient(state.phi), 2);
  r.besov = besov_diagnostics(curl(state.u), cutoffs, {}, state.t);
  return r;
}

DiagnosticsRecord DiagnosticsCollector::collect(const State& state) {
  DiagnosticsRecord r = vesicle::collect(state, params_, cutoffs_, rule_);
  r.h_t = h_update(window_, state, params_, eta_hat_, rule_);
  if (have_prev_ && state.t > prev_.t)
    r.energy_residual = energy_law_residual(prev_, state, params_, rule_);
  prev_ = state;
  have_prev_ = true;
  return r;
}

}  // namespace vesicle
