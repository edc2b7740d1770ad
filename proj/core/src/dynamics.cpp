#include "vesicle/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>

#include "vesicle/fft.hpp"
#include "vesicle/littlewood_paley.hpp"
#include "vesicle/spectral_ops.hpp"

namespace vesicle {

namespace {

struct RhsEval {
  SpectralVector du;
  SpectralScalar dphi;
  StepAux aux;
};

void zero_mean(SpectralVector& v) {
  for (int j = 0; j < 3; ++j) v[j].coeffs[0] = Complex{0.0, 0.0};
}

// Derivatives drop Nyquist frequencies while the Leray projector keeps them,
// so Nyquist content folded back by products would break the discrete
// div-free pairing (and with it exact mean transport).  Those planes carry
// no usable derivative information; the stepper truncates them.
void zero_nyquist(SpectralScalar& f) {
  const GridSpec& g = f.grid;
  for_each_mode(g, [&](std::size_t idx, int m1, int m2, int m3) {
    if (is_nyquist(m1, g.n1) || is_nyquist(m2, g.n2) || is_nyquist(m3, g.n3))
      f.coeffs[idx] = Complex{0.0, 0.0};
  });
}

// Full RHS with batched transforms: the phi chain shares one evaluation grid
// sized for cubic products, the advection/coupling products share a
// quadratic one.
RhsEval eval_rhs(const State& s, const ModelParams& p, const Forcing* forcing,
                 const DealiasRule& rule, bool linear_only) {
  const GridSpec& g = s.phi.grid;
  RhsEval out;
  out.aux.kinetic = 0.5 * (parseval_sum_sq(s.u[0]) + parseval_sum_sq(s.u[1]) +
                           parseval_sum_sq(s.u[2]));
  const double gu = grad_l2_norm(s.u);
  out.aux.dissipation_u = p.mu * gu * gu;

  if (linear_only) {
    out.du = SpectralVector(g);
    for (int j = 0; j < 3; ++j) {
      out.du[j] = laplacian(s.u[j]);
      out.du[j] *= p.mu;
    }
    out.du.divergence_free = true;
    out.dphi = bilaplacian(s.phi);
    out.dphi *= -p.gamma * p.k * p.eps;
    return out;
  }

  // --- phase-field chain -------------------------------------------------
  const FineGrid fg3 = make_fine_grid(g, 3, rule);
  const RealVec s_phi = fg3.samples(s.phi);
  const SpectralScalar lap_phi = laplacian(s.phi);

  RealVec work(s_phi.size());
  for (std::size_t i = 0; i < work.size(); ++i)
    work[i] = s_phi[i] * s_phi[i] * s_phi[i] - s_phi[i];
  SpectralScalar f_hat = fg3.to_spectral(work);
  f_hat *= 1.0 / p.eps;
  f_hat.axpy(-p.eps, lap_phi);

  const RealVec s_f = fg3.samples(f_hat);
  for (std::size_t i = 0; i < work.size(); ++i)
    work[i] = (3.0 * s_phi[i] * s_phi[i] - 1.0) * s_f[i];
  SpectralScalar chem = fg3.to_spectral(work);
  chem *= 1.0 / (p.eps * p.eps);
  chem -= laplacian(f_hat);
  chem *= p.k;  // k g(phi)

  const double vol_a = s.phi.mean();
  double area_b;
  {
    double well = 0.0;
    for (double v : s_phi) {
      const double w = v * v - 1.0;
      well += w * w;
    }
    well /= static_cast<double>(s_phi.size());
    const double gp = grad_l2_norm(s.phi);
    area_b = 0.5 * p.eps * gp * gp + 0.25 / p.eps * well;
  }
  chem.coeffs[0] += p.M1 * (vol_a - p.alpha);
  if (p.M2 != 0.0) chem.axpy(p.M2 * (area_b - p.beta), f_hat);

  out.aux.dissipation_phi = p.gamma * parseval_sum_sq(chem);
  out.aux.energy.e_eps = 0.5 * p.k / p.eps * parseval_sum_sq(f_hat);
  out.aux.energy.a = vol_a;
  out.aux.energy.b = area_b;
  out.aux.energy.pen_vol = 0.5 * p.M1 * (vol_a - p.alpha) * (vol_a - p.alpha);
  out.aux.energy.pen_area = 0.5 * p.M2 * (area_b - p.beta) * (area_b - p.beta);
  out.aux.energy.total =
      out.aux.energy.e_eps + out.aux.energy.pen_vol + out.aux.energy.pen_area;
  out.aux.energy.kinetic = out.aux.kinetic;

  // --- advection and coupling products -----------------------------------
  const FineGrid fg2 = make_fine_grid(g, 2, rule);
  std::array<RealVec, 3> s_u;
  for (int j = 0; j < 3; ++j) s_u[j] = fg2.samples(s.u[j]);
  std::array<RealVec, 3> s_gphi;
  for (int i = 0; i < 3; ++i) s_gphi[i] = fg2.samples(derivative(s.phi, i + 1, 1));
  const RealVec s_chem = fg2.samples(chem);

  RealVec w2(s_chem.size());
  SpectralVector du(g);
  for (int i = 0; i < 3; ++i) {
    for (std::size_t n = 0; n < w2.size(); ++n) w2[n] = s_chem[n] * s_gphi[i][n];
    du[i] = fg2.to_spectral(w2);  // (dE/dphi) grad phi
  }
  // advection in divergence form: (u . grad) u_j = sum_i d_i (u_i u_j) while
  // div u = 0, which needs only the six symmetric products u_i u_j
  for (int i = 0; i < 3; ++i) {
    for (int j = i; j < 3; ++j) {
      for (std::size_t n = 0; n < w2.size(); ++n) w2[n] = s_u[i][n] * s_u[j][n];
      const SpectralScalar pij = fg2.to_spectral(w2);
      du[j] -= derivative(pij, i + 1, 1);
      if (i != j) du[i] -= derivative(pij, j + 1, 1);
    }
  }
  for (int j = 0; j < 3; ++j) du[j].axpy(p.mu, laplacian(s.u[j]));

  if (forcing && forcing->velocity) {
    SpectralVector fu = leray_project(forcing->velocity(s.t));
    du += fu;
  }
  out.du = leray_project(du);
  zero_mean(out.du);

  for (std::size_t n = 0; n < w2.size(); ++n)
    w2[n] = s_u[0][n] * s_gphi[0][n] + s_u[1][n] * s_gphi[1][n] + s_u[2][n] * s_gphi[2][n];
  out.dphi = fg2.to_spectral(w2);
  out.dphi *= -1.0;
  out.dphi.axpy(-p.gamma, chem);
  if (forcing && forcing->phase) out.dphi += forcing->phase(s.t);

  // keep stage states inside the derivative-consistent band
  for (int j = 0; j < 3; ++j) zero_nyquist(out.du[j]);
  zero_nyquist(out.dphi);

  if (!out.du.all_finite() || !out.dphi.all_finite()) throw BlowUpDetected(s.t);
  return out;
}

// Exponential integrating factors for the stiff linear symbols.
struct LinearFactors {
  RealVec eu;    // exp(mu * lap * dt)
  RealVec ephi;  // exp(-gamma k eps lap^2 * dt)
  RealVec lu;    // mu * lap
  RealVec lphi;  // -gamma k eps lap^2
};

LinearFactors compute_factors(const GridSpec& g, const ModelParams& p, double dt) {
  LinearFactors f;
  f.eu.resize(g.size());
  f.ephi.resize(g.size());
  f.lu.resize(g.size());
  f.lphi.resize(g.size());
  for_each_mode(g, [&](std::size_t idx, int m1, int m2, int m3) {
    const double lap = laplacian_symbol(m1, m2, m3, g);
    f.lu[idx] = p.mu * lap;
    f.lphi[idx] = -p.gamma * p.k * p.eps * lap * lap;
    f.eu[idx] = std::exp(dt * f.lu[idx]);
    f.ephi[idx] = std::exp(dt * f.lphi[idx]);
  });
  return f;
}

// Fixed-dt runs recompute identical exponentials every step; keep the last set.
const LinearFactors& make_factors(const GridSpec& g, const ModelParams& p, double dt) {
  struct Slot {
    GridSpec grid{0, 0, 0};
    double mu = 0.0, gke = 0.0, dt = 0.0;
    LinearFactors factors;
  };
  static thread_local Slot slot;
  const double gke = p.gamma * p.k * p.eps;
  if (!(slot.grid == g) || slot.mu != p.mu || slot.gke != gke || slot.dt != dt) {
    slot.factors = compute_factors(g, p, dt);
    slot.grid = g;
    slot.mu = p.mu;
    slot.gke = gke;
    slot.dt = dt;
  }
  return slot.factors;
}

void apply_factor(SpectralScalar& field, const RealVec& factor) {
  for (std::size_t i = 0; i < field.coeffs.size(); ++i) field.coeffs[i] *= factor[i];
}

// Subtract the linear part from a full RHS evaluation, in place.
void to_nonlinear(RhsEval& e, const State& s, const LinearFactors& lf) {
  for (int j = 0; j < 3; ++j)
    for (std::size_t i = 0; i < e.du[j].coeffs.size(); ++i)
      e.du[j].coeffs[i] -= lf.lu[i] * s.u[j].coeffs[i];
  for (std::size_t i = 0; i < e.dphi.coeffs.size(); ++i)
    e.dphi.coeffs[i] -= lf.lphi[i] * s.phi.coeffs[i];
}

}  // namespace

RhsResult rhs(const State& state, const ModelParams& params, const Forcing* forcing,
              const DealiasRule& rule) {
  RhsEval e = eval_rhs(state, params, forcing, rule, false);
  return RhsResult{std::move(e.du), std::move(e.dphi)};
}

double cfl_dt(const State& state, const StepperConfig& cfg) {
  const GridSpec& g = state.phi.grid;
  const double dx = 1.0 / std::max({g.n1, g.n2, g.n3});
  const double umax = linf_norm(state.u, 1);
  return std::min(cfg.dt_max, cfg.cfl * dx / std::max(umax, 1e-12));
}

State step(const State& state, const ModelParams& params, const StepperConfig& cfg, double dt,
           const Forcing* forcing, StepAux* aux) {
  if (dt <= 0.0) throw std::invalid_argument("step: dt must be > 0");
  const GridSpec& g = state.phi.grid;
  const LinearFactors& lf = make_factors(g, params, dt);

  RhsEval stage1 = eval_rhs(state, params, forcing, cfg.dealias, cfg.linear_only);
  if (aux) *aux = stage1.aux;
  to_nonlinear(stage1, state, lf);

  State next = State::zero(g);
  next.t = state.t + dt;

  auto predict = [&](const State& base, const RhsEval& n) {
    State pred = State::zero(g);
    pred.t = base.t + dt;
    for (int j = 0; j < 3; ++j) {
      pred.u[j] = base.u[j];
      pred.u[j].axpy(dt, n.du[j]);
      apply_factor(pred.u[j], lf.eu);
    }
    pred.phi = base.phi;
    pred.phi.axpy(dt, n.dphi);
    apply_factor(pred.phi, lf.ephi);
    return pred;
  };

  if (cfg.integrator == Integrator::IfEuler || cfg.linear_only) {
    if (cfg.integrator == Integrator::IfHeun && cfg.linear_only) {
      // nonlinear terms are off: Heun and Euler coincide and both are exact
    }
    next = predict(state, stage1);
  }
  if (cfg.integrator == Integrator::IfHeun && !cfg.linear_only) {
    State pred = predict(state, stage1);
    if (!pred.u.all_finite() || !pred.phi.all_finite()) throw BlowUpDetected(state.t);
    RhsEval stage2 = eval_rhs(pred, params, forcing, cfg.dealias, cfg.linear_only);
    to_nonlinear(stage2, pred, lf);
    for (int j = 0; j < 3; ++j) {
      next.u[j] = state.u[j];
      next.u[j].axpy(dt, stage1.du[j]);  // E (u + dt k1) ...
      apply_factor(next.u[j], lf.eu);
      next.u[j].axpy(0.5 * dt, stage2.du[j]);
      // ... minus dt/2 E k1 + dt/2 k2 gives the Heun average
      SpectralScalar half = stage1.du[j];
      apply_factor(half, lf.eu);
      next.u[j].axpy(-0.5 * dt, half);
    }
    next.phi = state.phi;
    next.phi.axpy(dt, stage1.dphi);
    apply_factor(next.phi, lf.ephi);
    next.phi.axpy(0.5 * dt, stage2.dphi);
    SpectralScalar half = stage1.dphi;
    apply_factor(half, lf.ephi);
    next.phi.axpy(-0.5 * dt, half);
  }

  if (!cfg.linear_only) {
    for (int j = 0; j < 3; ++j) zero_nyquist(next.u[j]);
    zero_nyquist(next.phi);
  }
  next.u = leray_project(next.u);
  if (!next.u.all_finite() || !next.phi.all_finite()) throw BlowUpDetected(state.t);
  return next;
}

State step(const State& state, const ModelParams& params, const StepperConfig& cfg,
           const Forcing* forcing) {
  return step(state, params, cfg, cfl_dt(state, cfg), forcing, nullptr);
}

namespace {

// Single-slot memo so Heun stages and consecutive steps reuse forcing fields.
template <typename FieldT>
std::function<FieldT(double)> memoize(std::function<FieldT(double)> fn) {
  auto cache = std::make_shared<std::pair<double, FieldT>>(
      std::numeric_limits<double>::quiet_NaN(), FieldT{});
  return [fn = std::move(fn), cache](double t) {
    if (cache->first == t) return cache->second;
    cache->second = fn(t);
    cache->first = t;
    return cache->second;
  };
}

}  // namespace

Forcing manufactured_forcing(const ManufacturedSolution& ms, const ModelParams& params,
                             const DealiasRule& rule) {
  Forcing forcing;
  forcing.velocity = memoize<SpectralVector>([ms, params, rule](double t) {
    const SpectralVector u = ms.u(t);
    const SpectralScalar phi = ms.phi(t);
    const GridSpec& g = phi.grid;
    const SpectralScalar chem = chemical_potential(phi, params, rule);
    SpectralVector fu = ms.dudt(t);
    const auto prod2 = [](const double* v) { return v[0] * v[1]; };
    for (int j = 0; j < 3; ++j) {
      // + (u . grad) u_j
      SpectralVector gu = gradient(u[j]);
      const SpectralScalar* adv[6] = {&u[0], &u[1], &u[2], &gu[0], &gu[1], &gu[2]};
      fu[j] += pointwise_product(
          adv, 2, [](const double* v) { return v[0] * v[3] + v[1] * v[4] + v[2] * v[5]; }, rule);
      fu[j].axpy(-params.mu, laplacian(u[j]));
      const SpectralScalar dphi_j = derivative(phi, j + 1, 1);
      const SpectralScalar* cg[2] = {&chem, &dphi_j};
      fu[j] -= pointwise_product(cg, 2, prod2, rule);
    }
    fu = leray_project(fu);
    for (int j = 0; j < 3; ++j) fu[j].coeffs[0] = Complex{0.0, 0.0};
    (void)g;
    return fu;
  });
  forcing.phase = memoize<SpectralScalar>([ms, params, rule](double t) {
    const SpectralVector u = ms.u(t);
    const SpectralScalar phi = ms.phi(t);
    SpectralScalar fphi = ms.dphidt(t);
    SpectralVector gphi = gradient(phi);
    const SpectralScalar* adv[6] = {&u[0], &u[1], &u[2], &gphi[0], &gphi[1], &gphi[2]};
    fphi += pointwise_product(
        adv, 2, [](const double* v) { return v[0] * v[3] + v[1] * v[4] + v[2] * v[5]; }, rule);
    fphi.axpy(params.gamma, chemical_potential(phi, params, rule));
    return fphi;
  });
  return forcing;
}

ManufacturedSolution standard_manufactured(const GridSpec& grid, double amp_u, double amp_phi,
                                           double phi_mean, double omega_t) {
  // u* = A cos(wt) (sin 2pi x2, sin 2pi x3, sin 2pi x1)    (divergence-free)
  // phi* = c + B cos(wt) cos(2pi x1) + B sin(wt) cos(2pi x2)
  auto velocity_shape = [grid](double scale) {
    SpectralVector v(grid);
    const Complex half_i{0.0, -0.5};
    v[0].mode(0, 1, 0) = scale * half_i;
    v[0].mode(0, -1, 0) = std::conj(scale * half_i);
    v[1].mode(0, 0, 1) = scale * half_i;
    v[1].mode(0, 0, -1) = std::conj(scale * half_i);
    v[2].mode(1, 0, 0) = scale * half_i;
    v[2].mode(-1, 0, 0) = std::conj(scale * half_i);
    v.divergence_free = true;
    return v;
  };
  auto phase_shape = [grid](double mean, double c1, double c2) {
    SpectralScalar f(grid);
    f.coeffs[0] = mean;
    f.mode(1, 0, 0) = 0.5 * c1;
    f.mode(-1, 0, 0) = 0.5 * c1;
    f.mode(0, 1, 0) = 0.5 * c2;
    f.mode(0, -1, 0) = 0.5 * c2;
    return f;
  };

  ManufacturedSolution ms;
  ms.u = [=](double t) { return velocity_shape(amp_u * std::cos(omega_t * t)); };
  ms.dudt = [=](double t) { return velocity_shape(-amp_u * omega_t * std::sin(omega_t * t)); };
  ms.phi = [=](double t) {
    return phase_shape(phi_mean, amp_phi * std::cos(omega_t * t), amp_phi * std::sin(omega_t * t));
  };
  ms.dphidt = [=](double t) {
    return phase_shape(0.0, -amp_phi * omega_t * std::sin(omega_t * t),
                       amp_phi * omega_t * std::cos(omega_t * t));
  };
  return ms;
}

RunResult run(State& state, const ModelParams& params, const StepperConfig& cfg,
              const Forcing* forcing, std::span<const Observer> observers) {
  cfg.validate();
  RunResult result;
  const double t_end = cfg.end_time;
  const StepAux empty_aux{};

  auto notify = [&](const StepAux& aux, bool is_final) {
    for (const Observer& obs : observers) obs(state, aux, is_final);
  };

  notify(empty_aux, state.t >= t_end);
  if (state.t >= t_end) {
    result.final_time = state.t;
    return result;
  }

  StepAux aux;
  int steps = 0;
  while (state.t < t_end - 1e-14 * std::max(1.0, t_end)) {
    const double dt = std::min(cfl_dt(state, cfg), t_end - state.t);
    State next;
    try {
      next = step(state, params, cfg, dt, forcing, &aux);
    } catch (const BlowUpDetected& b) {
      result.status = RunStatus::BlowUp;
      result.final_time = b.time;
      result.steps = steps;
      notify(aux, true);
      return result;
    }
    state = std::move(next);
    ++steps;
    const bool is_final = !(state.t < t_end - 1e-14 * std::max(1.0, t_end));
    if (steps % cfg.output_every == 0 || is_final) {
      if (linf_norm(curl(state.u), 1) > cfg.blowup_cap) {
        result.status = RunStatus::BlowUp;
        result.final_time = state.t;
        result.steps = steps;
        notify(aux, true);
        return result;
      }
      notify(aux, is_final);
    }
  }
  result.final_time = state.t;
  result.steps = steps;
  return result;
}

}  // namespace vesicle
