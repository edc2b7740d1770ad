// End-to-end acceptance gate: nine property checks, one PASS/FAIL line each.
// Exit code is the number of failed checks.

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <filesystem>
#include <vector>

#include "vesicle/diagnostics.hpp"
#include "vesicle/io.hpp"
#include "vesicle/littlewood_paley.hpp"
#include "vesicle/random_fields.hpp"
#include "vesicle/spectral_ops.hpp"

using namespace vesicle;

namespace {

int failures = 0;

void verdict(int id, const char* name, bool pass, const std::string& detail) {
  std::printf("[%d] %-28s %s  (%s)\n", id, name, pass ? "PASS" : "FAIL", detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

std::string fmt(const char* format, ...) {
  char buf[512];
  va_list args;
  va_start(args, format);
  std::vsnprintf(buf, sizeof(buf), format, args);
  va_end(args);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// --- 1: variational consistency --------------------------------------------

void check_variational() {
  const auto t0 = std::chrono::steady_clock::now();
  const GridSpec g = GridSpec::cubic(32);
  double worst_gap = 0.0, worst_ratio_lo = 1e300, worst_ratio_hi = 0.0;
  int cases = 0;
  for (double eps : {0.1, 0.2}) {
    ModelParams p;
    p.eps = eps;
    p.M1 = 1.0;
    p.M2 = 1.0;
    for (int i = 0; i < 10; ++i, ++cases) {
      const std::uint64_t seed = 1000 + 17 * std::uint64_t(cases);
      const SpectralScalar phi = random_band_limited(g, 3, seed, 0.1);
      const SpectralScalar eta = random_band_limited(g, 3, seed + 1, 0.5);
      const double gap4 = variational_check(phi, eta, p, 1e-4);
      const double gap3 = variational_check(phi, eta, p, 1e-3);
      worst_gap = std::max(worst_gap, gap4);
      if (gap4 > 1e-12) {  // above the rounding floor the ratio must be ~h^2
        const double ratio = gap3 / gap4;
        worst_ratio_lo = std::min(worst_ratio_lo, ratio);
        worst_ratio_hi = std::max(worst_ratio_hi, ratio);
      }
    }
  }
  const bool scaling_ok = worst_ratio_hi == 0.0 ||
                          (worst_ratio_lo > 25.0 && worst_ratio_hi < 400.0);
  const double dt = seconds_since(t0);
  verdict(1, "variational consistency", worst_gap < 1e-6 && scaling_ok && dt < 60.0,
          fmt("max gap %.3g, h^2 ratio in [%.3g, %.3g], %.1fs", worst_gap, worst_ratio_lo,
              worst_ratio_hi, dt));
}

// --- 2: energy dissipation law ---------------------------------------------

struct EnergyLawResult {
  double max_residual = 0.0;
  bool monotone = true;
};

EnergyLawResult energy_law_run(double dt, const GridSpec& g, const ModelParams& p,
                               const StepperConfig& cfg_in, double t_end) {
  StepperConfig cfg = cfg_in;
  cfg.dt_max = dt;
  // band-1 data so lambda dt stays small for every active mode
  State s = State::zero(g);
  s.u = random_divergence_free(g, 1, 4242, 0.05);
  s.phi = random_band_limited(g, 1, 4243, 0.05);
  s.phi.coeffs[0] = 0.1;
  const ModelParams params = resolve_targets(p, s.phi, {}, {});

  EnergyLawResult out;
  const int n = int(std::lround(t_end / dt));
  std::vector<double> h_vals, d_vals;
  h_vals.reserve(n + 1);
  for (int i = 0; i < n; ++i) {
    StepAux aux;
    s = step(s, params, cfg, dt, nullptr, &aux);
    h_vals.push_back(aux.kinetic + aux.energy.total);
    d_vals.push_back(aux.dissipation_u + aux.dissipation_phi);
  }
  // final-state quantities close the last interval
  {
    const double gu = grad_l2_norm(s.u);
    const SpectralScalar chem = chemical_potential(s.phi, params, cfg.dealias);
    d_vals.push_back(params.mu * gu * gu + params.gamma * parseval_sum_sq(chem));
    const double kin = 0.5 * (parseval_sum_sq(s.u[0]) + parseval_sum_sq(s.u[1]) +
                              parseval_sum_sq(s.u[2]));
    h_vals.push_back(kin + total_energy(s.phi, params, cfg.dealias).total);
  }
  for (int i = 0; i + 1 < int(h_vals.size()); ++i) {
    const double d_mid = 0.5 * (d_vals[i] + d_vals[i + 1]);
    const double res = std::abs((h_vals[i + 1] - h_vals[i]) / dt + d_mid) / (1.0 + d_mid);
    out.max_residual = std::max(out.max_residual, res);
    if (h_vals[i + 1] > h_vals[i] + 1e-15) out.monotone = false;
  }
  return out;
}

void check_energy_law() {
  const auto t0 = std::chrono::steady_clock::now();
  const GridSpec g = GridSpec::cubic(32);
  ModelParams p;
  p.mu = 1.0;
  p.gamma = 0.1;
  p.eps = 0.1;
  p.M1 = 1.0;
  p.M2 = 1.0;
  StepperConfig cfg;
  cfg.cfl = 1.0;  // dt_max governs
  const EnergyLawResult coarse = energy_law_run(1e-4, g, p, cfg, 0.05);
  const EnergyLawResult fine = energy_law_run(5e-5, g, p, cfg, 0.05);
  const double factor = coarse.max_residual / std::max(fine.max_residual, 1e-300);
  const double dt = seconds_since(t0);
  verdict(2, "energy dissipation law",
          coarse.max_residual < 1e-4 && factor > 3.0 && factor < 5.0 && coarse.monotone &&
              fine.monotone && dt < 300.0,
          fmt("max residual %.3g, halving factor %.2f, monotone %d/%d, %.1fs",
              coarse.max_residual, factor, int(coarse.monotone), int(fine.monotone), dt));
}

// --- 3: chemical-potential expansion ---------------------------------------

void check_expansion() {
  const auto t0 = std::chrono::steady_clock::now();
  const GridSpec g = GridSpec::cubic(32);
  const double eps = 0.1, k = 1.0;
  double worst = 0.0;
  for (int i = 0; i < 10; ++i) {
    const SpectralScalar phi = random_band_limited(g, 3, 7000 + std::uint64_t(i), 0.3);
    const SpectralScalar composed = k * g_of_phi(phi, eps, DealiasRule::padded(3));
    const SpectralScalar expanded = kg_expanded(phi, eps, k, DealiasRule::padded(3));
    double num = 0.0, den = 0.0;
    for (std::size_t j = 0; j < composed.coeffs.size(); ++j) {
      num = std::max(num, std::abs(composed.coeffs[j] - expanded.coeffs[j]));
      den = std::max(den, std::abs(composed.coeffs[j]));
    }
    worst = std::max(worst, num / den);
  }
  const double dt = seconds_since(t0);
  verdict(3, "expansion consistency", worst < 1e-9 && dt < 60.0,
          fmt("max relative gap %.3g, %.1fs", worst, dt));
}

// --- 4: Littlewood-Paley exactness -----------------------------------------

void check_littlewood_paley() {
  const GridSpec g = GridSpec::cubic(64);
  const DyadicCutoffs cut = build_cutoffs(g);
  double pou = 0.0;
  for_each_mode(g, [&](std::size_t, int m1, int m2, int m3) {
    if (m1 == 0 && m2 == 0 && m3 == 0) return;
    const double xi = kTwoPi * std::sqrt(double(m1) * m1 + double(m2) * m2 + double(m3) * m3);
    double sum = 0.0;
    for (int j = cut.j_min; j <= cut.j_max; ++j) sum += cut.block_weight(j, xi);
    pou = std::max(pou, std::abs(sum - 1.0));
  });

  SpectralScalar f = random_band_limited(g, 8, 88);
  f.coeffs[0] = 0.5;
  SpectralScalar sum = SpectralScalar::zero(g);
  for (int j = cut.j_min; j <= cut.j_max; ++j) sum += dyadic_block(f, j, cut);
  double recon = 0.0;
  for (std::size_t i = 1; i < f.coeffs.size(); ++i)
    recon = std::max(recon, std::abs(sum.coeffs[i] - f.coeffs[i]));
  recon = std::max(recon, std::abs(sum.coeffs[0]));

  SpectralScalar pure(g);
  pure.mode(1, 0, 0) = 0.5;
  pure.mode(-1, 0, 0) = 0.5;
  bool blocks_ok = true;
  for (int j = cut.j_min; j <= cut.j_max; ++j) {
    const double mass = l2_norm(dyadic_block(pure, j, cut));
    const bool active = mass > 1e-14;
    if (active != (j == 2 || j == 3)) blocks_ok = false;
  }
  verdict(4, "littlewood-paley exactness", pou < 1e-12 && recon < 1e-12 && blocks_ok,
          fmt("pou residual %.3g, reassembly %.3g, |xi|=2pi blocks %s", pou, recon,
              blocks_ok ? "{2,3}" : "wrong"));
}

// --- 5: closed-form values --------------------------------------------------

void check_closed_forms() {
  const GridSpec g = GridSpec::cubic(32);
  SpectralScalar cosx(g);
  cosx.mode(1, 0, 0) = 0.5;
  cosx.mode(-1, 0, 0) = 0.5;
  const double pi = kTwoPi / 2.0;
  // oracle: int sin^2 = 1/2, int sin^4 = 3/8 => B = 0.1 pi^2 + 0.9375
  const double b_oracle = 0.1 * pi * pi + 0.9375;
  const double b = area(cosx, 0.1);
  const double h1 = sobolev_norm(cosx, 1.0, true);
  const double h1_oracle = kTwoPi / std::sqrt(2.0);
  const double grad_inf = linf_norm(gradient(cosx), 2);
  verdict(5, "closed-form values",
          std::abs(b - b_oracle) < 1e-7 && std::abs(h1 - h1_oracle) < 1e-10 &&
              std::abs(grad_inf - kTwoPi) < 1e-6,
          fmt("B gap %.3g, H1 gap %.3g, grad sup gap %.3g", std::abs(b - b_oracle),
              std::abs(h1 - h1_oracle), std::abs(grad_inf - kTwoPi)));
}

// --- 6: criterion scalar functions ------------------------------------------

void check_criterion_scalars() {
  const double v0 = integrand_log_besov0(1.0);
  const double v1 = integrand_log_besov_m1(1.0);
  CriterionAccumulator acc = CriterionAccumulator::make(CriterionKind::Bkm);
  double t = 0.0;
  accumulate(acc, t, 1.0);
  for (int i = 1; i <= 13; ++i) {
    t = double(i * i * i) / (13.0 * 13.0 * 13.0);
    accumulate(acc, t, 1.0 + 2.0 * t);  // affine: integral = 1 + 1 = 2
  }
  const double trap_gap = std::abs(acc.integral - 2.0);
  // direct scalar oracles: 1/sqrt(1 + ln(e+1)) and 1/(1 + ln(e+1))
  const double e = std::exp(1.0);
  const double oracle0 = 1.0 / std::sqrt(1.0 + std::log(e + 1.0));
  const double oracle1 = 1.0 / (1.0 + std::log(e + 1.0));
  verdict(6, "criterion scalars",
          std::abs(v0 - oracle0) < 1e-6 && std::abs(v1 - oracle1) < 1e-6 && trap_gap < 1e-14,
          fmt("f(1)=%.6f (oracle %.6f), g(1)=%.6f (oracle %.6f), trapezoid gap %.3g", v0,
              oracle0, v1, oracle1, trap_gap));
}

// --- 7: inequality sweeps ----------------------------------------------------

struct SweepMax {
  double log_sobolev = 0.0;
  double interpolation = 0.0;
  double commutator = 0.0;
  double embedding = 0.0;
  bool finite = true;
};

SweepMax sweep(const GridSpec& g, int corpus) {
  const DyadicCutoffs cut = build_cutoffs(g);
  SweepMax m;
  for (int i = 0; i < corpus; ++i) {
    const std::uint64_t seed = 2026 + std::uint64_t(i);
    SpectralScalar f = random_band_limited(g, 4, seed);
    f.coeffs[0] = 0.0;
    SpectralScalar h = random_band_limited(g, 4, seed + 5000);
    h.coeffs[0] = 0.0;
    const double r1 = log_sobolev_ratio(f, 3.0, cut);
    const double r2 = interpolation_ratio(f, cut);
    const double r3 = commutator_ratio(f, h, 1.5);
    const double linf = linf_norm(f, 2);
    const double r4 = linf > 0.0 ? besov_norm(f, 0.0, cut) / linf : 0.0;
    for (double r : {r1, r2, r3, r4})
      if (!std::isfinite(r)) m.finite = false;
    m.log_sobolev = std::max(m.log_sobolev, r1);
    m.interpolation = std::max(m.interpolation, r2);
    m.commutator = std::max(m.commutator, r3);
    m.embedding = std::max(m.embedding, r4);
  }
  return m;
}

void check_sweeps() {
  const auto t0 = std::chrono::steady_clock::now();
  const int corpus = 50;
  const SweepMax lo = sweep(GridSpec::cubic(32), corpus);
  const SweepMax hi = sweep(GridSpec::cubic(64), corpus);
  auto drift = [](double a, double b) { return std::abs(a - b) / std::max(a, b); };
  const double worst_drift =
      std::max({drift(lo.log_sobolev, hi.log_sobolev), drift(lo.interpolation, hi.interpolation),
                drift(lo.commutator, hi.commutator), drift(lo.embedding, hi.embedding)});
  const double dt = seconds_since(t0);
  verdict(7, "inequality sweeps",
          lo.finite && hi.finite && worst_drift < 0.10 && dt < 600.0,
          fmt("maxima %.3g/%.3g/%.3g/%.3g, grid drift %.2f%%, %.1fs", hi.log_sobolev,
              hi.interpolation, hi.commutator, hi.embedding, 100.0 * worst_drift, dt));
}

// --- 8: solver order ---------------------------------------------------------

double manufactured_error(const GridSpec& g, Integrator integ, double dt, double t_end,
                          const ModelParams& p) {
  const ManufacturedSolution ms = standard_manufactured(g, 0.3, 0.2, 0.1, 4.0);
  const Forcing forcing = manufactured_forcing(ms, p);
  StepperConfig cfg;
  cfg.integrator = integ;
  cfg.dt_max = dt;
  State s;
  s.u = ms.u(0.0);
  s.phi = ms.phi(0.0);
  const int n = int(std::lround(t_end / dt));
  for (int i = 0; i < n; ++i) s = step(s, p, cfg, dt, &forcing);
  const SpectralVector u_ref = ms.u(s.t);
  const SpectralScalar phi_ref = ms.phi(s.t);
  double gap = 0.0;
  for (int j = 0; j < 3; ++j)
    for (std::size_t i = 0; i < u_ref[j].coeffs.size(); ++i)
      gap = std::max(gap, std::abs(s.u[j].coeffs[i] - u_ref[j].coeffs[i]));
  for (std::size_t i = 0; i < phi_ref.coeffs.size(); ++i)
    gap = std::max(gap, std::abs(s.phi.coeffs[i] - phi_ref.coeffs[i]));
  return gap;
}

void check_solver_order() {
  const auto t0 = std::chrono::steady_clock::now();
  ModelParams p;
  p.gamma = 0.2;
  p.eps = 0.2;
  const GridSpec g = GridSpec::cubic(16);
  const double e_h1 = manufactured_error(g, Integrator::IfHeun, 1e-3, 0.01, p);
  const double e_h2 = manufactured_error(g, Integrator::IfHeun, 5e-4, 0.01, p);
  const double order_heun = std::log2(e_h1 / e_h2);
  const double e_e1 = manufactured_error(g, Integrator::IfEuler, 1e-3, 0.01, p);
  const double e_e2 = manufactured_error(g, Integrator::IfEuler, 5e-4, 0.01, p);
  const double order_euler = std::log2(e_e1 / e_e2);
  // same dt on a finer grid: the gap must sit at the discretization floor
  const double e_fine = manufactured_error(GridSpec::cubic(24), Integrator::IfHeun, 1e-3, 0.01, p);
  const double spatial_gap = std::abs(e_h1 - e_fine);
  const double dt = seconds_since(t0);
  verdict(8, "solver order",
          std::abs(order_heun - 2.0) < 0.2 && std::abs(order_euler - 1.0) < 0.2 &&
              spatial_gap < 1e-10,
          fmt("heun order %.2f, euler order %.2f, spatial gap %.3g, %.1fs", order_heun,
              order_euler, spatial_gap, dt));
}

// --- 9: structural invariants ------------------------------------------------

void check_structural() {
  const auto t0 = std::chrono::steady_clock::now();
  const GridSpec g = GridSpec::cubic(32);

  // divergence-free after every step
  ModelParams p;
  p.gamma = 0.1;
  p.eps = 0.2;
  StepperConfig cfg;
  cfg.dt_max = 1e-4;
  State s = State::zero(g);
  s.u = random_divergence_free(g, 3, 31415, 0.3);
  s.phi = random_band_limited(g, 3, 31416, 0.2);
  double worst_div = 0.0;
  for (int i = 0; i < 50; ++i) {
    s = step(s, p, cfg, 1e-4);
    worst_div = std::max(worst_div, divergence_rel(s.u));
  }

  // gamma = 0 transport preserves the phase mean over 100 steps; without the
  // phase relaxation channel the fields must stay gentle to remain resolved
  ModelParams pt = p;
  pt.gamma = 0.0;
  State st = State::zero(g);
  st.u = random_divergence_free(g, 2, 27182, 0.1);
  st.phi = random_band_limited(g, 1, 27183, 0.02);
  st.phi.coeffs[0] = 0.4;
  const double a0 = st.phi.mean();
  for (int i = 0; i < 100; ++i) st = step(st, pt, cfg, 1e-4);
  const double a_drift = std::abs(st.phi.mean() - a0);

  // checkpoint resume equivalence
  State direct = State::zero(g);
  direct.u = random_divergence_free(g, 3, 16180, 0.3);
  direct.phi = random_band_limited(g, 3, 16181, 0.2);
  State resumed = direct;
  for (int i = 0; i < 20; ++i) direct = step(direct, p, cfg, 1e-4);
  for (int i = 0; i < 10; ++i) resumed = step(resumed, p, cfg, 1e-4);
  const auto ck_path = std::filesystem::temp_directory_path() / "acceptance_resume.ck";
  save_checkpoint(resumed, p, ck_path.string());
  State reloaded = load_checkpoint(ck_path.string()).state;
  std::filesystem::remove(ck_path);
  for (int i = 0; i < 10; ++i) reloaded = step(reloaded, p, cfg, 1e-4);
  double gap = 0.0, scale = 0.0;
  for (int j = 0; j < 3; ++j)
    for (std::size_t i = 0; i < direct.u[j].coeffs.size(); ++i) {
      gap = std::max(gap, std::abs(direct.u[j].coeffs[i] - reloaded.u[j].coeffs[i]));
      scale = std::max(scale, std::abs(direct.u[j].coeffs[i]));
    }
  for (std::size_t i = 0; i < direct.phi.coeffs.size(); ++i) {
    gap = std::max(gap, std::abs(direct.phi.coeffs[i] - reloaded.phi.coeffs[i]));
    scale = std::max(scale, std::abs(direct.phi.coeffs[i]));
  }
  const double resume_rel = gap / scale;
  const double dt = seconds_since(t0);
  verdict(9, "structural invariants",
          worst_div < 1e-10 && a_drift < 1e-10 && resume_rel < 1e-14,
          fmt("max div %.3g, mean drift %.3g, resume gap %.3g rel, %.1fs", worst_div, a_drift,
              resume_rel, dt));
}

}  // namespace

int main(int argc, char** argv) {
  void (*checks[])() = {check_variational,       check_energy_law, check_expansion,
                        check_littlewood_paley,  check_closed_forms,
                        check_criterion_scalars, check_sweeps,     check_solver_order,
                        check_structural};
  const int only = argc > 1 ? std::atoi(argv[1]) : 0;
  int ran = 0;
  for (int i = 0; i < 9; ++i) {
    if (only != 0 && only != i + 1) continue;
    try {
      checks[i]();
    } catch (const std::exception& e) {
      verdict(i + 1, "(exception)", false, e.what());
    }
    ++ran;
  }
  std::printf("%s (%d/%d passed)\n", failures == 0 ? "ACCEPTANCE PASS" : "ACCEPTANCE FAIL",
              ran - failures, ran);
  return failures;
}
