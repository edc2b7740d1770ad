#include "vesicle/littlewood_paley.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "vesicle/fft.hpp"
#include "vesicle/spectral_ops.hpp"

namespace vesicle {

namespace {

// C-infinity step: 0 for t <= 0, 1 for t >= 1, built from the standard
// exp(-1/t) bump.
double smooth_step(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  const double a = std::exp(-1.0 / t);
  const double b = std::exp(-1.0 / (1.0 - t));
  return a / (a + b);
}

double xi_of_mode(int m1, int m2, int m3) {
  return kTwoPi * std::sqrt(double(m1) * m1 + double(m2) * m2 + double(m3) * m3);
}

}  // namespace

double DyadicCutoffs::psi_profile(double r) {
  // 1 on r <= 3/4, 0 on r >= 4/3.
  return smooth_step((4.0 / 3.0 - r) / (4.0 / 3.0 - 3.0 / 4.0));
}

double DyadicCutoffs::phi_profile(double r) { return psi_profile(0.5 * r) - psi_profile(r); }

DyadicCutoffs build_cutoffs(const GridSpec& grid) {
  grid.validate();
  const double xi_min = kTwoPi;  // |m| = 1
  const double xi_max =
      kTwoPi * std::sqrt(double(grid.n1) * grid.n1 + double(grid.n2) * grid.n2 +
                         double(grid.n3) * grid.n3) / 2.0;
  DyadicCutoffs c;
  // Block j touches frequencies in (3/4 * 2^j, 8/3 * 2^j).
  c.j_min = static_cast<int>(std::ceil(std::log2(xi_min * 3.0 / 8.0)));
  c.j_max = static_cast<int>(std::floor(std::log2(xi_max * 4.0 / 3.0)));
  if (c.j_max < c.j_min)
    throw std::invalid_argument("build_cutoffs: grid too small to host any dyadic block");
  return c;
}

SpectralScalar dyadic_block(const SpectralScalar& field, int j, const DyadicCutoffs& cutoffs) {
  if (j < cutoffs.j_min || j > cutoffs.j_max)
    throw std::invalid_argument("dyadic_block: block index out of range");
  SpectralScalar out(field.grid);
  for_each_mode(field.grid, [&](std::size_t idx, int m1, int m2, int m3) {
    if (m1 == 0 && m2 == 0 && m3 == 0) return;
    const double w = cutoffs.block_weight(j, xi_of_mode(m1, m2, m3));
    if (w != 0.0) out.coeffs[idx] = w * field.coeffs[idx];
  });
  return out;
}

double besov_norm(const SpectralScalar& field, double s, const DyadicCutoffs& cutoffs) {
  double best = 0.0;
  for (int j = cutoffs.j_min; j <= cutoffs.j_max; ++j) {
    const SpectralScalar block = dyadic_block(field, j, cutoffs);
    if (block.max_abs() == 0.0) continue;
    best = std::max(best, std::pow(2.0, j * s) * linf_norm(block, 2));
  }
  return best;
}

double besov_norm(const SpectralVector& field, double s, const DyadicCutoffs& cutoffs) {
  double best = 0.0;
  for (int j = cutoffs.j_min; j <= cutoffs.j_max; ++j) {
    SpectralVector block(field.grid());
    bool empty = true;
    for (int i = 0; i < 3; ++i) {
      block[i] = dyadic_block(field[i], j, cutoffs);
      empty = empty && block[i].max_abs() == 0.0;
    }
    if (empty) continue;
    best = std::max(best, std::pow(2.0, j * s) * linf_norm(block, 2));
  }
  return best;
}

double sobolev_norm(const SpectralScalar& field, double s, bool homogeneous) {
  double sum = 0.0;
  for_each_mode(field.grid, [&](std::size_t idx, int m1, int m2, int m3) {
    if (m1 == 0 && m2 == 0 && m3 == 0) return;
    const double xi = xi_of_mode(m1, m2, m3);
    sum += std::pow(xi, 2.0 * s) * std::norm(field.coeffs[idx]);
  });
  const double hom = std::sqrt(sum);
  return homogeneous ? hom : hom + l2_norm(field);
}

double sobolev_norm(const SpectralVector& field, double s, bool homogeneous) {
  double hom = 0.0;
  for (int i = 0; i < 3; ++i) {
    const double h = sobolev_norm(field[i], s, true);
    hom += h * h;
  }
  hom = std::sqrt(hom);
  return homogeneous ? hom : hom + l2_norm(field);
}

double log_sobolev_ratio(const SpectralScalar& field, double s, const DyadicCutoffs& cutoffs) {
  if (s <= 2.5) throw std::invalid_argument("log_sobolev_ratio: s must exceed 5/2");
  const double linf = linf_norm(field, 2);
  if (linf == 0.0) return 0.0;
  const double b0 = besov_norm(field, 0.0, cutoffs);
  const double hs = sobolev_norm(field, s - 1.0, false);
  const double denom = 1.0 + b0 * std::sqrt(std::log(std::exp(1.0) + hs));
  return linf / denom;
}

double interpolation_ratio(const SpectralScalar& field, const DyadicCutoffs& cutoffs) {
  const double bm1 = besov_norm(field, -1.0, cutoffs);
  const double h1 = sobolev_norm(field, 1.0, true);
  const double denom = std::sqrt(bm1) * std::sqrt(h1);
  if (denom == 0.0) return 0.0;
  return lp_norm(field, 4.0, 2) / denom;
}

double commutator_ratio(const SpectralScalar& f, const SpectralScalar& g, double s) {
  if (s <= 1.0) throw std::invalid_argument("commutator_ratio: s must exceed 1");
  const DealiasRule rule = DealiasRule::padded(2);
  const SpectralScalar* pair_fg[2] = {&f, &g};
  const SpectralScalar fg = pointwise_product(
      pair_fg, 2, [](const double* v) { return v[0] * v[1]; }, rule);
  const SpectralScalar grad_s_g = fractional_multiplier(g, s);
  const SpectralScalar* pair_fgs[2] = {&f, &grad_s_g};
  const SpectralScalar f_grad_s_g = pointwise_product(
      pair_fgs, 2, [](const double* v) { return v[0] * v[1]; }, rule);
  const SpectralScalar lhs_field = fractional_multiplier(fg, s) - f_grad_s_g;
  const double lhs = l2_norm(lhs_field);

  const double rhs = lp_norm(gradient(f), 4.0, 2) *
                         lp_norm(fractional_multiplier(g, s - 1.0), 4.0, 2) +
                     lp_norm(fractional_multiplier(f, s), 4.0, 2) * lp_norm(g, 4.0, 2);
  if (rhs == 0.0) return 0.0;
  return lhs / rhs;
}

BesovDiagnostics besov_diagnostics(const SpectralVector& field, const DyadicCutoffs& cutoffs,
                                   std::span<const double> hs_orders, double t) {
  BesovDiagnostics d;
  d.b0_inf = besov_norm(field, 0.0, cutoffs);
  d.bm1_inf = besov_norm(field, -1.0, cutoffs);
  d.linf = linf_norm(field, 2);
  for (double s : hs_orders) d.hs[s] = sobolev_norm(field, s, false);
  d.timestamp = t;
  return d;
}

}  // namespace vesicle
