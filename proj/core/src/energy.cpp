#include "vesicle/energy.hpp"

#include <cmath>
#include <stdexcept>

#include "vesicle/fft.hpp"
#include "vesicle/spectral_ops.hpp"

namespace vesicle {

void ModelParams::validate() const {
  if (mu <= 0.0) throw std::invalid_argument("ModelParams: mu must be > 0");
  if (k <= 0.0) throw std::invalid_argument("ModelParams: k must be > 0");
  if (gamma < 0.0) throw std::invalid_argument("ModelParams: gamma must be >= 0");
  if (eps <= 0.0 || eps >= 1.0) throw std::invalid_argument("ModelParams: eps must be in (0,1)");
  if (M1 < 0.0) throw std::invalid_argument("ModelParams: M1 must be >= 0");
  if (M2 < 0.0) throw std::invalid_argument("ModelParams: M2 must be >= 0");
  if (beta < 0.0) throw std::invalid_argument("ModelParams: beta must be >= 0");
}

SpectralScalar f_of_phi(const SpectralScalar& phi, double eps, const DealiasRule& rule) {
  if (eps <= 0.0) throw std::invalid_argument("f_of_phi: eps must be > 0");
  const SpectralScalar* fields[1] = {&phi};
  SpectralScalar cubic = pointwise_product(
      fields, 3, [](const double* v) { return v[0] * v[0] * v[0] - v[0]; }, rule);
  SpectralScalar f = laplacian(phi);
  f *= -eps;
  f.axpy(1.0 / eps, cubic);
  return f;
}

SpectralScalar g_of_phi(const SpectralScalar& phi, double eps, const DealiasRule& rule) {
  if (eps <= 0.0) throw std::invalid_argument("g_of_phi: eps must be > 0");
  const SpectralScalar f = f_of_phi(phi, eps, rule);
  const SpectralScalar* fields[2] = {&phi, &f};
  SpectralScalar coupled = pointwise_product(
      fields, 3, [](const double* v) { return (3.0 * v[0] * v[0] - 1.0) * v[1]; }, rule);
  SpectralScalar g = laplacian(f);
  g *= -1.0;
  g.axpy(1.0 / (eps * eps), coupled);
  return g;
}

double volume(const SpectralScalar& phi) { return phi.mean(); }

double area(const SpectralScalar& phi, double eps) {
  if (eps <= 0.0) throw std::invalid_argument("area: eps must be > 0");
  // eps/2 |grad phi|^2 is exact by Parseval; the quartic well goes through
  // exact quadrature.
  const double grad = grad_l2_norm(phi);
  const SpectralScalar* fields[1] = {&phi};
  const double well = integrate_pointwise(fields, 4, [](const double* v) {
    const double w = v[0] * v[0] - 1.0;
    return w * w;
  });
  return 0.5 * eps * grad * grad + 0.25 / eps * well;
}

double bending_energy(const SpectralScalar& phi, double eps, double k, const DealiasRule& rule) {
  if (eps <= 0.0 || k <= 0.0) throw std::invalid_argument("bending_energy: need eps > 0, k > 0");
  return 0.5 * k / eps * parseval_sum_sq(f_of_phi(phi, eps, rule));
}

EnergyBreakdown total_energy(const SpectralScalar& phi, const ModelParams& params,
                             const DealiasRule& rule) {
  EnergyBreakdown e;
  e.e_eps = bending_energy(phi, params.eps, params.k, rule);
  e.a = volume(phi);
  e.b = area(phi, params.eps);
  e.pen_vol = 0.5 * params.M1 * (e.a - params.alpha) * (e.a - params.alpha);
  e.pen_area = 0.5 * params.M2 * (e.b - params.beta) * (e.b - params.beta);
  e.total = e.e_eps + e.pen_vol + e.pen_area;
  return e;
}

SpectralScalar chemical_potential(const SpectralScalar& phi, const ModelParams& params,
                                  const DealiasRule& rule) {
  SpectralScalar f = f_of_phi(phi, params.eps, rule);
  SpectralScalar chem = g_of_phi(phi, params.eps, rule);
  chem *= params.k;
  chem.coeffs[0] += params.M1 * (volume(phi) - params.alpha);
  if (params.M2 != 0.0) {
    const double b = area(phi, params.eps);
    chem.axpy(params.M2 * (b - params.beta), f);
  }
  return chem;
}

double variational_check(const SpectralScalar& phi, const SpectralScalar& eta,
                         const ModelParams& params, double h, const DealiasRule& rule) {
  if (h <= 0.0) throw std::invalid_argument("variational_check: h must be > 0");
  SpectralScalar plus = phi;
  plus.axpy(h, eta);
  SpectralScalar minus = phi;
  minus.axpy(-h, eta);
  const double e_plus = total_energy(plus, params, rule).total;
  const double e_minus = total_energy(minus, params, rule).total;
  const double diff = (e_plus - e_minus) / (2.0 * h);

  const SpectralScalar chem = chemical_potential(phi, params, rule);
  // Real L2 pairing via Parseval: sum over modes of chem(m) conj(eta(m)).
  double pairing = 0.0;
  for (std::size_t i = 0; i < chem.coeffs.size(); ++i)
    pairing += (chem.coeffs[i] * std::conj(eta.coeffs[i])).real();
  return std::abs(diff - pairing) / (1.0 + std::abs(pairing));
}

SpectralScalar kg_expanded(const SpectralScalar& phi, double eps, double k,
                           const DealiasRule& rule) {
  const SpectralScalar* one[1] = {&phi};
  SpectralScalar cubic = pointwise_product(
      one, 3, [](const double* v) { return v[0] * v[0] * v[0] - v[0]; }, rule);
  SpectralScalar quintic = pointwise_product(
      one, 5,
      [](const double* v) {
        const double p = v[0];
        return (3.0 * p * p - 1.0) * (p * p - 1.0) * p;
      },
      rule);
  const SpectralScalar lap_phi = laplacian(phi);
  const SpectralScalar* two[2] = {&phi, &lap_phi};
  SpectralScalar mixed = pointwise_product(
      two, 3, [](const double* v) { return (3.0 * v[0] * v[0] - 1.0) * v[1]; }, rule);

  SpectralScalar out = bilaplacian(phi);
  out *= k * eps;
  out.axpy(-k / eps, laplacian(cubic));
  out.axpy(-k / eps, mixed);
  out.axpy(k / (eps * eps * eps), quintic);
  return out;
}

}  // namespace vesicle
