#include "vesicle/spectral_ops.hpp"

#include <cmath>
#include <stdexcept>

namespace vesicle {

namespace {

// xi component with the Nyquist mode dropped (odd-order derivatives of the
// Nyquist mode are ill-defined on real data).
inline double xi_deriv(int m, int n) { return is_nyquist(m, n) ? 0.0 : kTwoPi * m; }

// Full angular frequency, Nyquist included.
inline double xi_full(int m) { return kTwoPi * m; }

}  // namespace

double laplacian_symbol(int m1, int m2, int m3, const GridSpec& g) {
  const double x1 = xi_deriv(m1, g.n1);
  const double x2 = xi_deriv(m2, g.n2);
  const double x3 = xi_deriv(m3, g.n3);
  return -(x1 * x1 + x2 * x2 + x3 * x3);
}

SpectralScalar derivative(const SpectralScalar& field, int axis, int order) {
  if (axis < 1 || axis > 3) throw std::invalid_argument("derivative: axis must be 1, 2 or 3");
  if (order < 1 || order > 6) throw std::invalid_argument("derivative: order must be in [1,6]");
  SpectralScalar out(field.grid);
  const int n[3] = {field.grid.n1, field.grid.n2, field.grid.n3};
  for_each_mode(field.grid, [&](std::size_t idx, int m1, int m2, int m3) {
    const int m = axis == 1 ? m1 : (axis == 2 ? m2 : m3);
    const Complex mult = std::pow(Complex{0.0, xi_deriv(m, n[axis - 1])}, order);
    out.coeffs[idx] = mult * field.coeffs[idx];
  });
  return out;
}

SpectralScalar laplacian(const SpectralScalar& field) {
  SpectralScalar out(field.grid);
  for_each_mode(field.grid, [&](std::size_t idx, int m1, int m2, int m3) {
    out.coeffs[idx] = laplacian_symbol(m1, m2, m3, field.grid) * field.coeffs[idx];
  });
  return out;
}

SpectralScalar bilaplacian(const SpectralScalar& field) {
  SpectralScalar out(field.grid);
  for_each_mode(field.grid, [&](std::size_t idx, int m1, int m2, int m3) {
    const double lap = laplacian_symbol(m1, m2, m3, field.grid);
    out.coeffs[idx] = lap * lap * field.coeffs[idx];
  });
  return out;
}

SpectralScalar fractional_multiplier(const SpectralScalar& field, double s) {
  if (s < -2.0 || s > 6.0)
    throw std::invalid_argument("fractional_multiplier: s must lie in [-2, 6]");
  SpectralScalar out(field.grid);
  for_each_mode(field.grid, [&](std::size_t idx, int m1, int m2, int m3) {
    if (m1 == 0 && m2 == 0 && m3 == 0) return;  // homogeneous: zero mode dropped
    const double xi2 = xi_full(m1) * xi_full(m1) + xi_full(m2) * xi_full(m2) +
                       xi_full(m3) * xi_full(m3);
    out.coeffs[idx] = std::pow(xi2, 0.5 * s) * field.coeffs[idx];
  });
  return out;
}

SpectralVector gradient(const SpectralScalar& field) {
  SpectralVector out(field.grid);
  for (int axis = 1; axis <= 3; ++axis) out[axis - 1] = derivative(field, axis, 1);
  return out;
}

SpectralScalar divergence(const SpectralVector& field) {
  const GridSpec& g = field.grid();
  SpectralScalar out(g);
  for_each_mode(g, [&](std::size_t idx, int m1, int m2, int m3) {
    const Complex i{0.0, 1.0};
    out.coeffs[idx] = i * (xi_deriv(m1, g.n1) * field[0].coeffs[idx] +
                           xi_deriv(m2, g.n2) * field[1].coeffs[idx] +
                           xi_deriv(m3, g.n3) * field[2].coeffs[idx]);
  });
  return out;
}

SpectralVector curl(const SpectralVector& field) {
  const GridSpec& g = field.grid();
  SpectralVector out(g);
  for_each_mode(g, [&](std::size_t idx, int m1, int m2, int m3) {
    const Complex i{0.0, 1.0};
    const double x1 = xi_deriv(m1, g.n1);
    const double x2 = xi_deriv(m2, g.n2);
    const double x3 = xi_deriv(m3, g.n3);
    const Complex v1 = field[0].coeffs[idx];
    const Complex v2 = field[1].coeffs[idx];
    const Complex v3 = field[2].coeffs[idx];
    out[0].coeffs[idx] = i * (x2 * v3 - x3 * v2);
    out[1].coeffs[idx] = i * (x3 * v1 - x1 * v3);
    out[2].coeffs[idx] = i * (x1 * v2 - x2 * v1);
  });
  return out;
}

SpectralVector leray_project(const SpectralVector& field) {
  const GridSpec& g = field.grid();
  SpectralVector out = field;
  for_each_mode(g, [&](std::size_t idx, int m1, int m2, int m3) {
    if (m1 == 0 && m2 == 0 && m3 == 0) return;
    const double x1 = xi_full(m1);
    const double x2 = xi_full(m2);
    const double x3 = xi_full(m3);
    const double xi2 = x1 * x1 + x2 * x2 + x3 * x3;
    const Complex dot =
        x1 * field[0].coeffs[idx] + x2 * field[1].coeffs[idx] + x3 * field[2].coeffs[idx];
    out[0].coeffs[idx] -= x1 * dot / xi2;
    out[1].coeffs[idx] -= x2 * dot / xi2;
    out[2].coeffs[idx] -= x3 * dot / xi2;
  });
  out.divergence_free = true;
  return out;
}

double divergence_rel(const SpectralVector& field) {
  const GridSpec& g = field.grid();
  double max_div = 0.0;
  for_each_mode(g, [&](std::size_t idx, int m1, int m2, int m3) {
    const Complex dot = xi_full(m1) * field[0].coeffs[idx] + xi_full(m2) * field[1].coeffs[idx] +
                        xi_full(m3) * field[2].coeffs[idx];
    max_div = std::max(max_div, std::abs(dot));
  });
  const double max_u = field.max_abs();
  return max_u > 0.0 ? max_div / max_u : 0.0;
}

SpectralScalar dealias(const SpectralScalar& field, const DealiasRule& rule) {
  SpectralScalar out = field;
  if (rule.kind == DealiasRule::Kind::TwoThirds) truncate_two_thirds(out);
  return out;
}

SpectralScalar recover_pressure(const SpectralVector& u, const SpectralVector& body_force,
                                double /*mu*/, const DealiasRule& rule) {
  const GridSpec& g = u.grid();
  // u . grad u, componentwise.
  SpectralVector advection(g);
  std::array<SpectralVector, 3> grad_u;
  for (int j = 0; j < 3; ++j) grad_u[j] = gradient(u[j]);
  for (int j = 0; j < 3; ++j) {
    const SpectralScalar* fields[6] = {&u[0],          &u[1],          &u[2],
                                       &grad_u[j][0], &grad_u[j][1], &grad_u[j][2]};
    advection[j] = pointwise_product(
        fields, 2, [](const double* v) { return v[0] * v[3] + v[1] * v[4] + v[2] * v[5]; }, rule);
  }
  for (int j = 0; j < 3; ++j) advection[j] -= body_force[j];
  const SpectralScalar rhs = divergence(advection);
  SpectralScalar p(g);
  for_each_mode(g, [&](std::size_t idx, int m1, int m2, int m3) {
    if (m1 == 0 && m2 == 0 && m3 == 0) return;  // zero mean
    const double x1 = xi_full(m1);
    const double x2 = xi_full(m2);
    const double x3 = xi_full(m3);
    p.coeffs[idx] = rhs.coeffs[idx] / (x1 * x1 + x2 * x2 + x3 * x3);
  });
  return p;
}

double grad_l2_norm(const SpectralScalar& field) {
  double sum = 0.0;
  for_each_mode(field.grid, [&](std::size_t idx, int m1, int m2, int m3) {
    sum += -laplacian_symbol(m1, m2, m3, field.grid) * std::norm(field.coeffs[idx]);
  });
  return std::sqrt(sum);
}

double grad_l2_norm(const SpectralVector& field) {
  const double a = grad_l2_norm(field[0]);
  const double b = grad_l2_norm(field[1]);
  const double c = grad_l2_norm(field[2]);
  return std::sqrt(a * a + b * b + c * c);
}

double hermitian_defect(const SpectralScalar& field) {
  const GridSpec& g = field.grid;
  double worst = 0.0;
  for_each_mode(g, [&](std::size_t idx, int m1, int m2, int m3) {
    const int j1 = index_of_freq(m1 == 0 ? 0 : (is_nyquist(m1, g.n1) ? m1 : -m1), g.n1);
    const int j2 = index_of_freq(m2 == 0 ? 0 : (is_nyquist(m2, g.n2) ? m2 : -m2), g.n2);
    const int j3 = index_of_freq(m3 == 0 ? 0 : (is_nyquist(m3, g.n3) ? m3 : -m3), g.n3);
    const Complex partner = field.coeffs[g.index(j1, j2, j3)];
    worst = std::max(worst, std::abs(field.coeffs[idx] - std::conj(partner)));
  });
  return worst;
}

}  // namespace vesicle
