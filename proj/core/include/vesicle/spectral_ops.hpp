#pragma once

#include "vesicle/fft.hpp"
#include "vesicle/field.hpp"

namespace vesicle {

/// d^order/dx_axis^order as the multiplier (i*xi_axis)^order.  Nyquist modes
/// on the differentiated axis are zeroed.  axis is 1-based, order in [1,6].
SpectralScalar derivative(const SpectralScalar& field, int axis, int order);

/// Laplacian with the same Nyquist convention as derivative.
SpectralScalar laplacian(const SpectralScalar& field);
SpectralScalar bilaplacian(const SpectralScalar& field);

/// -|xi|^2 at mode m with Nyquist axes dropped (the symbol of laplacian()).
double laplacian_symbol(int m1, int m2, int m3, const GridSpec& g);

/// (-Delta)^(s/2) as the multiplier |xi|^s; the zero mode is always zeroed
/// (homogeneous convention).  s in [-2, 6].
SpectralScalar fractional_multiplier(const SpectralScalar& field, double s);

SpectralVector gradient(const SpectralScalar& field);
SpectralScalar divergence(const SpectralVector& field);
SpectralVector curl(const SpectralVector& field);

/// Per-mode projection u - xi (xi . u)/|xi|^2; mode 0 untouched.  The result
/// carries the divergence-free tag.
SpectralVector leray_project(const SpectralVector& field);

/// max_m |xi . u(m)| / max_m |u(m)| (0 for the zero field).
double divergence_rel(const SpectralVector& field);

/// two_thirds zeroes all modes outside the retained band; padded rules leave
/// the field untouched (they only select the product evaluation grid).
SpectralScalar dealias(const SpectralScalar& field, const DealiasRule& rule);

/// Solve -Delta P = div(u . grad u - F) per mode, zero mean.
SpectralScalar recover_pressure(const SpectralVector& u, const SpectralVector& body_force,
                                double mu, const DealiasRule& rule = DealiasRule::padded(2));

/// ||grad f||_{L2} via the spectral sum (Nyquist-zeroed frequencies).
double grad_l2_norm(const SpectralScalar& field);
double grad_l2_norm(const SpectralVector& field);

/// Largest |coeffs(m) - conj(coeffs(-m))| over all modes.
double hermitian_defect(const SpectralScalar& field);

}  // namespace vesicle
