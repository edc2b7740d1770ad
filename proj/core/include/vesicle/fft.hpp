#pragma once

#include <functional>
#include <span>

#include "vesicle/field.hpp"

namespace vesicle {

/// Transform real samples (row-major, third index fastest) to coefficients
/// normalized so coeffs(0) is the sample mean.
SpectralScalar forward_transform(std::span<const double> samples, const GridSpec& grid);

/// Inverse of forward_transform.  Rejects input whose inverse has an
/// imaginary residue above 1e-10 relative (non-Hermitian data).
RealVec inverse_transform(const SpectralScalar& field);

/// Band-limited interpolation of `field` onto the samples of `fine`.
/// Coarse Nyquist modes are split evenly between +-n/2 so the fine-grid
/// data stays real.  No Hermitian check.
RealVec samples_on_grid(const SpectralScalar& field, const GridSpec& fine);

/// Adjoint of the embedding used by samples_on_grid: transform fine-grid
/// samples and fold the spectrum back onto `coarse`.
SpectralScalar forward_restricted(std::span<const double> samples, const GridSpec& fine,
                                  const GridSpec& coarse);

/// Smallest even 2,3,5-smooth integer >= n.
int next_fft_size(int n);

/// Grid on which a product of total polynomial degree `degree` in fields of
/// the base band is evaluated alias-free: M > (degree+1)*n/2 per axis,
/// capped at pad*n by the rule (TwoThirds keeps the base grid).
GridSpec product_grid(const GridSpec& base, int degree, const DealiasRule& rule);

/// Co-located pointwise evaluation of several fields.
///
/// All fields are interpolated to a common evaluation grid chosen from
/// `degree` and `rule`, `fn` is applied at every sample (receiving one value
/// per field, in order), and the result is transformed back and restricted
/// to the base grid.  Under the two-thirds rule inputs and output are first
/// truncated to |m_i| <= n_i/3.
SpectralScalar pointwise_product(std::span<const SpectralScalar* const> fields, int degree,
                                 const std::function<double(const double*)>& fn,
                                 const DealiasRule& rule);

/// Mean of fn over an evaluation grid fine enough to integrate a degree-
/// `degree` expression of the fields exactly (|Q| = 1, so mean = integral).
double integrate_pointwise(std::span<const SpectralScalar* const> fields, int degree,
                           const std::function<double(const double*)>& fn);

/// Parseval: sum of |coeffs|^2 equals the mean of the squared samples.
double parseval_sum_sq(const SpectralScalar& field);

/// L2 norm over the unit torus (Parseval).
double l2_norm(const SpectralScalar& field);
double l2_norm(const SpectralVector& field);

/// Lp norm by quadrature on a refine-x grid (default 2x per the diagnostics
/// conventions).  Vector version uses the pointwise Euclidean magnitude.
double lp_norm(const SpectralScalar& field, double p, int refine = 2);
double lp_norm(const SpectralVector& field, double p, int refine = 2);

/// Sup norm estimated as the max over samples of a refine-x grid.
double linf_norm(const SpectralScalar& field, int refine = 2);
double linf_norm(const SpectralVector& field, int refine = 2);

/// Shared evaluation grid for hand-rolled product pipelines (used by the
/// time stepper to batch transforms).  samples() interpolates a field onto
/// the fine grid; to_spectral() transforms fine samples back and restricts
/// them to the base grid.
struct FineGrid {
  GridSpec base;
  GridSpec fine;
  bool two_thirds_filter = false;

  RealVec samples(const SpectralScalar& f) const;
  SpectralScalar to_spectral(std::span<const double> fine_samples) const;
};

FineGrid make_fine_grid(const GridSpec& base, int degree, const DealiasRule& rule);

/// Zero all modes with |m_i| > n_i/3 on any axis (in place).
void truncate_two_thirds(SpectralScalar& f);

}  // namespace vesicle
