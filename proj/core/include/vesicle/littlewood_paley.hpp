#pragma once

#include <cmath>
#include <map>
#include <span>

#include "vesicle/field.hpp"

namespace vesicle {

/// Smooth dyadic frequency cutoffs on the torus.
///
/// psi_profile(r) is a smooth step equal to 1 for r <= 3/4 and 0 for
/// r >= 4/3; phi_profile(r) = psi(r/2) - psi(r) is supported in
/// [3/4, 8/3].  The telescoping identity makes sum_j phi(2^-j r) = 1 exactly
/// for r > 0, and psi(r) + sum_{j>=0} phi(2^-j r) = 1 for all r.
struct DyadicCutoffs {
  int j_min = 0;
  int j_max = 0;

  static double psi_profile(double r);
  static double phi_profile(double r);

  /// Block multiplier at angular frequency xi for block j.
  double block_weight(int j, double xi) const { return phi_profile(std::scalbn(xi, -j)); }
};

/// Besov / sup norms of one field at one instant.
struct BesovDiagnostics {
  double b0_inf = 0.0;   // B^0_{inf,inf}
  double bm1_inf = 0.0;  // B^{-1}_{inf,inf}
  double linf = 0.0;
  std::map<double, double> hs;  // requested Sobolev norms by order
  double timestamp = 0.0;
};

/// Select the block range covering every nonzero lattice frequency of the
/// grid.  Throws if the grid has no nonzero frequency inside any block.
DyadicCutoffs build_cutoffs(const GridSpec& grid);

/// Delta_j f: coefficients scaled by phi(2^-j |xi|); zero mode always zero.
SpectralScalar dyadic_block(const SpectralScalar& field, int j, const DyadicCutoffs& cutoffs);

/// sup_j 2^{js} ||Delta_j f||_{L^inf}, block sups on a 2x-refined grid.
double besov_norm(const SpectralScalar& field, double s, const DyadicCutoffs& cutoffs);
double besov_norm(const SpectralVector& field, double s, const DyadicCutoffs& cutoffs);

/// Homogeneous: (sum_{m != 0} |xi|^{2s} |f(m)|^2)^{1/2}; inhomogeneous adds
/// the L2 norm.
double sobolev_norm(const SpectralScalar& field, double s, bool homogeneous);
double sobolev_norm(const SpectralVector& field, double s, bool homogeneous);

/// Empirical constant of the logarithmic sup-norm inequality:
/// ||f||_Linf / (1 + ||f||_{B0} ln^{1/2}(e + ||f||_{H^{s-1}})), s > 5/2.
double log_sobolev_ratio(const SpectralScalar& field, double s, const DyadicCutoffs& cutoffs);

/// Empirical constant of ||f||_{L4} <= C ||f||_{B^{-1}}^{1/2} ||f||_{H1}^{1/2}
/// for mean-zero f; 0 when the denominator vanishes.
double interpolation_ratio(const SpectralScalar& field, const DyadicCutoffs& cutoffs);

/// Empirical constant of the commutator estimate at p=2, p1=q1=p2=q2=4 with
/// grad^s realized as the |xi|^s multiplier; 0 when the denominator vanishes.
double commutator_ratio(const SpectralScalar& f, const SpectralScalar& g, double s);

/// Fill a BesovDiagnostics record for the field (hs_orders lists the Sobolev
/// orders to include, computed inhomogeneously).
BesovDiagnostics besov_diagnostics(const SpectralVector& field, const DyadicCutoffs& cutoffs,
                                   std::span<const double> hs_orders = {}, double t = 0.0);

}  // namespace vesicle
