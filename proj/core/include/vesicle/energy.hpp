#pragma once

#include <optional>

#include "vesicle/field.hpp"

namespace vesicle {

/// Physical coefficients of the model.
struct ModelParams {
  double mu = 1.0;       // fluid viscosity, > 0
  double k = 1.0;        // bending modulus, > 0
  double gamma = 1.0;    // mobility, >= 0 (0 = pure transport)
  double eps = 0.1;      // interface width, in (0, 1)
  double M1 = 0.0;       // volume penalty, >= 0
  double M2 = 0.0;       // area penalty, >= 0
  double alpha = 0.0;    // target volume, set from the initial phase field
  double beta = 0.0;     // target area, set from the initial phase field

  void validate() const;
};

struct EnergyBreakdown {
  double e_eps = 0.0;     // bending term
  double a = 0.0;         // volume A(phi)
  double b = 0.0;         // area B(phi)
  double pen_vol = 0.0;   // (M1/2)(A - alpha)^2
  double pen_area = 0.0;  // (M2/2)(B - beta)^2
  double total = 0.0;     // e_eps + pen_vol + pen_area
  double kinetic = 0.0;   // (1/2)||u||_{L2}^2, filled by diagnostics
};

/// f(phi) = -eps * lap(phi) + (1/eps)(phi^3 - phi), cubic term dealiased.
SpectralScalar f_of_phi(const SpectralScalar& phi, double eps,
                        const DealiasRule& rule = DealiasRule::padded(3));

/// g(phi) = -lap(f) + (1/eps^2)(3 phi^2 - 1) f, composed from f_of_phi.
SpectralScalar g_of_phi(const SpectralScalar& phi, double eps,
                        const DealiasRule& rule = DealiasRule::padded(3));

/// A(phi): mean of phi over the unit torus (the zero-mode coefficient).
double volume(const SpectralScalar& phi);

/// B(phi): integral of eps/2 |grad phi|^2 + 1/(4 eps) (phi^2 - 1)^2, with
/// quadrature exact for band-limited phi.
double area(const SpectralScalar& phi, double eps);

/// (k / 2 eps) ||f(phi)||_{L2}^2 via Parseval on the dealiased f.
double bending_energy(const SpectralScalar& phi, double eps, double k,
                      const DealiasRule& rule = DealiasRule::padded(3));

EnergyBreakdown total_energy(const SpectralScalar& phi, const ModelParams& params,
                             const DealiasRule& rule = DealiasRule::padded(3));

/// delta E / delta phi = k g(phi) + M1 (A - alpha) + M2 (B - beta) f(phi).
/// The spatially constant M1 term lives in the zero mode only.
SpectralScalar chemical_potential(const SpectralScalar& phi, const ModelParams& params,
                                  const DealiasRule& rule = DealiasRule::padded(3));

/// Relative gap between the centered difference (E(phi+h eta) - E(phi-h eta)) / 2h
/// and <delta E/delta phi, eta>_{L2}.
double variational_check(const SpectralScalar& phi, const SpectralScalar& eta,
                         const ModelParams& params, double h,
                         const DealiasRule& rule = DealiasRule::padded(3));

/// Expanded form of k g(phi) from the chemical-potential identity; used as
/// the algebraic cross-check against the composed route.
SpectralScalar kg_expanded(const SpectralScalar& phi, double eps, double k,
                           const DealiasRule& rule = DealiasRule::padded(3));

}  // namespace vesicle
