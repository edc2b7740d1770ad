#include "vesicle/random_fields.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "vesicle/spectral_ops.hpp"

namespace vesicle {

SpectralScalar random_band_limited(const GridSpec& grid, int band, std::uint64_t seed,
                                   double amplitude) {
  grid.validate();
  if (band < 1) throw std::invalid_argument("random_band_limited: band must be >= 1");
  if (2 * band >= grid.n1 || 2 * band >= grid.n2 || 2 * band >= grid.n3)
    throw std::invalid_argument("random_band_limited: grid does not resolve the band");

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);

  SpectralScalar f(grid);
  // Half lattice: one representative per conjugate pair, fixed order.
  for (int m1 = 0; m1 <= band; ++m1) {
    for (int m2 = (m1 == 0 ? 0 : -band); m2 <= band; ++m2) {
      for (int m3 = -band; m3 <= band; ++m3) {
        if (m1 == 0 && m2 == 0 && m3 <= 0) continue;
        if (m1 == 0 && m2 == 0 && m3 < 0) continue;
        if (m1 == 0 && m2 < 0) continue;
        const double a = gauss(rng);
        const double b = gauss(rng);
        const double decay = 1.0 / (1.0 + m1 * m1 + m2 * m2 + m3 * m3);
        const Complex c = 0.5 * amplitude * decay * Complex{a, b};
        f.mode(m1, m2, m3) = c;
        f.mode(-m1, -m2, -m3) = std::conj(c);
      }
    }
  }
  return f;
}

SpectralVector random_divergence_free(const GridSpec& grid, int band, std::uint64_t seed,
                                      double amplitude) {
  SpectralVector v(grid);
  for (int j = 0; j < 3; ++j)
    v[j] = random_band_limited(grid, band, seed * 3 + 1000003 * j, amplitude);
  SpectralVector u = leray_project(v);
  for (int j = 0; j < 3; ++j) u[j].coeffs[0] = Complex{0.0, 0.0};
  return u;
}

}  // namespace vesicle
