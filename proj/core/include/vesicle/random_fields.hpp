#pragma once

#include <cstdint>

#include "vesicle/field.hpp"

namespace vesicle {

/// Seeded random band-limited real field: independent Gaussian amplitudes on
/// all modes with |m_i| <= band, mildly decaying with |m|.  The draw order is
/// fixed by the mode lattice, not the grid, so the same (seed, band) yields
/// the same function on any grid that resolves it.
SpectralScalar random_band_limited(const GridSpec& grid, int band, std::uint64_t seed,
                                   double amplitude = 1.0);

/// Divergence-free, mean-zero random velocity (Leray projection of three
/// independent random scalars).
SpectralVector random_divergence_free(const GridSpec& grid, int band, std::uint64_t seed,
                                      double amplitude = 1.0);

}  // namespace vesicle
