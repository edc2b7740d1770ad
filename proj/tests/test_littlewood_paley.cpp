#include <doctest.h>

#include <cmath>

#include "vesicle/fft.hpp"
#include "vesicle/littlewood_paley.hpp"
#include "vesicle/random_fields.hpp"
#include "vesicle/spectral_ops.hpp"

using namespace vesicle;

TEST_CASE("cutoff profile supports") {
  CHECK(DyadicCutoffs::psi_profile(0.5) == doctest::Approx(1.0));
  CHECK(DyadicCutoffs::psi_profile(0.75) == doctest::Approx(1.0));
  CHECK(DyadicCutoffs::psi_profile(4.0 / 3.0) == doctest::Approx(0.0));
  CHECK(DyadicCutoffs::psi_profile(2.0) == doctest::Approx(0.0));
  CHECK(DyadicCutoffs::phi_profile(0.5) == doctest::Approx(0.0));
  CHECK(DyadicCutoffs::phi_profile(3.0) == doctest::Approx(0.0));  // beyond 8/3
  CHECK(DyadicCutoffs::phi_profile(1.1) > 0.0);
  // telescoping identity phi(r) = psi(r/2) - psi(r) at interior points
  for (double r : {0.8, 1.0, 1.5, 2.0, 2.5})
    CHECK(DyadicCutoffs::phi_profile(r) ==
          doctest::Approx(DyadicCutoffs::psi_profile(r / 2.0) - DyadicCutoffs::psi_profile(r))
              .epsilon(1e-14));
}

TEST_CASE("partition of unity telescopes exactly") {
  const GridSpec g = GridSpec::cubic(64);
  const DyadicCutoffs cut = build_cutoffs(g);
  double worst = 0.0;
  for_each_mode(g, [&](std::size_t, int m1, int m2, int m3) {
    if (m1 == 0 && m2 == 0 && m3 == 0) return;
    const double xi = kTwoPi * std::sqrt(double(m1) * m1 + double(m2) * m2 + double(m3) * m3);
    double sum = 0.0;
    for (int j = cut.j_min; j <= cut.j_max; ++j) sum += cut.block_weight(j, xi);
    worst = std::max(worst, std::abs(sum - 1.0));
  });
  CHECK(worst < 1e-12);
}

TEST_CASE("blocks reassemble the mean-free field") {
  const GridSpec g = GridSpec::cubic(32);
  const DyadicCutoffs cut = build_cutoffs(g);
  SpectralScalar f = random_band_limited(g, 10, 3);
  f.coeffs[0] = 0.7;
  SpectralScalar sum = SpectralScalar::zero(g);
  for (int j = cut.j_min; j <= cut.j_max; ++j) sum += dyadic_block(f, j, cut);
  double err = 0.0;
  for (std::size_t i = 1; i < f.coeffs.size(); ++i)
    err = std::max(err, std::abs(sum.coeffs[i] - f.coeffs[i]));
  CHECK(err < 1e-12);
  CHECK(std::abs(sum.coeffs[0]) == 0.0);  // mean is never in any block
}

TEST_CASE("the fundamental mode lives in blocks 2 and 3") {
  const GridSpec g = GridSpec::cubic(32);
  const DyadicCutoffs cut = build_cutoffs(g);
  SpectralScalar f(g);
  f.mode(1, 0, 0) = 0.5;
  f.mode(-1, 0, 0) = 0.5;
  // |xi| = 2 pi ~ 6.28; phi(2^-j |xi|) != 0 iff 2^-j |xi| in (3/4, 8/3)
  // the j=3 weight phi(2 pi / 8) is tiny (the support edge) but nonzero
  for (int j = cut.j_min; j <= cut.j_max; ++j) {
    const double mass = l2_norm(dyadic_block(f, j, cut));
    if (j == 2 || j == 3)
      CHECK(mass > 1e-10);
    else
      CHECK(mass < 1e-14);
  }
}

TEST_CASE("besov norm of a single cosine") {
  const GridSpec g = GridSpec::cubic(32);
  const DyadicCutoffs cut = build_cutoffs(g);
  SpectralScalar f(g);
  f.mode(1, 0, 0) = 0.5;
  f.mode(-1, 0, 0) = 0.5;
  // weights at j=2,3 sum to 1; the sup block carries at least half the mode
  const double b0 = besov_norm(f, 0.0, cut);
  CHECK(b0 > 0.5);
  CHECK(b0 <= 1.0 + 1e-10);
  // s = -1 scales the sup block by 2^{-j}
  const double bm1 = besov_norm(f, -1.0, cut);
  CHECK(bm1 > 0.5 / 8.0);
  CHECK(bm1 <= 0.25 + 1e-10);
}

TEST_CASE("sobolev norm closed forms") {
  const GridSpec g = GridSpec::cubic(32);
  SpectralScalar f(g);
  f.mode(1, 0, 0) = 0.5;
  f.mode(-1, 0, 0) = 0.5;
  // ||cos||_{H1 hom} = 2 pi ||cos||_{L2} = 2 pi / sqrt(2)
  CHECK(sobolev_norm(f, 1.0, true) == doctest::Approx(kTwoPi / std::sqrt(2.0)).epsilon(1e-12));
  CHECK(sobolev_norm(f, 0.0, true) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));
  // inhomogeneous convention: homogeneous part plus the L2 norm
  const double l2 = std::sqrt(0.5);
  CHECK(sobolev_norm(f, 1.0, false) == doctest::Approx(kTwoPi * l2 + l2).epsilon(1e-12));
}

TEST_CASE("embedding: b0 bounded by the sup norm on a corpus") {
  const GridSpec g = GridSpec::cubic(32);
  const DyadicCutoffs cut = build_cutoffs(g);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    SpectralScalar f = random_band_limited(g, 5, 40 + seed);
    f.coeffs[0] = 0.0;
    const double ratio = besov_norm(f, 0.0, cut) / linf_norm(f, 2);
    CHECK(ratio < 2.0);
    CHECK(std::isfinite(ratio));
  }
}

TEST_CASE("lemma ratio sweeps stay finite") {
  const GridSpec g = GridSpec::cubic(32);
  const DyadicCutoffs cut = build_cutoffs(g);
  SpectralScalar f = random_band_limited(g, 4, 91);
  f.coeffs[0] = 0.0;
  SpectralScalar h = random_band_limited(g, 4, 92);
  h.coeffs[0] = 0.0;
  CHECK(std::isfinite(log_sobolev_ratio(f, 3.0, cut)));
  CHECK(log_sobolev_ratio(f, 3.0, cut) > 0.0);
  CHECK_THROWS(log_sobolev_ratio(f, 2.0, cut));  // needs s > 5/2
  CHECK(std::isfinite(interpolation_ratio(f, cut)));
  CHECK(std::isfinite(commutator_ratio(f, h, 1.5)));
  CHECK(interpolation_ratio(SpectralScalar::zero(g), cut) == 0.0);
}

TEST_CASE("besov_diagnostics fills requested sobolev orders") {
  const GridSpec g = GridSpec::cubic(16);
  const DyadicCutoffs cut = build_cutoffs(g);
  SpectralVector v(g);
  for (int j = 0; j < 3; ++j) v[j] = random_band_limited(g, 3, 60 + j);
  const double orders[] = {1.0, 2.0};
  const BesovDiagnostics d = besov_diagnostics(v, cut, orders, 1.5);
  CHECK(d.timestamp == 1.5);
  CHECK(d.hs.size() == 2);
  CHECK(d.hs.at(1.0) == doctest::Approx(sobolev_norm(v, 1.0, false)));
  CHECK(d.linf == doctest::Approx(linf_norm(v, 2)));
}

TEST_CASE("grids too coarse for any block are rejected") {
  CHECK_NOTHROW(build_cutoffs(GridSpec::cubic(4)));
}
