#include <doctest.h>

#include <cmath>

#include "vesicle/energy.hpp"
#include "vesicle/fft.hpp"
#include "vesicle/random_fields.hpp"
#include "vesicle/spectral_ops.hpp"

using namespace vesicle;

namespace {

SpectralScalar cos_x1(const GridSpec& g, double amp = 1.0) {
  SpectralScalar f(g);
  f.mode(1, 0, 0) = amp / 2.0;
  f.mode(-1, 0, 0) = amp / 2.0;
  return f;
}

constexpr double kPi = 3.14159265358979323846;

}  // namespace

TEST_CASE("params validation") {
  ModelParams p;
  CHECK_NOTHROW(p.validate());
  p.gamma = 0.0;  // pure transport is allowed
  CHECK_NOTHROW(p.validate());
  p.gamma = -1.0;
  CHECK_THROWS(p.validate());
  p = ModelParams{};
  p.eps = 1.5;
  CHECK_THROWS(p.validate());
  p = ModelParams{};
  p.mu = 0.0;
  CHECK_THROWS(p.validate());
}

TEST_CASE("f(phi) closed form for a constant") {
  const GridSpec g = GridSpec::cubic(16);
  const double c = 0.5, eps = 0.1;
  const SpectralScalar f = f_of_phi(SpectralScalar::constant(g, c), eps);
  // f = (1/eps)(c^3 - c) with no Laplacian contribution
  CHECK(f.mean() == doctest::Approx((c * c * c - c) / eps).epsilon(1e-13));
  // and nothing leaks into nonzero modes
  double off = 0.0;
  for (std::size_t i = 1; i < f.coeffs.size(); ++i) off = std::max(off, std::abs(f.coeffs[i]));
  CHECK(off < 1e-14);
}

TEST_CASE("f(phi) for a cosine") {
  const GridSpec g = GridSpec::cubic(16);
  const double eps = 0.1;
  const SpectralScalar phi = cos_x1(g);
  const SpectralScalar f = f_of_phi(phi, eps);
  // -eps lap cos = eps (2 pi)^2 cos; (cos^3 - cos)/eps = (-cos/4 + cos(3)/4)/eps
  CHECK(f.mode(1, 0, 0).real() ==
        doctest::Approx(0.5 * (eps * kTwoPi * kTwoPi - 0.25 / eps)).epsilon(1e-12));
  CHECK(f.mode(3, 0, 0).real() == doctest::Approx(0.5 * 0.25 / eps).epsilon(1e-12));
}

TEST_CASE("volume is the mean") {
  const GridSpec g = GridSpec::cubic(16);
  SpectralScalar phi = cos_x1(g);
  phi.coeffs[0] = 0.3;
  CHECK(volume(phi) == doctest::Approx(0.3).epsilon(1e-15));
}

TEST_CASE("area closed forms") {
  const GridSpec g = GridSpec::cubic(32);
  const double eps = 0.1;
  // B(cos(2 pi x1)): eps/2 (2 pi)^2 * 1/2 + 1/(4 eps) int (cos^2 - 1)^2
  //   = 0.1 pi^2 + (1/0.4)(3/8 - 2/2 + 1) = 0.1 pi^2 + 0.9375
  const double oracle = 0.1 * kPi * kPi + 0.9375;
  CHECK(std::abs(area(cos_x1(g), eps) - oracle) < 1e-7);
  // B(0) = 1/(4 eps) = 2.5
  CHECK(area(SpectralScalar::zero(g), eps) == doctest::Approx(2.5).epsilon(1e-13));
  // B(+-1) = 0
  CHECK(area(SpectralScalar::constant(g, 1.0), eps) == doctest::Approx(0.0));
}

TEST_CASE("bending energy of a constant phase") {
  const GridSpec g = GridSpec::cubic(16);
  // f = (1/eps)(c^3 - c); E_eps = (k/2 eps) f^2
  const double eps = 0.1, k = 1.0, c = 0.5;
  const double f_val = (c * c * c - c) / eps;
  const double oracle = (k / (2.0 * eps)) * f_val * f_val;  // 70.3125
  CHECK(bending_energy(SpectralScalar::constant(g, c), eps, k) ==
        doctest::Approx(oracle).epsilon(1e-12));
  CHECK(oracle == doctest::Approx(70.3125));
}

TEST_CASE("total energy decomposition is coherent") {
  const GridSpec g = GridSpec::cubic(16);
  ModelParams p;
  p.eps = 0.2;
  p.M1 = 2.0;
  p.M2 = 3.0;
  p.alpha = 0.1;
  p.beta = 1.0;
  SpectralScalar phi = random_band_limited(g, 3, 5, 0.3);
  const EnergyBreakdown e = total_energy(phi, p);
  CHECK(e.a == doctest::Approx(volume(phi)));
  CHECK(e.b == doctest::Approx(area(phi, p.eps)));
  CHECK(e.pen_vol == doctest::Approx(0.5 * p.M1 * (e.a - p.alpha) * (e.a - p.alpha)));
  CHECK(e.pen_area == doctest::Approx(0.5 * p.M2 * (e.b - p.beta) * (e.b - p.beta)));
  CHECK(e.total == doctest::Approx(e.e_eps + e.pen_vol + e.pen_area));
}

TEST_CASE("chemical potential is the discrete energy gradient") {
  const GridSpec g = GridSpec::cubic(32);
  ModelParams p;
  p.eps = 0.1;
  p.M1 = 1.0;
  p.M2 = 1.0;
  const SpectralScalar phi = random_band_limited(g, 3, 17, 0.2);
  const SpectralScalar eta = random_band_limited(g, 3, 18, 1.0);
  const double gap4 = variational_check(phi, eta, p, 1e-4);
  CHECK(gap4 < 1e-6);
  const double gap3 = variational_check(phi, eta, p, 1e-3);
  // centered difference: error ~ h^2
  CHECK(gap3 / std::max(gap4, 1e-16) > 10.0);
}

TEST_CASE("expanded chemical potential equals the composed form") {
  const GridSpec g = GridSpec::cubic(32);
  const double eps = 0.1, k = 2.0;
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    const SpectralScalar phi = random_band_limited(g, 3, 900 + seed, 0.3);
    const SpectralScalar composed = k * g_of_phi(phi, eps);
    const SpectralScalar expanded = kg_expanded(phi, eps, k);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < composed.coeffs.size(); ++i) {
      num = std::max(num, std::abs(composed.coeffs[i] - expanded.coeffs[i]));
      den = std::max(den, std::abs(composed.coeffs[i]));
    }
    CHECK(num / den < 1e-9);
  }
}
