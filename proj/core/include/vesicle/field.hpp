#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <new>
#include <stdexcept>
#include <vector>

#include "vesicle/grid.hpp"

namespace vesicle {

using Complex = std::complex<double>;

/// 64-byte aligned allocator so field buffers can be handed to FFTW
/// new-array execute without copies.
template <typename T>
struct AlignedAllocator {
  using value_type = T;
  static constexpr std::size_t alignment = 64;

  AlignedAllocator() = default;
  template <typename U>
  AlignedAllocator(const AlignedAllocator<U>&) {}

  T* allocate(std::size_t n) {
    if (n == 0) return nullptr;
    const std::size_t bytes = ((n * sizeof(T) + alignment - 1) / alignment) * alignment;
    void* p = std::aligned_alloc(alignment, bytes);
    if (!p) throw std::bad_alloc();
    return static_cast<T*>(p);
  }
  void deallocate(T* p, std::size_t) noexcept { std::free(p); }

  template <typename U>
  bool operator==(const AlignedAllocator<U>&) const {
    return true;
  }
};

using ComplexVec = std::vector<Complex, AlignedAllocator<Complex>>;
using RealVec = std::vector<double, AlignedAllocator<double>>;

/// Fourier representation of a real scalar field on the torus.
///
/// Coefficients are normalized so that coeffs[0] is the mean of the samples;
/// a field representing real data satisfies coeffs(-m) = conj(coeffs(m)).
struct SpectralScalar {
  GridSpec grid;
  ComplexVec coeffs;

  SpectralScalar() = default;
  explicit SpectralScalar(const GridSpec& g) : grid(g), coeffs(g.size(), Complex{0.0, 0.0}) {}

  static SpectralScalar zero(const GridSpec& g) { return SpectralScalar(g); }

  static SpectralScalar constant(const GridSpec& g, double value) {
    SpectralScalar f(g);
    f.coeffs[0] = value;
    return f;
  }

  Complex& at(int i1, int i2, int i3) { return coeffs[grid.index(i1, i2, i3)]; }
  const Complex& at(int i1, int i2, int i3) const { return coeffs[grid.index(i1, i2, i3)]; }

  /// Coefficient of mode m (indices wrapped into FFT bin order).
  Complex& mode(int m1, int m2, int m3) {
    return coeffs[grid.index(index_of_freq(m1, grid.n1), index_of_freq(m2, grid.n2),
                             index_of_freq(m3, grid.n3))];
  }
  const Complex& mode(int m1, int m2, int m3) const {
    return coeffs[grid.index(index_of_freq(m1, grid.n1), index_of_freq(m2, grid.n2),
                             index_of_freq(m3, grid.n3))];
  }

  double mean() const { return coeffs.empty() ? 0.0 : coeffs[0].real(); }

  double max_abs() const {
    double m = 0.0;
    for (const Complex& c : coeffs) m = std::max(m, std::abs(c));
    return m;
  }

  bool all_finite() const {
    for (const Complex& c : coeffs)
      if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
    return true;
  }

  SpectralScalar& operator+=(const SpectralScalar& o) {
    require_same_grid(o);
    for (std::size_t i = 0; i < coeffs.size(); ++i) coeffs[i] += o.coeffs[i];
    return *this;
  }
  SpectralScalar& operator-=(const SpectralScalar& o) {
    require_same_grid(o);
    for (std::size_t i = 0; i < coeffs.size(); ++i) coeffs[i] -= o.coeffs[i];
    return *this;
  }
  SpectralScalar& operator*=(double s) {
    for (Complex& c : coeffs) c *= s;
    return *this;
  }

  /// this += a * o
  void axpy(double a, const SpectralScalar& o) {
    require_same_grid(o);
    for (std::size_t i = 0; i < coeffs.size(); ++i) coeffs[i] += a * o.coeffs[i];
  }

  void require_same_grid(const SpectralScalar& o) const {
    if (!(grid == o.grid)) throw std::invalid_argument("SpectralScalar: grid mismatch");
  }
};

inline SpectralScalar operator+(SpectralScalar a, const SpectralScalar& b) { return a += b; }
inline SpectralScalar operator-(SpectralScalar a, const SpectralScalar& b) { return a -= b; }
inline SpectralScalar operator*(double s, SpectralScalar a) { return a *= s; }

/// Three scalar components on a shared grid.
struct SpectralVector {
  std::array<SpectralScalar, 3> comp;
  bool divergence_free = false;

  SpectralVector() = default;
  explicit SpectralVector(const GridSpec& g)
      : comp{SpectralScalar(g), SpectralScalar(g), SpectralScalar(g)} {}

  static SpectralVector zero(const GridSpec& g) { return SpectralVector(g); }

  const GridSpec& grid() const { return comp[0].grid; }

  SpectralScalar& operator[](int i) { return comp[i]; }
  const SpectralScalar& operator[](int i) const { return comp[i]; }

  double max_abs() const {
    return std::max({comp[0].max_abs(), comp[1].max_abs(), comp[2].max_abs()});
  }

  bool all_finite() const {
    return comp[0].all_finite() && comp[1].all_finite() && comp[2].all_finite();
  }

  SpectralVector& operator+=(const SpectralVector& o) {
    for (int i = 0; i < 3; ++i) comp[i] += o.comp[i];
    return *this;
  }
  SpectralVector& operator*=(double s) {
    for (int i = 0; i < 3; ++i) comp[i] *= s;
    return *this;
  }
  void axpy(double a, const SpectralVector& o) {
    for (int i = 0; i < 3; ++i) comp[i].axpy(a, o.comp[i]);
  }
};

/// How nonlinear products are evaluated.
struct DealiasRule {
  enum class Kind { TwoThirds, Padded };
  Kind kind = Kind::Padded;
  int pad = 3;

  static DealiasRule two_thirds() { return {Kind::TwoThirds, 0}; }
  static DealiasRule padded(int p) {
    if (p < 1) throw std::invalid_argument("DealiasRule: pad factor must be >= 1");
    return {Kind::Padded, p};
  }

  bool operator==(const DealiasRule&) const = default;
};

}  // namespace vesicle
