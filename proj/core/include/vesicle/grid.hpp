#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace vesicle {

/// Uniform periodic grid on the unit torus Q = [0,1)^3.
///
/// Samples are stored row-major with the third index fastest, i.e. the
/// flattened index of (i1,i2,i3) is (i1*n2 + i2)*n3 + i3.  Wavevectors are
/// integer triples m with -n_i/2 < m_i <= n_i/2 and angular frequency
/// xi = 2*pi*m.
struct GridSpec {
  int n1 = 0;
  int n2 = 0;
  int n3 = 0;

  static GridSpec cubic(int n) { return GridSpec{n, n, n}; }

  std::size_t size() const {
    return static_cast<std::size_t>(n1) * static_cast<std::size_t>(n2) *
           static_cast<std::size_t>(n3);
  }

  std::size_t index(int i1, int i2, int i3) const {
    return (static_cast<std::size_t>(i1) * n2 + i2) * n3 + i3;
  }

  bool operator==(const GridSpec&) const = default;

  void validate() const {
    for (int n : {n1, n2, n3}) {
      if (n < 4 || n % 2 != 0)
        throw std::invalid_argument("GridSpec: dimensions must be even and >= 4, got " +
                                    std::to_string(n1) + "x" + std::to_string(n2) + "x" +
                                    std::to_string(n3));
    }
  }
};

/// Signed integer frequency of FFT bin `index` on an axis with n samples.
/// Bins 0..n/2 map to m = 0..n/2, the rest to negative frequencies.
inline int freq_of_index(int index, int n) { return index <= n / 2 ? index : index - n; }

/// FFT bin holding frequency m (with -n/2 < m <= n/2).
inline int index_of_freq(int m, int n) { return m >= 0 ? m : m + n; }

inline bool is_nyquist(int m, int n) { return m == n / 2; }

/// Visit every mode of the grid: fn(flat_index, m1, m2, m3).
template <typename Fn>
void for_each_mode(const GridSpec& g, Fn&& fn) {
  std::size_t idx = 0;
  for (int i1 = 0; i1 < g.n1; ++i1) {
    const int m1 = freq_of_index(i1, g.n1);
    for (int i2 = 0; i2 < g.n2; ++i2) {
      const int m2 = freq_of_index(i2, g.n2);
      for (int i3 = 0; i3 < g.n3; ++i3, ++idx) {
        fn(idx, m1, m2, freq_of_index(i3, g.n3));
      }
    }
  }
}

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

}  // namespace vesicle
