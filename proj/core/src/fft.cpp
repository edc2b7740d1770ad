#include "vesicle/fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>

namespace vesicle {

namespace {

// Cached FFTW plans keyed by (dims, direction).  Plans are created once with
// scratch buffers and executed on caller arrays via the new-array interface;
// all field buffers are 64-byte aligned so the alignment class matches.
class PlanCache {
 public:
  static PlanCache& instance() {
    static PlanCache cache;
    return cache;
  }

  void execute(const GridSpec& g, int sign, const Complex* in, Complex* out) {
    fftw_plan plan = get(g, sign);
    fftw_execute_dft(plan, reinterpret_cast<fftw_complex*>(const_cast<Complex*>(in)),
                     reinterpret_cast<fftw_complex*>(out));
  }

 private:
  using Key = std::tuple<int, int, int, int>;

  fftw_plan get(const GridSpec& g, int sign) {
    std::lock_guard<std::mutex> lock(mutex_);
    Key key{g.n1, g.n2, g.n3, sign};
    auto it = plans_.find(key);
    if (it != plans_.end()) return it->second;

    const std::size_t n = g.size();
    fftw_complex* a = fftw_alloc_complex(n);
    fftw_complex* b = fftw_alloc_complex(n);
    // MEASURE pays off on the padded grids the stepper hammers; very large
    // grids fall back to ESTIMATE to keep one-shot planning cheap.
    const unsigned flags = (n <= 96u * 96u * 96u) ? FFTW_MEASURE : FFTW_ESTIMATE;
    fftw_plan plan = fftw_plan_dft_3d(g.n1, g.n2, g.n3, a, b, sign, flags);
    fftw_free(a);
    fftw_free(b);
    if (!plan) throw std::runtime_error("fftw planning failed");
    plans_.emplace(key, plan);
    return plan;
  }

  std::mutex mutex_;
  std::map<Key, fftw_plan> plans_;
};

// Per-axis embedding targets: a coarse mode maps to one fine bin, except the
// Nyquist mode which is split half-and-half between +n/2 and -n/2 so real
// data stays real on the fine grid.
struct AxisTargets {
  int idx[2];
  double w[2];
  int count;
};

AxisTargets axis_targets(int m, int n_coarse, int n_fine) {
  AxisTargets t;
  if (n_fine > n_coarse && is_nyquist(m, n_coarse)) {
    t.count = 2;
    t.idx[0] = index_of_freq(m, n_fine);
    t.idx[1] = index_of_freq(-m, n_fine);
    t.w[0] = t.w[1] = 0.5;
  } else {
    t.count = 1;
    t.idx[0] = index_of_freq(m, n_fine);
    t.w[0] = 1.0;
  }
  return t;
}

ComplexVec embed(const SpectralScalar& f, const GridSpec& fine) {
  ComplexVec out(fine.size(), Complex{0.0, 0.0});
  for_each_mode(f.grid, [&](std::size_t idx, int m1, int m2, int m3) {
    const Complex c = f.coeffs[idx];
    if (c == Complex{0.0, 0.0}) return;
    const AxisTargets t1 = axis_targets(m1, f.grid.n1, fine.n1);
    const AxisTargets t2 = axis_targets(m2, f.grid.n2, fine.n2);
    const AxisTargets t3 = axis_targets(m3, f.grid.n3, fine.n3);
    for (int a = 0; a < t1.count; ++a)
      for (int b = 0; b < t2.count; ++b)
        for (int d = 0; d < t3.count; ++d)
          out[fine.index(t1.idx[a], t2.idx[b], t3.idx[d])] += t1.w[a] * t2.w[b] * t3.w[d] * c;
  });
  return out;
}

// Adjoint of embed: fold the fine spectrum back onto the coarse lattice.
SpectralScalar restrict_spectrum(const ComplexVec& fine_coeffs, const GridSpec& fine,
                                 const GridSpec& coarse) {
  SpectralScalar out(coarse);
  for_each_mode(coarse, [&](std::size_t idx, int m1, int m2, int m3) {
    const AxisTargets t1 = axis_targets(m1, coarse.n1, fine.n1);
    const AxisTargets t2 = axis_targets(m2, coarse.n2, fine.n2);
    const AxisTargets t3 = axis_targets(m3, coarse.n3, fine.n3);
    Complex acc{0.0, 0.0};
    for (int a = 0; a < t1.count; ++a)
      for (int b = 0; b < t2.count; ++b)
        for (int d = 0; d < t3.count; ++d)
          acc += fine_coeffs[fine.index(t1.idx[a], t2.idx[b], t3.idx[d])];
    out.coeffs[idx] = acc;
  });
  return out;
}

RealVec backward_real(const ComplexVec& coeffs, const GridSpec& g, bool check_residue) {
  ComplexVec out(g.size());
  PlanCache::instance().execute(g, FFTW_BACKWARD, coeffs.data(), out.data());
  double max_re = 0.0, max_im = 0.0;
  for (const Complex& c : out) {
    max_re = std::max(max_re, std::abs(c.real()));
    max_im = std::max(max_im, std::abs(c.imag()));
  }
  if (check_residue && max_im > 1e-10 * std::max(max_re, 1e-300))
    throw std::invalid_argument(
        "inverse_transform: non-Hermitian input (imaginary residue " + std::to_string(max_im) +
        " vs max " + std::to_string(max_re) + ")");
  RealVec samples(g.size());
  for (std::size_t i = 0; i < out.size(); ++i) samples[i] = out[i].real();
  return samples;
}

}  // namespace

SpectralScalar forward_transform(std::span<const double> samples, const GridSpec& grid) {
  grid.validate();
  if (samples.size() != grid.size())
    throw std::invalid_argument("forward_transform: sample array does not match grid");
  ComplexVec in(grid.size());
  for (std::size_t i = 0; i < in.size(); ++i) in[i] = Complex{samples[i], 0.0};
  SpectralScalar out(grid);
  PlanCache::instance().execute(grid, FFTW_FORWARD, in.data(), out.coeffs.data());
  const double scale = 1.0 / static_cast<double>(grid.size());
  for (Complex& c : out.coeffs) c *= scale;
  return out;
}

RealVec inverse_transform(const SpectralScalar& field) {
  return backward_real(field.coeffs, field.grid, /*check_residue=*/true);
}

RealVec samples_on_grid(const SpectralScalar& field, const GridSpec& fine) {
  if (fine == field.grid) return backward_real(field.coeffs, field.grid, false);
  ComplexVec big = embed(field, fine);
  return backward_real(big, fine, false);
}

SpectralScalar forward_restricted(std::span<const double> samples, const GridSpec& fine,
                                  const GridSpec& coarse) {
  SpectralScalar big = forward_transform(samples, fine);
  if (fine == coarse) return big;
  return restrict_spectrum(big.coeffs, fine, coarse);
}

int next_fft_size(int n) {
  auto smooth = [](int m) {
    for (int p : {2, 3, 5})
      while (m % p == 0) m /= p;
    return m == 1;
  };
  int m = n + (n % 2);  // keep sizes even
  while (!smooth(m)) m += 2;
  return m;
}

GridSpec product_grid(const GridSpec& base, int degree, const DealiasRule& rule) {
  if (rule.kind == DealiasRule::Kind::TwoThirds) return base;
  auto pick = [&](int n) {
    const int needed = (degree + 1) * n / 2 + 1;
    const int capped = std::min(rule.pad * n, next_fft_size(needed));
    return std::max(n, capped);
  };
  return GridSpec{pick(base.n1), pick(base.n2), pick(base.n3)};
}

void truncate_two_thirds(SpectralScalar& f) {
  const GridSpec& g = f.grid;
  for_each_mode(g, [&](std::size_t idx, int m1, int m2, int m3) {
    if (3 * std::abs(m1) > g.n1 || 3 * std::abs(m2) > g.n2 || 3 * std::abs(m3) > g.n3)
      f.coeffs[idx] = Complex{0.0, 0.0};
  });
}

FineGrid make_fine_grid(const GridSpec& base, int degree, const DealiasRule& rule) {
  FineGrid fg;
  fg.base = base;
  fg.fine = product_grid(base, degree, rule);
  fg.two_thirds_filter = rule.kind == DealiasRule::Kind::TwoThirds;
  return fg;
}

RealVec FineGrid::samples(const SpectralScalar& f) const {
  if (!(f.grid == base)) throw std::invalid_argument("FineGrid: field grid mismatch");
  if (two_thirds_filter) {
    SpectralScalar cut = f;
    truncate_two_thirds(cut);
    return samples_on_grid(cut, fine);
  }
  return samples_on_grid(f, fine);
}

SpectralScalar FineGrid::to_spectral(std::span<const double> fine_samples) const {
  SpectralScalar out = forward_restricted(fine_samples, fine, base);
  if (two_thirds_filter) truncate_two_thirds(out);
  return out;
}

SpectralScalar pointwise_product(std::span<const SpectralScalar* const> fields, int degree,
                                 const std::function<double(const double*)>& fn,
                                 const DealiasRule& rule) {
  if (fields.empty()) throw std::invalid_argument("pointwise_product: no fields");
  const FineGrid fg = make_fine_grid(fields[0]->grid, degree, rule);
  std::vector<RealVec> samp;
  samp.reserve(fields.size());
  for (const SpectralScalar* f : fields) samp.push_back(fg.samples(*f));
  RealVec result(fg.fine.size());
  std::vector<double> vals(fields.size());
  for (std::size_t i = 0; i < result.size(); ++i) {
    for (std::size_t k = 0; k < samp.size(); ++k) vals[k] = samp[k][i];
    result[i] = fn(vals.data());
  }
  return fg.to_spectral(result);
}

double integrate_pointwise(std::span<const SpectralScalar* const> fields, int degree,
                           const std::function<double(const double*)>& fn) {
  if (fields.empty()) throw std::invalid_argument("integrate_pointwise: no fields");
  const GridSpec& base = fields[0]->grid;
  auto pick = [&](int n) { return next_fft_size(degree * n / 2 + 1); };
  const GridSpec quad{std::max(base.n1, pick(base.n1)), std::max(base.n2, pick(base.n2)),
                      std::max(base.n3, pick(base.n3))};
  std::vector<RealVec> samp;
  samp.reserve(fields.size());
  for (const SpectralScalar* f : fields) samp.push_back(samples_on_grid(*f, quad));
  std::vector<double> vals(fields.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < quad.size(); ++i) {
    for (std::size_t k = 0; k < samp.size(); ++k) vals[k] = samp[k][i];
    sum += fn(vals.data());
  }
  return sum / static_cast<double>(quad.size());
}

double parseval_sum_sq(const SpectralScalar& field) {
  double s = 0.0;
  for (const Complex& c : field.coeffs) s += std::norm(c);
  return s;
}

double l2_norm(const SpectralScalar& field) { return std::sqrt(parseval_sum_sq(field)); }

double l2_norm(const SpectralVector& field) {
  return std::sqrt(parseval_sum_sq(field[0]) + parseval_sum_sq(field[1]) +
                   parseval_sum_sq(field[2]));
}

namespace {
GridSpec refined(const GridSpec& g, int refine) {
  return GridSpec{g.n1 * refine, g.n2 * refine, g.n3 * refine};
}
}  // namespace

double lp_norm(const SpectralScalar& field, double p, int refine) {
  const RealVec s = samples_on_grid(field, refined(field.grid, refine));
  double sum = 0.0;
  for (double v : s) sum += std::pow(std::abs(v), p);
  return std::pow(sum / static_cast<double>(s.size()), 1.0 / p);
}

double lp_norm(const SpectralVector& field, double p, int refine) {
  const GridSpec fine = refined(field.grid(), refine);
  const RealVec a = samples_on_grid(field[0], fine);
  const RealVec b = samples_on_grid(field[1], fine);
  const RealVec c = samples_on_grid(field[2], fine);
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    sum += std::pow(std::sqrt(a[i] * a[i] + b[i] * b[i] + c[i] * c[i]), p);
  return std::pow(sum / static_cast<double>(a.size()), 1.0 / p);
}

double linf_norm(const SpectralScalar& field, int refine) {
  const RealVec s = samples_on_grid(field, refined(field.grid, refine));
  double m = 0.0;
  for (double v : s) m = std::max(m, std::abs(v));
  return m;
}

double linf_norm(const SpectralVector& field, int refine) {
  const GridSpec fine = refined(field.grid(), refine);
  const RealVec a = samples_on_grid(field[0], fine);
  const RealVec b = samples_on_grid(field[1], fine);
  const RealVec c = samples_on_grid(field[2], fine);
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    m = std::max(m, a[i] * a[i] + b[i] * b[i] + c[i] * c[i]);
  return std::sqrt(m);
}

}  // namespace vesicle
