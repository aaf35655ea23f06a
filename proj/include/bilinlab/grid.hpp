#pragma once

// Periodic grid functions on a large torus modeling R^n, with Fourier-side
// access under the convention  c_f(xi_m) = h^n sum_j f(x_j) e^{-i xi_m x_j},
// the Riemann sum of the integral transform.  Physical points are
// x_j = -L/2 + j h; frequencies xi_m = (2pi/L) m with m in [-M/2, M/2).
//
// Integer-lattice modulations e^{i nu x} are exactly representable only when
// L is an integer multiple of 2pi, so experiment grids are built with
// make_grid_2pi (L = 2pi P).

#include <cmath>
#include <complex>
#include <functional>
#include <memory>
#include <stdexcept>
#include <vector>

#include "bilinlab/fft.hpp"
#include "bilinlab/rational.hpp"

namespace bilinlab {

inline constexpr double kPi = 3.141592653589793238462643383279502884;

struct TorusGrid {
  int n{1};       // dimension
  double L{64};   // period per axis
  int M{1024};    // samples per axis, power of two (even in particular)

  double h() const { return L / M; }
  double freq_step() const { return 2.0 * kPi / L; }
  double nyquist() const { return freq_step() * (M / 2); }
  double x(long long j) const { return -L / 2 + j * h(); }
  double xi(long long m) const { return freq_step() * double(m); }

  std::size_t total() const {
    std::size_t t = 1;
    for (int d = 0; d < n; ++d) t *= std::size_t(M);
    return t;
  }
  // signed frequency index from storage bin
  long long signed_index(std::size_t bin) const {
    return bin < std::size_t(M / 2) ? (long long)bin : (long long)bin - M;
  }
  std::size_t bin_of(long long m) const { return std::size_t((m % M + M) % M); }

  bool operator==(const TorusGrid& o) const { return n == o.n && L == o.L && M == o.M; }
};

inline TorusGrid make_grid(int n, double L, int M) {
  if (n < 1 || n > 3) throw std::invalid_argument("TorusGrid: dimension must be 1..3");
  if (!is_pow2(std::size_t(M))) throw std::invalid_argument("TorusGrid: M must be a power of two");
  return TorusGrid{n, L, M};
}

// torus of period 2*pi*P: the integer frequency lattice embeds exactly
inline TorusGrid make_grid_2pi(int n, int P, int M) {
  if (P < 1) throw std::invalid_argument("make_grid_2pi: P >= 1 required");
  return make_grid(n, 2.0 * kPi * P, M);
}

namespace gdetail {
// decode row-major storage index into per-axis indices
inline void unflatten(std::size_t idx, int n, int M, long long* out) {
  for (int d = n - 1; d >= 0; --d) {
    out[d] = (long long)(idx % std::size_t(M));
    idx /= std::size_t(M);
  }
}
}  // namespace gdetail

class GridFunction {
 public:
  GridFunction() = default;
  GridFunction(TorusGrid g, std::vector<cd> values) : grid_(g), values_(std::move(values)) {
    if (values_.size() != grid_.total()) throw std::invalid_argument("GridFunction: size mismatch");
  }

  static GridFunction zero(const TorusGrid& g) { return GridFunction(g, std::vector<cd>(g.total())); }

  // sample a closed-form function of the physical coordinates
  static GridFunction sample(const TorusGrid& g, const std::function<cd(const std::vector<double>&)>& f) {
    std::vector<cd> v(g.total());
    std::vector<double> x(g.n);
    long long jj[3];
    for (std::size_t idx = 0; idx < v.size(); ++idx) {
      gdetail::unflatten(idx, g.n, g.M, jj);
      for (int d = 0; d < g.n; ++d) x[d] = g.x(jj[d]);
      v[idx] = f(x);
    }
    return GridFunction(g, std::move(v));
  }

  const TorusGrid& grid() const { return grid_; }
  const std::vector<cd>& values() const { return values_; }
  std::vector<cd>& mutable_values() { coef_.reset(); return values_; }

  // Fourier coefficients in storage-bin order (lazy, cached).
  const std::vector<cd>& coeffs() const {
    if (!coef_) {
      auto c = std::make_shared<std::vector<cd>>(values_);
      fft_nd_inplace(*c, grid_.n, std::size_t(grid_.M), -1);
      double scale = std::pow(grid_.h(), grid_.n);
      long long mm[3];
      for (std::size_t idx = 0; idx < c->size(); ++idx) {
        gdetail::unflatten(idx, grid_.n, grid_.M, mm);
        long long parity = 0;
        for (int d = 0; d < grid_.n; ++d) parity += mm[d];
        (*c)[idx] *= (parity & 1) ? -scale : scale;
      }
      coef_ = std::move(c);
    }
    return *coef_;
  }

  cd coeff(const std::vector<long long>& m) const {
    const auto& c = coeffs();
    std::size_t idx = 0;
    for (int d = 0; d < grid_.n; ++d) idx = idx * std::size_t(grid_.M) + grid_.bin_of(m[d]);
    return c[idx];
  }

 private:
  TorusGrid grid_;
  std::vector<cd> values_;
  mutable std::shared_ptr<const std::vector<cd>> coef_;
};

// dft: coefficient table of f (storage-bin order, same as coeffs()).
inline std::vector<cd> dft(const GridFunction& f) { return f.coeffs(); }

// idft: inverts the convention exactly on the grid.
inline GridFunction idft(const TorusGrid& g, const std::vector<cd>& coeffs) {
  if (coeffs.size() != g.total()) throw std::invalid_argument("idft: size mismatch");
  std::vector<cd> v = coeffs;
  long long mm[3];
  double scale = 1.0 / std::pow(g.L, g.n);
  for (std::size_t idx = 0; idx < v.size(); ++idx) {
    gdetail::unflatten(idx, g.n, g.M, mm);
    long long parity = 0;
    for (int d = 0; d < g.n; ++d) parity += mm[d];
    v[idx] *= (parity & 1) ? -scale : scale;
  }
  fft_nd_inplace(v, g.n, std::size_t(g.M), +1);
  return GridFunction(g, std::move(v));
}

// L^p (quasi)norm by Riemann sum; p = inf gives the sample max.
inline double lp_norm(const GridFunction& f, const Exponent& p) {
  const auto& v = f.values();
  if (p.inf) {
    double m = 0;
    for (const cd& z : v) m = std::max(m, std::abs(z));
    return m;
  }
  double pd = p.value.to_double();
  double cell = std::pow(f.grid().h(), f.grid().n);
  double s = 0;
  for (const cd& z : v) s += std::pow(std::abs(z), pd);
  return std::pow(cell * s, 1.0 / pd);
}

// ||f||_{L^2}^2 computed frequency-side (Parseval): L^{-n} sum |c|^2.
inline double l2_norm_fourier(const GridFunction& f) {
  const auto& c = f.coeffs();
  double s = 0;
  for (const cd& z : c) s += std::norm(z);
  return std::sqrt(s / std::pow(f.grid().L, f.grid().n));
}

// slow direct evaluation of the trigonometric interpolant at an arbitrary
// physical point (periodized); used by tests as a quadrature oracle
inline cd eval_interpolant(const GridFunction& f, const std::vector<double>& x) {
  const auto& c = f.coeffs();
  const TorusGrid& g = f.grid();
  long long mm[3];
  cd acc(0);
  for (std::size_t idx = 0; idx < c.size(); ++idx) {
    gdetail::unflatten(idx, g.n, g.M, mm);
    double phase = 0;
    for (int d = 0; d < g.n; ++d) phase += g.xi(g.signed_index(std::size_t(mm[d]))) * x[d];
    acc += c[idx] * cd(std::cos(phase), std::sin(phase));
  }
  return acc / std::pow(g.L, g.n);
}

}  // namespace bilinlab
