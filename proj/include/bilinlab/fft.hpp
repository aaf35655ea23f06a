#pragma once

// Iterative radix-2 complex FFT.  Grid sizes are powers of two by invariant,
// so no mixed-radix machinery is needed.

#include <complex>
#include <stdexcept>
#include <vector>

namespace bilinlab {

using cd = std::complex<double>;

inline bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

// In-place transform, unnormalized: sign=-1 forward (e^{-2pi i jk/N}),
// sign=+1 inverse (no 1/N factor applied).
inline void fft_inplace(cd* a, std::size_t n, int sign) {
  if (!is_pow2(n)) throw std::invalid_argument("fft: length must be a power of two");
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    double ang = sign * 2.0 * 3.141592653589793238462643383279502884 / double(len);
    cd wlen(std::cos(ang), std::sin(ang));
    for (std::size_t i = 0; i < n; i += len) {
      cd w(1.0);
      for (std::size_t j = 0; j < len / 2; ++j) {
        cd u = a[i + j];
        cd v = a[i + j + len / 2] * w;
        a[i + j] = u + v;
        a[i + j + len / 2] = u - v;
        w *= wlen;
      }
    }
  }
}

inline void fft_inplace(std::vector<cd>& a, int sign) { fft_inplace(a.data(), a.size(), sign); }

// n-dimensional transform on a row-major hypercube of side m, dims axes.
inline void fft_nd_inplace(std::vector<cd>& a, int dims, std::size_t m, int sign) {
  std::size_t total = 1;
  for (int d = 0; d < dims; ++d) total *= m;
  if (a.size() != total) throw std::invalid_argument("fft_nd: size mismatch");
  std::vector<cd> line(m);
  std::size_t stride = 1;
  for (int axis = dims - 1; axis >= 0; --axis) {
    std::size_t outer = total / (m * stride);
    for (std::size_t o = 0; o < outer; ++o) {
      for (std::size_t s = 0; s < stride; ++s) {
        std::size_t base = o * m * stride + s;
        if (stride == 1) {
          fft_inplace(a.data() + base, m, sign);
        } else {
          for (std::size_t i = 0; i < m; ++i) line[i] = a[base + i * stride];
          fft_inplace(line.data(), m, sign);
          for (std::size_t i = 0; i < m; ++i) a[base + i * stride] = line[i];
        }
      }
    }
    stride *= m;
  }
}

}  // namespace bilinlab
