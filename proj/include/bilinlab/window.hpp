#pragma once

// Uniform frequency windows and the function-space norms built from them:
// the Wiener amalgam norm ||  || kappa(D-k) f ||_{l^q_k} ||_{L^p}, an
// equivalent-quasinorm approximation of the local Hardy space h^p, and bmo.
//
// kappa is a square partition of unity, sum_k kappa(xi-k)^2 = 1, which makes
// W^{2,2} = L^2 an exact testable identity rather than an equivalence.

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "bilinlab/grid.hpp"
#include "bilinlab/rational.hpp"

namespace bilinlab {

// polynomial smoothstep of order s: C^s ramp from 0 to 1 on [0,1],
// S(u) + S(1-u) = 1
inline double smoothstep(int s, double u) {
  if (u <= 0) return 0;
  if (u >= 1) return 1;
  auto binom = [](long long a, long long b) {
    double r = 1;
    for (long long i = 1; i <= b; ++i) r = r * double(a - b + i) / double(i);
    return r;
  };
  double acc = 0, xk = 1;
  for (int k = 0; k <= s; ++k) {
    acc += binom(s + k, k) * binom(2 * s + 1, s - k) * xk;
    xk *= -u;
  }
  return acc * std::pow(u, s + 1);
}

class FreqWindow {
 public:
  explicit FreqWindow(int transition_sharpness) : order_(transition_sharpness) {
    if (transition_sharpness < 1)
      throw std::invalid_argument("FreqWindow: transition sharpness must be >= 1");
  }

  int order() const { return order_; }

  // the unnormalized cutoff chi: 1 on [-1/4,1/4], 0 outside (-3/4,3/4)
  double chi(double t) const {
    double a = std::abs(t);
    if (a <= 0.25) return 1.0;
    if (a >= 0.75) return 0.0;
    return smoothstep(order_, (0.75 - a) * 2.0);
  }

  // kappa(t) = chi(t) / sqrt(sum_k chi(t-k)^2), 1-D
  double kappa1(double t) const {
    double c = chi(t);
    if (c == 0) return 0;
    double denom = 0;
    long long k0 = (long long)std::floor(t - 0.75), k1 = (long long)std::ceil(t + 0.75);
    for (long long k = k0; k <= k1; ++k) {
      double ck = chi(t - double(k));
      denom += ck * ck;
    }
    return c / std::sqrt(denom);
  }

  // tensor product over the axes
  double value(const std::vector<double>& xi) const {
    double v = 1;
    for (double t : xi) {
      v *= kappa1(t);
      if (v == 0) return 0;
    }
    return v;
  }

 private:
  int order_;
};

inline FreqWindow make_square_partition_window(int transition_sharpness) {
  return FreqWindow(transition_sharpness);
}

// kappa(D - k) f for an integer window position k
inline GridFunction band_piece(const GridFunction& f, const std::vector<int>& k,
                               const FreqWindow& w) {
  const TorusGrid& g = f.grid();
  if (static_cast<int>(k.size()) != g.n) throw std::invalid_argument("band_piece: bad k");
  std::vector<cd> c = f.coeffs();
  long long mm[3];
  std::vector<double> xi(g.n);
  for (std::size_t idx = 0; idx < c.size(); ++idx) {
    if (c[idx] == cd(0)) continue;
    gdetail::unflatten(idx, g.n, g.M, mm);
    for (int d = 0; d < g.n; ++d) xi[d] = g.xi(g.signed_index(std::size_t(mm[d]))) - k[d];
    c[idx] *= w.value(xi);
  }
  return idft(g, c);
}

namespace wdetail {

template <class F>
inline void for_each_window(int n, int Kw, F&& body) {
  std::vector<int> k(n, -Kw);
  while (true) {
    body(k);
    int axis = n - 1;
    while (axis >= 0) {
      if (++k[axis] <= Kw) break;
      k[axis] = -Kw;
      --axis;
    }
    if (axis < 0) return;
  }
}

// relative L^2 Fourier mass outside the box covered by windows |k|_inf <= Kw
inline double coverage_residual(const GridFunction& f, int Kw) {
  const auto& c = f.coeffs();
  const TorusGrid& g = f.grid();
  double limit = Kw + 0.75;
  double outside = 0, total = 0;
  long long mm[3];
  for (std::size_t idx = 0; idx < c.size(); ++idx) {
    double e = std::norm(c[idx]);
    total += e;
    gdetail::unflatten(idx, g.n, g.M, mm);
    for (int d = 0; d < g.n; ++d)
      if (std::abs(g.xi(g.signed_index(std::size_t(mm[d])))) >= limit) {
        outside += e;
        break;
      }
  }
  return total > 0 ? outside / total : 0.0;
}

}  // namespace wdetail

// || || kappa(D-k) f ||_{l^q_k, |k|_inf <= Kw} ||_{L^p}.
// Requires f band-limited inside the covered box (residual mass < 1e-10).
inline double wiener_amalgam_norm(const GridFunction& f, const Exponent& p, const Exponent& q,
                                  const FreqWindow& w, int window_box_radius) {
  const TorusGrid& g = f.grid();
  double resid = wdetail::coverage_residual(f, window_box_radius);
  if (resid > 1e-10)
    throw std::domain_error("wiener_amalgam_norm: frequency content outside window box (residual " +
                            std::to_string(resid) + ")");
  std::vector<double> acc(g.total(), 0.0);
  bool qinf = q.inf;
  double qd = qinf ? 0 : q.value.to_double();
  wdetail::for_each_window(g.n, window_box_radius, [&](const std::vector<int>& k) {
    GridFunction piece = band_piece(f, k, w);
    const auto& pv = piece.values();
    for (std::size_t i = 0; i < pv.size(); ++i) {
      double a = std::abs(pv[i]);
      if (a == 0) continue;
      if (qinf)
        acc[i] = std::max(acc[i], a);
      else
        acc[i] += std::pow(a, qd);
    }
  });
  double cell = std::pow(g.h(), g.n);
  if (p.inf) {
    double m = 0;
    for (double v : acc) m = std::max(m, qinf ? v : std::pow(v, 1.0 / qd));
    return m;
  }
  double pd = p.value.to_double();
  double s = 0;
  for (double v : acc) s += std::pow(qinf ? v : std::pow(v, 1.0 / qd), pd);
  return std::pow(cell * s, 1.0 / pd);
}

// h^p approximation: max over dyadic scales t = 2^{-j}, j = 0..J, of the
// Gaussian mollification |phi_t * f|, then L^p.  Documented as an
// equivalent-quasinorm surrogate for the continuum definition.  For
// band-limited f the sup over the open interval 0 < t < 1 closes at |f|
// itself; include_zero_limit adds that term (restores exact modulation
// covariance of the quasinorm).
inline double local_hardy_quasinorm(const GridFunction& f, const Exponent& p, int scales,
                                    bool include_zero_limit = false) {
  if (scales < 1) throw std::invalid_argument("local_hardy_quasinorm: scales >= 1 required");
  const TorusGrid& g = f.grid();
  const auto& c = f.coeffs();
  std::vector<double> sup(g.total(), 0.0);
  if (include_zero_limit)
    for (std::size_t i = 0; i < sup.size(); ++i) sup[i] = std::abs(f.values()[i]);
  std::vector<cd> work(c.size());
  long long mm[3];
  for (int j = 0; j <= scales; ++j) {
    double t = std::pow(0.5, j);
    for (std::size_t idx = 0; idx < c.size(); ++idx) {
      gdetail::unflatten(idx, g.n, g.M, mm);
      double x2 = 0;
      for (int d = 0; d < g.n; ++d) {
        double xi = g.xi(g.signed_index(std::size_t(mm[d])));
        x2 += xi * xi;
      }
      work[idx] = c[idx] * std::exp(-0.5 * t * t * x2);
    }
    GridFunction conv = idft(g, work);
    const auto& v = conv.values();
    for (std::size_t i = 0; i < v.size(); ++i) sup[i] = std::max(sup[i], std::abs(v[i]));
  }
  double cell = std::pow(g.h(), g.n);
  if (p.inf) {
    double m = 0;
    for (double v : sup) m = std::max(m, v);
    return m;
  }
  double pd = p.value.to_double();
  double s = 0;
  for (double v : sup) s += std::pow(v, pd);
  return std::pow(cell * s, 1.0 / pd);
}

// bmo norm on grid-aligned dyadic cubes: mean oscillation over cubes of side
// <= 1 plus averages of |f| over cubes of side >= 1 (Riemann sums; cube
// sides are h 2^i, the grid-dyadic approximation of the continuum family).
inline double bmo_norm(const GridFunction& f) {
  const TorusGrid& g = f.grid();
  const auto& vals = f.values();
  double maxabs = 0, maximag = 0;
  for (const cd& z : vals) {
    maxabs = std::max(maxabs, std::abs(z));
    maximag = std::max(maximag, std::abs(z.imag()));
  }
  if (maximag > 1e-12 * std::max(1.0, maxabs))
    throw std::invalid_argument("bmo_norm: input must be real-valued");

  double best = 0;
  long long jj[3];
  for (int lvl = 0; (1 << lvl) <= g.M; ++lvl) {
    int side = 1 << lvl;                      // cells per cube edge
    double phys = side * g.h();               // physical side
    int cubes_per_axis = g.M / side;
    std::size_t ncubes = 1;
    for (int d = 0; d < g.n; ++d) ncubes *= std::size_t(cubes_per_axis);

    std::vector<double> mean(ncubes, 0.0), meanabs(ncubes, 0.0);
    double cells_per_cube = std::pow(double(side), g.n);
    for (std::size_t idx = 0; idx < vals.size(); ++idx) {
      gdetail::unflatten(idx, g.n, g.M, jj);
      std::size_t cube = 0;
      for (int d = 0; d < g.n; ++d) cube = cube * std::size_t(cubes_per_axis) + std::size_t(jj[d] / side);
      mean[cube] += vals[idx].real();
      meanabs[cube] += std::abs(vals[idx].real());
    }
    for (auto& v : mean) v /= cells_per_cube;
    for (auto& v : meanabs) v /= cells_per_cube;

    if (phys >= 1.0)
      for (double v : meanabs) best = std::max(best, v);
    if (phys <= 1.0) {
      std::vector<double> osc(ncubes, 0.0);
      for (std::size_t idx = 0; idx < vals.size(); ++idx) {
        gdetail::unflatten(idx, g.n, g.M, jj);
        std::size_t cube = 0;
        for (int d = 0; d < g.n; ++d) cube = cube * std::size_t(cubes_per_axis) + std::size_t(jj[d] / side);
        osc[cube] += std::abs(vals[idx].real() - mean[cube]);
      }
      for (double v : osc) best = std::max(best, v / cells_per_cube);
    }
  }
  return best;
}

}  // namespace bilinlab
