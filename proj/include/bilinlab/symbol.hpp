#pragma once

// Bilinear Fourier multipliers on grid functions: dense multipliers applied
// by xi1-slice accumulation on the frequency lattice, separable symbols, and
// lattice-bump symbols m_{E,Phi} with a fast per-cell path.  Also the
// modulated-bump test functions whose action reduces exactly to the lattice
// bilinear form.

#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "bilinlab/grid.hpp"
#include "bilinlab/lattice.hpp"
#include "bilinlab/window.hpp"

namespace bilinlab {

// 1-D bump: 1 on [-a/2, a/2], C^order ramp to 0 at |t| = a
struct BumpProfile1D {
  double halfwidth{0.5};
  int order{3};

  double operator()(double t) const {
    double u = std::abs(t) / halfwidth;
    if (u >= 1.0) return 0.0;
    if (u <= 0.5) return 1.0;
    return smoothstep(order, (1.0 - u) * 2.0);
  }
};

// tensor bump on R^dims from a single 1-D profile
struct BumpProfile {
  BumpProfile1D axis;
  int dims{2};

  double value(const double* z) const {
    double v = 1.0;
    for (int d = 0; d < dims; ++d) {
      v *= axis(z[d]);
      if (v == 0.0) return 0.0;
    }
    return v;
  }
  double box_halfwidth() const { return axis.halfwidth; }
  double euclid_radius() const { return axis.halfwidth * std::sqrt(double(dims)); }
};

// supp Phi inside the Euclidean ball of radius 1/20 (the sharpness
// construction's normalization)
inline BumpProfile make_ball_bump(int n, int order = 3) {
  BumpProfile b;
  b.dims = 2 * n;
  b.axis = BumpProfile1D{1.0 / (20.0 * std::sqrt(double(2 * n))), order};
  return b;
}

// supp Phi inside [-(1-eps), 1-eps]^{2n}; cells stay disjoint as long as
// halfwidth < 1/2
inline BumpProfile make_box_bump(int n, double halfwidth, int order = 3) {
  if (halfwidth <= 0 || halfwidth >= 1.0)
    throw std::invalid_argument("make_box_bump: halfwidth must lie in (0,1)");
  BumpProfile b;
  b.dims = 2 * n;
  b.axis = BumpProfile1D{halfwidth, order};
  return b;
}

// cell profile of the weight-to-symbol construction: 1 on [-1/4,1/4],
// supported in [-1/2,1/2]
inline BumpProfile1D make_cell_profile(int order = 3) { return BumpProfile1D{0.5, order}; }

// modulation profile phi with supp in [-1/8,1/8]
inline BumpProfile1D make_modulation_profile(int order = 3) { return BumpProfile1D{0.125, order}; }

class Symbol {
 public:
  enum class Kind { Multiplier, Separable, LatticeBump };
  using Fn2 = std::function<cd(const std::vector<double>&, const std::vector<double>&)>;
  using Fn1 = std::function<cd(const std::vector<double>&)>;

  Kind kind() const { return kind_; }
  int dim() const { return n_; }

  cd eval(const std::vector<double>& xi1, const std::vector<double>& xi2) const {
    switch (kind_) {
      case Kind::Separable:
        return sep_a_(xi1) * sep_b_(xi2);
      case Kind::LatticeBump: {
        cd acc(0);
        for (std::size_t i = 0; i < cells_.size(); ++i) {
          double v = 1.0;
          for (int d = 0; d < n_ && v != 0.0; ++d) v *= bump_.axis(xi1[d] - cells_[i].first[d]);
          for (int d = 0; d < n_ && v != 0.0; ++d) v *= bump_.axis(xi2[d] - cells_[i].second[d]);
          if (v != 0.0) acc += coeffs_[i] * v;
        }
        return acc;
      }
      case Kind::Multiplier:
      default:
        return fn_(xi1, xi2);
    }
  }

  static Symbol multiplier(int n, Fn2 fn) {
    Symbol s;
    s.kind_ = Kind::Multiplier;
    s.n_ = n;
    s.fn_ = std::move(fn);
    return s;
  }

  static Symbol constant(int n, cd value) {
    return multiplier(n, [value](const std::vector<double>&, const std::vector<double>&) { return value; });
  }

  static Symbol separable(int n, Fn1 a, Fn1 b) {
    Symbol s;
    s.kind_ = Kind::Separable;
    s.n_ = n;
    s.sep_a_ = std::move(a);
    s.sep_b_ = std::move(b);
    return s;
  }

  static Symbol lattice_bump(std::vector<std::pair<Coords, Coords>> cells, BumpProfile bump,
                             std::vector<cd> coeffs = {});

  const std::vector<std::pair<Coords, Coords>>& cells() const { return cells_; }
  const std::vector<cd>& cell_coeffs() const { return coeffs_; }
  const BumpProfile& bump() const { return bump_; }
  const Fn1& factor_a() const { return sep_a_; }
  const Fn1& factor_b() const { return sep_b_; }

  // lattice-bump symbol rerouted through the dense machinery (for fast-path
  // equivalence checks)
  Symbol as_multiplier() const {
    if (kind_ != Kind::LatticeBump) throw std::logic_error("as_multiplier: lattice bumps only");
    Symbol copy = *this;
    return multiplier(n_, [copy](const std::vector<double>& x1, const std::vector<double>& x2) {
      return copy.eval(x1, x2);
    });
  }

 private:
  Kind kind_{Kind::Multiplier};
  int n_{1};
  Fn2 fn_;
  Fn1 sep_a_, sep_b_;
  std::vector<std::pair<Coords, Coords>> cells_;
  std::vector<cd> coeffs_;
  BumpProfile bump_;
};

inline Symbol Symbol::lattice_bump(std::vector<std::pair<Coords, Coords>> cells, BumpProfile bump,
                                   std::vector<cd> coeffs) {
  if (bump.box_halfwidth() >= 0.5)
    throw std::invalid_argument("lattice_bump: cells overlap (bump halfwidth >= 1/2)");
  Symbol s;
  s.kind_ = Kind::LatticeBump;
  s.n_ = cells.empty() ? 1 : static_cast<int>(cells.front().first.size());
  if (bump.dims != 2 * s.n_) throw std::invalid_argument("lattice_bump: profile dimension mismatch");
  if (coeffs.empty()) coeffs.assign(cells.size(), cd(1.0));
  if (coeffs.size() != cells.size()) throw std::invalid_argument("lattice_bump: coefficient count");
  s.cells_ = std::move(cells);
  s.coeffs_ = std::move(coeffs);
  s.bump_ = bump;
  return s;
}

// sigma = sum_{(k1,k2)} V(k1,k2) phi(xi1-k1) phi(xi2-k2) for a cell profile
// phi; with a smooth plateau profile this is the only-if test symbol.
inline Symbol symbol_from_weight(const LatticeWeight& V, const BumpProfile1D& cell) {
  int n = V.dim;
  auto entries = std::make_shared<std::vector<std::pair<Coords, double>>>();
  for (const auto& [key, v] : V.entries) entries->push_back({key, v});
  return Symbol::multiplier(n, [entries, n, cell](const std::vector<double>& x1,
                                                  const std::vector<double>& x2) {
    double acc = 0;
    for (const auto& [key, v] : *entries) {
      double w = v;
      for (int d = 0; d < n && w != 0.0; ++d) w *= cell(x1[d] - key[d]);
      for (int d = 0; d < n && w != 0.0; ++d) w *= cell(x2[d] - key[d + n]);
      acc += w;
    }
    return cd(acc);
  });
}

// piecewise-constant extension of V: value V(round(xi1), round(xi2)),
// Q = [-1/2, 1/2)
inline Symbol symbol_from_weight_indicator(const LatticeWeight& V) {
  int n = V.dim;
  auto Vp = std::make_shared<LatticeWeight>(V);
  return Symbol::multiplier(n, [Vp, n](const std::vector<double>& x1, const std::vector<double>& x2) {
    Coords key(2 * n);
    for (int d = 0; d < n; ++d) key[d] = (int)std::floor(x1[d] + 0.5);
    for (int d = 0; d < n; ++d) key[d + n] = (int)std::floor(x2[d] + 0.5);
    return cd(Vp->at(key));
  });
}

namespace sdetail {

inline std::vector<double> frequencies_of_bin(const TorusGrid& g, std::size_t flat) {
  long long mm[3];
  gdetail::unflatten(flat, g.n, g.M, mm);
  std::vector<double> xi(g.n);
  for (int d = 0; d < g.n; ++d) xi[d] = g.xi(g.signed_index(std::size_t(mm[d])));
  return xi;
}

// storage bin of the (wrapped) bin sum
inline std::size_t bin_sum(const TorusGrid& g, std::size_t i1, std::size_t i2) {
  long long a[3], b[3];
  gdetail::unflatten(i1, g.n, g.M, a);
  gdetail::unflatten(i2, g.n, g.M, b);
  std::size_t idx = 0;
  for (int d = 0; d < g.n; ++d) idx = idx * std::size_t(g.M) + std::size_t((a[d] + b[d]) % g.M);
  return idx;
}

// coefficients of f windowed by a frequency-side profile centered at nu
inline std::vector<cd> windowed_coeffs(const GridFunction& f, const Coords& nu,
                                       const BumpProfile1D& prof) {
  const TorusGrid& g = f.grid();
  std::vector<cd> c = f.coeffs();
  for (std::size_t idx = 0; idx < c.size(); ++idx) {
    if (c[idx] == cd(0)) continue;
    auto xi = frequencies_of_bin(g, idx);
    double w = 1.0;
    for (int d = 0; d < g.n; ++d) w *= prof(xi[d] - nu[d]);
    c[idx] *= w;
  }
  return c;
}

inline GridFunction pointwise_product(const GridFunction& a, const GridFunction& b) {
  std::vector<cd> v(a.values().size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = a.values()[i] * b.values()[i];
  return GridFunction(a.grid(), std::move(v));
}

}  // namespace sdetail

// T_sigma(f1,f2)(x_j) = L^{-2n} sum_{xi1,xi2} sigma(xi1,xi2) c1(xi1) c2(xi2)
// e^{i x_j (xi1+xi2)} -- the exact torus analog of the defining integral.
// On grid points the phase xi1+xi2 wraps onto the frequency lattice, so the
// dense path accumulates sigma(xi1,.) c2(.) slice by slice into a coefficient
// table and inverts once.
inline GridFunction apply(const Symbol& sigma, const GridFunction& f1, const GridFunction& f2) {
  const TorusGrid& g = f1.grid();
  if (!(f2.grid() == g)) throw std::invalid_argument("apply: grid mismatch");
  if (sigma.dim() != g.n) throw std::invalid_argument("apply: symbol dimension mismatch");
  const std::size_t total = g.total();

  if (sigma.kind() == Symbol::Kind::Separable) {
    std::vector<cd> c1 = f1.coeffs(), c2 = f2.coeffs();
    for (std::size_t i = 0; i < total; ++i) {
      auto xi = sdetail::frequencies_of_bin(g, i);
      if (c1[i] != cd(0)) c1[i] *= sigma.factor_a()(xi);
      if (c2[i] != cd(0)) c2[i] *= sigma.factor_b()(xi);
    }
    return sdetail::pointwise_product(idft(g, c1), idft(g, c2));
  }

  if (sigma.kind() == Symbol::Kind::LatticeBump) {
    std::map<Coords, GridFunction> p1, p2;
    for (const auto& cell : sigma.cells()) {
      if (!p1.count(cell.first))
        p1.emplace(cell.first, idft(g, sdetail::windowed_coeffs(f1, cell.first, sigma.bump().axis)));
      if (!p2.count(cell.second))
        p2.emplace(cell.second, idft(g, sdetail::windowed_coeffs(f2, cell.second, sigma.bump().axis)));
    }
    std::vector<cd> out(total, cd(0));
    for (std::size_t ci = 0; ci < sigma.cells().size(); ++ci) {
      const auto& a = p1.at(sigma.cells()[ci].first).values();
      const auto& b = p2.at(sigma.cells()[ci].second).values();
      cd m = sigma.cell_coeffs()[ci];
      for (std::size_t i = 0; i < total; ++i) out[i] += m * a[i] * b[i];
    }
    return GridFunction(g, std::move(out));
  }

  const std::vector<cd>& c1 = f1.coeffs();
  const std::vector<cd>& c2 = f2.coeffs();
  const double Ln = std::pow(g.L, g.n);
  std::vector<cd> acc(total, cd(0));
  std::vector<double> xi1, xi2;
  for (std::size_t i1 = 0; i1 < total; ++i1) {
    if (c1[i1] == cd(0)) continue;
    xi1 = sdetail::frequencies_of_bin(g, i1);
    for (std::size_t i2 = 0; i2 < total; ++i2) {
      if (c2[i2] == cd(0)) continue;
      xi2 = sdetail::frequencies_of_bin(g, i2);
      cd sv = sigma.eval(xi1, xi2);
      if (sv == cd(0)) continue;
      acc[sdetail::bin_sum(g, i1, i2)] += sv * c1[i1] * c2[i2] / Ln;
    }
  }
  return idft(g, acc);
}

// ----- the only-if test functions -----

struct ModulatedPair {
  GridFunction f1, f2;
  GridFunction envelope;  // (F^{-1} phi)(lambda^{-1} x) as a grid function
  double lambda{1};
};

// f_1(x) = sum A(nu) e^{i nu x} (F^{-1}phi)(x/lambda), built frequency-side:
// c_{f1}(xi) = sum_nu A(nu) lambda^n phi(lambda (xi - nu)).  Exactness of
// the lattice embedding requires a 2-pi-multiple period (make_grid_2pi).
inline ModulatedPair modulated_bump_pair(const TorusGrid& g, const LatticeVector& A,
                                         const LatticeVector& B, double lambda,
                                         const BumpProfile1D& phi) {
  if (lambda < 1.0) throw std::invalid_argument("modulated_bump_pair: lambda >= 1 required");
  if (phi.halfwidth > 0.125 + 1e-12)
    throw std::invalid_argument("modulated_bump_pair: profile must be supported in [-1/8,1/8]");
  if (A.dim != g.n || B.dim != g.n) throw std::invalid_argument("modulated_bump_pair: dimension");
  double P = g.L / (2.0 * kPi);
  if (std::abs(P - std::round(P)) > 1e-9)
    throw std::invalid_argument("modulated_bump_pair: grid period must be a multiple of 2*pi");

  double ny = g.nyquist();
  auto max_mod = [&](const LatticeVector& v) {
    double m = 0;
    for (auto& [p, val] : v.entries)
      for (int c : p) m = std::max(m, std::abs(double(c)));
    return m;
  };
  if (max_mod(A) + 1.0 > ny || max_mod(B) + 1.0 > ny)
    throw std::invalid_argument("modulated_bump_pair: modulations exceed the representable band");

  double lam_n = std::pow(lambda, g.n);
  auto build = [&](const LatticeVector& coefvec) {
    std::vector<cd> c(g.total(), cd(0));
    long long mm[3];
    for (std::size_t idx = 0; idx < c.size(); ++idx) {
      gdetail::unflatten(idx, g.n, g.M, mm);
      double acc = 0;
      for (const auto& [nu, a] : coefvec.entries) {
        double w = a * lam_n;
        for (int d = 0; d < g.n && w != 0.0; ++d)
          w *= phi(lambda * (g.xi(g.signed_index(std::size_t(mm[d]))) - nu[d]));
        acc += w;
      }
      c[idx] = cd(acc);
    }
    return idft(g, c);
  };

  ModulatedPair pair;
  pair.lambda = lambda;
  pair.f1 = build(A);
  pair.f2 = build(B);
  LatticeVector origin;
  origin.dim = g.n;
  origin.set(Coords(g.n, 0), 1.0);
  pair.envelope = build(origin);
  return pair;
}

// Sum_k d_k e^{ikx} env(x)^2 with d = bilinear_image(V, A, B): the closed
// form the bridge identity equates apply(sigma, f1, f2) to.
inline GridFunction modulated_action_reference(const TorusGrid& g, const LatticeWeight& V,
                                               const LatticeVector& A, const LatticeVector& B,
                                               const ModulatedPair& pair) {
  LatticeVector d = bilinear_image(V, A, B);
  std::vector<cd> out(g.total(), cd(0));
  const auto& env = pair.envelope.values();
  long long jj[3];
  for (std::size_t j = 0; j < g.total(); ++j) {
    gdetail::unflatten(j, g.n, g.M, jj);
    cd mod(0);
    for (const auto& [k, dk] : d.entries) {
      double phase = 0;
      for (int dd = 0; dd < g.n; ++dd) phase += double(k[dd]) * g.x(jj[dd]);
      mod += dk * cd(std::cos(phase), std::sin(phase));
    }
    out[j] = mod * env[j] * env[j];
  }
  return GridFunction(g, std::move(out));
}

}  // namespace bilinlab
