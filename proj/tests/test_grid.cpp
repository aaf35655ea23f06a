#include <catch2/catch_amalgamated.hpp>

#include "bilinlab/grid.hpp"
#include "bilinlab/rng.hpp"

using namespace bilinlab;

namespace {
Exponent E(long long n, long long d = 1) { return Exponent::finite(rat(n, d)); }

GridFunction random_band_limited(const TorusGrid& g, int max_bin, std::uint64_t seed) {
  SplitMix64 rng(seed);
  std::vector<cd> c(g.total(), cd(0));
  long long mm[3];
  for (std::size_t idx = 0; idx < c.size(); ++idx) {
    gdetail::unflatten(idx, g.n, g.M, mm);
    bool in = true;
    for (int d = 0; d < g.n; ++d)
      if (std::llabs(g.signed_index(std::size_t(mm[d]))) > max_bin) in = false;
    if (in) c[idx] = cd(rng.normal(), rng.normal());
  }
  return idft(g, c);
}
}  // namespace

TEST_CASE("dft of constants and plane waves") {
  auto g = make_grid_2pi(1, 4, 128);  // L = 8 pi
  auto one = GridFunction::sample(g, [](const std::vector<double>&) { return cd(1.0); });
  const auto& c = one.coeffs();
  double Ln = g.L;
  CHECK(std::abs(one.coeff({0}) - cd(Ln)) < 1e-10 * Ln);
  double off = 0;
  for (std::size_t i = 1; i < c.size(); ++i) off = std::max(off, std::abs(c[i]));
  CHECK(off < 1e-10 * Ln);

  // plane wave at lattice frequency m=12
  long long m0 = 12;
  double xi0 = g.xi(m0);
  auto wave = GridFunction::sample(g, [&](const std::vector<double>& x) {
    return cd(std::cos(xi0 * x[0]), std::sin(xi0 * x[0]));
  });
  CHECK(std::abs(wave.coeff({m0}) - cd(Ln)) < 1e-9 * Ln);
  CHECK(std::abs(wave.coeff({m0 + 1})) < 1e-9 * Ln);
}

TEST_CASE("fourier roundtrip and parseval") {
  for (int n : {1, 2}) {
    auto g = n == 1 ? make_grid_2pi(1, 4, 256) : make_grid_2pi(2, 2, 32);
    SplitMix64 rng(7 + n);
    std::vector<cd> v(g.total());
    for (auto& z : v) z = cd(rng.normal(), rng.normal());
    GridFunction f(g, v);
    auto back = idft(g, f.coeffs());
    double err = 0, scale = 0;
    for (std::size_t i = 0; i < v.size(); ++i) {
      err = std::max(err, std::abs(back.values()[i] - v[i]));
      scale = std::max(scale, std::abs(v[i]));
    }
    CHECK(err < 1e-12 * scale);

    // h^n sum |f|^2 == L^{-n} sum |c|^2
    double phys = 0;
    for (auto& z : v) phys += std::norm(z);
    phys *= std::pow(g.h(), g.n);
    double freq = 0;
    for (auto& z : f.coeffs()) freq += std::norm(z);
    freq /= std::pow(g.L, g.n);
    CHECK(phys == Catch::Approx(freq).epsilon(1e-12));
    CHECK(lp_norm(f, E(2)) == Catch::Approx(l2_norm_fourier(f)).epsilon(1e-12));
  }
}

TEST_CASE("lp norms") {
  auto g = make_grid_2pi(2, 1, 16);
  auto one = GridFunction::sample(g, [](const std::vector<double>&) { return cd(1.0); });
  CHECK(lp_norm(one, E(2)) == Catch::Approx(g.L).epsilon(1e-12));  // L^{n/2} with n=2

  auto wave = GridFunction::sample(g, [&](const std::vector<double>& x) {
    double ph = g.xi(3) * x[0] + g.xi(1) * x[1];
    return cd(std::cos(ph), std::sin(ph));
  });
  CHECK(lp_norm(wave, Exponent::infinity()) == Catch::Approx(1.0).epsilon(1e-12));

  auto scaled = wave;
  for (auto& z : scaled.mutable_values()) z *= cd(0, -2.5);
  for (auto p : {E(1), E(1, 2), E(2), E(4)})
    CHECK(lp_norm(scaled, p) == Catch::Approx(2.5 * lp_norm(wave, p)).epsilon(1e-12));
}

TEST_CASE("interpolant evaluation agrees on grid points") {
  auto g = make_grid_2pi(1, 2, 64);
  auto f = random_band_limited(g, 10, 99);
  for (long long j : {0LL, 7LL, 40LL}) {
    cd direct = f.values()[std::size_t(j)];
    cd interp = eval_interpolant(f, {g.x(j)});
    CHECK(std::abs(direct - interp) < 1e-10);
  }
}

TEST_CASE("grid constructor guards") {
  CHECK_THROWS_AS(make_grid(1, 10.0, 100), std::invalid_argument);  // not a power of two
  CHECK_THROWS_AS(make_grid(0, 10.0, 64), std::invalid_argument);
  CHECK_THROWS_AS(make_grid_2pi(1, 0, 64), std::invalid_argument);
}
