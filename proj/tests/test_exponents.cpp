#include <catch2/catch_amalgamated.hpp>

#include "bilinlab/exponents.hpp"
#include "bilinlab/rng.hpp"

using namespace bilinlab;

namespace {
Exponent E(long long n, long long d = 1) { return Exponent::finite(rat(n, d)); }
const Exponent Inf = Exponent::infinity();
}  // namespace

TEST_CASE("make_triple stores exact reciprocals") {
  auto t = make_triple(E(2), E(2), E(1));
  CHECK(t.r1 == rat(1, 2));
  CHECK(t.r2 == rat(1, 2));
  CHECK(t.rp == rat(1));
  CHECK(t.r3 == rat(0));

  t = make_triple(Inf, Inf, Inf);
  CHECK(t.r1 == rat(0));
  CHECK(t.r2 == rat(0));
  CHECK(t.rp == rat(0));
  CHECK(t.r3 == rat(1));

  t = make_triple(E(4), E(4), E(2));
  CHECK(t.r1 == rat(1, 4));
  CHECK(t.r2 == rat(1, 4));
  CHECK(t.rp == rat(1, 2));
  CHECK(t.r3 == rat(1, 2));

  CHECK_THROWS_AS(make_triple(E(1, 2), E(2), E(1)), std::domain_error);
  CHECK_THROWS_AS(make_triple(E(2), E(2, 3), E(1)), std::domain_error);
}

TEST_CASE("critical order") {
  CHECK(critical_order(make_triple(E(2), E(2), E(1)), 1) == rat(-1, 2));
  CHECK(critical_order(make_triple(E(1), E(1), E(1, 2)), 1) == rat(-3, 2));
  CHECK(critical_order(make_triple(Inf, Inf, Inf), 2) == rat(-2));
}

TEST_CASE("sharp q on the spec examples") {
  auto r = sharp_q(E(2), E(2), E(1));
  CHECK(r.q == rat(4));
  CHECK(r.label == QCase::I);
  CHECK(r.weak_type);

  // (1,1,1/2): reciprocals (1,1,0); only case III-2 applies (r3 = 0 < 1/2
  // rules the IV cases out) and the value matches 1/q = 1/p1 + 1/p2 - 1.
  r = sharp_q(E(1), E(1), E(1, 2));
  CHECK(r.q == rat(1));
  CHECK(r.label == QCase::III2);
  CHECK_FALSE(r.weak_type);

  r = sharp_q(E(1), E(2), E(2, 3));
  CHECK(r.q == rat(2));
  CHECK(r.label == QCase::II);
  CHECK_FALSE(r.weak_type);  // II* needs 1/p_k < 1, here 1/p1 = 1

  // (inf,inf,inf): reciprocals (0,0,1); case II with k = 3, and II* fails
  // since 1/p3 = 1.
  r = sharp_q(Inf, Inf, Inf);
  CHECK(r.q == rat(2));
  CHECK(r.label == QCase::II);
  CHECK_FALSE(r.weak_type);
}

TEST_CASE("holder sharp q") {
  CHECK(holder_sharp_q(E(4), E(4)).q == rat(4));
  CHECK(holder_sharp_q(E(1), E(1)).q == rat(1));
  CHECK(holder_sharp_q(E(2), E(2)).q == rat(4));
  CHECK(holder_sharp_q(Inf, Inf).q == rat(2));
  // interior of the four regions of the Remark diagram
  CHECK(holder_sharp_q(E(8), E(8)).q == rat(1) / ((rat(1) - rat(1, 4)) / rat(2)));  // 2p'
  CHECK(holder_sharp_q(E(4), E(4, 3)).q == rat(2) * rat(4, 3));                     // 2p2
  CHECK(holder_sharp_q(E(4, 3), E(4)).q == rat(2) * rat(4, 3));                     // 2p1
  CHECK(rat(1) / holder_sharp_q(E(4, 3), E(4, 3)).q == (rat(3, 2) - rat(1, 2)) / rat(2));
  CHECK(rat(1) / holder_sharp_q(E(8, 7), E(8, 7)).q == rat(7, 4) - rat(1));
}

TEST_CASE("best exponent triple") {
  auto b = best_exponent_triple(make_triple(E(2), E(2), E(1)));
  CHECK(b[0] == E(2));
  CHECK(b[1] == E(2));
  CHECK(b[2] == E(2));

  b = best_exponent_triple(make_triple(E(1), E(2), E(2, 3)));
  CHECK(b[0].inf);
  CHECK(b[1] == E(2));
  CHECK(b[2] == E(2));
}

TEST_CASE("scaling identity on random rational triples") {
  SplitMix64 g(20260810);
  for (int it = 0; it < 1000; ++it) {
    long long d1 = 1 + (long long)g.below(16), d2 = 1 + (long long)g.below(16);
    long long dp = 1 + (long long)g.below(16);
    rat r1((long long)g.below(d1 + 1), d1);
    rat r2((long long)g.below(d2 + 1), d2);
    rat rp((long long)g.below(2 * dp + 1), dp);  // 1/p in [0,2]
    ExponentTriple t;
    t.r1 = r1;
    t.r2 = r2;
    t.rp = rp;
    t.r3 = rat_max(rat(0), rat(1) - rp);
    auto q = sharp_q(t);
    auto b = best_exponent_triple(t);
    rat sum = b[0].reciprocal() + b[1].reciprocal() + b[2].reciprocal();
    CHECK(rat(1) / q.q == rat(1) - sum / rat(2));
  }
}

TEST_CASE("permutation symmetry of sharp q") {
  SplitMix64 g(7);
  for (int it = 0; it < 500; ++it) {
    long long d = 1 + (long long)g.below(12);
    std::array<rat, 3> r{rat((long long)g.below(d + 1), d), rat((long long)g.below(d + 1), d),
                         rat((long long)g.below(d + 1), d)};
    std::array<int, 6> perms_first{0, 0, 1, 1, 2, 2};
    std::array<int, 6> perms_second{1, 2, 0, 2, 0, 1};
    ExponentTriple base;
    base.r1 = r[0];
    base.r2 = r[1];
    base.r3 = r[2];
    base.rp = r[2] == rat(0) ? rat(2) : rat(1) - r[2];  // any rp consistent with r3
    auto q0 = sharp_q(base);
    for (int p = 0; p < 6; ++p) {
      int a = perms_first[p], b = perms_second[p], c = 3 - a - b;
      ExponentTriple t;
      t.r1 = r[a];
      t.r2 = r[b];
      t.r3 = r[c];
      t.rp = r[c] == rat(0) ? rat(2) : rat(1) - r[c];
      auto q1 = sharp_q(t);
      CHECK(q1.q == q0.q);
      CHECK(q1.weak_type == q0.weak_type);
    }
  }
}

TEST_CASE("boundary agreement and range") {
  // sweep a 1/8 grid over [0,1]^2 x {p} checking 1 <= q <= 4, weak => q >= 2
  for (int a = 0; a <= 8; ++a)
    for (int b = 0; b <= 8; ++b)
      for (int c = 0; c <= 16; ++c) {
        ExponentTriple t;
        t.r1 = rat(a, 8);
        t.r2 = rat(b, 8);
        t.rp = rat(c, 8);
        t.r3 = rat_max(rat(0), rat(1) - t.rp);
        auto q = sharp_q(t);  // would throw on any overlap disagreement
        CHECK(q.q >= rat(1));
        CHECK(q.q <= rat(4));
        if (q.weak_type) CHECK(q.q >= rat(2));
      }
}

TEST_CASE("holder identity m = -2n/q and monotonicity in 1/p") {
  for (int n : {1, 2, 3})
    for (int a = 0; a < 16; ++a)
      for (int b = 0; b < 16; ++b) {
        rat r1(a, 16), r2(b, 16), sum = r1 + r2;
        if (!(rat(0) < sum && sum < rat(3, 2))) continue;
        ExponentTriple t;
        t.r1 = r1;
        t.r2 = r2;
        t.rp = sum;
        t.r3 = rat_max(rat(0), rat(1) - sum);
        auto q = sharp_q(t);
        CHECK(critical_order(t, n) == rat(-2 * n) / q.q);
      }

  // m nondecreasing in 1/p at fixed (r1, r2)
  ExponentTriple t;
  t.r1 = rat(1, 3);
  t.r2 = rat(2, 3);
  rat prev;
  bool first = true;
  for (int c = 0; c <= 32; ++c) {
    t.rp = rat(c, 16);
    t.r3 = rat_max(rat(0), rat(1) - t.rp);
    rat m = critical_order(t, 2);
    if (!first) CHECK(prev <= m);
    prev = m;
    first = false;
  }
}
