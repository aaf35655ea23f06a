#pragma once

// Sharp exponent formulas for bilinear S_{0,0} multipliers: the critical
// Hormander order m(p1,p2,p), the sharp weight-integrability exponent
// q(p1,p2,p) with its six-case taxonomy and weak-type flags, and the
// optimizing (q1,q2,q3) triple behind the Brascamp-Lieb step.
//
// All arithmetic is exact rational on reciprocals; infinity is reciprocal 0.

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

#include "bilinlab/rational.hpp"

namespace bilinlab {

// Reciprocals (1/p1, 1/p2, 1/p) plus the derived 1/p3, where
// p3 = infinity for 0 < p <= 1 and p3 = p' for 1 < p <= infinity.
struct ExponentTriple {
  rat r1, r2, rp, r3;
};

inline ExponentTriple make_triple(const Exponent& p1, const Exponent& p2, const Exponent& p) {
  rat r1 = p1.reciprocal(), r2 = p2.reciprocal(), rp = p.reciprocal();
  if (r1 > rat(1) || r2 > rat(1))
    throw std::domain_error("make_triple: p1, p2 must lie in [1, inf]");
  ExponentTriple t;
  t.r1 = r1;
  t.r2 = r2;
  t.rp = rp;
  t.r3 = rat_max(rat(0), rat(1) - rp);
  return t;
}

// m(p1,p2,p) = min(n/2, n/p) - max(n/2, n/p1) - max(n/2, n/p2), exact.
inline rat critical_order(const ExponentTriple& t, int n) {
  if (n < 1) throw std::domain_error("critical_order: dimension must be >= 1");
  rat half(n, 2);
  return rat_min(half, rat(n) * t.rp) - rat_max(half, rat(n) * t.r1) - rat_max(half, rat(n) * t.r2);
}

enum class QCase { I, II, III1, III2, IV1, IV2 };

inline const char* qcase_name(QCase c) {
  switch (c) {
    case QCase::I: return "I";
    case QCase::II: return "II";
    case QCase::III1: return "III-1";
    case QCase::III2: return "III-2";
    case QCase::IV1: return "IV-1";
    case QCase::IV2: return "IV-2";
  }
  return "?";
}

struct SharpQResult {
  rat q;             // in [1,4]
  QCase label;       // highest-priority applicable case
  bool weak_type;    // q survives with the weak lattice norm (starred cases)
  std::array<int, 3> perm{0, 1, 2};  // (i,j,k) used for the label, 0-based
};

namespace detail {

// All six case conditions evaluated on reciprocals r = (r[0], r[1], r[2]).
// Each applicable (case, permutation) pair contributes a candidate 1/q;
// the paper's cases overlap only where the formulas agree, and we keep an
// assertion on that.
struct QCandidate {
  QCase label;
  std::array<int, 3> perm;
  rat inv_q;
};

inline std::array<std::array<int, 3>, 6> all_perms() {
  return {{{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};
}

template <class F>
inline void collect_candidates(const std::array<rat, 3>& r, F&& emit) {
  const rat half(1, 2), one(1), three_half(3, 2);

  if (r[0] <= half && r[1] <= half && r[2] <= half)
    emit(QCandidate{QCase::I, {0, 1, 2}, rat(1, 4)});

  for (auto& p : all_perms()) {
    auto [i, j, k] = p;
    if (r[i] <= half && r[j] <= half && half <= r[k])
      emit(QCandidate{QCase::II, p, r[k] / rat(2)});
  }
  for (auto& p : all_perms()) {
    auto [i, j, k] = p;
    if (r[i] <= half && half <= r[j] && half <= r[k]) {
      if (r[j] + r[k] <= three_half)
        emit(QCandidate{QCase::III1, p, (r[j] + r[k] - half) / rat(2)});
      if (r[j] + r[k] >= three_half)
        emit(QCandidate{QCase::III2, p, r[j] + r[k] - one});
    }
  }
  if (half <= r[0] && half <= r[1] && half <= r[2]) {
    bool triangle = r[0] + r[1] <= one + r[2] && r[1] + r[2] <= one + r[0] && r[2] + r[0] <= one + r[1];
    if (triangle)
      emit(QCandidate{QCase::IV1, {0, 1, 2}, (r[0] + r[1] + r[2] - one) / rat(2)});
    for (auto& p : all_perms()) {
      auto [i, j, k] = p;
      if (r[i] + r[j] >= one + r[k])
        emit(QCandidate{QCase::IV2, p, r[i] + r[j] - one});
    }
  }
}

inline bool weak_condition(const std::array<rat, 3>& r) {
  const rat half(1, 2), one(1), three_half(3, 2), two(2);
  // (I)
  if (r[0] <= half && r[1] <= half && r[2] <= half) return true;
  // (II*): r_i, r_j <= 1/2 <= r_k < 1
  for (auto& p : all_perms()) {
    auto [i, j, k] = p;
    if (r[i] <= half && r[j] <= half && half <= r[k] && r[k] < one) return true;
  }
  // (III-1*): strict r_j + r_k < 3/2
  for (auto& p : all_perms()) {
    auto [i, j, k] = p;
    if (r[i] <= half && half <= r[j] && half <= r[k] && r[j] + r[k] < three_half) return true;
  }
  // (IV-1*): strict triangle plus sum <= 2
  if (half <= r[0] && half <= r[1] && half <= r[2]) {
    bool strict = r[0] + r[1] < one + r[2] && r[1] + r[2] < one + r[0] && r[2] + r[0] < one + r[1];
    if (strict && r[0] + r[1] + r[2] <= two) return true;
  }
  return false;
}

}  // namespace detail

inline SharpQResult sharp_q(const ExponentTriple& t) {
  std::array<rat, 3> r{t.r1, t.r2, t.r3};

  // Priority order I > II > III-1 > III-2 > IV-1 > IV-2; within a case the
  // lexicographically smallest permutation wins.
  std::optional<detail::QCandidate> best;
  std::optional<rat> agreed;
  detail::collect_candidates(r, [&](const detail::QCandidate& c) {
    if (agreed && !(*agreed == c.inv_q))
      throw std::logic_error("sharp_q: overlapping case formulas disagree at (" + r[0].str() +
                             "," + r[1].str() + "," + r[2].str() + ")");
    if (!agreed) agreed = c.inv_q;
    if (!best || std::pair(static_cast<int>(c.label), c.perm) <
                     std::pair(static_cast<int>(best->label), best->perm))
      best = c;
  });
  if (!best)
    throw std::logic_error("sharp_q: no case applies (invalid triple?)");

  SharpQResult res;
  res.q = rat(1) / best->inv_q;
  res.label = best->label;
  res.perm = best->perm;
  res.weak_type = detail::weak_condition(r);
  if (res.q < rat(1) || res.q > rat(4))
    throw std::logic_error("sharp_q: q outside [1,4]");
  return res;
}

inline SharpQResult sharp_q(const Exponent& p1, const Exponent& p2, const Exponent& p) {
  return sharp_q(make_triple(p1, p2, p));
}

// The Holder-case shortcut 1/p = 1/p1 + 1/p2. Evaluates the six-branch
// direct formula and cross-checks it against the full taxonomy.
inline SharpQResult holder_sharp_q(const Exponent& p1, const Exponent& p2) {
  rat r1 = p1.reciprocal(), r2 = p2.reciprocal();
  if (r1 > rat(1) || r2 > rat(1))
    throw std::domain_error("holder_sharp_q: p1, p2 must lie in [1, inf]");
  rat sum = r1 + r2;

  const rat half(1, 2), one(1), three_half(3, 2);
  std::optional<rat> direct;
  auto emit = [&](rat inv_q) {
    if (direct && !(*direct == inv_q))
      throw std::logic_error("holder_sharp_q: Remark-branch formulas disagree");
    direct = inv_q;
  };
  if (r1 <= half && r2 <= half && half <= sum) emit(rat(1, 4));
  if (r1 <= half && r2 <= half && sum <= half) emit((one - r1 - r2) / rat(2));
  if (r1 <= half && half <= r2) emit(r2 / rat(2));
  if (r2 <= half && half <= r1) emit(r1 / rat(2));
  if (half <= r1 && half <= r2 && sum <= three_half) emit((r1 + r2 - half) / rat(2));
  if (half <= r1 && half <= r2 && sum >= three_half) emit(r1 + r2 - one);
  if (!direct) throw std::logic_error("holder_sharp_q: no branch applies");

  ExponentTriple t;
  t.r1 = r1;
  t.r2 = r2;
  t.rp = sum;
  t.r3 = rat_max(rat(0), one - sum);
  SharpQResult res = sharp_q(t);
  if (!(rat(1) / res.q == *direct))
    throw std::logic_error("holder_sharp_q: direct formula disagrees with taxonomy");
  return res;
}

// The optimal (q1,q2,q3) from the Brascamp-Lieb scaling step: maximizes
// 1/q1 + 1/q2 + 1/q3 under (A-1)/(A-2), attaining 1/q = 1 - (1/2) sum 1/q_l.
inline std::array<Exponent, 3> best_exponent_triple(const ExponentTriple& t) {
  std::array<rat, 3> r{t.r1, t.r2, t.r3};
  SharpQResult sq = sharp_q(t);
  auto [i, j, k] = sq.perm;
  const rat half(1, 2), one(1);

  std::array<rat, 3> s;  // s[l] = 1/q_l
  switch (sq.label) {
    case QCase::I:
      s = {half, half, half};
      break;
    case QCase::II:
      s[i] = half; s[j] = half; s[k] = one - r[k];
      break;
    case QCase::III1:
      s[i] = half; s[j] = one - r[j]; s[k] = one - r[k];
      break;
    case QCase::III2:
      s[i] = (one - r[j]) + (one - r[k]); s[j] = one - r[j]; s[k] = one - r[k];
      break;
    case QCase::IV1:
      s = {one - r[0], one - r[1], one - r[2]};
      break;
    case QCase::IV2:
      s[i] = one - r[i]; s[j] = one - r[j]; s[k] = (one - r[i]) + (one - r[j]);
      break;
  }

  // (A-1): 1/q_l <= 1 - max(1/2, r_l)
  for (int l = 0; l < 3; ++l)
    if (s[l] > one - rat_max(half, r[l]))
      throw std::logic_error("best_exponent_triple: (A-1) violated");
  // (A-2): triangle inequalities, all entries nonnegative
  for (auto& p : detail::all_perms()) {
    auto [a, b, c] = p;
    if (s[a] < rat(0) || s[a] > s[b] + s[c])
      throw std::logic_error("best_exponent_triple: (A-2) violated");
  }
  // the scaling identity reproduces sharp q
  rat inv_q = one - (s[0] + s[1] + s[2]) / rat(2);
  if (!(inv_q == rat(1) / sq.q))
    throw std::logic_error("best_exponent_triple: scaling identity violated");

  return {Exponent::from_reciprocal(s[0]), Exponent::from_reciprocal(s[1]),
          Exponent::from_reciprocal(s[2])};
}

}  // namespace bilinlab
