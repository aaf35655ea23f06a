#pragma once

// Finitely supported nonnegative functions on Z^n and Z^n x Z^n: the
// A, B, C vectors and V weights of the lattice trilinear form
//   (V, A, B, C) -> sum V(v1,v2) A(v1) B(v2) C(v1+v2).
// Weight entries are keyed by the concatenated coordinates (v1, v2).

#include <cmath>
#include <cstdlib>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "bilinlab/rational.hpp"

namespace bilinlab {

using Coords = std::vector<int>;

struct LatticeVector {
  int dim{1};
  std::map<Coords, double> entries;  // lexicographic key order, values >= 0

  double at(const Coords& p) const {
    auto it = entries.find(p);
    return it == entries.end() ? 0.0 : it->second;
  }
  void set(const Coords& p, double v) {
    if (static_cast<int>(p.size()) != dim) throw std::invalid_argument("LatticeVector: bad coords");
    if (v < 0) throw std::invalid_argument("LatticeVector: negative value");
    if (v == 0) entries.erase(p); else entries[p] = v;
  }
  static LatticeVector delta(const Coords& p) {
    LatticeVector v;
    v.dim = static_cast<int>(p.size());
    v.entries[p] = 1.0;
    return v;
  }
};

struct LatticeWeight {
  int dim{1};                        // n; keys have length 2n
  std::map<Coords, double> entries;

  double at(const Coords& p12) const {
    auto it = entries.find(p12);
    return it == entries.end() ? 0.0 : it->second;
  }
  void set(const Coords& v1, const Coords& v2, double v) {
    if (static_cast<int>(v1.size()) != dim || static_cast<int>(v2.size()) != dim)
      throw std::invalid_argument("LatticeWeight: bad coords");
    if (v < 0) throw std::invalid_argument("LatticeWeight: negative value");
    Coords key = v1;
    key.insert(key.end(), v2.begin(), v2.end());
    if (v == 0) entries.erase(key); else entries[key] = v;
  }
  bool empty() const { return entries.empty(); }

  static LatticeWeight delta(const Coords& v1, const Coords& v2) {
    LatticeWeight w;
    w.dim = static_cast<int>(v1.size());
    w.set(v1, v2, 1.0);
    return w;
  }
};

inline void split_key(const Coords& key, int n, Coords& v1, Coords& v2) {
  v1.assign(key.begin(), key.begin() + n);
  v2.assign(key.begin() + n, key.end());
}

inline Coords coord_sum(const Coords& a, const Coords& b) {
  Coords s(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) s[i] = a[i] + b[i];
  return s;
}

// sum_{v1,v2} V(v1,v2) A(v1) B(v2) C(v1+v2), over supp V only
inline double trilinear_form(const LatticeWeight& V, const LatticeVector& A,
                             const LatticeVector& B, const LatticeVector& C) {
  if (A.dim != V.dim || B.dim != V.dim || C.dim != V.dim)
    throw std::invalid_argument("trilinear_form: dimension mismatch");
  double acc = 0.0;
  Coords v1, v2;
  for (const auto& [key, v] : V.entries) {
    split_key(key, V.dim, v1, v2);
    double a = A.at(v1);
    if (a == 0) continue;
    double b = B.at(v2);
    if (b == 0) continue;
    acc += v * a * b * C.at(coord_sum(v1, v2));
  }
  return acc;
}

// v -> sum_{v1+v2=v} V(v1,v2) A(v1) B(v2)
inline LatticeVector bilinear_image(const LatticeWeight& V, const LatticeVector& A,
                                    const LatticeVector& B) {
  if (A.dim != V.dim || B.dim != V.dim)
    throw std::invalid_argument("bilinear_image: dimension mismatch");
  LatticeVector out;
  out.dim = V.dim;
  Coords v1, v2;
  for (const auto& [key, v] : V.entries) {
    split_key(key, V.dim, v1, v2);
    double a = A.at(v1);
    if (a == 0) continue;
    double b = B.at(v2);
    if (b == 0) continue;
    out.entries[coord_sum(v1, v2)] += v * a * b;
  }
  return out;
}

// l^q (quasi)norm; q in (0, inf]
inline double lq_norm(const LatticeVector& x, const Exponent& q) {
  if (q.inf) {
    double m = 0;
    for (auto& [p, v] : x.entries) m = std::max(m, v);
    return m;
  }
  double qd = q.value.to_double();
  double s = 0;
  for (auto& [p, v] : x.entries) s += std::pow(v, qd);
  return std::pow(s, 1.0 / qd);
}

inline double lq_norm(const LatticeWeight& V, const Exponent& q) {
  if (q.inf) {
    double m = 0;
    for (auto& [p, v] : V.entries) m = std::max(m, v);
    return m;
  }
  double qd = q.value.to_double();
  double s = 0;
  for (auto& [p, v] : V.entries) s += std::pow(v, qd);
  return std::pow(s, 1.0 / qd);
}

// ----- the paper's stock weights, materialized on explicit boxes -----

inline double euclid(const Coords& p) {
  double s = 0;
  for (int c : p) s += double(c) * c;
  return std::sqrt(s);
}

namespace detail {
template <class F>
inline void for_each_box_point(int n, int R, F&& f) {
  Coords p(n, -R);
  while (true) {
    f(p);
    int axis = n - 1;
    while (axis >= 0) {
      if (++p[axis] <= R) break;
      p[axis] = -R;
      --axis;
    }
    if (axis < 0) break;
  }
}
}  // namespace detail

// (1+|v1|+|v2|)^m on the box max(|v1|_inf, |v2|_inf) <= R
inline LatticeWeight weight_hormander(const rat& m, int n, int R) {
  if (R < 0) throw std::invalid_argument("weight_hormander: R >= 0 required");
  LatticeWeight W;
  W.dim = n;
  double md = m.to_double();
  detail::for_each_box_point(n, R, [&](const Coords& v1) {
    detail::for_each_box_point(n, R, [&](const Coords& v2) {
      W.set(v1, v2, std::pow(1.0 + euclid(v1) + euclid(v2), md));
    });
  });
  return W;
}

// prod_k (1 + |v1_k| + |v2_k|)^{-1} on the same box
inline LatticeWeight weight_hilbert(int n, int R) {
  if (R < 0) throw std::invalid_argument("weight_hilbert: R >= 0 required");
  LatticeWeight W;
  W.dim = n;
  detail::for_each_box_point(n, R, [&](const Coords& v1) {
    detail::for_each_box_point(n, R, [&](const Coords& v2) {
      double v = 1.0;
      for (int k = 0; k < n; ++k) v /= 1.0 + std::abs(v1[k]) + std::abs(v2[k]);
      W.set(v1, v2, v);
    });
  });
  return W;
}

enum class ProductArrangement { Nu1Nu2, Nu1Sum, SumNu2 };

// f1 (x) f2 in one of the three arrangements of Section "weights of product
// form": f1(v1)f2(v2), f1(v1)f2(v1+v2), f1(v1+v2)f2(v2)
inline LatticeWeight weight_product(const LatticeVector& f1, const LatticeVector& f2,
                                    ProductArrangement arr) {
  if (f1.dim != f2.dim) throw std::invalid_argument("weight_product: dimension mismatch");
  LatticeWeight W;
  W.dim = f1.dim;
  for (auto& [p1, a] : f1.entries)
    for (auto& [p2, b] : f2.entries) {
      Coords v1, v2;
      switch (arr) {
        case ProductArrangement::Nu1Nu2:  // (v1, v2) = (p1, p2)
          v1 = p1; v2 = p2;
          break;
        case ProductArrangement::Nu1Sum: {  // v1 = p1, v1+v2 = p2
          v1 = p1;
          v2.resize(p1.size());
          for (std::size_t i = 0; i < p1.size(); ++i) v2[i] = p2[i] - p1[i];
          break;
        }
        case ProductArrangement::SumNu2: {  // v1+v2 = p1, v2 = p2
          v2 = p2;
          v1.resize(p1.size());
          for (std::size_t i = 0; i < p1.size(); ++i) v1[i] = p1[i] - p2[i];
          break;
        }
      }
      W.set(v1, v2, a * b);
    }
  return W;
}

}  // namespace bilinlab
