#pragma once

// Norm estimation for the lattice weight classes B_{q1,q2,q} and
// B^form_{q1,q2,q3}:
//   - alternating maximization with exact Holder-dual coordinate updates
//     (lower bounds, with witnesses),
//   - deterministic brute-force sphere search on tiny supports (the oracle),
//   - the Brascamp-Lieb upper bound with a frozen calibration constant,
//   - moderate-class majorants and the critical-weight counterexample.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "bilinlab/bl_calibration.hpp"
#include "bilinlab/lattice.hpp"
#include "bilinlab/rational.hpp"
#include "bilinlab/rng.hpp"

namespace bilinlab {

struct AltMaxOptions {
  int max_iters = 500;
  double tol = 1e-8;
  int restarts = 8;
  std::uint64_t seed = 0;
};

struct NormEstimate {
  double lower = 0.0;
  double upper = std::numeric_limits<double>::infinity();
  LatticeVector witness_a, witness_b, witness_c;
  int iterations = 0;
  bool converged = false;
  bool degenerate = false;  // V identically zero
};

inline Exponent dual_exponent(const Exponent& q) {
  rat r = q.reciprocal();
  if (r > rat(1)) throw std::domain_error("dual_exponent: q must be >= 1");
  return Exponent::from_reciprocal(rat(1) - r);
}

namespace detail {

// Weight compiled to index arrays; index order is the lexicographic order of
// the underlying lattice points, which keeps argmax tie-breaking and restart
// merging deterministic.
struct CompiledForm {
  int n{1};
  std::vector<Coords> pa, pb, pc;
  std::vector<int> ia, ib, ic;
  std::vector<double> w;

  static CompiledForm build(const LatticeWeight& V) {
    CompiledForm f;
    f.n = V.dim;
    std::map<Coords, int> ma, mb, mc;
    Coords v1, v2;
    for (const auto& [key, val] : V.entries) {
      split_key(key, V.dim, v1, v2);
      Coords vs = coord_sum(v1, v2);
      auto idx = [](std::map<Coords, int>& m, std::vector<Coords>& pts, const Coords& p) {
        auto it = m.find(p);
        if (it != m.end()) return it->second;
        int id = static_cast<int>(pts.size());
        m[p] = id;
        pts.push_back(p);
        return id;
      };
      f.ia.push_back(idx(ma, f.pa, v1));
      f.ib.push_back(idx(mb, f.pb, v2));
      f.ic.push_back(idx(mc, f.pc, vs));
      f.w.push_back(val);
    }
    return f;
  }

  double form(const std::vector<double>& a, const std::vector<double>& b,
              const std::vector<double>& c) const {
    double acc = 0;
    for (std::size_t t = 0; t < w.size(); ++t) acc += w[t] * a[ia[t]] * b[ib[t]] * c[ic[t]];
    return acc;
  }
};

inline double vec_lq(const std::vector<double>& x, const Exponent& q) {
  if (q.inf) {
    double m = 0;
    for (double v : x) m = std::max(m, v);
    return m;
  }
  double qd = q.value.to_double(), s = 0;
  for (double v : x)
    if (v > 0) s += std::pow(v, qd);
  return std::pow(s, 1.0 / qd);
}

inline void normalize_lq(std::vector<double>& x, const Exponent& q) {
  double nv = vec_lq(x, q);
  if (nv <= 0) return;
  for (double& v : x) v /= nv;
}

// Exact maximizer of sum_i x_i g_i over nonnegative x with ||x||_q = 1.
// For q <= 1 a point mass at the (first) argmax is optimal; for q = inf the
// all-ones vector on supp g; in between the Holder-dual power rule.
// Returns the attained value, i.e. ||g||_{q'}.
inline double dual_maximize(std::vector<double>& x, const std::vector<double>& g,
                            const Exponent& q) {
  double best = 0;
  if (q.inf) {
    double s = 0;
    for (std::size_t i = 0; i < g.size(); ++i) {
      x[i] = g[i] > 0 ? 1.0 : 0.0;
      s += g[i];
    }
    return s;
  }
  double qd = q.value.to_double();
  if (qd <= 1.0) {
    std::size_t arg = 0;
    for (std::size_t i = 0; i < g.size(); ++i)
      if (g[i] > best) { best = g[i]; arg = i; }
    std::fill(x.begin(), x.end(), 0.0);
    if (best > 0) x[arg] = 1.0;
    return best;
  }
  double qprime = qd / (qd - 1.0);
  double norm_gp = 0;
  for (double v : g)
    if (v > 0) norm_gp += std::pow(v, qprime);
  norm_gp = std::pow(norm_gp, 1.0 / qprime);
  if (norm_gp <= 0) {
    std::fill(x.begin(), x.end(), 0.0);
    return 0;
  }
  for (std::size_t i = 0; i < g.size(); ++i)
    x[i] = g[i] > 0 ? std::pow(g[i] / norm_gp, qprime - 1.0) : 0.0;
  return norm_gp;
}

struct AltMaxRun {
  double value = 0;
  std::vector<double> a, b, c;
  int iterations = 0;
  bool converged = false;
};

// One seeded run of the three-vector alternating maximization of the
// trilinear form under (e1, e2, e3) normalization.
inline AltMaxRun altmax_trilinear_run(const CompiledForm& f, const Exponent& e1,
                                      const Exponent& e2, const Exponent& e3,
                                      const AltMaxOptions& opt, std::uint64_t seed, bool flat) {
  AltMaxRun run;
  run.a.assign(f.pa.size(), 1.0);
  run.b.assign(f.pb.size(), 1.0);
  run.c.assign(f.pc.size(), 1.0);
  if (!flat) {
    SplitMix64 g(seed);
    for (double& v : run.a) v = 0.05 + g.uniform();
    for (double& v : run.b) v = 0.05 + g.uniform();
    for (double& v : run.c) v = 0.05 + g.uniform();
  }
  normalize_lq(run.a, e1);
  normalize_lq(run.b, e2);
  normalize_lq(run.c, e3);

  std::vector<double> ga(f.pa.size()), gb(f.pb.size()), gc(f.pc.size());
  double prev = 0;
  for (int it = 0; it < opt.max_iters; ++it) {
    std::fill(ga.begin(), ga.end(), 0.0);
    for (std::size_t t = 0; t < f.w.size(); ++t)
      ga[f.ia[t]] += f.w[t] * run.b[f.ib[t]] * run.c[f.ic[t]];
    dual_maximize(run.a, ga, e1);

    std::fill(gb.begin(), gb.end(), 0.0);
    for (std::size_t t = 0; t < f.w.size(); ++t)
      gb[f.ib[t]] += f.w[t] * run.a[f.ia[t]] * run.c[f.ic[t]];
    dual_maximize(run.b, gb, e2);

    std::fill(gc.begin(), gc.end(), 0.0);
    for (std::size_t t = 0; t < f.w.size(); ++t)
      gc[f.ic[t]] += f.w[t] * run.a[f.ia[t]] * run.b[f.ib[t]];
    double val = dual_maximize(run.c, gc, e3);

    run.iterations = it + 1;
    if (val <= 0) { run.value = 0; break; }
    if (it > 0 && (val - prev) / val < opt.tol) {
      run.value = val;
      run.converged = true;
      break;
    }
    prev = val;
    run.value = val;
  }
  return run;
}

// Multiplicative-ascent run for the two-vector objective ||image||_{l^q}
// with q < 1, where no exact dual step exists.
inline AltMaxRun altmax_image_run(const CompiledForm& f, const Exponent& e1, const Exponent& e2,
                                  double q, const AltMaxOptions& opt, std::uint64_t seed,
                                  bool flat) {
  AltMaxRun run;
  run.a.assign(f.pa.size(), 1.0);
  run.b.assign(f.pb.size(), 1.0);
  if (!flat) {
    SplitMix64 g(seed);
    for (double& v : run.a) v = 0.05 + g.uniform();
    for (double& v : run.b) v = 0.05 + g.uniform();
  }
  normalize_lq(run.a, e1);
  normalize_lq(run.b, e2);

  std::vector<double> d(f.pc.size());
  auto objective = [&](const std::vector<double>& a, const std::vector<double>& b) {
    std::fill(d.begin(), d.end(), 0.0);
    for (std::size_t t = 0; t < f.w.size(); ++t) d[f.ic[t]] += f.w[t] * a[f.ia[t]] * b[f.ib[t]];
    double s = 0;
    for (double v : d)
      if (v > 0) s += std::pow(v, q);
    return std::pow(s, 1.0 / q);
  };

  double cur = objective(run.a, run.b);
  std::vector<double> grad, trial;
  for (int it = 0; it < opt.max_iters; ++it) {
    run.iterations = it + 1;
    double before = cur;
    for (int side = 0; side < 2; ++side) {
      const std::vector<int>& idx_self = side == 0 ? f.ia : f.ib;
      const std::vector<int>& idx_other = side == 0 ? f.ib : f.ia;
      std::vector<double>& self = side == 0 ? run.a : run.b;
      std::vector<double>& other = side == 0 ? run.b : run.a;
      const Exponent& e_self = side == 0 ? e1 : e2;

      // current image and subgradient direction
      std::fill(d.begin(), d.end(), 0.0);
      for (std::size_t t = 0; t < f.w.size(); ++t)
        d[f.ic[t]] += f.w[t] * run.a[f.ia[t]] * run.b[f.ib[t]];
      grad.assign(self.size(), 0.0);
      for (std::size_t t = 0; t < f.w.size(); ++t) {
        double dc = d[f.ic[t]];
        if (dc > 0) grad[idx_self[t]] += f.w[t] * other[idx_other[t]] * std::pow(dc, q - 1.0);
      }
      double step = 1.0;
      while (step > 1e-4) {
        trial = self;
        for (std::size_t i = 0; i < trial.size(); ++i)
          trial[i] = trial[i] * std::pow(std::max(grad[i], 0.0), step);
        normalize_lq(trial, e_self);
        double v = objective(side == 0 ? trial : run.a, side == 0 ? run.b : trial);
        if (v > cur) {
          self = trial;
          cur = v;
          break;
        }
        step *= 0.5;
      }
    }
    run.value = cur;
    if (cur > 0 && (cur - before) / cur < opt.tol) {
      run.converged = true;
      break;
    }
  }
  return run;
}

inline LatticeVector to_lattice_vector(const std::vector<Coords>& pts,
                                       const std::vector<double>& x, int n) {
  LatticeVector v;
  v.dim = n;
  for (std::size_t i = 0; i < pts.size(); ++i)
    if (x[i] > 0) v.entries[pts[i]] = x[i];
  return v;
}

}  // namespace detail

// Lower bound on ||V||_{B_{q1,q2,q}} by alternating maximization.
// For q >= 1 the l^q stage is handled through its dual vector C (so all
// three coordinate updates are exact); for q < 1 a projected multiplicative
// ascent on (A, B) is used.  Multi-restart, deterministic merging.
inline NormEstimate b_norm_lower_altmax(const LatticeWeight& V, const Exponent& q1,
                                        const Exponent& q2, const Exponent& q,
                                        const AltMaxOptions& opt = {}) {
  NormEstimate est;
  if (V.empty()) {
    est.degenerate = true;
    est.converged = true;
    est.upper = 0;
    return est;
  }
  auto f = detail::CompiledForm::build(V);
  bool dual_path = q.inf || q.value >= rat(1);
  detail::AltMaxRun best;
  for (int r = 0; r < std::max(1, opt.restarts); ++r) {
    std::uint64_t s = derive_seed(opt.seed, static_cast<std::uint64_t>(r));
    detail::AltMaxRun run =
        dual_path
            ? detail::altmax_trilinear_run(f, q1, q2, dual_exponent(q), opt, s, r == 0)
            : detail::altmax_image_run(f, q1, q2, q.value.to_double(), opt, s, r == 0);
    if (r == 0 || run.value > best.value) best = run;
  }
  est.lower = best.value;
  est.iterations = best.iterations;
  est.converged = best.converged;
  est.witness_a = detail::to_lattice_vector(f.pa, best.a, V.dim);
  est.witness_b = detail::to_lattice_vector(f.pb, best.b, V.dim);
  if (dual_path) est.witness_c = detail::to_lattice_vector(f.pc, best.c, V.dim);
  return est;
}

// Deterministic grid search over the nonnegative parts of the unit spheres,
// restricted to the projections of supp V.  Oracle for tiny instances; cost
// grows combinatorially, hence the hard caps.
inline double b_norm_bruteforce(const LatticeWeight& V, const Exponent& q1, const Exponent& q2,
                                const Exponent& q, int grid_steps) {
  if (V.empty()) return 0.0;
  if (grid_steps < 1 || grid_steps > 64)
    throw std::invalid_argument("b_norm_bruteforce: grid_steps must be in [1,64]");
  auto f = detail::CompiledForm::build(V);
  if (f.pa.size() > 4 || f.pb.size() > 4)
    throw std::invalid_argument("b_norm_bruteforce: support too large for exhaustive search");

  auto compositions = [&](int k) {
    std::vector<std::vector<double>> out;
    std::vector<int> u(k, 0);
    u[0] = grid_steps;
    while (true) {
      out.emplace_back(u.begin(), u.end());
      // next composition of grid_steps into k parts, colex countdown
      int i = 0;
      while (i < k - 1 && u[i] == 0) ++i;
      if (i == k - 1) break;
      int v = u[i];
      u[i] = 0;
      u[i + 1] += 1;
      u[0] = v - 1;
    }
    return out;
  };

  auto dirs_a = compositions(static_cast<int>(f.pa.size()));
  auto dirs_b = compositions(static_cast<int>(f.pb.size()));
  for (auto& d : dirs_a) detail::normalize_lq(d, q1);
  for (auto& d : dirs_b) detail::normalize_lq(d, q2);

  std::vector<double> img(f.pc.size());
  double best = 0;
  for (const auto& a : dirs_a)
    for (const auto& b : dirs_b) {
      std::fill(img.begin(), img.end(), 0.0);
      for (std::size_t t = 0; t < f.w.size(); ++t)
        img[f.ic[t]] += f.w[t] * a[f.ia[t]] * b[f.ib[t]];
      best = std::max(best, detail::vec_lq(img, q));
    }
  return best;
}

// Calibrated Brascamp-Lieb upper bound: c_cal * ||V||_{l^{q0}} with q0 from
// the scaling identity 2/q0 + 1/q1 + 1/q2 + 1/q3 = 2, provided the exponent
// condition 0 <= 1/q_i <= 1 - 1/q0 holds; +inf otherwise (and for exponent
// tuples without a frozen calibration constant).
inline double brascamp_lieb_upper(const LatticeWeight& V, const Exponent& q1, const Exponent& q2,
                                  const Exponent& q3) {
  const double inf = std::numeric_limits<double>::infinity();
  rat s = q1.reciprocal() + q2.reciprocal() + q3.reciprocal();
  if (s > rat(2)) return inf;                    // 2/q0 = 2 - s < 0: unsatisfiable
  rat inv_q0 = (rat(2) - s) / rat(2);            // 1/q0 = 1 - s/2
  rat bound = rat(1) - inv_q0;                   // = s/2
  for (const Exponent* e : {&q1, &q2, &q3})
    if (e->reciprocal() > bound) return inf;     // (3.3) fails
  auto c = bl_calibration_lookup(q1.reciprocal(), q2.reciprocal(), q3.reciprocal());
  if (!c) return inf;
  return *c * lq_norm(V, Exponent::from_reciprocal(inv_q0));
}

// Estimates ||V||_{B^form_{q1,q2,q3}}; exponents in [1, inf].  Runs the
// direct three-vector ascent and the dual B_{q1,q2,q3'} route and keeps the
// larger lower bound.
inline NormEstimate bform_norm(const LatticeWeight& V, const Exponent& q1, const Exponent& q2,
                               const Exponent& q3, const AltMaxOptions& opt = {}) {
  for (const Exponent* e : {&q1, &q2, &q3})
    if (!e->inf && e->value < rat(1))
      throw std::domain_error("bform_norm: exponents must lie in [1, inf]");
  NormEstimate est;
  if (V.empty()) {
    est.degenerate = true;
    est.converged = true;
    est.upper = 0;
    return est;
  }
  auto f = detail::CompiledForm::build(V);
  detail::AltMaxRun best;
  for (int r = 0; r < std::max(1, opt.restarts); ++r) {
    std::uint64_t s = derive_seed(opt.seed ^ 0x9e3779b9ULL, static_cast<std::uint64_t>(r));
    auto run = detail::altmax_trilinear_run(f, q1, q2, q3, opt, s, r == 0);
    if (r == 0 || run.value > best.value) best = run;
  }
  AltMaxOptions dual_opt = opt;
  dual_opt.seed = opt.seed ^ 0x517cc1b727220a95ULL;
  NormEstimate dual = b_norm_lower_altmax(V, q1, q2, dual_exponent(q3), dual_opt);

  est.lower = best.value;
  est.iterations = best.iterations;
  est.converged = best.converged;
  est.witness_a = detail::to_lattice_vector(f.pa, best.a, V.dim);
  est.witness_b = detail::to_lattice_vector(f.pb, best.b, V.dim);
  est.witness_c = detail::to_lattice_vector(f.pc, best.c, V.dim);
  if (dual.lower > est.lower) {
    est.lower = dual.lower;
    est.witness_a = dual.witness_a;
    est.witness_b = dual.witness_b;
    est.witness_c = dual.witness_c;
    est.iterations = dual.iterations;
    est.converged = dual.converged;
  }
  est.upper = brascamp_lieb_upper(V, q1, q2, q3);
  return est;
}

// ----- moderate majorant -----

struct MajorantReport {
  bool dominates = false;      // V <= V* on supp V
  double max_moderate_ratio = 0.0;  // measured F(xi+eta) / (F(xi) <eta>^M)
  double moderate_constant = 0.0;   // the Peetre constant 2^{M/2} it is checked against
  bool moderate_ok = false;
};

// V*(xi) = sum_mu V(mu) <xi - mu>^{-M}, evaluable anywhere on R^{2n}.
class ModerateMajorant {
 public:
  ModerateMajorant(LatticeWeight V, int M) : V_(std::move(V)), M_(M) {
    if (M <= 0) throw std::invalid_argument("moderate_majorant: M must be positive");
  }

  int dim2() const { return 2 * V_.dim; }

  double operator()(const std::vector<double>& xi12) const {
    if (static_cast<int>(xi12.size()) != dim2())
      throw std::invalid_argument("ModerateMajorant: bad point dimension");
    double acc = 0;
    for (const auto& [key, v] : V_.entries) {
      double d2 = 1.0;
      for (int i = 0; i < dim2(); ++i) {
        double t = xi12[i] - key[i];
        d2 += t * t;
      }
      acc += v * std::pow(d2, -0.5 * M_);
    }
    return acc;
  }

  const LatticeWeight& weight() const { return V_; }
  int order() const { return M_; }

 private:
  LatticeWeight V_;
  int M_;
};

// Builds the majorant and verifies domination plus the moderate-class
// inequality on a deterministic sample grid.  An optional q lets callers
// assert the M > 2n/min(1,q) requirement of the boundedness transfer.
inline std::pair<ModerateMajorant, MajorantReport> moderate_majorant(
    const LatticeWeight& V, int M, std::optional<double> q_check = std::nullopt) {
  if (M <= 0) throw std::invalid_argument("moderate_majorant: M must be positive");
  if (q_check && static_cast<double>(M) <= 2.0 * V.dim / std::min(1.0, *q_check))
    throw std::invalid_argument("moderate_majorant: M must exceed 2n/min(1,q)");
  ModerateMajorant maj(V, M);
  MajorantReport rep;
  rep.dominates = true;
  for (const auto& [key, v] : V.entries) {
    std::vector<double> xi(key.begin(), key.end());
    if (maj(xi) < v * (1.0 - 1e-12)) rep.dominates = false;
  }
  // moderate inequality on a small sample grid around the support
  rep.moderate_constant = std::pow(2.0, 0.5 * M);
  SplitMix64 g(12345);
  int d = 2 * V.dim;
  for (int trial = 0; trial < 64; ++trial) {
    std::vector<double> xi(d), eta(d), sum(d);
    for (int i = 0; i < d; ++i) {
      xi[i] = -3.0 + 6.0 * g.uniform();
      eta[i] = -2.0 + 4.0 * g.uniform();
      sum[i] = xi[i] + eta[i];
    }
    double eta2 = 1.0;
    for (int i = 0; i < d; ++i) eta2 += eta[i] * eta[i];
    double rhs = maj(xi) * std::pow(eta2, 0.5 * M);
    if (rhs > 0) rep.max_moderate_ratio = std::max(rep.max_moderate_ratio, maj(sum) / rhs);
  }
  rep.moderate_ok = rep.max_moderate_ratio <= rep.moderate_constant * (1.0 + 1e-9);
  return {std::move(maj), rep};
}

// ----- the critical-weight counterexample -----

struct CounterexampleResult {
  double form_value = 0;
  double norm_a = 0, norm_b = 0, norm_c = 0;
};

// Evaluates the explicit witness of the divergence proof on
// Z ∩ {10 <= |x| <= R} (n = 1): A, B, C are radial power-log profiles, and
// the weight is (1+|v1|+|v2|)^{-2/q} with 1/q = (1/2)(1/p1 + 1/p2 - 1/2).
// Requires 1 <= p1, p2 < 2 and 1/p1 + 1/p2 > 3/2; the endpoint cases
// p_i = 1 degenerate to the reduced forms (the profile becomes identically
// one and its norm is measured in l^inf).
inline CounterexampleResult counterexample_witness(const rat& p1, const rat& p2, long long R) {
  rat one(1), two(2), half(1, 2), three_half(3, 2);
  if (p1 < one || p1 >= two || p2 < one || p2 >= two)
    throw std::domain_error("counterexample_witness: need 1 <= p1, p2 < 2");
  rat r1 = one / p1, r2 = one / p2;
  if (!(r1 + r2 > three_half))
    throw std::domain_error("counterexample_witness: need 1/p1 + 1/p2 > 3/2");
  if (R < 20 || R > 2000000)
    throw std::domain_error("counterexample_witness: R out of range");

  double rp1c = (one - r1).to_double();   // 1/p1'
  double rp2c = (one - r2).to_double();   // 1/p2'
  double alpha = rp1c + rp2c + 0.5;
  double inv_q = 0.5 * (r1 + r2 - half).to_double();
  double wexp = -2.0 * inv_q;             // weight exponent, n = 1

  const long long lo = 10;
  auto profile = [](long long x, double pw, double lw) {
    return std::pow(double(x), -pw) * std::pow(std::log(double(x)), -lw);
  };
  std::vector<double> A(R + 1, 0.0), B(R + 1, 0.0), C(R + 1, 0.0);
  for (long long x = lo; x <= R; ++x) {
    A[x] = rp1c > 0 ? profile(x, rp1c, rp1c / alpha) : 1.0;
    B[x] = rp2c > 0 ? profile(x, rp2c, rp2c / alpha) : 1.0;
    C[x] = profile(x, 0.5, 0.5 / alpha);
  }
  std::vector<double> W(2 * R + 1, 0.0);
  for (long long t = 2 * lo; t <= 2 * R; ++t) W[t] = std::pow(1.0 + double(t), wexp);

  // signs collapse: (+,+) and (-,-) hit C(a+b), (+,-) and (-,+) hit C(|a-b|)
  double form = 0;
  for (long long a = lo; a <= R; ++a) {
    if (A[a] == 0) continue;
    double rowsum = 0;
    for (long long b = lo; b <= R; ++b) {
      double w = W[a + b];
      double csum = (a + b <= R ? C[a + b] : 0.0) + (std::llabs(a - b) >= lo ? C[std::llabs(a - b)] : 0.0);
      rowsum += B[b] * w * csum;
    }
    form += A[a] * rowsum;
  }
  form *= 2.0;

  auto radial_norm = [&](const std::vector<double>& X, double inv_p) {
    if (inv_p == 0) {  // l^inf
      double m = 0;
      for (long long x = lo; x <= R; ++x) m = std::max(m, X[x]);
      return m;
    }
    double p = 1.0 / inv_p, s = 0;
    for (long long x = lo; x <= R; ++x) s += std::pow(X[x], p);
    return std::pow(2.0 * s, 1.0 / p);
  };

  CounterexampleResult res;
  res.form_value = form;
  res.norm_a = radial_norm(A, rp1c);
  res.norm_b = radial_norm(B, rp2c);
  res.norm_c = radial_norm(C, 0.5);
  return res;
}

}  // namespace bilinlab
