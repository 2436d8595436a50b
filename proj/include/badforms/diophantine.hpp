#pragma once

// Badness functionals for systems of affine forms <A, b>, finite-scale
// singularity detection, and the trajectory checks that link <A, b> to the
// orbit g_t L_A(b) Z^k.  Scans use the product form ||q||^n ||Aq - b||_Z^m,
// equivalent to the c/||q||^{n/m} form via c -> c^m but free of fractional
// powers, so rational inputs stay exact.

#include "badforms/flow.hpp"
#include "badforms/reduction.hpp"

#include <cmath>
#include <functional>
#include <optional>
#include <vector>

namespace badforms {

struct AffineSystem {
  long m = 1;
  long n = 1;
  Matrix A;  // m x n
  Vector b;  // m entries

  AffineSystem() = default;
  AffineSystem(long m_, long n_, Matrix A_, Vector b_)
      : m(m_), n(n_), A(std::move(A_)), b(std::move(b_)) {
    if (A.rows() != static_cast<std::size_t>(m) || A.cols() != static_cast<std::size_t>(n))
      throw std::invalid_argument("AffineSystem: A must be m x n");
    if (b.dim() != static_cast<std::size_t>(m))
      throw std::invalid_argument("AffineSystem: b must have m entries");
  }

  std::size_t k() const { return static_cast<std::size_t>(m + n); }

  Vector apply(const std::vector<long>& q) const {
    Vector qv(static_cast<std::size_t>(n));
    for (long j = 0; j < n; ++j) qv[static_cast<std::size_t>(j)] = Scalar(q[static_cast<std::size_t>(j)]);
    return A * qv - b;
  }
};

// Sup-norm distance to the nearest integer vector; always in [0, 1/2].
inline Scalar dist_to_Z(const Vector& x) {
  Scalar best(0);
  for (std::size_t i = 0; i < x.dim(); ++i) {
    Scalar r = (x[i] - Scalar(x[i].round_nearest())).abs();
    best = max(best, r);
  }
  return best;
}
inline Scalar dist_to_Z(const Scalar& x) { return dist_to_Z(Vector{x}); }

namespace detail {

// Canonical order on integer vectors: smaller sup norm first, then smaller
// absolute pattern read little-endian (so e_1 precedes e_2), then '+' before
// '-' at the first differing sign.
inline bool canonical_q_less(const std::vector<long>& a, const std::vector<long>& b) {
  long sa = 0, sb = 0;
  for (long v : a) sa = std::max(sa, std::labs(v));
  for (long v : b) sb = std::max(sb, std::labs(v));
  if (sa != sb) return sa < sb;
  for (std::size_t i = a.size(); i-- > 0;) {
    long aa = std::labs(a[i]), ab = std::labs(b[i]);
    if (aa != ab) return aa < ab;
  }
  for (std::size_t i = 0; i < a.size(); ++i) {
    int na = a[i] < 0, nb = b[i] < 0;
    if (na != nb) return na < nb;
  }
  return false;
}

// Visit every q in Z^n with 0 < ||q||_inf <= Q.
template <typename Fn>
void for_each_q(long n, long Q, Fn&& fn) {
  std::vector<long> q(static_cast<std::size_t>(n), -Q);
  while (true) {
    bool zero = true;
    for (long v : q)
      if (v != 0) { zero = false; break; }
    if (!zero) fn(q);
    std::size_t pos = 0;
    while (pos < q.size() && q[pos] == Q) q[pos++] = -Q;
    if (pos == q.size()) break;
    ++q[pos];
  }
}

// Visit q shell by shell (||q|| = 1, 2, ...) in canonical order; fn returns
// true to stop.  Used where the first hit must be the canonical witness.
template <typename Fn>
bool for_each_q_canonical(long n, long Q, Fn&& fn) {
  for (long s = 1; s <= Q; ++s) {
    std::vector<std::vector<long>> shell;
    std::vector<long> q(static_cast<std::size_t>(n), -s);
    while (true) {
      long sup = 0;
      for (long v : q) sup = std::max(sup, std::labs(v));
      if (sup == s) shell.push_back(q);
      std::size_t pos = 0;
      while (pos < q.size() && q[pos] == s) q[pos++] = -s;
      if (pos == q.size()) break;
      ++q[pos];
    }
    std::sort(shell.begin(), shell.end(), canonical_q_less);
    for (const auto& v : shell)
      if (fn(v)) return true;
  }
  return false;
}

}  // namespace detail

struct BadnessEstimate {
  long Q = 0;
  Scalar min_product;          // min ||q||^n ||Aq - b||_Z^m over 0 < ||q|| <= Q
  std::vector<long> argmin_q;

  struct Window {
    long lo = 0, hi = 0;       // ||q|| in [lo, hi], lo = 2^j
    Scalar min_product;
    std::vector<long> argmin_q;
  };
  std::vector<Window> windows;  // dyadic windows partitioning 1..Q
};

inline BadnessEstimate badness_scan(const AffineSystem& S, long Q) {
  if (Q < 1) throw std::invalid_argument("badness_scan: Q >= 1 required");
  BadnessEstimate out;
  out.Q = Q;
  long nwin = 0;
  while ((1L << (nwin + 1)) <= Q) ++nwin;
  out.windows.resize(static_cast<std::size_t>(nwin + 1));
  for (long j = 0; j <= nwin; ++j) {
    out.windows[static_cast<std::size_t>(j)].lo = 1L << j;
    out.windows[static_cast<std::size_t>(j)].hi = std::min(Q, (1L << (j + 1)) - 1);
  }

  bool have = false;
  std::vector<bool> whave(out.windows.size(), false);
  detail::for_each_q(S.n, Q, [&](const std::vector<long>& q) {
    long sup = 0;
    for (long v : q) sup = std::max(sup, std::labs(v));
    Scalar dist = dist_to_Z(S.apply(q));
    Scalar prod = Scalar::pow_int(Scalar(sup), S.n) * Scalar::pow_int(dist, S.m);
    auto better = [&](const Scalar& cur, const std::vector<long>& curq) {
      int c = cmp_scalars(prod, cur);
      if (c != 0) return c < 0;
      return detail::canonical_q_less(q, curq);
    };
    if (!have || better(out.min_product, out.argmin_q)) {
      out.min_product = prod;
      out.argmin_q = q;
      have = true;
    }
    long j = 0;
    while ((1L << (j + 1)) <= sup) ++j;
    auto& w = out.windows[static_cast<std::size_t>(j)];
    if (!whave[static_cast<std::size_t>(j)] || better(w.min_product, w.argmin_q)) {
      w.min_product = prod;
      w.argmin_q = q;
      whave[static_cast<std::size_t>(j)] = true;
    }
  });
  return out;
}

// ---- singularity (finite-scale verdict only) ----

struct SingularWitness {
  Scalar eps;
  long N = 0;
  bool found = false;
  std::vector<long> q;
  Scalar dist;  // ||Aq||_Z for the witness
};

enum class SingularVerdict { singular_up_to_scale, not_singular_up_to_scale };

inline const char* to_string(SingularVerdict v) {
  return v == SingularVerdict::singular_up_to_scale ? "SINGULAR-UP-TO-SCALE"
                                                    : "NOT-SINGULAR-UP-TO-SCALE";
}

struct SingularReport {
  SingularVerdict verdict = SingularVerdict::not_singular_up_to_scale;
  std::vector<SingularWitness> witnesses;  // one per (eps, N) pair
};

// For each (eps, N): look for 0 < ||q|| < N with ||Aq||_Z <= eps / N^{n/m},
// compared in m-th powers so rational grids stay exact.  The verdict is
// SINGULAR-UP-TO-SCALE iff for every eps the witnesses occupy a nonempty
// suffix of the N grid; it is a finite-scale statement, never a proof.
inline SingularReport is_singular_scan(const AffineSystem& S, const std::vector<Scalar>& eps_grid,
                                       const std::vector<long>& N_grid) {
  if (eps_grid.empty() || N_grid.empty())
    throw std::invalid_argument("is_singular_scan: grids must be nonempty");
  for (std::size_t i = 1; i < eps_grid.size(); ++i)
    if (!(eps_grid[i] < eps_grid[i - 1]))
      throw std::invalid_argument("is_singular_scan: eps grid must decrease");
  for (std::size_t i = 1; i < N_grid.size(); ++i)
    if (N_grid[i] <= N_grid[i - 1])
      throw std::invalid_argument("is_singular_scan: N grid must increase");

  SingularReport out;
  bool all_eps_ok = true;
  for (const Scalar& eps : eps_grid) {
    std::vector<bool> ok_at(N_grid.size(), false);
    for (std::size_t ni = 0; ni < N_grid.size(); ++ni) {
      long N = N_grid[ni];
      SingularWitness w;
      w.eps = eps;
      w.N = N;
      // threshold^m = eps^m / N^n
      Scalar thr_m = Scalar::pow_int(eps, S.m) / Scalar::pow_int(Scalar(N), S.n);
      detail::for_each_q_canonical(S.n, N - 1, [&](const std::vector<long>& q) {
        Vector qv(static_cast<std::size_t>(S.n));
        for (long j = 0; j < S.n; ++j) qv[static_cast<std::size_t>(j)] = Scalar(q[static_cast<std::size_t>(j)]);
        Scalar dist = dist_to_Z(S.A * qv);
        if (Scalar::pow_int(dist, S.m) <= thr_m) {
          w.found = true;
          w.q = q;
          w.dist = dist;
          return true;
        }
        return false;
      });
      ok_at[ni] = w.found;
      out.witnesses.push_back(std::move(w));
    }
    // "at all large N" truncates to: the maximal all-witness suffix of the
    // N grid is nonempty, i.e. the largest N has a witness
    all_eps_ok = all_eps_ok && ok_at.back();
  }
  out.verdict = all_eps_ok ? SingularVerdict::singular_up_to_scale
                           : SingularVerdict::not_singular_up_to_scale;
  return out;
}

// ---- trajectory checks ----

struct TrajectoryReport {
  FlowSchedule schedule;
  struct Row {
    long ell = 0;
    double t = 0;       // ell * T, T = -m n log u
    Scalar min_dist;    // sup-norm distance of the flowed affine lattice to 0
  };
  std::vector<Row> rows;
  Scalar infimum;
};

// Distance of g_{ell T} L_A(b) Z^k to the origin for ell = 0..L, computed by
// closest_point at every step.  (For the Dani comparison use
// `punctured = true`, which skips a lattice point sitting exactly at the
// origin; the plain distance is reported by default.)
inline TrajectoryReport trajectory_minima(const AffineSystem& S, const FlowSchedule& F, long L,
                                          bool punctured = false) {
  if (S.k() > kMaxLatticeDim) throw DimensionTooLargeError("trajectory_minima: k > 8");
  if (F.m != S.m || F.n != S.n)
    throw std::invalid_argument("trajectory_minima: schedule shape mismatch");
  TrajectoryReport out;
  out.schedule = F;
  AffineLattice X0 = affine_form_lattice(S.m, S.n, S.A, S.b);
  double T = -static_cast<double>(S.m) * static_cast<double>(S.n) * std::log(F.u.to_double());
  bool have = false;
  for (long ell = 0; ell <= L; ++ell) {
    AffineLattice X = apply_flow(F, ell, X0);
    Vector origin(S.k());
    Scalar d = closest_point_full(X, origin, punctured).dist_sup;
    out.rows.push_back({ell, T * static_cast<double>(ell), d});
    if (!have || d < out.infimum) {
      out.infimum = d;
      have = true;
    }
  }
  return out;
}

struct DaniReport {
  Scalar traj_inf;     // punctured trajectory infimum over ell = 0..L
  Scalar min_product;  // badness_scan minimum over 0 < ||q|| <= Q
  Scalar scale;        // (1 + c)^2 u^{-n}, c = max(1, ||b||_sup)
  Scalar floor_sup;    // finite-horizon resolution u^{m L}
  bool traj_bounded_by_product = false;  // traj_inf <= scale * max(P^{1/k}, floor)
  bool product_bounded_by_traj = false;  // P^{1/k} <= scale * max(traj_inf, floor)
  bool pass() const { return traj_bounded_by_product && product_bounded_by_traj; }
};

// Two-sided sampled Dani check.  Both directions are compared in k-th powers
// so rational data stays exact.  The scale factor (1+c)^2 u^{-n} and the
// horizon floor are implementation-derived bookkeeping (the paper states no
// quantitative constant); c bounds the sup-norm effect of the shift.
inline DaniReport dani_cross_check(const AffineSystem& S, const FlowSchedule& F, long L, long Q) {
  DaniReport r;
  r.traj_inf = trajectory_minima(S, F, L, /*punctured=*/true).infimum;
  r.min_product = badness_scan(S, Q).min_product;
  Scalar c = max(Scalar(1), S.b.sup_norm());
  r.scale = (Scalar(1) + c) * (Scalar(1) + c) * Scalar::pow_int(F.u, -F.n);
  r.floor_sup = Scalar::pow_int(F.u, F.m * L);
  long k = S.m + S.n;
  Scalar scale_k = Scalar::pow_int(r.scale, k);
  Scalar floor_k = Scalar::pow_int(r.floor_sup, k);
  r.traj_bounded_by_product =
      Scalar::pow_int(r.traj_inf, k) <= scale_k * max(r.min_product, floor_k);
  r.product_bounded_by_traj =
      r.min_product <= scale_k * Scalar::pow_int(max(r.traj_inf, r.floor_sup), k);
  return r;
}

}  // namespace badforms
