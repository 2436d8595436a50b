#pragma once

// Size reduction + exhaustive enumeration for the small dimensions (k <= 8)
// the strategies need: sup-norm shortest vector, sup-norm closest point with
// lexicographic tie-break, and enumeration of all short dual vectors.
//
// Enumeration walks each level outward from the Babai center and prunes with
// exact partial sums, so no floating-point bound ever cuts a candidate.

#include "badforms/lattice.hpp"

#include <functional>
#include <map>
#include <vector>

namespace badforms {

struct ReducedBasis {
  Matrix basis;                                      // LLL-reduced rows
  std::vector<std::vector<mpz_class>> to_original;   // row i = sum_j T[i][j] * original_j
  std::vector<Vector> bstar;                         // Gram-Schmidt vectors
  std::vector<std::vector<Scalar>> mu;               // mu[i][j], j < i
  std::vector<Scalar> nsq;                           // ||b*_i||_2^2
};

namespace detail {

inline void recompute_gso(ReducedBasis& rb) {
  std::size_t n = rb.basis.rows();
  rb.bstar.assign(n, Vector());
  rb.mu.assign(n, std::vector<Scalar>(n, Scalar(0)));
  rb.nsq.assign(n, Scalar(0));
  for (std::size_t i = 0; i < n; ++i) {
    Vector v = rb.basis.row(i);
    for (std::size_t j = 0; j < i; ++j) {
      rb.mu[i][j] = rb.nsq[j].sign() == 0 ? Scalar(0) : dot(rb.basis.row(i), rb.bstar[j]) / rb.nsq[j];
      v = v - rb.mu[i][j] * rb.bstar[j];
    }
    rb.bstar[i] = v;
    rb.nsq[i] = v.norm2_sq();
  }
}

}  // namespace detail

// LLL with delta = 3/4.  Exact in rational mode; in approx mode an iteration
// cap guards against rounding-induced swap cycles (the enumeration layer
// re-checks everything exactly, so a capped reduction only costs speed).
inline ReducedBasis lll_reduce(const Matrix& basis) {
  ReducedBasis rb;
  rb.basis = basis;
  std::size_t n = basis.rows();
  rb.to_original.assign(n, std::vector<mpz_class>(n, 0));
  for (std::size_t i = 0; i < n; ++i) rb.to_original[i][i] = 1;
  detail::recompute_gso(rb);

  const Scalar delta(3, 4);
  const Scalar half(1, 2);
  std::size_t k = 1;
  long guard = 0;
  while (k < n && guard++ < 20000) {
    // size-reduce row k against rows k-1 .. 0
    for (std::size_t jj = k; jj-- > 0;) {
      if (rb.mu[k][jj].abs() > half) {
        mpz_class r = rb.mu[k][jj].round_nearest();
        Scalar rs{mpq_class(r)};
        rb.basis.row(k) = rb.basis.row(k) - rs * rb.basis.row(jj);
        for (std::size_t t = 0; t < n; ++t) rb.to_original[k][t] -= r * rb.to_original[jj][t];
        for (std::size_t t = 0; t < jj; ++t) rb.mu[k][t] = rb.mu[k][t] - rs * rb.mu[jj][t];
        rb.mu[k][jj] = rb.mu[k][jj] - rs;
      }
    }
    if (rb.nsq[k] >= (delta - rb.mu[k][k - 1] * rb.mu[k][k - 1]) * rb.nsq[k - 1]) {
      ++k;
    } else {
      std::swap(rb.basis.row(k), rb.basis.row(k - 1));
      std::swap(rb.to_original[k], rb.to_original[k - 1]);
      detail::recompute_gso(rb);
      k = k > 1 ? k - 1 : 1;
    }
  }
  detail::recompute_gso(rb);
  return rb;
}

// Visit every lattice point p = x * rb.basis with ||p - target||_2^2 <= radius_sq.
// The callback may shrink radius_sq (live) to tighten pruning.  Coefficients
// are reported with respect to the ORIGINAL basis.  With skip_multiples set,
// pure multiples x_0 * b_0 with |x_0| >= 2 are not visited; on a reduced
// basis these are the scalar repeats of the shortest vector, which matters
// when a flow has made it tiny relative to the ball.
inline void enumerate_in_ball(
    const ReducedBasis& rb, const Vector& target, Scalar& radius_sq,
    const std::function<void(const std::vector<mpz_class>&, const Vector&)>& visit,
    bool skip_multiples = false) {
  std::size_t n = rb.basis.rows();
  if (n == 0) return;
  // target in GSO coordinates
  std::vector<Scalar> tau(n, Scalar(0));
  for (std::size_t j = 0; j < n; ++j)
    if (rb.nsq[j].sign() != 0) tau[j] = dot(target, rb.bstar[j]) / rb.nsq[j];

  std::vector<mpz_class> x(n, 0);
  std::vector<mpz_class> orig(n, 0);

  // depth-first from the last level; zig-zag around the real center of each level
  std::function<void(std::size_t, const Scalar&)> rec = [&](std::size_t lvl, const Scalar& partial) {
    std::size_t j = lvl - 1;
    Scalar c = -tau[j];
    for (std::size_t i = lvl; i < n; ++i)
      if (x[i] != 0) c += Scalar(mpq_class(x[i])) * rb.mu[i][j];
    mpz_class center = (-c).round_nearest();

    auto try_one = [&](const mpz_class& xv) -> bool {
      Scalar off = Scalar(mpq_class(xv)) + c;
      Scalar np = partial + off * off * rb.nsq[j];
      if (np > radius_sq) return false;
      if (skip_multiples && j == 0 && (xv > 1 || xv < -1)) {
        bool others_zero = true;
        for (std::size_t i = 1; i < n; ++i)
          if (x[i] != 0) { others_zero = false; break; }
        if (others_zero) return false;
      }
      x[j] = xv;
      if (j == 0) {
        Vector p(rb.basis.cols());
        for (std::size_t i = 0; i < n; ++i)
          if (x[i] != 0) p = p + Scalar(mpq_class(x[i])) * rb.basis.row(i);
        for (std::size_t t = 0; t < n; ++t) {
          orig[t] = 0;
          for (std::size_t i = 0; i < n; ++i)
            if (x[i] != 0) orig[t] += x[i] * rb.to_original[i][t];
        }
        visit(orig, p);
      } else {
        rec(j, np);
      }
      return true;
    };

    if (rb.nsq[j].sign() == 0) {
      // degenerate direction (dependent input rows); only the center matters
      try_one(center);
      return;
    }
    try_one(center);
    for (mpz_class step = 1;; ++step) {
      bool up = try_one(center + step);
      bool down = try_one(center - step);
      if (!up && !down) break;
    }
  };
  rec(n, Scalar(0));
}

namespace detail {

inline bool lex_less(const std::vector<mpz_class>& a, const std::vector<mpz_class>& b) {
  for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
    int c = cmp(a[i], b[i]);
    if (c != 0) return c < 0;
  }
  return a.size() < b.size();
}

inline void check_dim(const std::size_t k, const char* what) {
  if (k > kMaxLatticeDim)
    throw DimensionTooLargeError(std::string(what) + ": k = " + std::to_string(k) + " > 8");
}

}  // namespace detail

// Nonzero lattice vector of minimal sup norm (deterministic representative:
// lexicographically smallest coefficient vector among the minimizers).
struct ShortestVectorResult {
  Vector vec;
  std::vector<mpz_class> coeffs;
  Scalar sup;
};

inline ShortestVectorResult shortest_vector_full(const Lattice& L) {
  detail::check_dim(L.k(), "shortest_vector");
  ReducedBasis rb = lll_reduce(L.basis());
  std::size_t n = L.k();
  // seed with the best reduced-basis row
  ShortestVectorResult best;
  best.sup = rb.basis.row(0).sup_norm();
  best.vec = rb.basis.row(0);
  best.coeffs = rb.to_original[0];
  for (std::size_t i = 1; i < n; ++i) {
    Scalar s = rb.basis.row(i).sup_norm();
    if (s < best.sup) {
      best.sup = s;
      best.vec = rb.basis.row(i);
      best.coeffs = rb.to_original[i];
    }
  }
  Scalar radius_sq = Scalar(static_cast<long>(n)) * best.sup * best.sup;
  Vector origin(n);
  enumerate_in_ball(rb, origin, radius_sq, [&](const std::vector<mpz_class>& coeffs, const Vector& p) {
    bool zero = true;
    for (const auto& c : coeffs)
      if (c != 0) { zero = false; break; }
    if (zero) return;
    // canonical sign: first nonzero coefficient positive
    std::vector<mpz_class> cc = coeffs;
    Vector pp = p;
    for (const auto& c : cc) {
      if (c != 0) {
        if (c < 0) {
          for (auto& y : cc) y = -y;
          pp = -pp;
        }
        break;
      }
    }
    Scalar s = pp.sup_norm();
    if (s < best.sup || (s == best.sup && detail::lex_less(cc, best.coeffs))) {
      best.sup = s;
      best.vec = pp;
      best.coeffs = cc;
      radius_sq = Scalar(static_cast<long>(n)) * s * s;
    }
  });
  return best;
}

inline Vector shortest_vector(const Lattice& L) { return shortest_vector_full(L).vec; }

struct ClosestPointResult {
  Vector point;
  std::vector<mpz_class> coeffs;
  Scalar dist_sup;
};

// Staircase basis for box-geometry search: row i is supported on coordinates
// coord_order[0..i] only, so recursing from the last row finalizes one
// coordinate per level.  Built by an integer HNF sweep (unimodular row ops),
// with the coordinate order chosen greedily by largest column gcd so that
// wide-spaced directions are branched on first.
struct EchelonBasis {
  std::vector<std::vector<mpq_class>> rows;
  std::vector<std::vector<mpz_class>> to_original;
  std::vector<std::size_t> coord_order;  // coord_order[level] = finalized coordinate
};

inline EchelonBasis echelon_basis(const Matrix& basis) {
  std::size_t k = basis.rows();
  // integerize: M = D * basis (exact even in approx mode, mpf values are
  // binary rationals)
  std::vector<std::vector<mpq_class>> q(k, std::vector<mpq_class>(k));
  mpz_class D = 1;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      q[i][j] = basis.at(i, j).to_exact_rational();
      mpz_class den = q[i][j].get_den();
      D = D / gcd(D, den) * den;
    }
  std::vector<std::vector<mpz_class>> M(k, std::vector<mpz_class>(k));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      mpq_class scaled = q[i][j] * mpq_class(D);
      M[i][j] = scaled.get_num();  // denominator is 1 by construction
    }

  EchelonBasis out;
  out.to_original.assign(k, std::vector<mpz_class>(k, 0));
  for (std::size_t i = 0; i < k; ++i) out.to_original[i][i] = 1;
  std::vector<bool> used_coord(k, false);
  out.coord_order.assign(k, 0);

  for (std::size_t stage = k; stage-- > 0;) {
    // rows 0..stage are active; pick the unused coordinate with the largest
    // column gcd over the active rows
    std::size_t best_c = k;
    mpz_class best_g = 0;
    for (std::size_t c = 0; c < k; ++c) {
      if (used_coord[c]) continue;
      mpz_class g = 0;
      for (std::size_t r = 0; r <= stage; ++r) g = gcd(g, M[r][c]);
      if (g != 0 && (best_c == k || g > best_g)) {
        best_c = c;
        best_g = g;
      }
    }
    if (best_c == k) throw SingularBasisError("echelon_basis: dependent rows");
    used_coord[best_c] = true;
    out.coord_order[stage] = best_c;
    // gcd sweep: bring the column gcd into row `stage`, then clear the column
    // in rows 0..stage-1
    bool progress = true;
    while (progress) {
      progress = false;
      std::size_t piv = stage + 1;
      for (std::size_t r = 0; r <= stage; ++r)
        if (M[r][best_c] != 0 && (piv == stage + 1 || abs(M[r][best_c]) < abs(M[piv][best_c])))
          piv = r;
      if (piv != stage) {
        std::swap(M[piv], M[stage]);
        std::swap(out.to_original[piv], out.to_original[stage]);
      }
      for (std::size_t r = 0; r < stage; ++r) {
        if (M[r][best_c] == 0) continue;
        mpz_class f;
        mpz_fdiv_q(f.get_mpz_t(), M[r][best_c].get_mpz_t(), M[stage][best_c].get_mpz_t());
        if (f != 0) {
          for (std::size_t t = 0; t < k; ++t) M[r][t] -= f * M[stage][t];
          for (std::size_t t = 0; t < k; ++t) out.to_original[r][t] -= f * out.to_original[stage][t];
        }
        if (M[r][best_c] != 0) progress = true;  // remainder left; another sweep
      }
    }
  }

  out.rows.assign(k, std::vector<mpq_class>(k));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      out.rows[i][j] = mpq_class(M[i][j], D);
      out.rows[i][j].canonicalize();
    }
  return out;
}

// Point of the affine lattice nearest to `target` in sup norm; ties broken
// lexicographically on the coefficient vector (tie exploration is capped, so
// astronomically degenerate tie sets return a deterministic representative).
// With exclude_exact_hit set, a lattice point equal to the target itself is
// skipped (punctured distance).
inline ClosestPointResult closest_point_full(const AffineLattice& X, const Vector& target,
                                             bool exclude_exact_hit = false) {
  detail::check_dim(X.k(), "closest_point");
  std::size_t k = X.k();
  EchelonBasis eb = echelon_basis(X.lattice.basis());
  std::vector<mpq_class> t(k);  // target relative to the shift, exactified
  for (std::size_t j = 0; j < k; ++j)
    t[j] = (target[j] - X.shift[j]).to_exact_rational();

  bool have_best = false;
  mpq_class best_sup;
  std::vector<mpz_class> best_x;
  long tie_budget = 4096;

  std::vector<mpz_class> x(k, 0);
  std::vector<mpq_class> acc(k, 0);  // running point coordinates

  auto leaf_candidates = [&](const mpq_class& base, const mpq_class& piv, const mpq_class& tj,
                             std::vector<mpz_class>& cands) {
    // center minimizes |base + x*piv - tj|; +-1 covers lexicographic ties
    mpq_class c = (tj - base) / piv;
    mpz_class center;
    mpz_class twice_num = 2 * c.get_num() + c.get_den();
    mpz_class twice_den = 2 * c.get_den();
    mpz_fdiv_q(center.get_mpz_t(), twice_num.get_mpz_t(), twice_den.get_mpz_t());
    cands = {center, center + 1, center - 1};
  };

  std::function<void(std::size_t, const mpq_class&)> rec = [&](std::size_t level,
                                                               const mpq_class& run_max) {
    std::size_t coord = eb.coord_order[level];
    const mpq_class& piv = eb.rows[level][coord];
    const mpq_class base = acc[coord];

    auto place = [&](const mpz_class& xv, const mpq_class& dc) {
      x[level] = xv;
      for (std::size_t j = 0; j < k; ++j)
        if (eb.rows[level][j] != 0) acc[j] += mpq_class(xv) * eb.rows[level][j];
      if (level == 0) {
        mpq_class sup = run_max > dc ? run_max : dc;
        bool excluded = false;
        if (exclude_exact_hit) {
          excluded = true;
          for (std::size_t j = 0; j < k; ++j)
            if (acc[j] != t[j]) { excluded = false; break; }
        }
        if (!excluded) {
          std::vector<mpz_class> orig(k, 0);
          for (std::size_t tt = 0; tt < k; ++tt)
            for (std::size_t i = 0; i < k; ++i)
              if (x[i] != 0) orig[tt] += x[i] * eb.to_original[i][tt];
          if (!have_best || sup < best_sup ||
              (sup == best_sup && detail::lex_less(orig, best_x))) {
            have_best = true;
            best_sup = sup;
            best_x = std::move(orig);
          }
        }
      } else {
        rec(level - 1, run_max > dc ? run_max : dc);
      }
      for (std::size_t j = 0; j < k; ++j)
        if (eb.rows[level][j] != 0) acc[j] -= mpq_class(xv) * eb.rows[level][j];
    };

    auto dist_at = [&](const mpz_class& xv) {
      mpq_class d = base + mpq_class(xv) * piv - t[coord];
      return d >= 0 ? d : mpq_class(-d);
    };

    if (level == 0) {
      std::vector<mpz_class> cands;
      leaf_candidates(base, piv, t[coord], cands);
      for (const auto& xv : cands) {
        mpq_class dc = dist_at(xv);
        if (have_best && dc > best_sup) continue;
        if (have_best && dc == best_sup) {
          if (tie_budget <= 0) continue;
          --tie_budget;
        }
        place(xv, dc);
      }
      return;
    }

    // zig-zag outward from the real center of this coordinate
    mpq_class c = (t[coord] - base) / piv;
    mpz_class center;
    {
      mpz_class twice_num = 2 * c.get_num() + c.get_den();
      mpz_class twice_den = 2 * c.get_den();
      mpz_fdiv_q(center.get_mpz_t(), twice_num.get_mpz_t(), twice_den.get_mpz_t());
    }
    auto try_x = [&](const mpz_class& xv) -> bool {
      mpq_class dc = dist_at(xv);
      if (have_best) {
        if (dc > best_sup) return false;
        if (dc == best_sup) {
          // tie exploration is budgeted; exhausting it keeps the exact
          // distance but fixes the representative deterministically
          if (tie_budget <= 0) return false;
          --tie_budget;
        }
      }
      place(xv, dc);
      return true;
    };
    try_x(center);
    for (mpz_class step = 1;; ++step) {
      bool up = try_x(center + step);
      bool down = try_x(center - step);
      if (!up && !down) break;
    }
  };

  // greedy descent establishes a finite bound before the full search
  {
    std::vector<mpz_class> gx(k, 0);
    std::vector<mpq_class> gacc(k, 0);
    mpq_class run(0);
    for (std::size_t level = k; level-- > 0;) {
      std::size_t coord = eb.coord_order[level];
      const mpq_class& piv = eb.rows[level][coord];
      mpq_class c = (t[coord] - gacc[coord]) / piv;
      mpz_class center;
      mpz_class twice_num = 2 * c.get_num() + c.get_den();
      mpz_class twice_den = 2 * c.get_den();
      mpz_fdiv_q(center.get_mpz_t(), twice_num.get_mpz_t(), twice_den.get_mpz_t());
      if (level == 0 && exclude_exact_hit) {
        // make sure the greedy leaf is not the excluded point
        for (const mpz_class& cand :
             std::vector<mpz_class>{center, mpz_class(center + 1), mpz_class(center - 1)}) {
          bool hit = true;
          mpq_class v = gacc[coord] + mpq_class(cand) * piv;
          for (std::size_t j = 0; j < k; ++j) {
            mpq_class val = j == coord ? v : gacc[j];
            if (val != t[j]) { hit = false; break; }
          }
          if (!hit) { center = cand; break; }
        }
      }
      gx[level] = center;
      for (std::size_t j = 0; j < k; ++j)
        if (eb.rows[level][j] != 0) gacc[j] += mpq_class(center) * eb.rows[level][j];
      mpq_class d = gacc[coord] - t[coord];
      if (d < 0) d = -d;
      if (d > run) run = d;
    }
    best_sup = run;
    std::vector<mpz_class> orig(k, 0);
    for (std::size_t tt = 0; tt < k; ++tt)
      for (std::size_t i = 0; i < k; ++i)
        if (gx[i] != 0) orig[tt] += gx[i] * eb.to_original[i][tt];
    best_x = orig;
    have_best = true;
  }

  rec(k - 1, mpq_class(0));

  ClosestPointResult out;
  out.coeffs = best_x;
  out.point = X.point(best_x);
  out.dist_sup = (out.point - target).sup_norm();
  return out;
}

inline Vector closest_point(const AffineLattice& X, const Vector& target) {
  return closest_point_full(X, target).point;
}

// Sup-norm distance from the affine lattice to the origin.  When the origin
// itself is a lattice point it is excluded, so for b in Z^m this degrades
// gracefully to the shortest-vector distance (the classical Dani picture).
inline Scalar min_dist_to_origin(const AffineLattice& X) {
  Vector origin(X.k());
  return closest_point_full(X, origin, /*exclude_exact_hit=*/true).dist_sup;
}

// All hyperplanes H = w^perp with primitive w in the dual lattice and
// ||w||_2^2 <= bound_sq, one representative per +-pair, sorted by
// (covolume_sq, coefficients).  Finite for any bound.
inline std::vector<Hyperplane> enumerate_small_hyperplanes(const Lattice& L, const Scalar& bound_sq) {
  detail::check_dim(L.k(), "enumerate_small_hyperplanes");
  if (bound_sq.sign() <= 0) return {};
  Lattice dual = dual_lattice(L);
  ReducedBasis rb = lll_reduce(dual.basis());
  std::size_t n = L.k();
  Vector origin(n);
  Scalar radius_sq = bound_sq;

  std::map<std::vector<mpz_class>, Hyperplane, bool (*)(const std::vector<mpz_class>&, const std::vector<mpz_class>&)>
      found(&detail::lex_less);
  enumerate_in_ball(
      rb, origin, radius_sq,
      [&](const std::vector<mpz_class>& coeffs, const Vector& w) {
    mpz_class g = 0;
    for (const auto& c : coeffs) g = gcd(g, c);
    if (g == 0) return;       // zero vector
    if (g != 1) return;       // non-primitive; its primitive core is enumerated on its own
    std::vector<mpz_class> cc = coeffs;
    Vector ww = w;
    for (const auto& c : cc) {
      if (c != 0) {
        if (c < 0) {
          for (auto& y : cc) y = -y;
          ww = -ww;
        }
        break;
      }
    }
        if (found.count(cc)) return;
        found.emplace(cc, Hyperplane{ww, ww.norm2_sq(), cc});
      },
      /*skip_multiples=*/true);

  std::vector<Hyperplane> out;
  out.reserve(found.size());
  for (auto& [_, h] : found) out.push_back(std::move(h));
  std::stable_sort(out.begin(), out.end(), [](const Hyperplane& a, const Hyperplane& b) {
    int c = cmp_scalars(a.covolume_sq, b.covolume_sq);
    if (c != 0) return c < 0;
    return detail::lex_less(a.dual_coeffs, b.dual_coeffs);
  });
  return out;
}

}  // namespace badforms
