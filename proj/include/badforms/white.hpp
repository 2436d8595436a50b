#pragma once

// The constructive White strategies: the fixed-A strategy (track small
// hyperplanes of the flowed lattice, avoid the dangerous coset traces, keep a
// protection ledger), its easy rational special case (a hyperplane whose
// covolume decays forever), the growth verification for singular A, and the
// fixed-b wrapper around a pluggable homogeneous base strategy.
//
// Dynamical bookkeeping: with alpha*beta = u^n and rho_1 = u^{n j0}, round J
// of the game sits at flow step s_J = j0 + (J - 1); the rescale
// E_J = u^{-n s_J} maps the current ball to the unit ball (E_J rho_J = 1).

#include "badforms/black.hpp"
#include "badforms/game.hpp"

#include <algorithm>
#include <cmath>

namespace badforms {

// A rational alpha strictly below the winning-parameter bound
// (4 (2 ceil(xi0) C)^{1/eta})^{-1}: half the bound, rounded down to a power
// of two.  Independent of beta by construction.
inline Scalar alpha_for(const DecayParams& P, long k) {
  if (k < 1) throw std::invalid_argument("alpha_for: k >= 1 required");
  long xi0c = static_cast<long>(std::ceil(std::sqrt(static_cast<double>(k))));
  long j;
  if (P.eta == Scalar(1)) {
    // exact path: bound = 1 / (8 xi0c C), half it, floor to a power of two
    Scalar half_bound = Scalar(1) / (Scalar(8) * Scalar(xi0c) * P.C) / Scalar(2);
    j = 1;
    while (Scalar(1, 1L << j) > half_bound && j < 62) ++j;
  } else {
    mpf_class base(0, 256), half_bound(0, 256);
    base = Scalar(2 * xi0c).to_mpf(256) * P.C.to_mpf(256);
    // (2 xi0c C)^{1/eta} via exp(log(base)/eta) at double precision plus a
    // power-of-two floor leaves ample margin
    double v = 1.0 / (8.0 * std::pow(base.get_d(), 1.0 / P.eta.to_double()));
    j = 1;
    while (std::ldexp(1.0, static_cast<int>(-j)) > v && j < 62) ++j;
  }
  return Scalar(1, 1L << j);
}

// Dyadic power of two at or below (4 (2C)^{1/eta})^{-1}; the contraction the
// fixed-b wrapper applies on top of the base strategy's ratio.
inline Scalar badb_contraction(const DecayParams& P) {
  long j;
  if (P.eta == Scalar(1)) {
    Scalar bound = Scalar(1) / (Scalar(8) * P.C);
    j = 1;
    while (Scalar(1, 1L << j) > bound && j < 62) ++j;
  } else {
    double v = 1.0 / (4.0 * std::pow(2.0 * P.C.to_double(), 1.0 / P.eta.to_double()));
    j = 1;
    while (std::ldexp(1.0, static_cast<int>(-j)) > v && j < 62) ++j;
  }
  return Scalar(1, 1L << j);
}

namespace detail {

// Exact solve of u^{e * s} == value for integer s, or nullopt.
inline std::optional<long> grid_exponent(const Scalar& u, long e, const Scalar& value) {
  if (!value.is_exact() || value.sign() <= 0) return std::nullopt;
  for (long s = 0; s <= 512; ++s) {
    if (Scalar::pow_int(u, e * s) == value) return s;
    if (s > 0 && Scalar::pow_int(u, -e * s) == value) return -s;
  }
  return std::nullopt;
}

}  // namespace detail

// ---- fixed-A strategy ----

struct ProtectionEntry {
  std::vector<mpz_class> coeffs;  // protector hyperplane, dual coefficients
  long start_round = 0;           // round where the avoidance move was played
  long end_round = -1;            // first round it is no longer small; -1 = open
  Scalar v_min;                   // certified minimal pyramid volume over W_J
};

struct BadACertificate {
  bool have = false;
  bool infinite_range = false;  // protector covolume decays forever
  Scalar c0_sq;                 // (lower bound on min_product)^2
  Scalar early_min;             // scan part over small |q|
  Scalar tail_sq;               // protection part, squared
  long early_range = 0;
};

class BadAWhite : public WhiteStrategy {
 public:
  struct Options {
    long lookahead = 20;  // persistence horizon for the tie-break
  };

  BadAWhite() = default;
  explicit BadAWhite(Options opts) : opts_(opts) {}
  std::string name() const override { return "badA"; }

  struct TrackedEntry {
    std::vector<mpz_class> coeffs;
    long first_small_round = 0;
    bool still_small = false;
  };

  Ball move(const GameView& view, const Ball& B) override {
    if (view.fixed.kind != FixedPart::Kind::fixed_A)
      throw StrategyBreakdownError("badA: fixed matrix A required");
    const GameParams& p = view.params;
    FlowSchedule F = p.schedule();
    long m = p.m;
    Scalar k_sq(static_cast<long>(F.k()));

    if (!j0_) {
      j0_ = detail::grid_exponent(p.u, p.n, p.initial.radius);
      if (!j0_)
        throw StrategyBreakdownError("badA: rho_1 must be u^{n j} for an integer j");
    }
    long s = *j0_ + (view.round - 1);

    Lattice L0 = linear_form_lattice(p.m, p.n, view.fixed.A);
    Lattice Lf = apply_flow(F, s, L0);
    auto smalls = enumerate_small_hyperplanes(Lf, k_sq);

    // update the tracked set and find hyperplanes that just became small
    std::vector<const Hyperplane*> newly;
    for (const auto& H : smalls) {
      auto it = std::find_if(tracked_.begin(), tracked_.end(),
                             [&](const TrackedEntry& t) { return t.coeffs == H.dual_coeffs; });
      bool was_big_before = flowed_covolume_sq(F, -1, H) > k_sq;
      if (it == tracked_.end()) {
        tracked_.push_back(TrackedEntry{H.dual_coeffs, view.round, true});
        if (was_big_before) newly.push_back(&H);
      } else {
        if (!it->still_small && was_big_before) newly.push_back(&H);
        it->still_small = true;
      }
    }
    for (auto& t : tracked_) {
      bool present = std::any_of(smalls.begin(), smalls.end(),
                                 [&](const Hyperplane& H) { return H.dual_coeffs == t.coeffs; });
      if (!present) t.still_small = false;
    }
    for (auto& e : ledger_) {
      if (e.end_round != -1) continue;
      bool present = std::any_of(smalls.begin(), smalls.end(),
                                 [&](const Hyperplane& H) { return H.dual_coeffs == e.coeffs; });
      if (!present) e.end_round = view.round;
    }

    if (newly.empty()) return Ball{B.center, p.alpha * B.radius};

    // tie-break: the hyperplane that stays small the longest over the
    // lookahead horizon, then lexicographically smaller coefficients
    const Hyperplane* chosen = newly.front();
    long best_persist = -1;
    for (const Hyperplane* H : newly) {
      long persist = 0;
      for (long jj = 0; jj <= opts_.lookahead; ++jj) {
        if (flowed_covolume_sq(F, jj, *H) <= k_sq)
          ++persist;
        else
          break;
      }
      if (persist > best_persist ||
          (persist == best_persist &&
           badforms::detail::lex_less(H->dual_coeffs, chosen->dual_coeffs))) {
        best_persist = persist;
        chosen = H;
      }
    }

    Vector wp = chosen->dual_vector.particle(static_cast<std::size_t>(m));
    if (wp.is_zero()) return Ball{B.center, p.alpha * B.radius};  // cannot happen for newly-small

    // coset traces on particle space: planes {b : <wp, b> = z / E}
    Scalar E = Scalar::pow_int(p.u, -p.n * s);
    Scalar theta_c = E * dot(wp, B.center);
    Scalar reach = E * B.radius * wp.l1_norm() + Scalar(1);
    mpz_class z0 = theta_c.round_nearest();
    std::vector<PlaneThickening> planes;
    Scalar eps = Scalar(2) * p.alpha * B.radius;
    for (long d : {0L, 1L, -1L, 2L, -2L}) {
      Scalar z{mpq_class(z0 + d)};
      if ((z - theta_c).abs() > reach) continue;
      long xi0c = static_cast<long>(std::ceil(std::sqrt(static_cast<double>(F.k()))));
      if (planes.size() == static_cast<std::size_t>(2 * xi0c + 1)) break;
      planes.push_back({AffinePlane{wp, z / E}, eps});
    }

    Vector y;
    try {
      y = avoid_hyperplanes(p.support, p.decay, B.center, B.radius, p.alpha, planes);
    } catch (const NotFoundError& e) {
      throw StrategyBreakdownError(std::string("badA: avoidance failed: ") + e.what());
    }

    // certified minimal pyramid volume over the returned ball W_J:
    // v_min = dist(theta(W_J), Z) with theta(b) = E <wp, b>
    Scalar theta_w = E * dot(wp, y);
    Scalar spread = p.alpha * B.radius * E * wp.l1_norm();
    Scalar v_min = max(Scalar(0), dist_to_Z(theta_w) - spread);
    ledger_.push_back(ProtectionEntry{chosen->dual_coeffs, view.round, -1, v_min});

    return Ball{y, p.alpha * B.radius};
  }

  const std::vector<ProtectionEntry>& ledger() const { return ledger_; }
  const std::vector<TrackedEntry>& tracked() const { return tracked_; }
  std::optional<long> flow_offset() const { return j0_; }

  // Per-step certified lower bound (squared) on the sup-norm distance of the
  // flowed affine lattice to the origin while the protector stays small.
  static Scalar bound_sq_at(const ProtectionEntry& e, const Lattice& L0, const FlowSchedule& F,
                            long steps) {
    Hyperplane H = hyperplane_from_coeffs(L0, e.coeffs);
    Scalar cov = flowed_covolume_sq(F, steps, H);
    return e.v_min * e.v_min / (Scalar(static_cast<long>(F.k())) * cov);
  }

  // Post-game badness certificate: every 0 < ||q|| is covered either by the
  // direct scan over |q| <= E_J (with the b-interval of the final ball) or by
  // the protection bound, provided the protector's covolume decays forever
  // (zero-time dual vector).  c0_sq bounds min_product^2 from below.
  BadACertificate certificate(const GameParams& p, const FixedPart& fixed, const Ball& final_ball,
                              long early_cap = 200000) const {
    BadACertificate cert;
    if (fixed.kind != FixedPart::Kind::fixed_A || !j0_) return cert;
    FlowSchedule F = p.schedule();
    Lattice L0 = linear_form_lattice(p.m, p.n, fixed.A);
    for (const auto& e : ledger_) {
      if (e.v_min.sign() <= 0) continue;
      Hyperplane H = hyperplane_from_coeffs(L0, e.coeffs);
      if (!H.contains_time_space(static_cast<std::size_t>(p.m))) continue;
      long s_J = *j0_ + (e.start_round - 1);
      Scalar E_J = Scalar::pow_int(p.u, -p.n * s_J);
      if (E_J > Scalar(early_cap)) continue;
      long range = static_cast<long>(E_J.to_double()) + 1;

      // early part: exact interval lower bound over the final ball
      Scalar early(0);
      bool first = true;
      badforms::detail::for_each_q(p.n, range, [&](const std::vector<long>& q) {
        Vector qv(static_cast<std::size_t>(p.n));
        long sup = 0;
        for (long j = 0; j < p.n; ++j) {
          qv[static_cast<std::size_t>(j)] = Scalar(q[static_cast<std::size_t>(j)]);
          sup = std::max(sup, std::labs(q[static_cast<std::size_t>(j)]));
        }
        Vector val = fixed.A * qv - final_ball.center;
        Scalar d = max(Scalar(0), dist_to_Z(val) - final_ball.radius);
        Scalar prod = Scalar::pow_int(Scalar(sup), p.n) * Scalar::pow_int(d, p.m);
        if (first || prod < early) {
          early = prod;
          first = false;
        }
      });

      Scalar tail_sq = Scalar::pow_int(p.u, 2 * p.n) * bound_sq_at(e, L0, F, s_J);
      cert.have = true;
      cert.infinite_range = true;
      cert.early_min = early;
      cert.tail_sq = tail_sq;
      cert.early_range = range;
      cert.c0_sq = min(early * early, tail_sq);
      return cert;
    }
    return cert;
  }

 private:
  Options opts_;
  std::optional<long> j0_;
  std::vector<TrackedEntry> tracked_;
  std::vector<ProtectionEntry> ledger_;
};

// ---- the easy rational case: a hyperplane whose covolume decays forever ----

struct Case1Detection {
  bool found = false;
  std::vector<mpz_class> coeffs;  // dual coefficients of the zero-time vector
};

// Search the dual lattice of L_A(0) for a vector with zero time component:
// coefficients (c_p, A^T c_p) with A^T c_p integral.  Decidable for rational
// A only; approx-mode entries report not-found.
inline Case1Detection detect_case1(const Matrix& A, long m, long n, long box = 50) {
  Case1Detection out;
  if (!A.is_exact()) return out;
  badforms::detail::for_each_q_canonical(m, box, [&](const std::vector<long>& cp) {
    Vector cpv(static_cast<std::size_t>(m));
    for (long i = 0; i < m; ++i) cpv[static_cast<std::size_t>(i)] = Scalar(cp[static_cast<std::size_t>(i)]);
    Vector At_cp = A.transpose() * cpv;
    for (std::size_t j = 0; j < At_cp.dim(); ++j)
      if (!At_cp[j].is_integer()) return false;
    out.found = true;
    out.coeffs.clear();
    for (long i = 0; i < m; ++i) out.coeffs.push_back(cp[static_cast<std::size_t>(i)]);
    for (std::size_t j = 0; j < At_cp.dim(); ++j) out.coeffs.push_back(At_cp[j].num());
    return true;
  });
  if (out.found) {
    mpz_class g = 0;
    for (const auto& c : out.coeffs) g = gcd(g, c);
    for (auto& c : out.coeffs) c /= g;
  }
  return out;
}

// Plays idle until the detected hyperplane's covolume drops below 1/3 in the
// dynamical picture, then makes one avoidance move off the single dangerous
// coset trace; afterwards any moves win and the positive pyramid volume of
// the final configuration is the certificate.
class Case1White : public WhiteStrategy {
 public:
  explicit Case1White(const Matrix& A, long m, long n) {
    det_ = detect_case1(A, m, n);
    if (!det_.found)
      throw NotCase1Error("no zero-time dual vector within the search box");
  }
  std::string name() const override { return "case1"; }

  Ball move(const GameView& view, const Ball& B) override {
    const GameParams& p = view.params;
    FlowSchedule F = p.schedule();
    if (!j0_) {
      j0_ = detail::grid_exponent(p.u, p.n, p.initial.radius);
      if (!j0_) throw StrategyBreakdownError("case1: rho_1 must be u^{n j}");
    }
    if (done_) return Ball{B.center, p.alpha * B.radius};
    long s = *j0_ + (view.round - 1);
    Lattice L0 = linear_form_lattice(p.m, p.n, view.fixed.A);
    Hyperplane H = hyperplane_from_coeffs(L0, det_.coeffs);
    Scalar cov = flowed_covolume_sq(F, s, H);
    if (cov >= Scalar(1, 9)) return Ball{B.center, p.alpha * B.radius};  // wait for < (1/3)^2

    // single dangerous coset: cosets sit at least 3 apart
    Hyperplane Hf = hyperplane_from_coeffs(apply_flow(F, s, L0), det_.coeffs);
    Vector wp = Hf.dual_vector.particle(static_cast<std::size_t>(p.m));
    Scalar E = Scalar::pow_int(p.u, -p.n * s);
    Scalar theta_c = E * dot(wp, B.center);
    Scalar z{mpq_class(theta_c.round_nearest())};
    Scalar eps = Scalar(2) * p.alpha * B.radius;
    Vector y;
    try {
      y = avoid_hyperplanes(p.support, p.decay, B.center, B.radius, p.alpha,
                            {{AffinePlane{wp, z / E}, eps}});
    } catch (const NotFoundError& e) {
      throw StrategyBreakdownError(std::string("case1: avoidance failed: ") + e.what());
    }
    Scalar theta_w = E * dot(wp, y);
    Scalar spread = p.alpha * B.radius * E * wp.l1_norm();
    certificate_ = max(Scalar(0), dist_to_Z(theta_w) - spread);
    done_ = true;
    return Ball{y, p.alpha * B.radius};
  }

  bool any_moves_win() const { return done_; }
  // positive pyramid volume spanned by the avoided configuration
  const Scalar& certificate() const { return certificate_; }
  const Case1Detection& detection() const { return det_; }

 private:
  Case1Detection det_;
  std::optional<long> j0_;
  bool done_ = false;
  Scalar certificate_;
};

// ---- fixed-b wrapper ----

// Invented homogeneous base heuristic: recenter to push the rescaled
// lattice's shortest vector's particle part away from zero.  Explicitly
// outside the paper's guarantees; any WhiteStrategy with ratio alpha0 plugs
// in instead.
class GreedyBase : public WhiteStrategy {
 public:
  explicit GreedyBase(Scalar alpha0) : alpha0_(std::move(alpha0)) {}
  std::string name() const override { return "greedy-base"; }
  const Scalar& ratio() const { return alpha0_; }

  Ball move(const GameView& view, const Ball& B) override {
    const GameParams& p = view.params;
    FlowSchedule F = p.schedule();
    long e = p.m + p.n;
    long s = 0;
    while (s < 2048 && Scalar::pow_int(p.u, e * (s + 1)) >= B.radius) ++s;
    Matrix A_c = vector_to_matrix(B.center, static_cast<std::size_t>(p.m),
                                  static_cast<std::size_t>(p.n));
    Lattice y = apply_flow(F, s, linear_form_lattice(p.m, p.n, A_c));
    auto sv = shortest_vector_full(y);
    Scalar slack = (Scalar(1) - alpha0_) * B.radius;
    if (sv.sup >= Scalar(1)) return Ball{B.center, alpha0_ * B.radius};
    Vector vt = sv.vec.time(static_cast<std::size_t>(p.m));
    Vector vp = sv.vec.particle(static_cast<std::size_t>(p.m));
    if (vt.is_zero()) return Ball{B.center, alpha0_ * B.radius};
    Vector step(B.center.dim());
    for (long i = 0; i < p.m; ++i)
      for (long j = 0; j < p.n; ++j) {
        int sp = vp[static_cast<std::size_t>(i)].sign();
        int st = vt[static_cast<std::size_t>(j)].sign();
        int dir = sp != 0 ? sp * st : st;
        step[static_cast<std::size_t>(i * p.n + j)] = Scalar(dir) * slack / Scalar(2);
      }
    Vector candidate = B.center + step;
    Vector c;
    try {
      c = point_on_K_in_ball(p.support, candidate, slack / Scalar(2));
    } catch (const EmptyIntersectionError&) {
      return Ball{B.center, alpha0_ * B.radius};
    }
    return Ball{c, alpha0_ * B.radius};
  }

 private:
  Scalar alpha0_;
};

class BadBWhite : public WhiteStrategy {
 public:
  struct ActRecord {
    long round = 0;
    Vector v;               // smallest vector of the rescaled affine lattice
    bool skipped = false;   // v_t = 0 branch
    Vector center_prime;    // base strategy's center A'
    Vector center_second;   // avoided center A''
    Scalar scale;           // alpha0 * rho_l (the dynamical normalization)
  };

  // base must shrink by alpha0; the wrapper returns radius
  // alpha = contraction * alpha0 and acts only every `stride` rounds
  // (0 = automatic (m+n)/gcd(m,n)).
  BadBWhite(std::shared_ptr<WhiteStrategy> base, Scalar alpha0, long stride = 0)
      : base_(std::move(base)), alpha0_(std::move(alpha0)), stride_(stride) {}
  std::string name() const override { return "badB"; }

  Ball move(const GameView& view, const Ball& B) override {
    if (view.fixed.kind != FixedPart::Kind::fixed_b)
      throw StrategyBreakdownError("badB: fixed vector b required");
    const GameParams& p = view.params;
    if (dist_to_Z(view.fixed.b).sign() == 0)
      throw StrategyBreakdownError("badB: b must not be integral");
    Scalar cf = badb_contraction(p.decay);
    if (p.alpha != cf * alpha0_)
      throw StrategyBreakdownError("badB: params.alpha must equal contraction * alpha0");
    long stride = stride_ > 0 ? stride_ : (p.m + p.n) / gcd_long(p.m, p.n);
    bool acting = (view.round - 1) % stride == 0;
    if (!acting) return Ball{B.center, p.alpha * B.radius};

    Ball Bp = base_->move(view, B);
    if (Bp.radius != alpha0_ * B.radius ||
        (Bp.center - B.center).sup_norm() > B.radius - Bp.radius ||
        !support_contains(p.support, Bp.center,
                          min(default_membership_resolution(), Bp.radius / Scalar(4))))
      throw BaseStrategyViolationError("badB: base strategy broke the referee rules");

    FlowSchedule F = p.schedule();
    long e = p.m + p.n;
    Scalar scale = alpha0_ * B.radius;  // alpha0 * rho_l
    auto s = detail::grid_exponent(p.u, e, scale);
    if (!s)
      throw StrategyBreakdownError("badB: alpha0 * rho_l must be u^{(m+n) s}; adjust rho_1/stride");

    Matrix A_prime = vector_to_matrix(Bp.center, static_cast<std::size_t>(p.m),
                                      static_cast<std::size_t>(p.n));
    AffineLattice x = apply_flow(F, *s, affine_form_lattice(p.m, p.n, A_prime, view.fixed.b));
    Vector v = closest_point_full(x, Vector(x.k()), /*exclude_exact_hit=*/true).point;
    Vector vt = v.time(static_cast<std::size_t>(p.m));
    Vector vp = v.particle(static_cast<std::size_t>(p.m));

    ActRecord rec{view.round, v, false, Bp.center, Bp.center, scale};
    if (vt.is_zero()) {
      rec.skipped = true;
      acts_.push_back(rec);
      return Ball{Bp.center, p.alpha * B.radius};
    }

    // danger set {A : v_p + (A - A') v_t / (alpha0 rho) = 0}, one plane per row
    std::vector<PlaneThickening> planes;
    Scalar eps = Scalar(2) * cf * scale;
    for (long i = 0; i < p.m; ++i) {
      Vector normal(B.center.dim());
      for (long j = 0; j < p.n; ++j)
        normal[static_cast<std::size_t>(i * p.n + j)] = vt[static_cast<std::size_t>(j)];
      Scalar offset = dot(normal, Bp.center) - scale * vp[static_cast<std::size_t>(i)];
      planes.push_back({AffinePlane{std::move(normal), offset}, eps});
    }
    Vector y;
    try {
      y = avoid_hyperplanes(p.support, p.decay, Bp.center, scale, cf, planes);
    } catch (const NotFoundError& ex) {
      throw StrategyBreakdownError(std::string("badB: avoidance failed: ") + ex.what());
    }
    rec.center_second = y;
    acts_.push_back(rec);
    return Ball{y, p.alpha * B.radius};
  }

  const std::vector<ActRecord>& acts() const { return acts_; }

 private:
  static long gcd_long(long a, long b) { return b == 0 ? a : gcd_long(b, a % b); }

  std::shared_ptr<WhiteStrategy> base_;
  Scalar alpha0_;
  long stride_;
  std::vector<ActRecord> acts_;
};

// ---- growth verification for singular A ----

enum class GrowthVerdict { diverges, not_applicable, inconclusive };

inline const char* to_string(GrowthVerdict v) {
  switch (v) {
    case GrowthVerdict::diverges: return "DIVERGES";
    case GrowthVerdict::not_applicable: return "NOT-APPLICABLE";
    default: return "INCONCLUSIVE";
  }
}

struct GrowthReport {
  std::vector<Scalar> min_covolume_sq;  // min over hyperplanes, per flow step
  TrajectoryReport trajectory;          // punctured distances for b*
  BadnessEstimate scan;
  GrowthVerdict verdict = GrowthVerdict::inconclusive;
};

// For a limit point b* of a fixed-A game: the smallest flowed-hyperplane
// covolume must decay (singular A), the trajectory must grow like its
// reciprocal, and the dyadic window minima of the badness scan must climb.
inline GrowthReport badInf_verify(const Matrix& A, long m, long n, const FlowSchedule& F,
                                  const Vector& b_star, long L, long Q) {
  GrowthReport rep;
  Lattice L0 = linear_form_lattice(m, n, A);
  Scalar k_sq(static_cast<long>(F.k()));
  for (long ell = 0; ell <= L; ++ell) {
    auto hs = enumerate_small_hyperplanes(apply_flow(F, ell, L0), k_sq);
    Scalar best = hs.empty() ? k_sq : hs.front().covolume_sq;
    rep.min_covolume_sq.push_back(best);
  }
  AffineSystem sys(m, n, A, b_star);
  rep.trajectory = trajectory_minima(sys, F, L, /*punctured=*/true);
  rep.scan = badness_scan(sys, Q);

  bool applicable =
      rep.min_covolume_sq.back() * Scalar(256) < rep.min_covolume_sq.front();
  if (!applicable) {
    rep.verdict = GrowthVerdict::not_applicable;
    return rep;
  }
  // divergence proxy: every window minimum sits above a positive line 2^j c,
  // and the minima actually climbed across the scanned range
  bool positive_slope = !rep.scan.windows.empty();
  for (std::size_t j = 0; j < rep.scan.windows.size(); ++j)
    if (!(rep.scan.windows[j].min_product.sign() > 0)) positive_slope = false;
  bool grew = !rep.scan.windows.empty() &&
              rep.scan.windows.back().min_product >=
                  Scalar(4) * rep.scan.windows.front().min_product;
  rep.verdict =
      (positive_slope && grew) ? GrowthVerdict::diverges : GrowthVerdict::inconclusive;
  return rep;
}

}  // namespace badforms
