#include "badforms/white.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace badforms;

namespace {

Matrix mat11(Scalar a) {
  Matrix A(1, 1);
  A.at(0, 0) = std::move(a);
  return A;
}

// Canonical fixed-A setup on [0,1]: alpha from alpha_for, beta = 1/4.
GameParams badA_params(long rounds) {
  GameParams p;
  p.m = 1;
  p.n = 1;
  p.decay = DecayParams(Scalar(2), Scalar(1), Scalar(1));
  p.alpha = alpha_for(p.decay, 2);
  p.beta = Scalar(1, 4);
  p.u = p.alpha * p.beta;
  p.rounds = rounds;
  p.support = SupportSpec::unit_box(1);
  p.initial = Ball{Vector{Scalar(1, 2)}, Scalar(1)};  // rho_1 = u^0
  return p;
}

}  // namespace

TEST_CASE("alpha_for matches the worked constants") {
  CHECK(alpha_for(DecayParams(Scalar(2), Scalar(1), Scalar(1)), 2) == Scalar(1, 64));
  CHECK(alpha_for(DecayParams(Scalar(1), Scalar(1), Scalar(1)), 2) == Scalar(1, 32));
  // eta -> infinity: the bound tends to 1/4, so alpha stays <= 1/8
  Scalar big_eta = alpha_for(DecayParams(Scalar(2), Scalar(1000), Scalar(1)), 2);
  CHECK(big_eta <= Scalar(1, 8));
  CHECK(big_eta > Scalar(0));
  // Cantor constants: (2 * 2 * 4)^{log3/log2} = 81, bound 1/324
  Scalar eta_cantor = Scalar::from_mpf(mpf_class(std::log(2.0) / std::log(3.0), 128));
  Scalar ac = alpha_for(DecayParams(Scalar(4), eta_cantor, Scalar(1)), 2);
  CHECK(ac <= Scalar(1, 648));
  CHECK(ac >= Scalar(1, 4096));
  // alpha_for takes no beta at all: winning-parameter independence is
  // structural (same output no matter what beta the game later uses)
}

TEST_CASE("badA strategy: end-to-end game with protection ledger") {
  auto p = badA_params(12);
  FixedPart fixed = FixedPart::matrix(mat11(Scalar(1, 3)));
  BadAWhite white;
  TargetingBlack black(TargetMode::toward_lattice_hit);
  Transcript t = run_game(p, fixed, white, black, 17);
  REQUIRE(t.completed());
  REQUIRE(revalidate(t) == std::nullopt);

  // the time-space hyperplane (coeffs 3,1) becomes small at round 2 and must
  // have triggered an avoidance with a positive certified pyramid volume
  REQUIRE_FALSE(white.ledger().empty());
  bool found_protector = false;
  for (const auto& e : white.ledger()) {
    if (e.coeffs == std::vector<mpz_class>{3, 1}) {
      found_protector = true;
      CHECK(e.v_min > Scalar(0));
      CHECK(e.end_round == -1);  // stays small forever
    }
  }
  CHECK(found_protector);

  // idle rounds keep the center in place
  bool saw_idle = false;
  for (const auto& r : t.rounds)
    if (r.white.center == r.black.center) saw_idle = true;
  CHECK(saw_idle);

  // ledger soundness: the certified bound never exceeds the true distance of
  // the flowed affine lattice, for several b sampled in the final ball
  FlowSchedule F = p.schedule();
  Lattice L0 = linear_form_lattice(1, 1, fixed.A);
  long last_round = static_cast<long>(t.rounds.size());
  std::mt19937_64 rng(5);
  for (const auto& e : white.ledger()) {
    if (e.v_min.sign() <= 0) continue;
    long cover_end = e.end_round == -1 ? last_round : e.end_round - 1;
    for (int sample = 0; sample < 10; ++sample) {
      long num = static_cast<long>(rng() % 2049) - 1024;
      Vector b = t.limit_center;
      b[0] += Scalar(num, 1024) * t.limit_radius_bound;
      for (long round = e.start_round; round <= cover_end; ++round) {
        long s = *white.flow_offset() + (round - 1);
        AffineLattice X = apply_flow(F, s, affine_form_lattice(1, 1, fixed.A, b));
        Scalar dist = min_dist_to_origin(X);
        REQUIRE(dist * dist >= BadAWhite::bound_sq_at(e, L0, F, s));
      }
    }
  }

  // post-game badness certificate, cross-checked by direct scans
  auto cert = white.certificate(p, fixed, Ball{t.limit_center, t.limit_radius_bound});
  REQUIRE(cert.have);
  CHECK(cert.infinite_range);
  CHECK(cert.c0_sq > Scalar(0));
  for (int sample = 0; sample < 5; ++sample) {
    long num = static_cast<long>(rng() % 2049) - 1024;
    Vector b = t.limit_center;
    b[0] += Scalar(num, 1024) * t.limit_radius_bound;
    auto scan = badness_scan(AffineSystem(1, 1, fixed.A, b), 2000);
    REQUIRE(scan.min_product * scan.min_product >= cert.c0_sq);
  }
}

TEST_CASE("badA strategy: every white move passes the referee against random black") {
  auto p = badA_params(10);
  FixedPart fixed = FixedPart::matrix(mat11(Scalar(1, 3)));
  BadAWhite white;
  RandomBlack black(31);
  Transcript t = run_game(p, fixed, white, black, 31);
  REQUIRE(t.completed());
  REQUIRE(revalidate(t) == std::nullopt);
}

TEST_CASE("case1 detection: zero matrix, one-third, and golden ratio") {
  auto d0 = detect_case1(Matrix(1, 1), 1, 1);
  REQUIRE(d0.found);
  CHECK(d0.coeffs == std::vector<mpz_class>{1, 0});

  auto d3 = detect_case1(mat11(Scalar(1, 3)), 1, 1);
  REQUIRE(d3.found);
  CHECK(d3.coeffs == std::vector<mpz_class>{3, 1});
  // oracle: exhaustive dual coefficient box, checking the time component of
  // w = (c1, c2 - c1/3) directly
  bool oracle_found = false;
  std::vector<mpz_class> oracle_best;
  for (long c1 = -50; c1 <= 50 && !oracle_found; ++c1)
    for (long c2 = -50; c2 <= 50; ++c2) {
      if (c1 == 0 && c2 == 0) continue;
      if (Scalar(c2) - Scalar(c1, 3) == Scalar(0) && c1 > 0) {
        oracle_found = true;
        oracle_best = {mpz_class(c1), mpz_class(c2)};
        break;
      }
    }
  REQUIRE(oracle_found);
  CHECK(oracle_best == std::vector<mpz_class>{3, 1});

  CHECK_THROWS_AS(Case1White(mat11(golden_ratio()), 1, 1), NotCase1Error);
}

TEST_CASE("case1 strategy: one avoidance then any-moves-win with a certificate") {
  auto p = badA_params(8);
  FixedPart fixed = FixedPart::matrix(Matrix(1, 1));  // A = 0
  Case1White white(fixed.A, 1, 1);
  RandomBlack black(77);
  Transcript t = run_game(p, fixed, white, black, 77);
  REQUIRE(t.completed());
  REQUIRE(revalidate(t) == std::nullopt);
  CHECK(white.any_moves_win());
  CHECK(white.certificate() > Scalar(0));
  // for A = 0 the avoided traces are the integer translates of b
  CHECK(dist_to_Z(t.limit_center) > Scalar(0));
}

TEST_CASE("badB wrapper: skip branch when the shortest vector is purely particle") {
  GameParams p;
  p.m = 1;
  p.n = 1;
  p.decay = DecayParams(Scalar(2), Scalar(1), Scalar(1));
  Scalar alpha0(1, 4);
  Scalar cf = badb_contraction(p.decay);
  REQUIRE(cf == Scalar(1, 16));
  p.alpha = cf * alpha0;  // 1/64
  p.beta = Scalar(1, 4);
  p.u = p.alpha * p.beta;  // 1/256
  p.rounds = 1;
  p.support = SupportSpec::unit_box(1);
  p.initial = Ball{Vector{Scalar(0)}, Scalar(4)};  // alpha0 * rho_1 = u^0

  struct PinnedBase : WhiteStrategy {
    Scalar a0;
    explicit PinnedBase(Scalar a) : a0(std::move(a)) {}
    std::string name() const override { return "pinned"; }
    Ball move(const GameView&, const Ball& B) override { return Ball{B.center, a0 * B.radius}; }
  };
  auto base = std::make_shared<PinnedBase>(alpha0);
  BadBWhite white(base, alpha0);
  FixedPart fixed = FixedPart::vector(Vector{Scalar(1, 2)});
  RandomBlack black(3);
  Transcript t = run_game(p, fixed, white, black, 3);
  REQUIRE(t.completed());
  REQUIRE(white.acts().size() == 1);
  // x_1 = L_0(1/2) Z^2: the nearest element is (1/2, 0), purely particle
  CHECK(white.acts()[0].skipped);
  CHECK(t.rounds[0].white.center == t.rounds[0].black.center);
}

TEST_CASE("badB wrapper: full game keeps the short-vector margin") {
  GameParams p;
  p.m = 1;
  p.n = 1;
  p.decay = DecayParams(Scalar(2), Scalar(1), Scalar(1));
  Scalar alpha0(1, 4);
  Scalar cf = badb_contraction(p.decay);
  p.alpha = cf * alpha0;
  p.beta = Scalar(1, 4);
  p.u = p.alpha * p.beta;
  p.rounds = 12;
  p.support = SupportSpec::unit_box(1);
  p.initial = Ball{Vector{Scalar(1, 2)}, Scalar(4)};

  for (const char* black_kind : {"random", "targeting:toward-lattice-hit"}) {
    auto base = std::make_shared<GreedyBase>(alpha0);
    BadBWhite white(base, alpha0);
    FixedPart fixed = FixedPart::vector(Vector{Scalar(1, 2)});
    auto black = make_black(black_kind, 21);
    Transcript t = run_game(p, fixed, white, *black, 21);
    REQUIRE(t.completed());
    REQUIRE(revalidate(t) == std::nullopt);

    // acting rounds are 1, 3, 5, ...
    for (const auto& act : white.acts()) CHECK((act.round - 1) % 2 == 0);

    // exact avoidance margin on every non-skipped act:
    // sup_i |v_p_i + <D_i, v_t>| > 2 cf ||v_t||_2 with D = (A'' - A') / scale
    for (const auto& act : white.acts()) {
      if (act.skipped) continue;
      Scalar d = (act.center_second[0] - act.center_prime[0]) / act.scale;
      Scalar vp = act.v[0], vt = act.v[1];
      Scalar lhs = (vp + d * vt).abs();
      CHECK(lhs * lhs > Scalar(4) * cf * cf * vt * vt);
    }

    // finite-horizon badness of the constructed A*
    Scalar a_star = t.limit_center[0];
    Scalar c0(1000);
    for (long q = 1; q <= 2000; ++q)
      c0 = min(c0, Scalar(q) * dist_to_Z(Scalar(q) * a_star - Scalar(1, 2)));
    INFO("c0 = " << c0.to_double() << " vs black " << black_kind);
    CHECK(c0 > Scalar(0));
  }
}

TEST_CASE("badB wrapper rejects a rule-breaking base strategy") {
  GameParams p;
  p.m = 1;
  p.n = 1;
  p.decay = DecayParams(Scalar(2), Scalar(1), Scalar(1));
  Scalar alpha0(1, 4);
  p.alpha = badb_contraction(p.decay) * alpha0;
  p.beta = Scalar(1, 4);
  p.u = p.alpha * p.beta;
  p.rounds = 1;
  p.support = SupportSpec::unit_box(1);
  p.initial = Ball{Vector{Scalar(1, 2)}, Scalar(4)};

  struct RogueBase : WhiteStrategy {
    std::string name() const override { return "rogue"; }
    Ball move(const GameView&, const Ball& B) override {
      return Ball{B.center, B.radius};  // refuses to shrink
    }
  };
  BadBWhite white(std::make_shared<RogueBase>(), alpha0);
  FixedPart fixed = FixedPart::vector(Vector{Scalar(1, 2)});
  RandomBlack black(9);
  GameView view{p, fixed, 1, {}};
  CHECK_THROWS_AS(white.move(view, p.initial), BaseStrategyViolationError);
}

TEST_CASE("badInf growth verification") {
  FlowSchedule F(1, 1, Scalar(1, 2));
  SECTION("A = 0: exact covolume decay rate u^{2m} on squares") {
    auto rep = badInf_verify(Matrix(1, 1), 1, 1, F, Vector{Scalar(2, 5)}, 12, 1 << 10);
    for (std::size_t l = 0; l + 1 < rep.min_covolume_sq.size(); ++l)
      CHECK(rep.min_covolume_sq[l + 1] == rep.min_covolume_sq[l] * Scalar(1, 4));
    CHECK(rep.verdict == GrowthVerdict::diverges);
  }
  SECTION("A = 1/3 with a protected limit point diverges") {
    auto rep = badInf_verify(mat11(Scalar(1, 3)), 1, 1, F, Vector{Scalar(1, 6)}, 12, 1 << 10);
    CHECK(rep.verdict == GrowthVerdict::diverges);
    // trajectory grows in lockstep with the reciprocal covolume
    CHECK(rep.trajectory.rows.back().min_dist > rep.trajectory.rows.front().min_dist * Scalar(4));
  }
  SECTION("golden ratio is not applicable") {
    auto rep = badInf_verify(mat11(golden_ratio()), 1, 1, F, Vector{Scalar(0)}, 12, 1 << 10);
    CHECK(rep.verdict == GrowthVerdict::not_applicable);
  }
}
