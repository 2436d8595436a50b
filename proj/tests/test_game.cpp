#include "badforms/black.hpp"
#include "badforms/game.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace badforms;

namespace {

GameParams box_params(Scalar alpha, Scalar beta, long rounds, Ball initial) {
  GameParams p;
  p.m = 1;
  p.n = 1;
  p.alpha = alpha;
  p.beta = beta;
  p.u = alpha * beta;
  p.rounds = rounds;
  p.support = SupportSpec::unit_box(1);
  p.decay = DecayParams(Scalar(2), Scalar(1), Scalar(1));
  p.initial = std::move(initial);
  return p;
}

}  // namespace

TEST_CASE("validate_move accepts the canonical shrink and flags each violation") {
  auto K = SupportSpec::unit_box(1);
  Ball prev{Vector{Scalar(1, 2)}, Scalar(1)};
  CHECK(validate_move(prev, Ball{Vector{Scalar(1, 2)}, Scalar(1, 4)}, Scalar(1, 4), K) ==
        Violation::none);
  // wrong radius
  CHECK(validate_move(prev, Ball{Vector{Scalar(1, 2)}, Scalar(1, 3)}, Scalar(1, 4), K) ==
        Violation::radius);
  // center escapes: |9/10 - 1/2| = 2/5 > 1 - 1/4 is false, use a real escape
  CHECK(validate_move(prev, Ball{Vector{Scalar(19, 10)}, Scalar(1, 4)}, Scalar(1, 4), K) ==
        Violation::nesting);
  // off-support center on the Cantor set
  auto cantor = SupportSpec::cantor_middle_thirds();
  Ball cprev{Vector{Scalar(1, 3)}, Scalar(1, 2)};
  CHECK(validate_move(cprev, Ball{Vector{Scalar(1, 2)}, Scalar(1, 8)}, Scalar(1, 4), cantor) ==
        Violation::support);
  CHECK(validate_move(cprev, Ball{Vector{Scalar(1, 3)}, Scalar(1, 8)}, Scalar(1, 4), cantor) ==
        Violation::none);
}

TEST_CASE("referee is player-symmetric: the same bad ball draws the same verdict") {
  auto K = SupportSpec::unit_box(1);
  Ball prev{Vector{Scalar(1, 2)}, Scalar(1)};
  Ball bad{Vector{Scalar(19, 10)}, Scalar(1, 4)};
  CHECK(validate_move(prev, bad, Scalar(1, 4), K) == Violation::nesting);
  // identical check regardless of which player proposes it
  CHECK(validate_move(prev, bad, Scalar(1, 4), K) ==
        validate_move(prev, bad, Scalar(1, 4), K));
}

TEST_CASE("trivial game: exact geometric radii") {
  auto p = box_params(Scalar(1, 4), Scalar(1, 4), 5, Ball{Vector{Scalar(1, 2)}, Scalar(1, 2)});
  IdleWhite white;
  RandomBlack black(99);
  Transcript t = run_game(p, FixedPart{}, white, black, 99);
  REQUIRE(t.completed());
  REQUIRE(t.rounds.size() == 5);
  Scalar r(1, 2);
  for (const auto& round : t.rounds) {
    CHECK(round.black.radius == r);
    CHECK(round.white.radius == r * Scalar(1, 4));
    r = r * Scalar(1, 16);
  }
  CHECK(t.limit_radius_bound == Scalar::pow_int(Scalar(1, 16), 5) * Scalar(1, 2));
  auto [center, bound] = limit_point(t);
  CHECK(center == t.rounds.back().white.center);
  CHECK(bound == t.limit_radius_bound);
}

TEST_CASE("limit point bound is the product of per-round ratios times rho(B1)") {
  auto p = box_params(Scalar(1, 3), Scalar(1, 6), 7, Ball{Vector{Scalar(1, 3)}, Scalar(1, 4)});
  p.u = Scalar(1, 18);
  IdleWhite white;
  RandomBlack black(5);
  Transcript t = run_game(p, FixedPart{}, white, black, 5);
  REQUIRE(t.completed());
  Scalar expect = p.initial.radius;
  for (std::size_t i = 0; i < t.rounds.size(); ++i) expect = expect * p.alpha * p.beta;
  CHECK(limit_point(t).second == expect);
}

TEST_CASE("replay vs replay reproduces a transcript bit-exactly") {
  auto p = box_params(Scalar(1, 4), Scalar(1, 2), 8, Ball{Vector{Scalar(1, 2)}, Scalar(1, 2)});
  p.u = Scalar(1, 8);
  RandomWhite white(123);
  RandomBlack black(456);
  Transcript original = run_game(p, FixedPart{}, white, black, 123);
  REQUIRE(original.completed());

  ReplayWhite rw(original);
  ReplayBlack rb(original);
  Transcript replayed = run_game(p, FixedPart{}, rw, rb, 123);
  REQUIRE(replayed.completed());
  REQUIRE(replayed.rounds.size() == original.rounds.size());
  for (std::size_t i = 0; i < original.rounds.size(); ++i) {
    CHECK(replayed.rounds[i].black.center == original.rounds[i].black.center);
    CHECK(replayed.rounds[i].black.radius.str() == original.rounds[i].black.radius.str());
    CHECK(replayed.rounds[i].white.center == original.rounds[i].white.center);
  }
  CHECK(revalidate(replayed) == std::nullopt);
}

TEST_CASE("violations abort the game and record the offender") {
  struct CheatingWhite : WhiteStrategy {
    std::string name() const override { return "cheat"; }
    Ball move(const GameView& view, const Ball& b) override {
      return Ball{b.center, view.params.alpha * b.radius * Scalar(2)};
    }
  };
  auto p = box_params(Scalar(1, 4), Scalar(1, 4), 3, Ball{Vector{Scalar(1, 2)}, Scalar(1, 2)});
  CheatingWhite white;
  RandomBlack black(7);
  Transcript t = run_game(p, FixedPart{}, white, black, 7);
  REQUIRE_FALSE(t.completed());
  CHECK(t.violation->player == "white");
  CHECK(t.violation->round == 1);
  CHECK(t.violation->kind == Violation::radius);
  CHECK_THROWS_AS(limit_point(t), InvalidTranscriptError);
}

TEST_CASE("random-strategy fuzz on box and Cantor: no false violations") {
  std::mt19937_64 seeds(2024);
  for (int game = 0; game < 300; ++game) {
    bool cantor = game % 2 == 1;
    GameParams p;
    p.m = 1;
    p.n = 1;
    p.alpha = Scalar(1, 1 + static_cast<long>(seeds() % 7));
    p.beta = Scalar(1, 1 + static_cast<long>(seeds() % 7));
    if (p.alpha == Scalar(1)) p.alpha = Scalar(1, 2);
    if (p.beta == Scalar(1)) p.beta = Scalar(1, 2);
    p.u = p.alpha * p.beta;
    p.rounds = 3 + static_cast<long>(seeds() % 4);
    p.support = cantor ? SupportSpec::cantor_middle_thirds() : SupportSpec::unit_box(1);
    p.decay = DecayParams(Scalar(2), Scalar(1), Scalar(1));
    Vector c0 = cantor ? Vector{Scalar(1, 3)} : Vector{Scalar(1, 2)};
    p.initial = Ball{c0, Scalar(1, 2)};
    RandomWhite white(seeds());
    RandomBlack black(seeds());
    Transcript t = run_game(p, FixedPart{}, white, black, 1);
    REQUIRE(t.completed());
    // independent re-validation of every recorded rule
    REQUIRE(revalidate(t) == std::nullopt);
    // exact radius law after L rounds
    Scalar expect = p.initial.radius;
    for (std::size_t i = 0; i < t.rounds.size(); ++i) {
      CHECK(t.rounds[i].black.radius == expect);
      CHECK(t.rounds[i].white.radius == p.alpha * expect);
      expect = expect * p.alpha * p.beta;
    }
  }
}

TEST_CASE("targeting black closes in on a hit for the fixed-A game") {
  GameParams p;
  p.m = 1;
  p.n = 1;
  p.alpha = Scalar(1, 4);
  p.beta = Scalar(1, 4);
  p.u = Scalar(1, 16);
  p.rounds = 6;
  p.support = SupportSpec::unit_box(1);
  p.decay = DecayParams(Scalar(2), Scalar(1), Scalar(1));
  p.initial = Ball{Vector{Scalar(1, 2)}, Scalar(1, 4)};
  Matrix A(1, 1);
  A.at(0, 0) = Scalar(1, 3);
  FixedPart fixed = FixedPart::matrix(A);
  IdleWhite white;
  TargetingBlack black(TargetMode::toward_lattice_hit);
  Transcript t = run_game(p, fixed, white, black, 3);
  REQUIRE(t.completed());
  REQUIRE(revalidate(t) == std::nullopt);
  // Black cannot reach the hit set (its total drift budget is smaller than
  // the 1/6 gap), but must close in monotonically against an idle White
  auto dist_to_hits = [](const Scalar& b) {
    Scalar best(1);
    for (long q = -30; q <= 30; ++q) {
      if (q == 0) continue;
      best = min(best, dist_to_Z(Scalar(q, 3) - b));
    }
    return best;
  };
  Scalar prev = dist_to_hits(t.rounds.front().black.center[0]);
  for (const auto& round : t.rounds) {
    Scalar d = dist_to_hits(round.black.center[0]);
    CHECK(d <= prev);
    prev = d;
  }
  CHECK(dist_to_hits(t.limit_center[0]) < dist_to_hits(p.initial.center[0]));
}
