#pragma once

// Adversaries for stressing the White strategies: random, targeting (pushes
// toward the current dangerous object with full visibility of the position),
// and bit-exact replay.

#include "badforms/game.hpp"

#include <random>

namespace badforms {

class RandomBlack : public BlackStrategy {
 public:
  explicit RandomBlack(std::uint64_t seed) : rng_(seed) {}
  std::string name() const override { return "random"; }

  Ball move(const GameView& view, const Ball& W) override {
    const Scalar& beta = view.params.beta;
    Scalar slack = (Scalar(1) - beta) * W.radius;  // total recentering budget
    Vector candidate = W.center;
    for (std::size_t j = 0; j < candidate.dim(); ++j) {
      long num = static_cast<long>(rng_() % 65537) - 32768;
      candidate[j] += Scalar(num, 65536) * slack / Scalar(2);
    }
    Vector c = point_on_K_in_ball(view.params.support, candidate, slack / Scalar(2));
    return Ball{c, beta * W.radius};
  }

 private:
  std::mt19937_64 rng_;
};

enum class TargetMode { toward_lattice_hit, toward_coset };

// Moves the center as far toward a target point as nesting allows, then
// projects back to K; falls back to a concentric shrink when that would not
// decrease the distance to the target.
class TargetingBlack : public BlackStrategy {
 public:
  explicit TargetingBlack(TargetMode mode) : mode_(mode) {}
  std::string name() const override {
    return mode_ == TargetMode::toward_lattice_hit ? "targeting:toward-lattice-hit"
                                                   : "targeting:toward-coset";
  }

  Ball move(const GameView& view, const Ball& W) override {
    const Scalar& beta = view.params.beta;
    Scalar slack = (Scalar(1) - beta) * W.radius;
    Ball fallback{W.center, beta * W.radius};
    std::optional<Vector> target = pick_target(view, W);
    if (!target) return fallback;

    // step toward the target, clamped per coordinate to 3/4 of the slack
    Vector step = *target - W.center;
    Scalar cap = slack * Scalar(3, 4);
    for (std::size_t j = 0; j < step.dim(); ++j) step[j] = min(max(step[j], -cap), cap);
    Vector moved = W.center + step;
    Vector c;
    try {
      c = point_on_K_in_ball(view.params.support, moved, slack / Scalar(4));
    } catch (const EmptyIntersectionError&) {
      return fallback;
    }
    if ((c - W.center).sup_norm() > slack) return fallback;
    if ((c - *target).sup_norm() > (W.center - *target).sup_norm()) return fallback;
    return Ball{c, beta * W.radius};
  }

 private:
  // Largest s with u^{-n s} * radius <= 1: the dynamical rescale at which the
  // current ball fills the unit ball.
  static long steps_for_radius(const FlowSchedule& F, const Scalar& radius) {
    Scalar expand = Scalar::pow_int(F.u, -F.n);
    Scalar E(1);
    long s = 0;
    while (s < 4096) {
      Scalar next = E * expand;
      if (next * radius > Scalar(1)) break;
      E = next;
      ++s;
    }
    return s;
  }

  std::optional<Vector> pick_target(const GameView& view, const Ball& W) {
    if (view.fixed.kind == FixedPart::Kind::fixed_A) {
      FlowSchedule F = view.params.schedule();
      long s = steps_for_radius(F, W.radius);
      if (mode_ == TargetMode::toward_lattice_hit) {
        AffineLattice X = apply_flow(F, s, affine_form_lattice(view.params.m, view.params.n,
                                                               view.fixed.A, W.center));
        Vector v = closest_point_full(X, Vector(X.k()), false).point;
        // pulling the particle part to zero: b* = b + e^{-t/m} v_p
        Vector vp = v.particle(static_cast<std::size_t>(view.params.m));
        Scalar back = Scalar::pow_int(F.u, F.n * s);
        return W.center + back * vp;
      }
      // toward-coset: project onto the nearest trace of the smallest
      // dangerous hyperplane in particle space
      Lattice L0 = apply_flow(F, s, linear_form_lattice(view.params.m, view.params.n, view.fixed.A));
      auto hs = enumerate_small_hyperplanes(L0, Scalar(static_cast<long>(L0.k())));
      if (hs.empty()) return std::nullopt;
      const Hyperplane& H = hs.front();
      Vector wp = H.dual_vector.particle(static_cast<std::size_t>(view.params.m));
      if (wp.is_zero()) return std::nullopt;
      Scalar E = Scalar::pow_int(F.u, -F.n * s);
      Scalar theta = E * dot(wp, W.center);
      Scalar z{mpq_class(theta.round_nearest())};
      // b* = b - (<wp, b> - z/E) wp / ||wp||^2
      Scalar off = dot(wp, W.center) - z / E;
      return W.center - off / wp.norm2_sq() * wp;
    }
    if (view.fixed.kind == FixedPart::Kind::fixed_b && view.params.n == 1 &&
        view.params.m == 1 && mode_ == TargetMode::toward_lattice_hit) {
      // game over A in M_{1,1}: hit values are (b + p) / q for small q
      const Scalar& b = view.fixed.b[0];
      Scalar best = W.center[0];
      bool have = false;
      Scalar best_dist(0);
      for (long q = 1; q <= 64; ++q) {
        mpz_class p = (W.center[0] * Scalar(q) - b).round_nearest();
        Scalar cand = (b + Scalar(mpq_class(p))) / Scalar(q);
        Scalar d = (cand - W.center[0]).abs();
        if (!have || d < best_dist) {
          best = cand;
          best_dist = d;
          have = true;
        }
      }
      if (have) return Vector{best};
    }
    return std::nullopt;
  }

  TargetMode mode_;
};

class ReplayBlack : public BlackStrategy {
 public:
  explicit ReplayBlack(const Transcript& t) : rounds_(t.rounds) {}
  std::string name() const override { return "replay"; }
  Ball move(const GameView& view, const Ball&) override {
    std::size_t i = static_cast<std::size_t>(view.round) - 1;
    if (i >= rounds_.size()) throw InvalidTranscriptError("replay black: round out of range");
    return rounds_[i].black;
  }

 private:
  std::vector<RoundRecord> rounds_;
};

class ReplayWhite : public WhiteStrategy {
 public:
  explicit ReplayWhite(const Transcript& t) : rounds_(t.rounds) {}
  std::string name() const override { return "replay"; }
  Ball move(const GameView& view, const Ball&) override {
    std::size_t i = static_cast<std::size_t>(view.round) - 1;
    if (i >= rounds_.size()) throw InvalidTranscriptError("replay white: round out of range");
    return rounds_[i].white;
  }

 private:
  std::vector<RoundRecord> rounds_;
};

// White playing "without any particular goal": keep the center (it is on K
// already) and shrink by alpha.
class IdleWhite : public WhiteStrategy {
 public:
  std::string name() const override { return "idle"; }
  Ball move(const GameView& view, const Ball& black_ball) override {
    return Ball{black_ball.center, view.params.alpha * black_ball.radius};
  }
};

// Random-walking White for referee fuzzing; mirror of RandomBlack.
class RandomWhite : public WhiteStrategy {
 public:
  explicit RandomWhite(std::uint64_t seed) : rng_(seed) {}
  std::string name() const override { return "random"; }
  Ball move(const GameView& view, const Ball& B) override {
    const Scalar& alpha = view.params.alpha;
    Scalar slack = (Scalar(1) - alpha) * B.radius;
    Vector candidate = B.center;
    for (std::size_t j = 0; j < candidate.dim(); ++j) {
      long num = static_cast<long>(rng_() % 65537) - 32768;
      candidate[j] += Scalar(num, 65536) * slack / Scalar(2);
    }
    Vector c = point_on_K_in_ball(view.params.support, candidate, slack / Scalar(2));
    return Ball{c, alpha * B.radius};
  }

 private:
  std::mt19937_64 rng_;
};

inline std::unique_ptr<BlackStrategy> make_black(const std::string& spec, std::uint64_t seed,
                                                 const Transcript* replay = nullptr) {
  if (spec == "random") return std::make_unique<RandomBlack>(seed);
  if (spec == "targeting:toward-lattice-hit")
    return std::make_unique<TargetingBlack>(TargetMode::toward_lattice_hit);
  if (spec == "targeting:toward-coset")
    return std::make_unique<TargetingBlack>(TargetMode::toward_coset);
  if (spec.rfind("replay", 0) == 0) {
    if (!replay) throw ConfigError("black=replay requires a transcript");
    return std::make_unique<ReplayBlack>(*replay);
  }
  throw ConfigError("unknown black strategy '" + spec + "'");
}

}  // namespace badforms
