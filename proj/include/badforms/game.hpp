#pragma once

// Schmidt (alpha, beta)-game referee: enforces the nesting and radius laws
// B_1 > W_1 > B_2 > ... with rho(W_l) = alpha rho(B_l) and
// rho(B_{l+1}) = beta rho(W_l), drives the two strategy interfaces, and
// extracts the limit point.  Balls are closed sup-norm balls with an explicit
// chosen center and radius; centers of both players must lie on K.

#include "badforms/diophantine.hpp"
#include "badforms/fractal.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace badforms {

struct Ball {
  Vector center;
  Scalar radius;
};

struct GameParams {
  long m = 1;
  long n = 1;
  Scalar alpha;
  Scalar beta;
  Scalar u;  // flow base: alpha * beta = u^n exactly
  long rounds = 0;
  SupportSpec support = SupportSpec::unit_box(1);
  DecayParams decay;
  Ball initial;  // Black's opening ball B_1 (center on K, radius free)

  void validate() const {
    if (!(alpha > Scalar(0)) || !(alpha < Scalar(1)))
      throw ConfigError("alpha must be in (0,1)");
    if (!(beta > Scalar(0)) || !(beta < Scalar(1)))
      throw ConfigError("beta must be in (0,1)");
    if (!u.is_exact() || !(u > Scalar(0)) || !(u < Scalar(1)))
      throw ConfigError("u must be rational in (0,1)");
    if (Scalar::pow_int(u, n) != alpha * beta)
      throw ConfigError("alpha*beta must equal u^n exactly");
    if (rounds < 0) throw ConfigError("rounds must be >= 0");
    if (initial.radius.sign() <= 0) throw ConfigError("initial radius must be positive");
  }

  FlowSchedule schedule() const { return FlowSchedule(m, n, u); }
};

// The quantity the game is played over: b for the fixed-A strategies,
// A for the fixed-b wrapper.
struct FixedPart {
  enum class Kind { none, fixed_A, fixed_b };
  Kind kind = Kind::none;
  Matrix A;  // m x n, when kind == fixed_A
  Vector b;  // m entries, when kind == fixed_b

  static FixedPart matrix(Matrix A_) { return FixedPart{Kind::fixed_A, std::move(A_), Vector()}; }
  static FixedPart vector(Vector b_) { return FixedPart{Kind::fixed_b, Matrix(), std::move(b_)}; }
};

enum class Violation { none, radius, nesting, support };

inline const char* to_string(Violation v) {
  switch (v) {
    case Violation::radius: return "RADIUS";
    case Violation::nesting: return "NESTING";
    case Violation::support: return "SUPPORT";
    default: return "NONE";
  }
}

// Move check: exact radius law next.radius = ratio * prev.radius, sup-norm
// nesting ||centers|| <= prev.radius - next.radius, and center on K at
// resolution min(default, radius/4).
inline Violation validate_move(const Ball& prev, const Ball& next, const Scalar& ratio,
                               const SupportSpec& K) {
  if (next.radius != ratio * prev.radius) return Violation::radius;
  if ((next.center - prev.center).sup_norm() > prev.radius - next.radius)
    return Violation::nesting;
  Scalar res = min(default_membership_resolution(), next.radius / Scalar(4));
  if (!support_contains(K, next.center, res)) return Violation::support;
  return Violation::none;
}

struct RoundRecord {
  Ball black;
  Ball white;
};

struct ViolationRecord {
  std::string player;  // "black" | "white"
  long round = 0;      // 1-based
  Violation kind = Violation::none;
};

struct Transcript {
  GameParams params;
  FixedPart fixed;
  std::string white_name, black_name;
  std::uint64_t seed = 0;
  std::vector<RoundRecord> rounds;
  std::optional<ViolationRecord> violation;
  Vector limit_center;
  Scalar limit_radius_bound;

  bool completed() const { return !violation.has_value(); }
};

// What a strategy sees: full history plus the fixed data.  Round is 1-based
// and counts completed Black moves.
struct GameView {
  const GameParams& params;
  const FixedPart& fixed;
  long round;
  const std::vector<RoundRecord>& history;
};

class WhiteStrategy {
 public:
  virtual ~WhiteStrategy() = default;
  virtual std::string name() const = 0;
  // Choose W with rho = alpha * rho(black_ball), nested, center on K.
  virtual Ball move(const GameView& view, const Ball& black_ball) = 0;
};

class BlackStrategy {
 public:
  virtual ~BlackStrategy() = default;
  virtual std::string name() const = 0;
  // Choose B with rho = beta * rho(white_prev), nested, center on K.
  virtual Ball move(const GameView& view, const Ball& white_prev) = 0;
};

// Play `rounds` full cycles, validating every move; Black opens with the
// configured B_1.  A violation aborts the game and is recorded together with
// the offending player.
inline Transcript run_game(const GameParams& params, const FixedPart& fixed, WhiteStrategy& white,
                           BlackStrategy& black, std::uint64_t seed) {
  params.validate();
  Transcript t;
  t.params = params;
  t.fixed = fixed;
  t.white_name = white.name();
  t.black_name = black.name();
  t.seed = seed;

  Ball current_black = params.initial;
  for (long round = 1; round <= params.rounds; ++round) {
    GameView view{params, fixed, round, t.rounds};
    if (round == 1) {
      // B_1 is Black's arbitrary opening: only the support rule applies
      Scalar res = min(default_membership_resolution(), current_black.radius / Scalar(4));
      if (!support_contains(params.support, current_black.center, res)) {
        t.violation = ViolationRecord{"black", round, Violation::support};
        break;
      }
    } else {
      Ball proposed = black.move(view, t.rounds.back().white);
      Violation v = validate_move(t.rounds.back().white, proposed, params.beta, params.support);
      if (v != Violation::none) {
        t.violation = ViolationRecord{"black", round, v};
        break;
      }
      current_black = proposed;
    }
    Ball white_ball = white.move(view, current_black);
    Violation v = validate_move(current_black, white_ball, params.alpha, params.support);
    if (v != Violation::none) {
      t.violation = ViolationRecord{"white", round, v};
      break;
    }
    t.rounds.push_back(RoundRecord{current_black, white_ball});
  }

  if (!t.rounds.empty()) {
    t.limit_center = t.rounds.back().white.center;
    t.limit_radius_bound =
        Scalar::pow_int(params.alpha * params.beta, static_cast<long>(t.rounds.size())) *
        params.initial.radius;
  } else {
    t.limit_center = params.initial.center;
    t.limit_radius_bound = params.initial.radius;
  }
  return t;
}

// (last White center, (alpha beta)^rounds * rho(B_1)); every point of the
// true ball intersection lies within the bound of the returned center.
inline std::pair<Vector, Scalar> limit_point(const Transcript& t) {
  if (!t.completed()) throw InvalidTranscriptError("limit_point: aborted transcript");
  if (t.rounds.empty()) throw InvalidTranscriptError("limit_point: empty transcript");
  return {t.limit_center, t.limit_radius_bound};
}

// Re-validate a transcript against the referee rules from scratch.
inline std::optional<ViolationRecord> revalidate(const Transcript& t) {
  const GameParams& p = t.params;
  for (std::size_t i = 0; i < t.rounds.size(); ++i) {
    long round = static_cast<long>(i) + 1;
    const Ball& b = t.rounds[i].black;
    if (i == 0) {
      if (b.center != p.initial.center || b.radius != p.initial.radius)
        return ViolationRecord{"black", round, Violation::radius};
      Scalar res = min(default_membership_resolution(), b.radius / Scalar(4));
      if (!support_contains(p.support, b.center, res))
        return ViolationRecord{"black", round, Violation::support};
    } else {
      Violation v = validate_move(t.rounds[i - 1].white, b, p.beta, p.support);
      if (v != Violation::none) return ViolationRecord{"black", round, v};
    }
    Violation v = validate_move(b, t.rounds[i].white, p.alpha, p.support);
    if (v != Violation::none) return ViolationRecord{"white", round, v};
  }
  return std::nullopt;
}

}  // namespace badforms
