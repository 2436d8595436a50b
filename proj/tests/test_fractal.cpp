#include "badforms/fractal.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace badforms;

TEST_CASE("point on K: box clamps and detects empty intersections") {
  auto K = SupportSpec::unit_box(1);
  CHECK(point_on_K_in_ball(K, Vector{Scalar(1, 2)}, Scalar(1, 4)) == Vector{Scalar(1, 2)});
  CHECK(point_on_K_in_ball(K, Vector{Scalar(3, 2)}, Scalar(3, 4)) == Vector{Scalar(1)});
  CHECK_THROWS_AS(point_on_K_in_ball(K, Vector{Scalar(3)}, Scalar(1, 2)), EmptyIntersectionError);
}

TEST_CASE("point on K: Cantor anchors are exact attractor points") {
  auto K = SupportSpec::cantor_middle_thirds();
  Vector y = point_on_K_in_ball(K, Vector{Scalar(1, 2)}, Scalar(1, 2));
  CHECK((y - Vector{Scalar(1, 2)}).sup_norm() <= Scalar(1, 2));
  CHECK(support_contains(K, y, Scalar(1, 1L << 40)));
  // the middle gap contains B(1/2, 1/100)
  CHECK_THROWS_AS(point_on_K_in_ball(K, Vector{Scalar(1, 2)}, Scalar(1, 100)),
                  EmptyIntersectionError);
}

TEST_CASE("membership at resolution") {
  auto K = SupportSpec::cantor_middle_thirds();
  CHECK(support_contains(K, Vector{Scalar(0)}, default_membership_resolution()));
  CHECK(support_contains(K, Vector{Scalar(1, 3)}, default_membership_resolution()));
  CHECK(support_contains(K, Vector{Scalar(2, 9)}, default_membership_resolution()));
  CHECK_FALSE(support_contains(K, Vector{Scalar(1, 2)}, default_membership_resolution()));
  CHECK_FALSE(support_contains(K, Vector{Scalar(5, 12)}, default_membership_resolution()));
}

TEST_CASE("IFS cell measures sum to one at every depth") {
  auto K = SupportSpec::cantor_middle_thirds();
  for (int depth = 1; depth <= 6; ++depth) {
    std::vector<IfsCell> cells{ifs_root_cell(K)};
    for (int d = 0; d < depth; ++d) {
      std::vector<IfsCell> next;
      for (const auto& c : cells)
        for (std::size_t i = 0; i < K.maps().size(); ++i) next.push_back(ifs_child(K, c, i));
      cells = std::move(next);
    }
    Scalar total(0);
    for (const auto& c : cells) total += c.measure;
    CHECK(total == Scalar(1));
  }
}

TEST_CASE("avoid_hyperplanes: box with one plane and ample room") {
  auto K = SupportSpec::unit_box(2);
  DecayParams P(Scalar(2), Scalar(1), Scalar(1));
  Vector x{Scalar(1, 2), Scalar(1, 2)};
  Scalar r(1, 2), alpha(1, 10), eps(1, 10);
  std::vector<PlaneThickening> planes{{AffinePlane{axis_normal(2, 0), Scalar(1, 2)}, eps}};
  Vector y = avoid_hyperplanes(K, P, x, r, alpha, planes);
  CHECK((y - x).sup_norm() <= r * (Scalar(1) - alpha));
  CHECK((y[0] - Scalar(1, 2)).abs() > eps);
}

TEST_CASE("avoid_hyperplanes: Cantor avoiding a thickened point") {
  auto K = SupportSpec::cantor_middle_thirds();
  DecayParams P(Scalar(4), Scalar::from_mpf(mpf_class(std::log(2.0) / std::log(3.0), 128)), Scalar(1));
  Vector x{Scalar(1, 2)};
  Scalar r(1, 2), alpha(1, 10), eps(1, 20);
  std::vector<PlaneThickening> planes{{AffinePlane{axis_normal(1, 0), Scalar(1, 3)}, eps}};
  Vector y = avoid_hyperplanes(K, P, x, r, alpha, planes);
  CHECK((y - x).sup_norm() <= r * (Scalar(1) - alpha));
  CHECK((y[0] - Scalar(1, 3)).abs() > eps);
  CHECK(support_contains(K, y, Scalar(1, 1L << 40)));
}

TEST_CASE("avoid_hyperplanes: infeasible request reports the violated inequality") {
  auto K = SupportSpec::unit_box(1);
  DecayParams P(Scalar(2), Scalar(1), Scalar(1));
  Vector x{Scalar(1, 2)};
  // the thickening swallows the whole search ball: no point can exist
  try {
    avoid_hyperplanes(K, P, x, Scalar(1, 2), Scalar(1, 10),
                      {{AffinePlane{axis_normal(1, 0), Scalar(1, 2)}, Scalar(1)}});
    FAIL("expected NotFoundError");
  } catch (const NotFoundError& e) {
    CHECK(std::string(e.what()).find("violated") != std::string::npos);
  }
}

TEST_CASE("avoid_hyperplanes: randomized property run on the Cantor set") {
  auto K = SupportSpec::cantor_middle_thirds();
  DecayParams P(Scalar(4), Scalar::from_mpf(mpf_class(std::log(2.0) / std::log(3.0), 128)), Scalar(1));
  Scalar alpha(1, 1024);
  std::mt19937_64 rng(4242);
  int runs = 300;
  for (int t = 0; t < runs; ++t) {
    // random center on K, random dyadic radius, up to 3 point thickenings
    IfsCell c = ifs_root_cell(K);
    int depth = 1 + static_cast<int>(rng() % 6);
    for (int d = 0; d < depth; ++d) c = ifs_child(K, c, rng() % 2);
    Vector x = c.anchor;
    Scalar r(1, 1L << (rng() % 6));
    Scalar eps = Scalar(2) * alpha * r;
    std::vector<PlaneThickening> planes;
    std::size_t nplanes = 1 + rng() % 3;
    for (std::size_t i = 0; i < nplanes; ++i) {
      Scalar off = x[0] + Scalar(static_cast<long>(rng() % 129) - 64, 64) * r;
      planes.push_back({AffinePlane{axis_normal(1, 0), off}, eps});
    }
    Vector y = avoid_hyperplanes(K, P, x, r, alpha, planes);
    // the three post predicates are the oracle
    REQUIRE((y - x).sup_norm() <= r * (Scalar(1) - alpha));
    for (const auto& p : planes)
      REQUIRE(p.plane.scaled_dist_sq(y) > p.eps * p.eps * p.plane.normal.norm2_sq());
    REQUIRE(support_contains(K, y, Scalar(1, 1L << 48)));
  }
}

TEST_CASE("absolute decay: box with (C, eta) = (2, 1) passes exactly") {
  auto K = SupportSpec::unit_box(1);
  DecayParams P(Scalar(2), Scalar(1), Scalar(1));
  auto rep = verify_absolute_decay(K, P, 2000, 7);
  CHECK(rep.pass);
  CHECK(rep.max_ratio_over_bound <= 1.0 + 1e-9);
}

TEST_CASE("absolute decay: Cantor passes with (4, log2/log3) and fails with eta = 1") {
  auto K = SupportSpec::cantor_middle_thirds();
  Scalar eta_cantor = Scalar::from_mpf(mpf_class(std::log(2.0) / std::log(3.0), 128));
  auto good = verify_absolute_decay(K, DecayParams(Scalar(4), eta_cantor, Scalar(1)), 2000, 11);
  CHECK(good.pass);
  auto bad = verify_absolute_decay(K, DecayParams(Scalar(4), Scalar(1), Scalar(1)), 2000, 11);
  CHECK_FALSE(bad.pass);
  REQUIRE(bad.counterexample.has_value());
  // the counterexample is a thin slab aligned with a cell
  CHECK(bad.counterexample->ratio > bad.counterexample->bound);
}

TEST_CASE("fitting counts") {
  auto box = SupportSpec::unit_box(1);
  CHECK(fitting_count(box, Scalar(1, 4), Vector{Scalar(1, 2)}, Scalar(1, 4)) >= 2);
  auto cantor = SupportSpec::cantor_middle_thirds();
  CHECK(fitting_count(cantor, Scalar(1, 9), Vector{Scalar(0)}, Scalar(1)) >= 4);
  CHECK(fitting_count(box, Scalar(9, 10), Vector{Scalar(1, 2)}, Scalar(1, 4)) == 1);
  CHECK(fitting_count(cantor, Scalar(9, 10), Vector{Scalar(0)}, Scalar(1, 4)) == 1);
}
