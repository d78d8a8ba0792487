#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "shatter/geometry.hpp"
#include "shatter/linalg.hpp"

using namespace shatter;

TEST_CASE("rational parsing") {
  CHECK(parse_rational("6/4") == ratio(3, 2));
  CHECK(parse_rational("-7") == -7);
  CHECK(to_string(parse_rational("6/4")) == "3/2");
  CHECK(to_string(Rational(5)) == "5/1");
  CHECK(to_string(parse_rational("3/-6")) == "-1/2");
  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("1.5"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational(""), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("2/"), std::invalid_argument);
}

TEST_CASE("linear algebra helpers") {
  CHECK(rank({{1, 2}, {2, 4}}) == 1);
  CHECK(rank({}) == 0);
  const Matrix a{{1, 1, 0}, {0, 1, 1}};
  const auto ns = null_space(a, 3);
  REQUIRE(ns.size() == 1);
  for (const auto& row : a) CHECK(dot(row, ns[0]) == 0);
  CHECK(null_space({}, 2).size() == 2);
}

TEST_CASE("boxes and half-spaces") {
  const AxisBox box({1, 2}, {3, 2});
  CHECK(box_contains(box, Point{1, 2}));
  CHECK(box_contains(box, Point{3, 2}));
  CHECK_FALSE(box_contains(box, Point{ratio(7, 2), 2}));
  CHECK_THROWS_AS(AxisBox({2}, {1}), std::invalid_argument);
  CHECK(AxisBox::anchored({4, 5}).is_anchored());

  const RestrictedHalfspace h({2, 4}, 1);
  CHECK(halfspace_contains(h, Point{1, 2}));  // boundary is closed
  CHECK_FALSE(halfspace_contains(h, Point{1, 3}));
  CHECK_THROWS_AS(RestrictedHalfspace({0, 1}, 1), std::invalid_argument);
  CHECK_THROWS_AS(RestrictedHalfspace({1, 1}, 0), std::invalid_argument);
}

TEST_CASE("affine independence and simplex construction") {
  CHECK(affinely_independent({Point{0, 0}, Point{1, 0}, Point{0, 1}}));
  CHECK_FALSE(affinely_independent({Point{0, 0}, Point{1, 1}, Point{2, 2}}));
  CHECK(affinely_independent({Point{5, 5}}));
  CHECK_THROWS_AS(OpenSimplex({Point{0, 0}, Point{1, 1}, Point{2, 2}}), DegenerateSimplexError);
  CHECK_THROWS_AS(OpenSimplex({}), std::invalid_argument);
  CHECK(OpenSimplex({Point{0, 0}, Point{1, 0}}).simplex_dim() == 1);
}

TEST_CASE("side_of and simplex crossings") {
  const auto h = dual_point_to_hyperplane(Point{1, 0});  // x_2 = x_1
  CHECK(side_of(h, Point{1, 0}) == 1);
  CHECK(side_of(h, Point{1, 2}) == -1);
  CHECK(side_of(h, Point{3, 3}) == 0);
  CHECK_THROWS_AS(dual_point_to_hyperplane(Point{1}), std::invalid_argument);

  // An open segment whose endpoint touches the line does not meet it.
  CHECK_FALSE(simplex_hyperplane_intersects(OpenSimplex({Point{0, 0}, Point{1, 0}}), h));
  CHECK(simplex_hyperplane_intersects(OpenSimplex({Point{0, 1}, Point{1, 0}}), h));
  // Lying inside the hyperplane counts as meeting it.
  CHECK(simplex_hyperplane_intersects(OpenSimplex({Point{0, 0}, Point{2, 2}}), h));
}

TEST_CASE("simplex crossing agrees with an explicit point search") {
  std::mt19937_64 rng(23);
  int met = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t d = 2 + rng() % 3;
    const std::size_t k = 1 + rng() % d;
    auto verts = oracle::random_points(rng, k + 1, d, 3);
    if (!affinely_independent(verts)) continue;
    const OpenSimplex s(verts);
    // Half the time put the hyperplane through a vertex to exercise zero signs.
    Point p = oracle::random_points(rng, 1, d, 3).front();
    if (trial % 2) {
      const auto& v = verts.front();
      Rational rest = v[d - 1];
      for (std::size_t i = 0; i + 1 < d; ++i) rest -= p[i] * v[i];
      p[d - 1] = rest;
    }
    const auto h = dual_point_to_hyperplane(p);
    const bool got = simplex_hyperplane_intersects(s, h);
    CHECK(got == oracle::simplex_meets_by_search(s, h));
    met += got;
  }
  CHECK(met > 50);
}

TEST_CASE("duality sign identity") {
  std::mt19937_64 rng(29);
  auto check = [](const Point& p, const RestrictedHalfspace& h) {
    const Rational lhs = h.weighted_sum(p) - h.tau;
    CHECK(sign(lhs) == side_of(dual_point_to_hyperplane(p), dual_halfspace_to_point(h)));
    CHECK(halfspace_contains(h, p) == (side_of(dual_point_to_hyperplane(p), dual_halfspace_to_point(h)) <= 0));
  };
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t d = 2 + rng() % 4;
    Point p;
    std::vector<Rational> b;
    for (std::size_t i = 0; i < d; ++i) {
      p.coords.push_back(oracle::random_rational(rng, 0, 9) + ratio(1, 7));
      b.push_back(oracle::random_rational(rng, 0, 9) + ratio(1, 5));
    }
    check(p, RestrictedHalfspace(b, oracle::random_rational(rng, 0, 9) + ratio(1, 3)));
  }
  // Boundary: tau equal to the weighted sum, and corner points p = b.
  const RestrictedHalfspace h({2, 3, 5}, 3);
  check(Point{2, 3, 5}, h);
  check(Point{4, 3, 5}, h);
  check(Point{1, ratio(3, 2), ratio(5, 2)}, RestrictedHalfspace({2, 3, 5}, ratio(3, 2)));
}

TEST_CASE("realizable half-space subsets match Fourier-Motzkin separability") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t d = 1 + rng() % 3;
    const std::size_t n = 1 + rng() % 6;
    const auto pts = oracle::random_points(rng, n, d, 3);
    const auto got = realizable_halfspace_subsets(pts);
    const auto want = oracle::separable_subsets(pts);
    CHECK(got.sets() == std::vector<Mask>(want.begin(), want.end()));
  }
  // Collinear and cospherical configurations.
  const std::vector<Point> line{Point{0, 0}, Point{1, 1}, Point{2, 2}, Point{3, 3}};
  const auto ws = oracle::separable_subsets(line);
  CHECK(realizable_halfspace_subsets(line).sets() == std::vector<Mask>(ws.begin(), ws.end()));
  CHECK(realizable_halfspace_subsets({}).sets() == std::vector<Mask>{0});
  CHECK_THROWS_AS(realizable_halfspace_subsets({Point{1, 1}, Point{1, 1}}), std::invalid_argument);
}

TEST_CASE("half-spaces in the plane have VC-dimension 3") {
  const std::vector<Point> tri{Point{0, 0}, Point{1, 0}, Point{0, 1}};
  CHECK(vc_dim(realizable_halfspace_subsets(tri)).dim == 3);
  const std::vector<Point> square{Point{0, 0}, Point{1, 0}, Point{0, 1}, Point{1, 1}};
  CHECK(vc_dim(realizable_halfspace_subsets(square)).dim == 3);
}

TEST_CASE("induced systems") {
  const std::vector<Point> pts{Point{1, 1}, Point{4, 1}, Point{1, 4}};
  const auto s = induced_system_points_in_halfspaces(pts, {RestrictedHalfspace({2, 2}, 1), RestrictedHalfspace({8, 1}, 2)});
  CHECK(s.sets() == std::vector<Mask>{0b001, 0b011});
  const std::vector<DualHyperplane> hs{dual_point_to_hyperplane(Point{0, 1}), dual_point_to_hyperplane(Point{0, 5})};
  const auto t = induced_system_hyperplanes_in_simplices(hs, {OpenSimplex({Point{0, 0}, Point{0, 2}})});
  CHECK(t.sets() == std::vector<Mask>{0b01});
}
