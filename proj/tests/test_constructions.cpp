#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "shatter/bundled.hpp"
#include "shatter/constructions.hpp"
#include "shatter/errors.hpp"

using namespace shatter;

TEST_CASE("rescaling to powers of d+1") {
  const auto r = rescale({Point{ratio(1, 2)}, Point{3}, Point{ratio(1, 2)}}, 4);
  CHECK(r.points == std::vector<Point>{Point{5}, Point{25}, Point{5}});
  CHECK(r.alpha[0].original == std::vector<Rational>{ratio(1, 2), 3});
  CHECK_THROWS_AS(rescale({Point{0}}, 4), std::invalid_argument);
}

TEST_CASE("snapping anchored boxes") {
  const auto r = rescale({Point{1, 10}, Point{2, 20}, Point{4, 30}}, 4);
  CHECK(snap_anchored_box(AxisBox::anchored({2, 25}), r.alpha).hi == std::vector<Rational>{25, 25});
  CHECK(snap_anchored_box(AxisBox::anchored({ratio(1, 2), 100}), r.alpha).hi == std::vector<Rational>{1, 125});
}

TEST_CASE("box to half-space keeps membership strict") {
  const RestrictedHalfspace h = box_to_halfspace(AxisBox::anchored({5, 25, 125}), 3);
  CHECK(h.tau == ratio(7, 2));
  CHECK(h.weighted_sum(Point{5, 25, 125}) == 3);
  CHECK(halfspace_contains(h, Point{5, 25, 125}));
  CHECK_FALSE(halfspace_contains(h, Point{5, 100, 125}));
  CHECK(h.weighted_sum(Point{5, 100, 5}) >= 4);
}

TEST_CASE("thresholds stay inside (d, d+1)") {
  for (std::size_t d : {4, 6, 10}) {
    for (std::size_t k : {2, 3, 8}) {
      for (std::size_t attempt = 0; attempt < 20; ++attempt) {
        for (std::size_t j = 0; j < k; ++j) {
          const auto t = witness_threshold(d, k, j, attempt);
          CHECK(t > static_cast<long>(d));
          CHECK(t < static_cast<long>(d + 1));
        }
      }
    }
  }
  CHECK(witness_threshold(4, 2, 0) == ratio(9, 2));
  CHECK(witness_threshold(4, 2, 1) == ratio(37, 8));
}

TEST_CASE("pipeline membership matches box membership") {
  // For every gadget box B and every menu point q: lifted(B) lies in the
  // half-space of q's snapped anchored box iff q lies in B.
  const auto& inst = bundled_instance();
  const auto cands = candidate_points(inst.gadget);
  for (const auto& q : cands) {
    const auto h = box_to_halfspace(snap_anchored_box(anchored_box_of(q), inst.alpha), inst.d);
    for (std::size_t i = 0; i < inst.points.size(); ++i) {
      CHECK(halfspace_contains(h, inst.points[i]) == box_contains(inst.gadget.boxes[i], q));
      const Rational s = h.weighted_sum(inst.points[i]);
      CHECK((s <= static_cast<long>(inst.d) || s >= static_cast<long>(inst.d + 1)));
    }
  }
}

TEST_CASE("bundled theorem 1 instance") {
  const auto& inst = bundled_instance();
  CHECK(inst.points.size() == 5);
  CHECK(gadget_order_for(2) == 2);
  CHECK(gadget_order_for(3) == 2);
  CHECK(gadget_order_for(4) == 3);
  CHECK(build_theorem1(4, 3, bundled_gadget()).points == inst.points);
  for (const auto& p : inst.points)
    for (const auto& c : p.coords) CHECK(c > 0);

  const auto r = verify_theorem1(inst, VerifyMode::exhaustive());
  CHECK(r.shattered);
  CHECK(r.subsets_checked == 32);
  CHECK(r.max_witness_size <= 2);

  CHECK(union_witness(inst, 0).size() >= 1);
  CHECK_THROWS_AS(union_witness(inst, 0b100000), std::invalid_argument);
}

TEST_CASE("theorem 1 preconditions") {
  const auto& g = bundled_gadget();
  CHECK_THROWS_AS(build_theorem1(5, 2, g), std::invalid_argument);
  CHECK_THROWS_AS(build_theorem1(2, 2, g), std::invalid_argument);
  CHECK_THROWS_AS(build_theorem1(6, 2, g), std::invalid_argument);  // dim 3 expected
  CHECK_THROWS_AS(build_theorem1(4, 4, g), std::invalid_argument);  // n = 3 expected
  CHECK_THROWS_AS(build_theorem1(4, 1, g), std::invalid_argument);
  BoxGadget unverified = g;
  unverified.verified = false;
  CHECK_THROWS_AS(build_theorem1(4, 2, unverified), ConstructionFailure);
}

TEST_CASE("mutating a point breaks verification") {
  for (std::size_t i = 0; i < 5; ++i) {
    auto inst = bundled_instance();
    inst.points[i][0] *= static_cast<long>(inst.d + 1);
    CHECK_FALSE(verify_theorem1(inst, VerifyMode::exhaustive()).shattered);
  }
}

TEST_CASE("sampling is reproducible") {
  const auto& inst = bundled_instance();
  const auto a = verification_subsets(inst.points.size(), VerifyMode::sample(50, 9));
  CHECK(a == verification_subsets(inst.points.size(), VerifyMode::sample(50, 9)));
  CHECK(a != verification_subsets(inst.points.size(), VerifyMode::sample(50, 10)));
  CHECK(verify_theorem1(inst, VerifyMode::sample(50, 9)).subsets_checked == 50);
  CHECK_THROWS_AS(verification_subsets(25, VerifyMode::exhaustive()), GuardError);
}

TEST_CASE("bundled theorem 2 instance") {
  const auto inst2 = build_theorem2(bundled_instance());
  CHECK(inst2.hyperplanes.size() == 5);
  for (std::size_t i = 0; i < 5; ++i) CHECK(inst2.hyperplanes[i].p == bundled_instance().points[i]);

  auto mode = VerifyMode::exhaustive();
  mode.compute_vc_dim = true;
  const auto r = verify_theorem2(inst2, mode);
  CHECK(r.shattered);
  CHECK(r.zero_sign_evaluations == 0);
  CHECK(r.max_simplex_dim <= 2);
  CHECK(r.vc_dim == 5);

  // Every simplex is checked against the independent point search as well.
  for (Mask s = 0; s < 32; ++s) {
    const auto simplex = simplex_witness(inst2, s);
    for (std::size_t h = 0; h < 5; ++h) {
      CHECK(oracle::simplex_meets_by_search(simplex, inst2.hyperplanes[h]) == bool((s >> h) & 1));
    }
  }
}

TEST_CASE("a far apex breaks the simplex construction") {
  const auto inst2 = build_theorem2(bundled_instance());
  Rational top = 0;
  for (const auto& p : bundled_instance().points) top = std::max(top, p[3]);
  SimplexOptions opt;
  opt.apex_height = top * 2;
  CHECK_FALSE(verify_theorem2(inst2, VerifyMode::exhaustive(), opt).shattered);
}

TEST_CASE("De Morgan on the induced finite systems") {
  const auto& inst = bundled_instance();
  std::vector<RestrictedHalfspace> family;
  for (Mask s = 0; s < 32; ++s) {
    const auto w = union_witness(inst, s);
    family.insert(family.end(), w.begin(), w.end());
  }
  const auto sys = induced_system_points_in_halfspaces(inst.points, family);
  for (std::size_t k = 1; k <= 3; ++k) {
    CHECK(complement_system(k_fold_intersection(sys, k)) == k_fold_union(complement_system(sys), k));
  }
  CHECK(vc_dim(k_fold_union(sys, 2)).dim >= inst.points.size());
}

TEST_CASE("soundness on searched gadgets") {
  // Fresh gadgets from other seeds drive the whole pipeline.
  for (std::uint64_t seed : {2, 3, 4}) {
    auto found = search(2, 2, seed, 20000);
    REQUIRE(found.gadget.has_value());
    const auto inst = build_theorem1(4, 2, *found.gadget);
    CHECK(verify_theorem1(inst, VerifyMode::exhaustive()).shattered);
    const auto r2 = verify_theorem2(build_theorem2(inst), VerifyMode::exhaustive());
    CHECK(r2.shattered);
    CHECK(r2.zero_sign_evaluations == 0);
  }
}
