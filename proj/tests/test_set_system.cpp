#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "shatter/set_system.hpp"

using namespace shatter;

TEST_CASE("masks and index lists") {
  CHECK(full_mask(0) == 0);
  CHECK(full_mask(64) == ~Mask{0});
  CHECK(indices_to_mask({0, 2, 5}, 6) == 0b100101);
  CHECK(mask_to_indices(0b100101) == std::vector<std::size_t>{0, 2, 5});
  CHECK_THROWS_AS(indices_to_mask({6}, 6), std::invalid_argument);
  CHECK(lex_less(0b011, 0b101));   // {0,1} < {0,2}
  CHECK(lex_less(0b001, 0b011));   // prefix first
  CHECK_FALSE(lex_less(0b100, 0b010));
}

TEST_CASE("construction validates and canonicalizes") {
  SetSystem s(3, {0b110, 0b001, 0b110});
  CHECK(s.size() == 2);
  CHECK(s.duplicates_dropped() == 1);
  CHECK(s.sets() == std::vector<Mask>{0b001, 0b110});
  CHECK_THROWS_AS(SetSystem(2, {0b100}), std::invalid_argument);
  CHECK_THROWS_AS(SetSystem(65, {}), std::invalid_argument);
  CHECK_THROWS_AS(SetSystem::from_index_lists(3, {{1, 0}}), std::invalid_argument);
  CHECK_THROWS_AS(SetSystem::from_index_lists(3, {{1, 1}}), std::invalid_argument);
  CHECK(SetSystem::from_index_lists(3, {{0, 2}, {}}) == SetSystem(3, {0b101, 0}));
}

TEST_CASE("vc dimension on small fixed systems") {
  CHECK(vc_dim(SetSystem::powerset(4)).dim == 4);
  CHECK(vc_dim(SetSystem::powerset(4)).witness == 0b1111);
  CHECK(vc_dim(SetSystem(3, {0})).dim == 0);
  CHECK_THROWS_AS(vc_dim(SetSystem(3, {})), std::invalid_argument);

  // Intervals on a line of 4 points shatter exactly 2 points.
  std::vector<Mask> intervals{0};
  for (std::size_t a = 0; a < 4; ++a)
    for (std::size_t b = a; b < 4; ++b) intervals.push_back(full_mask(b + 1) & ~full_mask(a));
  const auto vc = vc_dim(SetSystem(4, intervals));
  CHECK(vc.dim == 2);
  CHECK(vc.witness == 0b0011);  // lexicographically smallest shattered pair
}

TEST_CASE("vc dimension agrees with the brute-force oracle") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + rng() % 8;
    const auto s = oracle::random_system(rng, n, 40);
    const auto vc = vc_dim(s);
    CHECK(vc.dim == oracle::brute_vc_dim(s));
    CHECK(shatters(s, vc.witness));
    CHECK(static_cast<std::size_t>(std::popcount(vc.witness)) == vc.dim);
  }
}

TEST_CASE("projection and shattering") {
  const auto s = SetSystem(4, {0b0001, 0b0110, 0b1111});
  const auto p = project(s, 0b1010);  // elements 1 and 3 become 0 and 1
  CHECK(p.ground_size() == 2);
  CHECK(p.sets() == std::vector<Mask>{0b00, 0b01, 0b11});
  CHECK(project(s, 0).sets() == std::vector<Mask>{0});
  CHECK(shatters(SetSystem::powerset(3), 0b101));
  CHECK_FALSE(shatters(s, 0b0011));
  CHECK(shatters(s, 0));
}

TEST_CASE("k-fold closures match tuple enumeration") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + rng() % 7;
    const auto s = oracle::random_system(rng, n, 8);
    for (std::size_t k = 1; k <= 3; ++k) {
      const auto u = oracle::brute_k_fold(s, k, true);
      const auto i = oracle::brute_k_fold(s, k, false);
      CHECK(k_fold_union(s, k).sets() == std::vector<Mask>(u.begin(), u.end()));
      CHECK(k_fold_intersection(s, k).sets() == std::vector<Mask>(i.begin(), i.end()));
    }
  }
  CHECK_THROWS_AS(k_fold_union(SetSystem::powerset(2), 0), std::invalid_argument);
}

TEST_CASE("De Morgan between k-fold union and intersection") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 100; ++trial) {
    const auto s = oracle::random_system(rng, 1 + rng() % 8, 12);
    for (std::size_t k = 1; k <= 3; ++k) {
      CHECK(complement_system(k_fold_intersection(s, k)) == k_fold_union(complement_system(s), k));
    }
  }
}

TEST_CASE("growth function and the Sauer-Shelah bound") {
  CHECK(growth_function(SetSystem::powerset(5), 3) == 8);
  CHECK(growth_function(SetSystem(3, {}), 2) == 0);
  CHECK_THROWS_AS(growth_function(SetSystem::powerset(2), 3), std::invalid_argument);

  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + rng() % 8;
    const auto s = oracle::random_system(rng, n, 40);
    const std::size_t v = vc_dim(s).dim;
    for (std::size_t m = 0; m <= n; ++m) {
      std::size_t bound = 0, binom = 1;
      for (std::size_t i = 0; i <= std::min(v, m); ++i) {
        bound += binom;
        binom = binom * (m - i) / (i + 1);
      }
      const std::size_t g = growth_function(s, m);
      CHECK(g <= bound);
      CHECK(g <= (std::size_t{1} << m));
      if (m <= v) CHECK(g == (std::size_t{1} << m));
    }
  }
}
