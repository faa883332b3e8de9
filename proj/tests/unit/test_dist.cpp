#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "cohesion/dist.hpp"
#include "cohesion/error.hpp"
#include "fixtures.hpp"

using namespace cohesion;
using fixtures::make;

TEST_SUITE("dist") {

TEST_CASE("from_atoms validates shape, range and mass") {
  CHECK_THROWS_AS(make(2, 2, {{{0, 0}, 0.5}, {{1, 1}, 0.4}}), Error);
  CHECK_THROWS_AS(make(2, 2, {{{0, 2}, 1.0}}), Error);
  CHECK_THROWS_AS(make(2, 2, {{{0, 1}, 1.5}, {{1, 1}, -0.5}}), Error);
  CHECK_THROWS_AS(make(2, 2, {{{0, 1}, 0.5}, {{0, 1}, 0.5}}), Error);
  CHECK_THROWS_AS(make(2, 2, {{{0}, 1.0}}), Error);
  CHECK_NOTHROW(make(2, 2, {{{0, 1}, 0.5}, {{1, 1}, 0.5 + 5e-13}}));

  auto p = JointDistribution::from_atoms(2, 2, {{{1, 1}, 3.0}, {{0, 0}, 1.0}}, JointDistribution::Normalize::yes);
  REQUIRE(p.size() == 2);
  CHECK(p.mass(0) == doctest::Approx(0.25));
  CHECK(p.outcome(0)[0] == 0);
}

TEST_CASE("zero-mass atoms are dropped and atoms are sorted") {
  auto p = make(2, 3, {{{2, 1}, 0.5}, {{0, 2}, 0.0}, {{1, 0}, 0.5}});
  REQUIRE(p.size() == 2);
  CHECK(p.outcome(0)[0] == 1);
  CHECK(p.outcome(1)[0] == 2);
  CHECK(p.mass_of(std::vector<Symbol>{0, 2}) == 0.0);
}

TEST_CASE("dense round trip uses X0 as the most significant digit") {
  std::vector<double> d(9, 0.0);
  d[1 * 3 + 2] = 0.25;  // (1,2)
  d[2 * 3 + 0] = 0.75;  // (2,0)
  auto p = JointDistribution::from_dense(2, 3, d);
  CHECK(p.mass_of(std::vector<Symbol>{1, 2}) == 0.25);
  CHECK(p.mass_of(std::vector<Symbol>{2, 0}) == 0.75);
  CHECK(p.dense() == d);
}

TEST_CASE("marginalize") {
  SUBCASE("parity pair marginal is uniform") {
    auto m = marginalize(fixtures::parity3(), SubsetMask::of({0, 1}));
    CHECK(m.n() == 2);
    REQUIRE(m.size() == 4);
    for (std::size_t i = 0; i < 4; ++i) CHECK(m.mass(i) == doctest::Approx(0.25));
  }
  SUBCASE("full set gives p back") {
    auto p = fixtures::redundant_synergy();
    CHECK(marginalize(p, SubsetMask::full(4)) == p);
  }
  SUBCASE("product of two fair bits") {
    auto m = marginalize(JointDistribution::uniform(2, 2), SubsetMask::single(0));
    REQUIRE(m.size() == 2);
    CHECK(m.mass(0) == doctest::Approx(0.5));
  }
  SUBCASE("empty subset is an error") {
    CHECK_THROWS_WITH_AS(marginalize(fixtures::parity3(), SubsetMask{}), doctest::Contains("empty subset"), Error);
  }
  SUBCASE("mass is preserved") {
    std::mt19937_64 rng(7);
    for (int t = 0; t < 50; ++t) {
      auto p = fixtures::random_distribution(4, 3, rng);
      for (std::uint32_t s = 1; s < 16; ++s) {
        double tot = 0.0;
        const auto m = marginalize(p, SubsetMask(s));
        for (double v : m.masses()) tot += v;
        CHECK(tot == doctest::Approx(1.0).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("entropy") {
  CHECK(entropy(fixtures::bijective3(), 2.0).value == doctest::Approx(1.0));
  CHECK(entropy(point_mass(3, 2, {1, 0, 1}), 2.0).value == 0.0);
  CHECK(entropy(fixtures::rs_quaternary()).value == doctest::Approx(2.0));
  CHECK(entropy(fixtures::rs_quaternary()).base == 4.0);
}

TEST_CASE("subset entropy") {
  auto parity = fixtures::parity3();
  for (int i = 0; i < 3; ++i) CHECK(subset_entropy(parity, SubsetMask::single(i), 2.0).value == doctest::Approx(1.0));
  auto rs = fixtures::rs_quaternary();
  for (auto s : masks_of_size(4, 2)) CHECK(subset_entropy(rs, s, 4.0).value == doctest::Approx(2.0));
  CHECK(subset_entropy(rs, SubsetMask{}, 4.0).value == 0.0);
}

TEST_CASE("entropy matches the brute-force oracle") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 100; ++t) {
    auto p = fixtures::random_distribution(4, 3, rng);
    for (std::uint32_t s = 1; s < 16; ++s) {
      CHECK(subset_entropy(p, SubsetMask(s), 2.0).value ==
            doctest::Approx(fixtures::oracle_entropy(p, fixtures::bits_to_vars(s), 2.0)).epsilon(1e-12));
    }
  }
}

TEST_CASE("base conversion") {
  EntropyValue v{2.0, 4.0};
  CHECK(v.in_base(2.0).value == doctest::Approx(4.0));
  CHECK(v.in_base(2.0).in_base(4.0).value == doctest::Approx(2.0));
}

TEST_CASE("kl divergence") {
  auto p = fixtures::redundant_synergy();
  CHECK(kl_divergence(p, p, 2.0) == 0.0);
  auto b = fixtures::bijective3();
  CHECK(kl_divergence(b, product_of_marginals(b), 2.0) == doctest::Approx(2.0));
  CHECK(kl_divergence(b, point_mass(3, 2, {0, 0, 0}), 2.0) == std::numeric_limits<double>::infinity());
}

TEST_CASE("permutation relabels variables") {
  auto p = fixtures::redundant_synergy();
  std::vector<int> perm{3, 2, 1, 0};
  auto r = p.permuted(perm);
  for (std::size_t i = 0; i < r.size(); ++i) {
    std::vector<Symbol> back{r.outcome(i)[3], r.outcome(i)[2], r.outcome(i)[1], r.outcome(i)[0]};
    CHECK(p.mass_of(back) == r.mass(i));
  }
}

TEST_CASE("dense gate") {
  CHECK(dense_index_bits(4, 4) == 8);
  CHECK(dense_index_bits(3, 3) == 5);
  CHECK_THROWS_AS(outcome_count(30, 2), Error);
  CHECK(outcome_count(4, 3) == 81);
}

}  // TEST_SUITE
