#include <doctest.h>

#include <random>

#include "ownerscope/error.hpp"
#include "ownerscope/stats/correlation.hpp"
#include "support.hpp"

using namespace ownerscope;
using namespace ownerscope::stats;

using vec = std::vector<double>;

TEST_SUITE("correlation") {

TEST_CASE("pearson on exact linear relations") {
  const std::vector<double> x = {1, 2, 3};
  CHECK(*pearson(x, vec{2, 4, 6}) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(*pearson(x, vec{3, 2, 1}) == doctest::Approx(-1.0).epsilon(1e-15));
  CHECK_FALSE(pearson(vec{1, 1, 1}, x).has_value());
  CHECK_FALSE(pearson(x, vec{4, 4, 4}).has_value());
}

TEST_CASE("pearson argument checks") {
  CHECK_THROWS_AS(pearson(vec{1, 2}, vec{1, 2, 3}), Error);
  CHECK_THROWS_AS(pearson(vec{1}, vec{1}), Error);
}

TEST_CASE("rank_with_ties examples") {
  CHECK(rank_with_ties(std::vector<double>{10, 20, 20, 30}) ==
        std::vector<double>{1, 2.5, 2.5, 4});
  CHECK(rank_with_ties(std::vector<double>{5}) == std::vector<double>{1});
  CHECK(rank_with_ties(std::vector<double>{1, 3, 9}) == std::vector<double>{1, 2, 3});
}

TEST_CASE("spearman examples") {
  CHECK(*spearman(vec{1, 2, 3, 4}, vec{1, 3, 2, 4}) == doctest::Approx(0.8).epsilon(1e-12));
  CHECK(*spearman(vec{1, 2, 3}, vec{3, 2, 1}) == doctest::Approx(-1.0).epsilon(1e-15));
  // rank invariance under strictly monotone transforms
  const std::vector<double> x = {0.3, 2.5, 1.1, 9.0, 4.2};
  std::vector<double> cubed = x;
  for (auto& v : cubed) v = v * v * v;
  CHECK(*spearman(x, cubed) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("kendall examples") {
  CHECK(*kendall(vec{1, 2, 3}, vec{1, 3, 2}) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(*kendall(vec{4, 8, 15}, vec{4, 8, 15}) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(*kendall(vec{1, 2, 3}, vec{3, 2, 1}) == doctest::Approx(-1.0).epsilon(1e-15));
  CHECK_FALSE(kendall(vec{2, 2, 2}, vec{1, 2, 3}).has_value());
}

TEST_CASE("kendall matches pair enumeration exactly, ties included") {
  std::mt19937_64 gen(42);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 2 + gen() % 199;
    const int tie_range = trial % 3 == 0 ? 5 : (trial % 3 == 1 ? 25 : 0);
    const auto x = testsupport::random_vector(gen, n, tie_range);
    const auto y = testsupport::random_vector(gen, n, tie_range);
    const auto fast = kendall(x, y);
    if (!fast) continue;  // constant draw
    CHECK(*fast == testsupport::kendall_bruteforce(x, y));
  }
}

TEST_CASE("spearman equals pearson on ranks by construction") {
  std::mt19937_64 gen(43);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 3 + gen() % 60;
    const auto x = testsupport::random_vector(gen, n, trial % 2 ? 8 : 0);
    const auto y = testsupport::random_vector(gen, n, trial % 2 ? 8 : 0);
    const auto direct = spearman(x, y);
    const auto via_ranks = pearson(rank_with_ties(x), rank_with_ties(y));
    CHECK(direct.has_value() == via_ranks.has_value());
    if (direct) CHECK(*direct == *via_ranks);
  }
}

TEST_CASE("coefficients stay in [-1,1] and are symmetric in their arguments") {
  std::mt19937_64 gen(44);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + gen() % 40;
    const auto x = testsupport::random_vector(gen, n, 6);
    const auto y = testsupport::random_vector(gen, n, 6);
    for (auto f : {pearson, spearman, kendall}) {
      const auto ab = f(x, y);
      const auto ba = f(y, x);
      CHECK(ab.has_value() == ba.has_value());
      if (!ab) continue;
      CHECK(*ab >= -1.0);
      CHECK(*ab <= 1.0);
      CHECK(*ab == doctest::Approx(*ba).epsilon(1e-12));
    }
  }
}

TEST_CASE("pearson invariant under positive affine transforms") {
  std::mt19937_64 gen(45);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 3 + gen() % 50;
    const auto x = testsupport::random_vector(gen, n);
    const auto y = testsupport::random_vector(gen, n);
    std::vector<double> scaled = x;
    for (auto& v : scaled) v = 3.5 * v + 11.0;
    const auto base = pearson(x, y);
    const auto transformed = pearson(scaled, y);
    REQUIRE(base.has_value());
    CHECK(*base == doctest::Approx(*transformed).epsilon(1e-12));
  }
}

TEST_CASE("rank-based coefficients invariant under strictly increasing transforms") {
  std::mt19937_64 gen(46);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 3 + gen() % 50;
    const auto x = testsupport::random_vector(gen, n, 9);
    const auto y = testsupport::random_vector(gen, n, 9);
    std::vector<double> warped = x;
    for (auto& v : warped) v = std::exp(v / 4.0);
    const auto s0 = spearman(x, y), s1 = spearman(warped, y);
    const auto k0 = kendall(x, y), k1 = kendall(warped, y);
    CHECK(s0.has_value() == s1.has_value());
    if (s0) CHECK(*s0 == doctest::Approx(*s1).epsilon(1e-12));
    CHECK(k0.has_value() == k1.has_value());
    if (k0) CHECK(*k0 == doctest::Approx(*k1).epsilon(1e-12));
  }
}

}  // TEST_SUITE
