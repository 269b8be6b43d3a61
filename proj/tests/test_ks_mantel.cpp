#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "ownerscope/error.hpp"
#include "ownerscope/stats/correlation.hpp"
#include "ownerscope/stats/ks.hpp"
#include "ownerscope/stats/mantel.hpp"
#include "support.hpp"

using namespace ownerscope;
using namespace ownerscope::stats;

using vec = std::vector<double>;

namespace {

// Random symmetric distance matrix with a zero diagonal, row-major.
vec random_distance_matrix(std::mt19937_64& gen, std::size_t n) {
  std::uniform_real_distribution<double> dist(0.05, 1.0);
  vec m(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      m[i * n + j] = m[j * n + i] = dist(gen);
    }
  }
  return m;
}

vec upper(const vec& m, std::size_t n, const std::vector<std::size_t>& perm) {
  vec entries;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      entries.push_back(m[perm[i] * n + perm[j]]);
    }
  }
  return entries;
}

}  // namespace

TEST_SUITE("ks") {

TEST_CASE("identical samples have zero statistic and p = 1") {
  const vec sample = {3, 1, 4, 1, 5};
  const auto result = ks_two_sample(sample, sample);
  CHECK(result.d == 0.0);
  CHECK(result.p == 1.0);
}

TEST_CASE("disjoint supports have statistic 1") {
  CHECK(ks_two_sample(vec{0, 0, 0}, vec{1, 1, 1}).d == 1.0);
}

TEST_CASE("hand-traced ECDF comparison") {
  const auto result = ks_two_sample(vec{1, 2, 3, 4}, vec{1, 2, 3, 5});
  CHECK(result.d == doctest::Approx(0.25).epsilon(1e-15));
}

TEST_CASE("empty samples are rejected") {
  CHECK_THROWS_AS(ks_two_sample(vec{}, vec{1}), Error);
  CHECK_THROWS_AS(ks_two_sample(vec{1}, vec{}), Error);
}

TEST_CASE("statistic invariant under a common strictly increasing transform") {
  std::mt19937_64 gen(11);
  for (int trial = 0; trial < 100; ++trial) {
    const auto a = testsupport::random_vector(gen, 5 + gen() % 40);
    const auto b = testsupport::random_vector(gen, 5 + gen() % 40);
    auto fa = a, fb = b;
    for (auto& v : fa) v = std::atan(v) * 3.0 + 7.0;
    for (auto& v : fb) v = std::atan(v) * 3.0 + 7.0;
    CHECK(ks_two_sample(a, b).d == ks_two_sample(fa, fb).d);
  }
}

TEST_CASE("survival function bounds and monotonicity") {
  CHECK(kolmogorov_sf(0.0) == 1.0);
  CHECK(kolmogorov_sf(10.0) == doctest::Approx(0.0).epsilon(1e-12));
  double previous = 1.0;
  for (double z = 0.05; z < 3.0; z += 0.05) {
    const double p = kolmogorov_sf(z);
    CHECK(p <= previous + 1e-12);
    CHECK(p >= 0.0);
    CHECK(p <= 1.0);
    previous = p;
  }
  // frozen 40-digit oracle values straddling the series switch at z = 0.755
  CHECK(kolmogorov_sf(0.7549) == doctest::Approx(0.618924167852).epsilon(1e-9));
  CHECK(kolmogorov_sf(0.7551) == doctest::Approx(0.618588008180).epsilon(1e-9));
  CHECK(kolmogorov_sf(0.5) == doctest::Approx(0.963945243665).epsilon(1e-9));
  CHECK(kolmogorov_sf(1.0) == doctest::Approx(0.269999671677).epsilon(1e-9));
}

}  // TEST_SUITE

TEST_SUITE("mantel") {

TEST_CASE("identity comparison: r = 1, sampled p_greater = 1/(permutations+1)") {
  // 8! = 40320 permutations keeps the sampled branch active and makes a
  // chance identity draw (which would tie r = 1) vanishingly unlikely.
  std::mt19937_64 gen(12);
  const std::size_t n = 8;
  const auto a = random_distance_matrix(gen, n);
  const auto result = mantel(a, a, n, 999, 5);
  CHECK_FALSE(result.exhaustive);
  CHECK(result.r == 1.0);
  CHECK(result.p_greater == doctest::Approx(1.0 / 1000.0).epsilon(1e-15));
  CHECK(result.p_less == 1.0);
}

TEST_CASE("fixed seed reproduces bit-identical results") {
  std::mt19937_64 gen(13);
  const std::size_t n = 8;
  const auto a = random_distance_matrix(gen, n);
  const auto b = random_distance_matrix(gen, n);
  const auto r1 = mantel(a, b, n, 499, 77);
  const auto r2 = mantel(a, b, n, 499, 77);
  CHECK(r1.r == r2.r);
  CHECK(r1.p_greater == r2.p_greater);
  CHECK(r1.p_less == r2.p_less);
}

TEST_CASE("3x3 case matches exhaustive enumeration over all 6 permutations") {
  std::mt19937_64 gen(14);
  for (int trial = 0; trial < 50; ++trial) {
    const auto a = random_distance_matrix(gen, 3);
    const auto b = random_distance_matrix(gen, 3);
    const auto result = mantel(a, b, 3, 999, trial);
    CHECK(result.exhaustive);
    CHECK(result.permutations == 6);

    // independent oracle: enumerate every relabeling of b by hand
    std::vector<std::size_t> identity = {0, 1, 2};
    const auto ua = upper(a, 3, identity);
    const auto r_obs = *pearson(ua, upper(b, 3, identity));
    int ge = 0, le = 0;
    std::vector<std::size_t> perm = identity;
    do {
      const double r = *pearson(ua, upper(b, 3, perm));
      if (r >= r_obs) ++ge;
      if (r <= r_obs) ++le;
    } while (std::next_permutation(perm.begin(), perm.end()));
    CHECK(result.r == r_obs);
    CHECK(result.p_greater == doctest::Approx(ge / 6.0).epsilon(1e-15));
    CHECK(result.p_less == doctest::Approx(le / 6.0).epsilon(1e-15));
  }
}

TEST_CASE("shape and symmetry validation") {
  std::mt19937_64 gen(15);
  const auto a = random_distance_matrix(gen, 4);
  CHECK_THROWS_AS(mantel(a, random_distance_matrix(gen, 5), 4, 99, 1), Error);
  auto skewed = a;
  skewed[1] += 0.5;  // breaks symmetry
  CHECK_THROWS_AS(mantel(a, skewed, 4, 99, 1), Error);
  auto dirty = a;
  dirty[0] = 0.2;  // non-zero diagonal
  CHECK_THROWS_AS(mantel(a, dirty, 4, 99, 1), Error);
}

TEST_CASE("null p-values are approximately uniform") {
  // Independent random matrices: over 200 seeded trials the rejection rate
  // at 0.05 must sit near its nominal level.
  std::mt19937_64 gen(16);
  int rejections = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const auto a = random_distance_matrix(gen, 8);
    const auto b = random_distance_matrix(gen, 8);
    const auto result = mantel(a, b, 8, 199, 1000 + trial);
    if (result.p_greater < 0.05) ++rejections;
  }
  const double fraction = rejections / 200.0;
  CHECK(fraction >= 0.01);
  CHECK(fraction <= 0.10);
}

}  // TEST_SUITE
