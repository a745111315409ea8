#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "pythmod/error.hpp"
#include "pythmod/pythagorean.hpp"

using namespace pythmod;

TEST_CASE("factorize") {
  using F = std::vector<std::pair<std::uint64_t, int>>;
  CHECK(factorize(1).empty());
  CHECK(factorize(360) == F{{2, 3}, {3, 2}, {5, 1}});
  CHECK(factorize(1'000'000'007ULL) == F{{1'000'000'007ULL, 1}});
  CHECK(factorize(999'999'999'989ULL * 3ULL) == F{{3, 1}, {999'999'999'989ULL, 1}});
  CHECK(factorize(1'000'003ULL * 1'000'033ULL) == F{{1'000'003ULL, 1}, {1'000'033ULL, 1}});
  CHECK_THROWS_AS(factorize(0), Error);
}

TEST_CASE("r2") {
  CHECK(r2(0) == 1);
  CHECK(r2(1) == 4);
  CHECK(r2(3) == 0);
  CHECK(r2(25) == 12);
  for (std::uint64_t m = 1; m <= 10'000; ++m) REQUIRE(r2(m) == oracle::r2_by_search(static_cast<std::int64_t>(m)));
  CHECK(r2(1'000'000'000'000'000'000ULL) == 4 * 19);
  CHECK_THROWS_AS(r2(1'000'000'000'000'000'001ULL), Error);
}

TEST_CASE("count_pythagorean") {
  CHECK(count_pythagorean(0) == 1);
  CHECK(count_pythagorean(5) == 57);
  std::uint64_t prev = 0;
  for (std::int64_t N = 0; N <= 200; ++N) {
    const std::uint64_t c = count_pythagorean(N);
    REQUIRE(c == oracle::pythagorean_by_search(N));
    REQUIRE(c > prev);
    prev = c;
  }
  CHECK(count_pythagorean(500) == oracle::pythagorean_by_search(500));
  const double big = static_cast<double>(count_pythagorean(1'000'000));
  CHECK(big / pythagorean_asymptotic(1e6) == doctest::Approx(1.0).epsilon(0.15));
  CHECK_THROWS_AS(count_pythagorean(-1), Error);
  CHECK_THROWS_AS(count_pythagorean(10'000'001), Error);
}

TEST_CASE("dual triple counts") {
  CHECK(cube_triple_count(0) == 0);
  CHECK(cube_triple_count(5) == 56);
  CHECK(dual_triple_count(5, 1'000'000) == 56);
  CHECK(dual_triple_count(3, 7) == 48);
  CHECK(cube_triple_count(3) == 24);
  // Direct search for a small wrapping modulus.
  for (auto [L, M] : {std::pair{4, 7}, std::pair{6, 49}, std::pair{10, 121}}) {
    std::uint64_t c = 0;
    for (int a = -L; a <= L; ++a)
      for (int b = -L; b <= L; ++b)
        for (int d = -L; d <= L; ++d)
          if ((a || b || d) && oracle::mod(a * a + b * b - d * d, M) == 0) ++c;
    REQUIRE(dual_triple_count(L, static_cast<std::uint64_t>(M)) == c);
  }
  CHECK_THROWS_AS(dual_triple_count(10'001, 7), Error);
}
