#include <random>
#include <set>
#include <tuple>

#include "doctest.h"
#include "oracles.hpp"
#include "pythmod/circle.hpp"

using namespace pythmod;

namespace {

std::vector<std::uint64_t> values(const std::vector<Residue>& rs) {
  std::vector<std::uint64_t> out;
  for (const auto& r : rs) out.push_back(r.value());
  return out;
}

}  // namespace

TEST_CASE("s_of_p") {
  CHECK(s_of_p(7) == 3);
  CHECK(s_of_p(13) == 5);
  CHECK(s_of_p(11) == 3);
}

TEST_CASE("param_point examples") {
  const auto a = param_point(2, PrimePowerModulus(7, 1));
  CHECK(a.y1.value() == 5);
  CHECK(a.y2.value() == 5);
  const auto b = param_point(2, PrimePowerModulus(7, 2));
  CHECK(b.y1.value() == 19);
  CHECK(b.y2.value() == 40);
  try {
    param_point(1, PrimePowerModulus(7, 1));
    FAIL("expected InadmissibleParameter");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InadmissibleParameter);
  }
  CHECK_THROWS_AS(param_point(5, PrimePowerModulus(13, 1)), Error);  // 1 + 25 = 0 mod 13
}

TEST_CASE("inverse_param examples") {
  CHECK(inverse_param(5, 5, PrimePowerModulus(7, 1)).value() == 2);
  CHECK(inverse_param(19, 40, PrimePowerModulus(7, 2)).value() == 2);
  try {
    inverse_param(1, 0, PrimePowerModulus(7, 1));
    FAIL("expected InvalidPoint");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidPoint);
  }
  CHECK_THROWS_AS(inverse_param(2, 3, PrimePowerModulus(7, 1)), Error);  // off the circle
}

TEST_CASE("enumerate_admissible_t examples") {
  CHECK(values(enumerate_admissible_t(PrimePowerModulus(7, 1))) == std::vector<std::uint64_t>{2, 3, 4, 5});
  const auto thirteen = values(enumerate_admissible_t(PrimePowerModulus(13, 1)));
  CHECK(thirteen == std::vector<std::uint64_t>{2, 3, 4, 6, 7, 9, 10, 11});
  CHECK(enumerate_admissible_t(PrimePowerModulus(7, 2)).size() == 28);
}

TEST_CASE("admissible count formula") {
  for (std::uint64_t p : {7, 11, 13, 17}) {
    for (int n : {1, 2, 3}) {
      const PrimePowerModulus m(p, n);
      std::uint64_t brute = 0;
      for (std::int64_t t = 0; t < static_cast<std::int64_t>(m.q()); ++t) brute += oracle::admissible(t, static_cast<std::int64_t>(p));
      REQUIRE(enumerate_admissible_t(m).size() == brute);
      REQUIRE(brute == admissible_count(m));
    }
  }
}

TEST_CASE("enumerate_circle_solutions examples") {
  const auto seven = enumerate_circle_solutions(PrimePowerModulus(7, 1));
  std::set<std::pair<std::uint64_t, std::uint64_t>> got;
  for (const auto& [a, b] : seven) got.emplace(a.value(), b.value());
  CHECK(got == std::set<std::pair<std::uint64_t, std::uint64_t>>{{5, 5}, {5, 2}, {2, 5}, {2, 2}});
  CHECK(enumerate_circle_solutions(PrimePowerModulus(13, 1)).size() == 8);
  CHECK(enumerate_circle_solutions(PrimePowerModulus(7, 2)).size() == 28);
  CHECK_THROWS_AS(enumerate_circle_solutions(PrimePowerModulus(7, 8)), Error);
}

TEST_CASE("circle enumeration matches a naive double loop") {
  for (auto [p, n] : {std::pair{7, 2}, std::pair{13, 2}, std::pair{11, 2}}) {
    const PrimePowerModulus m(p, n);
    const auto q = static_cast<std::int64_t>(m.q());
    std::set<std::pair<std::uint64_t, std::uint64_t>> naive;
    for (std::int64_t a = 0; a < q; ++a) {
      for (std::int64_t b = 0; b < q; ++b) {
        if (a % p != 0 && b % p != 0 && (a * a + b * b - 1) % q == 0) naive.emplace(a, b);
      }
    }
    std::set<std::pair<std::uint64_t, std::uint64_t>> fast;
    for (const auto& [a, b] : enumerate_circle_solutions(m)) fast.emplace(a.value(), b.value());
    REQUIRE(fast == naive);
  }
}

TEST_CASE("parametrization is a bijection onto unit circle points") {
  for (auto [p, n] : {std::pair{7, 1}, std::pair{13, 1}, std::pair{7, 2}, std::pair{7, 3}, std::pair{13, 2}}) {
    const PrimePowerModulus m(p, n);
    std::set<std::pair<std::uint64_t, std::uint64_t>> image;
    for (const auto& t : enumerate_admissible_t(m)) {
      const auto pt = param_point(static_cast<std::int64_t>(t.value()), m);
      const auto y1 = static_cast<std::int64_t>(pt.y1.value());
      const auto y2 = static_cast<std::int64_t>(pt.y2.value());
      REQUIRE(pt.y1.is_unit());
      REQUIRE(pt.y2.is_unit());
      REQUIRE((pt.y1 * pt.y1 + pt.y2 * pt.y2).value() == 1);
      REQUIRE(inverse_param(y1, y2, m) == t);
      REQUIRE(image.emplace(pt.y1.value(), pt.y2.value()).second);  // injective
    }
    std::set<std::pair<std::uint64_t, std::uint64_t>> circle;
    for (const auto& [a, b] : enumerate_circle_solutions(m)) circle.emplace(a.value(), b.value());
    REQUIRE(image == circle);
  }
}

TEST_CASE("hensel_lift_solution examples") {
  const PrimePowerModulus m7(7, 1);
  const auto lifts = hensel_lift_solution(SolutionTriple{5, 5, 1, m7});
  CHECK(lifts.size() == 49);
  for (const auto& s : lifts) CHECK(s.is_valid());

  // All p^3 candidates, filtered directly.
  std::uint64_t brute = 0;
  for (std::int64_t k1 = 0; k1 < 7; ++k1)
    for (std::int64_t k2 = 0; k2 < 7; ++k2)
      for (std::int64_t k3 = 0; k3 < 7; ++k3) {
        const std::int64_t a = 5 + 7 * k1, b = 5 + 7 * k2, c = 1 + 7 * k3;
        brute += (a * a + b * b - c * c) % 49 == 0;
      }
  CHECK(brute == 49);

  const auto pyth = hensel_lift_solution(SolutionTriple{3, 4, 5, PrimePowerModulus(11, 1)});
  CHECK(pyth.size() == 121);
  CHECK(std::any_of(pyth.begin(), pyth.end(), [](const SolutionTriple& s) { return s.x1 == 3 && s.x2 == 4 && s.x3 == 5; }));

  try {
    hensel_lift_solution(SolutionTriple{1, 1, 1, m7});
    FAIL("expected InvalidSolution");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidSolution);
  }
}

TEST_CASE("every level n+1 solution reduces to a level n solution, and lifts partition them") {
  for (auto [p, n] : {std::pair{7, 1}, std::pair{7, 2}}) {
    const PrimePowerModulus m(p, n);
    const PrimePowerModulus up(p, n + 1);
    const auto q = static_cast<std::int64_t>(m.q());
    const auto qq = static_cast<std::int64_t>(up.q());
    std::set<std::tuple<std::int64_t, std::int64_t, std::int64_t>> from_lifts;
    std::uint64_t base_count = 0;
    for (std::int64_t a = 1; a < q; ++a)
      for (std::int64_t b = 1; b < q; ++b)
        for (std::int64_t c = 1; c < q; ++c) {
          const SolutionTriple s{a, b, c, m};
          if (!s.is_valid()) continue;
          ++base_count;
          for (const auto& l : hensel_lift_solution(s)) {
            REQUIRE(l.is_valid());
            from_lifts.emplace(l.x1, l.x2, l.x3);
          }
        }
    if (qq > 400) continue;  // the level-(n+1) sweep below is cubic
    std::uint64_t upper_count = 0;
    for (std::int64_t a = 1; a < qq; ++a)
      for (std::int64_t b = 1; b < qq; ++b)
        for (std::int64_t c = 1; c < qq; ++c) {
          const SolutionTriple s{a, b, c, up};
          if (!s.is_valid()) continue;
          ++upper_count;
          REQUIRE(SolutionTriple{a % q, b % q, c % q, m}.is_valid());
          REQUIRE(from_lifts.count(std::tuple{a, b, c}) == 1);
        }
    CHECK(upper_count == base_count * static_cast<std::uint64_t>(p * p));
  }
}
