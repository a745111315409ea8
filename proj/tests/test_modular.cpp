#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "pythmod/modular.hpp"

using namespace pythmod;

TEST_CASE("prime power modulus validation") {
  const PrimePowerModulus m(7, 3);
  CHECK(m.q() == 343);
  CHECK(m.power(2) == 49);
  CHECK_THROWS_AS(PrimePowerModulus(2, 3), Error);
  CHECK_THROWS_AS(PrimePowerModulus(9, 1), Error);
  CHECK_THROWS_AS(PrimePowerModulus(7, 0), Error);
  try {
    PrimePowerModulus(7, 12);
    FAIL("expected TooLarge");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::TooLarge);
  }
}

TEST_CASE("residues reject mixed moduli") {
  const Residue a(3, PrimePowerModulus(7, 1));
  const Residue b(3, PrimePowerModulus(7, 2));
  CHECK_THROWS_AS(a + b, Error);
  CHECK((a * a).value() == 2);
  CHECK(Residue(-1, PrimePowerModulus(7, 2)).value() == 48);
}

TEST_CASE("inv_mod examples") {
  CHECK(inv_mod(1, PrimePowerModulus(7, 2)).value() == 1);
  CHECK(inv_mod(2, PrimePowerModulus(7, 1)).value() == 4);
  CHECK(inv_mod(3, PrimePowerModulus(7, 2)).value() == 33);
  try {
    inv_mod(14, PrimePowerModulus(7, 2));
    FAIL("expected NotInvertible");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotInvertible);
  }
}

TEST_CASE("inv_mod is an inverse for every unit") {
  for (auto [p, n] : {std::pair{7, 3}, std::pair{5, 3}, std::pair{3, 5}, std::pair{11, 2}}) {
    const PrimePowerModulus m(p, n);
    for (std::int64_t a = 1; a < static_cast<std::int64_t>(m.q()); ++a) {
      if (a % p == 0) continue;
      const auto r = inv_mod(a, m);
      REQUIRE(a * static_cast<std::int64_t>(r.value()) % static_cast<std::int64_t>(m.q()) == 1);
    }
  }
  std::mt19937_64 rng(17);
  const PrimePowerModulus big(7, 11);
  for (int i = 0; i < 2000; ++i) {
    const auto a = static_cast<std::int64_t>(rng() % big.q());
    if (a % 7 == 0) continue;
    const auto r = inv_mod(a, big);
    REQUIRE(mul_mod(static_cast<std::uint64_t>(a), r.value(), big.q()) == 1);
  }
}

TEST_CASE("jacobi symbol examples and Euler criterion") {
  CHECK(jacobi_symbol(1, 45) == 1);
  CHECK(jacobi_symbol(2, 7) == 1);
  CHECK(jacobi_symbol(3, 7) == -1);
  CHECK(jacobi_symbol(15, 45) == 0);
  CHECK(jacobi_symbol(-1, 7) == -1);
  CHECK(jacobi_symbol(-1, 13) == 1);
  for (std::int64_t p : {7, 11, 13, 17, 19}) {
    for (std::int64_t a = 0; a < p; ++a) REQUIRE(jacobi_symbol(a, p) == oracle::euler_criterion(a, p));
  }
  // Multiplicativity in the modulus.
  for (std::int64_t a = -30; a < 60; ++a) REQUIRE(jacobi_symbol(a, 7 * 11) == jacobi_symbol(a, 7) * jacobi_symbol(a, 11));
}

TEST_CASE("sqrt_mod examples") {
  auto roots = sqrt_mod(2, PrimePowerModulus(7, 1));
  REQUIRE(roots);
  CHECK(roots->first.value() == 3);
  CHECK(roots->second.value() == 4);
  roots = sqrt_mod(2, PrimePowerModulus(7, 2));
  REQUIRE(roots);
  CHECK(roots->first.value() == 10);
  CHECK(roots->second.value() == 39);
  CHECK_FALSE(sqrt_mod(3, PrimePowerModulus(7, 1)));
  try {
    sqrt_mod(7, PrimePowerModulus(7, 2));
    FAIL("expected UnitRequired");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnitRequired);
  }
}

TEST_CASE("sqrt_mod roots are exact and residue counts match") {
  // p = 17 and 13 exercise Tonelli-Shanks proper (p = 1 mod 4).
  for (auto [p, n] : {std::pair{7, 3}, std::pair{13, 2}, std::pair{17, 2}, std::pair{41, 2}, std::pair{3, 5}}) {
    const PrimePowerModulus m(p, n);
    const auto q = static_cast<std::int64_t>(m.q());
    std::uint64_t with_root = 0;
    for (std::int64_t a = 1; a < q; ++a) {
      if (a % p == 0) continue;
      const auto roots = sqrt_mod(a, m);
      if (!roots) continue;
      ++with_root;
      for (const auto& r : {roots->first, roots->second}) {
        REQUIRE(static_cast<std::int64_t>(mul_mod(r.value(), r.value(), m.q())) == a);
      }
      REQUIRE(roots->first.value() < roots->second.value());
    }
    CHECK(with_root == m.power(n - 1) * (m.p() - 1) / 2);
  }
  // Cross-check with exhaustive search at a modest modulus.
  const PrimePowerModulus m(13, 2);
  for (std::int64_t a = 1; a < 169; ++a) {
    if (a % 13 == 0) continue;
    const auto found = oracle::square_roots_by_search(a, 169);
    const auto roots = sqrt_mod(a, m);
    if (found.empty()) {
      REQUIRE_FALSE(roots);
    } else {
      REQUIRE(roots);
      REQUIRE(found == std::vector<std::int64_t>{static_cast<std::int64_t>(roots->first.value()),
                                                 static_cast<std::int64_t>(roots->second.value())});
    }
  }
}

TEST_CASE("primality and valuation helpers") {
  CHECK(is_prime(2));
  CHECK(is_prime(1'000'000'007));
  CHECK_FALSE(is_prime(561));
  CHECK_FALSE(is_prime(1));
  CHECK(valuation(98, 7) == 2);
  CHECK(valuation(-343, 7) == 3);
  CHECK(valuation(5, 7) == 0);
}
