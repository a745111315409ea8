#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace pythmod {

inline constexpr std::uint64_t kMaxR2Argument = 1'000'000'000'000'000'000ULL;
inline constexpr std::int64_t kMaxPythagoreanN = 10'000'000;
inline constexpr std::int64_t kMaxDualBox = 10'000;

// Prime factorization as (prime, exponent) pairs in ascending prime order.
std::vector<std::pair<std::uint64_t, int>> factorize(std::uint64_t n);

// Ordered representations a^2 + b^2 = m over Z^2, from the factorization:
// 4 prod_{p = 1 mod 4} (e + 1) when every p = 3 mod 4 has even exponent.
// r2(0) = 1. Throws TooLarge for m > 10^18.
std::uint64_t r2(std::uint64_t m);

// #{(x1, x2, x3) in Z^3 : x1^2 + x2^2 = x3^2, |x3| <= N}
//   = 1 + 2 sum_{m=1}^{N} r2(m^2). Throws TooLarge for N > 10^7.
std::uint64_t count_pythagorean(std::int64_t N);

// (8 / pi) N log N.
double pythagorean_asymptotic(double N);

// Nonzero (l1, l2, l3) with |l_i| <= L and l1^2 + l2^2 = l3^2 mod `modulus`.
// Throws TooLarge for L > 10^4 or a wrapping modulus above 2^26.
std::uint64_t dual_triple_count(std::int64_t L, std::uint64_t modulus);

// Nonzero (l1, l2, l3) with |l_i| <= L and l1^2 + l2^2 = l3^2 exactly.
std::uint64_t cube_triple_count(std::int64_t L);

}  // namespace pythmod
