#include "pythmod/pythagorean.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "pythmod/error.hpp"
#include "pythmod/modular.hpp"

namespace pythmod {

namespace {

std::uint64_t mulmod64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

// Brent's variant of Pollard rho; n is odd, composite and not a prime power
// of a small prime.
std::uint64_t pollard_brent(std::uint64_t n) {
  for (std::uint64_t c = 1;; ++c) {
    std::uint64_t y = 2, x = 2, g = 1, q = 1, ys = 2;
    auto f = [&](std::uint64_t v) { return (mulmod64(v, v, n) + c) % n; };
    constexpr std::uint64_t batch = 128;
    for (std::uint64_t r = 1; g == 1; r <<= 1) {
      x = y;
      for (std::uint64_t i = 0; i < r; ++i) y = f(y);
      for (std::uint64_t k = 0; k < r && g == 1; k += batch) {
        ys = y;
        for (std::uint64_t i = 0; i < std::min(batch, r - k); ++i) {
          y = f(y);
          q = mulmod64(q, x > y ? x - y : y - x, n);
        }
        g = std::gcd(q, n);
      }
    }
    if (g == n) {
      do {
        ys = f(ys);
        g = std::gcd(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void factor_into(std::uint64_t n, std::vector<std::uint64_t>& primes) {
  if (n == 1) return;
  if (is_prime(n)) {
    primes.push_back(n);
    return;
  }
  const std::uint64_t d = pollard_brent(n);
  factor_into(d, primes);
  factor_into(n / d, primes);
}

}  // namespace

std::vector<std::pair<std::uint64_t, int>> factorize(std::uint64_t n) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "cannot factor 0");
  std::vector<std::uint64_t> primes;
  for (std::uint64_t p = 2; p < 1000 && p * p <= n; ++p) {
    while (n % p == 0) {
      primes.push_back(p);
      n /= p;
    }
  }
  factor_into(n, primes);
  std::sort(primes.begin(), primes.end());
  std::vector<std::pair<std::uint64_t, int>> out;
  for (std::uint64_t p : primes) {
    if (!out.empty() && out.back().first == p) {
      ++out.back().second;
    } else {
      out.emplace_back(p, 1);
    }
  }
  return out;
}

std::uint64_t r2(std::uint64_t m) {
  if (m == 0) return 1;
  if (m > kMaxR2Argument) throw Error(ErrorCode::TooLarge, "r2 argument above 10^18");
  std::uint64_t count = 4;
  for (const auto& [p, e] : factorize(m)) {
    if (p % 4 == 1) {
      count *= static_cast<std::uint64_t>(e + 1);
    } else if (p % 4 == 3 && e % 2 == 1) {
      return 0;
    }
  }
  return count;
}

std::uint64_t count_pythagorean(std::int64_t N) {
  if (N < 0) throw Error(ErrorCode::InvalidArgument, "N must be nonnegative");
  if (N > kMaxPythagoreanN) throw Error(ErrorCode::TooLarge, "count_pythagorean capped at N <= 10^7");
  // Smallest-prime-factor sieve; r2(m^2) = 4 prod_{p = 1 mod 4} (2 e_p(m) + 1).
  const auto size = static_cast<std::size_t>(N) + 1;
  std::vector<std::uint32_t> spf(size, 0);
  for (std::size_t i = 2; i < size; ++i) {
    if (spf[i] != 0) continue;
    for (std::size_t j = i; j < size; j += i) {
      if (spf[j] == 0) spf[j] = static_cast<std::uint32_t>(i);
    }
  }
  std::uint64_t total = 1;
  for (std::size_t m = 1; m < size; ++m) {
    std::uint64_t reps = 4;
    std::size_t rest = m;
    while (rest > 1) {
      const std::uint32_t p = spf[rest];
      int e = 0;
      while (rest % p == 0) {
        rest /= p;
        ++e;
      }
      if (p % 4 == 1) reps *= static_cast<std::uint64_t>(2 * e + 1);
    }
    total += 2 * reps;
  }
  return total;
}

double pythagorean_asymptotic(double N) { return 8.0 / std::numbers::pi * N * std::log(N); }

std::uint64_t dual_triple_count(std::int64_t L, std::uint64_t modulus) {
  if (L < 0) throw Error(ErrorCode::InvalidArgument, "L must be nonnegative");
  if (L > kMaxDualBox) throw Error(ErrorCode::TooLarge, "dual triple count capped at L <= 10^4");
  if (modulus == 0) throw Error(ErrorCode::InvalidArgument, "modulus must be positive");
  const auto l2 = static_cast<std::uint64_t>(L) * static_cast<std::uint64_t>(L);
  if (2 * l2 < modulus) {
    // No reduction ever happens, so the congruence is the equation.
    return cube_triple_count(L);
  }
  if (modulus > (std::uint64_t{1} << 26)) throw Error(ErrorCode::TooLarge, "wrapping modulus above 2^26");
  std::vector<std::uint64_t> third(modulus, 0);
  for (std::int64_t l3 = -L; l3 <= L; ++l3) {
    ++third[static_cast<std::uint64_t>(l3 * l3) % modulus];
  }
  std::uint64_t total = 0;
  for (std::int64_t a = -L; a <= L; ++a) {
    for (std::int64_t b = -L; b <= L; ++b) {
      total += third[static_cast<std::uint64_t>(a * a + b * b) % modulus];
    }
  }
  return total - 1;  // the origin
}

std::uint64_t cube_triple_count(std::int64_t L) {
  if (L < 0) throw Error(ErrorCode::InvalidArgument, "L must be nonnegative");
  std::uint64_t total = 0;
  for (std::int64_t a = -L; a <= L; ++a) {
    for (std::int64_t b = -L; b <= L; ++b) {
      const std::int64_t s = a * a + b * b;
      if (s == 0) continue;
      auto c = static_cast<std::int64_t>(std::sqrt(static_cast<double>(s)));
      while (c * c > s) --c;
      while ((c + 1) * (c + 1) <= s) ++c;
      if (c * c == s && c <= L) total += 2;
    }
  }
  return total;
}

}  // namespace pythmod
