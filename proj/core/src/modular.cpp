#include "pythmod/modular.hpp"

#include <numeric>
#include <string>

namespace pythmod {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t small : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u}) {
    if (n % small == 0) return n == small;
  }
  // Deterministic Miller-Rabin for 64-bit inputs.
  auto mulmod = [](std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
  };
  auto powmod = [&](std::uint64_t b, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1;
    b %= m;
    while (e) {
      if (e & 1) r = mulmod(r, b, m);
      b = mulmod(b, b, m);
      e >>= 1;
    }
    return r;
  };
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

int valuation(std::int64_t a, std::uint64_t p) {
  if (a == 0) throw Error(ErrorCode::InvalidArgument, "valuation of zero");
  std::uint64_t magnitude = a < 0 ? static_cast<std::uint64_t>(-(a + 1)) + 1 : static_cast<std::uint64_t>(a);
  int e = 0;
  while (magnitude % p == 0) {
    magnitude /= p;
    ++e;
  }
  return e;
}

std::uint64_t checked_power(std::uint64_t base, int exponent) {
  std::uint64_t result = 1;
  for (int i = 0; i < exponent; ++i) {
    if (__builtin_mul_overflow(result, base, &result)) {
      throw Error(ErrorCode::Overflow, "power overflows 64 bits");
    }
  }
  return result;
}

PrimePowerModulus::PrimePowerModulus(std::uint64_t p, int n) : p_(p), n_(n), q_(1) {
  if (p == 2 || !is_prime(p)) {
    throw Error(ErrorCode::InvalidArgument, "p = " + std::to_string(p) + " is not an odd prime");
  }
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "exponent n must be >= 1");
  for (int i = 0; i < n; ++i) {
    q_ *= p;
    if (q_ > kMaxModulus) {
      throw Error(ErrorCode::TooLarge, "p^n exceeds 2^31");
    }
  }
}

std::uint64_t PrimePowerModulus::power(int k) const {
  if (k < 0 || k > n_) throw Error(ErrorCode::InvalidArgument, "power index out of range");
  std::uint64_t r = 1;
  for (int i = 0; i < k; ++i) r *= p_;
  return r;
}

std::uint64_t PrimePowerModulus::reduce(std::int64_t a) const noexcept {
  const auto q = static_cast<std::int64_t>(q_);
  std::int64_t r = a % q;
  if (r < 0) r += q;
  return static_cast<std::uint64_t>(r);
}

void Residue::require_same_modulus(const Residue& other) const {
  if (!(modulus_ == other.modulus_)) {
    throw Error(ErrorCode::ModulusMismatch, "residues have different moduli");
  }
}

Residue Residue::operator+(const Residue& other) const {
  require_same_modulus(other);
  return Residue(static_cast<std::int64_t>((value_ + other.value_) % modulus_.q()), modulus_);
}

Residue Residue::operator-(const Residue& other) const {
  require_same_modulus(other);
  return Residue(static_cast<std::int64_t>(value_) - static_cast<std::int64_t>(other.value_), modulus_);
}

Residue Residue::operator*(const Residue& other) const {
  require_same_modulus(other);
  return Residue(static_cast<std::int64_t>(mul_mod(value_, other.value_, modulus_.q())), modulus_);
}

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) noexcept {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exponent, std::uint64_t m) noexcept {
  std::uint64_t result = 1 % m;
  base %= m;
  while (exponent) {
    if (exponent & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exponent >>= 1;
  }
  return result;
}

std::optional<std::uint64_t> try_inverse(std::int64_t a, std::uint64_t m) noexcept {
  const auto mod = static_cast<std::int64_t>(m);
  std::int64_t old_r = a % mod;
  if (old_r < 0) old_r += mod;
  std::int64_t r = mod;
  std::int64_t old_s = 1, s = 0;
  while (r != 0) {
    const std::int64_t quotient = old_r / r;
    std::int64_t tmp = old_r - quotient * r;
    old_r = r;
    r = tmp;
    tmp = old_s - quotient * s;
    old_s = s;
    s = tmp;
  }
  if (old_r != 1) return std::nullopt;
  old_s %= mod;
  if (old_s < 0) old_s += mod;
  return static_cast<std::uint64_t>(old_s);
}

Residue inv_mod(std::int64_t a, const PrimePowerModulus& m) {
  auto inverse = try_inverse(a, m.q());
  if (!inverse) {
    throw Error(ErrorCode::NotInvertible, std::to_string(a) + " is divisible by " + std::to_string(m.p()));
  }
  return Residue(static_cast<std::int64_t>(*inverse), m);
}

int jacobi_symbol(std::int64_t a, std::int64_t m) {
  if (m <= 0 || m % 2 == 0) throw Error(ErrorCode::InvalidArgument, "Jacobi symbol needs odd positive m");
  a %= m;
  if (a < 0) a += m;
  int result = 1;
  while (a != 0) {
    while (a % 2 == 0) {
      a /= 2;
      const std::int64_t r = m % 8;
      if (r == 3 || r == 5) result = -result;
    }
    std::swap(a, m);
    if (a % 4 == 3 && m % 4 == 3) result = -result;
    a %= m;
  }
  return m == 1 ? result : 0;
}

namespace {

// Tonelli-Shanks modulo an odd prime; a must be a nonzero quadratic residue.
std::uint64_t tonelli_shanks(std::uint64_t a, std::uint64_t p) {
  if (p % 4 == 3) return pow_mod(a, (p + 1) / 4, p);
  std::uint64_t odd = p - 1;
  int twos = 0;
  while (odd % 2 == 0) {
    odd /= 2;
    ++twos;
  }
  std::uint64_t z = 2;
  while (jacobi_symbol(static_cast<std::int64_t>(z), static_cast<std::int64_t>(p)) != -1) ++z;
  std::uint64_t c = pow_mod(z, odd, p);
  std::uint64_t x = pow_mod(a, (odd + 1) / 2, p);
  std::uint64_t t = pow_mod(a, odd, p);
  int m = twos;
  while (t != 1) {
    int i = 0;
    std::uint64_t t2 = t;
    while (t2 != 1) {
      t2 = mul_mod(t2, t2, p);
      ++i;
    }
    std::uint64_t b = c;
    for (int j = 0; j < m - i - 1; ++j) b = mul_mod(b, b, p);
    x = mul_mod(x, b, p);
    c = mul_mod(b, b, p);
    t = mul_mod(t, c, p);
    m = i;
  }
  return x;
}

}  // namespace

std::optional<std::pair<Residue, Residue>> sqrt_mod(std::int64_t a, const PrimePowerModulus& m) {
  const std::uint64_t p = m.p();
  if (!m.is_unit(a)) {
    throw Error(ErrorCode::UnitRequired, "sqrt_mod needs a unit, got " + std::to_string(a));
  }
  const std::uint64_t ap = static_cast<std::uint64_t>(((a % static_cast<std::int64_t>(p)) + static_cast<std::int64_t>(p)) % static_cast<std::int64_t>(p));
  if (jacobi_symbol(static_cast<std::int64_t>(ap), static_cast<std::int64_t>(p)) != 1) return std::nullopt;

  std::uint64_t x = tonelli_shanks(ap, p);
  // Quadratic Hensel lifting: precision doubles each step.
  int level = 1;
  while (level < m.n()) {
    level = std::min(2 * level, m.n());
    const std::uint64_t mod = m.power(level);
    const std::uint64_t target = m.reduce(a) % mod;
    const std::uint64_t residual = (mul_mod(x, x, mod) + mod - target) % mod;
    const std::uint64_t inv_two_x = *try_inverse(static_cast<std::int64_t>(2 * x % mod), mod);
    x = (x + mod - mul_mod(residual, inv_two_x, mod)) % mod;
  }
  const std::uint64_t other = (m.q() - x) % m.q();
  Residue lo(static_cast<std::int64_t>(std::min(x, other)), m);
  Residue hi(static_cast<std::int64_t>(std::max(x, other)), m);
  return std::make_pair(lo, hi);
}

}  // namespace pythmod
