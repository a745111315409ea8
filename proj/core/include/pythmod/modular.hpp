#pragma once

// Exact arithmetic modulo odd prime powers q = p^n with q <= 2^31, so every
// product of two reduced residues fits in 64 bits.

#include <compare>
#include <cstdint>
#include <optional>
#include <utility>

#include "pythmod/error.hpp"

namespace pythmod {

inline constexpr std::uint64_t kMaxModulus = std::uint64_t{1} << 31;

bool is_prime(std::uint64_t n);

// Largest e with p^e | a; a must be nonzero.
int valuation(std::int64_t a, std::uint64_t p);

std::uint64_t checked_power(std::uint64_t base, int exponent);

class PrimePowerModulus {
 public:
  // Throws InvalidArgument unless p is an odd prime, n >= 1 and p^n <= 2^31.
  PrimePowerModulus(std::uint64_t p, int n);

  std::uint64_t p() const noexcept { return p_; }
  int n() const noexcept { return n_; }
  std::uint64_t q() const noexcept { return q_; }

  // p^k for 0 <= k <= n.
  std::uint64_t power(int k) const;
  // The modulus p^k for 1 <= k <= n.
  PrimePowerModulus level(int k) const { return PrimePowerModulus(p_, k); }

  std::uint64_t reduce(std::int64_t a) const noexcept;
  bool is_unit(std::int64_t a) const noexcept { return reduce(a) % p_ != 0; }

  friend bool operator==(const PrimePowerModulus&, const PrimePowerModulus&) = default;

 private:
  std::uint64_t p_;
  int n_;
  std::uint64_t q_;
};

class Residue {
 public:
  Residue(std::int64_t value, const PrimePowerModulus& modulus)
      : value_(modulus.reduce(value)), modulus_(modulus) {}

  std::uint64_t value() const noexcept { return value_; }
  const PrimePowerModulus& modulus() const noexcept { return modulus_; }
  bool is_unit() const noexcept { return value_ % modulus_.p() != 0; }

  Residue operator+(const Residue& other) const;
  Residue operator-(const Residue& other) const;
  Residue operator*(const Residue& other) const;
  Residue operator-() const { return Residue(-static_cast<std::int64_t>(value_), modulus_); }

  friend bool operator==(const Residue& a, const Residue& b) {
    return a.modulus_ == b.modulus_ && a.value_ == b.value_;
  }
  friend bool operator==(const Residue& a, std::uint64_t v) { return a.value_ == v; }

 private:
  void require_same_modulus(const Residue& other) const;

  std::uint64_t value_;
  PrimePowerModulus modulus_;
};

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) noexcept;
std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exponent, std::uint64_t m) noexcept;

// Inverse of a modulo an arbitrary m via extended Euclid; nullopt when
// gcd(a, m) != 1.
std::optional<std::uint64_t> try_inverse(std::int64_t a, std::uint64_t m) noexcept;

// Throws NotInvertible when p | a.
Residue inv_mod(std::int64_t a, const PrimePowerModulus& m);

// Jacobi symbol (a/m) for odd m >= 1; 0 when gcd(a, m) > 1.
int jacobi_symbol(std::int64_t a, std::int64_t m);

// Both square roots of a unit a modulo q, ordered (smaller, larger); nullopt
// when a is a non-residue mod p. Throws UnitRequired when p | a.
std::optional<std::pair<Residue, Residue>> sqrt_mod(std::int64_t a, const PrimePowerModulus& m);

}  // namespace pythmod
