#pragma once

#include <cstdint>
#include <initializer_list>
#include <limits>
#include <string>
#include <vector>

#include "pythmod/modular.hpp"

namespace pythmod {

// Coefficient type for integer polynomials. Every operation is overflow
// checked and throws ErrorCode::Overflow rather than wrapping.
using Integer = __int128;

inline constexpr int kInfiniteOrder = std::numeric_limits<int>::max();

std::string to_string(Integer value);

// Dense integer polynomial, coefficients stored from the constant term up,
// with no trailing zeros (the zero polynomial has no coefficients).
class Polynomial {
 public:
  Polynomial() = default;
  Polynomial(std::initializer_list<Integer> coefficients);
  explicit Polynomial(std::vector<Integer> coefficients);

  static Polynomial constant(Integer c) { return Polynomial({c}); }
  static Polynomial monomial(Integer c, int degree);

  bool is_zero() const noexcept { return coeffs_.empty(); }
  // -1 for the zero polynomial.
  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  Integer coefficient(int i) const noexcept;
  const std::vector<Integer>& coefficients() const noexcept { return coeffs_; }

  Polynomial derivative() const;
  // Largest e such that p^e divides every coefficient; kInfiniteOrder for zero.
  int order(std::uint64_t p) const;
  // Exact division of every coefficient by d; throws InvalidArgument otherwise.
  Polynomial divide_exact(Integer d) const;

  std::uint64_t eval_mod(std::uint64_t x, std::uint64_t m) const noexcept;
  long double eval(long double x) const noexcept;

  Polynomial operator+(const Polynomial& other) const;
  Polynomial operator-(const Polynomial& other) const;
  Polynomial operator*(const Polynomial& other) const;
  Polynomial operator*(Integer scalar) const;

  friend bool operator==(const Polynomial&, const Polynomial&) = default;

  std::string to_string(char variable = 't') const;

 private:
  void trim();
  std::vector<Integer> coeffs_;
};

// f = numerator / denominator over Z, kept exactly as given: no common-factor
// cancellation is ever performed, since p-adic orders are read off this
// representation.
class RationalFunction {
 public:
  RationalFunction(Polynomial numerator, Polynomial denominator);
  explicit RationalFunction(Polynomial numerator) : RationalFunction(std::move(numerator), Polynomial{1}) {}

  const Polynomial& numerator() const noexcept { return num_; }
  const Polynomial& denominator() const noexcept { return den_; }

  RationalFunction derivative() const;
  RationalFunction operator*(const RationalFunction& other) const;

  long double eval(long double x) const noexcept { return num_.eval(x) / den_.eval(x); }

  std::string to_string(char variable = 't') const;

 private:
  Polynomial num_;
  Polynomial den_;
};

// ord_p(F1) - ord_p(F2); kInfiniteOrder when F1 is the zero polynomial.
int ord_p_rational(const RationalFunction& f, std::uint64_t p);

// Quotient rule (F1'F2 - F1F2') / F2^2, uncancelled.
RationalFunction derivative(const RationalFunction& f);

// F1(x) * F2(x)^{-1} mod q. Throws DenominatorNotUnit when p | F2(x).
Residue eval_rational_mod(const RationalFunction& f, const Residue& x, const PrimePowerModulus& m);

}  // namespace pythmod
