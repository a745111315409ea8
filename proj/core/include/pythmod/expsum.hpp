#pragma once

// Complete exponential sums e_q(f(x)) to prime-power moduli: brute-force
// evaluation for any rational function, the stationary-phase closed form for
// sums over a residue class alpha mod p, quadratic Gauss sums, and the
// quantities attached to the circle sum
//   E(k1, k2, x3; p^n) = sum over admissible t of e_{p^n}(x3 (k1(1 - t^2) + 2 k2 t) / (1 + t^2)).

#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include "pythmod/modular.hpp"
#include "pythmod/polynomial.hpp"

namespace pythmod {

class WeightSpec;

using Complex = std::complex<double>;

inline constexpr std::uint64_t kMaxBruteForceGauss = 1'000'000;
inline constexpr std::uint64_t kMaxBruteForceSum = 10'000'000;
// Absolute tolerance for comparing two evaluations of a sum mod q is
// kOracleTolerance * sqrt(q).
inline constexpr double kOracleTolerance = 1e-9;

enum class Branch { Plus, Minus };

inline int sign(Branch b) noexcept { return b == Branch::Plus ? 1 : -1; }

// e^{2 pi i z / q}, with z reduced mod q before the transcendental call.
Complex additive_character(std::int64_t z, std::uint64_t q);
inline Complex additive_character(const Residue& z) {
  return additive_character(static_cast<std::int64_t>(z.value()), z.modulus().q());
}

// G_q = sum_{x=1}^{q} e_q(x^2). Throws TooLarge for q > 10^6.
Complex gauss_sum_bruteforce(std::uint64_t q);
// sqrt(q) for q = 1 mod 4, i sqrt(q) for q = 3 mod 4.
Complex gauss_sum_closed(std::uint64_t q);

// f_{k1,k2,x3}(t) = x3 (k1 (1 - t^2) + 2 k2 t) / (1 + t^2).
RationalFunction circle_phase(std::int64_t k1, std::int64_t k2, std::int64_t x3);

// S_alpha(f; p^n) = sum over 1 <= x <= p^n, x = alpha mod p of e_{p^n}(f(x)),
// term by term with exact residues. Throws DenominatorNotUnit or TooLarge
// (p^n > 10^7).
Complex s_alpha_bruteforce(const RationalFunction& f, std::int64_t alpha, const PrimePowerModulus& m);

enum class StationaryCase {
  Vanishing,   // p^{-r} f'(alpha) is a unit: the sum is exactly zero
  SimpleRoot,  // alpha is a simple root of p^{-r} f' mod p
};

struct CochraneEvaluation {
  Complex value;
  StationaryCase kind;
  int r;  // ord_p(f')
  // Lift of alpha to a root of p^{-r} f' mod p^{floor((n-r+1)/2)}; SimpleRoot only.
  std::optional<std::uint64_t> lifted_root;
  // Legendre symbol of 2 p^{-r} f''(lifted_root) mod p, used when n - r is odd.
  int legendre_a = 0;
};

// Closed-form evaluation of S_alpha(f; p^n). Requires n >= 2, r <= n - 2,
// F2(alpha) a unit and alpha not a repeated root; otherwise throws
// HypothesisViolated and the caller should fall back to brute force.
CochraneEvaluation s_alpha_cochrane(const RationalFunction& f, std::int64_t alpha, const PrimePowerModulus& m);

struct ExpSumSpec {
  std::int64_t k1;
  std::int64_t k2;
  std::int64_t x3;
  PrimePowerModulus modulus;
  int r;  // p^r = gcd(k1, k2, p^n)
  std::int64_t l1;
  std::int64_t l2;
  std::int64_t D;  // l1^2 + l2^2

  int levels() const noexcept { return modulus.n() - r; }
};

// Validates |k_i| < 2^31, (k1, k2) != (0, 0) mod p^n and x3 a unit.
ExpSumSpec make_exp_sum_spec(std::int64_t k1, std::int64_t k2, std::int64_t x3, const PrimePowerModulus& m);

struct KeyCongruenceRoots {
  std::vector<std::uint64_t> roots;  // ascending in [0, p)
  bool double_root = false;
};

// Roots of 2 l1 a = l2 (1 - a^2) mod p. Throws UnitRequired unless l1*l2 is a unit.
KeyCongruenceRoots key_congruence_roots(std::int64_t l1, std::int64_t l2, std::uint64_t p);

// The smaller of the two square roots of D modulo the given level, or
// nullopt when D is not a unit quadratic residue.
std::optional<std::uint64_t> canonical_sqrt(std::int64_t D, const PrimePowerModulus& level);

// (-l1 +- sqrt(D)) / l2 modulo `level`, with the canonical sqrt(D). Throws
// NotResidue when D is not a unit residue mod p.
Residue alpha_star(std::int64_t l1, std::int64_t l2, const PrimePowerModulus& level, Branch branch);

struct PhaseIdentity {
  Complex lhs;  // e_{p^n}(f_{k1,k2,x3}(alpha*))
  Complex rhs;  // e_{p^{n-r}}(+-x3 sqrt(D))
};

PhaseIdentity phase_identity_check(const ExpSumSpec& spec, Branch branch);

struct AlphaSymbol {
  // Legendre symbol of A(alpha) = 2 p^{-r} f''(alpha*), evaluated from the
  // second derivative of f_{k1,k2,x3}.
  int from_second_derivative;
  // (2 x3 sqrt(D) / p) with the canonical sqrt(D), branch independent.
  int stated_closed_form;
  // (-2 x3 s / p) with s = +-sqrt(D) taken on the branch's sign.
  int corrected_closed_form;
};

AlphaSymbol a_alpha_symbol(const ExpSumSpec& spec, Branch branch);

// C_m(x3, D) for m = n - r: 1 for even m, (2 x3 sqrt(D) / p) G_p / sqrt(p)
// for odd m. Throws UnitRequired unless x3*D is a unit, NotResidue when D is
// a non-residue.
Complex c_factor(int levels, std::int64_t x3, std::int64_t D, std::uint64_t p);
// The same factor written as G_{p^m} / p^{m/2} * (2 x3 sqrt(D) / p^m), with
// the Gauss sum evaluated by brute force where feasible.
Complex c_factor_unified(int levels, std::int64_t x3, std::int64_t D, std::uint64_t p);

enum class SumMode { BruteForce, Closed };

// E(k1, k2, x3; p^n). Brute force requires p^n <= 10^7; closed requires
// r <= n - 2 (HypothesisViolated otherwise).
Complex e_sum(const ExpSumSpec& spec, SumMode mode);

struct FWeight {
  double value;
  int lattice_points;  // (l1, l2) with l1^2 + l2^2 = D and l1*l2 a unit
};

// F_m(D) = (2 sqrt(D) / p^m) * sum over l1^2 + l2^2 = D, (l1 l2, p) = 1 of
// hat(Phi)(l1 N / p^m) hat(Phi)(l2 N / p^m); zero when D is not a unit
// residue mod p.
FWeight f_weight(std::int64_t D, int levels, double N, const WeightSpec& weight, std::uint64_t p);

}  // namespace pythmod
