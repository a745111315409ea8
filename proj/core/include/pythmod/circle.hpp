#pragma once

// Rational parametrization of the unit circle y1^2 + y2^2 = 1 modulo p^n,
//   t -> ((1 - t^2) / (1 + t^2), 2t / (1 + t^2)),
// restricted to admissible t (t(1 - t^2)(1 + t^2) a unit), which is a
// bijection onto the points with y1*y2 a unit.

#include <cstdint>
#include <utility>
#include <vector>

#include "pythmod/modular.hpp"

namespace pythmod {

inline constexpr std::uint64_t kMaxExhaustiveModulus = 1'000'000;

// 3 if p = 3 mod 4, 5 if p = 1 mod 4: the number of residues t mod p with
// t(1 - t^2)(1 + t^2) = 0.
int s_of_p(std::uint64_t p);

// p^{n-1} (p - s(p)).
std::uint64_t admissible_count(const PrimePowerModulus& m);

bool is_admissible(std::int64_t t, const PrimePowerModulus& m);

struct CircleParamPoint {
  Residue t;
  Residue y1;
  Residue y2;
};

// Throws InadmissibleParameter unless t(1 - t^2)(1 + t^2) is a unit.
CircleParamPoint param_point(std::int64_t t, const PrimePowerModulus& m);

// t = y2 (1 + y1)^{-1}. Throws InvalidPoint unless y1^2 + y2^2 = 1 with
// y1*y2 a unit.
Residue inverse_param(std::int64_t y1, std::int64_t y2, const PrimePowerModulus& m);

// Ascending in [0, q).
std::vector<Residue> enumerate_admissible_t(const PrimePowerModulus& m);

// Every unit pair (y1, y2) on the circle, ordered lexicographically. Found by
// direct search with a square-class join, independent of the parametrization.
// Throws TooLarge for q > 10^6.
std::vector<std::pair<Residue, Residue>> enumerate_circle_solutions(const PrimePowerModulus& m);

struct SolutionTriple {
  std::int64_t x1;
  std::int64_t x2;
  std::int64_t x3;
  PrimePowerModulus modulus;

  // x1^2 + x2^2 - x3^2 = 0 mod q with x1*x2*x3 a unit.
  bool is_valid() const;
};

// All p^2 lifts (x_i + k_i p^n) with k_i in [0, p) that solve the congruence
// modulo p^{n+1}. Throws InvalidSolution when s is not a valid solution, or
// TooLarge when p^{n+1} exceeds the supported range.
std::vector<SolutionTriple> hensel_lift_solution(const SolutionTriple& s);

}  // namespace pythmod
