#include "pythmod/circle.hpp"

#include <string>

#include "pythmod/polynomial.hpp"

namespace pythmod {

int s_of_p(std::uint64_t p) {
  if (p <= 2 || p % 2 == 0) throw Error(ErrorCode::InvalidArgument, "s(p) needs an odd prime");
  return p % 4 == 3 ? 3 : 5;
}

std::uint64_t admissible_count(const PrimePowerModulus& m) {
  return m.power(m.n() - 1) * (m.p() - static_cast<std::uint64_t>(s_of_p(m.p())));
}

bool is_admissible(std::int64_t t, const PrimePowerModulus& m) {
  const std::uint64_t p = m.p();
  const std::uint64_t tp = m.reduce(t) % p;
  const std::uint64_t t2 = tp * tp % p;
  return tp != 0 && t2 != 1 && (t2 + 1) % p != 0;
}

CircleParamPoint param_point(std::int64_t t, const PrimePowerModulus& m) {
  if (!is_admissible(t, m)) {
    throw Error(ErrorCode::InadmissibleParameter, "t = " + std::to_string(t) + " is not admissible mod " + std::to_string(m.q()));
  }
  const Residue tr(t, m);
  const Residue one(1, m);
  const Residue t2 = tr * tr;
  const Residue inv = inv_mod(static_cast<std::int64_t>((one + t2).value()), m);
  return CircleParamPoint{tr, (one - t2) * inv, Residue(2, m) * tr * inv};
}

Residue inverse_param(std::int64_t y1, std::int64_t y2, const PrimePowerModulus& m) {
  const Residue a(y1, m);
  const Residue b(y2, m);
  if (!a.is_unit() || !b.is_unit() || !(a * a + b * b == Residue(1, m))) {
    throw Error(ErrorCode::InvalidPoint, "(" + std::to_string(y1) + ", " + std::to_string(y2) + ") is not a unit point on the circle");
  }
  // 1 + y1 is a unit: y1 = -1 would force y2^2 = 0.
  return b * inv_mod(static_cast<std::int64_t>((Residue(1, m) + a).value()), m);
}

std::vector<Residue> enumerate_admissible_t(const PrimePowerModulus& m) {
  std::vector<Residue> out;
  out.reserve(admissible_count(m));
  for (std::uint64_t t = 0; t < m.q(); ++t) {
    if (is_admissible(static_cast<std::int64_t>(t), m)) out.emplace_back(static_cast<std::int64_t>(t), m);
  }
  return out;
}

std::vector<std::pair<Residue, Residue>> enumerate_circle_solutions(const PrimePowerModulus& m) {
  const std::uint64_t q = m.q();
  const std::uint64_t p = m.p();
  if (q > kMaxExhaustiveModulus) {
    throw Error(ErrorCode::TooLarge, "exhaustive circle enumeration is capped at q <= 10^6");
  }
  // Bucket every unit y2 by its square, via counting sort so each bucket
  // stays ascending.
  std::vector<std::uint32_t> start(q + 1, 0);
  for (std::uint64_t y = 1; y < q; ++y) {
    if (y % p != 0) ++start[mul_mod(y, y, q) + 1];
  }
  for (std::uint64_t c = 0; c < q; ++c) start[c + 1] += start[c];
  std::vector<std::uint32_t> roots(start[q]);
  std::vector<std::uint32_t> fill(start.begin(), start.end() - 1);
  for (std::uint64_t y = 1; y < q; ++y) {
    if (y % p != 0) roots[fill[mul_mod(y, y, q)]++] = static_cast<std::uint32_t>(y);
  }

  std::vector<std::pair<Residue, Residue>> out;
  for (std::uint64_t y1 = 1; y1 < q; ++y1) {
    if (y1 % p == 0) continue;
    const std::uint64_t target = (1 + q - mul_mod(y1, y1, q)) % q;
    for (std::uint32_t i = start[target]; i < start[target + 1]; ++i) {
      out.emplace_back(Residue(static_cast<std::int64_t>(y1), m), Residue(roots[i], m));
    }
  }
  return out;
}

bool SolutionTriple::is_valid() const {
  const auto q = static_cast<Integer>(modulus.q());
  const Integer a = x1, b = x2, c = x3;
  if (!modulus.is_unit(x1) || !modulus.is_unit(x2) || !modulus.is_unit(x3)) return false;
  return (a * a + b * b - c * c) % q == 0;
}

std::vector<SolutionTriple> hensel_lift_solution(const SolutionTriple& s) {
  if (!s.is_valid()) {
    throw Error(ErrorCode::InvalidSolution, "(" + std::to_string(s.x1) + ", " + std::to_string(s.x2) + ", " +
                                                std::to_string(s.x3) + ") does not solve the congruence with unit coordinates");
  }
  const PrimePowerModulus& m = s.modulus;
  const PrimePowerModulus next(m.p(), m.n() + 1);
  const auto p = static_cast<std::int64_t>(m.p());
  const auto pn = static_cast<std::int64_t>(m.q());

  const Integer a = s.x1, b = s.x2, c = s.x3;
  // (x1^2 + x2^2 - x3^2) / p^n + 2 x1 k1 + 2 x2 k2 - 2 x3 k3 = 0 mod p.
  Integer excess = (a * a + b * b - c * c) / static_cast<Integer>(pn);
  const std::int64_t e = static_cast<std::int64_t>(((excess % p) + p) % p);
  const std::int64_t u1 = ((2 * (s.x1 % p)) % p + p) % p;
  const std::int64_t u2 = ((2 * (s.x2 % p)) % p + p) % p;
  const std::int64_t inv_u3 = static_cast<std::int64_t>(*try_inverse((2 * (s.x3 % p)) % p, m.p()));

  std::vector<SolutionTriple> lifts;
  lifts.reserve(static_cast<std::size_t>(p * p));
  for (std::int64_t k1 = 0; k1 < p; ++k1) {
    for (std::int64_t k2 = 0; k2 < p; ++k2) {
      const std::int64_t k3 = (e + u1 * k1 + u2 * k2) % p * inv_u3 % p;
      lifts.push_back(SolutionTriple{s.x1 + k1 * pn, s.x2 + k2 * pn, s.x3 + k3 * pn, next});
    }
  }
  return lifts;
}

}  // namespace pythmod
