#include "pythmod/expsum.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "pythmod/circle.hpp"
#include "pythmod/summation.hpp"
#include "pythmod/weights.hpp"

namespace pythmod {

namespace {

constexpr std::size_t kTermsPerChunk = 4096;
constexpr std::size_t kParallelThreshold = 1u << 17;

// Polynomial with coefficients reduced into [0, m) for fast Horner evaluation.
class ReducedPolynomial {
 public:
  ReducedPolynomial(const Polynomial& poly, std::uint64_t m) : m_(m) {
    for (Integer c : poly.coefficients()) {
      Integer r = c % static_cast<Integer>(m);
      if (r < 0) r += static_cast<Integer>(m);
      coeffs_.push_back(static_cast<std::uint64_t>(r));
    }
  }

  std::uint64_t operator()(std::uint64_t x) const noexcept {
    std::uint64_t acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = (acc * x % m_ + *it) % m_;
    return acc;
  }

 private:
  std::uint64_t m_;
  std::vector<std::uint64_t> coeffs_;
};

// Sum of term(i) for i in [0, count), chunked for reproducibility.
template <class Term>
Complex chunked_sum(std::uint64_t count, Term&& term) {
  const std::size_t chunks = static_cast<std::size_t>((count + kTermsPerChunk - 1) / kTermsPerChunk);
  const unsigned threads = count >= kParallelThreshold ? 0u : 1u;
  return deterministic_reduce<Complex>(chunks, threads, [&](std::size_t c) {
    const std::uint64_t begin = c * kTermsPerChunk;
    const std::uint64_t end = std::min<std::uint64_t>(count, begin + kTermsPerChunk);
    std::vector<Complex> terms;
    terms.reserve(end - begin);
    for (std::uint64_t i = begin; i < end; ++i) terms.push_back(term(i));
    return pairwise_sum(std::span<const Complex>(terms));
  });
}

std::int64_t mod_signed(std::int64_t a, std::int64_t m) {
  const std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

}  // namespace

Complex additive_character(std::int64_t z, std::uint64_t q) {
  const auto mod = static_cast<std::int64_t>(q);
  std::int64_t r = mod_signed(z, mod);
  if (2 * r > mod) r -= mod;
  const double angle = 2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(q);
  return {std::cos(angle), std::sin(angle)};
}

Complex gauss_sum_bruteforce(std::uint64_t q) {
  if (q == 0 || q % 2 == 0) throw Error(ErrorCode::InvalidArgument, "Gauss sum needs odd q");
  if (q > kMaxBruteForceGauss) throw Error(ErrorCode::TooLarge, "brute-force Gauss sum capped at q <= 10^6");
  return chunked_sum(q, [q](std::uint64_t i) {
    const std::uint64_t x = i + 1;
    return additive_character(static_cast<std::int64_t>(x * x % q), q);
  });
}

Complex gauss_sum_closed(std::uint64_t q) {
  if (q == 0 || q % 2 == 0) throw Error(ErrorCode::InvalidArgument, "Gauss sum needs odd q");
  const double root = std::sqrt(static_cast<double>(q));
  return q % 4 == 1 ? Complex(root, 0.0) : Complex(0.0, root);
}

RationalFunction circle_phase(std::int64_t k1, std::int64_t k2, std::int64_t x3) {
  const Integer a = static_cast<Integer>(x3) * k1;
  const Integer b = static_cast<Integer>(x3) * k2;
  return RationalFunction(Polynomial{a, 2 * b, -a}, Polynomial{1, 0, 1});
}

Complex s_alpha_bruteforce(const RationalFunction& f, std::int64_t alpha, const PrimePowerModulus& m) {
  const std::uint64_t p = m.p();
  const std::uint64_t q = m.q();
  if (q > kMaxBruteForceSum) throw Error(ErrorCode::TooLarge, "brute-force sum capped at p^n <= 10^7");
  const auto base = static_cast<std::uint64_t>(mod_signed(alpha, static_cast<std::int64_t>(p)));
  if (f.denominator().eval_mod(base, p) == 0) {
    throw Error(ErrorCode::DenominatorNotUnit, "F2(alpha) is divisible by p");
  }
  const ReducedPolynomial num(f.numerator(), q);
  const ReducedPolynomial den(f.denominator(), q);
  return chunked_sum(q / p, [&](std::uint64_t j) {
    const std::uint64_t x = base + j * p;
    const std::uint64_t value = mul_mod(num(x), *try_inverse(static_cast<std::int64_t>(den(x)), q), q);
    return additive_character(static_cast<std::int64_t>(value), q);
  });
}

CochraneEvaluation s_alpha_cochrane(const RationalFunction& f, std::int64_t alpha, const PrimePowerModulus& m) {
  const std::uint64_t p = m.p();
  const int n = m.n();
  if (n < 2) throw Error(ErrorCode::HypothesisViolated, "closed form needs n >= 2");
  const auto a0 = static_cast<std::uint64_t>(mod_signed(alpha, static_cast<std::int64_t>(p)));
  if (f.denominator().eval_mod(a0, p) == 0) {
    throw Error(ErrorCode::HypothesisViolated, "F2(alpha) is not a unit");
  }
  const RationalFunction fp = f.derivative();
  const int r = ord_p_rational(fp, p);
  if (r == kInfiniteOrder || r < 0 || r > n - 2) {
    throw Error(ErrorCode::HypothesisViolated,
                "ord_p(f') = " + (r == kInfiniteOrder ? std::string("inf") : std::to_string(r)) + " exceeds n - 2");
  }
  // F2 has unit content (F2(alpha) is a unit), so p^{-r} f' = h / F2^2 with
  // h the numerator of f' divided by p^r.
  const Polynomial h = fp.numerator().divide_exact(static_cast<Integer>(m.power(r)));
  const Polynomial dh = h.derivative();

  CochraneEvaluation out{Complex{0.0, 0.0}, StationaryCase::Vanishing, r, std::nullopt, 0};
  if (h.eval_mod(a0, p) != 0) return out;
  if (dh.eval_mod(a0, p) == 0) {
    throw Error(ErrorCode::HypothesisViolated, "alpha is a repeated root of p^{-r} f' mod p");
  }

  // Newton lift to a root of h mod p^j, j = floor((n - r + 1) / 2).
  const int j = (n - r + 1) / 2;
  const std::uint64_t pj = m.power(j);
  std::uint64_t root = a0;
  for (int step = 0; step < j + 1 && h.eval_mod(root, pj) != 0; ++step) {
    const std::uint64_t inv = *try_inverse(static_cast<std::int64_t>(dh.eval_mod(root, pj)), pj);
    root = (root + pj - mul_mod(h.eval_mod(root, pj), inv, pj)) % pj;
  }

  const Residue at_root = eval_rational_mod(f, Residue(static_cast<std::int64_t>(root), m), m);
  Complex value = additive_character(at_root) * std::pow(static_cast<double>(p), 0.5 * (n + r));

  out.kind = StationaryCase::SimpleRoot;
  out.lifted_root = root;
  if ((n - r) % 2 == 1) {
    // A(alpha) = 2 p^{-r} f''(alpha*) mod p; f'' carries p^r in its numerator.
    const RationalFunction fpp = fp.derivative();
    const std::uint64_t pr1 = m.power(r) * p;
    const std::uint64_t top = fpp.numerator().eval_mod(root, pr1) / m.power(r);
    const std::uint64_t bottom = fpp.denominator().eval_mod(root, p);
    const std::uint64_t a_value = 2 * top % p * *try_inverse(static_cast<std::int64_t>(bottom), p) % p;
    out.legendre_a = jacobi_symbol(static_cast<std::int64_t>(a_value), static_cast<std::int64_t>(p));
    value *= static_cast<double>(out.legendre_a) * gauss_sum_closed(p) / std::sqrt(static_cast<double>(p));
  }
  out.value = value;
  return out;
}

ExpSumSpec make_exp_sum_spec(std::int64_t k1, std::int64_t k2, std::int64_t x3, const PrimePowerModulus& m) {
  constexpr std::int64_t limit = std::int64_t{1} << 31;
  if (k1 <= -limit || k1 >= limit || k2 <= -limit || k2 >= limit) {
    throw Error(ErrorCode::InvalidArgument, "|k1|, |k2| must be below 2^31");
  }
  if (m.reduce(k1) == 0 && m.reduce(k2) == 0) {
    throw Error(ErrorCode::InvalidArgument, "(k1, k2) = (0, 0) mod p^n is the main term, not an exponential sum");
  }
  if (!m.is_unit(x3)) throw Error(ErrorCode::UnitRequired, "x3 must be coprime to p");
  auto capped = [&](std::int64_t k) { return k == 0 ? m.n() : std::min(valuation(k, m.p()), m.n()); };
  const int r = std::min(capped(k1), capped(k2));
  const auto pr = static_cast<std::int64_t>(m.power(r));
  const std::int64_t l1 = k1 / pr;
  const std::int64_t l2 = k2 / pr;
  return ExpSumSpec{k1, k2, x3, m, r, l1, l2, l1 * l1 + l2 * l2};
}

KeyCongruenceRoots key_congruence_roots(std::int64_t l1, std::int64_t l2, std::uint64_t p) {
  const auto ps = static_cast<std::int64_t>(p);
  if (mod_signed(l1, ps) == 0 || mod_signed(l2, ps) == 0) {
    throw Error(ErrorCode::UnitRequired, "key congruence needs l1*l2 coprime to p");
  }
  // l2 a^2 + 2 l1 a - l2 = 0, discriminant / 4 = l1^2 + l2^2 = D.
  const std::int64_t a = mod_signed(l1, ps);
  const std::int64_t b = mod_signed(l2, ps);
  const std::int64_t D = (a * a + b * b) % ps;
  const auto inv_l2 = static_cast<std::int64_t>(*try_inverse(b, p));
  KeyCongruenceRoots out;
  if (D == 0) {
    out.double_root = true;
    out.roots.push_back(static_cast<std::uint64_t>(mod_signed(-a * inv_l2, ps)));
    return out;
  }
  const PrimePowerModulus prime(p, 1);
  const auto roots = sqrt_mod(D, prime);
  if (!roots) return out;
  for (std::uint64_t s : {roots->first.value(), roots->second.value()}) {
    out.roots.push_back(static_cast<std::uint64_t>(mod_signed((static_cast<std::int64_t>(s) - a) * inv_l2, ps)));
  }
  std::sort(out.roots.begin(), out.roots.end());
  return out;
}

std::optional<std::uint64_t> canonical_sqrt(std::int64_t D, const PrimePowerModulus& level) {
  if (!level.is_unit(D)) return std::nullopt;
  const auto roots = sqrt_mod(D, level);
  if (!roots) return std::nullopt;
  return roots->first.value();
}

Residue alpha_star(std::int64_t l1, std::int64_t l2, const PrimePowerModulus& level, Branch branch) {
  if (!level.is_unit(l2)) throw Error(ErrorCode::UnitRequired, "l2 must be coprime to p");
  const std::int64_t D = static_cast<std::int64_t>((static_cast<Integer>(l1) * l1 + static_cast<Integer>(l2) * l2) %
                                                   static_cast<Integer>(level.q()));
  const auto root = canonical_sqrt(D, level);
  if (!root) throw Error(ErrorCode::NotResidue, "D = l1^2 + l2^2 is not a unit residue mod p");
  const Residue s(static_cast<std::int64_t>(*root), level);
  const Residue signed_root = branch == Branch::Plus ? s : -s;
  return (signed_root - Residue(l1 % static_cast<std::int64_t>(level.q()), level)) * inv_mod(l2 % static_cast<std::int64_t>(level.q()), level);
}

PhaseIdentity phase_identity_check(const ExpSumSpec& spec, Branch branch) {
  const PrimePowerModulus& m = spec.modulus;
  if (spec.levels() < 1) throw Error(ErrorCode::HypothesisViolated, "needs r <= n - 1");
  const PrimePowerModulus level = m.level(spec.levels());
  const Residue root = alpha_star(spec.l1, spec.l2, level, branch);
  const RationalFunction f = circle_phase(spec.k1, spec.k2, spec.x3);
  const Complex lhs = additive_character(eval_rational_mod(f, Residue(static_cast<std::int64_t>(root.value()), m), m));
  const std::uint64_t s = *canonical_sqrt(static_cast<std::int64_t>(level.reduce(spec.D)), level);
  const Integer z = static_cast<Integer>(sign(branch)) * spec.x3 * static_cast<Integer>(s) % static_cast<Integer>(level.q());
  const Complex rhs = additive_character(static_cast<std::int64_t>(z), level.q());
  return {lhs, rhs};
}

AlphaSymbol a_alpha_symbol(const ExpSumSpec& spec, Branch branch) {
  const PrimePowerModulus& m = spec.modulus;
  if (spec.levels() < 1) throw Error(ErrorCode::HypothesisViolated, "needs r <= n - 1");
  const std::uint64_t p = m.p();
  const auto ps = static_cast<std::int64_t>(p);
  const PrimePowerModulus level = m.level(spec.levels());
  const Residue root = alpha_star(spec.l1, spec.l2, level, branch);

  const RationalFunction fpp = circle_phase(spec.k1, spec.k2, spec.x3).derivative().derivative();
  const std::uint64_t pr = m.power(spec.r);
  const std::uint64_t top = fpp.numerator().eval_mod(root.value(), pr * p) / pr;
  const std::uint64_t bottom = fpp.denominator().eval_mod(root.value(), p);
  const std::uint64_t a_value = 2 * top % p * *try_inverse(static_cast<std::int64_t>(bottom), p) % p;

  const auto s = static_cast<std::int64_t>(*canonical_sqrt(static_cast<std::int64_t>(level.reduce(spec.D)), level) % p);
  const std::int64_t x3 = mod_signed(spec.x3, ps);
  AlphaSymbol out{};
  out.from_second_derivative = jacobi_symbol(static_cast<std::int64_t>(a_value), ps);
  out.stated_closed_form = jacobi_symbol(2 * x3 % ps * s % ps, ps);
  out.corrected_closed_form = jacobi_symbol(mod_signed(-2 * sign(branch) * x3 % ps * s, ps), ps);
  return out;
}

namespace {

std::uint64_t sqrt_for_c_factor(int levels, std::int64_t x3, std::int64_t D, std::uint64_t p) {
  if (levels < 1) throw Error(ErrorCode::InvalidArgument, "levels must be >= 1");
  const PrimePowerModulus level(p, levels);
  if (!level.is_unit(x3) || !level.is_unit(D)) throw Error(ErrorCode::UnitRequired, "x3*D must be coprime to p");
  const auto root = canonical_sqrt(static_cast<std::int64_t>(level.reduce(D)), level);
  if (!root) throw Error(ErrorCode::NotResidue, "D is not a quadratic residue mod p");
  return *root;
}

}  // namespace

Complex c_factor(int levels, std::int64_t x3, std::int64_t D, std::uint64_t p) {
  const std::uint64_t s = sqrt_for_c_factor(levels, x3, D, p);
  if (levels % 2 == 0) return {1.0, 0.0};
  const auto ps = static_cast<std::int64_t>(p);
  const std::int64_t symbol = jacobi_symbol(2 * mod_signed(x3, ps) % ps * static_cast<std::int64_t>(s % p) % ps, ps);
  return static_cast<double>(symbol) * gauss_sum_closed(p) / std::sqrt(static_cast<double>(p));
}

Complex c_factor_unified(int levels, std::int64_t x3, std::int64_t D, std::uint64_t p) {
  const std::uint64_t s = sqrt_for_c_factor(levels, x3, D, p);
  const PrimePowerModulus level(p, levels);
  const std::uint64_t q = level.q();
  const Complex gauss = q <= kMaxBruteForceGauss ? gauss_sum_bruteforce(q) : gauss_sum_closed(q);
  const std::uint64_t arg = mul_mod(2 * level.reduce(x3) % q, s, q);
  const int symbol = jacobi_symbol(static_cast<std::int64_t>(arg), static_cast<std::int64_t>(q));
  return gauss / std::pow(static_cast<double>(p), 0.5 * levels) * static_cast<double>(symbol);
}

Complex e_sum(const ExpSumSpec& spec, SumMode mode) {
  const PrimePowerModulus& m = spec.modulus;
  const std::uint64_t p = m.p();
  const std::uint64_t q = m.q();
  const RationalFunction f = circle_phase(spec.k1, spec.k2, spec.x3);

  if (mode == SumMode::BruteForce) {
    if (q > kMaxBruteForceSum) throw Error(ErrorCode::TooLarge, "brute-force sum capped at p^n <= 10^7");
    const ReducedPolynomial num(f.numerator(), q);
    const ReducedPolynomial den(f.denominator(), q);
    return chunked_sum(q, [&](std::uint64_t t) -> Complex {
      if (!is_admissible(static_cast<std::int64_t>(t), m)) return {0.0, 0.0};
      const std::uint64_t value = mul_mod(num(t), *try_inverse(static_cast<std::int64_t>(den(t)), q), q);
      return additive_character(static_cast<std::int64_t>(value), q);
    });
  }

  if (spec.r > m.n() - 2) throw Error(ErrorCode::HypothesisViolated, "closed form needs r <= n - 2");
  const auto ps = static_cast<std::int64_t>(p);
  // A non-unit l1 or l2 puts every stationary point at t = 0 or t = +-1, and
  // D = 0 mod p gives a double root with t^2 = -1; none is admissible, so
  // every class sum vanishes.
  if (mod_signed(spec.l1, ps) == 0 || mod_signed(spec.l2, ps) == 0 || mod_signed(spec.D, ps) == 0) return {0.0, 0.0};
  const KeyCongruenceRoots roots = key_congruence_roots(spec.l1, spec.l2, p);
  std::vector<Complex> parts;
  for (std::uint64_t alpha : roots.roots) {
    if (!is_admissible(static_cast<std::int64_t>(alpha), m)) {
      throw Error(ErrorCode::HypothesisViolated, "stationary point is not an admissible class");
    }
    parts.push_back(s_alpha_cochrane(f, static_cast<std::int64_t>(alpha), m).value);
  }
  return pairwise_sum(std::span<const Complex>(parts));
}

FWeight f_weight(std::int64_t D, int levels, double N, const WeightSpec& weight, std::uint64_t p) {
  if (D < 1 || levels < 1) throw Error(ErrorCode::InvalidArgument, "f_weight needs D >= 1 and levels >= 1");
  const PrimePowerModulus level(p, levels);
  const double scale = N / static_cast<double>(level.q());
  const auto ps = static_cast<std::int64_t>(p);

  FWeight out{0.0, 0};
  std::vector<double> terms;
  const auto limit = static_cast<std::int64_t>(std::sqrt(static_cast<double>(D))) + 1;
  for (std::int64_t l1 = -limit; l1 <= limit; ++l1) {
    const std::int64_t rest = D - l1 * l1;
    if (rest < 0) continue;
    auto l2 = static_cast<std::int64_t>(std::llround(std::sqrt(static_cast<double>(rest))));
    while (l2 * l2 > rest) --l2;
    while ((l2 + 1) * (l2 + 1) <= rest) ++l2;
    if (l2 * l2 != rest) continue;
    for (std::int64_t candidate : {l2, -l2}) {
      if (candidate == -l2 && l2 == 0) continue;
      if (l1 % ps == 0 || candidate % ps == 0) continue;
      ++out.lattice_points;
      terms.push_back(weight.fourier(static_cast<double>(l1) * scale) * weight.fourier(static_cast<double>(candidate) * scale));
    }
  }
  const auto root = canonical_sqrt(static_cast<std::int64_t>(level.reduce(D)), level);
  if (!root) return out;
  const int symbol = jacobi_symbol(static_cast<std::int64_t>(2 * *root % level.q()), static_cast<std::int64_t>(level.q()));
  out.value = static_cast<double>(symbol) * pairwise_sum(std::span<const double>(terms));
  return out;
}

}  // namespace pythmod
