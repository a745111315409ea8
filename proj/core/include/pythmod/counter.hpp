#pragma once

// Smoothed and exact counts of unit solutions of x1^2 + x2^2 = x3^2 mod p^n
// in boxes of side ~N, and the predicted main term
//   T0 = hat(Phi)(0)^3 (p - s(p))(p - 1) / p^2 * N^3 / p^n.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "pythmod/modular.hpp"
#include "pythmod/weights.hpp"

namespace pythmod {

enum class CountMethod { TripleLoop, SqrtBucket };

std::string_view to_string(CountMethod method) noexcept;
CountMethod parse_count_method(std::string_view name);

inline constexpr double kDefaultCutoff = 3.5;
inline constexpr double kCutoffTolerance = 1e-12;
inline constexpr std::uint64_t kMaxBucketModulus = std::uint64_t{1} << 26;
inline constexpr double kMaxTripleLoopWork = 1e9;

struct CountConfig {
  PrimePowerModulus modulus;
  double N;
  WeightSpec weight = gaussian(1.0);
  // Box half-width in units of N: coordinates run over |x| <= floor(cutoff * N).
  double cutoff = kDefaultCutoff;
  CountMethod method = CountMethod::SqrtBucket;
  unsigned threads = 0;  // 0 = all cores; results do not depend on it

  std::int64_t box_radius() const;
  // Throws SmallPrime for p <= 5, InvalidArgument for N < 1 or a cutoff
  // below the weight's 1e-12 truncation radius.
  void validate() const;
};

struct CountReport {
  CountConfig config;
  double measured_T;
  double predicted_T0;
  double ratio;  // measured_T / predicted_T0
  std::optional<std::uint64_t> exact_box_count;
  double wall_seconds;
  // Largest single-coordinate weight dropped by the truncation, Phi(cutoff).
  double truncation_weight;

  double nu() const;  // log N / log q
};

// Throws SmallPrime for p <= 5.
double predict_main_term(const CountConfig& cfg);

// Throws TooLarge when the chosen method's feasibility bound is exceeded:
// q <= 2^26 for sqrt-bucket, (2 cutoff N)^3 <= 10^9 for the triple loop.
CountReport count_smoothed(const CountConfig& cfg);

// Exact number of unit solutions with max |x_i| <= N, sqrt-bucket kernel.
std::uint64_t count_box_exact(const PrimePowerModulus& m, std::int64_t N, unsigned threads = 0);

struct TransitionCheck {
  std::uint64_t congruence_count;
  std::uint64_t equation_count;
  bool equal;
};

// For N < sqrt(q/2): the congruence box count against the count of exact
// Pythagorean triples with unit coordinates. Throws RangeViolation otherwise.
TransitionCheck transition_check(const PrimePowerModulus& m, std::int64_t N, unsigned threads = 0);

}  // namespace pythmod
