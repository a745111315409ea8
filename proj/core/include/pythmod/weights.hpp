#pragma once

// Nonnegative Schwartz weights with closed-form Fourier transforms,
//   hat(Phi)(xi) = integral Phi(x) e^{-2 pi i x xi} dx.

#include <cstdint>
#include <string>
#include <variant>

namespace pythmod {

enum class WeightKind { Gaussian };

class WeightSpec {
 public:
  WeightKind kind() const noexcept { return kind_; }
  double scale() const noexcept { return scale_; }
  std::string name() const;

  double value(double x) const noexcept;
  double fourier(double xi) const noexcept;
  double fourier_at_zero() const noexcept { return fourier(0.0); }

  // Smallest R with value(x) <= tol for all |x| >= R.
  double truncation_radius(double tol) const;
  // Smallest R with fourier(xi) <= tol for all |xi| >= R (0 if never above tol).
  double fourier_truncation_radius(double tol) const;

  friend WeightSpec gaussian(double s);

 private:
  WeightSpec(WeightKind kind, double scale) : kind_(kind), scale_(scale) {}
  WeightKind kind_;
  double scale_;
};

// Phi(x) = exp(-pi (x/s)^2), hat(Phi)(xi) = s exp(-pi s^2 xi^2). Throws
// InvalidArgument unless s > 0.
WeightSpec gaussian(double s);

struct PoissonCheck {
  double lhs;  // sum over n of Phi(n)
  double rhs;  // sum over n of hat(Phi)(n)
  double diff;
};

// Both series truncated where terms drop below 1e-15 and summed from the
// tails inward.
PoissonCheck poisson_check(const WeightSpec& w);

struct AllIntegers {};
struct Congruent {
  std::int64_t a;
  std::int64_t modulus;
};
struct CoprimeTo {
  std::int64_t p;
};
using ResidueClass = std::variant<AllIntegers, Congruent, CoprimeTo>;

// sum over x in the class of Phi(x / N), truncated at |x| <= N * R(1e-15).
// Throws InvalidArgument for N < 1.
double weighted_lattice_sum(const WeightSpec& w, double N, const ResidueClass& cls);

}  // namespace pythmod
