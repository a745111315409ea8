#include "pythmod/weights.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "pythmod/error.hpp"
#include "pythmod/summation.hpp"

namespace pythmod {

namespace {

constexpr double kSeriesTolerance = 1e-15;

}  // namespace

WeightSpec gaussian(double s) {
  if (!(s > 0) || !std::isfinite(s)) throw Error(ErrorCode::InvalidArgument, "gaussian scale must be positive");
  return WeightSpec(WeightKind::Gaussian, s);
}

std::string WeightSpec::name() const { return "gaussian"; }

double WeightSpec::value(double x) const noexcept {
  const double u = x / scale_;
  return std::exp(-std::numbers::pi * u * u);
}

double WeightSpec::fourier(double xi) const noexcept {
  const double u = scale_ * xi;
  return scale_ * std::exp(-std::numbers::pi * u * u);
}

double WeightSpec::truncation_radius(double tol) const {
  if (!(tol > 0) || tol >= 1) throw Error(ErrorCode::InvalidArgument, "tolerance must lie in (0, 1)");
  return scale_ * std::sqrt(std::log(1.0 / tol) / std::numbers::pi);
}

double WeightSpec::fourier_truncation_radius(double tol) const {
  if (!(tol > 0)) throw Error(ErrorCode::InvalidArgument, "tolerance must be positive");
  if (scale_ <= tol) return 0.0;
  return std::sqrt(std::log(scale_ / tol) / std::numbers::pi) / scale_;
}

namespace {

// f(0) + 2 sum_{k=1}^{K} f(k) for an even f, smallest terms first.
template <class F>
double symmetric_series(F&& f, double radius) {
  const auto last = static_cast<std::int64_t>(std::floor(radius)) + 1;
  double tail = 0.0;
  for (std::int64_t k = last; k >= 1; --k) tail += f(static_cast<double>(k));
  return f(0.0) + 2.0 * tail;
}

}  // namespace

PoissonCheck poisson_check(const WeightSpec& w) {
  const double lhs = symmetric_series([&](double x) { return w.value(x); }, w.truncation_radius(kSeriesTolerance));
  const double rhs = symmetric_series([&](double x) { return w.fourier(x); }, w.fourier_truncation_radius(kSeriesTolerance));
  return {lhs, rhs, std::abs(lhs - rhs)};
}

double weighted_lattice_sum(const WeightSpec& w, double N, const ResidueClass& cls) {
  if (!(N >= 1)) throw Error(ErrorCode::InvalidArgument, "N must be >= 1");
  const auto bound = static_cast<std::int64_t>(std::floor(N * w.truncation_radius(kSeriesTolerance)));
  auto member = [&](std::int64_t x) {
    return std::visit(
        [x](const auto& c) -> bool {
          using C = std::decay_t<decltype(c)>;
          if constexpr (std::is_same_v<C, AllIntegers>) {
            return true;
          } else if constexpr (std::is_same_v<C, Congruent>) {
            const std::int64_t r = ((x - c.a) % c.modulus + c.modulus) % c.modulus;
            return r == 0;
          } else {
            return x % c.p != 0;
          }
        },
        cls);
  };
  if (const auto* c = std::get_if<Congruent>(&cls); c && c->modulus < 1) {
    throw Error(ErrorCode::InvalidArgument, "residue class modulus must be positive");
  }
  if (const auto* c = std::get_if<CoprimeTo>(&cls); c && c->p < 2) {
    throw Error(ErrorCode::InvalidArgument, "coprimality modulus must be >= 2");
  }
  std::vector<double> terms;
  terms.reserve(static_cast<std::size_t>(2 * bound + 1));
  for (std::int64_t x = -bound; x <= bound; ++x) {
    if (member(x)) terms.push_back(w.value(static_cast<double>(x) / N));
  }
  return pairwise_sum(std::span<const double>(terms));
}

}  // namespace pythmod
