#include "pythmod/counter.hpp"

#include <chrono>
#include <cmath>
#include <string>
#include <vector>

#include "pythmod/circle.hpp"
#include "pythmod/summation.hpp"

namespace pythmod {

namespace {

constexpr std::size_t kRowsPerChunk = 16;
constexpr double kMaxBoxPairs = 1e11;

// Coordinates x in [-M, M], stored at index x + M.
struct Box {
  std::int64_t radius;
  std::uint64_t q;
  std::vector<std::uint64_t> square;  // x^2 mod q, indexed by |x|

  Box(std::int64_t M, std::uint64_t modulus) : radius(M), q(modulus), square(static_cast<std::size_t>(M) + 1) {
    for (std::int64_t x = 0; x <= M; ++x) {
      square[static_cast<std::size_t>(x)] = static_cast<std::uint64_t>(x) * static_cast<std::uint64_t>(x) % q;
    }
  }

  std::size_t width() const { return static_cast<std::size_t>(2 * radius + 1); }
  std::uint64_t sq(std::int64_t x) const { return square[static_cast<std::size_t>(x < 0 ? -x : x)]; }
};

// Smallest square root of every unit square c mod q (the other is q - root);
// zero marks residues that are not unit squares.
std::vector<std::uint32_t> unit_root_table(const PrimePowerModulus& m) {
  const std::uint64_t q = m.q();
  if (q > kMaxBucketModulus) throw Error(ErrorCode::TooLarge, "sqrt-bucket table needs q <= 2^26");
  std::vector<std::uint32_t> root(q, 0);
  for (std::uint64_t y = 1; y <= (q - 1) / 2; ++y) {
    if (y % m.p() != 0) root[y * y % q] = static_cast<std::uint32_t>(y);
  }
  return root;
}

// Sum over (x1, x2, x3) in the box with x1^2 + x2^2 = x3^2 mod q of
// w[x1] w[x2] w[x3]; w must vanish on non-units.
template <class T>
T sqrt_bucket_kernel(const Box& box, const PrimePowerModulus& m, const std::vector<T>& w, unsigned threads) {
  const std::vector<std::uint32_t> root = unit_root_table(m);
  const std::int64_t M = box.radius;
  const auto q = static_cast<std::int64_t>(box.q);
  auto progression = [&](std::int64_t rho) {
    T acc{};
    for (std::int64_t x = rho - ((rho + M) / q) * q; x <= M; x += q) acc += w[static_cast<std::size_t>(x + M)];
    return acc;
  };
  const std::size_t rows = box.width();
  const std::size_t chunks = (rows + kRowsPerChunk - 1) / kRowsPerChunk;
  return deterministic_reduce<T>(chunks, threads, [&](std::size_t chunk) {
    T chunk_sum{};
    const std::size_t end = std::min(rows, (chunk + 1) * kRowsPerChunk);
    for (std::size_t i1 = chunk * kRowsPerChunk; i1 < end; ++i1) {
      const T w1 = w[i1];
      if (w1 == T{}) continue;
      const std::uint64_t s1 = box.sq(static_cast<std::int64_t>(i1) - M);
      T row{};
      for (std::size_t i2 = 0; i2 < rows; ++i2) {
        const T w2 = w[i2];
        if (w2 == T{}) continue;
        std::uint64_t c = s1 + box.sq(static_cast<std::int64_t>(i2) - M);
        if (c >= box.q) c -= box.q;
        const std::uint32_t r = root[c];
        if (r == 0) continue;
        row += w2 * (progression(r) + progression(q - static_cast<std::int64_t>(r)));
      }
      chunk_sum += w1 * row;
    }
    return chunk_sum;
  });
}

template <class T>
T triple_loop_kernel(const Box& box, const std::vector<T>& w, unsigned threads) {
  const std::int64_t M = box.radius;
  const std::size_t rows = box.width();
  const std::size_t chunks = (rows + kRowsPerChunk - 1) / kRowsPerChunk;
  return deterministic_reduce<T>(chunks, threads, [&](std::size_t chunk) {
    T chunk_sum{};
    const std::size_t end = std::min(rows, (chunk + 1) * kRowsPerChunk);
    for (std::size_t i1 = chunk * kRowsPerChunk; i1 < end; ++i1) {
      if (w[i1] == T{}) continue;
      const std::uint64_t s1 = box.sq(static_cast<std::int64_t>(i1) - M);
      T row{};
      for (std::size_t i2 = 0; i2 < rows; ++i2) {
        if (w[i2] == T{}) continue;
        std::uint64_t c = s1 + box.sq(static_cast<std::int64_t>(i2) - M);
        if (c >= box.q) c -= box.q;
        T inner{};
        for (std::size_t i3 = 0; i3 < rows; ++i3) {
          if (box.sq(static_cast<std::int64_t>(i3) - M) == c) inner += w[i3];
        }
        row += w[i2] * inner;
      }
      chunk_sum += w[i1] * row;
    }
    return chunk_sum;
  });
}

}  // namespace

std::string_view to_string(CountMethod method) noexcept {
  return method == CountMethod::TripleLoop ? "triple-loop" : "sqrt-bucket";
}

CountMethod parse_count_method(std::string_view name) {
  if (name == "triple-loop") return CountMethod::TripleLoop;
  if (name == "sqrt-bucket") return CountMethod::SqrtBucket;
  throw Error(ErrorCode::InvalidArgument, "unknown count method '" + std::string(name) + "'");
}

std::int64_t CountConfig::box_radius() const { return static_cast<std::int64_t>(std::floor(cutoff * N)); }

void CountConfig::validate() const {
  if (modulus.p() <= 5) {
    throw Error(ErrorCode::SmallPrime, "p = " + std::to_string(modulus.p()) + ": unit solutions need p > 5");
  }
  if (!(N >= 1) || !std::isfinite(N)) throw Error(ErrorCode::InvalidArgument, "N must be >= 1");
  const double needed = weight.truncation_radius(kCutoffTolerance);
  if (!(cutoff >= needed)) {
    throw Error(ErrorCode::InvalidArgument,
                "cutoff " + std::to_string(cutoff) + " is below the weight's truncation radius " + std::to_string(needed));
  }
}

double CountReport::nu() const {
  return std::log(config.N) / std::log(static_cast<double>(config.modulus.q()));
}

double predict_main_term(const CountConfig& cfg) {
  const std::uint64_t p = cfg.modulus.p();
  if (p <= 5) throw Error(ErrorCode::SmallPrime, "main term needs p > 5");
  const double mass = cfg.weight.fourier_at_zero();
  const auto pd = static_cast<double>(p);
  const double density = (pd - s_of_p(p)) * (pd - 1.0) / (pd * pd);
  return mass * mass * mass * density * cfg.N * cfg.N * cfg.N / static_cast<double>(cfg.modulus.q());
}

CountReport count_smoothed(const CountConfig& cfg) {
  cfg.validate();
  const auto start = std::chrono::steady_clock::now();
  const std::int64_t M = cfg.box_radius();
  const Box box(M, cfg.modulus.q());
  if (cfg.method == CountMethod::TripleLoop) {
    const double side = static_cast<double>(box.width());
    if (side * side * side > kMaxTripleLoopWork) throw Error(ErrorCode::TooLarge, "triple loop capped at 10^9 box points");
  } else if (cfg.modulus.q() > kMaxBucketModulus) {
    throw Error(ErrorCode::TooLarge, "sqrt-bucket needs q <= 2^26");
  }

  std::vector<double> w(box.width(), 0.0);
  for (std::int64_t x = -M; x <= M; ++x) {
    if (cfg.modulus.is_unit(x)) w[static_cast<std::size_t>(x + M)] = cfg.weight.value(static_cast<double>(x) / cfg.N);
  }
  const double measured = cfg.method == CountMethod::SqrtBucket ? sqrt_bucket_kernel(box, cfg.modulus, w, cfg.threads)
                                                                : triple_loop_kernel(box, w, cfg.threads);
  const double predicted = predict_main_term(cfg);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return CountReport{cfg, measured, predicted, measured / predicted, std::nullopt, seconds, cfg.weight.value(cfg.cutoff)};
}

std::uint64_t count_box_exact(const PrimePowerModulus& m, std::int64_t N, unsigned threads) {
  if (N < 0) throw Error(ErrorCode::InvalidArgument, "N must be nonnegative");
  const double side = 2.0 * static_cast<double>(N) + 1.0;
  if (side * side > kMaxBoxPairs) throw Error(ErrorCode::TooLarge, "box too large for exact counting");
  const Box box(N, m.q());
  std::vector<std::uint64_t> unit(box.width(), 0);
  for (std::int64_t x = -N; x <= N; ++x) unit[static_cast<std::size_t>(x + N)] = m.is_unit(x) ? 1 : 0;
  return sqrt_bucket_kernel(box, m, unit, threads);
}

TransitionCheck transition_check(const PrimePowerModulus& m, std::int64_t N, unsigned threads) {
  if (N < 0 || 2 * static_cast<double>(N) * static_cast<double>(N) >= static_cast<double>(m.q())) {
    throw Error(ErrorCode::RangeViolation, "transition check needs N < sqrt(q/2)");
  }
  const std::uint64_t congruence = count_box_exact(m, N, threads);
  std::uint64_t equation = 0;
  for (std::int64_t x1 = -N; x1 <= N; ++x1) {
    if (!m.is_unit(x1)) continue;
    for (std::int64_t x2 = -N; x2 <= N; ++x2) {
      if (!m.is_unit(x2)) continue;
      const std::int64_t s = x1 * x1 + x2 * x2;
      auto x3 = static_cast<std::int64_t>(std::sqrt(static_cast<double>(s)));
      while (x3 * x3 > s) --x3;
      while ((x3 + 1) * (x3 + 1) <= s) ++x3;
      if (x3 * x3 == s && x3 <= N && m.is_unit(x3)) equation += 2;
    }
  }
  return {congruence, equation, congruence == equation};
}

}  // namespace pythmod
