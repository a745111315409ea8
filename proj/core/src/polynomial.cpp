#include "pythmod/polynomial.hpp"

#include <algorithm>

namespace pythmod {

namespace {

Integer add_checked(Integer a, Integer b) {
  Integer r;
  if (__builtin_add_overflow(a, b, &r)) throw Error(ErrorCode::Overflow, "polynomial coefficient overflow");
  return r;
}

Integer sub_checked(Integer a, Integer b) {
  Integer r;
  if (__builtin_sub_overflow(a, b, &r)) throw Error(ErrorCode::Overflow, "polynomial coefficient overflow");
  return r;
}

Integer mul_checked(Integer a, Integer b) {
  Integer r;
  if (__builtin_mul_overflow(a, b, &r)) throw Error(ErrorCode::Overflow, "polynomial coefficient overflow");
  return r;
}

std::uint64_t reduce_integer(Integer a, std::uint64_t m) noexcept {
  const auto mod = static_cast<Integer>(m);
  Integer r = a % mod;
  if (r < 0) r += mod;
  return static_cast<std::uint64_t>(r);
}

}  // namespace

std::string to_string(Integer value) {
  if (value == 0) return "0";
  const bool negative = value < 0;
  auto magnitude = negative ? -static_cast<unsigned __int128>(value) : static_cast<unsigned __int128>(value);
  std::string digits;
  while (magnitude > 0) {
    digits.push_back(static_cast<char>('0' + static_cast<int>(magnitude % 10)));
    magnitude /= 10;
  }
  if (negative) digits.push_back('-');
  std::reverse(digits.begin(), digits.end());
  return digits;
}

Polynomial::Polynomial(std::initializer_list<Integer> coefficients) : coeffs_(coefficients) { trim(); }

Polynomial::Polynomial(std::vector<Integer> coefficients) : coeffs_(std::move(coefficients)) { trim(); }

Polynomial Polynomial::monomial(Integer c, int degree) {
  std::vector<Integer> coeffs(static_cast<std::size_t>(degree) + 1, 0);
  coeffs.back() = c;
  return Polynomial(std::move(coeffs));
}

void Polynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Integer Polynomial::coefficient(int i) const noexcept {
  if (i < 0 || i >= static_cast<int>(coeffs_.size())) return 0;
  return coeffs_[static_cast<std::size_t>(i)];
}

Polynomial Polynomial::derivative() const {
  if (coeffs_.size() <= 1) return {};
  std::vector<Integer> out(coeffs_.size() - 1);
  for (std::size_t i = 1; i < coeffs_.size(); ++i) {
    out[i - 1] = mul_checked(coeffs_[i], static_cast<Integer>(i));
  }
  return Polynomial(std::move(out));
}

int Polynomial::order(std::uint64_t p) const {
  if (is_zero()) return kInfiniteOrder;
  int best = kInfiniteOrder;
  const auto prime = static_cast<Integer>(p);
  for (Integer c : coeffs_) {
    if (c == 0) continue;
    int e = 0;
    while (c % prime == 0) {
      c /= prime;
      ++e;
    }
    best = std::min(best, e);
  }
  return best;
}

Polynomial Polynomial::divide_exact(Integer d) const {
  std::vector<Integer> out(coeffs_);
  for (auto& c : out) {
    if (c % d != 0) throw Error(ErrorCode::InvalidArgument, "coefficient not divisible");
    c /= d;
  }
  return Polynomial(std::move(out));
}

std::uint64_t Polynomial::eval_mod(std::uint64_t x, std::uint64_t m) const noexcept {
  std::uint64_t acc = 0;
  x %= m;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc = (mul_mod(acc, x, m) + reduce_integer(*it, m)) % m;
  }
  return acc;
}

long double Polynomial::eval(long double x) const noexcept {
  long double acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc = acc * x + static_cast<long double>(*it);
  }
  return acc;
}

Polynomial Polynomial::operator+(const Polynomial& other) const {
  std::vector<Integer> out(std::max(coeffs_.size(), other.coeffs_.size()), 0);
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = add_checked(coefficient(static_cast<int>(i)), other.coefficient(static_cast<int>(i)));
  }
  return Polynomial(std::move(out));
}

Polynomial Polynomial::operator-(const Polynomial& other) const {
  std::vector<Integer> out(std::max(coeffs_.size(), other.coeffs_.size()), 0);
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = sub_checked(coefficient(static_cast<int>(i)), other.coefficient(static_cast<int>(i)));
  }
  return Polynomial(std::move(out));
}

Polynomial Polynomial::operator*(const Polynomial& other) const {
  if (is_zero() || other.is_zero()) return {};
  std::vector<Integer> out(coeffs_.size() + other.coeffs_.size() - 1, 0);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    for (std::size_t j = 0; j < other.coeffs_.size(); ++j) {
      out[i + j] = add_checked(out[i + j], mul_checked(coeffs_[i], other.coeffs_[j]));
    }
  }
  return Polynomial(std::move(out));
}

Polynomial Polynomial::operator*(Integer scalar) const {
  std::vector<Integer> out(coeffs_);
  for (auto& c : out) c = mul_checked(c, scalar);
  return Polynomial(std::move(out));
}

std::string Polynomial::to_string(char variable) const {
  if (is_zero()) return "0";
  std::string out;
  for (int i = degree(); i >= 0; --i) {
    const Integer c = coeffs_[static_cast<std::size_t>(i)];
    if (c == 0) continue;
    const Integer magnitude = c < 0 ? -c : c;
    if (out.empty()) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    if (magnitude != 1 || i == 0) out += pythmod::to_string(magnitude);
    if (i >= 1) out += variable;
    if (i >= 2) out += "^" + std::to_string(i);
  }
  return out;
}

RationalFunction::RationalFunction(Polynomial numerator, Polynomial denominator)
    : num_(std::move(numerator)), den_(std::move(denominator)) {
  if (den_.is_zero()) throw Error(ErrorCode::InvalidArgument, "zero denominator polynomial");
}

RationalFunction RationalFunction::derivative() const {
  return RationalFunction(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
}

RationalFunction RationalFunction::operator*(const RationalFunction& other) const {
  return RationalFunction(num_ * other.num_, den_ * other.den_);
}

std::string RationalFunction::to_string(char variable) const {
  return "(" + num_.to_string(variable) + ")/(" + den_.to_string(variable) + ")";
}

int ord_p_rational(const RationalFunction& f, std::uint64_t p) {
  const int top = f.numerator().order(p);
  if (top == kInfiniteOrder) return kInfiniteOrder;
  return top - f.denominator().order(p);
}

RationalFunction derivative(const RationalFunction& f) { return f.derivative(); }

Residue eval_rational_mod(const RationalFunction& f, const Residue& x, const PrimePowerModulus& m) {
  if (!(x.modulus() == m)) throw Error(ErrorCode::ModulusMismatch, "argument and modulus differ");
  const std::uint64_t den = f.denominator().eval_mod(x.value(), m.q());
  const auto inverse = try_inverse(static_cast<std::int64_t>(den), m.q());
  if (!inverse) {
    throw Error(ErrorCode::DenominatorNotUnit,
                "denominator vanishes mod " + std::to_string(m.p()) + " at " + std::to_string(x.value()));
  }
  const std::uint64_t num = f.numerator().eval_mod(x.value(), m.q());
  return Residue(static_cast<std::int64_t>(mul_mod(num, *inverse, m.q())), m);
}

}  // namespace pythmod
