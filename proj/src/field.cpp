#include "jordan/field.hpp"

#include <cctype>
#include <ostream>
#include <stdexcept>

namespace jordan {

namespace {

bool is_odd_prime(std::uint64_t p) {
  if (p < 3 || p % 2 == 0)
    return false;
  for (std::uint64_t d = 3; d * d <= p; d += 2)
    if (p % d == 0)
      return false;
  return true;
}

std::uint64_t mod_inverse(std::uint64_t a, std::uint64_t p) {
  // extended euclid on (a, p); a in [1, p)
  std::int64_t t = 0, nt = 1;
  std::int64_t r = static_cast<std::int64_t>(p), nr = static_cast<std::int64_t>(a);
  while (nr != 0) {
    std::int64_t q = r / nr;
    std::int64_t tmp = t - q * nt;
    t = nt;
    nt = tmp;
    tmp = r - q * nr;
    r = nr;
    nr = tmp;
  }
  if (t < 0)
    t += static_cast<std::int64_t>(p);
  return static_cast<std::uint64_t>(t);
}

const BigRat& rat_zero() {
  static const BigRat z(0);
  return z;
}

} // namespace

FieldSpec FieldSpec::prime(std::uint64_t p) {
  if (p >= (1ull << 31))
    throw std::invalid_argument("prime field characteristic must be < 2^31, got " + std::to_string(p));
  if (p == 2)
    throw std::invalid_argument("characteristic 2 is not supported (the theory divides by 2)");
  if (!is_odd_prime(p))
    throw std::invalid_argument("not a prime: " + std::to_string(p));
  FieldSpec f;
  f.p_ = p;
  return f;
}

std::uint64_t FieldSpec::order() const {
  if (p_ == 0)
    throw std::domain_error("the rationals are infinite");
  return p_;
}

std::string FieldSpec::to_string() const {
  if (p_ == 0)
    return "Q";
  return "GF(" + std::to_string(p_) + ")";
}

FieldSpec FieldSpec::parse(std::string_view text) {
  if (text == "Q")
    return rationals();
  if (text.size() > 4 && text.substr(0, 3) == "GF(" && text.back() == ')') {
    std::string_view num = text.substr(3, text.size() - 4);
    std::uint64_t p = 0;
    if (num.empty() || num.size() > 10)
      throw std::invalid_argument("bad field spec: " + std::string(text));
    for (char c : num) {
      if (!std::isdigit(static_cast<unsigned char>(c)))
        throw std::invalid_argument("bad field spec: " + std::string(text));
      p = p * 10 + static_cast<std::uint64_t>(c - '0');
    }
    return prime(p);
  }
  throw std::invalid_argument("bad field spec: " + std::string(text) + " (expected Q or GF(p))");
}

Scalar::Scalar(BigRat value) : p_(0) {
  if (value != 0)
    rat_ = std::make_shared<const BigRat>(std::move(value));
}

Scalar Scalar::zero(FieldSpec f) {
  if (f.is_rationals())
    return Scalar();
  return Scalar(f.characteristic(), 0);
}

Scalar Scalar::one(FieldSpec f) {
  if (f.is_rationals())
    return Scalar(BigRat(1));
  return Scalar(f.characteristic(), 1);
}

Scalar Scalar::from_int(FieldSpec f, long long n) {
  if (f.is_rationals())
    return Scalar(BigRat(n));
  std::uint64_t p = f.characteristic();
  long long r = n % static_cast<long long>(p);
  if (r < 0)
    r += static_cast<long long>(p);
  return Scalar(p, static_cast<std::uint64_t>(r));
}

Scalar Scalar::from_rational(const BigRat& value) {
  return Scalar(BigRat(value));
}

FieldSpec Scalar::field() const {
  return p_ == 0 ? FieldSpec::rationals() : FieldSpec::prime(p_);
}

bool Scalar::is_zero() const {
  return p_ == 0 ? rat_ == nullptr : res_ == 0;
}

bool Scalar::is_one() const {
  return p_ == 0 ? (rat_ && *rat_ == 1) : res_ == 1;
}

std::uint64_t Scalar::residue() const {
  if (p_ == 0)
    throw std::domain_error("residue() on a rational scalar");
  return res_;
}

const BigRat& Scalar::rational_value() const {
  if (p_ != 0)
    throw std::domain_error("rational_value() on a prime-field scalar");
  return rat_ ? *rat_ : rat_zero();
}

void Scalar::check_same_field(const Scalar& o) const {
  if (p_ != o.p_)
    throw std::invalid_argument("scalar field mismatch: " + field().to_string() + " vs " + o.field().to_string());
}

Scalar Scalar::operator-() const {
  if (p_ == 0)
    return rat_ ? Scalar(BigRat(-*rat_)) : Scalar();
  return Scalar(p_, res_ == 0 ? 0 : p_ - res_);
}

Scalar Scalar::operator+(const Scalar& o) const {
  check_same_field(o);
  if (p_ == 0) {
    if (!rat_)
      return o;
    if (!o.rat_)
      return *this;
    return Scalar(BigRat(*rat_ + *o.rat_));
  }
  std::uint64_t s = res_ + o.res_;
  return Scalar(p_, s >= p_ ? s - p_ : s);
}

Scalar Scalar::operator-(const Scalar& o) const {
  return *this + (-o);
}

Scalar Scalar::operator*(const Scalar& o) const {
  check_same_field(o);
  if (p_ == 0) {
    if (!rat_ || !o.rat_)
      return Scalar();
    return Scalar(BigRat(*rat_ * *o.rat_));
  }
  return Scalar(p_, (res_ * o.res_) % p_);
}

Scalar Scalar::inverse() const {
  if (is_zero())
    throw std::domain_error("inverse of zero");
  if (p_ == 0)
    return Scalar(BigRat(1 / *rat_));
  return Scalar(p_, mod_inverse(res_, p_));
}

Scalar Scalar::operator/(const Scalar& o) const {
  return *this * o.inverse();
}

bool Scalar::operator==(const Scalar& o) const {
  if (p_ != o.p_)
    return false;
  if (p_ != 0)
    return res_ == o.res_;
  return rational_value() == o.rational_value();
}

int Scalar::cmp(const Scalar& o) const {
  check_same_field(o);
  if (p_ != 0)
    return res_ < o.res_ ? -1 : (res_ == o.res_ ? 0 : 1);
  const BigRat& a = rational_value();
  const BigRat& b = o.rational_value();
  return a < b ? -1 : (a == b ? 0 : 1);
}

std::string Scalar::to_string() const {
  if (p_ != 0)
    return std::to_string(res_);
  const BigRat& v = rational_value();
  return numerator(v).str() + "/" + denominator(v).str();
}

Scalar Scalar::parse(FieldSpec f, std::string_view text) {
  auto bad = [&]() -> std::invalid_argument {
    return std::invalid_argument("bad scalar: '" + std::string(text) + "'");
  };
  auto parse_int = [&](std::string_view s) -> BigInt {
    if (s.empty())
      throw bad();
    std::size_t i = 0;
    bool neg = false;
    if (s[0] == '-' || s[0] == '+') {
      neg = s[0] == '-';
      i = 1;
    }
    if (i == s.size())
      throw bad();
    BigInt v = 0;
    for (; i < s.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(s[i])))
        throw bad();
      v = v * 10 + (s[i] - '0');
    }
    return neg ? BigInt(-v) : v;
  };

  std::size_t slash = text.find('/');
  BigInt num, den;
  if (slash == std::string_view::npos) {
    num = parse_int(text);
    den = 1;
  } else {
    num = parse_int(text.substr(0, slash));
    den = parse_int(text.substr(slash + 1));
    if (den == 0)
      throw std::invalid_argument("zero denominator in scalar: '" + std::string(text) + "'");
  }

  if (f.is_rationals())
    return Scalar(BigRat(num, den));

  BigInt p(f.characteristic());
  BigInt n = num % p;
  if (n < 0)
    n += p;
  BigInt d = den % p;
  if (d < 0)
    d += p;
  if (d == 0)
    throw std::invalid_argument("denominator divisible by the characteristic: '" + std::string(text) + "'");
  Scalar sn(f.characteristic(), n.convert_to<std::uint64_t>());
  Scalar sd(f.characteristic(), d.convert_to<std::uint64_t>());
  return sn / sd;
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) {
  return os << s.to_string();
}

BoundExceeded::BoundExceeded(std::string_view what, std::uint64_t needed, std::uint64_t bound)
    : std::runtime_error(std::string(what) + ": needs " + std::to_string(needed) +
                         " candidates, bound is " + std::to_string(bound)),
      needed_(needed), bound_(bound) {}

std::uint64_t pow_sat(std::uint64_t p, std::uint64_t e) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < e; ++i) {
    if (p != 0 && r > UINT64_MAX / p)
      return UINT64_MAX;
    r *= p;
  }
  return r;
}

} // namespace jordan
