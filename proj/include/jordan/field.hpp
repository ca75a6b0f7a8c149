#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <string_view>

namespace jordan {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

/// Coefficient field for every structure in the library: the rationals, or a
/// prime field GF(p) with p an odd prime below 2^31. Characteristic 2 is
/// rejected because the product theory divides by 2 throughout.
class FieldSpec {
public:
  /// Defaults to the rationals.
  FieldSpec() = default;

  static FieldSpec rationals() { return FieldSpec(); }

  /// Throws std::invalid_argument unless p is an odd prime < 2^31.
  static FieldSpec prime(std::uint64_t p);

  bool is_rationals() const { return p_ == 0; }
  bool is_prime_field() const { return p_ != 0; }

  /// 0 for the rationals, p for GF(p).
  std::uint64_t characteristic() const { return p_; }

  /// Field size; throws std::domain_error for the rationals.
  std::uint64_t order() const;

  /// "Q" or "GF(p)".
  std::string to_string() const;

  /// Parses "Q" or "GF(p)"; throws std::invalid_argument on anything else.
  static FieldSpec parse(std::string_view text);

  friend bool operator==(FieldSpec a, FieldSpec b) { return a.p_ == b.p_; }
  friend bool operator!=(FieldSpec a, FieldSpec b) { return a.p_ != b.p_; }

private:
  std::uint64_t p_ = 0;
};

/// Exact element of a FieldSpec. Rational values are immutable shared
/// big-rationals (null meaning zero), prime-field values are residues in
/// [0, p). Arithmetic between scalars of different fields throws
/// std::invalid_argument; division by zero throws std::domain_error.
class Scalar {
public:
  /// Rational zero.
  Scalar() = default;

  static Scalar zero(FieldSpec f);
  static Scalar one(FieldSpec f);
  static Scalar from_int(FieldSpec f, long long n);
  static Scalar from_rational(const BigRat& value); // rationals only

  /// Parses "a" or "a/b" (optional leading '-'). Over GF(p) the value is
  /// reduced mod p and a/b requires p not dividing b. Throws
  /// std::invalid_argument on malformed input or zero denominator.
  static Scalar parse(FieldSpec f, std::string_view text);

  FieldSpec field() const;
  bool is_zero() const;
  bool is_one() const;

  /// Residue in [0, p); throws std::domain_error over the rationals.
  std::uint64_t residue() const;
  /// Underlying rational; throws std::domain_error over a prime field.
  const BigRat& rational_value() const;

  Scalar operator-() const;
  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator*(const Scalar& o) const;
  Scalar operator/(const Scalar& o) const;
  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
  Scalar& operator/=(const Scalar& o) { return *this = *this / o; }

  Scalar inverse() const;

  bool operator==(const Scalar& o) const;
  bool operator!=(const Scalar& o) const { return !(*this == o); }

  /// Total order used for canonical serialization: numeric over the
  /// rationals, residue order over GF(p). Returns <0, 0, >0.
  int cmp(const Scalar& o) const;
  bool operator<(const Scalar& o) const { return cmp(o) < 0; }

  /// Canonical text: always "a/b" with b > 0 and gcd(a,b) = 1 over the
  /// rationals (e.g. "3/1", "-1/2"), the decimal residue over GF(p).
  std::string to_string() const;

private:
  Scalar(std::uint64_t p, std::uint64_t res) : p_(p), res_(res) {}
  explicit Scalar(BigRat value);
  void check_same_field(const Scalar& o) const;

  std::uint64_t p_ = 0;   // 0 = rationals
  std::uint64_t res_ = 0; // residue when p_ != 0
  std::shared_ptr<const BigRat> rat_; // null = 0 when p_ == 0
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);

/// Thrown when an enumeration or search would exceed its configured bound.
class BoundExceeded : public std::runtime_error {
public:
  BoundExceeded(std::string_view what, std::uint64_t needed, std::uint64_t bound);
  std::uint64_t needed() const { return needed_; }
  std::uint64_t bound() const { return bound_; }

private:
  std::uint64_t needed_;
  std::uint64_t bound_;
};

/// p^e with overflow saturation to UINT64_MAX (callers compare against
/// bounds, so saturation is the right failure mode).
std::uint64_t pow_sat(std::uint64_t p, std::uint64_t e);

} // namespace jordan
