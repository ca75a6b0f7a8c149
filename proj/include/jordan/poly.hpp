#pragma once

#include "jordan/field.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace jordan {

/// Sparse multivariate polynomial over a FieldSpec, used to verify identities
/// formally: an identity holds over the field iff its defect, expanded with
/// indeterminate coordinates, is the zero polynomial in this ring (over the
/// rationals; over GF(p) the formal statement is stronger than the pointwise
/// one, which the checking layer reports).
class Poly {
public:
  using Expo = std::vector<std::uint32_t>;

  /// Graded lexicographic order: lower total degree first, then lex on the
  /// exponent vectors. Gives a canonical term order for printing and for
  /// picking the "leading" monomial of a nonzero defect.
  struct GradedLess {
    bool operator()(const Expo& a, const Expo& b) const;
  };
  using TermMap = std::map<Expo, Scalar, GradedLess>;

  /// Zero polynomial (in zero variables over the rationals by default).
  Poly() = default;
  /// Zero polynomial in nvars variables.
  Poly(FieldSpec f, std::uint32_t nvars);
  static Poly constant(FieldSpec f, std::uint32_t nvars, const Scalar& c);
  static Poly variable(FieldSpec f, std::uint32_t nvars, std::uint32_t i);

  FieldSpec field() const { return f_; }
  std::uint32_t nvars() const { return nvars_; }
  bool is_zero() const { return terms_.empty(); }
  std::uint32_t degree() const; // 0 for the zero polynomial
  const TermMap& terms() const { return terms_; }
  Scalar coeff(const Expo& e) const;

  Poly operator-() const;
  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly& operator+=(const Poly& o) { return *this = *this + o; }
  Poly& operator-=(const Poly& o) { return *this = *this - o; }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }

  bool operator==(const Poly& o) const;
  bool operator!=(const Poly& o) const { return !(*this == o); }

  Scalar eval(const std::vector<Scalar>& point) const;

  /// e.g. "2*t0^2*t3 - 1/2*t1". Terms in descending graded-lex order.
  std::string to_string() const;

private:
  void insert_term(const Expo& e, const Scalar& c);

  FieldSpec f_;
  std::uint32_t nvars_ = 0;
  TermMap terms_; // invariant: no zero coefficients
};

/// True iff p is the zero polynomial (exact, by the sparse representation).
bool poly_eval_zero(const Poly& p);

} // namespace jordan
