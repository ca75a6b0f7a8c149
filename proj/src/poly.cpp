#include "jordan/poly.hpp"

#include <numeric>
#include <sstream>
#include <stdexcept>

namespace jordan {

namespace {

std::uint32_t total_degree(const Poly::Expo& e) {
  std::uint32_t d = 0;
  for (std::uint32_t x : e)
    d += x;
  return d;
}

} // namespace

bool Poly::GradedLess::operator()(const Expo& a, const Expo& b) const {
  std::uint32_t da = total_degree(a), db = total_degree(b);
  if (da != db)
    return da < db;
  return a < b;
}

Poly::Poly(FieldSpec f, std::uint32_t nvars) : f_(f), nvars_(nvars) {}

Poly Poly::constant(FieldSpec f, std::uint32_t nvars, const Scalar& c) {
  Poly p(f, nvars);
  if (!c.is_zero())
    p.terms_.emplace(Expo(nvars, 0), c);
  return p;
}

Poly Poly::variable(FieldSpec f, std::uint32_t nvars, std::uint32_t i) {
  if (i >= nvars)
    throw std::invalid_argument("variable index out of range");
  Poly p(f, nvars);
  Expo e(nvars, 0);
  e[i] = 1;
  p.terms_.emplace(std::move(e), Scalar::one(f));
  return p;
}

std::uint32_t Poly::degree() const {
  if (terms_.empty())
    return 0;
  return total_degree(terms_.rbegin()->first);
}

Scalar Poly::coeff(const Expo& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Scalar::zero(f_) : it->second;
}

void Poly::insert_term(const Expo& e, const Scalar& c) {
  if (c.is_zero())
    return;
  auto [it, fresh] = terms_.emplace(e, c);
  if (!fresh) {
    it->second += c;
    if (it->second.is_zero())
      terms_.erase(it);
  }
}

Poly Poly::operator-() const {
  Poly r(*this);
  for (auto& [e, c] : r.terms_)
    c = -c;
  return r;
}

Poly Poly::operator+(const Poly& o) const {
  if (f_ != o.f_ || nvars_ != o.nvars_)
    throw std::invalid_argument("polynomial ring mismatch");
  Poly r(*this);
  for (const auto& [e, c] : o.terms_)
    r.insert_term(e, c);
  return r;
}

Poly Poly::operator-(const Poly& o) const {
  return *this + (-o);
}

Poly Poly::operator*(const Poly& o) const {
  if (f_ != o.f_ || nvars_ != o.nvars_)
    throw std::invalid_argument("polynomial ring mismatch");
  Poly r(f_, nvars_);
  for (const auto& [ea, ca] : terms_)
    for (const auto& [eb, cb] : o.terms_) {
      Expo e(nvars_);
      for (std::uint32_t i = 0; i < nvars_; ++i)
        e[i] = ea[i] + eb[i];
      r.insert_term(e, ca * cb);
    }
  return r;
}

bool Poly::operator==(const Poly& o) const {
  return f_ == o.f_ && nvars_ == o.nvars_ && terms_ == o.terms_;
}

Scalar Poly::eval(const std::vector<Scalar>& point) const {
  if (point.size() != nvars_)
    throw std::invalid_argument("eval point of wrong dimension");
  Scalar acc = Scalar::zero(f_);
  for (const auto& [e, c] : terms_) {
    Scalar t = c;
    for (std::uint32_t i = 0; i < nvars_; ++i)
      for (std::uint32_t k = 0; k < e[i]; ++k)
        t *= point[i];
    acc += t;
  }
  return acc;
}

std::string Poly::to_string() const {
  if (terms_.empty())
    return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    Scalar coeff = c;
    if (first) {
      if (coeff.field().is_rationals() && coeff.rational_value() < 0) {
        os << "-";
        coeff = -coeff;
      }
    } else {
      bool neg = coeff.field().is_rationals() && coeff.rational_value() < 0;
      os << (neg ? " - " : " + ");
      if (neg)
        coeff = -coeff;
    }
    bool has_vars = total_degree(e) > 0;
    if (!has_vars || !coeff.is_one()) {
      os << coeff;
      if (has_vars)
        os << "*";
    }
    bool first_var = true;
    for (std::uint32_t i = 0; i < nvars_; ++i) {
      if (e[i] == 0)
        continue;
      if (!first_var)
        os << "*";
      first_var = false;
      os << "t" << i;
      if (e[i] > 1)
        os << "^" << e[i];
    }
    first = false;
  }
  return os.str();
}

bool poly_eval_zero(const Poly& p) {
  return p.is_zero();
}

} // namespace jordan
