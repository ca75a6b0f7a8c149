#pragma once

#include "jordan/field.hpp"
#include "jordan/poly.hpp"

#include <cassert>
#include <cstdint>
#include <vector>

namespace jordan {

/// Lightweight GF(p) element for the hot enumeration loops. No field tag per
/// element beyond p itself; the checking layer guarantees all operands share
/// one characteristic. Requires p < 2^31 (enforced by FieldSpec) so products
/// fit in uint64.
struct Zp {
  std::uint64_t v = 0;
  std::uint64_t p = 1;

  bool is_zero() const { return v == 0; }
  friend Zp operator+(Zp a, Zp b) {
    assert(a.p == b.p);
    std::uint64_t s = a.v + b.v;
    return {s >= a.p ? s - a.p : s, a.p};
  }
  friend Zp operator-(Zp a, Zp b) {
    assert(a.p == b.p);
    return {a.v >= b.v ? a.v - b.v : a.v + a.p - b.v, a.p};
  }
  friend Zp operator*(Zp a, Zp b) {
    assert(a.p == b.p);
    return {(a.v * b.v) % a.p, a.p};
  }
  Zp operator-() const { return {v == 0 ? 0 : p - v, p}; }
  Zp& operator+=(Zp o) { return *this = *this + o; }
  Zp& operator-=(Zp o) { return *this = *this - o; }
  Zp& operator*=(Zp o) { return *this = *this * o; }
  friend bool operator==(Zp a, Zp b) { return a.v == b.v; }
};

/// Uniform construction interface over the three coefficient rings the
/// identity checker instantiates: exact Scalars, fast Zp residues, and
/// polynomials (for formal checks). Ctx carries whatever the ring needs to
/// make elements.
template <class R>
struct RingOps;

template <>
struct RingOps<Scalar> {
  using Ctx = FieldSpec;
  static Scalar zero(const Ctx& f) { return Scalar::zero(f); }
  static Scalar from_scalar(const Ctx&, const Scalar& s) { return s; }
};

template <>
struct RingOps<Zp> {
  using Ctx = std::uint64_t; // the characteristic
  static Zp zero(const Ctx& p) { return {0, p}; }
  static Zp from_scalar(const Ctx& p, const Scalar& s) {
    assert(s.field().characteristic() == p);
    return {s.residue(), p};
  }
};

template <>
struct RingOps<Poly> {
  struct Ctx {
    FieldSpec field;
    std::uint32_t nvars;
  };
  static Poly zero(const Ctx& c) { return Poly(c.field, c.nvars); }
  static Poly from_scalar(const Ctx& c, const Scalar& s) {
    return Poly::constant(c.field, c.nvars, s);
  }
};

template <class R>
bool all_zero(const std::vector<R>& v) {
  for (const R& x : v)
    if (!x.is_zero())
      return false;
  return true;
}

template <class R>
std::vector<R> vec_add(std::vector<R> a, const std::vector<R>& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    a[i] += b[i];
  return a;
}

template <class R>
std::vector<R> vec_sub(std::vector<R> a, const std::vector<R>& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    a[i] -= b[i];
  return a;
}

template <class R>
std::vector<R> vec_scale(const R& c, std::vector<R> v) {
  for (R& x : v)
    x *= c;
  return v;
}

} // namespace jordan
