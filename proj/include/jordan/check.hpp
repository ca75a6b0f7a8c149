#pragma once

#include "jordan/linalg.hpp"
#include "jordan/poly.hpp"
#include "jordan/ring.hpp"

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace jordan {

/// How an identity is verified.
///
/// Formal: expand the defect with indeterminate coordinates in the nonlinear
/// slots; pass iff it is the zero polynomial. Exact over the rationals; over
/// GF(p) a formal pass implies the pointwise identity but a formal failure
/// does not refute it (x^p - x vanishes pointwise).
///
/// Exhaustive: enumerate all vectors of GF(p)^dim in the nonlinear slots.
/// Throws BoundExceeded when p^(total nonlinear dim) exceeds `bound`.
///
/// Sampled: `count` pseudo-random assignments from mt19937(seed). A pass is
/// evidence, not proof; reports carry the seed so failures replay.
///
/// In every mode, slots declared linear range over basis vectors only: the
/// checked defects are jointly multilinear in those slots, so basis values
/// decide them exactly.
struct CheckMode {
  enum class Kind { Formal, Exhaustive, Sampled };

  Kind kind = Kind::Formal;
  std::uint64_t bound = 1'000'000;
  std::uint32_t seed = 0;
  std::uint32_t count = 200;

  static CheckMode formal() { return {}; }
  static CheckMode exhaustive(std::uint64_t bound = 1'000'000) {
    return {Kind::Exhaustive, bound, 0, 0};
  }
  static CheckMode sampled(std::uint32_t seed = 0, std::uint32_t count = 200) {
    return {Kind::Sampled, 0, seed, count};
  }

  std::string to_string() const;
};

/// Default policy: formal over the rationals; over GF(p) exhaustive when
/// p^enum_dim <= bound and sampled otherwise. enum_dim is the largest total
/// nonlinear dimension among the identities to be checked.
CheckMode default_mode(FieldSpec f, std::size_t enum_dim, std::uint64_t bound = 1'000'000);

/// One quantified variable of an identity. `linear` promises the defect is
/// multilinear in this slot (every expanded term uses it exactly once), which
/// lets the checker quantify over basis vectors only.
struct Slot {
  std::string name;
  std::size_t dim = 0;
  bool linear = false;
};

/// Outcome of checking a single identity.
struct AxiomCheck {
  std::string axiom;
  bool passed = true;
  CheckMode mode;
  std::vector<std::string> slot_names;
  /// First failing assignment, one vector per slot, in enumeration order
  /// (empty for formal failures, which have no single witness point).
  std::vector<Vec> witness;
  std::string note;

  std::string to_string() const;
};

struct ValidationReport {
  std::vector<AxiomCheck> checks;

  bool passed() const;
  const AxiomCheck* find(std::string_view axiom) const;
  void append(const ValidationReport& o);
  std::string to_text() const; // one line per check
};

namespace detail {

/// Runs fn(combo) for every assignment of basis indices to the linear slots,
/// last slot fastest. Returns false early when fn does. With no linear slots
/// this is a single call with the empty combo; a zero-dimensional linear slot
/// makes the quantification vacuous (no calls, return true).
bool for_each_linear_combo(const std::vector<Slot>& slots,
                           const std::function<bool(const std::vector<std::size_t>&)>& fn);

/// Advances a mixed-radix counter (all digits radix p, last digit fastest).
/// Returns false on wraparound to all zeros.
bool next_tuple(std::vector<std::uint64_t>& digits, std::uint64_t p);

Scalar random_scalar(FieldSpec f, std::mt19937& rng);

} // namespace detail

/// Checks one identity. `factory` is a generic callable instantiated per
/// coefficient ring: factory.template operator()<R>(ctx) must return a
/// callable mapping the slot assignment (one std::vector<R> per slot, in slot
/// order) to the defect coordinates; the identity holds at that assignment
/// iff all defect coordinates are zero.
///
/// Enumeration order is deterministic: exhaustive mode scans the
/// concatenated nonlinear coordinates as ascending base-p tuples (last
/// coordinate fastest) with the linear basis combos innermost, and reports
/// the first counterexample in that order.
template <class Factory>
AxiomCheck check_identity(std::string axiom, FieldSpec f, const std::vector<Slot>& slots,
                          const CheckMode& mode, Factory&& factory) {
  AxiomCheck out;
  out.axiom = std::move(axiom);
  out.mode = mode;
  for (const Slot& s : slots)
    out.slot_names.push_back(s.name);

  std::size_t nonlinear_dim = 0;
  for (const Slot& s : slots)
    if (!s.linear)
      nonlinear_dim += s.dim;

  switch (mode.kind) {
  case CheckMode::Kind::Formal: {
    typename RingOps<Poly>::Ctx ctx{f, static_cast<std::uint32_t>(nonlinear_dim)};
    auto defect = factory.template operator()<Poly>(ctx);
    detail::for_each_linear_combo(slots, [&](const std::vector<std::size_t>& combo) {
      std::vector<std::vector<Poly>> args;
      std::size_t offset = 0, li = 0;
      for (const Slot& s : slots) {
        std::vector<Poly> arg;
        arg.reserve(s.dim);
        if (s.linear) {
          for (std::size_t i = 0; i < s.dim; ++i)
            arg.push_back(i == combo[li] ? Poly::constant(ctx.field, ctx.nvars, Scalar::one(f))
                                         : Poly(ctx.field, ctx.nvars));
          ++li;
        } else {
          for (std::size_t i = 0; i < s.dim; ++i)
            arg.push_back(Poly::variable(ctx.field, ctx.nvars,
                                         static_cast<std::uint32_t>(offset + i)));
          offset += s.dim;
        }
        args.push_back(std::move(arg));
      }
      std::vector<Poly> d = defect(args);
      for (std::size_t k = 0; k < d.size(); ++k) {
        if (d[k].is_zero())
          continue;
        out.passed = false;
        out.note = "formal defect, coordinate " + std::to_string(k) + ": " + d[k].to_string();
        if (!combo.empty()) {
          out.note += " [linear slots at basis";
          std::size_t ci = 0;
          for (const Slot& s : slots)
            if (s.linear)
              out.note += " " + s.name + "=e" + std::to_string(combo[ci++]);
          out.note += "]";
        }
        if (f.is_prime_field())
          out.note += "; formal failure over a finite field does not refute the pointwise identity";
        return false;
      }
      return true;
    });
    break;
  }
  case CheckMode::Kind::Exhaustive: {
    if (!f.is_prime_field())
      throw std::invalid_argument("exhaustive checking requires a prime field");
    std::uint64_t p = f.characteristic();
    std::uint64_t tuples = pow_sat(p, nonlinear_dim);
    if (tuples > mode.bound)
      throw BoundExceeded("exhaustive check of " + out.axiom, tuples, mode.bound);
    auto defect = factory.template operator()<Zp>(p);
    std::vector<std::uint64_t> digits(nonlinear_dim, 0);
    bool more = true;
    while (more) {
      bool ok = detail::for_each_linear_combo(slots, [&](const std::vector<std::size_t>& combo) {
        std::vector<std::vector<Zp>> args;
        std::size_t offset = 0, li = 0;
        for (const Slot& s : slots) {
          std::vector<Zp> arg(s.dim, Zp{0, p});
          if (s.linear) {
            arg[combo[li++]] = Zp{1, p};
          } else {
            for (std::size_t i = 0; i < s.dim; ++i)
              arg[i] = Zp{digits[offset + i], p};
            offset += s.dim;
          }
          args.push_back(std::move(arg));
        }
        std::vector<Zp> d = defect(args);
        if (all_zero(d))
          return true;
        out.passed = false;
        for (const auto& arg : args) {
          Vec w;
          for (Zp x : arg)
            w.push_back(Scalar::from_int(f, static_cast<long long>(x.v)));
          out.witness.push_back(std::move(w));
        }
        return false;
      });
      if (!ok)
        break;
      more = detail::next_tuple(digits, p);
    }
    break;
  }
  case CheckMode::Kind::Sampled: {
    auto defect = factory.template operator()<Scalar>(f);
    std::mt19937 rng(mode.seed);
    for (std::uint32_t it = 0; it < mode.count; ++it) {
      std::vector<std::vector<Scalar>> args;
      for (const Slot& s : slots) {
        Vec arg;
        arg.reserve(s.dim);
        for (std::size_t i = 0; i < s.dim; ++i)
          arg.push_back(detail::random_scalar(f, rng));
        args.push_back(std::move(arg));
      }
      std::vector<Scalar> d = defect(args);
      if (all_zero(d))
        continue;
      out.passed = false;
      out.witness = args;
      out.note = "sample " + std::to_string(it) + " of " + std::to_string(mode.count) +
                 ", seed " + std::to_string(mode.seed);
      break;
    }
    break;
  }
  }
  return out;
}

} // namespace jordan
