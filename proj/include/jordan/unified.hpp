#pragma once

#include "jordan/algebra.hpp"

#include <optional>
#include <vector>

namespace jordan {

/// Extending datum of a Jordan algebra A through a vector space V: the four
/// bilinear maps
///   act_r : V x A -> V   (right action candidate, written x <| a)
///   act_l : V x A -> A   (written x |> a)
///   cocycle : V x V -> A (written f)
///   mul_v : V x V -> V
/// A validation stamp records the mode whose axiom check last passed; it is a
/// cache and is ignored by equality. Mutating the maps invalidates it, so
/// revalidate after any edit.
struct ExtendingDatum {
  Algebra a;
  std::size_t dim_v = 0;
  BilinearMap act_r;
  BilinearMap act_l;
  BilinearMap cocycle;
  BilinearMap mul_v;

  ExtendingDatum(Algebra a_, std::size_t dim_v_, BilinearMap act_r_, BilinearMap act_l_,
                 BilinearMap cocycle_, BilinearMap mul_v_);

  FieldSpec field() const { return a.field(); }

  std::optional<CheckMode::Kind> validated() const { return validated_; }
  void note_validated(CheckMode::Kind kind) const { validated_ = kind; }
  void clear_validated() const { validated_.reset(); }

  bool operator==(const ExtendingDatum& o) const;
  bool operator!=(const ExtendingDatum& o) const { return !(*this == o); }
  /// Order on (act_r, act_l, cocycle, mul_v) coefficient sequences; used to
  /// pick canonical orbit representatives. Requires equal A and dim_v.
  int lex_cmp(const ExtendingDatum& o) const;

private:
  mutable std::optional<CheckMode::Kind> validated_;
};

/// All four maps zero; over abelian V this builds the direct product.
ExtendingDatum trivial_datum(const Algebra& a, std::size_t dim_v);

/// A unified product A natural V: the product algebra on the block basis
/// (A coordinates first, then V), the datum it was built from, and the
/// embedding of A as the first block.
struct UnifiedProduct {
  Algebra product;
  ExtendingDatum datum;
  Matrix embedding; // (dimA + dimV) x dimA

  std::size_t dim_a() const { return datum.a.dim(); }
  std::size_t dim_v() const { return datum.dim_v; }
};

/// Checks the extending-structure axioms in the given mode:
///   E1  f and mul_v symmetric
///   E2  (x <| a^2) <| a = (x <| a) <| a^2
///   E3-E7  the five mixed identities (one nonlinear slot each)
///   E8  the missing relations, via missing_relation_check on the built
///       candidate product (reported as "E8:missing-b" / "E8:missing-y")
/// A must be Jordan-verified (std::invalid_argument otherwise). On pass the
/// datum is stamped validated in the mode's kind; on failure any earlier
/// stamp is cleared. The axioms hold iff the built product is a commutative
/// Jordan algebra.
ValidationReport validate_extending_structure(const ExtendingDatum& d, const CheckMode& mode);

/// Builds the unified product of a validated datum:
///   (a,x) o (b,y) = (a.b + x|>b + y|>a + f(x,y), x<|b + y<|a + x.y)
/// The result is Jordan-verified in the datum's validation kind. Throws
/// std::invalid_argument when the datum carries no validation stamp.
UnifiedProduct build_unified(const ExtendingDatum& d);

/// Same construction without any axiom check; the product algebra carries
/// status Unchecked.
UnifiedProduct build_unified_unchecked(const ExtendingDatum& d);

/// Datum extracted from a subalgebra and a retraction; v_basis is the kernel
/// basis the V coordinates refer to, phi the isomorphism candidate
/// (a,x) -> incl(a) + incl(x) as a dim(E) x (dimA + dimV) matrix.
struct Extraction {
  ExtendingDatum datum;
  std::vector<Vec> a_basis;
  std::vector<Vec> v_basis;
  Matrix phi;
};

/// Reconstruction through a retraction p onto span(a_basis) (p in a_basis
/// coordinates, p(incl(a)) = a): V := Ker(p) with the monic echelon kernel
/// basis (or the supplied complement basis), and
///   x |> a = p(x.a),  x <| a = x.a - incl(p(x.a)),
///   f(x,y) = p(x.y),  x.y in V analogously.
/// Throws std::invalid_argument when a_basis is not a subalgebra, p is not a
/// retraction, or the supplied complement does not complement span(a_basis).
Extraction extract_extending_structure(const Algebra& e, const std::vector<Vec>& a_basis,
                                       const Matrix& p,
                                       const std::vector<Vec>* v_basis_override = nullptr);

/// The spin factor J(V, f) for a symmetric form f: V x V -> k (a BilinearMap
/// with one output dimension): A = k with unit e, (a,x) o (b,y) =
/// (ab + f(x,y), bx + ay). Always a Jordan algebra; the result carries a
/// passed validation in `mode`. Throws std::invalid_argument on asymmetric f.
UnifiedProduct spin_factor(const BilinearMap& form, const CheckMode& mode);

/// Unified product of a datum with act_l = 0 (the twisted product):
///   (a,x) o (b,y) = (a.b + f(x,y), x<|b + y<|a + x.y).
/// Throws std::invalid_argument on nonzero act_l or a missing validation
/// stamp. build_twisted_unchecked skips the stamp requirement.
UnifiedProduct build_twisted(const ExtendingDatum& d);
UnifiedProduct build_twisted_unchecked(const ExtendingDatum& d);

/// True iff (act_r, act_l, f = 0, mul_v = multiplication of V) validates as
/// an extending structure of A through V in the given mode. A and V must be
/// Jordan-verified.
bool is_matched_pair(const Algebra& a, const Algebra& v, const BilinearMap& act_r,
                     const BilinearMap& act_l, const CheckMode& mode);

} // namespace jordan
