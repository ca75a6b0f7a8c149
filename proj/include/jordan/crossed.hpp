#pragma once

#include "jordan/unified.hpp"

#include <memory>
#include <optional>

namespace jordan {

/// Crossed system of two Jordan algebras: an extending datum with trivial
/// right action, so only act (x |> a) and the cocycle f remain while V keeps
/// its own multiplication. Carries the same kind of validation stamp as
/// ExtendingDatum.
struct CrossedSystem {
  Algebra a;
  Algebra v;
  BilinearMap act;     // V x A -> A
  BilinearMap cocycle; // V x V -> A

  CrossedSystem(Algebra a_, Algebra v_, BilinearMap act_, BilinearMap cocycle_);

  FieldSpec field() const { return a.field(); }

  std::optional<CheckMode::Kind> validated() const { return validated_; }
  void note_validated(CheckMode::Kind kind) const { validated_ = kind; }
  void clear_validated() const { validated_.reset(); }

  /// The equivalent extending datum: act_r = 0, mul_v = multiplication of V.
  ExtendingDatum to_datum() const;

  bool operator==(const CrossedSystem& o) const;
  bool operator!=(const CrossedSystem& o) const { return !(*this == o); }
  /// Order on the (act, cocycle) coefficient sequence; requires equal A, V.
  int lex_cmp(const CrossedSystem& o) const;

private:
  mutable std::optional<CheckMode::Kind> validated_;
};

CrossedSystem trivial_crossed_system(const Algebra& a, const Algebra& v);

/// Checks the crossed-system axioms in the given mode:
///   CP1  f symmetric
///   CP2  a.(x|>a^2) = a^2.(x|>a)
///   CP3  x|>(f(x,x).a) + x|>(x^2|>a) = f(x,x).(x|>a) + x^2|>(x|>a)
///   CP4  the f-compatibility identity
///   CP5  the missing relations on the built candidate product (reported as
///        "CP5:missing-b" / "CP5:missing-y")
/// A and V must be Jordan-verified (std::invalid_argument otherwise). On
/// pass the system is stamped validated; on failure any earlier stamp is
/// cleared. Equivalent to validating the extending datum with trivial right
/// action.
ValidationReport validate_crossed_system(const CrossedSystem& cs, const CheckMode& mode);

/// The crossed product (a,x) o (b,y) = (a.b + x|>b + y|>a + f(x,y), x.y) of
/// a validated system, Jordan-verified in the stamp's kind; A x {0} is an
/// ideal. Throws std::invalid_argument without a validation stamp.
Algebra build_crossed(const CrossedSystem& cs);
Algebra build_crossed_unchecked(const CrossedSystem& cs);

/// Short exact sequence 0 -> A -> E -> V -> 0 with explicit morphisms.
struct Extension {
  Algebra e;
  Algebra a;
  Algebra v;
  Matrix incl; // dim(E) x dim(A)
  Matrix proj; // dim(V) x dim(E)
};

/// Checks the extension invariants: incl and proj are algebra morphisms,
/// incl is injective, proj is surjective, and Im(incl) = Ker(proj).
ValidationReport validate_extension(const Extension& ext, const CheckMode& mode);

/// The crossed product of cs with i(a) = (a,0) and pi(a,x) = x.
Extension canonical_extension(const CrossedSystem& cs);

/// The section induced by row reduction: column x of the result is the
/// solve_linear preimage of the unit vector (free variables zero). Throws
/// std::invalid_argument when proj is not surjective.
Matrix default_section(const Extension& ext);

/// Recovers a crossed system from an extension and a linear section s of
/// proj (dim(E) x dim(V), proj o s = id):
///   x |> a = s(x) . incl(a),   f(x,y) = s(x).s(y) - s(x.y),
/// both expressed in A coordinates through incl. The result validates in
/// `mode` and build_crossed of it is isomorphic to E via (a,x) -> incl(a) +
/// s(x). Throws std::invalid_argument when the extension is invalid or s is
/// not a section.
CrossedSystem extension_to_crossed(const Extension& ext, const Matrix& s, const CheckMode& mode);

/// Iterated decomposition into crossed products of simple factors. A leaf
/// means no proper nonzero ideal of dimension <= searched_up_to exists; an
/// inner node stores the first such ideal found (dimension ascending, then
/// the deterministic find_ideals order), the crossed system induced on
/// (I, A/I) through the default section, and the decompositions of both.
struct DecompositionTree {
  Algebra algebra;
  std::size_t searched_up_to = 0;
  std::optional<std::vector<Vec>> ideal;
  std::optional<CrossedSystem> system;
  std::unique_ptr<DecompositionTree> sub;  // decomposition of the ideal
  std::unique_ptr<DecompositionTree> quot; // decomposition of the quotient

  bool simple() const { return !ideal.has_value(); }
  std::size_t leaf_count() const;
  std::string to_string() const; // indented outline, one node per line
};

/// Prime fields only. max_dim caps the ideal dimension searched at every
/// node (SIZE_MAX means all proper dimensions); bound is passed to
/// find_ideals. Each node's crossed system is validated exhaustively.
DecompositionTree decompose_iterated(const Algebra& a, std::size_t max_dim = SIZE_MAX,
                                     std::uint64_t bound = 1'000'000);

/// Rebuilds the root from its stored crossed system (leaves rebuild to their
/// own algebra). The tree promises this is isomorphic to the original; the
/// acceptance checks verify that by brute-force search.
Algebra rebuild_decomposition(const DecompositionTree& t);

} // namespace jordan
