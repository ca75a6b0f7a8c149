#pragma once

#include "jordan/unified.hpp"

#include <cstdint>
#include <vector>

namespace jordan {

/// A finite group acting on an algebra by automorphisms. elements[0] is the
/// identity; generators indexes the elements the group was generated from.
struct GroupAction {
  Algebra algebra;
  std::vector<Matrix> elements;
  std::vector<std::size_t> generators;

  FieldSpec field() const { return algebra.field(); }
  std::size_t order() const { return elements.size(); }
};

/// Closes the generators under multiplication. Throws std::invalid_argument
/// when a generator is singular or is not an algebra automorphism (checked
/// on basis pairs, which decides it exactly), when the resulting order is
/// divisible by the characteristic, and BoundExceeded when the closure
/// grows past order_bound.
GroupAction generate_group(const Algebra& a, const std::vector<Matrix>& generators,
                           std::uint64_t order_bound = 64,
                           const CheckMode& mode = CheckMode::formal());

/// Basis of the fixed subalgebra A^G = { a : g(a) = a for all g }.
std::vector<Vec> invariant_subalgebra(const GroupAction& action);

/// The averaging projection t(x) = |G|^-1 sum_g g(x); idempotent with image
/// A^G.
Matrix trace_map(const GroupAction& action);

/// A as a twisted product of A^G and V = Ker(t): extraction of the datum
/// along the retraction t (the A-valued action x |> a vanishes identically,
/// since averaging sends x.a back into Ker(t)), the rebuilt twisted product,
/// and the isomorphism theta(a, x) = a + x from it back onto A.
struct ArtinDecomposition {
  Extraction extraction;
  UnifiedProduct twisted;
  Matrix theta;
};

ArtinDecomposition artin_decomposition(const GroupAction& action,
                                       const CheckMode& mode = CheckMode::formal());

/// For a single-generator action: whether Ker(t) equals the span of
/// { e_i - g(e_i) } (compared as echelon bases). Throws
/// std::invalid_argument when the action has more than one generator.
bool cyclic_kernel_check(const GroupAction& action);

} // namespace jordan
