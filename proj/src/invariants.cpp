#include "jordan/invariants.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

namespace jordan {

namespace {

std::size_t index_of(const std::vector<Matrix>& elements, const Matrix& m) {
  return static_cast<std::size_t>(
      std::find(elements.begin(), elements.end(), m) - elements.begin());
}

std::string first_failing(const ValidationReport& rep) {
  for (const AxiomCheck& c : rep.checks)
    if (!c.passed)
      return c.axiom;
  return "an axiom";
}

} // namespace

GroupAction generate_group(const Algebra& a, const std::vector<Matrix>& generators,
                           std::uint64_t order_bound, const CheckMode& mode) {
  FieldSpec f = a.field();
  std::size_t n = a.dim();
  for (const Matrix& g : generators) {
    if (g.rows() != n || g.cols() != n)
      throw std::invalid_argument("group generators must be dim(A) x dim(A) matrices");
    if (!g.invertible())
      throw std::invalid_argument("group generators must be invertible");
    if (!check_algebra_morphism(g, a, a, mode))
      throw std::invalid_argument("a group generator is not an algebra automorphism");
  }

  // In a finite closure every element has finite multiplicative order, so
  // closing under products alone already yields the inverses.
  std::vector<Matrix> elements{Matrix::identity(f, n)};
  std::size_t next = 0;
  while (next < elements.size()) {
    Matrix current = elements[next++];
    for (const Matrix& g : generators) {
      Matrix prod = g.mul(current);
      if (std::find(elements.begin(), elements.end(), prod) == elements.end()) {
        if (elements.size() >= order_bound)
          throw BoundExceeded("the group closure", elements.size() + 1, order_bound);
        elements.push_back(std::move(prod));
      }
    }
  }

  if (!f.is_rationals() && elements.size() % f.characteristic() == 0)
    throw std::invalid_argument("the group order is not invertible in the field");

  std::vector<std::size_t> gens;
  gens.reserve(generators.size());
  for (const Matrix& g : generators)
    gens.push_back(index_of(elements, g));
  return GroupAction{a, std::move(elements), std::move(gens)};
}

std::vector<Vec> invariant_subalgebra(const GroupAction& action) {
  FieldSpec f = action.field();
  std::size_t n = action.algebra.dim();
  Matrix stacked(f, (action.order() - 1) * n, n);
  for (std::size_t g = 1; g < action.order(); ++g)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        Scalar v = action.elements[g].at(i, j);
        if (i == j)
          v = v - Scalar::one(f);
        stacked.at((g - 1) * n + i, j) = v;
      }
  return kernel(stacked);
}

Matrix trace_map(const GroupAction& action) {
  FieldSpec f = action.field();
  Matrix sum(f, action.algebra.dim(), action.algebra.dim());
  for (const Matrix& g : action.elements)
    sum = sum.add(g);
  return sum.scale(Scalar::from_int(f, static_cast<long long>(action.order())).inverse());
}

ArtinDecomposition artin_decomposition(const GroupAction& action, const CheckMode& mode) {
  const Algebra& e = action.algebra;
  if (e.level() != VerifyLevel::JordanVerified)
    throw std::invalid_argument("artin_decomposition requires a Jordan-verified algebra");
  FieldSpec f = e.field();
  std::size_t n = e.dim();

  std::vector<Vec> a_basis = invariant_subalgebra(action);
  Matrix t = trace_map(action);
  Matrix incl = Matrix::from_columns(f, n, a_basis);
  Matrix p(f, a_basis.size(), n);
  for (std::size_t j = 0; j < n; ++j) {
    std::optional<Vec> c = solve_linear(incl, t.col(j));
    if (!c)
      throw std::logic_error("the trace map does not land in the invariant subalgebra");
    for (std::size_t i = 0; i < a_basis.size(); ++i)
      p.at(i, j) = (*c)[i];
  }

  Extraction ex = extract_extending_structure(e, a_basis, p);
  ValidationReport rep = validate_extending_structure(ex.datum, mode);
  if (!rep.passed())
    throw std::invalid_argument("the action's algebra is not Jordan: the trace extraction fails " +
                                first_failing(rep));

  UnifiedProduct twisted = build_twisted(ex.datum);
  Matrix theta = ex.phi;
  if (!theta.invertible() || !check_algebra_morphism(theta, twisted.product, e, mode))
    throw std::logic_error("the decomposition isomorphism failed verification");
  return ArtinDecomposition{std::move(ex), std::move(twisted), std::move(theta)};
}

bool cyclic_kernel_check(const GroupAction& action) {
  if (action.generators.size() > 1)
    throw std::invalid_argument("cyclic_kernel_check requires a single-generator action");
  FieldSpec f = action.field();
  std::size_t n = action.algebra.dim();
  const Matrix& g =
      action.generators.empty() ? action.elements[0] : action.elements[action.generators[0]];
  Matrix diff = Matrix::identity(f, n).sub(g);
  std::vector<Vec> differences;
  differences.reserve(n);
  for (std::size_t j = 0; j < n; ++j)
    differences.push_back(diff.col(j));
  // kernel() and echelon_basis() normalize differently, so put both spans
  // into the rref form before comparing.
  return echelon_basis(f, n, differences) == echelon_basis(f, n, kernel(trace_map(action)));
}

} // namespace jordan
