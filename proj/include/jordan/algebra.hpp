#pragma once

#include "jordan/check.hpp"
#include "jordan/linalg.hpp"
#include "jordan/ring.hpp"

#include <atomic>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace jordan {

/// Structure constants of a bilinear map k^d1 x k^d2 -> k^dout, stored dense:
/// map(e_i, e_j) = sum_k c[i][j][k] e_k.
class BilinearMap {
public:
  BilinearMap(FieldSpec f, std::size_t d1, std::size_t d2, std::size_t dout);

  FieldSpec field() const { return f_; }
  std::size_t dim1() const { return d1_; }
  std::size_t dim2() const { return d2_; }
  std::size_t dim_out() const { return dout_; }

  const Scalar& at(std::size_t i, std::size_t j, std::size_t k) const {
    return c_[(i * d2_ + j) * dout_ + k];
  }
  void set(std::size_t i, std::size_t j, std::size_t k, const Scalar& s) {
    c_[(i * d2_ + j) * dout_ + k] = s;
  }

  bool is_zero() const;
  /// Requires d1 == d2. First basis pair (i,j) with map(e_i,e_j) != map(e_j,e_i).
  std::optional<std::pair<std::size_t, std::size_t>> symmetry_defect() const;
  bool symmetric() const { return !symmetry_defect().has_value(); }

  Vec eval(const Vec& x, const Vec& y) const;

  /// Coefficients converted into a plain ring for the checking loops.
  template <class R>
  struct View {
    std::size_t d1 = 0, d2 = 0, dout = 0;
    std::vector<R> c;
    R zero;

    std::vector<R> eval(const std::vector<R>& x, const std::vector<R>& y) const {
      std::vector<R> out(dout, zero);
      for (std::size_t i = 0; i < d1; ++i) {
        if (x[i].is_zero())
          continue;
        for (std::size_t j = 0; j < d2; ++j) {
          if (y[j].is_zero())
            continue;
          R xy = x[i] * y[j];
          const R* row = &c[(i * d2 + j) * dout];
          for (std::size_t k = 0; k < dout; ++k)
            if (!row[k].is_zero())
              out[k] += xy * row[k];
        }
      }
      return out;
    }
  };

  template <class R>
  View<R> view(const typename RingOps<R>::Ctx& ctx) const {
    View<R> v;
    v.d1 = d1_;
    v.d2 = d2_;
    v.dout = dout_;
    v.zero = RingOps<R>::zero(ctx);
    v.c.reserve(c_.size());
    for (const Scalar& s : c_)
      v.c.push_back(RingOps<R>::from_scalar(ctx, s));
    return v;
  }

  bool operator==(const BilinearMap& o) const;
  bool operator!=(const BilinearMap& o) const { return !(*this == o); }
  int lex_cmp(const BilinearMap& o) const;

private:
  FieldSpec f_;
  std::size_t d1_, d2_, dout_;
  std::vector<Scalar> c_;
};

/// Matrix entries converted into a plain ring; apply() is M x.
template <class R>
struct MatrixView {
  std::size_t rows = 0, cols = 0;
  std::vector<R> a;
  R zero;

  std::vector<R> apply(const std::vector<R>& x) const {
    std::vector<R> out(rows, zero);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j)
        if (!a[i * cols + j].is_zero() && !x[j].is_zero())
          out[i] += a[i * cols + j] * x[j];
    return out;
  }
};

template <class R>
MatrixView<R> matrix_view(const Matrix& m, const typename RingOps<R>::Ctx& ctx) {
  MatrixView<R> v;
  v.rows = m.rows();
  v.cols = m.cols();
  v.zero = RingOps<R>::zero(ctx);
  v.a.reserve(m.rows() * m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      v.a.push_back(RingOps<R>::from_scalar(ctx, m.at(i, j)));
  return v;
}

/// How thoroughly an algebra's defining identities have been verified.
/// Upgrades are monotone; the multiplication tensor itself is immutable.
enum class VerifyLevel : std::uint8_t { Unchecked = 0, CommutativeOnly = 1, JordanVerified = 2 };

/// Finite-dimensional algebra given by structure constants. Product of basis
/// vectors: e_i . e_j = sum_k c[i][j][k] e_k. Commutativity and the Jordan
/// identity are never assumed, only recorded after an explicit check.
class Algebra {
public:
  Algebra(FieldSpec f, std::size_t dim, BilinearMap mul);
  static Algebra abelian(FieldSpec f, std::size_t dim);

  Algebra(const Algebra& o);
  Algebra& operator=(const Algebra& o);

  FieldSpec field() const { return f_; }
  std::size_t dim() const { return dim_; }
  const BilinearMap& mul_map() const { return mul_; }

  Vec mul(const Vec& x, const Vec& y) const;

  VerifyLevel level() const;
  /// The mode whose Jordan check last passed, when level is JordanVerified.
  std::optional<CheckMode::Kind> verified_mode() const;
  std::string status_string() const;

  /// Monotone status upgrades, recorded by the checking routines.
  void note_commutative() const;
  void note_jordan(CheckMode::Kind kind) const;

  bool operator==(const Algebra& o) const;
  bool operator!=(const Algebra& o) const { return !(*this == o); }

private:
  FieldSpec f_;
  std::size_t dim_;
  BilinearMap mul_;
  mutable std::atomic<std::uint16_t> status_;
};

Vec associator(const Algebra& a, const Vec& x, const Vec& y, const Vec& z);

/// P(x,y,z) = (x^2, y, z) + 2 (x.z, y, x), with (.,.,.) the associator.
/// Vanishes identically on every Jordan algebra.
Vec polarization(const Algebra& a, const Vec& x, const Vec& y, const Vec& z);

ValidationReport check_commutative(const Algebra& a, const CheckMode& mode = CheckMode::formal());

/// Verifies commutativity (tensor symmetry) and then the Jordan identity
/// (a^2 . b) . a = a^2 . (b . a) in the requested mode; the defect is linear
/// in b, so b ranges over basis vectors in every mode. Upgrades the algebra's
/// status on pass.
ValidationReport check_jordan(const Algebra& a, const CheckMode& mode);

/// The deliberately weak variant: Jordan identity on basis pairs only.
/// Passing this proves nothing (see the non-Jordan witness fixture); it
/// exists to demonstrate that basis pairs do not suffice.
bool check_jordan_basis_only(const Algebra& a);

/// P(x,y,z) = 0 in the requested mode (x nonlinear; y, z linear).
ValidationReport check_polarization_relation(const Algebra& a, const CheckMode& mode);

/// The mixed polarization identity on a split W = span(A_basis) + span(V_basis):
///   P(a,b,x) + P(x,b,a) = 0   ("missing-b", b in A linear)
///   P(a,y,x) + P(x,y,a) = 0   ("missing-y", y in V linear)
/// quantified over a in span(A_basis), x in span(V_basis). Together these are
/// exactly the four-term sum P(a,b,x)+P(x,b,a)+P(a,y,x)+P(x,y,a) = 0 for all
/// b in A, y in V (the two halves share no slot, so they vanish separately).
/// Throws std::invalid_argument unless the bases jointly span W.
ValidationReport missing_relation_check(const Algebra& w, const std::vector<Vec>& a_basis,
                                        const std::vector<Vec>& v_basis, const CheckMode& mode);

/// Builds A+ with x.y = (xy + yx)/2 from an associative tensor. Throws
/// std::invalid_argument (with the failing basis triple) when the input is
/// not associative. The result carries a passed Jordan check in `mode`.
Algebra from_associative_plus(const BilinearMap& assoc_mul, const CheckMode& mode);

/// Closure predicates. `basis` must be linearly independent (else
/// std::invalid_argument).
bool is_subalgebra(const Algebra& a, const std::vector<Vec>& basis);
bool is_ideal(const Algebra& a, const std::vector<Vec>& basis);

/// The multiplication of `a` restricted to the span of `basis`, expressed in
/// that basis. Throws std::invalid_argument when the span is not closed
/// under multiplication or the basis is dependent.
Algebra subalgebra_on_basis(const Algebra& a, const std::vector<Vec>& basis);

/// Quotient by an ideal: the coset basis is the unit vectors at the
/// non-pivot coordinates of the ideal's echelon basis. Returns the quotient
/// algebra and the projection matrix (dim(A/I) x dim(A)). Throws
/// std::invalid_argument when the span is not an ideal.
std::pair<Algebra, Matrix> quotient_algebra(const Algebra& a, const std::vector<Vec>& ideal_basis);

/// phi is dim(B) x dim(A), columns = images of A's basis. The defect
/// phi(x.y) - phi(x).phi(y) is bilinear, so basis pairs decide it exactly in
/// every mode; `report` (when given) receives the per-pair verdict.
bool check_algebra_morphism(const Matrix& phi, const Algebra& a, const Algebra& b,
                            const CheckMode& mode, ValidationReport* report = nullptr);

/// phi_maps[i] is the endomorphism phi(e_i) of k^m; the representation
/// condition is phi(a) phi(a^2) = phi(a^2) phi(a) for all a.
bool check_jacobson_representation(const std::vector<Matrix>& phi_maps, const Algebra& a,
                                   const CheckMode& mode, ValidationReport* report = nullptr);

/// The dual action (a rightaction a*)(b) = a*(a.b) as a tensor A x A* -> A*
/// in the dual basis; always a Jacobson representation for Jordan A.
BilinearMap canonical_dual_action(const Algebra& a);

/// Searches for an isomorphism E1 -> E2 of the block form
/// psi(a,x) = (a + r(x), v(x)) (identity on the first a_dim coordinates).
/// Probes (r=0, v=id) first, then enumerates all (r, v) over the prime field
/// as one ascending digit tuple (v fastest), skipping singular v. Returns
/// the first hit. Throws BoundExceeded when p^(#entries) > bound.
struct MorphismPair {
  Matrix r; // dimA x dimV
  Matrix v; // dimV x dimV

  /// Block matrix [[I, r],[0, v]] of psi(a,x) = (a + r(x), v(x)).
  Matrix block_matrix() const;
};
std::optional<MorphismPair> find_stabilizing_isomorphism(const Algebra& e1, const Algebra& e2,
                                                         std::size_t a_dim,
                                                         std::uint64_t bound = 1'000'000);

/// All ideal subspaces of dimension <= max_dim, each as a monic echelon
/// basis ({0} is the empty basis). Deterministic order: dimension ascending,
/// then ascending pivot-column sets, then ascending free-entry tuples.
/// Prime fields only; throws BoundExceeded when the subspace count at some
/// dimension exceeds bound.
std::vector<std::vector<Vec>> find_ideals(const Algebra& a, std::size_t max_dim,
                                          std::uint64_t bound = 1'000'000);

/// Brute-force isomorphism search over all invertible matrices, ascending
/// digit order. Prime fields only; throws BoundExceeded when p^(n^2) > bound.
std::optional<Matrix> find_isomorphism(const Algebra& a, const Algebra& b,
                                       std::uint64_t bound = 1'000'000);

} // namespace jordan
