#pragma once

#include "jordan/crossed.hpp"
#include "jordan/unified.hpp"

#include <optional>
#include <vector>

namespace jordan {

/// Worker cap for the classification enumerations (classify_extending_
/// structures, classify_flag, h2_nab, h2_onedim, solve_matrix_cubic). The
/// candidate space is sharded across min(workers, shards) threads and the
/// shard results are concatenated in shard order, so the output is identical
/// to a sequential run. Default 1.
void set_worker_count(unsigned n);
unsigned worker_count();

/// Conditions for psi(a,x) = (a + r(x), v(x)) to be a morphism of unified
/// products A natural V -> A natural' V (both data over the same A and V):
///   M1  v(x) <|' a = v(x <| a)
///   M2  v(x) |>' a = r(x <| a) + x |> a - a.r(x)
///   M3  v(x.y) = v(x) .' v(y) + v(x) <|' r(y) + v(y) <|' r(x)
///   M4  r(x.y) = r(x).r(y) + v(x) |>' r(y) + v(y) |>' r(x)
///              + f'(v(x), v(y)) - f(x,y)
/// Every defect is bilinear, so basis pairs decide the conditions exactly in
/// all modes. psi is an isomorphism iff v is invertible.
bool check_morphism_pair(const ExtendingDatum& d, const ExtendingDatum& d2,
                         const MorphismPair& pair, const CheckMode& mode,
                         ValidationReport* report = nullptr);

/// The datum d' with check_morphism_pair(d, d', ...) true -- equivalently:
/// the image of d under the pair (r, v), so that psi_(r,v) : A natural V ->
/// A natural' V is an isomorphism stabilizing A. Throws std::invalid_argument
/// on singular v. Transforming by (r1, v1) and then (r2, v2) equals one
/// transform by (r1 + r2 v1, v2 v1) -- the group property is covered by tests.
ExtendingDatum transform_extending_structure(const ExtendingDatum& d, const Matrix& r,
                                             const Matrix& v);

/// One equivalence class of a classification run: the lexicographically
/// least valid representative and the orbit size.
template <class Rep>
struct OrbitClass {
  Rep rep;
  std::uint64_t orbit_size = 0;
};

/// All extending structures of A through a dim_v-dimensional space over a
/// prime field, up to equivalence under transform_extending_structure.
/// Candidates are validated exhaustively. Throws BoundExceeded when the
/// candidate count or the (r, v) search space exceeds bound.
std::vector<OrbitClass<ExtendingDatum>> classify_extending_structures(
    const Algebra& a, std::size_t dim_v, std::uint64_t bound = 1'000'000);

/// Flag datum (D, lambda, a0, alpha0): the dim V = 1 extending structures,
///   x <| a = lambda(a) x,  x |> a = D(a),  f(x,x) = a0,  x.x = alpha0 x.
struct FlagDatum {
  Matrix d;      // dim(A) x dim(A)
  Vec lambda;    // covector on A
  Vec a0;        // element of A
  Scalar alpha0;

  bool operator==(const FlagDatum& o) const;
  bool operator!=(const FlagDatum& o) const { return !(*this == o); }
  int lex_cmp(const FlagDatum& o) const; // (d, lambda, a0, alpha0) order
};

FlagDatum zero_flag(const Algebra& a);

ExtendingDatum flag_to_datum(const Algebra& a, const FlagDatum& fd);

/// Builds the codimension-1 algebra A natural kx of a flag datum without
/// validating it: e_i o e_j = e_i.e_j, e_i o x = D(e_i) + lambda(e_i) x,
/// x o x = a0 + alpha0 x (A coordinates first, x last).
Algebra flag_algebra_unchecked(const Algebra& a, const FlagDatum& fd);

/// Flag-datum validity in the given mode:
///   F1  a.D(a^2) + lambda(a^2) D(a) = a^2.D(a) + lambda(a) D(a^2)
///   F2  D(a0.a) = a0.D(a) + lambda(a) D(a0)
///   F3  D^2(a0) + lambda(a0) a0 = a0^2 + alpha0 D(a0)
///   F4  lambda(a0.a) = lambda(a0) lambda(a)
///   F5  lambda(D(a0)) = 0
///   F6  the missing relations on the built algebra (reported as
///       "F6:missing-b" / "F6:missing-y")
/// Passes iff flag_to_datum validates iff the built algebra is Jordan.
ValidationReport validate_flag_datum(const Algebra& a, const FlagDatum& fd,
                                     const CheckMode& mode);

/// True iff lambda = lambda' and (r, u) witnesses equivalence:
///   D(a)   = u D'(a) + a.r - lambda'(a) r
///   alpha0 = u alpha0' + 2 lambda'(r)
///   a0     = u^2 a0' + r.r + 2u D'(r) - u alpha0' r - 2 lambda'(r) r
/// Throws std::invalid_argument on u = 0.
bool flag_equivalent(const Algebra& a, const FlagDatum& fd, const FlagDatum& fd2, const Vec& r,
                     const Scalar& u);

/// The unique fd' with flag_equivalent(a, fd, fd', r, u); transforming is a
/// group action compatible with transform_extending_structure through
/// flag_to_datum.
FlagDatum transform_flag(const Algebra& a, const FlagDatum& fd, const Vec& r, const Scalar& u);

/// All valid flag data of A over a prime field up to equivalence; validity
/// is checked exhaustively. The class count equals the number of
/// stabilizing-isomorphism classes of the built codimension-1 algebras.
std::vector<OrbitClass<FlagDatum>> classify_flag(const Algebra& a,
                                                 std::uint64_t bound = 1'000'000);

/// Cohomologous crossed systems: r witnesses cs' ~ cs when
///   x |>' a = x |> a - a.r(x)
///   f'(x,y) = f(x,y) + r(x.y) + r(x).r(y) - x |> r(y) - y |> r(x)
/// (systems over the same A and V).
bool crossed_cohomologous(const CrossedSystem& cs, const CrossedSystem& cs2, const Matrix& r);

/// The system cs' with crossed_cohomologous(cs, cs', r).
CrossedSystem transform_crossed(const CrossedSystem& cs, const Matrix& r);

/// First r (ascending digit order over the prime field) making the systems
/// cohomologous, or nullopt. Throws BoundExceeded when p^(dimV dimA) >
/// bound, std::invalid_argument over the rationals.
std::optional<Matrix> search_cohomology_witness(const CrossedSystem& cs,
                                                const CrossedSystem& cs2,
                                                std::uint64_t bound = 1'000'000);

/// Non-abelian cohomology H2(V, A) over a prime field: all pairs (act, f)
/// validating as crossed systems of A and V (exhaustively), grouped by the
/// cohomologous relation. Representatives are lexicographically least.
std::vector<OrbitClass<CrossedSystem>> h2_nab(const Algebra& v, const Algebra& a,
                                              std::uint64_t bound = 1'000'000);

/// Crossed systems of A and k_eps (x.x = eps x) are the pairs (D, a0) via
/// x |> a = D(a), f(x,x) = a0.
struct OneDimPair {
  Matrix d;
  Vec a0;
};

/// The compatibility conditions on (D, a0), each reported separately:
///   OD1  a.D(a^2) = a^2.D(a)
///   OD2  D(a0.a) = a0.D(a)
///   OD3  D^2(a0) = a0^2 + eps D(a0)
///   OD4  the one-variable missing-relation identity
///   OD5  the two-variable missing-relation identity
/// Passes iff the corresponding crossed system of A and k_eps validates.
ValidationReport validate_onedim_pair(const Algebra& a, const Matrix& d, const Vec& a0, int eps,
                                      const CheckMode& mode);

/// H2(k_eps, A) in (D, a0) coordinates over a prime field: valid pairs
/// grouped by D' = D - a.r, a0' = a0 + r^2 - 2D(r) + eps r. eps must be 0 or
/// 1. Over the rationals use validate_onedim_pair on supplied candidates.
std::vector<OrbitClass<OneDimPair>> h2_onedim(const Algebra& a, int eps,
                                              std::uint64_t bound = 1'000'000);

bool matrix_cubic_satisfied(const Matrix& d);

/// All n x n matrices over a prime field with 2 D^3 - 3 D^2 + D = 0, in
/// ascending digit order (row-major). Throws BoundExceeded when p^(n^2) >
/// bound.
std::vector<Matrix> solve_matrix_cubic(std::size_t n, FieldSpec f,
                                       std::uint64_t bound = 1'000'000);

} // namespace jordan
