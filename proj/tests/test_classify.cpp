#include "doctest.h"

#include "jordan/classify.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <utility>
#include <vector>

using namespace jordan;

namespace {

Algebra make_algebra(FieldSpec f, std::size_t n,
                     const std::vector<std::array<long long, 4>>& entries) {
  BilinearMap mul(f, n, n, n);
  for (const auto& e : entries) {
    Scalar s = Scalar::from_int(f, e[3]);
    mul.set(static_cast<std::size_t>(e[0]), static_cast<std::size_t>(e[1]),
            static_cast<std::size_t>(e[2]), s);
    mul.set(static_cast<std::size_t>(e[1]), static_cast<std::size_t>(e[0]),
            static_cast<std::size_t>(e[2]), s);
  }
  return Algebra(f, n, mul);
}

Algebra unital_line(FieldSpec f) {
  return make_algebra(f, 1, {{0, 0, 0, 1}});
}

Algebra spin_line(FieldSpec f) {
  return make_algebra(f, 2, {{0, 0, 0, 1}, {0, 1, 1, 1}, {1, 1, 0, 1}});
}

Algebra verified(Algebra a) {
  REQUIRE(check_jordan(a, CheckMode::exhaustive()).passed());
  return a;
}

/// The one-dimensional algebra k_eps with x.x = eps x.
Algebra line_eps(FieldSpec f, int eps) {
  return verified(make_algebra(f, 1, {{0, 0, 0, eps}}));
}

BilinearMap random_map(FieldSpec f, std::size_t d1, std::size_t d2, std::size_t dout,
                       std::mt19937& rng, bool symmetric) {
  BilinearMap m(f, d1, d2, dout);
  for (std::size_t i = 0; i < d1; ++i)
    for (std::size_t j = symmetric ? i : 0; j < d2; ++j)
      for (std::size_t k = 0; k < dout; ++k) {
        Scalar s = detail::random_scalar(f, rng);
        m.set(i, j, k, s);
        if (symmetric)
          m.set(j, i, k, s);
      }
  return m;
}

Matrix random_matrix(FieldSpec f, std::size_t rows, std::size_t cols, std::mt19937& rng) {
  Matrix m(f, rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j)
      m.at(i, j) = detail::random_scalar(f, rng);
  return m;
}

Matrix random_invertible(FieldSpec f, std::size_t n, std::mt19937& rng) {
  while (true) {
    Matrix m = random_matrix(f, n, n, rng);
    if (m.invertible())
      return m;
  }
}

Vec random_vec(FieldSpec f, std::size_t n, std::mt19937& rng) {
  Vec v;
  v.reserve(n);
  for (std::size_t i = 0; i < n; ++i)
    v.push_back(detail::random_scalar(f, rng));
  return v;
}

ExtendingDatum random_datum(const Algebra& a, std::size_t dv, std::mt19937& rng) {
  FieldSpec f = a.field();
  std::size_t da = a.dim();
  return ExtendingDatum(a, dv, random_map(f, dv, da, dv, rng, false),
                        random_map(f, dv, da, da, rng, false),
                        random_map(f, dv, dv, da, rng, true),
                        random_map(f, dv, dv, dv, rng, true));
}

FlagDatum random_flag(const Algebra& a, std::mt19937& rng) {
  FieldSpec f = a.field();
  std::size_t da = a.dim();
  return FlagDatum{random_matrix(f, da, da, rng), random_vec(f, da, rng),
                   random_vec(f, da, rng), detail::random_scalar(f, rng)};
}

/// The crossed system of A and k_eps determined by (D, a0).
CrossedSystem onedim_system(const Algebra& a, const Algebra& keps, const Matrix& d,
                            const Vec& a0) {
  FieldSpec f = a.field();
  std::size_t da = a.dim();
  BilinearMap act(f, 1, da, da);
  for (std::size_t j = 0; j < da; ++j)
    for (std::size_t k = 0; k < da; ++k)
      act.set(0, j, k, d.at(k, j));
  BilinearMap cocycle(f, 1, 1, da);
  for (std::size_t k = 0; k < da; ++k)
    cocycle.set(0, 0, k, a0[k]);
  return CrossedSystem(a, keps, act, cocycle);
}

Matrix column_matrix(FieldSpec f, const Vec& r) {
  Matrix m(f, r.size(), 1);
  for (std::size_t k = 0; k < r.size(); ++k)
    m.at(k, 0) = r[k];
  return m;
}

Matrix scalar_matrix(const Scalar& u) {
  Matrix m(u.field(), 1, 1);
  m.at(0, 0) = u;
  return m;
}

std::vector<std::uint64_t> sorted_sizes(const std::vector<OrbitClass<ExtendingDatum>>& a) {
  std::vector<std::uint64_t> out;
  for (const auto& c : a)
    out.push_back(c.orbit_size);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::uint64_t> sorted_sizes(const std::vector<OrbitClass<FlagDatum>>& a) {
  std::vector<std::uint64_t> out;
  for (const auto& c : a)
    out.push_back(c.orbit_size);
  std::sort(out.begin(), out.end());
  return out;
}

} // namespace

TEST_CASE("morphism pairs certify exactly the stabilizing block morphisms") {
  std::mt19937 rng(7);
  FieldSpec f5 = FieldSpec::prime(5);
  CheckMode exh = CheckMode::exhaustive();
  std::size_t related = 0, unrelated_morphisms = 0, mismatched = 0;

  for (const Algebra& base : {verified(unital_line(f5)), Algebra::abelian(f5, 2)}) {
    for (std::size_t dv : {1, 2}) {
      for (int trial = 0; trial < 12; ++trial) {
        ExtendingDatum d = random_datum(base, dv, rng);
        Matrix r = random_matrix(f5, base.dim(), dv, rng);
        Matrix v = random_matrix(f5, dv, dv, rng);
        bool use_transform = trial % 2 == 0 && v.invertible();
        ExtendingDatum d2 = use_transform ? transform_extending_structure(d, r, v)
                                          : random_datum(base, dv, rng);
        MorphismPair pair{r, v};
        bool by_conditions = check_morphism_pair(d, d2, pair, exh);
        bool by_product =
            check_algebra_morphism(pair.block_matrix(), build_unified_unchecked(d).product,
                                   build_unified_unchecked(d2).product, exh);
        CHECK(by_conditions == by_product);
        CHECK(pair.block_matrix().invertible() == v.invertible());
        if (use_transform) {
          CHECK(by_conditions);
          ++related;
        } else if (by_conditions) {
          ++unrelated_morphisms;
        } else {
          ++mismatched;
        }
      }
    }
  }
  CHECK(related >= 10);
  CHECK(mismatched >= 10);
  (void)unrelated_morphisms;

  Algebra base = Algebra::abelian(f5, 1);
  ExtendingDatum d = trivial_datum(base, 1);
  SUBCASE("failures are reported per condition with a basis witness") {
    ExtendingDatum d2 = d;
    d2.cocycle.set(0, 0, 0, Scalar::one(f5));
    MorphismPair id{Matrix(f5, 1, 1), Matrix::identity(f5, 1)};
    ValidationReport rep;
    CHECK_FALSE(check_morphism_pair(d, d2, id, exh, &rep));
    REQUIRE(rep.checks.size() == 4);
    CHECK(rep.find("M1")->passed);
    CHECK(rep.find("M2")->passed);
    CHECK(rep.find("M3")->passed);
    CHECK_FALSE(rep.find("M4")->passed);
    CHECK(rep.find("M4")->witness.size() == 2);
  }
  SUBCASE("shape mismatches are rejected") {
    CHECK_THROWS_AS(check_morphism_pair(d, trivial_datum(base, 2),
                                        MorphismPair{Matrix(f5, 1, 1), Matrix::identity(f5, 1)},
                                        exh),
                    std::invalid_argument);
    CHECK_THROWS_AS(
        check_morphism_pair(d, d, MorphismPair{Matrix(f5, 2, 1), Matrix::identity(f5, 1)}, exh),
        std::invalid_argument);
  }
}

TEST_CASE("transforms compose as a group and preserve validity") {
  std::mt19937 rng(11);
  FieldSpec f5 = FieldSpec::prime(5);
  CheckMode exh = CheckMode::exhaustive();
  Algebra base = verified(unital_line(f5));
  std::size_t dv = 2;

  // The datum of a spin factor: the unit acts as the identity on V and the
  // cocycle is a symmetric bilinear form, so validity is guaranteed.
  BilinearMap act_r(f5, dv, base.dim(), dv);
  act_r.set(0, 0, 0, Scalar::one(f5));
  act_r.set(1, 0, 1, Scalar::one(f5));
  BilinearMap cocycle(f5, dv, dv, base.dim());
  cocycle.set(0, 0, 0, Scalar::one(f5));
  cocycle.set(0, 1, 0, Scalar::from_int(f5, 2));
  cocycle.set(1, 0, 0, Scalar::from_int(f5, 2));
  cocycle.set(1, 1, 0, Scalar::from_int(f5, 3));
  ExtendingDatum d(base, dv, act_r, BilinearMap(f5, dv, base.dim(), base.dim()), cocycle,
                   BilinearMap(f5, dv, dv, dv));
  REQUIRE(validate_extending_structure(d, exh).passed());

  SUBCASE("identity, composition, and inverses") {
    CHECK(transform_extending_structure(d, Matrix(f5, base.dim(), dv),
                                        Matrix::identity(f5, dv)) == d);
    for (int trial = 0; trial < 6; ++trial) {
      Matrix r1 = random_matrix(f5, base.dim(), dv, rng);
      Matrix v1 = random_invertible(f5, dv, rng);
      Matrix r2 = random_matrix(f5, base.dim(), dv, rng);
      Matrix v2 = random_invertible(f5, dv, rng);
      ExtendingDatum step = transform_extending_structure(
          transform_extending_structure(d, r1, v1), r2, v2);
      ExtendingDatum direct =
          transform_extending_structure(d, r1.add(r2.mul(v1)), v2.mul(v1));
      CHECK(step == direct);

      ExtendingDatum moved = transform_extending_structure(d, r1, v1);
      Matrix v1inv = *v1.inverse();
      ExtendingDatum back = transform_extending_structure(
          moved, r1.mul(v1inv).scale(Scalar::from_int(f5, -1)), v1inv);
      CHECK(back == d);
    }
  }

  SUBCASE("transport preserves validity in both directions") {
    Matrix r = random_matrix(f5, base.dim(), dv, rng);
    Matrix v = random_invertible(f5, dv, rng);
    ExtendingDatum moved = transform_extending_structure(d, r, v);
    CHECK(validate_extending_structure(moved, exh).passed());

    // Sending x_0 <| e_0 to x_0 + x_1 makes the idempotent e_0 act with a
    // nontrivial Jordan block, which no Jordan algebra allows.
    ExtendingDatum bad = d;
    bad.act_r.set(0, 0, 1, Scalar::one(f5));
    REQUIRE_FALSE(validate_extending_structure(bad, exh).passed());
    CHECK_FALSE(
        validate_extending_structure(transform_extending_structure(bad, r, v), exh).passed());
  }

  SUBCASE("singular v is rejected") {
    CHECK_THROWS_AS(
        transform_extending_structure(d, Matrix(f5, base.dim(), dv), Matrix(f5, dv, dv)),
        std::invalid_argument);
  }
}

TEST_CASE("classifying extending structures of the zero algebra") {
  FieldSpec f3 = FieldSpec::prime(3);
  Algebra zero = Algebra::abelian(f3, 0);
  auto classes = classify_extending_structures(zero, 1);

  // One-dimensional products over an empty base are x.x = c x; scaling x
  // rescales c, so c = 0 and c != 0 are the two classes.
  REQUIRE(classes.size() == 2);
  CHECK(classes[0].rep.mul_v.at(0, 0, 0).is_zero());
  CHECK(classes[0].orbit_size == 1);
  CHECK(classes[1].rep.mul_v.at(0, 0, 0) == Scalar::one(f3));
  CHECK(classes[1].orbit_size == 2);
  CHECK(classes[0].rep.validated().has_value());

  CHECK_THROWS_AS(classify_extending_structures(Algebra::abelian(FieldSpec::rationals(), 1), 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(classify_extending_structures(unital_line(f3), 1), std::invalid_argument);
  CHECK_THROWS_AS(classify_extending_structures(Algebra::abelian(f3, 1), 2, 10), BoundExceeded);
}

TEST_CASE("flag data expand to one-dimensional extending structures") {
  FieldSpec f5 = FieldSpec::prime(5);
  Algebra a = verified(spin_line(f5));
  FlagDatum fd = zero_flag(a);
  fd.d.at(0, 1) = Scalar::from_int(f5, 2);
  fd.lambda[0] = Scalar::one(f5);
  fd.a0[1] = Scalar::from_int(f5, 3);
  fd.alpha0 = Scalar::from_int(f5, 4);

  ExtendingDatum d = flag_to_datum(a, fd);
  CHECK(d.dim_v == 1);
  CHECK(d.act_r.at(0, 0, 0) == Scalar::one(f5));
  CHECK(d.act_r.at(0, 1, 0).is_zero());
  CHECK(d.act_l.at(0, 1, 0) == Scalar::from_int(f5, 2));
  CHECK(d.act_l.at(0, 1, 1).is_zero());
  CHECK(d.cocycle.at(0, 0, 1) == Scalar::from_int(f5, 3));
  CHECK(d.mul_v.at(0, 0, 0) == Scalar::from_int(f5, 4));

  Algebra built = flag_algebra_unchecked(a, fd);
  REQUIRE(built.dim() == 3);
  Vec e1 = unit_vec(f5, 3, 1);
  Vec x = unit_vec(f5, 3, 2);
  Vec e1x = built.mul(e1, x);
  CHECK(e1x[0] == Scalar::from_int(f5, 2)); // D(e_1) = 2 e_0
  CHECK(e1x[2].is_zero());                  // lambda(e_1) = 0
  Vec xx = built.mul(x, x);
  CHECK(xx[1] == Scalar::from_int(f5, 3));
  CHECK(xx[2] == Scalar::from_int(f5, 4));

  CHECK(fd.lex_cmp(zero_flag(a)) > 0);
  CHECK(fd == fd);
  CHECK(fd != zero_flag(a));
  FlagDatum bad = fd;
  bad.lambda.pop_back();
  CHECK_THROWS_AS(flag_to_datum(a, bad), std::invalid_argument);
}

TEST_CASE("flag validity agrees with the unified axioms and the Jordan check") {
  std::mt19937 rng(23);
  CheckMode exh = CheckMode::exhaustive();
  std::size_t valid_seen = 0, invalid_seen = 0;
  for (FieldSpec f : {FieldSpec::prime(3), FieldSpec::prime(5)}) {
    for (const Algebra& a : {Algebra::abelian(f, 2), verified(unital_line(f))}) {
      FlagDatum zero = zero_flag(a);
      std::vector<FlagDatum> pool{zero};
      for (int i = 0; i < 14; ++i)
        pool.push_back(random_flag(a, rng));
      if (a.mul_map() == BilinearMap(f, a.dim(), a.dim(), a.dim()))
        for (int i = 0; i < 3; ++i) {
          // With d = 0 and lambda = 0 every flag over the zero product is
          // valid, whatever a0 and alpha0 are.
          FlagDatum easy = zero_flag(a);
          easy.a0 = random_vec(f, a.dim(), rng);
          easy.alpha0 = detail::random_scalar(f, rng);
          pool.push_back(easy);
        }
      for (const FlagDatum& fd : pool) {
        bool flags = validate_flag_datum(a, fd, exh).passed();
        bool axioms = validate_extending_structure(flag_to_datum(a, fd), exh).passed();
        bool jordan = check_jordan(flag_algebra_unchecked(a, fd), exh).passed();
        CHECK(flags == axioms);
        CHECK(flags == jordan);
        (flags ? valid_seen : invalid_seen) += 1;
      }
    }
  }
  CHECK(valid_seen >= 8);
  CHECK(invalid_seen >= 8);

  SUBCASE("each flag condition is reported and formal mode works over the rationals") {
    FieldSpec q = FieldSpec::rationals();
    Algebra a = Algebra::abelian(q, 1);
    ValidationReport rep = validate_flag_datum(a, zero_flag(a), CheckMode::formal());
    for (const char* id : {"F1", "F2", "F3", "F4", "F5", "F6:missing-b", "F6:missing-y"})
      CHECK(rep.find(id) != nullptr);
    CHECK(rep.passed());

    // lambda = 1, a0 = 1 violates F4 over the zero product: 0 != lambda(a0)^2.
    FlagDatum bad = zero_flag(a);
    bad.lambda[0] = Scalar::one(q);
    bad.a0[0] = Scalar::one(q);
    ValidationReport brep = validate_flag_datum(a, bad, CheckMode::formal());
    CHECK_FALSE(brep.passed());
    CHECK_FALSE(brep.find("F4")->passed);
  }

  SUBCASE("an unverified base is rejected") {
    FieldSpec f5 = FieldSpec::prime(5);
    Algebra raw = unital_line(f5);
    CHECK_THROWS_AS(validate_flag_datum(raw, zero_flag(raw), exh), std::invalid_argument);
  }
}

TEST_CASE("flag equivalence, transforms, and the unified transform agree") {
  std::mt19937 rng(31);
  FieldSpec f5 = FieldSpec::prime(5);
  Algebra a = verified(spin_line(f5));

  for (int trial = 0; trial < 10; ++trial) {
    FlagDatum fd = random_flag(a, rng);
    Vec r = random_vec(f5, a.dim(), rng);
    Scalar u = Scalar::zero(f5);
    while (u.is_zero())
      u = detail::random_scalar(f5, rng);

    FlagDatum moved = transform_flag(a, fd, r, u);
    CHECK(flag_equivalent(a, fd, moved, r, u));
    CHECK(moved.lambda == fd.lambda);
    CHECK(flag_to_datum(a, moved) ==
          transform_extending_structure(flag_to_datum(a, fd), column_matrix(f5, r),
                                        scalar_matrix(u)));

    Vec r2 = random_vec(f5, a.dim(), rng);
    Scalar u2 = Scalar::one(f5) + Scalar::one(f5);
    FlagDatum twice = transform_flag(a, moved, r2, u2);
    CHECK(twice == transform_flag(a, fd, add(r, scale(u, r2)), u2 * u));
  }

  FlagDatum fd = zero_flag(a);
  fd.a0[0] = Scalar::one(f5);
  Vec r = zero_vec(f5, a.dim());
  CHECK_FALSE(flag_equivalent(a, fd, zero_flag(a), r, Scalar::one(f5)));
  CHECK_THROWS_AS(transform_flag(a, fd, r, Scalar::zero(f5)), std::invalid_argument);
  CHECK_THROWS_AS(flag_equivalent(a, fd, fd, r, Scalar::zero(f5)), std::invalid_argument);
}

TEST_CASE("classify_flag matches the general classifier in dimension one") {
  FieldSpec f3 = FieldSpec::prime(3);
  for (const Algebra& a : {Algebra::abelian(f3, 1), verified(unital_line(f3))}) {
    auto flags = classify_flag(a);
    auto data = classify_extending_structures(a, 1);
    CHECK(flags.size() == data.size());
    CHECK(sorted_sizes(flags) == sorted_sizes(data));
    for (const auto& c : flags)
      CHECK(validate_flag_datum(a, c.rep, CheckMode::exhaustive()).passed());
  }

  // Hand-derived classes over the zero product on k: with lambda forced to
  // zero, validity reads d(m - d) = 0 or (c, m) = (0, 2d), and (r, u) moves
  // (d, c, m) to (ud, c + (m - 2d)r, um) since u^2 = 1 over GF(3). That
  // leaves three singletons (0, c, 0), one orbit {d = 0, m != 0}, one orbit
  // {m = d != 0}, and the pair {(1, 0, 2), (2, 0, 1)}.
  auto classes = classify_flag(Algebra::abelian(f3, 1));
  REQUIRE(classes.size() == 6);
  CHECK(classes[0].rep == zero_flag(Algebra::abelian(f3, 1)));
  std::vector<std::uint64_t> sizes = sorted_sizes(classes);
  CHECK(sizes == std::vector<std::uint64_t>{1, 1, 1, 2, 6, 6});

  CHECK_THROWS_AS(classify_flag(Algebra::abelian(FieldSpec::rationals(), 1)),
                  std::invalid_argument);
  CHECK_THROWS_AS(classify_flag(unital_line(f3)), std::invalid_argument);
  CHECK_THROWS_AS(classify_flag(Algebra::abelian(f3, 2), 100), BoundExceeded);
}

TEST_CASE("one-dimensional pairs validate exactly like their crossed systems") {
  std::mt19937 rng(41);
  CheckMode exh = CheckMode::exhaustive();
  std::size_t valid_seen = 0, invalid_seen = 0;
  for (FieldSpec f : {FieldSpec::prime(3), FieldSpec::prime(5)}) {
    for (int eps : {0, 1}) {
      Algebra keps = line_eps(f, eps);
      for (const Algebra& a : {Algebra::abelian(f, 2), verified(unital_line(f))}) {
        std::vector<std::pair<Matrix, Vec>> pool;
        pool.emplace_back(Matrix(f, a.dim(), a.dim()), zero_vec(f, a.dim()));
        for (int i = 0; i < 10; ++i)
          pool.emplace_back(random_matrix(f, a.dim(), a.dim(), rng),
                            random_vec(f, a.dim(), rng));
        for (const auto& [d, a0] : pool) {
          bool pairs = validate_onedim_pair(a, d, a0, eps, exh).passed();
          CrossedSystem cs = onedim_system(a, keps, d, a0);
          bool crossed = validate_crossed_system(cs, exh).passed();
          bool jordan = check_jordan(build_crossed_unchecked(cs), exh).passed();
          CHECK(pairs == crossed);
          CHECK(pairs == jordan);
          (pairs ? valid_seen : invalid_seen) += 1;
        }
      }
    }
  }
  CHECK(valid_seen >= 8);
  CHECK(invalid_seen >= 8);

  FieldSpec f5 = FieldSpec::prime(5);
  Algebra a = Algebra::abelian(f5, 1);
  ValidationReport rep =
      validate_onedim_pair(a, Matrix(f5, 1, 1), zero_vec(f5, 1), 1, CheckMode::exhaustive());
  for (const char* id : {"OD1", "OD2", "OD3", "OD4", "OD5"})
    CHECK(rep.find(id) != nullptr);
  CHECK_THROWS_AS(
      validate_onedim_pair(a, Matrix(f5, 2, 2), zero_vec(f5, 1), 1, CheckMode::exhaustive()),
      std::invalid_argument);
}

TEST_CASE("crossed cohomology shifts form an abelian action matching the transforms") {
  std::mt19937 rng(53);
  FieldSpec f5 = FieldSpec::prime(5);
  Algebra a = Algebra::abelian(f5, 2);
  Algebra v = verified(unital_line(f5));

  BilinearMap act(f5, 1, 2, 2);
  act.set(0, 0, 0, Scalar::one(f5));
  act.set(0, 1, 1, Scalar::one(f5));
  BilinearMap cocycle(f5, 1, 1, 2);
  cocycle.set(0, 0, 1, Scalar::from_int(f5, 2));
  CrossedSystem cs(a, v, act, cocycle);
  REQUIRE(validate_crossed_system(cs, CheckMode::exhaustive()).passed());

  CHECK(transform_crossed(cs, Matrix(f5, 2, 1)) == cs);
  for (int trial = 0; trial < 8; ++trial) {
    Matrix r1 = random_matrix(f5, 2, 1, rng);
    Matrix r2 = random_matrix(f5, 2, 1, rng);
    CrossedSystem moved = transform_crossed(cs, r1);
    CHECK(crossed_cohomologous(cs, moved, r1));
    CHECK(crossed_cohomologous(moved, cs, r1.scale(Scalar::from_int(f5, -1))));
    CHECK(transform_crossed(moved, r2) == transform_crossed(cs, r1.add(r2)));
    CHECK(moved.to_datum() ==
          transform_extending_structure(cs.to_datum(), r1, Matrix::identity(f5, 1)));
    CHECK(validate_crossed_system(moved, CheckMode::exhaustive()).passed());

    std::optional<Matrix> witness = search_cohomology_witness(cs, moved);
    REQUIRE(witness.has_value());
    CHECK(crossed_cohomologous(cs, moved, *witness));
  }

  SUBCASE("witness search distinguishes classes and reports its bounds") {
    // A shifted cocycle on the trivial action of k_0 is never a coboundary:
    // every shift fixes f entirely.
    Algebra v0 = Algebra::abelian(f5, 1);
    CrossedSystem base = trivial_crossed_system(a, v0);
    CrossedSystem shifted = base;
    shifted.cocycle.set(0, 0, 0, Scalar::one(f5));
    CHECK_FALSE(search_cohomology_witness(base, shifted).has_value());
    CHECK(search_cohomology_witness(base, base).has_value());
    CHECK_THROWS_AS(search_cohomology_witness(base, shifted, 3), BoundExceeded);
    CHECK_THROWS_AS(crossed_cohomologous(base, trivial_crossed_system(a, v), Matrix(f5, 2, 1)),
                    std::invalid_argument);
    CHECK_THROWS_AS(transform_crossed(base, Matrix(f5, 1, 1)), std::invalid_argument);

    FieldSpec q = FieldSpec::rationals();
    CrossedSystem rational =
        trivial_crossed_system(Algebra::abelian(q, 1), Algebra::abelian(q, 1));
    CHECK_THROWS_AS(search_cohomology_witness(rational, rational), std::invalid_argument);
  }
}

TEST_CASE("h2 for one-dimensional extensions freezes the brute-force counts") {
  FieldSpec f5 = FieldSpec::prime(5);
  Algebra line = Algebra::abelian(f5, 1);
  Algebra plane = Algebra::abelian(f5, 2);

  SUBCASE("x.x = x over the affine line") {
    auto classes = h2_onedim(line, 1);
    REQUIRE(classes.size() == 3);
    // Derived by hand: valid pairs are d(d-1)(2d-1) = 0 with d(d-1) a0 = 0,
    // and a0 shifts by (1 - 2d) r, so d in {0, 1} sweeps a0 while d = 3
    // pins a0 = 0.
    std::vector<long long> reps{0, 1, 3};
    std::vector<std::uint64_t> sizes{5, 5, 1};
    for (std::size_t i = 0; i < 3; ++i) {
      CHECK(classes[i].rep.d.at(0, 0) == Scalar::from_int(f5, reps[i]));
      CHECK(is_zero_vec(classes[i].rep.a0));
      CHECK(classes[i].orbit_size == sizes[i]);
    }
  }

  SUBCASE("x.x = 0 over the affine line") {
    auto classes = h2_onedim(line, 0);
    REQUIRE(classes.size() == 5);
    for (std::size_t i = 0; i < 5; ++i) {
      CHECK(classes[i].rep.d.is_zero());
      CHECK(classes[i].rep.a0[0] == Scalar::from_int(f5, static_cast<long long>(i)));
      CHECK(classes[i].orbit_size == 1);
    }
  }

  SUBCASE("x.x = x over the plane projects onto the matrix cubic") {
    auto classes = h2_onedim(plane, 1);
    std::vector<Matrix> cubic = solve_matrix_cubic(2, f5);
    REQUIRE(classes.size() == 93);
    REQUIRE(cubic.size() == 93);
    for (std::size_t i = 0; i < classes.size(); ++i) {
      CHECK(classes[i].rep.d == cubic[i]);
      CHECK(is_zero_vec(classes[i].rep.a0));
    }
  }

  SUBCASE("x.x = 0 over the plane") {
    CHECK(h2_onedim(plane, 0).size() == 145);
  }

  SUBCASE("input validation") {
    CHECK_THROWS_AS(h2_onedim(line, 2), std::invalid_argument);
    CHECK_THROWS_AS(h2_onedim(Algebra::abelian(FieldSpec::rationals(), 1), 0),
                    std::invalid_argument);
    CHECK_THROWS_AS(h2_onedim(plane, 1, 100), BoundExceeded);
  }
}

TEST_CASE("h2_nab matches the one-dimensional model on lines") {
  FieldSpec f5 = FieldSpec::prime(5);
  Algebra a = Algebra::abelian(f5, 1);

  auto nab = h2_nab(verified(unital_line(f5)), a);
  auto pairs = h2_onedim(a, 1);
  REQUIRE(nab.size() == pairs.size());
  for (std::size_t i = 0; i < nab.size(); ++i) {
    CHECK(nab[i].rep.act.at(0, 0, 0) == pairs[i].rep.d.at(0, 0));
    CHECK(nab[i].rep.cocycle.at(0, 0, 0) == pairs[i].rep.a0[0]);
    CHECK(nab[i].orbit_size == pairs[i].orbit_size);
    CHECK(nab[i].rep.validated().has_value());
  }

  auto nilpotent = h2_nab(Algebra::abelian(f5, 1), a);
  CHECK(nilpotent.size() == 5);
  for (const auto& c : nilpotent)
    CHECK(c.orbit_size == 1);

  CHECK_THROWS_AS(h2_nab(unital_line(f5), a), std::invalid_argument);
  CHECK_THROWS_AS(h2_nab(verified(unital_line(FieldSpec::prime(3))), a), std::invalid_argument);
  CHECK_THROWS_AS(h2_nab(verified(unital_line(f5)), Algebra::abelian(f5, 3), 100),
                  BoundExceeded);
}

TEST_CASE("the matrix cubic enumerates its solutions in digit order") {
  FieldSpec f5 = FieldSpec::prime(5);
  auto roots = solve_matrix_cubic(1, f5);
  REQUIRE(roots.size() == 3);
  CHECK(roots[0].at(0, 0) == Scalar::from_int(f5, 0));
  CHECK(roots[1].at(0, 0) == Scalar::from_int(f5, 1));
  CHECK(roots[2].at(0, 0) == Scalar::from_int(f5, 3));

  // Over GF(3) the scalar cubic 2d^3 - 3d^2 + d reduces to 3d = 0, so every
  // scalar qualifies.
  CHECK(solve_matrix_cubic(1, FieldSpec::prime(3)).size() == 3);

  for (const Matrix& m : solve_matrix_cubic(2, f5))
    CHECK(matrix_cubic_satisfied(m));

  FieldSpec q = FieldSpec::rationals();
  Matrix one = Matrix::identity(q, 1);
  CHECK(matrix_cubic_satisfied(one));
  CHECK_FALSE(matrix_cubic_satisfied(one.scale(Scalar::from_int(q, 2))));
  CHECK_THROWS_AS(matrix_cubic_satisfied(Matrix(q, 1, 2)), std::invalid_argument);
  CHECK_THROWS_AS(solve_matrix_cubic(1, q), std::invalid_argument);
  CHECK_THROWS_AS(solve_matrix_cubic(3, f5, 100), BoundExceeded);
}

TEST_CASE("worker sharding leaves every classification unchanged") {
  FieldSpec f5 = FieldSpec::prime(5);
  Algebra plane = Algebra::abelian(f5, 2);
  CHECK(worker_count() == 1);

  auto serial_classes = h2_onedim(plane, 1);
  auto serial_cubic = solve_matrix_cubic(2, f5);
  set_worker_count(4);
  CHECK(worker_count() == 4);
  auto parallel_classes = h2_onedim(plane, 1);
  auto parallel_cubic = solve_matrix_cubic(2, f5);
  set_worker_count(0); // clamps back to one worker
  CHECK(worker_count() == 1);

  REQUIRE(parallel_classes.size() == serial_classes.size());
  for (std::size_t i = 0; i < serial_classes.size(); ++i) {
    CHECK(parallel_classes[i].rep.d == serial_classes[i].rep.d);
    CHECK(parallel_classes[i].rep.a0 == serial_classes[i].rep.a0);
    CHECK(parallel_classes[i].orbit_size == serial_classes[i].orbit_size);
  }
  REQUIRE(parallel_cubic.size() == serial_cubic.size());
  for (std::size_t i = 0; i < serial_cubic.size(); ++i)
    CHECK(parallel_cubic[i] == serial_cubic[i]);
}
