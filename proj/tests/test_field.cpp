#include "doctest.h"

#include "jordan/field.hpp"
#include "jordan/linalg.hpp"
#include "jordan/poly.hpp"

#include <random>

using namespace jordan;

TEST_CASE("field spec construction and parsing") {
  CHECK(FieldSpec::rationals().is_rationals());
  CHECK(FieldSpec::prime(5).characteristic() == 5);
  CHECK(FieldSpec::prime(3).order() == 3);
  CHECK_THROWS_AS(FieldSpec::prime(2), std::invalid_argument);
  CHECK_THROWS_AS(FieldSpec::prime(9), std::invalid_argument);
  CHECK_THROWS_AS(FieldSpec::prime(1), std::invalid_argument);
  CHECK_THROWS_AS(FieldSpec::prime(0), std::invalid_argument);
  CHECK(FieldSpec::parse("Q") == FieldSpec::rationals());
  CHECK(FieldSpec::parse("GF(7)") == FieldSpec::prime(7));
  CHECK_THROWS_AS(FieldSpec::parse("GF(2)"), std::invalid_argument);
  CHECK_THROWS_AS(FieldSpec::parse("R"), std::invalid_argument);
  CHECK(FieldSpec::prime(5).to_string() == "GF(5)");
  CHECK(FieldSpec::rationals().to_string() == "Q");
}

TEST_CASE("scalar arithmetic is exact") {
  FieldSpec q = FieldSpec::rationals();
  Scalar a = Scalar::parse(q, "2/3");
  Scalar b = Scalar::parse(q, "-1/6");
  CHECK((a + b).to_string() == "1/2");
  CHECK((a * b).to_string() == "-1/9");
  CHECK((a - a).is_zero());
  CHECK((a / a).is_one());
  CHECK((-b).to_string() == "1/6");
  CHECK(Scalar::from_int(q, 3).to_string() == "3/1");
  CHECK_THROWS_AS(Scalar::zero(q).inverse(), std::domain_error);

  FieldSpec f5 = FieldSpec::prime(5);
  Scalar x = Scalar::from_int(f5, 3);
  CHECK((x + x).to_string() == "1");
  CHECK((x * x).to_string() == "4");
  CHECK(x.inverse().to_string() == "2");
  CHECK(Scalar::from_int(f5, -1).to_string() == "4");
  CHECK(Scalar::parse(f5, "7").to_string() == "2");
  CHECK(Scalar::parse(f5, "1/2").to_string() == "3");
  CHECK_THROWS_AS(Scalar::parse(f5, "1/5"), std::invalid_argument);
  CHECK_THROWS_AS(Scalar::parse(q, "1/0"), std::invalid_argument);
  CHECK_THROWS_AS(Scalar::parse(q, "abc"), std::invalid_argument);
  CHECK_THROWS_AS(x + a, std::invalid_argument);
}

TEST_CASE("field axioms on random triples") {
  std::mt19937 rng(42);
  for (FieldSpec f : {FieldSpec::rationals(), FieldSpec::prime(7)}) {
    for (int it = 0; it < 100; ++it) {
      auto rnd = [&]() {
        long long v = static_cast<long long>(rng() % 19) - 9;
        return Scalar::from_int(f, v);
      };
      Scalar a = rnd(), b = rnd(), c = rnd();
      CHECK((a + b) + c == a + (b + c));
      CHECK((a * b) * c == a * (b * c));
      CHECK(a * (b + c) == a * b + a * c);
      CHECK((a + (-a)).is_zero());
      if (!a.is_zero())
        CHECK((a * a.inverse()).is_one());
    }
  }
}

TEST_CASE("solve_linear matches the frozen examples") {
  FieldSpec q = FieldSpec::rationals();
  Matrix id = Matrix::identity(q, 3);
  Vec b = {Scalar::from_int(q, 1), Scalar::from_int(q, 2), Scalar::from_int(q, 3)};
  CHECK(solve_linear(id, b) == b);

  Matrix zero(q, 2, 2);
  Vec nz = {Scalar::from_int(q, 1), Scalar::zero(q)};
  CHECK(!solve_linear(zero, nz).has_value());

  FieldSpec f5 = FieldSpec::prime(5);
  Matrix m(f5, 1, 1);
  m.at(0, 0) = Scalar::from_int(f5, 2);
  Vec rhs = {Scalar::from_int(f5, 3)};
  auto x = solve_linear(m, rhs);
  REQUIRE(x.has_value());
  CHECK((*x)[0].to_string() == "4");
}

TEST_CASE("solve_linear solutions satisfy the system") {
  std::mt19937 rng(7);
  FieldSpec f = FieldSpec::prime(11);
  for (int it = 0; it < 50; ++it) {
    Matrix m(f, 3, 4);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 4; ++j)
        m.at(i, j) = Scalar::from_int(f, static_cast<long long>(rng() % 11));
    Vec b;
    for (std::size_t i = 0; i < 3; ++i)
      b.push_back(Scalar::from_int(f, static_cast<long long>(rng() % 11)));
    if (auto x = solve_linear(m, b))
      CHECK(m.apply(*x) == b);
  }
}

TEST_CASE("kernel matches the frozen examples") {
  FieldSpec q = FieldSpec::rationals();
  CHECK(kernel(Matrix::identity(q, 4)).empty());
  CHECK(kernel(Matrix(q, 3, 3)).size() == 3);

  Matrix m(q, 2, 2);
  m.at(0, 0) = Scalar::from_int(q, 1);
  m.at(0, 1) = Scalar::from_int(q, 1);
  auto basis = kernel(m);
  REQUIRE(basis.size() == 1);
  CHECK(basis[0][0].to_string() == "1/1");
  CHECK(basis[0][1].to_string() == "-1/1");
}

TEST_CASE("kernel vectors are independent solutions") {
  std::mt19937 rng(9);
  FieldSpec f = FieldSpec::prime(3);
  for (int it = 0; it < 50; ++it) {
    Matrix m(f, 3, 4);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 4; ++j)
        m.at(i, j) = Scalar::from_int(f, static_cast<long long>(rng() % 3));
    auto basis = kernel(m);
    CHECK(basis.size() == 4 - m.rank());
    for (const Vec& v : basis)
      CHECK(is_zero_vec(m.apply(v)));
    if (!basis.empty())
      CHECK(Matrix::from_rows(f, basis).rank() == basis.size());
  }
}

TEST_CASE("matrix inverse and rref") {
  FieldSpec f = FieldSpec::prime(7);
  Matrix m(f, 2, 2);
  m.at(0, 0) = Scalar::from_int(f, 2);
  m.at(0, 1) = Scalar::from_int(f, 1);
  m.at(1, 1) = Scalar::from_int(f, 3);
  auto inv = m.inverse();
  REQUIRE(inv.has_value());
  CHECK(m.mul(*inv) == Matrix::identity(f, 2));
  CHECK(inv->mul(m) == Matrix::identity(f, 2));
  CHECK(m.rank() == 2);
  CHECK(!Matrix(f, 2, 2).invertible());

  Matrix singular(f, 2, 2);
  singular.at(0, 0) = Scalar::from_int(f, 1);
  singular.at(1, 0) = Scalar::from_int(f, 1);
  CHECK(!singular.inverse().has_value());
}

TEST_CASE("echelon span membership") {
  FieldSpec q = FieldSpec::rationals();
  Vec v1 = {Scalar::from_int(q, 1), Scalar::from_int(q, 2), Scalar::zero(q)};
  Vec v2 = {Scalar::zero(q), Scalar::from_int(q, 1), Scalar::from_int(q, 1)};
  auto ech = echelon_basis(q, 3, {v1, v2});
  CHECK(ech.size() == 2);
  CHECK(in_span(ech, add(v1, scale(Scalar::from_int(q, -3), v2))));
  Vec out = {Scalar::zero(q), Scalar::zero(q), Scalar::from_int(q, 1)};
  CHECK(!in_span(ech, out));
}

TEST_CASE("poly basics and poly_eval_zero") {
  FieldSpec q = FieldSpec::rationals();
  Poly zero(q, 2);
  CHECK(poly_eval_zero(zero));

  Poly x0 = Poly::variable(q, 2, 0);
  CHECK(poly_eval_zero(x0 - x0));

  FieldSpec f5 = FieldSpec::prime(5);
  Poly p = Poly::constant(f5, 2, Scalar::from_int(f5, 2)) * Poly::variable(f5, 2, 0) *
           Poly::variable(f5, 2, 1);
  CHECK(!poly_eval_zero(p));
  CHECK(p.degree() == 2);
  CHECK(p.to_string() == "2*t0*t1");

  // (x0 + x1)^2 expands correctly
  Poly s = Poly::variable(q, 2, 0) + Poly::variable(q, 2, 1);
  Poly sq = s * s;
  Poly::Expo e00{2, 0}, e11{0, 2}, e01{1, 1};
  CHECK(sq.coeff(e00).to_string() == "1/1");
  CHECK(sq.coeff(e01).to_string() == "2/1");
  CHECK(sq.coeff(e11).to_string() == "1/1");

  // evaluation agrees with substitution over a small field
  Poly t = Poly::variable(f5, 1, 0) * Poly::variable(f5, 1, 0) -
           Poly::constant(f5, 1, Scalar::from_int(f5, 4));
  for (long long v = 0; v < 5; ++v) {
    Scalar got = t.eval({Scalar::from_int(f5, v)});
    CHECK(got == Scalar::from_int(f5, v * v - 4));
  }
}

TEST_CASE("pow_sat saturates instead of overflowing") {
  CHECK(pow_sat(5, 3) == 125);
  CHECK(pow_sat(2, 64) == UINT64_MAX);
  CHECK(pow_sat(3, 0) == 1);
}
