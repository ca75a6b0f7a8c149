#include "jordan/algebra.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace jordan {

namespace {

// flattened m x m product of ring matrices
template <class R>
std::vector<R> mat_mul_flat(const std::vector<R>& a, const std::vector<R>& b, std::size_t m,
                            const R& zero) {
  std::vector<R> out(m * m, zero);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t k = 0; k < m; ++k) {
      const R& aik = a[i * m + k];
      if (aik.is_zero())
        continue;
      for (std::size_t j = 0; j < m; ++j)
        if (!b[k * m + j].is_zero())
          out[i * m + j] += aik * b[k * m + j];
    }
  return out;
}

template <class R, class MulView>
std::vector<R> assoc_r(const MulView& mv, const std::vector<R>& x, const std::vector<R>& y,
                       const std::vector<R>& z) {
  return vec_sub(mv.eval(mv.eval(x, y), z), mv.eval(x, mv.eval(y, z)));
}

template <class R, class MulView>
std::vector<R> polar_r(const MulView& mv, const R& two, const std::vector<R>& x,
                       const std::vector<R>& y, const std::vector<R>& z) {
  return vec_add(assoc_r(mv, mv.eval(x, x), y, z),
                 vec_scale(two, assoc_r(mv, mv.eval(x, z), y, x)));
}

} // namespace

BilinearMap::BilinearMap(FieldSpec f, std::size_t d1, std::size_t d2, std::size_t dout)
    : f_(f), d1_(d1), d2_(d2), dout_(dout), c_(d1 * d2 * dout, Scalar::zero(f)) {}

bool BilinearMap::is_zero() const {
  for (const Scalar& s : c_)
    if (!s.is_zero())
      return false;
  return true;
}

std::optional<std::pair<std::size_t, std::size_t>> BilinearMap::symmetry_defect() const {
  if (d1_ != d2_)
    throw std::invalid_argument("symmetry_defect on a map with different argument spaces");
  for (std::size_t i = 0; i < d1_; ++i)
    for (std::size_t j = i + 1; j < d2_; ++j)
      for (std::size_t k = 0; k < dout_; ++k)
        if (at(i, j, k) != at(j, i, k))
          return std::make_pair(i, j);
  return std::nullopt;
}

Vec BilinearMap::eval(const Vec& x, const Vec& y) const {
  if (x.size() != d1_ || y.size() != d2_)
    throw std::invalid_argument("bilinear map argument dimension mismatch");
  Vec out = zero_vec(f_, dout_);
  for (std::size_t i = 0; i < d1_; ++i) {
    if (x[i].is_zero())
      continue;
    for (std::size_t j = 0; j < d2_; ++j) {
      if (y[j].is_zero())
        continue;
      Scalar xy = x[i] * y[j];
      for (std::size_t k = 0; k < dout_; ++k)
        if (!at(i, j, k).is_zero())
          out[k] += xy * at(i, j, k);
    }
  }
  return out;
}

bool BilinearMap::operator==(const BilinearMap& o) const {
  return f_ == o.f_ && d1_ == o.d1_ && d2_ == o.d2_ && dout_ == o.dout_ && c_ == o.c_;
}

int BilinearMap::lex_cmp(const BilinearMap& o) const {
  if (d1_ != o.d1_ || d2_ != o.d2_ || dout_ != o.dout_)
    throw std::invalid_argument("lex_cmp on maps of different shape");
  for (std::size_t i = 0; i < c_.size(); ++i) {
    int c = c_[i].cmp(o.c_[i]);
    if (c != 0)
      return c;
  }
  return 0;
}

Algebra::Algebra(FieldSpec f, std::size_t dim, BilinearMap mul)
    : f_(f), dim_(dim), mul_(std::move(mul)), status_(0) {
  if (mul_.field() != f || mul_.dim1() != dim || mul_.dim2() != dim || mul_.dim_out() != dim)
    throw std::invalid_argument("algebra multiplication tensor has wrong shape or field");
}

Algebra Algebra::abelian(FieldSpec f, std::size_t dim) {
  Algebra a(f, dim, BilinearMap(f, dim, dim, dim));
  a.note_jordan(CheckMode::Kind::Formal); // zero product: every identity is 0 = 0
  return a;
}

Algebra::Algebra(const Algebra& o)
    : f_(o.f_), dim_(o.dim_), mul_(o.mul_), status_(o.status_.load()) {}

Algebra& Algebra::operator=(const Algebra& o) {
  f_ = o.f_;
  dim_ = o.dim_;
  mul_ = o.mul_;
  status_.store(o.status_.load());
  return *this;
}

Vec Algebra::mul(const Vec& x, const Vec& y) const {
  return mul_.eval(x, y);
}

VerifyLevel Algebra::level() const {
  return static_cast<VerifyLevel>(status_.load() & 0xff);
}

std::optional<CheckMode::Kind> Algebra::verified_mode() const {
  std::uint16_t hi = status_.load() >> 8;
  if (hi == 0)
    return std::nullopt;
  return static_cast<CheckMode::Kind>(hi - 1);
}

std::string Algebra::status_string() const {
  switch (level()) {
  case VerifyLevel::Unchecked:
    return "unchecked";
  case VerifyLevel::CommutativeOnly:
    return "commutative";
  case VerifyLevel::JordanVerified: {
    CheckMode m;
    m.kind = *verified_mode();
    std::string k = m.to_string();
    return "jordan(" + k.substr(0, k.find('(')) + ")";
  }
  }
  return "?";
}

void Algebra::note_commutative() const {
  std::uint16_t cur = status_.load();
  while ((cur & 0xff) < 1 && !status_.compare_exchange_weak(cur, (cur & 0xff00) | 1)) {
  }
}

void Algebra::note_jordan(CheckMode::Kind kind) const {
  status_.store(static_cast<std::uint16_t>(2 | ((static_cast<std::uint16_t>(kind) + 1) << 8)));
}

bool Algebra::operator==(const Algebra& o) const {
  // verification status is a cache, not part of the value
  return f_ == o.f_ && dim_ == o.dim_ && mul_ == o.mul_;
}

Vec associator(const Algebra& a, const Vec& x, const Vec& y, const Vec& z) {
  return sub(a.mul(a.mul(x, y), z), a.mul(x, a.mul(y, z)));
}

Vec polarization(const Algebra& a, const Vec& x, const Vec& y, const Vec& z) {
  Vec first = associator(a, a.mul(x, x), y, z);
  Vec second = associator(a, a.mul(x, z), y, x);
  return add(first, add(second, second));
}

ValidationReport check_commutative(const Algebra& a, const CheckMode& mode) {
  AxiomCheck c;
  c.axiom = "commutative";
  c.mode = mode;
  c.slot_names = {"a", "b"};
  c.note = "structure-constant symmetry, exact in every mode";
  if (auto defect = a.mul_map().symmetry_defect()) {
    c.passed = false;
    c.witness = {unit_vec(a.field(), a.dim(), defect->first),
                 unit_vec(a.field(), a.dim(), defect->second)};
  } else {
    a.note_commutative();
  }
  ValidationReport rep;
  rep.checks.push_back(std::move(c));
  return rep;
}

ValidationReport check_jordan(const Algebra& a, const CheckMode& mode) {
  ValidationReport rep = check_commutative(a, mode);
  if (!rep.passed())
    return rep;
  std::vector<Slot> slots{{"a", a.dim(), false}, {"b", a.dim(), true}};
  auto factory = [&]<class R>(const typename RingOps<R>::Ctx& ctx) {
    auto mv = a.mul_map().template view<R>(ctx);
    return [mv](const std::vector<std::vector<R>>& args) {
      auto x2 = mv.eval(args[0], args[0]);
      return vec_sub(mv.eval(mv.eval(x2, args[1]), args[0]),
                     mv.eval(x2, mv.eval(args[1], args[0])));
    };
  };
  rep.checks.push_back(check_identity("jordan", a.field(), slots, mode, factory));
  if (rep.passed())
    a.note_jordan(mode.kind);
  return rep;
}

bool check_jordan_basis_only(const Algebra& a) {
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) {
      Vec ei = unit_vec(a.field(), a.dim(), i);
      Vec ej = unit_vec(a.field(), a.dim(), j);
      Vec sq = a.mul(ei, ei);
      if (!is_zero_vec(sub(a.mul(a.mul(sq, ej), ei), a.mul(sq, a.mul(ej, ei)))))
        return false;
    }
  return true;
}

ValidationReport check_polarization_relation(const Algebra& a, const CheckMode& mode) {
  std::vector<Slot> slots{{"x", a.dim(), false}, {"y", a.dim(), true}, {"z", a.dim(), true}};
  Scalar two = Scalar::from_int(a.field(), 2);
  auto factory = [&]<class R>(const typename RingOps<R>::Ctx& ctx) {
    auto mv = a.mul_map().template view<R>(ctx);
    R two_r = RingOps<R>::from_scalar(ctx, two);
    return [mv, two_r](const std::vector<std::vector<R>>& args) {
      return polar_r(mv, two_r, args[0], args[1], args[2]);
    };
  };
  ValidationReport rep;
  rep.checks.push_back(check_identity("polarization", a.field(), slots, mode, factory));
  return rep;
}

ValidationReport missing_relation_check(const Algebra& w, const std::vector<Vec>& a_basis,
                                        const std::vector<Vec>& v_basis, const CheckMode& mode) {
  std::vector<Vec> all(a_basis);
  all.insert(all.end(), v_basis.begin(), v_basis.end());
  if (echelon_basis(w.field(), w.dim(), all).size() != w.dim())
    throw std::invalid_argument("missing_relation_check: the two bases do not span the algebra");

  Matrix ea = Matrix::from_columns(w.field(), w.dim(), a_basis);
  Matrix ev = Matrix::from_columns(w.field(), w.dim(), v_basis);
  Scalar two = Scalar::from_int(w.field(), 2);

  auto make = [&](bool b_side) {
    return [&, b_side]<class R>(const typename RingOps<R>::Ctx& ctx) {
      auto mv = w.mul_map().template view<R>(ctx);
      auto ma = matrix_view<R>(ea, ctx);
      auto mvv = matrix_view<R>(ev, ctx);
      R two_r = RingOps<R>::from_scalar(ctx, two);
      return [mv, ma, mvv, two_r, b_side](const std::vector<std::vector<R>>& args) {
        auto a = ma.apply(args[0]);
        auto x = mvv.apply(args[1]);
        auto s = b_side ? ma.apply(args[2]) : mvv.apply(args[2]);
        return vec_add(polar_r(mv, two_r, a, s, x), polar_r(mv, two_r, x, s, a));
      };
    };
  };

  ValidationReport rep;
  std::vector<Slot> slots_b{{"a", a_basis.size(), false},
                            {"x", v_basis.size(), false},
                            {"b", a_basis.size(), true}};
  rep.checks.push_back(check_identity("missing-b", w.field(), slots_b, mode, make(true)));
  std::vector<Slot> slots_y{{"a", a_basis.size(), false},
                            {"x", v_basis.size(), false},
                            {"y", v_basis.size(), true}};
  rep.checks.push_back(check_identity("missing-y", w.field(), slots_y, mode, make(false)));
  return rep;
}

Algebra from_associative_plus(const BilinearMap& assoc_mul, const CheckMode& mode) {
  std::size_t n = assoc_mul.dim1();
  if (assoc_mul.dim2() != n || assoc_mul.dim_out() != n)
    throw std::invalid_argument("from_associative_plus: tensor is not n x n -> n");
  FieldSpec f = assoc_mul.field();

  // associativity is trilinear, so basis triples decide it exactly
  std::vector<Slot> slots{{"x", n, true}, {"y", n, true}, {"z", n, true}};
  auto factory = [&]<class R>(const typename RingOps<R>::Ctx& ctx) {
    auto mv = assoc_mul.view<R>(ctx);
    return [mv](const std::vector<std::vector<R>>& args) {
      return assoc_r(mv, args[0], args[1], args[2]);
    };
  };
  AxiomCheck assoc = check_identity("associative", f, slots, CheckMode::formal(), factory);
  if (!assoc.passed)
    throw std::invalid_argument("from_associative_plus: input tensor is not associative (" +
                                assoc.to_string() + ")");

  Scalar half = Scalar::from_int(f, 2).inverse();
  BilinearMap plus(f, n, n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        plus.set(i, j, k, (assoc_mul.at(i, j, k) + assoc_mul.at(j, i, k)) * half);

  Algebra a(f, n, plus);
  if (!check_jordan(a, mode).passed())
    throw std::logic_error("from_associative_plus: A+ failed its Jordan check");
  return a;
}

namespace {

std::vector<Vec> independent_echelon(const Algebra& a, const std::vector<Vec>& basis) {
  std::vector<Vec> ech = echelon_basis(a.field(), a.dim(), basis);
  if (ech.size() != basis.size())
    throw std::invalid_argument("basis vectors are linearly dependent");
  return ech;
}

} // namespace

bool is_subalgebra(const Algebra& a, const std::vector<Vec>& basis) {
  std::vector<Vec> ech = independent_echelon(a, basis);
  for (const Vec& u : basis)
    for (const Vec& w : basis)
      if (!in_span(ech, a.mul(u, w)))
        return false;
  return true;
}

bool is_ideal(const Algebra& a, const std::vector<Vec>& basis) {
  std::vector<Vec> ech = independent_echelon(a, basis);
  for (const Vec& u : basis)
    for (std::size_t j = 0; j < a.dim(); ++j) {
      Vec ej = unit_vec(a.field(), a.dim(), j);
      if (!in_span(ech, a.mul(u, ej)) || !in_span(ech, a.mul(ej, u)))
        return false;
    }
  return true;
}

Algebra subalgebra_on_basis(const Algebra& a, const std::vector<Vec>& basis) {
  std::size_t d = basis.size();
  Matrix incl = Matrix::from_columns(a.field(), a.dim(), basis);
  if (incl.rank() != d)
    throw std::invalid_argument("basis vectors are linearly dependent");
  BilinearMap mul(a.field(), d, d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i; j < d; ++j) {
      std::optional<Vec> c = solve_linear(incl, a.mul(basis[i], basis[j]));
      if (!c)
        throw std::invalid_argument("span is not closed under multiplication");
      for (std::size_t k = 0; k < d; ++k) {
        mul.set(i, j, k, (*c)[k]);
        mul.set(j, i, k, (*c)[k]);
      }
    }
  return Algebra(a.field(), d, mul);
}

std::pair<Algebra, Matrix> quotient_algebra(const Algebra& a, const std::vector<Vec>& ideal_basis) {
  if (!is_ideal(a, ideal_basis))
    throw std::invalid_argument("span is not an ideal");
  std::vector<Vec> ech = echelon_basis(a.field(), a.dim(), ideal_basis);
  std::vector<bool> pivot(a.dim(), false);
  for (const Vec& row : ech)
    for (std::size_t j = 0; j < a.dim(); ++j)
      if (!row[j].is_zero()) {
        pivot[j] = true;
        break;
      }
  std::vector<std::size_t> coset;
  for (std::size_t j = 0; j < a.dim(); ++j)
    if (!pivot[j])
      coset.push_back(j);

  std::size_t q = coset.size();
  Matrix proj(a.field(), q, a.dim());
  for (std::size_t j = 0; j < a.dim(); ++j) {
    Vec rem = reduce_against(ech, unit_vec(a.field(), a.dim(), j));
    for (std::size_t r = 0; r < q; ++r)
      proj.at(r, j) = rem[coset[r]];
  }

  BilinearMap mul(a.field(), q, q, q);
  for (std::size_t i = 0; i < q; ++i)
    for (std::size_t j = i; j < q; ++j) {
      Vec prod = proj.apply(a.mul(unit_vec(a.field(), a.dim(), coset[i]),
                                  unit_vec(a.field(), a.dim(), coset[j])));
      for (std::size_t k = 0; k < q; ++k) {
        mul.set(i, j, k, prod[k]);
        mul.set(j, i, k, prod[k]);
      }
    }
  return {Algebra(a.field(), q, mul), proj};
}

bool check_algebra_morphism(const Matrix& phi, const Algebra& a, const Algebra& b,
                            const CheckMode& mode, ValidationReport* report) {
  if (phi.rows() != b.dim() || phi.cols() != a.dim())
    throw std::invalid_argument("morphism matrix must be dim(B) x dim(A)");
  if (phi.field() != a.field() || a.field() != b.field())
    throw std::invalid_argument("morphism field mismatch");

  AxiomCheck c;
  c.axiom = "morphism";
  c.mode = mode;
  c.slot_names = {"x", "y"};
  c.note = "defect bilinear, basis pairs decide it exactly";
  for (std::size_t i = 0; i < a.dim() && c.passed; ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) {
      Vec ei = unit_vec(a.field(), a.dim(), i);
      Vec ej = unit_vec(a.field(), a.dim(), j);
      Vec lhs = phi.apply(a.mul(ei, ej));
      Vec rhs = b.mul(phi.apply(ei), phi.apply(ej));
      if (lhs != rhs) {
        c.passed = false;
        c.witness = {ei, ej};
        break;
      }
    }
  bool ok = c.passed;
  if (report) {
    report->checks.clear();
    report->checks.push_back(std::move(c));
  }
  return ok;
}

bool check_jacobson_representation(const std::vector<Matrix>& phi_maps, const Algebra& a,
                                   const CheckMode& mode, ValidationReport* report) {
  if (phi_maps.size() != a.dim())
    throw std::invalid_argument("need one endomorphism per basis vector");
  std::size_t m = phi_maps.empty() ? 0 : phi_maps[0].rows();
  for (const Matrix& mm : phi_maps)
    if (mm.rows() != m || mm.cols() != m || mm.field() != a.field())
      throw std::invalid_argument("representation endomorphisms must be square, same size and field");

  std::vector<Slot> slots{{"a", a.dim(), false}};
  auto factory = [&]<class R>(const typename RingOps<R>::Ctx& ctx) {
    auto mv = a.mul_map().template view<R>(ctx);
    R zero = RingOps<R>::zero(ctx);
    std::vector<std::vector<R>> phis;
    for (const Matrix& pm : phi_maps) {
      std::vector<R> flat;
      flat.reserve(m * m);
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
          flat.push_back(RingOps<R>::from_scalar(ctx, pm.at(i, j)));
      phis.push_back(std::move(flat));
    }
    return [mv, zero, phis, m](const std::vector<std::vector<R>>& args) {
      auto of = [&](const std::vector<R>& coeffs) {
        std::vector<R> acc(m * m, zero);
        for (std::size_t i = 0; i < coeffs.size(); ++i) {
          if (coeffs[i].is_zero())
            continue;
          for (std::size_t e = 0; e < m * m; ++e)
            if (!phis[i][e].is_zero())
              acc[e] += coeffs[i] * phis[i][e];
        }
        return acc;
      };
      auto pa = of(args[0]);
      auto pa2 = of(mv.eval(args[0], args[0]));
      return vec_sub(mat_mul_flat(pa, pa2, m, zero), mat_mul_flat(pa2, pa, m, zero));
    };
  };
  AxiomCheck c = check_identity("jacobson", a.field(), slots, mode, factory);
  bool ok = c.passed;
  if (report) {
    report->checks.clear();
    report->checks.push_back(std::move(c));
  }
  return ok;
}

BilinearMap canonical_dual_action(const Algebra& a) {
  std::size_t n = a.dim();
  BilinearMap d(a.field(), n, n, n);
  // (e_i > e*_j) = sum_k c[i][k][j] e*_k
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        d.set(i, j, k, a.mul_map().at(i, k, j));
  return d;
}

Matrix MorphismPair::block_matrix() const {
  std::size_t da = r.rows(), dv = r.cols();
  Matrix m = Matrix::identity(r.field(), da + dv);
  for (std::size_t i = 0; i < da; ++i)
    for (std::size_t j = 0; j < dv; ++j)
      m.at(i, da + j) = r.at(i, j);
  for (std::size_t i = 0; i < dv; ++i) {
    m.at(da + i, da + i) = Scalar::zero(r.field());
    for (std::size_t j = 0; j < dv; ++j)
      m.at(da + i, da + j) = v.at(i, j);
  }
  return m;
}

namespace {

struct ZpTensor {
  std::size_t n = 0;
  std::uint64_t p = 1;
  std::vector<std::uint64_t> c; // (i*n+j)*n+k

  static ZpTensor of(const Algebra& a) {
    ZpTensor t;
    t.n = a.dim();
    t.p = a.field().characteristic();
    t.c.reserve(t.n * t.n * t.n);
    for (std::size_t i = 0; i < t.n; ++i)
      for (std::size_t j = 0; j < t.n; ++j)
        for (std::size_t k = 0; k < t.n; ++k)
          t.c.push_back(a.mul_map().at(i, j, k).residue());
    return t;
  }

  void eval(const std::uint64_t* x, const std::uint64_t* y, std::uint64_t* out) const {
    for (std::size_t k = 0; k < n; ++k)
      out[k] = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (x[i] == 0)
        continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (y[j] == 0)
          continue;
        std::uint64_t xy = (x[i] * y[j]) % p;
        const std::uint64_t* row = &c[(i * n + j) * n];
        for (std::size_t k = 0; k < n; ++k)
          if (row[k])
            out[k] = (out[k] + xy * row[k]) % p;
      }
    }
  }
};

bool zp_invertible(std::vector<std::uint64_t> m, std::size_t n, std::uint64_t p) {
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && m[piv * n + col] == 0)
      ++piv;
    if (piv == n)
      return false;
    if (piv != col)
      for (std::size_t j = 0; j < n; ++j)
        std::swap(m[piv * n + j], m[col * n + j]);
    for (std::size_t i = col + 1; i < n; ++i) {
      if (m[i * n + col] == 0)
        continue;
      // scale row i by pivot and subtract (no inverse needed for rank)
      std::uint64_t a = m[col * n + col], b = m[i * n + col];
      for (std::size_t j = col; j < n; ++j)
        m[i * n + j] = (m[i * n + j] * a + (p - 1) * ((b * m[col * n + j]) % p)) % p;
    }
  }
  return true;
}

// psi is a flat n x n Zp matrix; checks psi(x .1 y) = psi(x) .2 psi(y) on
// all basis pairs
bool zp_is_morphism(const std::vector<std::uint64_t>& psi, const ZpTensor& t1, const ZpTensor& t2) {
  std::size_t n = t1.n;
  std::uint64_t p = t1.p;
  std::vector<std::uint64_t> lhs(n), rhs(n), colx(n), coly(n), tmp(n);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t i = 0; i < n; ++i)
      colx[i] = psi[i * n + x];
    for (std::size_t y = 0; y < n; ++y) {
      for (std::size_t i = 0; i < n; ++i)
        coly[i] = psi[i * n + y];
      const std::uint64_t* prod = &t1.c[(x * n + y) * n];
      for (std::size_t i = 0; i < n; ++i) {
        std::uint64_t acc = 0;
        for (std::size_t j = 0; j < n; ++j)
          if (psi[i * n + j] && prod[j])
            acc = (acc + psi[i * n + j] * prod[j]) % p;
        lhs[i] = acc;
      }
      t2.eval(colx.data(), coly.data(), rhs.data());
      if (lhs != rhs)
        return false;
    }
  }
  return true;
}

Matrix zp_flat_to_matrix(FieldSpec f, const std::vector<std::uint64_t>& flat, std::size_t rows,
                         std::size_t cols) {
  Matrix m(f, rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j)
      m.at(i, j) = Scalar::from_int(f, static_cast<long long>(flat[i * cols + j]));
  return m;
}

} // namespace

std::optional<MorphismPair> find_stabilizing_isomorphism(const Algebra& e1, const Algebra& e2,
                                                         std::size_t a_dim, std::uint64_t bound) {
  if (e1.dim() != e2.dim() || e1.field() != e2.field())
    throw std::invalid_argument("stabilizing isomorphism needs equal dimensions and fields");
  if (a_dim > e1.dim())
    throw std::invalid_argument("a_dim exceeds the algebra dimension");
  if (!e1.field().is_prime_field())
    throw std::invalid_argument("stabilizing-isomorphism search requires a prime field");

  std::size_t n = e1.dim(), dv = n - a_dim;
  std::uint64_t p = e1.field().characteristic();
  ZpTensor t1 = ZpTensor::of(e1), t2 = ZpTensor::of(e2);

  std::size_t ndigits = a_dim * dv + dv * dv;
  if (pow_sat(p, ndigits) > bound)
    throw BoundExceeded("stabilizing-isomorphism search", pow_sat(p, ndigits), bound);

  std::vector<std::uint64_t> vblock(dv * dv), psi(n * n);
  auto try_pair = [&](const std::vector<std::uint64_t>& digits) -> bool {
    for (std::size_t i = 0; i < dv; ++i)
      for (std::size_t j = 0; j < dv; ++j)
        vblock[i * dv + j] = digits[a_dim * dv + i * dv + j];
    if (!zp_invertible(vblock, dv, p))
      return false;
    std::fill(psi.begin(), psi.end(), 0);
    for (std::size_t i = 0; i < a_dim; ++i)
      psi[i * n + i] = 1;
    for (std::size_t i = 0; i < a_dim; ++i)
      for (std::size_t j = 0; j < dv; ++j)
        psi[i * n + a_dim + j] = digits[i * dv + j];
    for (std::size_t i = 0; i < dv; ++i)
      for (std::size_t j = 0; j < dv; ++j)
        psi[(a_dim + i) * n + a_dim + j] = vblock[i * dv + j];
    return zp_is_morphism(psi, t1, t2);
  };

  auto result = [&](const std::vector<std::uint64_t>& digits) {
    MorphismPair mp{Matrix(e1.field(), a_dim, dv), Matrix(e1.field(), dv, dv)};
    std::vector<std::uint64_t> rflat(digits.begin(), digits.begin() + a_dim * dv);
    std::vector<std::uint64_t> vflat(digits.begin() + a_dim * dv, digits.end());
    mp.r = zp_flat_to_matrix(e1.field(), rflat, a_dim, dv);
    mp.v = zp_flat_to_matrix(e1.field(), vflat, dv, dv);
    return mp;
  };

  // probe the identity pair first so E1 == E2 reports (r=0, v=id)
  std::vector<std::uint64_t> ident(ndigits, 0);
  for (std::size_t i = 0; i < dv; ++i)
    ident[a_dim * dv + i * dv + i] = 1;
  if (try_pair(ident))
    return result(ident);

  std::vector<std::uint64_t> digits(ndigits, 0);
  while (true) {
    if (digits != ident && try_pair(digits))
      return result(digits);
    if (!detail::next_tuple(digits, p))
      return std::nullopt;
  }
}

std::vector<std::vector<Vec>> find_ideals(const Algebra& a, std::size_t max_dim,
                                          std::uint64_t bound) {
  if (!a.field().is_prime_field())
    throw std::invalid_argument("ideal enumeration requires a prime field");
  std::size_t n = a.dim();
  std::uint64_t p = a.field().characteristic();
  max_dim = std::min(max_dim, n);
  ZpTensor t = ZpTensor::of(a);
  bool symmetric = a.mul_map().symmetric();

  std::vector<std::vector<Vec>> out;
  out.push_back({}); // the zero ideal
  std::uint64_t seen = 1;

  std::vector<std::uint64_t> rows, prod(n), red(n);
  auto reduce_ok = [&](const std::vector<std::size_t>& pivs, std::size_t d) {
    // candidate rows are in rows[]; check closure under ambient products
    std::vector<std::uint64_t> basis_row(n);
    for (std::size_t r = 0; r < d; ++r) {
      for (std::size_t i = 0; i < n; ++i)
        basis_row[i] = rows[r * n + i];
      for (std::size_t j = 0; j < n; ++j) {
        for (int side = 0; side < (symmetric ? 1 : 2); ++side) {
          for (std::size_t k = 0; k < n; ++k)
            red[k] = 0;
          for (std::size_t i = 0; i < n; ++i) {
            if (basis_row[i] == 0)
              continue;
            const std::uint64_t* row = side == 0 ? &t.c[(i * n + j) * n] : &t.c[(j * n + i) * n];
            for (std::size_t k = 0; k < n; ++k)
              if (row[k])
                red[k] = (red[k] + basis_row[i] * row[k]) % p;
          }
          for (std::size_t r2 = 0; r2 < d; ++r2) {
            std::uint64_t factor = red[pivs[r2]];
            if (factor == 0)
              continue;
            for (std::size_t k = 0; k < n; ++k)
              if (rows[r2 * n + k])
                red[k] = (red[k] + (p - 1) * ((factor * rows[r2 * n + k]) % p)) % p;
          }
          for (std::size_t k = 0; k < n; ++k)
            if (red[k] != 0)
              return false;
        }
      }
    }
    return true;
  };

  for (std::size_t d = 1; d <= max_dim; ++d) {
    // ascending pivot-column subsets of size d
    std::vector<std::size_t> pivs(d);
    for (std::size_t i = 0; i < d; ++i)
      pivs[i] = i;
    while (true) {
      std::vector<bool> is_piv(n, false);
      for (std::size_t c : pivs)
        is_piv[c] = true;
      std::vector<std::pair<std::size_t, std::size_t>> free_pos;
      for (std::size_t r = 0; r < d; ++r)
        for (std::size_t c = pivs[r] + 1; c < n; ++c)
          if (!is_piv[c])
            free_pos.emplace_back(r, c);

      std::uint64_t count = pow_sat(p, free_pos.size());
      if (seen > bound - std::min<std::uint64_t>(count, bound))
        throw BoundExceeded("ideal enumeration", seen + count, bound);
      seen += count;

      std::vector<std::uint64_t> freev(free_pos.size(), 0);
      while (true) {
        rows.assign(d * n, 0);
        for (std::size_t r = 0; r < d; ++r)
          rows[r * n + pivs[r]] = 1;
        for (std::size_t q = 0; q < free_pos.size(); ++q)
          rows[free_pos[q].first * n + free_pos[q].second] = freev[q];
        if (reduce_ok(pivs, d)) {
          std::vector<Vec> basis;
          for (std::size_t r = 0; r < d; ++r) {
            Vec v = zero_vec(a.field(), n);
            for (std::size_t i = 0; i < n; ++i)
              v[i] = Scalar::from_int(a.field(), static_cast<long long>(rows[r * n + i]));
            basis.push_back(std::move(v));
          }
          out.push_back(std::move(basis));
        }
        if (!detail::next_tuple(freev, p))
          break;
      }

      // next pivot combination
      std::size_t i = d;
      while (i > 0) {
        --i;
        if (pivs[i] + (d - i) < n) {
          ++pivs[i];
          for (std::size_t q = i + 1; q < d; ++q)
            pivs[q] = pivs[q - 1] + 1;
          break;
        }
        if (i == 0) {
          i = d + 1; // signal exhaustion
          break;
        }
      }
      if (i == d + 1 || d == 0)
        break;
    }
  }
  return out;
}

std::optional<Matrix> find_isomorphism(const Algebra& a, const Algebra& b, std::uint64_t bound) {
  if (a.dim() != b.dim() || a.field() != b.field())
    return std::nullopt;
  if (!a.field().is_prime_field())
    throw std::invalid_argument("isomorphism search requires a prime field");
  std::size_t n = a.dim();
  std::uint64_t p = a.field().characteristic();
  if (pow_sat(p, n * n) > bound)
    throw BoundExceeded("isomorphism search", pow_sat(p, n * n), bound);

  ZpTensor t1 = ZpTensor::of(a), t2 = ZpTensor::of(b);
  std::vector<std::uint64_t> digits(n * n, 0);
  do {
    if (zp_invertible(digits, n, p) && zp_is_morphism(digits, t1, t2))
      return zp_flat_to_matrix(a.field(), digits, n, n);
  } while (detail::next_tuple(digits, p));
  return std::nullopt;
}

} // namespace jordan
