#include "jordan/unified.hpp"

#include "jordan/check.hpp"

#include <stdexcept>
#include <utility>

namespace jordan {

namespace {

bool shape_is(const BilinearMap& m, std::size_t d1, std::size_t d2, std::size_t dout) {
  return m.dim1() == d1 && m.dim2() == d2 && m.dim_out() == dout;
}

} // namespace

ExtendingDatum::ExtendingDatum(Algebra a_, std::size_t dim_v_, BilinearMap act_r_,
                               BilinearMap act_l_, BilinearMap cocycle_, BilinearMap mul_v_)
    : a(std::move(a_)), dim_v(dim_v_), act_r(std::move(act_r_)), act_l(std::move(act_l_)),
      cocycle(std::move(cocycle_)), mul_v(std::move(mul_v_)) {
  std::size_t da = a.dim();
  if (!shape_is(act_r, dim_v, da, dim_v) || !shape_is(act_l, dim_v, da, da) ||
      !shape_is(cocycle, dim_v, dim_v, da) || !shape_is(mul_v, dim_v, dim_v, dim_v))
    throw std::invalid_argument("extending datum maps have inconsistent dimensions");
  FieldSpec f = a.field();
  if (!(act_r.field() == f) || !(act_l.field() == f) || !(cocycle.field() == f) ||
      !(mul_v.field() == f))
    throw std::invalid_argument("extending datum maps over different fields");
}

bool ExtendingDatum::operator==(const ExtendingDatum& o) const {
  return a == o.a && dim_v == o.dim_v && act_r == o.act_r && act_l == o.act_l &&
         cocycle == o.cocycle && mul_v == o.mul_v;
}

int ExtendingDatum::lex_cmp(const ExtendingDatum& o) const {
  if (!(a == o.a) || dim_v != o.dim_v)
    throw std::invalid_argument("lex_cmp requires data over the same algebra and dimension");
  if (int c = act_r.lex_cmp(o.act_r))
    return c;
  if (int c = act_l.lex_cmp(o.act_l))
    return c;
  if (int c = cocycle.lex_cmp(o.cocycle))
    return c;
  return mul_v.lex_cmp(o.mul_v);
}

ExtendingDatum trivial_datum(const Algebra& a, std::size_t dim_v) {
  FieldSpec f = a.field();
  std::size_t da = a.dim();
  return ExtendingDatum(a, dim_v, BilinearMap(f, dim_v, da, dim_v),
                        BilinearMap(f, dim_v, da, da), BilinearMap(f, dim_v, dim_v, da),
                        BilinearMap(f, dim_v, dim_v, dim_v));
}

UnifiedProduct build_unified_unchecked(const ExtendingDatum& d) {
  FieldSpec f = d.field();
  std::size_t da = d.a.dim();
  std::size_t dv = d.dim_v;
  std::size_t n = da + dv;
  BilinearMap mul(f, n, n, n);
  const BilinearMap& ma = d.a.mul_map();
  for (std::size_t i = 0; i < da; ++i)
    for (std::size_t j = 0; j < da; ++j)
      for (std::size_t k = 0; k < da; ++k)
        mul.set(i, j, k, ma.at(i, j, k));
  for (std::size_t i = 0; i < dv; ++i)
    for (std::size_t j = 0; j < da; ++j) {
      for (std::size_t k = 0; k < da; ++k) {
        const Scalar& s = d.act_l.at(i, j, k);
        mul.set(da + i, j, k, s);
        mul.set(j, da + i, k, s);
      }
      for (std::size_t k = 0; k < dv; ++k) {
        const Scalar& s = d.act_r.at(i, j, k);
        mul.set(da + i, j, da + k, s);
        mul.set(j, da + i, da + k, s);
      }
    }
  for (std::size_t i = 0; i < dv; ++i)
    for (std::size_t j = 0; j < dv; ++j) {
      for (std::size_t k = 0; k < da; ++k)
        mul.set(da + i, da + j, k, d.cocycle.at(i, j, k));
      for (std::size_t k = 0; k < dv; ++k)
        mul.set(da + i, da + j, da + k, d.mul_v.at(i, j, k));
    }
  Matrix emb(f, n, da);
  for (std::size_t i = 0; i < da; ++i)
    emb.at(i, i) = Scalar::one(f);
  return UnifiedProduct{Algebra(f, n, std::move(mul)), d, std::move(emb)};
}

UnifiedProduct build_unified(const ExtendingDatum& d) {
  std::optional<CheckMode::Kind> stamp = d.validated();
  if (!stamp)
    throw std::invalid_argument(
        "build_unified requires a validated datum; run validate_extending_structure first");
  UnifiedProduct up = build_unified_unchecked(d);
  up.product.note_jordan(*stamp);
  return up;
}

ValidationReport validate_extending_structure(const ExtendingDatum& d, const CheckMode& mode) {
  if (d.a.level() != VerifyLevel::JordanVerified)
    throw std::invalid_argument("the base algebra must be Jordan-verified before validating "
                                "an extending structure");
  FieldSpec f = d.field();
  std::size_t da = d.a.dim();
  std::size_t dv = d.dim_v;
  ValidationReport rep;

  AxiomCheck e1;
  e1.axiom = "E1";
  e1.mode = mode;
  e1.slot_names = {"x", "y"};
  auto fd = d.cocycle.symmetry_defect();
  auto md = d.mul_v.symmetry_defect();
  if (fd || md) {
    auto [i, j] = fd ? *fd : *md;
    e1.passed = false;
    e1.witness = {unit_vec(f, dv, i), unit_vec(f, dv, j)};
    e1.note = fd ? "f is not symmetric" : "the V multiplication is not symmetric";
  }
  rep.checks.push_back(e1);

  std::vector<Slot> a_nonlinear_x_linear{{"a", da, false}, {"x", dv, true}};
  std::vector<Slot> x_nonlinear_a_linear{{"x", dv, false}, {"a", da, true}};
  std::vector<Slot> x_nonlinear_y_linear{{"x", dv, false}, {"y", dv, true}};

  auto views = [&]<class R>(const typename RingOps<R>::Ctx& ctx) {
    struct V {
      BilinearMap::View<R> mul_a, ar, al, fc, mv;
    };
    return V{d.a.mul_map().template view<R>(ctx), d.act_r.template view<R>(ctx),
             d.act_l.template view<R>(ctx), d.cocycle.template view<R>(ctx),
             d.mul_v.template view<R>(ctx)};
  };

  auto e2 = [&]<class R>(const typename RingOps<R>::Ctx& ctx) {
    auto v = views.template operator()<R>(ctx);
    return [v](const std::vector<std::vector<R>>& args) {
      const auto& a = args[0];
      const auto& x = args[1];
      auto a2 = v.mul_a.eval(a, a);
      return vec_sub(v.ar.eval(v.ar.eval(x, a2), a), v.ar.eval(v.ar.eval(x, a), a2));
    };
  };
  rep.checks.push_back(check_identity("E2", f, a_nonlinear_x_linear, mode, e2));

  auto e3 = [&]<class R>(const typename RingOps<R>::Ctx& ctx) {
    auto v = views.template operator()<R>(ctx);
    return [v](const std::vector<std::vector<R>>& args) {
      const auto& a = args[0];
      const auto& x = args[1];
      auto a2 = v.mul_a.eval(a, a);
      auto lhs = vec_add(v.mul_a.eval(a, v.al.eval(x, a2)), v.al.eval(v.ar.eval(x, a2), a));
      auto rhs = vec_add(v.mul_a.eval(a2, v.al.eval(x, a)), v.al.eval(v.ar.eval(x, a), a2));
      return vec_sub(lhs, rhs);
    };
  };
  rep.checks.push_back(check_identity("E3", f, a_nonlinear_x_linear, mode, e3));

  auto e4 = [&]<class R>(const typename RingOps<R>::Ctx& ctx) {
    auto v = views.template operator()<R>(ctx);
    return [v](const std::vector<std::vector<R>>& args) {
      const auto& x = args[0];
      const auto& a = args[1];
      auto fxx = v.fc.eval(x, x);
      auto x2 = v.mv.eval(x, x);
      auto xa = v.ar.eval(x, a);
      auto lhs = vec_add(
          vec_add(v.al.eval(x, v.mul_a.eval(fxx, a)), v.al.eval(x, v.al.eval(x2, a))),
          v.fc.eval(v.ar.eval(x2, a), x));
      auto rhs =
          vec_add(vec_add(v.mul_a.eval(fxx, v.al.eval(x, a)), v.al.eval(x2, v.al.eval(x, a))),
                  vec_add(v.al.eval(xa, fxx), v.fc.eval(x2, xa)));
      return vec_sub(lhs, rhs);
    };
  };
  rep.checks.push_back(check_identity("E4", f, x_nonlinear_a_linear, mode, e4));

  auto e5 = [&]<class R>(const typename RingOps<R>::Ctx& ctx) {
    auto v = views.template operator()<R>(ctx);
    return [v](const std::vector<std::vector<R>>& args) {
      const auto& x = args[0];
      const auto& a = args[1];
      auto fxx = v.fc.eval(x, x);
      auto x2 = v.mv.eval(x, x);
      auto xa = v.ar.eval(x, a);
      auto lhs = vec_add(
          vec_add(v.ar.eval(x, v.mul_a.eval(fxx, a)), v.ar.eval(x, v.al.eval(x2, a))),
          v.mv.eval(v.ar.eval(x2, a), x));
      auto rhs = vec_add(vec_add(v.ar.eval(x2, v.al.eval(x, a)), v.ar.eval(xa, fxx)),
                         v.mv.eval(x2, xa));
      return vec_sub(lhs, rhs);
    };
  };
  rep.checks.push_back(check_identity("E5", f, x_nonlinear_a_linear, mode, e5));

  auto e6 = [&]<class R>(const typename RingOps<R>::Ctx& ctx) {
    auto v = views.template operator()<R>(ctx);
    return [v](const std::vector<std::vector<R>>& args) {
      const auto& x = args[0];
      const auto& y = args[1];
      auto fxx = v.fc.eval(x, x);
      auto x2 = v.mv.eval(x, x);
      auto fxy = v.fc.eval(x, y);
      auto xy = v.mv.eval(x, y);
      auto lhs = vec_add(
          vec_add(v.al.eval(x, v.al.eval(y, fxx)), v.al.eval(x, v.fc.eval(x2, y))),
          vec_add(v.fc.eval(v.ar.eval(y, fxx), x), v.fc.eval(v.mv.eval(x2, y), x)));
      auto rhs = vec_add(vec_add(v.mul_a.eval(fxx, fxy), v.al.eval(x2, fxy)),
                         vec_add(v.al.eval(xy, fxx), v.fc.eval(x2, xy)));
      return vec_sub(lhs, rhs);
    };
  };
  rep.checks.push_back(check_identity("E6", f, x_nonlinear_y_linear, mode, e6));

  auto e7 = [&]<class R>(const typename RingOps<R>::Ctx& ctx) {
    auto v = views.template operator()<R>(ctx);
    return [v](const std::vector<std::vector<R>>& args) {
      const auto& x = args[0];
      const auto& y = args[1];
      auto fxx = v.fc.eval(x, x);
      auto x2 = v.mv.eval(x, x);
      auto fxy = v.fc.eval(x, y);
      auto xy = v.mv.eval(x, y);
      auto lhs = vec_add(
          vec_add(v.ar.eval(x, v.al.eval(y, fxx)), v.ar.eval(x, v.fc.eval(x2, y))),
          vec_add(v.mv.eval(v.ar.eval(y, fxx), x), v.mv.eval(v.mv.eval(x2, y), x)));
      auto rhs =
          vec_add(vec_add(v.ar.eval(x2, fxy), v.ar.eval(xy, fxx)), v.mv.eval(x2, xy));
      return vec_sub(lhs, rhs);
    };
  };
  rep.checks.push_back(check_identity("E7", f, x_nonlinear_y_linear, mode, e7));

  UnifiedProduct up = build_unified_unchecked(d);
  std::vector<Vec> a_units, v_units;
  for (std::size_t i = 0; i < da; ++i)
    a_units.push_back(unit_vec(f, da + dv, i));
  for (std::size_t i = 0; i < dv; ++i)
    v_units.push_back(unit_vec(f, da + dv, da + i));
  ValidationReport missing = missing_relation_check(up.product, a_units, v_units, mode);
  for (AxiomCheck& c : missing.checks)
    c.axiom = "E8:" + c.axiom;
  rep.append(missing);

  if (rep.passed())
    d.note_validated(mode.kind);
  else
    d.clear_validated();
  return rep;
}

Extraction extract_extending_structure(const Algebra& e, const std::vector<Vec>& a_basis,
                                       const Matrix& p,
                                       const std::vector<Vec>* v_basis_override) {
  FieldSpec f = e.field();
  std::size_t n = e.dim();
  std::size_t da = a_basis.size();
  if (!is_subalgebra(e, a_basis))
    throw std::invalid_argument("a_basis does not span a subalgebra");
  if (p.rows() != da || p.cols() != n)
    throw std::invalid_argument("retraction must be " + std::to_string(da) + " x " +
                                std::to_string(n));
  Matrix incl = Matrix::from_columns(f, n, a_basis);
  if (p.mul(incl) != Matrix::identity(f, da))
    throw std::invalid_argument("p is not a retraction onto span(a_basis)");

  std::vector<Vec> v_basis = v_basis_override ? *v_basis_override : kernel(p);
  std::size_t dv = n - da;
  if (v_basis.size() != dv)
    throw std::invalid_argument("complement basis must have " + std::to_string(dv) +
                                " vectors");
  Matrix vmat = Matrix::from_columns(f, n, v_basis);
  if (vmat.rank() != dv)
    throw std::invalid_argument("complement basis is linearly dependent");
  for (const Vec& v : v_basis)
    if (!is_zero_vec(p.apply(v)))
      throw std::invalid_argument("complement basis must lie in the kernel of the retraction");

  Algebra a_sub = subalgebra_on_basis(e, a_basis);
  if (e.level() == VerifyLevel::JordanVerified)
    a_sub.note_jordan(*e.verified_mode());

  auto v_coords = [&](const Vec& w, const Vec& a_part) {
    std::optional<Vec> c = solve_linear(vmat, sub(w, incl.apply(a_part)));
    if (!c)
      throw std::invalid_argument("complement basis does not span the kernel of the retraction");
    return *c;
  };

  BilinearMap act_r(f, dv, da, dv), act_l(f, dv, da, da);
  BilinearMap cocycle(f, dv, dv, da), mul_v(f, dv, dv, dv);
  for (std::size_t i = 0; i < dv; ++i) {
    for (std::size_t j = 0; j < da; ++j) {
      Vec w = e.mul(v_basis[i], a_basis[j]);
      Vec ap = p.apply(w);
      Vec vp = v_coords(w, ap);
      for (std::size_t k = 0; k < da; ++k)
        act_l.set(i, j, k, ap[k]);
      for (std::size_t k = 0; k < dv; ++k)
        act_r.set(i, j, k, vp[k]);
    }
    for (std::size_t j = 0; j < dv; ++j) {
      Vec w = e.mul(v_basis[i], v_basis[j]);
      Vec ap = p.apply(w);
      Vec vp = v_coords(w, ap);
      for (std::size_t k = 0; k < da; ++k)
        cocycle.set(i, j, k, ap[k]);
      for (std::size_t k = 0; k < dv; ++k)
        mul_v.set(i, j, k, vp[k]);
    }
  }

  std::vector<Vec> phi_cols = a_basis;
  phi_cols.insert(phi_cols.end(), v_basis.begin(), v_basis.end());
  Matrix phi = Matrix::from_columns(f, n, phi_cols);
  ExtendingDatum datum(std::move(a_sub), dv, std::move(act_r), std::move(act_l),
                       std::move(cocycle), std::move(mul_v));
  return Extraction{std::move(datum), a_basis, std::move(v_basis), std::move(phi)};
}

UnifiedProduct spin_factor(const BilinearMap& form, const CheckMode& mode) {
  if (form.dim_out() != 1 || form.dim1() != form.dim2())
    throw std::invalid_argument("a spin form maps V x V to the base field");
  if (!form.symmetric())
    throw std::invalid_argument("a spin form must be symmetric");
  FieldSpec f = form.field();
  std::size_t dv = form.dim1();

  BilinearMap unit_mul(f, 1, 1, 1);
  unit_mul.set(0, 0, 0, Scalar::one(f));
  Algebra base(f, 1, std::move(unit_mul));
  check_jordan(base, CheckMode::formal());

  BilinearMap act_r(f, dv, 1, dv);
  for (std::size_t i = 0; i < dv; ++i)
    act_r.set(i, 0, i, Scalar::one(f));
  BilinearMap act_l(f, dv, 1, 1);
  BilinearMap mul_v(f, dv, dv, dv);
  ExtendingDatum d(std::move(base), dv, std::move(act_r), std::move(act_l), form,
                   std::move(mul_v));
  ValidationReport rep = validate_extending_structure(d, mode);
  if (!rep.passed())
    throw std::runtime_error("spin factor axioms failed unexpectedly:\n" + rep.to_text());
  return build_unified(d);
}

UnifiedProduct build_twisted_unchecked(const ExtendingDatum& d) {
  if (!d.act_l.is_zero())
    throw std::invalid_argument("a twisted product requires a trivial left action");
  return build_unified_unchecked(d);
}

UnifiedProduct build_twisted(const ExtendingDatum& d) {
  if (!d.act_l.is_zero())
    throw std::invalid_argument("a twisted product requires a trivial left action");
  return build_unified(d);
}

bool is_matched_pair(const Algebra& a, const Algebra& v, const BilinearMap& act_r,
                     const BilinearMap& act_l, const CheckMode& mode) {
  if (a.level() != VerifyLevel::JordanVerified || v.level() != VerifyLevel::JordanVerified)
    throw std::invalid_argument("matched pairs are defined for Jordan-verified algebras");
  FieldSpec f = a.field();
  ExtendingDatum d(a, v.dim(), act_r, act_l, BilinearMap(f, v.dim(), v.dim(), a.dim()),
                   v.mul_map());
  return validate_extending_structure(d, mode).passed();
}

} // namespace jordan
