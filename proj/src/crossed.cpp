#include "jordan/crossed.hpp"

#include "jordan/check.hpp"

#include <sstream>
#include <stdexcept>
#include <utility>

namespace jordan {

CrossedSystem::CrossedSystem(Algebra a_, Algebra v_, BilinearMap act_, BilinearMap cocycle_)
    : a(std::move(a_)), v(std::move(v_)), act(std::move(act_)), cocycle(std::move(cocycle_)) {
  if (!(a.field() == v.field()))
    throw std::invalid_argument("crossed system algebras over different fields");
  std::size_t da = a.dim();
  std::size_t dv = v.dim();
  if (act.dim1() != dv || act.dim2() != da || act.dim_out() != da)
    throw std::invalid_argument("crossed system action has inconsistent dimensions");
  if (cocycle.dim1() != dv || cocycle.dim2() != dv || cocycle.dim_out() != da)
    throw std::invalid_argument("crossed system cocycle has inconsistent dimensions");
  if (!(act.field() == a.field()) || !(cocycle.field() == a.field()))
    throw std::invalid_argument("crossed system maps over different fields");
}

ExtendingDatum CrossedSystem::to_datum() const {
  FieldSpec f = field();
  ExtendingDatum d(a, v.dim(), BilinearMap(f, v.dim(), a.dim(), v.dim()), act, cocycle,
                   v.mul_map());
  if (validated_)
    d.note_validated(*validated_);
  return d;
}

bool CrossedSystem::operator==(const CrossedSystem& o) const {
  return a == o.a && v == o.v && act == o.act && cocycle == o.cocycle;
}

int CrossedSystem::lex_cmp(const CrossedSystem& o) const {
  if (!(a == o.a) || !(v == o.v))
    throw std::invalid_argument("lex_cmp requires systems over the same pair of algebras");
  if (int c = act.lex_cmp(o.act))
    return c;
  return cocycle.lex_cmp(o.cocycle);
}

CrossedSystem trivial_crossed_system(const Algebra& a, const Algebra& v) {
  FieldSpec f = a.field();
  return CrossedSystem(a, v, BilinearMap(f, v.dim(), a.dim(), a.dim()),
                       BilinearMap(f, v.dim(), v.dim(), a.dim()));
}

ValidationReport validate_crossed_system(const CrossedSystem& cs, const CheckMode& mode) {
  if (cs.a.level() != VerifyLevel::JordanVerified || cs.v.level() != VerifyLevel::JordanVerified)
    throw std::invalid_argument("both algebras must be Jordan-verified before validating "
                                "a crossed system");
  FieldSpec f = cs.field();
  std::size_t da = cs.a.dim();
  std::size_t dv = cs.v.dim();
  ValidationReport rep;

  AxiomCheck cp1;
  cp1.axiom = "CP1";
  cp1.mode = mode;
  cp1.slot_names = {"x", "y"};
  if (auto defect = cs.cocycle.symmetry_defect()) {
    cp1.passed = false;
    cp1.witness = {unit_vec(f, dv, defect->first), unit_vec(f, dv, defect->second)};
    cp1.note = "f is not symmetric";
  }
  rep.checks.push_back(cp1);

  auto views = [&]<class R>(const typename RingOps<R>::Ctx& ctx) {
    struct V {
      BilinearMap::View<R> mul_a, mul_v, al, fc;
    };
    return V{cs.a.mul_map().template view<R>(ctx), cs.v.mul_map().template view<R>(ctx),
             cs.act.template view<R>(ctx), cs.cocycle.template view<R>(ctx)};
  };

  auto cp2 = [&]<class R>(const typename RingOps<R>::Ctx& ctx) {
    auto v = views.template operator()<R>(ctx);
    return [v](const std::vector<std::vector<R>>& args) {
      const auto& a = args[0];
      const auto& x = args[1];
      auto a2 = v.mul_a.eval(a, a);
      return vec_sub(v.mul_a.eval(a, v.al.eval(x, a2)), v.mul_a.eval(a2, v.al.eval(x, a)));
    };
  };
  rep.checks.push_back(
      check_identity("CP2", f, {{"a", da, false}, {"x", dv, true}}, mode, cp2));

  auto cp3 = [&]<class R>(const typename RingOps<R>::Ctx& ctx) {
    auto v = views.template operator()<R>(ctx);
    return [v](const std::vector<std::vector<R>>& args) {
      const auto& x = args[0];
      const auto& a = args[1];
      auto fxx = v.fc.eval(x, x);
      auto x2 = v.mul_v.eval(x, x);
      auto xa = v.al.eval(x, a);
      auto lhs = vec_add(v.al.eval(x, v.mul_a.eval(fxx, a)), v.al.eval(x, v.al.eval(x2, a)));
      auto rhs = vec_add(v.mul_a.eval(fxx, xa), v.al.eval(x2, xa));
      return vec_sub(lhs, rhs);
    };
  };
  rep.checks.push_back(
      check_identity("CP3", f, {{"x", dv, false}, {"a", da, true}}, mode, cp3));

  auto cp4 = [&]<class R>(const typename RingOps<R>::Ctx& ctx) {
    auto v = views.template operator()<R>(ctx);
    return [v](const std::vector<std::vector<R>>& args) {
      const auto& x = args[0];
      const auto& y = args[1];
      auto fxx = v.fc.eval(x, x);
      auto x2 = v.mul_v.eval(x, x);
      auto fxy = v.fc.eval(x, y);
      auto xy = v.mul_v.eval(x, y);
      auto lhs = vec_add(
          vec_add(v.al.eval(x, v.al.eval(y, fxx)), v.al.eval(x, v.fc.eval(x2, y))),
          v.fc.eval(v.mul_v.eval(x2, y), x));
      auto rhs = vec_add(vec_add(v.mul_a.eval(fxx, fxy), v.al.eval(x2, fxy)),
                         vec_add(v.al.eval(xy, fxx), v.fc.eval(x2, xy)));
      return vec_sub(lhs, rhs);
    };
  };
  rep.checks.push_back(
      check_identity("CP4", f, {{"x", dv, false}, {"y", dv, true}}, mode, cp4));

  Algebra product = build_crossed_unchecked(cs);
  std::vector<Vec> a_units, v_units;
  for (std::size_t i = 0; i < da; ++i)
    a_units.push_back(unit_vec(f, da + dv, i));
  for (std::size_t i = 0; i < dv; ++i)
    v_units.push_back(unit_vec(f, da + dv, da + i));
  ValidationReport missing = missing_relation_check(product, a_units, v_units, mode);
  for (AxiomCheck& c : missing.checks)
    c.axiom = "CP5:" + c.axiom;
  rep.append(missing);

  if (rep.passed())
    cs.note_validated(mode.kind);
  else
    cs.clear_validated();
  return rep;
}

Algebra build_crossed_unchecked(const CrossedSystem& cs) {
  ExtendingDatum d = cs.to_datum();
  return build_unified_unchecked(d).product;
}

Algebra build_crossed(const CrossedSystem& cs) {
  std::optional<CheckMode::Kind> stamp = cs.validated();
  if (!stamp)
    throw std::invalid_argument(
        "build_crossed requires a validated system; run validate_crossed_system first");
  Algebra product = build_crossed_unchecked(cs);
  product.note_jordan(*stamp);
  return product;
}

ValidationReport validate_extension(const Extension& ext, const CheckMode& mode) {
  FieldSpec f = ext.e.field();
  ValidationReport rep;

  auto morphism = [&](const char* axiom, const Matrix& phi, const Algebra& from,
                      const Algebra& to) {
    ValidationReport detail;
    AxiomCheck c;
    c.axiom = axiom;
    c.mode = mode;
    c.passed = check_algebra_morphism(phi, from, to, mode, &detail);
    if (!c.passed && !detail.checks.empty()) {
      const AxiomCheck* bad = nullptr;
      for (const AxiomCheck& dc : detail.checks)
        if (!dc.passed) {
          bad = &dc;
          break;
        }
      if (bad) {
        c.witness = bad->witness;
        c.note = bad->note;
      }
    }
    rep.checks.push_back(std::move(c));
  };
  morphism("inclusion-morphism", ext.incl, ext.a, ext.e);
  morphism("projection-morphism", ext.proj, ext.e, ext.v);

  AxiomCheck inj;
  inj.axiom = "inclusion-injective";
  inj.mode = mode;
  inj.passed = ext.incl.rank() == ext.a.dim();
  rep.checks.push_back(inj);

  AxiomCheck surj;
  surj.axiom = "projection-surjective";
  surj.mode = mode;
  surj.passed = ext.proj.rank() == ext.v.dim();
  rep.checks.push_back(surj);

  AxiomCheck exact;
  exact.axiom = "exactness";
  exact.mode = mode;
  std::vector<Vec> image_cols;
  for (std::size_t j = 0; j < ext.incl.cols(); ++j)
    image_cols.push_back(ext.incl.col(j));
  exact.passed = echelon_basis(f, ext.e.dim(), image_cols) == kernel(ext.proj);
  if (!exact.passed)
    exact.note = "the image of the inclusion differs from the kernel of the projection";
  rep.checks.push_back(exact);

  return rep;
}

Extension canonical_extension(const CrossedSystem& cs) {
  FieldSpec f = cs.field();
  std::size_t da = cs.a.dim();
  std::size_t dv = cs.v.dim();
  Algebra e = cs.validated() ? build_crossed(cs) : build_crossed_unchecked(cs);
  Matrix incl(f, da + dv, da);
  for (std::size_t i = 0; i < da; ++i)
    incl.at(i, i) = Scalar::one(f);
  Matrix proj(f, dv, da + dv);
  for (std::size_t i = 0; i < dv; ++i)
    proj.at(i, da + i) = Scalar::one(f);
  return Extension{std::move(e), cs.a, cs.v, std::move(incl), std::move(proj)};
}

Matrix default_section(const Extension& ext) {
  FieldSpec f = ext.e.field();
  std::size_t dv = ext.v.dim();
  std::vector<Vec> cols;
  for (std::size_t x = 0; x < dv; ++x) {
    std::optional<Vec> s = solve_linear(ext.proj, unit_vec(f, dv, x));
    if (!s)
      throw std::invalid_argument("the projection is not surjective");
    cols.push_back(std::move(*s));
  }
  return Matrix::from_columns(f, ext.e.dim(), cols);
}

CrossedSystem extension_to_crossed(const Extension& ext, const Matrix& s,
                                   const CheckMode& mode) {
  ValidationReport ext_rep = validate_extension(ext, mode);
  if (!ext_rep.passed())
    throw std::invalid_argument("not a valid extension:\n" + ext_rep.to_text());
  FieldSpec f = ext.e.field();
  std::size_t da = ext.a.dim();
  std::size_t dv = ext.v.dim();
  if (s.rows() != ext.e.dim() || s.cols() != dv)
    throw std::invalid_argument("section must be " + std::to_string(ext.e.dim()) + " x " +
                                std::to_string(dv));
  if (ext.proj.mul(s) != Matrix::identity(f, dv))
    throw std::invalid_argument("s is not a section of the projection");

  auto a_coords = [&](const Vec& w) {
    std::optional<Vec> c = solve_linear(ext.incl, w);
    if (!c)
      throw std::invalid_argument("product does not land in the image of the inclusion; "
                                  "the inclusion image is not an ideal");
    return *c;
  };

  BilinearMap act(f, dv, da, da), cocycle(f, dv, dv, da);
  for (std::size_t i = 0; i < dv; ++i) {
    Vec sx = s.col(i);
    for (std::size_t j = 0; j < da; ++j) {
      Vec w = ext.e.mul(sx, ext.incl.col(j));
      Vec c = a_coords(w);
      for (std::size_t k = 0; k < da; ++k)
        act.set(i, j, k, c[k]);
    }
    for (std::size_t j = 0; j < dv; ++j) {
      Vec xy = ext.v.mul(unit_vec(f, dv, i), unit_vec(f, dv, j));
      Vec w = sub(ext.e.mul(sx, s.col(j)), s.apply(xy));
      Vec c = a_coords(w);
      for (std::size_t k = 0; k < da; ++k)
        cocycle.set(i, j, k, c[k]);
    }
  }

  CrossedSystem cs(ext.a, ext.v, std::move(act), std::move(cocycle));
  ValidationReport rep = validate_crossed_system(cs, mode);
  if (!rep.passed())
    throw std::runtime_error("extracted crossed system failed validation:\n" + rep.to_text());
  return cs;
}

std::size_t DecompositionTree::leaf_count() const {
  if (simple())
    return 1;
  return sub->leaf_count() + quot->leaf_count();
}

namespace {

void tree_outline(const DecompositionTree& t, std::size_t depth, std::ostringstream& out) {
  out << std::string(2 * depth, ' ');
  out << "dim " << t.algebra.dim() << " over " << t.algebra.field().to_string();
  if (t.simple()) {
    out << ": no proper ideal up to dim " << t.searched_up_to << "\n";
    return;
  }
  out << ": crossed product of an ideal of dim " << t.ideal->size() << " and its quotient\n";
  tree_outline(*t.sub, depth + 1, out);
  tree_outline(*t.quot, depth + 1, out);
}

} // namespace

std::string DecompositionTree::to_string() const {
  std::ostringstream out;
  tree_outline(*this, 0, out);
  return out.str();
}

DecompositionTree decompose_iterated(const Algebra& a, std::size_t max_dim,
                                     std::uint64_t bound) {
  if (!a.field().is_prime_field())
    throw std::invalid_argument("iterated decomposition enumerates ideals over prime fields");
  if (a.level() != VerifyLevel::JordanVerified)
    throw std::invalid_argument("iterated decomposition requires a Jordan-verified algebra");

  DecompositionTree node{a, 0, std::nullopt, std::nullopt, nullptr, nullptr};
  std::size_t proper_cap = a.dim() == 0 ? 0 : a.dim() - 1;
  node.searched_up_to = std::min(max_dim, proper_cap);

  std::vector<std::vector<Vec>> ideals = find_ideals(a, node.searched_up_to, bound);
  const std::vector<Vec>* first = nullptr;
  for (const auto& basis : ideals)
    if (!basis.empty()) {
      first = &basis;
      break;
    }
  if (!first)
    return node;

  node.ideal = *first;
  Algebra sub_alg = subalgebra_on_basis(a, *first);
  auto [quot_alg, quot_proj] = quotient_algebra(a, *first);
  CheckMode check = CheckMode::exhaustive(bound);
  check_jordan(sub_alg, check);
  check_jordan(quot_alg, check);

  Matrix incl = Matrix::from_columns(a.field(), a.dim(), *first);
  Extension ext{a, sub_alg, quot_alg, std::move(incl), std::move(quot_proj)};
  Matrix section = default_section(ext);
  node.system = extension_to_crossed(ext, section, check);

  node.sub = std::make_unique<DecompositionTree>(
      decompose_iterated(node.system->a, max_dim, bound));
  node.quot = std::make_unique<DecompositionTree>(
      decompose_iterated(node.system->v, max_dim, bound));
  return node;
}

Algebra rebuild_decomposition(const DecompositionTree& t) {
  if (t.simple())
    return t.algebra;
  return build_crossed(*t.system);
}

} // namespace jordan
