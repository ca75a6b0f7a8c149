#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "jordan/classify.hpp"
#include "jordan/invariants.hpp"
#include "jordan/io.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace py = pybind11;
using namespace jordan;

namespace {

/// Scalars cross the boundary as exact strings on the way out ("3", "-1/2")
/// and as plain integers on the way in; matrices are nested lists.
using IntRows = std::vector<std::vector<long long>>;

FieldSpec field_of(long long p) { return p == 0 ? FieldSpec::rationals() : FieldSpec::prime(p); }

CheckMode make_mode(const std::string& mode, const FieldSpec& f, std::size_t enum_dim,
                    std::uint32_t seed, std::uint32_t samples, std::uint64_t bound) {
  if (mode == "formal")
    return CheckMode::formal();
  if (mode == "exhaustive")
    return CheckMode::exhaustive(bound);
  if (mode == "sampled")
    return CheckMode::sampled(seed, samples);
  if (mode != "auto")
    throw std::invalid_argument("mode must be auto, formal, exhaustive, or sampled");
  CheckMode m = default_mode(f, enum_dim, bound);
  if (m.kind == CheckMode::Kind::Sampled)
    return CheckMode::sampled(seed, samples);
  if (m.kind == CheckMode::Kind::Exhaustive)
    return CheckMode::exhaustive(bound);
  return m;
}

Matrix matrix_in(const FieldSpec& f, const IntRows& rows, std::size_t want_rows,
                 std::size_t want_cols) {
  if (rows.size() != want_rows)
    throw std::invalid_argument("expected " + std::to_string(want_rows) + " matrix rows");
  Matrix m(f, want_rows, want_cols);
  for (std::size_t i = 0; i < want_rows; ++i) {
    if (rows[i].size() != want_cols)
      throw std::invalid_argument("expected " + std::to_string(want_cols) + " matrix columns");
    for (std::size_t j = 0; j < want_cols; ++j)
      m.at(i, j) = Scalar::from_int(f, rows[i][j]);
  }
  return m;
}

std::vector<Vec> basis_in(const FieldSpec& f, const IntRows& rows, std::size_t n) {
  std::vector<Vec> out;
  for (const std::vector<long long>& row : rows) {
    if (row.size() != n)
      throw std::invalid_argument("expected basis vectors of length " + std::to_string(n));
    Vec v;
    for (long long c : row)
      v.push_back(Scalar::from_int(f, c));
    out.push_back(std::move(v));
  }
  return out;
}

py::list vec_out(const Vec& v) {
  py::list l;
  for (const Scalar& c : v)
    l.append(c.to_string());
  return l;
}

py::list matrix_out(const Matrix& m) {
  py::list rows;
  for (std::size_t i = 0; i < m.rows(); ++i)
    rows.append(vec_out(m.row(i)));
  return rows;
}

py::list report_out(const ValidationReport& rep) {
  py::list checks;
  for (const AxiomCheck& c : rep.checks) {
    py::dict d;
    d["axiom"] = c.axiom;
    d["passed"] = c.passed;
    d["mode"] = c.mode.to_string();
    if (!c.witness.empty()) {
      py::dict w;
      for (std::size_t i = 0; i < c.witness.size(); ++i) {
        std::string name = i < c.slot_names.size() ? c.slot_names[i] : "slot" + std::to_string(i);
        w[py::str(name)] = vec_out(c.witness[i]);
      }
      d["witness"] = w;
    }
    if (!c.note.empty())
      d["note"] = c.note;
    checks.append(d);
  }
  return checks;
}

AlgebraResolver dict_resolver(const py::dict& algebras) {
  std::map<std::string, std::string> texts;
  for (const auto& item : algebras)
    texts[py::cast<std::string>(item.first)] = py::cast<std::string>(item.second);
  return [texts](const std::string& ref) {
    auto it = texts.find(ref);
    if (it == texts.end())
      throw std::invalid_argument("unknown algebra reference '" + ref + "'");
    return parse_algebra(it->second);
  };
}

py::dict failed(const ValidationReport& checks, const std::string& what) {
  py::dict d;
  d["passed"] = false;
  d["error"] = what;
  d["checks"] = report_out(checks);
  return d;
}

py::dict py_check(const std::string& algebra, const std::string& mode, std::uint32_t seed,
                  std::uint32_t samples, std::uint64_t bound) {
  Algebra a = parse_algebra(algebra);
  CheckMode cm = make_mode(mode, a.field(), a.dim(), seed, samples, bound);
  ValidationReport rep = check_jordan(a, cm);
  py::dict d;
  d["field"] = a.field().to_string();
  d["dim"] = a.dim();
  d["mode"] = cm.to_string();
  d["passed"] = rep.passed();
  d["checks"] = report_out(rep);
  return d;
}

py::dict emit_product(const std::string& kind, const ValidationReport& checks,
                      const Algebra& result) {
  py::dict d;
  d["kind"] = kind;
  d["passed"] = true;
  d["checks"] = report_out(checks);
  d["dim"] = result.dim();
  d["algebra"] = serialize_algebra(result);
  return d;
}

py::dict py_product(const std::string& kind, const std::string& text, const py::dict& algebras,
                    const std::string& mode, std::uint32_t seed, std::uint32_t samples,
                    std::uint64_t bound) {
  AlgebraResolver resolve = dict_resolver(algebras);
  if (kind == "crossed") {
    CrossedSystem cs = parse_crossed(text, resolve);
    ValidationReport checks;
    checks.append(check_jordan(cs.a, make_mode(mode, cs.a.field(), cs.a.dim(), seed, samples, bound)));
    if (!checks.passed())
      return failed(checks, "the algebra A of the crossed system is not Jordan");
    checks.append(check_jordan(cs.v, make_mode(mode, cs.v.field(), cs.v.dim(), seed, samples, bound)));
    if (!checks.passed())
      return failed(checks, "the algebra V of the crossed system is not Jordan");
    CheckMode cm = make_mode(mode, cs.a.field(), cs.a.dim() + cs.v.dim(), seed, samples, bound);
    ValidationReport rep = validate_crossed_system(cs, cm);
    checks.append(rep);
    if (!rep.passed())
      return failed(checks, "the crossed system fails validation");
    return emit_product(kind, checks, build_crossed(cs));
  }
  if (kind != "unified" && kind != "twisted")
    throw std::invalid_argument("kind must be unified, crossed, or twisted");
  ExtendingDatum d = parse_datum(text, resolve);
  if (kind == "twisted" && !d.act_l.is_zero())
    throw std::invalid_argument("a twisted product needs x |> a = 0; this datum has a nonzero actl");
  ValidationReport checks = check_jordan(d.a, make_mode(mode, d.a.field(), d.a.dim(), seed, samples, bound));
  if (!checks.passed())
    return failed(checks, "the base algebra of the datum is not Jordan");
  CheckMode cm = make_mode(mode, d.field(), d.a.dim() + d.dim_v, seed, samples, bound);
  ValidationReport rep = validate_extending_structure(d, cm);
  checks.append(rep);
  if (!rep.passed())
    return failed(checks, "the extending structure fails validation");
  UnifiedProduct up = kind == "twisted" ? build_twisted(d) : build_unified(d);
  return emit_product(kind, checks, up.product);
}

py::dict py_spin_factor(const IntRows& form, long long p, const std::string& mode,
                        std::uint32_t seed, std::uint32_t samples, std::uint64_t bound) {
  FieldSpec f = field_of(p);
  std::size_t dv = form.size();
  BilinearMap bf(f, dv, dv, 1);
  for (std::size_t i = 0; i < dv; ++i) {
    if (form[i].size() != dv)
      throw std::invalid_argument("the spin form must be square");
    for (std::size_t j = 0; j < dv; ++j)
      bf.set(i, j, 0, Scalar::from_int(f, form[i][j]));
  }
  CheckMode cm = make_mode(mode, f, 1 + dv, seed, samples, bound);
  UnifiedProduct sp = spin_factor(bf, cm);
  ValidationReport rep = check_jordan(sp.product, cm);
  return emit_product("spin", rep, sp.product);
}

py::dict py_extract(const std::string& algebra, const IntRows& basis, const IntRows& retraction,
                    const std::string& mode, std::uint32_t seed, std::uint32_t samples,
                    std::uint64_t bound) {
  Algebra e = parse_algebra(algebra);
  CheckMode emode = make_mode(mode, e.field(), e.dim(), seed, samples, bound);
  ValidationReport checks = check_jordan(e, emode);
  if (!checks.passed())
    return failed(checks, "the ambient algebra is not Jordan");
  std::vector<Vec> a_basis = basis_in(e.field(), basis, e.dim());
  Matrix p = matrix_in(e.field(), retraction, a_basis.size(), e.dim());
  Extraction ex = extract_extending_structure(e, a_basis, p);
  ValidationReport rep = validate_extending_structure(ex.datum, emode);
  checks.append(rep);
  if (!rep.passed())
    return failed(checks, "the extracted datum fails validation");
  py::dict d;
  d["passed"] = true;
  d["checks"] = report_out(checks);
  d["dim_a"] = ex.datum.a.dim();
  d["dim_v"] = ex.datum.dim_v;
  d["subalgebra"] = serialize_algebra(ex.datum.a);
  d["datum"] = serialize_datum(ex.datum, "<subalgebra>");
  d["phi"] = matrix_out(ex.phi);
  return d;
}

py::dict py_classify_flag(const std::string& algebra, std::uint64_t bound) {
  Algebra a = parse_algebra(algebra);
  ValidationReport rep = check_jordan(a, CheckMode::exhaustive(bound));
  if (!rep.passed())
    return failed(rep, "the base algebra is not Jordan");
  std::vector<OrbitClass<FlagDatum>> classes = classify_flag(a, bound);
  py::dict d;
  d["count"] = classes.size();
  py::list arr;
  for (const OrbitClass<FlagDatum>& c : classes) {
    py::dict e;
    e["orbit_size"] = c.orbit_size;
    e["d"] = matrix_out(c.rep.d);
    e["lambda"] = vec_out(c.rep.lambda);
    e["a0"] = vec_out(c.rep.a0);
    e["alpha0"] = c.rep.alpha0.to_string();
    arr.append(e);
  }
  d["classes"] = arr;
  return d;
}

py::dict py_h2(std::size_t n, std::uint64_t p, int eps, std::uint64_t bound) {
  Algebra a = Algebra::abelian(FieldSpec::prime(p), n);
  std::vector<OrbitClass<OneDimPair>> classes = h2_onedim(a, eps, bound);
  py::dict d;
  d["count"] = classes.size();
  py::list arr;
  for (const OrbitClass<OneDimPair>& c : classes) {
    py::dict e;
    e["orbit_size"] = c.orbit_size;
    e["d"] = matrix_out(c.rep.d);
    e["a0"] = vec_out(c.rep.a0);
    arr.append(e);
  }
  d["classes"] = arr;
  return d;
}

py::list py_solve_matrix_cubic(std::size_t n, std::uint64_t p, std::uint64_t bound) {
  py::list out;
  for (const Matrix& m : solve_matrix_cubic(n, FieldSpec::prime(p), bound))
    out.append(matrix_out(m));
  return out;
}

py::dict py_artin(const std::string& algebra, const std::vector<IntRows>& generators,
                  std::uint64_t order_bound, const std::string& mode, std::uint32_t seed,
                  std::uint32_t samples, std::uint64_t bound) {
  Algebra alg = parse_algebra(algebra);
  CheckMode cm = make_mode(mode, alg.field(), alg.dim(), seed, samples, bound);
  ValidationReport checks = check_jordan(alg, cm);
  if (!checks.passed())
    return failed(checks, "the algebra of the action is not Jordan");
  std::vector<Matrix> gens;
  for (const IntRows& g : generators)
    gens.push_back(matrix_in(alg.field(), g, alg.dim(), alg.dim()));
  GroupAction action = generate_group(alg, gens, order_bound, cm);
  ArtinDecomposition dec = artin_decomposition(action, cm);
  const ExtendingDatum& d = dec.extraction.datum;
  py::dict out;
  out["passed"] = true;
  out["checks"] = report_out(checks);
  out["order"] = action.elements.size();
  out["invariant_dim"] = d.a.dim();
  out["kernel_dim"] = d.dim_v;
  out["actl_zero"] = d.act_l.is_zero();
  out["invariants"] = serialize_algebra(d.a);
  out["datum"] = serialize_datum(d, "<invariants>");
  out["theta"] = matrix_out(dec.theta);
  if (action.generators.size() <= 1)
    out["cyclic_kernel"] = cyclic_kernel_check(action);
  return out;
}

py::dict tree_out(const DecompositionTree& t) {
  py::dict d;
  d["dim"] = t.algebra.dim();
  d["simple"] = t.simple();
  d["searched_up_to"] = t.searched_up_to;
  if (!t.simple()) {
    d["ideal_dim"] = t.ideal->size();
    d["sub"] = tree_out(*t.sub);
    d["quot"] = tree_out(*t.quot);
  }
  return d;
}

py::dict py_decompose(const std::string& algebra, std::size_t max_dim, std::uint64_t bound) {
  Algebra a = parse_algebra(algebra);
  ValidationReport rep = check_jordan(a, default_mode(a.field(), a.dim(), bound));
  if (!rep.passed())
    return failed(rep, "the algebra is not Jordan");
  DecompositionTree t = decompose_iterated(a, max_dim == 0 ? SIZE_MAX : max_dim, bound);
  py::dict d;
  d["leaves"] = t.leaf_count();
  d["tree"] = tree_out(t);
  d["outline"] = t.to_string();
  return d;
}

} // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact construction, validation, and classification of finite-dimensional Jordan algebras";
  m.attr("__version__") = "0.1.0";

  m.def("set_worker_count", &set_worker_count, py::arg("n"),
        "Cap the worker threads used by the classification scans.");
  m.def("worker_count", &worker_count);

  m.def("check", &py_check, py::arg("algebra"), py::arg("mode") = "auto", py::arg("seed") = 0,
        py::arg("samples") = 200, py::arg("bound") = 1'000'000,
        "Verify the Jordan axioms of an algebra given in the text format.");

  m.def("product", &py_product, py::arg("kind"), py::arg("text"),
        py::arg("algebras") = py::dict(), py::arg("mode") = "auto", py::arg("seed") = 0,
        py::arg("samples") = 200, py::arg("bound") = 1'000'000,
        "Validate a datum (kind unified/twisted) or crossed-system (kind crossed) text and "
        "build its product; algebras maps the file references inside the text to algebra "
        "texts.");

  m.def("spin_factor", &py_spin_factor, py::arg("form"), py::arg("p") = 0,
        py::arg("mode") = "auto", py::arg("seed") = 0, py::arg("samples") = 200,
        py::arg("bound") = 1'000'000,
        "Build the spin factor of a symmetric form given as nested integer lists; p = 0 means "
        "the rationals.");

  m.def("extract", &py_extract, py::arg("algebra"), py::arg("basis"), py::arg("retraction"),
        py::arg("mode") = "auto", py::arg("seed") = 0, py::arg("samples") = 200,
        py::arg("bound") = 1'000'000,
        "Extract the extending structure of the subalgebra spanned by basis along the given "
        "retraction matrix.");

  m.def("classify_flag", &py_classify_flag, py::arg("algebra"), py::arg("bound") = 1'000'000,
        "All valid flag data of the algebra up to equivalence (prime fields).");

  m.def("h2", &py_h2, py::arg("n"), py::arg("p"), py::arg("eps"), py::arg("bound") = 1'000'000,
        "Cohomology classes (D, a0) of the abelian algebra k^n through the line x.x = eps x.");

  m.def("solve_matrix_cubic", &py_solve_matrix_cubic, py::arg("n"), py::arg("p"),
        py::arg("bound") = 1'000'000, "All n x n matrices over GF(p) with 2D^3 - 3D^2 + D = 0.");

  m.def("artin", &py_artin, py::arg("algebra"), py::arg("generators"),
        py::arg("order_bound") = 64, py::arg("mode") = "auto", py::arg("seed") = 0,
        py::arg("samples") = 200, py::arg("bound") = 1'000'000,
        "Generate the automorphism group of the given integer generator matrices and write the "
        "algebra as a twisted product over its invariants.");

  m.def("decompose", &py_decompose, py::arg("algebra"), py::arg("max_dim") = 0,
        py::arg("bound") = 1'000'000,
        "Iterated crossed-product decomposition into simple factors (max_dim 0: no cap).");
}
