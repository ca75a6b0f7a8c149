#include "jordan/classify.hpp"
#include "jordan/invariants.hpp"
#include "jordan/io.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <cstddef>
#include <cstdint>
#include <exception>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace {

using namespace jordan;
using nlohmann::json;

struct CommonOpts {
  bool emit_json = false;
  std::string mode = "auto";
  std::uint32_t seed = 0;
  std::uint32_t samples = 200;
  unsigned threads = 1;
  std::uint64_t bound = 1'000'000;
};

void add_common(CLI::App* cmd, CommonOpts& opt) {
  cmd->add_flag("--json", opt.emit_json, "emit a JSON report instead of text");
  cmd->add_option("--mode", opt.mode,
                  "verification mode; auto picks formal over Q, exhaustive over GF(p) when the "
                  "value space fits the bound, sampled otherwise")
      ->check(CLI::IsMember({"auto", "formal", "exhaustive", "sampled"}))
      ->capture_default_str();
  cmd->add_option("--seed", opt.seed, "seed for sampled verification")->capture_default_str();
  cmd->add_option("--samples", opt.samples, "sample count for sampled verification")
      ->capture_default_str();
  cmd->add_option("--threads", opt.threads, "worker threads for classification scans")
      ->capture_default_str();
  cmd->add_option("--bound", opt.bound, "enumeration budget for exhaustive work")
      ->envname("JORD_BOUND")
      ->capture_default_str();
}

CheckMode resolve_mode(const CommonOpts& opt, const FieldSpec& f, std::size_t enum_dim) {
  if (opt.mode == "formal")
    return CheckMode::formal();
  if (opt.mode == "exhaustive")
    return CheckMode::exhaustive(opt.bound);
  if (opt.mode == "sampled")
    return CheckMode::sampled(opt.seed, opt.samples);
  CheckMode m = default_mode(f, enum_dim, opt.bound);
  if (m.kind == CheckMode::Kind::Sampled)
    return CheckMode::sampled(opt.seed, opt.samples);
  if (m.kind == CheckMode::Kind::Exhaustive)
    return CheckMode::exhaustive(opt.bound);
  return m;
}

json vec_json(const Vec& v) {
  json a = json::array();
  for (const Scalar& c : v)
    a.push_back(c.to_string());
  return a;
}

json matrix_json(const Matrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i)
    rows.push_back(vec_json(m.row(i)));
  return rows;
}

json check_json(const AxiomCheck& c) {
  json j;
  j["axiom"] = c.axiom;
  j["passed"] = c.passed;
  j["mode"] = c.mode.to_string();
  if (c.mode.kind == CheckMode::Kind::Sampled)
    j["seed"] = c.mode.seed;
  if (!c.witness.empty()) {
    json w = json::object();
    for (std::size_t i = 0; i < c.witness.size(); ++i) {
      std::string name = i < c.slot_names.size() ? c.slot_names[i] : "slot" + std::to_string(i);
      w[name] = vec_json(c.witness[i]);
    }
    j["witness"] = w;
  }
  if (!c.note.empty())
    j["note"] = c.note;
  return j;
}

json report_json(const ValidationReport& rep) {
  json a = json::array();
  for (const AxiomCheck& c : rep.checks)
    a.push_back(check_json(c));
  return a;
}

void stamp_mode(json& j, const CheckMode& mode) {
  j["mode"] = mode.to_string();
  if (mode.kind == CheckMode::Kind::Sampled)
    j["seed"] = mode.seed;
}

void print_report_comments(std::ostream& os, const ValidationReport& rep) {
  for (const AxiomCheck& c : rep.checks)
    os << "# " << c.to_string() << "\n";
}

void print_block_comments(std::ostream& os, const std::string& text) {
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line))
    os << "#   " << line << "\n";
}

/// Exit 1: the input parsed but an axiom check failed. The report names the
/// failing axiom and, outside formal mode, a witness assignment.
int fail_validation(const CommonOpts& opt, const std::string& command, const ValidationReport& rep,
                    const std::string& what) {
  if (opt.emit_json) {
    json j;
    j["command"] = command;
    j["passed"] = false;
    j["error"] = what;
    j["checks"] = report_json(rep);
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << rep.to_text();
    std::cerr << "error: " << what << "\n";
  }
  return 1;
}

/// Exit 2: bad usage, unreadable or malformed input, or a blown enumeration
/// budget.
int fail_usage(const CommonOpts& opt, const std::string& msg) {
  if (opt.emit_json) {
    json j;
    j["error"] = msg;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cerr << "error: " << msg << "\n";
  }
  return 2;
}

int cmd_check(const CommonOpts& opt, const std::string& path) {
  Algebra a = load_algebra(path);
  CheckMode mode = resolve_mode(opt, a.field(), a.dim());
  ValidationReport rep = check_jordan(a, mode);
  if (opt.emit_json) {
    json j;
    j["command"] = "check";
    j["field"] = a.field().to_string();
    j["dim"] = a.dim();
    stamp_mode(j, mode);
    j["passed"] = rep.passed();
    j["checks"] = report_json(rep);
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "algebra over " << a.field().to_string() << ", dim " << a.dim() << "\n";
    std::cout << rep.to_text();
    std::cout << (rep.passed() ? "PASS" : "FAIL") << "\n";
  }
  return rep.passed() ? 0 : 1;
}

/// Shared tail of the product subcommands: the serialized algebra goes to
/// stdout, with the axiom verdicts as comment lines so the output is still a
/// loadable algebra file.
int emit_product(const CommonOpts& opt, const std::string& kind, const ValidationReport& checks,
                 const CheckMode& mode, const Algebra& result) {
  std::string text = serialize_algebra(result);
  if (opt.emit_json) {
    json j;
    j["command"] = "product";
    j["kind"] = kind;
    stamp_mode(j, mode);
    j["passed"] = true;
    j["checks"] = report_json(checks);
    j["dim"] = result.dim();
    j["algebra"] = text;
    std::cout << j.dump(2) << "\n";
  } else {
    print_report_comments(std::cout, checks);
    std::cout << "# " << kind << " product, " << result.status_string() << "\n";
    std::cout << text;
  }
  return 0;
}

int build_spin(const CommonOpts& opt, const ExtendingDatum& d) {
  FieldSpec f = d.field();
  if (d.a.dim() != 1)
    return fail_usage(opt, "a spin datum lives over the one-dimensional unital line");
  BilinearMap unit_line(f, 1, 1, 1);
  unit_line.set(0, 0, 0, Scalar::one(f));
  if (d.a.mul_map() != unit_line)
    return fail_usage(opt, "a spin datum needs e.e = e on its base line");
  if (!d.act_l.is_zero() || !d.mul_v.is_zero())
    return fail_usage(opt, "a spin datum carries only the identity actr and the form f");
  BilinearMap ident(f, d.dim_v, 1, d.dim_v);
  for (std::size_t i = 0; i < d.dim_v; ++i)
    ident.set(i, 0, i, Scalar::one(f));
  if (d.act_r != ident)
    return fail_usage(opt, "a spin datum needs x <| e = x (actr i 0 i 1 for every i)");
  if (!d.cocycle.symmetric())
    return fail_usage(opt, "the spin form must be symmetric");
  CheckMode mode = resolve_mode(opt, f, 1 + d.dim_v);
  UnifiedProduct sp = spin_factor(d.cocycle, mode);
  ValidationReport rep = check_jordan(sp.product, mode);
  return emit_product(opt, "spin", rep, mode, sp.product);
}

int cmd_product(const CommonOpts& opt, const std::string& kind, const std::string& path) {
  if (kind == "crossed") {
    CrossedSystem cs = load_crossed(path);
    ValidationReport checks;
    checks.append(check_jordan(cs.a, resolve_mode(opt, cs.a.field(), cs.a.dim())));
    if (!checks.passed())
      return fail_validation(opt, "product", checks, "the algebra A of the crossed system is not Jordan");
    checks.append(check_jordan(cs.v, resolve_mode(opt, cs.v.field(), cs.v.dim())));
    if (!checks.passed())
      return fail_validation(opt, "product", checks, "the algebra V of the crossed system is not Jordan");
    CheckMode mode = resolve_mode(opt, cs.a.field(), cs.a.dim() + cs.v.dim());
    ValidationReport rep = validate_crossed_system(cs, mode);
    checks.append(rep);
    if (!rep.passed())
      return fail_validation(opt, "product", checks, "the crossed system fails validation");
    return emit_product(opt, kind, checks, mode, build_crossed(cs));
  }

  ExtendingDatum d = load_datum(path);
  if (kind == "spin")
    return build_spin(opt, d);
  if (kind == "twisted" && !d.act_l.is_zero())
    return fail_usage(opt, "a twisted product needs x |> a = 0; this datum has a nonzero actl");

  ValidationReport checks = check_jordan(d.a, resolve_mode(opt, d.a.field(), d.a.dim()));
  if (!checks.passed())
    return fail_validation(opt, "product", checks, "the base algebra of the datum is not Jordan");
  CheckMode mode = resolve_mode(opt, d.field(), d.a.dim() + d.dim_v);
  ValidationReport rep = validate_extending_structure(d, mode);
  checks.append(rep);
  if (!rep.passed())
    return fail_validation(opt, "product", checks, "the extending structure fails validation");
  UnifiedProduct up = kind == "twisted" ? build_twisted(d) : build_unified(d);
  return emit_product(opt, kind, checks, mode, up.product);
}

int cmd_extract(const CommonOpts& opt, const std::string& path, const std::string& subalg_path,
                const std::string& retraction_path) {
  Algebra e = load_algebra(path);
  CheckMode emode = resolve_mode(opt, e.field(), e.dim());
  ValidationReport checks = check_jordan(e, emode);
  if (!checks.passed())
    return fail_validation(opt, "extract", checks, "the ambient algebra is not Jordan");
  std::vector<Vec> basis = load_basis(subalg_path, e.field(), e.dim());
  Matrix p = load_matrix(retraction_path, e.field(), basis.size(), e.dim());
  Extraction ex = extract_extending_structure(e, basis, p);
  CheckMode dmode = resolve_mode(opt, e.field(), e.dim());
  ValidationReport rep = validate_extending_structure(ex.datum, dmode);
  checks.append(rep);
  if (!rep.passed())
    return fail_validation(opt, "extract", checks, "the extracted datum fails validation");
  std::string subalg_text = serialize_algebra(ex.datum.a);
  std::string datum_text = serialize_datum(ex.datum, "<subalgebra>");
  if (opt.emit_json) {
    json j;
    j["command"] = "extract";
    j["passed"] = true;
    stamp_mode(j, dmode);
    j["checks"] = report_json(checks);
    j["dim_a"] = ex.datum.a.dim();
    j["dim_v"] = ex.datum.dim_v;
    j["subalgebra"] = subalg_text;
    j["datum"] = datum_text;
    j["phi"] = matrix_json(ex.phi);
    std::cout << j.dump(2) << "\n";
  } else {
    print_report_comments(std::cout, checks);
    std::cout << "# subalgebra on the given basis (the A reference below, not a file):\n";
    print_block_comments(std::cout, subalg_text);
    std::cout << datum_text;
  }
  return 0;
}

int cmd_classify_flag(const CommonOpts& opt, const std::string& path) {
  Algebra a = load_algebra(path);
  ValidationReport rep = check_jordan(a, resolve_mode(opt, a.field(), a.dim()));
  if (!rep.passed())
    return fail_validation(opt, "classify", rep, "the base algebra is not Jordan");
  std::vector<OrbitClass<FlagDatum>> classes = classify_flag(a, opt.bound);
  if (opt.emit_json) {
    json j;
    j["command"] = "classify";
    j["kind"] = "flag";
    j["field"] = a.field().to_string();
    j["dim"] = a.dim();
    j["count"] = classes.size();
    json arr = json::array();
    for (const OrbitClass<FlagDatum>& c : classes) {
      json e;
      e["orbit_size"] = c.orbit_size;
      e["d"] = matrix_json(c.rep.d);
      e["lambda"] = vec_json(c.rep.lambda);
      e["a0"] = vec_json(c.rep.a0);
      e["alpha0"] = c.rep.alpha0.to_string();
      arr.push_back(e);
    }
    j["classes"] = arr;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "classes " << classes.size() << "\n";
    for (std::size_t i = 0; i < classes.size(); ++i) {
      const OrbitClass<FlagDatum>& c = classes[i];
      std::cout << "class " << i << " (orbit size " << c.orbit_size << "): D "
                << c.rep.d.to_string() << ", lambda " << vec_to_string(c.rep.lambda) << ", a0 "
                << vec_to_string(c.rep.a0) << ", alpha0 " << c.rep.alpha0.to_string() << "\n";
    }
  }
  return 0;
}

int cmd_h2(const CommonOpts& opt, std::size_t n, std::uint64_t p, int eps) {
  FieldSpec f = FieldSpec::prime(p);
  Algebra a = Algebra::abelian(f, n);
  std::vector<OrbitClass<OneDimPair>> classes = h2_onedim(a, eps, opt.bound);
  if (opt.emit_json) {
    json j;
    j["command"] = "h2";
    j["n"] = n;
    j["p"] = p;
    j["eps"] = eps;
    j["count"] = classes.size();
    json arr = json::array();
    for (const OrbitClass<OneDimPair>& c : classes) {
      json e;
      e["orbit_size"] = c.orbit_size;
      e["d"] = matrix_json(c.rep.d);
      e["a0"] = vec_json(c.rep.a0);
      arr.push_back(e);
    }
    j["classes"] = arr;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "classes " << classes.size() << "\n";
    for (std::size_t i = 0; i < classes.size(); ++i) {
      const OrbitClass<OneDimPair>& c = classes[i];
      std::cout << "class " << i << " (orbit size " << c.orbit_size << "): D "
                << c.rep.d.to_string() << ", a0 " << vec_to_string(c.rep.a0) << "\n";
    }
  }
  return 0;
}

int cmd_artin(const CommonOpts& opt, const std::string& path, std::uint64_t order_bound) {
  auto [alg, gens] = load_action(path);
  CheckMode mode = resolve_mode(opt, alg.field(), alg.dim());
  ValidationReport checks = check_jordan(alg, mode);
  if (!checks.passed())
    return fail_validation(opt, "artin", checks, "the algebra of the action is not Jordan");
  GroupAction action = generate_group(alg, gens, order_bound, mode);
  std::optional<ArtinDecomposition> dec;
  try {
    dec = artin_decomposition(action, mode);
  } catch (const std::invalid_argument& e) {
    return fail_validation(opt, "artin", checks, e.what());
  }
  std::optional<bool> cyclic;
  if (action.generators.size() <= 1)
    cyclic = cyclic_kernel_check(action);
  const ExtendingDatum& d = dec->extraction.datum;
  std::string subalg_text = serialize_algebra(d.a);
  std::string datum_text = serialize_datum(d, "<invariants>");
  if (opt.emit_json) {
    json j;
    j["command"] = "artin";
    j["order"] = action.elements.size();
    j["invariant_dim"] = d.a.dim();
    j["kernel_dim"] = d.dim_v;
    j["actl_zero"] = d.act_l.is_zero();
    stamp_mode(j, mode);
    j["passed"] = true;
    j["checks"] = report_json(checks);
    j["invariants"] = subalg_text;
    j["datum"] = datum_text;
    j["theta"] = matrix_json(dec->theta);
    if (cyclic)
      j["cyclic_kernel"] = *cyclic;
    std::cout << j.dump(2) << "\n";
  } else {
    print_report_comments(std::cout, checks);
    std::cout << "# group order " << action.elements.size() << "\n";
    std::cout << "# invariant subalgebra dim " << d.a.dim() << ", trace kernel dim " << d.dim_v
              << "\n";
    std::cout << "# x |> a vanishes on the kernel; theta " << dec->theta.to_string()
              << " maps the twisted product onto the input\n";
    if (cyclic)
      std::cout << "# cyclic kernel identity: " << (*cyclic ? "holds" : "fails") << "\n";
    std::cout << "# invariants (the A reference below, not a file):\n";
    print_block_comments(std::cout, subalg_text);
    std::cout << datum_text;
  }
  return 0;
}

json tree_json(const DecompositionTree& t) {
  json j;
  j["dim"] = t.algebra.dim();
  j["simple"] = t.simple();
  j["searched_up_to"] = t.searched_up_to;
  if (!t.simple()) {
    j["ideal_dim"] = t.ideal->size();
    j["sub"] = tree_json(*t.sub);
    j["quot"] = tree_json(*t.quot);
  }
  return j;
}

int cmd_decompose(const CommonOpts& opt, const std::string& path, std::size_t max_dim) {
  Algebra a = load_algebra(path);
  ValidationReport rep = check_jordan(a, resolve_mode(opt, a.field(), a.dim()));
  if (!rep.passed())
    return fail_validation(opt, "decompose", rep, "the algebra is not Jordan");
  DecompositionTree t = decompose_iterated(a, max_dim == 0 ? SIZE_MAX : max_dim, opt.bound);
  if (opt.emit_json) {
    json j;
    j["command"] = "decompose";
    j["leaves"] = t.leaf_count();
    j["tree"] = tree_json(t);
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << t.to_string();
    std::cout << "leaves " << t.leaf_count() << "\n";
  }
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact construction, validation, and classification of finite-dimensional Jordan algebras"};
  app.require_subcommand(1);
  CommonOpts opt;

  std::string check_path;
  CLI::App* check_cmd = app.add_subcommand("check", "verify the Jordan axioms of an algebra file");
  check_cmd->add_option("file", check_path, "algebra file")->required();
  add_common(check_cmd, opt);

  std::string product_kind;
  std::string product_path;
  CLI::App* product_cmd =
      app.add_subcommand("product", "validate a datum or crossed-system file and build its product algebra");
  product_cmd->add_option("kind", product_kind, "unified, crossed, twisted, or spin")
      ->required()
      ->check(CLI::IsMember({"unified", "crossed", "twisted", "spin"}));
  product_cmd->add_option("file", product_path, "datum file (crossed-system file for crossed)")
      ->required();
  add_common(product_cmd, opt);

  std::string extract_path;
  std::string subalg_path;
  std::string retraction_path;
  CLI::App* extract_cmd = app.add_subcommand(
      "extract", "extract the extending structure of a subalgebra along a retraction");
  extract_cmd->add_option("file", extract_path, "algebra file")->required();
  extract_cmd->add_option("--subalg", subalg_path, "basis file spanning the subalgebra")
      ->required();
  extract_cmd->add_option("--retraction", retraction_path,
                          "matrix file of the retraction onto the subalgebra basis")
      ->required();
  add_common(extract_cmd, opt);

  std::string classify_algebra;
  CLI::App* classify_cmd =
      app.add_subcommand("classify", "classify extending structures up to stabilizing isomorphism");
  classify_cmd->require_subcommand(1);
  CLI::App* flag_cmd =
      classify_cmd->add_subcommand("flag", "all flag data of a base algebra, up to equivalence");
  flag_cmd->add_option("--algebra", classify_algebra, "algebra file")->required();
  add_common(flag_cmd, opt);

  std::size_t h2_n = 0;
  std::uint64_t h2_p = 0;
  int h2_eps = 0;
  CLI::App* h2_cmd =
      app.add_subcommand("h2", "cohomology classes (D, a0) of the abelian algebra k^n through a line");
  h2_cmd->add_option("--n", h2_n, "dimension of the abelian base")->required();
  h2_cmd->add_option("--p", h2_p, "odd prime field order")->required();
  h2_cmd->add_option("--eps", h2_eps, "x.x = eps x on the line")
      ->required()
      ->check(CLI::Range(0, 1));
  add_common(h2_cmd, opt);

  std::string artin_path;
  std::uint64_t order_bound = 64;
  CLI::App* artin_cmd = app.add_subcommand(
      "artin", "write an algebra with a finite automorphism group as a twisted product over its invariants");
  artin_cmd->add_option("file", artin_path, "action file")->required();
  artin_cmd->add_option("--order-bound", order_bound, "largest group order generated")
      ->capture_default_str();
  add_common(artin_cmd, opt);

  std::string decompose_path;
  std::size_t max_dim = 0;
  CLI::App* decompose_cmd =
      app.add_subcommand("decompose", "iterated crossed-product decomposition into simple factors");
  decompose_cmd->add_option("file", decompose_path, "algebra file")->required();
  decompose_cmd->add_option("--max-dim", max_dim, "largest ideal dimension searched (0: no cap)");
  add_common(decompose_cmd, opt);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    set_worker_count(opt.threads == 0 ? 1 : opt.threads);
    if (*check_cmd)
      return cmd_check(opt, check_path);
    if (*product_cmd)
      return cmd_product(opt, product_kind, product_path);
    if (*extract_cmd)
      return cmd_extract(opt, extract_path, subalg_path, retraction_path);
    if (*flag_cmd)
      return cmd_classify_flag(opt, classify_algebra);
    if (*h2_cmd)
      return cmd_h2(opt, h2_n, h2_p, h2_eps);
    if (*artin_cmd)
      return cmd_artin(opt, artin_path, order_bound);
    if (*decompose_cmd)
      return cmd_decompose(opt, decompose_path, max_dim);
    return 2;
  } catch (const BoundExceeded& e) {
    return fail_usage(opt, e.what());
  } catch (const ParseError& e) {
    return fail_usage(opt, e.what());
  } catch (const std::exception& e) {
    return fail_usage(opt, e.what());
  }
}
