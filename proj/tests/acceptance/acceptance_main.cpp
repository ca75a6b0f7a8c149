#include "jordan/classify.hpp"
#include "jordan/invariants.hpp"
#include "jordan/io.hpp"

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

// One criterion per function, one [PASS]/[FAIL] line per criterion. The
// process exits 0 only when every criterion lands on its expected outcome;
// criterion 6 is expected to fail and its diagnostics explain why.

namespace {

using namespace jordan;
namespace fs = std::filesystem;

const fs::path kFixtures = fs::path(JORDAN_TEST_DIR) / "fixtures";

std::mt19937 g_rng(8157302);

Scalar rnd(const FieldSpec& f) { return detail::random_scalar(f, g_rng); }

std::size_t rnd_index(std::size_t n) {
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(g_rng);
}

Vec random_vec(const FieldSpec& f, std::size_t n) {
  Vec v;
  for (std::size_t i = 0; i < n; ++i)
    v.push_back(rnd(f));
  return v;
}

Matrix random_matrix(const FieldSpec& f, std::size_t rows, std::size_t cols) {
  Matrix m(f, rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j)
      m.at(i, j) = rnd(f);
  return m;
}

BilinearMap random_map(const FieldSpec& f, std::size_t d1, std::size_t d2, std::size_t dout) {
  BilinearMap m(f, d1, d2, dout);
  for (std::size_t i = 0; i < d1; ++i)
    for (std::size_t j = 0; j < d2; ++j)
      for (std::size_t k = 0; k < dout; ++k)
        m.set(i, j, k, rnd(f));
  return m;
}

BilinearMap random_symmetric_map(const FieldSpec& f, std::size_t d, std::size_t dout) {
  BilinearMap m(f, d, d, dout);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i; j < d; ++j)
      for (std::size_t k = 0; k < dout; ++k) {
        Scalar s = rnd(f);
        m.set(i, j, k, s);
        m.set(j, i, k, s);
      }
  return m;
}

/// Rejection-samples a commutative table until the Jordan check passes; the
/// returned algebra carries an exhaustive verification stamp.
Algebra random_jordan_algebra(const FieldSpec& f, std::size_t dim) {
  for (int tries = 0; tries < 5000; ++tries) {
    Algebra a(f, dim, random_symmetric_map(f, dim, dim));
    if (check_jordan(a, CheckMode::exhaustive()).passed())
      return a;
  }
  throw std::logic_error("no Jordan table found by rejection sampling");
}

Algebra unital_line(const FieldSpec& f) {
  BilinearMap m(f, 1, 1, 1);
  m.set(0, 0, 0, Scalar::one(f));
  Algebra a(f, 1, std::move(m));
  check_jordan(a, CheckMode::exhaustive());
  return a;
}

ExtendingDatum spin_datum(const FieldSpec& f, std::size_t dv, const BilinearMap& form) {
  BilinearMap act_r(f, dv, 1, dv);
  for (std::size_t i = 0; i < dv; ++i)
    act_r.set(i, 0, i, Scalar::one(f));
  return ExtendingDatum(unital_line(f), dv, std::move(act_r), BilinearMap(f, dv, 1, 1), form,
                        BilinearMap(f, dv, dv, dv));
}

/// True when span{e_0..e_{da-1}} absorbs multiplication on both sides,
/// read off the structure constants directly.
bool a_block_is_ideal(const Algebra& e, std::size_t da) {
  const BilinearMap& m = e.mul_map();
  for (std::size_t i = 0; i < da; ++i)
    for (std::size_t j = 0; j < e.dim(); ++j)
      for (std::size_t k = da; k < e.dim(); ++k)
        if (!m.at(i, j, k).is_zero())
          return false;
  return true;
}

/// Brute-force isomorphism search over every invertible matrix, ascending
/// digit order; independent of the library's stabilizing-pair search.
bool brute_force_isomorphic(const Algebra& x, const Algebra& y) {
  if (x.dim() != y.dim())
    return false;
  FieldSpec f = x.field();
  std::size_t n = x.dim();
  std::uint64_t p = f.characteristic();
  std::vector<std::uint64_t> digits(n * n, 0);
  do {
    Matrix m(f, n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        m.at(i, j) = Scalar::from_int(f, static_cast<long long>(digits[i * n + j]));
    if (!m.invertible())
      continue;
    if (check_algebra_morphism(m, x, y, CheckMode::exhaustive()))
      return true;
  } while (detail::next_tuple(digits, p));
  return false;
}

struct Criterion {
  int number = 0;
  std::string name;
  bool passed = false;
  bool expect_pass = true;
  double seconds = 0.0;
  std::string summary;
  std::vector<std::string> notes;
};

template <class Fn>
Criterion timed(int number, const std::string& name, bool expect_pass, Fn&& fn) {
  Criterion c;
  c.number = number;
  c.name = name;
  c.expect_pass = expect_pass;
  auto start = std::chrono::steady_clock::now();
  try {
    c.passed = fn(c);
  } catch (const std::exception& e) {
    c.passed = false;
    c.notes.push_back(std::string("exception: ") + e.what());
  }
  c.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return c;
}

std::vector<Algebra> g_corpus;

void corpus_add(const Algebra& a) {
  if (g_corpus.size() < 120)
    g_corpus.push_back(a);
}

// 1. For >= 200 random extending data per field with dim A, dim V <= 2,
// exhaustive datum validation must agree with the direct commutativity +
// Jordan check of the built product, instance by instance.
bool criterion_unified_oracle(Criterion& c) {
  std::size_t agreements = 0, total = 0, valid_seen = 0, invalid_seen = 0;
  for (std::uint64_t p : {5ull, 3ull}) {
    FieldSpec f = FieldSpec::prime(p);
    std::vector<Algebra> bases = {Algebra::abelian(f, 1), Algebra::abelian(f, 2), unital_line(f),
                                  random_jordan_algebra(f, 2)};
    for (int i = 0; i < 200; ++i) {
      const Algebra& a = bases[rnd_index(bases.size())];
      std::size_t da = a.dim();
      std::size_t dv = 1 + rnd_index(2);
      ExtendingDatum d = trivial_datum(a, dv);
      switch (i % 3) {
      case 0:
        d = ExtendingDatum(a, dv, random_map(f, dv, da, dv), random_map(f, dv, da, da),
                           random_map(f, dv, dv, da), random_map(f, dv, dv, dv));
        break;
      case 1:
        d = ExtendingDatum(a, dv, random_map(f, dv, da, dv), random_map(f, dv, da, da),
                           random_symmetric_map(f, dv, da), random_symmetric_map(f, dv, dv));
        break;
      default:
        if (da == 1 && !a.mul_map().is_zero())
          d = spin_datum(f, dv, random_symmetric_map(f, dv, 1));
        break;
      }
      ValidationReport rep = validate_extending_structure(d, CheckMode::exhaustive());
      Algebra product = build_unified_unchecked(d).product;
      bool direct = check_jordan(product, CheckMode::exhaustive()).passed();
      total += 1;
      if (rep.passed() == direct)
        agreements += 1;
      if (direct) {
        valid_seen += 1;
        corpus_add(product);
      } else {
        invalid_seen += 1;
      }
    }
  }
  std::ostringstream os;
  os << agreements << "/" << total << " agree (" << valid_seen << " valid, " << invalid_seen
     << " invalid)";
  c.summary = os.str();
  return agreements == total && total >= 400 && valid_seen > 0 && invalid_seen > 0 &&
         c.seconds < 120.0;
}

// 2. Same protocol with <| = 0 through crossed systems, plus A x {0} must be
// an ideal of every product that passes.
bool criterion_crossed_oracle(Criterion& c) {
  std::size_t agreements = 0, total = 0, valid_seen = 0, ideal_failures = 0;
  for (std::uint64_t p : {5ull, 3ull}) {
    FieldSpec f = FieldSpec::prime(p);
    std::vector<Algebra> bases = {Algebra::abelian(f, 1), Algebra::abelian(f, 2), unital_line(f),
                                  random_jordan_algebra(f, 2)};
    for (int i = 0; i < 200; ++i) {
      const Algebra& a = bases[rnd_index(bases.size())];
      const Algebra& v = bases[rnd_index(bases.size())];
      BilinearMap act = i % 3 == 0 ? BilinearMap(f, v.dim(), a.dim(), a.dim())
                                   : random_map(f, v.dim(), a.dim(), a.dim());
      BilinearMap cocycle = i % 2 == 0 ? random_symmetric_map(f, v.dim(), a.dim())
                                       : random_map(f, v.dim(), v.dim(), a.dim());
      CrossedSystem cs(a, v, std::move(act), std::move(cocycle));
      ValidationReport rep = validate_crossed_system(cs, CheckMode::exhaustive());
      Algebra product = build_crossed_unchecked(cs);
      bool direct = check_jordan(product, CheckMode::exhaustive()).passed();
      total += 1;
      if (rep.passed() == direct)
        agreements += 1;
      if (direct) {
        valid_seen += 1;
        corpus_add(product);
        if (!a_block_is_ideal(product, a.dim()))
          ideal_failures += 1;
      }
    }
  }
  std::ostringstream os;
  os << agreements << "/" << total << " agree, " << valid_seen << " valid, " << ideal_failures
     << " ideal failures";
  c.summary = os.str();
  return agreements == total && total >= 400 && valid_seen > 0 && ideal_failures == 0;
}

// 3. 100 random symmetric forms with dim V <= 4 over Q (formal) and over
// GF(7) (exhaustive): every spin factor passes the Jordan check.
bool criterion_spin(Criterion& c) {
  std::size_t passes = 0, total = 0;
  for (int rational = 0; rational < 2; ++rational) {
    FieldSpec f = rational ? FieldSpec::rationals() : FieldSpec::prime(7);
    CheckMode mode = rational ? CheckMode::formal() : CheckMode::exhaustive();
    for (int i = 0; i < 100; ++i) {
      std::size_t dv = 1 + rnd_index(4);
      UnifiedProduct sp = spin_factor(random_symmetric_map(f, dv, 1), mode);
      total += 1;
      if (check_jordan(sp.product, mode).passed()) {
        passes += 1;
        if (i % 10 == 0)
          corpus_add(sp.product);
      }
    }
  }
  std::ostringstream os;
  os << passes << "/" << total << " spin factors verified";
  c.summary = os.str();
  return passes == total && total == 200;
}

// 4. Every Jordan-verified algebra collected by the other criteria satisfies
// the polarization relation on 500 sampled triples.
bool criterion_polarization(Criterion& c) {
  for (const char* name : {"spinfactor.alg", "spinfactor_gf5.alg", "unitline.alg",
                           "abelian2_gf3.alg", "abelian1_gf5.alg"}) {
    Algebra a = load_algebra(kFixtures / name);
    check_jordan(a, default_mode(a.field(), a.dim()));
    corpus_add(a);
  }
  std::size_t failures = 0;
  std::uint32_t seed = 17;
  for (const Algebra& a : g_corpus)
    if (!check_polarization_relation(a, CheckMode::sampled(seed++, 500)).passed())
      failures += 1;
  std::ostringstream os;
  os << g_corpus.size() << " corpus algebras, " << failures << " failures";
  c.summary = os.str();
  return failures == 0 && g_corpus.size() >= 50;
}

// 5. The stored witness algebra passes the basis-pairs-only Jordan check yet
// fails the exhaustive one.
bool criterion_basis_insufficiency(Criterion& c) {
  Algebra a = load_algebra(kFixtures / "nonjordan.alg");
  bool basis_only = check_jordan_basis_only(a);
  bool exhaustive = check_jordan(a, CheckMode::exhaustive()).passed();
  std::ostringstream os;
  os << "basis pairs " << (basis_only ? "pass" : "fail") << ", exhaustive "
     << (exhaustive ? "passes" : "fails");
  c.summary = os.str();
  return basis_only && !exhaustive;
}

// 6. As specified: over GF(5), h2_onedim(abelian, eps = 0) projected to D
// must equal solve_matrix_cubic as sets with every a0 = 0 for n = 1, 2, and
// exactly 3 classes at n = 1. The eps = 0 enumeration does not satisfy this
// (its compatible D are nilpotent and a0 is a free coordinate); the same
// assertions hold at eps = 1, so the criterion is reported measured at both.
bool criterion_h2_matrix_model(Criterion& c) {
  FieldSpec f5 = FieldSpec::prime(5);
  auto d_set = [](const std::vector<OrbitClass<OneDimPair>>& classes) {
    std::vector<Matrix> ds;
    for (const OrbitClass<OneDimPair>& cl : classes)
      ds.push_back(cl.rep.d);
    std::sort(ds.begin(), ds.end(), [](const Matrix& x, const Matrix& y) { return x.lex_cmp(y) < 0; });
    ds.erase(std::unique(ds.begin(), ds.end()), ds.end());
    return ds;
  };
  auto all_a0_zero = [](const std::vector<OrbitClass<OneDimPair>>& classes) {
    for (const OrbitClass<OneDimPair>& cl : classes)
      if (!is_zero_vec(cl.rep.a0))
        return false;
    return true;
  };
  auto sorted_cubic = [&](std::size_t n) {
    std::vector<Matrix> ms = solve_matrix_cubic(n, f5);
    std::sort(ms.begin(), ms.end(), [](const Matrix& x, const Matrix& y) { return x.lex_cmp(y) < 0; });
    return ms;
  };

  bool stated = true;
  for (int eps : {0, 1}) {
    std::ostringstream os;
    os << "measured at eps=" << eps << ":";
    bool holds = true;
    for (std::size_t n : {std::size_t(1), std::size_t(2)}) {
      auto classes = h2_onedim(Algebra::abelian(f5, n), eps);
      bool sets_equal = d_set(classes) == sorted_cubic(n);
      bool zeros = all_a0_zero(classes);
      bool count_ok = n != 1 || classes.size() == 3;
      holds = holds && sets_equal && zeros && count_ok;
      os << " n=" << n << " count=" << classes.size() << " D-set "
         << (sets_equal ? "==" : "!=") << " cubic, a0 " << (zeros ? "all zero" : "nonzero") << ";";
    }
    c.notes.push_back(os.str());
    if (eps == 0)
      stated = holds;
    else if (holds)
      c.notes.push_back("the stated assertions hold verbatim at eps=1");
  }
  c.summary = "stated at eps=0: " + std::string(stated ? "holds" : "does not hold");
  return stated && c.seconds < 60.0;
}

/// Valid data for the roundtrip criteria: spin data, valid random flags
/// (zero flag as fallback), all over verified bases.
ExtendingDatum random_valid_datum(const FieldSpec& f, const std::vector<Algebra>& bases) {
  for (int tries = 0; tries < 200; ++tries) {
    const Algebra& a = bases[rnd_index(bases.size())];
    if (tries % 3 == 0 && !a.mul_map().is_zero() && a.dim() == 1) {
      std::size_t dv = 1 + rnd_index(2);
      return spin_datum(f, dv, random_symmetric_map(f, dv, 1));
    }
    FlagDatum fd{random_matrix(f, a.dim(), a.dim()), random_vec(f, a.dim()),
                 random_vec(f, a.dim()), rnd(f)};
    if (validate_flag_datum(a, fd, CheckMode::exhaustive()).passed())
      return flag_to_datum(a, fd);
  }
  return trivial_datum(bases[0], 1);
}

// 7. 100 random valid data: build the unified product, extract along the
// canonical retraction, and require the exact original datum back with
// phi(a,x) = a + x a stabilizing isomorphism.
bool criterion_reconstruction(Criterion& c) {
  std::size_t exact = 0, iso = 0, total = 0;
  for (std::uint64_t p : {5ull, 3ull}) {
    FieldSpec f = FieldSpec::prime(p);
    std::vector<Algebra> bases = {Algebra::abelian(f, 1), Algebra::abelian(f, 2), unital_line(f),
                                  random_jordan_algebra(f, 2)};
    for (int i = 0; i < 50; ++i) {
      ExtendingDatum d = random_valid_datum(f, bases);
      ValidationReport rep = validate_extending_structure(d, CheckMode::exhaustive());
      if (!rep.passed())
        continue;
      UnifiedProduct up = build_unified(d);
      std::size_t da = d.a.dim();
      std::vector<Vec> a_basis;
      for (std::size_t k = 0; k < da; ++k)
        a_basis.push_back(unit_vec(f, up.product.dim(), k));
      Matrix retraction(f, da, up.product.dim());
      for (std::size_t k = 0; k < da; ++k)
        retraction.at(k, k) = Scalar::one(f);
      Extraction ex = extract_extending_structure(up.product, a_basis, retraction);
      total += 1;
      if (ex.datum == d)
        exact += 1;
      bool stabilizing = true;
      for (std::size_t k = 0; k < da; ++k)
        if (ex.phi.col(k) != unit_vec(f, up.product.dim(), k))
          stabilizing = false;
      if (stabilizing && ex.phi.invertible() &&
          check_algebra_morphism(ex.phi, build_unified_unchecked(ex.datum).product, up.product,
                                 CheckMode::exhaustive()))
        iso += 1;
      corpus_add(up.product);
    }
  }
  std::ostringstream os;
  os << exact << "/" << total << " exact data, " << iso << "/" << total
     << " stabilizing isomorphisms";
  c.summary = os.str();
  return total == 100 && exact == total && iso == total;
}

CrossedSystem random_valid_crossed(const FieldSpec& f, const std::vector<Algebra>& bases) {
  for (int tries = 0; tries < 400; ++tries) {
    const Algebra& a = bases[rnd_index(bases.size())];
    const Algebra& v = bases[rnd_index(bases.size())];
    BilinearMap act = tries % 4 == 3 ? BilinearMap(f, v.dim(), a.dim(), a.dim())
                                     : random_map(f, v.dim(), a.dim(), a.dim());
    BilinearMap cocycle = tries % 4 == 3 ? BilinearMap(f, v.dim(), v.dim(), a.dim())
                                         : random_symmetric_map(f, v.dim(), a.dim());
    CrossedSystem cs(a, v, std::move(act), std::move(cocycle));
    if (validate_crossed_system(cs, CheckMode::exhaustive()).passed())
      return cs;
  }
  CrossedSystem cs(bases[0], bases[0], BilinearMap(f, bases[0].dim(), bases[0].dim(), bases[0].dim()),
                   BilinearMap(f, bases[0].dim(), bases[0].dim(), bases[0].dim()));
  validate_crossed_system(cs, CheckMode::exhaustive());
  return cs;
}

// 8. 50 random validated crossed systems over GF(3): the canonical extension
// with its canonical section recovers the system exactly, and a second
// random section stays cohomologous (witness found by search).
bool criterion_extension_roundtrip(Criterion& c) {
  FieldSpec f = FieldSpec::prime(3);
  std::vector<Algebra> bases = {Algebra::abelian(f, 1), Algebra::abelian(f, 2), unital_line(f),
                                random_jordan_algebra(f, 2)};
  std::size_t exact = 0, witnessed = 0, total = 0;
  for (int i = 0; i < 50; ++i) {
    CrossedSystem cs = random_valid_crossed(f, bases);
    Extension ext = canonical_extension(cs);
    Matrix s = default_section(ext);
    CrossedSystem recovered = extension_to_crossed(ext, s, CheckMode::exhaustive());
    total += 1;
    if (recovered.act == cs.act && recovered.cocycle == cs.cocycle &&
        recovered.a.mul_map() == cs.a.mul_map() && recovered.v.mul_map() == cs.v.mul_map())
      exact += 1;
    Matrix shift = random_matrix(f, cs.a.dim(), cs.v.dim());
    Matrix s2 = s.add(ext.incl.mul(shift));
    CrossedSystem other = extension_to_crossed(ext, s2, CheckMode::exhaustive());
    if (search_cohomology_witness(recovered, other).has_value())
      witnessed += 1;
  }
  std::ostringstream os;
  os << exact << "/" << total << " exact recoveries, " << witnessed << "/" << total
     << " cohomology witnesses";
  c.summary = os.str();
  return total == 50 && exact == total && witnessed == total;
}

// 9. 200 random (datum, datum', r, v) tuples: the block-condition check must
// agree with direct morphism verification of psi, and psi is invertible
// exactly when v is.
bool criterion_morphism_lemma(Criterion& c) {
  std::size_t agreements = 0, invertible_ok = 0, morphisms_seen = 0, total = 0;
  for (std::uint64_t p : {5ull, 3ull}) {
    FieldSpec f = FieldSpec::prime(p);
    std::vector<Algebra> bases = {Algebra::abelian(f, 1), Algebra::abelian(f, 2), unital_line(f),
                                  random_jordan_algebra(f, 2)};
    for (int i = 0; i < 100; ++i) {
      const Algebra& a = bases[rnd_index(bases.size())];
      std::size_t da = a.dim();
      std::size_t dv = 1 + rnd_index(2);
      ExtendingDatum d(a, dv, random_map(f, dv, da, dv), random_map(f, dv, da, da),
                       random_map(f, dv, dv, da), random_map(f, dv, dv, dv));
      MorphismPair pair{random_matrix(f, da, dv), random_matrix(f, dv, dv)};
      ExtendingDatum d2 = d;
      if (i % 2 == 0 && pair.v.invertible())
        d2 = transform_extending_structure(d, pair.r, pair.v);
      else
        d2 = ExtendingDatum(a, dv, random_map(f, dv, da, dv), random_map(f, dv, da, da),
                            random_map(f, dv, dv, da), random_map(f, dv, dv, dv));
      bool block = check_morphism_pair(d, d2, pair, CheckMode::exhaustive());
      Matrix psi = pair.block_matrix();
      bool direct = check_algebra_morphism(psi, build_unified_unchecked(d).product,
                                           build_unified_unchecked(d2).product,
                                           CheckMode::exhaustive());
      total += 1;
      if (block == direct)
        agreements += 1;
      if (psi.invertible() == pair.v.invertible())
        invertible_ok += 1;
      if (direct)
        morphisms_seen += 1;
    }
  }
  std::ostringstream os;
  os << agreements << "/" << total << " agree, " << morphisms_seen << " morphisms, "
     << invertible_ok << "/" << total << " invertibility matches";
  c.summary = os.str();
  return total == 200 && agreements == total && invertible_ok == total && morphisms_seen > 0;
}

// 10. classify_flag over the abelian GF(3) plane must report exactly as many
// classes as the stabilizing-isomorphism grouping of the built 3-dimensional
// algebras, with matching valid-point totals.
bool criterion_flag_crosscheck(Criterion& c) {
  FieldSpec f = FieldSpec::prime(3);
  Algebra a = Algebra::abelian(f, 2);

  std::vector<Algebra> reps;
  std::vector<std::uint64_t> counts;
  std::uint64_t valid_total = 0;
  std::vector<std::uint64_t> digits(9, 0);
  do {
    FlagDatum fd{Matrix(f, 2, 2), zero_vec(f, 2), zero_vec(f, 2), Scalar::zero(f)};
    fd.d.at(0, 0) = Scalar::from_int(f, static_cast<long long>(digits[0]));
    fd.d.at(0, 1) = Scalar::from_int(f, static_cast<long long>(digits[1]));
    fd.d.at(1, 0) = Scalar::from_int(f, static_cast<long long>(digits[2]));
    fd.d.at(1, 1) = Scalar::from_int(f, static_cast<long long>(digits[3]));
    fd.lambda[0] = Scalar::from_int(f, static_cast<long long>(digits[4]));
    fd.lambda[1] = Scalar::from_int(f, static_cast<long long>(digits[5]));
    fd.a0[0] = Scalar::from_int(f, static_cast<long long>(digits[6]));
    fd.a0[1] = Scalar::from_int(f, static_cast<long long>(digits[7]));
    fd.alpha0 = Scalar::from_int(f, static_cast<long long>(digits[8]));
    if (!validate_flag_datum(a, fd, CheckMode::exhaustive()).passed())
      continue;
    valid_total += 1;
    Algebra built = flag_algebra_unchecked(a, fd);
    bool placed = false;
    for (std::size_t k = 0; k < reps.size() && !placed; ++k)
      if (find_stabilizing_isomorphism(built, reps[k], 2).has_value()) {
        counts[k] += 1;
        placed = true;
      }
    if (!placed) {
      reps.push_back(built);
      counts.push_back(1);
    }
  } while (detail::next_tuple(digits, 3));

  std::vector<OrbitClass<FlagDatum>> classes = classify_flag(a);
  std::uint64_t orbit_total = 0;
  for (const OrbitClass<FlagDatum>& cl : classes)
    orbit_total += cl.orbit_size;

  std::ostringstream os;
  os << "brute force " << reps.size() << " classes over " << valid_total
     << " valid flags; classify_flag " << classes.size() << " classes over " << orbit_total;
  c.summary = os.str();
  return reps.size() == classes.size() && valid_total == orbit_total && c.seconds < 600.0;
}

// 11. The sign flip on spin factors (dim V <= 3) and 20 random verified
// C2-actions: the extracted action x |> a vanishes, theta is an isomorphism,
// and for these cyclic actions Ker(t) is spanned by the differences a - g(a).
bool criterion_artin(Criterion& c) {
  FieldSpec f = FieldSpec::prime(5);
  std::size_t ok = 0, total = 0;
  auto run_action = [&](const Algebra& e, const Matrix& g) {
    total += 1;
    GroupAction action = generate_group(e, {g}, 64, CheckMode::exhaustive());
    ArtinDecomposition dec = artin_decomposition(action, CheckMode::exhaustive());
    bool good = dec.extraction.datum.act_l.is_zero() && dec.theta.invertible() &&
                check_algebra_morphism(dec.theta, dec.twisted.product, e,
                                       CheckMode::exhaustive()) &&
                cyclic_kernel_check(action);
    if (good)
      ok += 1;
  };

  for (std::size_t dv = 1; dv <= 3; ++dv) {
    UnifiedProduct sp = spin_factor(random_symmetric_map(f, dv, 1), CheckMode::exhaustive());
    Matrix flip = Matrix::identity(f, 1 + dv);
    for (std::size_t i = 1; i <= dv; ++i)
      flip.at(i, i) = Scalar::from_int(f, -1);
    run_action(sp.product, flip);
  }
  for (int i = 0; i < 10; ++i) {
    std::size_t dv = 1 + rnd_index(3);
    UnifiedProduct sp = spin_factor(random_symmetric_map(f, dv, 1), CheckMode::exhaustive());
    Matrix flip = Matrix::identity(f, 1 + dv);
    for (std::size_t k = 1; k <= dv; ++k)
      flip.at(k, k) = Scalar::from_int(f, -1);
    run_action(sp.product, flip);
  }
  for (int i = 0; i < 10; ++i) {
    Algebra a = random_jordan_algebra(f, 1 + rnd_index(2));
    CrossedSystem cs(a, a, BilinearMap(f, a.dim(), a.dim(), a.dim()),
                     BilinearMap(f, a.dim(), a.dim(), a.dim()));
    if (!validate_crossed_system(cs, CheckMode::exhaustive()).passed())
      return false;
    Algebra e = build_crossed(cs);
    std::size_t n = a.dim();
    Matrix swap(f, 2 * n, 2 * n);
    for (std::size_t k = 0; k < n; ++k) {
      swap.at(k, n + k) = Scalar::one(f);
      swap.at(n + k, k) = Scalar::one(f);
    }
    run_action(e, swap);
    corpus_add(e);
  }
  std::ostringstream os;
  os << ok << "/" << total << " actions decomposed";
  c.summary = os.str();
  return total == 23 && ok == total;
}

// 12. Random validated crossed products over GF(3) with total dim <= 3:
// the iterated decomposition finds a proper ideal (A x {0} is one), and the
// rebuilt tree is isomorphic to the original by brute-force search.
bool criterion_iterated_decomposition(Criterion& c) {
  FieldSpec f = FieldSpec::prime(3);
  std::vector<Algebra> dim1 = {Algebra::abelian(f, 1), unital_line(f), random_jordan_algebra(f, 1)};
  std::vector<Algebra> dim2 = {Algebra::abelian(f, 2), random_jordan_algebra(f, 2)};
  std::size_t decomposed = 0, rebuilt = 0, total = 0;
  for (int i = 0; i < 40; ++i) {
    bool wide = i % 3 == 0;
    std::vector<Algebra> a_pool = wide ? dim2 : dim1;
    std::vector<Algebra> v_pool = wide ? dim1 : (i % 2 == 0 ? dim1 : dim2);
    std::vector<Algebra> bases;
    bases.push_back(a_pool[rnd_index(a_pool.size())]);
    bases.push_back(v_pool[rnd_index(v_pool.size())]);
    const Algebra& a = bases[0];
    const Algebra& v = bases[1];
    CrossedSystem cs(a, v, BilinearMap(f, v.dim(), a.dim(), a.dim()),
                     BilinearMap(f, v.dim(), v.dim(), a.dim()));
    for (int tries = 0; tries < 300; ++tries) {
      CrossedSystem candidate(a, v, random_map(f, v.dim(), a.dim(), a.dim()),
                              random_symmetric_map(f, v.dim(), a.dim()));
      if (validate_crossed_system(candidate, CheckMode::exhaustive()).passed()) {
        cs = std::move(candidate);
        break;
      }
    }
    if (!cs.validated())
      validate_crossed_system(cs, CheckMode::exhaustive());
    Algebra e = build_crossed(cs);
    total += 1;
    DecompositionTree tree = decompose_iterated(e);
    if (!tree.simple() && a_block_is_ideal(e, a.dim()))
      decomposed += 1;
    Algebra r = rebuild_decomposition(tree);
    if (brute_force_isomorphic(r, e))
      rebuilt += 1;
  }
  std::ostringstream os;
  os << decomposed << "/" << total << " decomposed with the A-ideal, " << rebuilt << "/" << total
     << " rebuilds isomorphic";
  c.summary = os.str();
  return total == 40 && decomposed == total && rebuilt == total;
}

} // namespace

int main() {
  std::vector<Criterion> results;
  results.push_back(timed(1, "unified-product oracle equivalence", true, criterion_unified_oracle));
  results.push_back(timed(2, "crossed specialization and the A-ideal", true, criterion_crossed_oracle));
  results.push_back(timed(3, "spin factor theorem", true, criterion_spin));
  results.push_back(timed(7, "reconstruction roundtrip", true, criterion_reconstruction));
  results.push_back(timed(8, "extension roundtrip and section independence", true,
                          criterion_extension_roundtrip));
  results.push_back(timed(9, "morphism lemma equivalence", true, criterion_morphism_lemma));
  results.push_back(timed(11, "artin decomposition", true, criterion_artin));
  results.push_back(timed(12, "iterated decomposition", true, criterion_iterated_decomposition));
  results.push_back(timed(4, "polarization relation on the corpus", true, criterion_polarization));
  results.push_back(timed(5, "basis-insufficiency witness", true, criterion_basis_insufficiency));
  results.push_back(timed(6, "h2 matrix model", false, criterion_h2_matrix_model));
  results.push_back(timed(10, "flag classification cross-check", true, criterion_flag_crosscheck));

  std::sort(results.begin(), results.end(),
            [](const Criterion& x, const Criterion& y) { return x.number < y.number; });

  int unexpected = 0;
  for (const Criterion& r : results) {
    std::ostringstream line;
    line << (r.passed ? "[PASS]" : "[FAIL]") << " criterion " << r.number << ": " << r.name
         << " (" << static_cast<int>(r.seconds * 1000) << " ms)";
    if (!r.summary.empty())
      line << " -- " << r.summary;
    std::cout << line.str() << "\n";
    for (const std::string& note : r.notes)
      std::cout << "       " << note << "\n";
    if (r.passed != r.expect_pass) {
      unexpected += 1;
      std::cout << "       unexpected outcome: this criterion was expected to "
                << (r.expect_pass ? "pass" : "fail") << "\n";
    } else if (!r.expect_pass) {
      std::cout << "       expected failure: the criterion asserts the eps=1 facts at eps=0\n";
    }
  }
  std::size_t passed = 0;
  for (const Criterion& r : results)
    if (r.passed)
      passed += 1;
  std::cout << passed << "/" << results.size()
            << " criteria pass; every outcome matches its analysis: "
            << (unexpected == 0 ? "yes" : "NO") << "\n";
  return unexpected == 0 ? 0 : 1;
}
