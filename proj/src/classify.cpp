#include "jordan/classify.hpp"

#include "jordan/check.hpp"

#include <atomic>
#include <exception>
#include <functional>
#include <stdexcept>
#include <thread>
#include <unordered_map>
#include <utility>

namespace jordan {

namespace {

std::atomic<unsigned> g_workers{1};

/// Runs work(lo, hi, out) over a partition of [0, total) into contiguous
/// chunks, one thread per chunk, and concatenates the chunk outputs in chunk
/// order. The result is identical to a single work(0, total, out) call.
template <class T, class Work>
std::vector<T> sharded_collect(std::uint64_t total, const Work& work) {
  std::uint64_t shards = std::min<std::uint64_t>(worker_count(), total);
  if (shards <= 1) {
    std::vector<T> out;
    work(0, total, out);
    return out;
  }
  std::vector<std::vector<T>> parts(shards);
  std::vector<std::exception_ptr> errors(shards);
  std::vector<std::thread> threads;
  threads.reserve(shards);
  std::uint64_t base = total / shards;
  std::uint64_t rem = total % shards;
  std::uint64_t lo = 0;
  for (std::uint64_t s = 0; s < shards; ++s) {
    std::uint64_t hi = lo + base + (s < rem ? 1 : 0);
    threads.emplace_back([&, s, lo, hi] {
      try {
        work(lo, hi, parts[s]);
      } catch (...) {
        errors[s] = std::current_exception();
      }
    });
    lo = hi;
  }
  for (std::thread& t : threads)
    t.join();
  for (const std::exception_ptr& e : errors)
    if (e)
      std::rethrow_exception(e);
  std::vector<T> out;
  for (std::vector<T>& part : parts)
    for (T& x : part)
      out.push_back(std::move(x));
  return out;
}

std::uint64_t require_space(std::string_view what, std::uint64_t p, std::uint64_t ndigits,
                            std::uint64_t bound) {
  std::uint64_t needed = pow_sat(p, ndigits);
  if (needed > bound)
    throw BoundExceeded(what, needed, bound);
  return needed;
}

/// Base-p digits of index, most significant first, so ascending indices
/// enumerate ascending digit tuples.
std::vector<std::uint64_t> index_digits(std::uint64_t index, std::size_t count, std::uint64_t p) {
  std::vector<std::uint64_t> digits(count, 0);
  for (std::size_t i = count; i-- > 0;) {
    digits[i] = index % p;
    index /= p;
  }
  return digits;
}

std::uint64_t digits_index(const std::vector<std::uint64_t>& digits, std::uint64_t p) {
  std::uint64_t index = 0;
  for (std::uint64_t d : digits)
    index = index * p + d;
  return index;
}

Matrix matrix_from_digits(FieldSpec f, std::size_t rows, std::size_t cols,
                          const std::uint64_t* digits) {
  Matrix m(f, rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j)
      m.at(i, j) = Scalar::from_int(f, static_cast<std::int64_t>(*digits++));
  return m;
}

Vec vec_from_digits(FieldSpec f, std::size_t n, const std::uint64_t* digits) {
  Vec v;
  v.reserve(n);
  for (std::size_t i = 0; i < n; ++i)
    v.push_back(Scalar::from_int(f, static_cast<std::int64_t>(digits[i])));
  return v;
}

/// Orbit grouping over a validated candidate set, each candidate addressed by
/// its enumeration index. images(rep, emit) must emit the index of every
/// group translate of rep; since indices ascend with lex order, the first
/// unused candidate of each orbit is its lexicographically least element.
struct Orbit {
  std::uint64_t rep = 0;
  std::uint64_t size = 0;
};

std::vector<Orbit> group_orbits(
    const std::vector<std::uint64_t>& valid,
    const std::function<void(std::uint64_t, const std::function<void(std::uint64_t)>&)>& images) {
  std::unordered_map<std::uint64_t, std::size_t> pos;
  pos.reserve(valid.size() * 2);
  for (std::size_t i = 0; i < valid.size(); ++i)
    pos.emplace(valid[i], i);
  std::vector<char> used(valid.size(), 0);
  std::vector<Orbit> out;
  for (std::size_t i = 0; i < valid.size(); ++i) {
    if (used[i])
      continue;
    Orbit orbit{valid[i], 0};
    images(valid[i], [&](std::uint64_t image) {
      auto it = pos.find(image);
      if (it == pos.end())
        throw std::logic_error("orbit grouping: a transform left the validated candidate set");
      if (!used[it->second]) {
        used[it->second] = 1;
        ++orbit.size;
      }
    });
    if (!used[i])
      throw std::logic_error("orbit grouping: an orbit missed its own representative");
    out.push_back(orbit);
  }
  return out;
}

/// A matrix lifted into a coefficient ring, acting on coordinate vectors.
template <class R>
struct LinearOp {
  std::size_t rows = 0, cols = 0;
  std::vector<R> c;
  R zero;

  std::vector<R> apply(const std::vector<R>& x) const {
    std::vector<R> out(rows, zero);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) {
        const R& cij = c[i * cols + j];
        if (!cij.is_zero() && !x[j].is_zero())
          out[i] += cij * x[j];
      }
    return out;
  }
};

template <class R>
LinearOp<R> lift_matrix(const typename RingOps<R>::Ctx& ctx, const Matrix& m) {
  LinearOp<R> op;
  op.rows = m.rows();
  op.cols = m.cols();
  op.zero = RingOps<R>::zero(ctx);
  op.c.reserve(op.rows * op.cols);
  for (std::size_t i = 0; i < op.rows; ++i)
    for (std::size_t j = 0; j < op.cols; ++j)
      op.c.push_back(RingOps<R>::from_scalar(ctx, m.at(i, j)));
  return op;
}

template <class R>
std::vector<R> lift_vec(const typename RingOps<R>::Ctx& ctx, const Vec& v) {
  std::vector<R> out;
  out.reserve(v.size());
  for (const Scalar& s : v)
    out.push_back(RingOps<R>::from_scalar(ctx, s));
  return out;
}

template <class R>
R lin_form(const std::vector<R>& coeffs, const std::vector<R>& x, R acc) {
  for (std::size_t i = 0; i < coeffs.size(); ++i)
    if (!coeffs[i].is_zero() && !x[i].is_zero())
      acc += coeffs[i] * x[i];
  return acc;
}

Scalar dot(FieldSpec f, const Vec& a, const Vec& b) {
  Scalar s = Scalar::zero(f);
  for (std::size_t i = 0; i < a.size(); ++i)
    s = s + a[i] * b[i];
  return s;
}

/// Left multiplication by r: column j is e_j . r.
Matrix mul_by(const Algebra& a, const Vec& r) {
  FieldSpec f = a.field();
  std::size_t n = a.dim();
  Matrix m(f, n, n);
  for (std::size_t j = 0; j < n; ++j) {
    Vec col = a.mul(unit_vec(f, n, j), r);
    for (std::size_t k = 0; k < n; ++k)
      m.at(k, j) = col[k];
  }
  return m;
}

/// Digit layout of an extending-datum candidate with symmetric cocycle and
/// V multiplication: act_r entries, act_l entries, then the upper triangles
/// of cocycle and mul_v. Ascending index order equals ExtendingDatum::lex_cmp
/// order on these candidates: within a symmetric map the first mismatch of
/// the full entry arrays always sits at some i <= j.
struct DatumCode {
  FieldSpec f;
  std::size_t da = 0, dv = 0;
  std::uint64_t p = 0;

  std::size_t pairs() const { return dv * (dv + 1) / 2; }
  std::size_t ndigits() const { return dv * da * dv + dv * da * da + pairs() * (da + dv); }

  ExtendingDatum decode(const Algebra& a, std::uint64_t index) const {
    std::vector<std::uint64_t> dig = index_digits(index, ndigits(), p);
    std::size_t at = 0;
    auto next = [&] { return Scalar::from_int(f, static_cast<std::int64_t>(dig[at++])); };
    BilinearMap act_r(f, dv, da, dv), act_l(f, dv, da, da);
    BilinearMap cocycle(f, dv, dv, da), mul_v(f, dv, dv, dv);
    for (std::size_t i = 0; i < dv; ++i)
      for (std::size_t j = 0; j < da; ++j)
        for (std::size_t k = 0; k < dv; ++k)
          act_r.set(i, j, k, next());
    for (std::size_t i = 0; i < dv; ++i)
      for (std::size_t j = 0; j < da; ++j)
        for (std::size_t k = 0; k < da; ++k)
          act_l.set(i, j, k, next());
    for (std::size_t i = 0; i < dv; ++i)
      for (std::size_t j = i; j < dv; ++j)
        for (std::size_t k = 0; k < da; ++k) {
          Scalar s = next();
          cocycle.set(i, j, k, s);
          cocycle.set(j, i, k, s);
        }
    for (std::size_t i = 0; i < dv; ++i)
      for (std::size_t j = i; j < dv; ++j)
        for (std::size_t k = 0; k < dv; ++k) {
          Scalar s = next();
          mul_v.set(i, j, k, s);
          mul_v.set(j, i, k, s);
        }
    return ExtendingDatum(a, dv, std::move(act_r), std::move(act_l), std::move(cocycle),
                          std::move(mul_v));
  }

  std::uint64_t encode(const ExtendingDatum& d) const {
    std::vector<std::uint64_t> dig;
    dig.reserve(ndigits());
    for (std::size_t i = 0; i < dv; ++i)
      for (std::size_t j = 0; j < da; ++j)
        for (std::size_t k = 0; k < dv; ++k)
          dig.push_back(d.act_r.at(i, j, k).residue());
    for (std::size_t i = 0; i < dv; ++i)
      for (std::size_t j = 0; j < da; ++j)
        for (std::size_t k = 0; k < da; ++k)
          dig.push_back(d.act_l.at(i, j, k).residue());
    for (std::size_t i = 0; i < dv; ++i)
      for (std::size_t j = i; j < dv; ++j)
        for (std::size_t k = 0; k < da; ++k)
          dig.push_back(d.cocycle.at(i, j, k).residue());
    for (std::size_t i = 0; i < dv; ++i)
      for (std::size_t j = i; j < dv; ++j)
        for (std::size_t k = 0; k < dv; ++k)
          dig.push_back(d.mul_v.at(i, j, k).residue());
    return digits_index(dig, p);
  }
};

/// Digit layout of a flag candidate: D row-major, lambda, a0, alpha0, again
/// matching FlagDatum::lex_cmp order.
struct FlagCode {
  FieldSpec f;
  std::size_t da = 0;
  std::uint64_t p = 0;

  std::size_t ndigits() const { return da * da + 2 * da + 1; }

  FlagDatum decode(std::uint64_t index) const {
    std::vector<std::uint64_t> dig = index_digits(index, ndigits(), p);
    FlagDatum fd{matrix_from_digits(f, da, da, dig.data()),
                 vec_from_digits(f, da, dig.data() + da * da),
                 vec_from_digits(f, da, dig.data() + da * da + da),
                 Scalar::from_int(f, static_cast<std::int64_t>(dig[da * da + 2 * da]))};
    return fd;
  }

  std::uint64_t encode(const FlagDatum& fd) const {
    std::vector<std::uint64_t> dig;
    dig.reserve(ndigits());
    for (std::size_t i = 0; i < da; ++i)
      for (std::size_t j = 0; j < da; ++j)
        dig.push_back(fd.d.at(i, j).residue());
    for (const Scalar& s : fd.lambda)
      dig.push_back(s.residue());
    for (const Scalar& s : fd.a0)
      dig.push_back(s.residue());
    dig.push_back(fd.alpha0.residue());
    return digits_index(dig, p);
  }
};

/// Digit layout of a crossed-system candidate: action entries, then the
/// upper triangle of the cocycle, matching CrossedSystem::lex_cmp order.
struct CrossedCode {
  FieldSpec f;
  std::size_t da = 0, dv = 0;
  std::uint64_t p = 0;

  std::size_t ndigits() const { return dv * da * da + (dv * (dv + 1) / 2) * da; }

  CrossedSystem decode(const Algebra& a, const Algebra& v, std::uint64_t index) const {
    std::vector<std::uint64_t> dig = index_digits(index, ndigits(), p);
    std::size_t at = 0;
    auto next = [&] { return Scalar::from_int(f, static_cast<std::int64_t>(dig[at++])); };
    BilinearMap act(f, dv, da, da), cocycle(f, dv, dv, da);
    for (std::size_t i = 0; i < dv; ++i)
      for (std::size_t j = 0; j < da; ++j)
        for (std::size_t k = 0; k < da; ++k)
          act.set(i, j, k, next());
    for (std::size_t i = 0; i < dv; ++i)
      for (std::size_t j = i; j < dv; ++j)
        for (std::size_t k = 0; k < da; ++k) {
          Scalar s = next();
          cocycle.set(i, j, k, s);
          cocycle.set(j, i, k, s);
        }
    return CrossedSystem(a, v, std::move(act), std::move(cocycle));
  }

  std::uint64_t encode(const CrossedSystem& cs) const {
    std::vector<std::uint64_t> dig;
    dig.reserve(ndigits());
    for (std::size_t i = 0; i < dv; ++i)
      for (std::size_t j = 0; j < da; ++j)
        for (std::size_t k = 0; k < da; ++k)
          dig.push_back(cs.act.at(i, j, k).residue());
    for (std::size_t i = 0; i < dv; ++i)
      for (std::size_t j = i; j < dv; ++j)
        for (std::size_t k = 0; k < da; ++k)
          dig.push_back(cs.cocycle.at(i, j, k).residue());
    return digits_index(dig, p);
  }
};

/// Digit layout of a (D, a0) candidate: D row-major, then a0.
struct OneDimCode {
  FieldSpec f;
  std::size_t da = 0;
  std::uint64_t p = 0;

  std::size_t ndigits() const { return da * da + da; }

  OneDimPair decode(std::uint64_t index) const {
    std::vector<std::uint64_t> dig = index_digits(index, ndigits(), p);
    return OneDimPair{matrix_from_digits(f, da, da, dig.data()),
                      vec_from_digits(f, da, dig.data() + da * da)};
  }

  std::uint64_t encode(const OneDimPair& pair) const {
    std::vector<std::uint64_t> dig;
    dig.reserve(ndigits());
    for (std::size_t i = 0; i < da; ++i)
      for (std::size_t j = 0; j < da; ++j)
        dig.push_back(pair.d.at(i, j).residue());
    for (const Scalar& s : pair.a0)
      dig.push_back(s.residue());
    return digits_index(dig, p);
  }
};

void require_prime_enumeration(FieldSpec f, std::string_view what) {
  if (!f.is_prime_field())
    throw std::invalid_argument(std::string(what) + " enumerates over prime fields");
}

void require_verified(const Algebra& a, std::string_view what) {
  if (a.level() != VerifyLevel::JordanVerified)
    throw std::invalid_argument(std::string(what) + " requires a Jordan-verified algebra");
}

void check_flag_shapes(const Algebra& a, const FlagDatum& fd) {
  std::size_t da = a.dim();
  if (fd.d.rows() != da || fd.d.cols() != da || fd.lambda.size() != da || fd.a0.size() != da)
    throw std::invalid_argument("flag datum shapes do not match the algebra");
  if (!(fd.d.field() == a.field()) || !(fd.alpha0.field() == a.field()))
    throw std::invalid_argument("flag datum over a different field");
}

} // namespace

void set_worker_count(unsigned n) { g_workers.store(n == 0 ? 1 : n); }

unsigned worker_count() { return g_workers.load(); }

bool check_morphism_pair(const ExtendingDatum& d, const ExtendingDatum& d2,
                         const MorphismPair& pair, const CheckMode& mode,
                         ValidationReport* report) {
  if (!(d.a == d2.a) || d.dim_v != d2.dim_v)
    throw std::invalid_argument("morphism pairs relate data over the same algebra and dimension");
  FieldSpec f = d.field();
  std::size_t da = d.a.dim();
  std::size_t dv = d.dim_v;
  if (pair.r.rows() != da || pair.r.cols() != dv || pair.v.rows() != dv || pair.v.cols() != dv)
    throw std::invalid_argument("the morphism pair has inconsistent dimensions");

  ValidationReport rep;
  auto record = [&](std::string axiom, std::vector<std::string> slots) -> AxiomCheck& {
    AxiomCheck c;
    c.axiom = std::move(axiom);
    c.mode = mode;
    c.slot_names = std::move(slots);
    rep.checks.push_back(std::move(c));
    return rep.checks.back();
  };
  auto fail = [&](AxiomCheck& c, std::size_t i, std::size_t dim_i, std::size_t j,
                  std::size_t dim_j) {
    if (!c.passed)
      return;
    c.passed = false;
    c.witness = {unit_vec(f, dim_i, i), unit_vec(f, dim_j, j)};
  };

  // Every defect below is bilinear in its two slots, so basis pairs decide
  // the conditions exactly whatever the requested mode.
  AxiomCheck& m1 = record("M1", {"x", "a"});
  AxiomCheck& m2 = record("M2", {"x", "a"});
  for (std::size_t i = 0; i < dv; ++i) {
    Vec xi = unit_vec(f, dv, i);
    Vec vi = pair.v.col(i);
    Vec ri = pair.r.col(i);
    for (std::size_t j = 0; j < da; ++j) {
      Vec ej = unit_vec(f, da, j);
      Vec lhs1 = d2.act_r.eval(vi, ej);
      Vec rhs1 = pair.v.apply(d.act_r.eval(xi, ej));
      if (!is_zero_vec(sub(lhs1, rhs1)))
        fail(m1, i, dv, j, da);
      Vec lhs2 = d2.act_l.eval(vi, ej);
      Vec rhs2 = sub(add(pair.r.apply(d.act_r.eval(xi, ej)), d.act_l.eval(xi, ej)),
                     d.a.mul(ej, ri));
      if (!is_zero_vec(sub(lhs2, rhs2)))
        fail(m2, i, dv, j, da);
    }
  }

  AxiomCheck& m3 = record("M3", {"x", "y"});
  AxiomCheck& m4 = record("M4", {"x", "y"});
  for (std::size_t i = 0; i < dv; ++i) {
    Vec xi = unit_vec(f, dv, i);
    Vec vi = pair.v.col(i);
    Vec ri = pair.r.col(i);
    for (std::size_t j = 0; j < dv; ++j) {
      Vec yj = unit_vec(f, dv, j);
      Vec vj = pair.v.col(j);
      Vec rj = pair.r.col(j);
      Vec lhs3 = pair.v.apply(d.mul_v.eval(xi, yj));
      Vec rhs3 = add(d2.mul_v.eval(vi, vj),
                     add(d2.act_r.eval(vi, rj), d2.act_r.eval(vj, ri)));
      if (!is_zero_vec(sub(lhs3, rhs3)))
        fail(m3, i, dv, j, dv);
      Vec lhs4 = add(pair.r.apply(d.mul_v.eval(xi, yj)), d.cocycle.eval(xi, yj));
      Vec rhs4 = add(add(d.a.mul(ri, rj), d2.cocycle.eval(vi, vj)),
                     add(d2.act_l.eval(vi, rj), d2.act_l.eval(vj, ri)));
      if (!is_zero_vec(sub(lhs4, rhs4)))
        fail(m4, i, dv, j, dv);
    }
  }

  bool ok = rep.passed();
  if (report)
    report->append(rep);
  return ok;
}

ExtendingDatum transform_extending_structure(const ExtendingDatum& d, const Matrix& r,
                                             const Matrix& v) {
  FieldSpec f = d.field();
  std::size_t da = d.a.dim();
  std::size_t dv = d.dim_v;
  if (r.rows() != da || r.cols() != dv || v.rows() != dv || v.cols() != dv)
    throw std::invalid_argument("the transform pair has inconsistent dimensions");
  std::optional<Matrix> w = v.inverse();
  if (!w)
    throw std::invalid_argument("transform_extending_structure requires an invertible v");

  std::vector<Vec> wx(dv), rwx(dv);
  for (std::size_t i = 0; i < dv; ++i) {
    wx[i] = w->col(i);
    rwx[i] = r.apply(wx[i]);
  }

  BilinearMap act_r(f, dv, da, dv), act_l(f, dv, da, da);
  BilinearMap cocycle(f, dv, dv, da), mul_v(f, dv, dv, dv);
  for (std::size_t i = 0; i < dv; ++i)
    for (std::size_t j = 0; j < da; ++j) {
      Vec ej = unit_vec(f, da, j);
      Vec xa = d.act_r.eval(wx[i], ej);
      Vec ar = v.apply(xa);
      for (std::size_t k = 0; k < dv; ++k)
        act_r.set(i, j, k, ar[k]);
      Vec al = sub(add(r.apply(xa), d.act_l.eval(wx[i], ej)), d.a.mul(ej, rwx[i]));
      for (std::size_t k = 0; k < da; ++k)
        act_l.set(i, j, k, al[k]);
    }
  for (std::size_t i = 0; i < dv; ++i)
    for (std::size_t j = i; j < dv; ++j) {
      Vec xy = d.mul_v.eval(wx[i], wx[j]);
      Vec mv = v.apply(sub(xy, add(d.act_r.eval(wx[i], rwx[j]), d.act_r.eval(wx[j], rwx[i]))));
      for (std::size_t k = 0; k < dv; ++k) {
        mul_v.set(i, j, k, mv[k]);
        mul_v.set(j, i, k, mv[k]);
      }
      Vec fc = add(d.cocycle.eval(wx[i], wx[j]),
                   add(r.apply(xy), d.a.mul(rwx[i], rwx[j])));
      fc = sub(fc, add(r.apply(d.act_r.eval(wx[i], rwx[j])), d.act_l.eval(wx[i], rwx[j])));
      fc = sub(fc, add(r.apply(d.act_r.eval(wx[j], rwx[i])), d.act_l.eval(wx[j], rwx[i])));
      for (std::size_t k = 0; k < da; ++k) {
        cocycle.set(i, j, k, fc[k]);
        cocycle.set(j, i, k, fc[k]);
      }
    }
  return ExtendingDatum(d.a, dv, std::move(act_r), std::move(act_l), std::move(cocycle),
                        std::move(mul_v));
}

std::vector<OrbitClass<ExtendingDatum>> classify_extending_structures(const Algebra& a,
                                                                      std::size_t dim_v,
                                                                      std::uint64_t bound) {
  require_prime_enumeration(a.field(), "classify_extending_structures");
  require_verified(a, "classify_extending_structures");
  FieldSpec f = a.field();
  std::uint64_t p = f.order();
  std::size_t da = a.dim();
  DatumCode code{f, da, dim_v, p};
  std::uint64_t total = require_space("extending-structure candidates", p, code.ndigits(), bound);
  require_space("the (r, v) transform space", p, da * dim_v + dim_v * dim_v, bound);

  CheckMode exh = CheckMode::exhaustive(bound);
  std::vector<std::uint64_t> valid = sharded_collect<std::uint64_t>(
      total, [&](std::uint64_t lo, std::uint64_t hi, std::vector<std::uint64_t>& out) {
        for (std::uint64_t idx = lo; idx < hi; ++idx) {
          ExtendingDatum d = code.decode(a, idx);
          if (validate_extending_structure(d, exh).passed())
            out.push_back(idx);
        }
      });

  std::vector<Matrix> v_list;
  std::uint64_t v_total = pow_sat(p, dim_v * dim_v);
  for (std::uint64_t vi = 0; vi < v_total; ++vi) {
    std::vector<std::uint64_t> dig = index_digits(vi, dim_v * dim_v, p);
    Matrix v = matrix_from_digits(f, dim_v, dim_v, dig.data());
    if (v.invertible())
      v_list.push_back(std::move(v));
  }

  std::uint64_t r_total = pow_sat(p, da * dim_v);
  auto images = [&](std::uint64_t idx, const std::function<void(std::uint64_t)>& emit) {
    ExtendingDatum d = code.decode(a, idx);
    for (const Matrix& v : v_list)
      for (std::uint64_t ri = 0; ri < r_total; ++ri) {
        std::vector<std::uint64_t> dig = index_digits(ri, da * dim_v, p);
        Matrix r = matrix_from_digits(f, da, dim_v, dig.data());
        emit(code.encode(transform_extending_structure(d, r, v)));
      }
  };

  std::vector<OrbitClass<ExtendingDatum>> out;
  for (const Orbit& orbit : group_orbits(valid, images)) {
    ExtendingDatum rep = code.decode(a, orbit.rep);
    if (!validate_extending_structure(rep, exh).passed())
      throw std::logic_error("a classification representative failed revalidation");
    out.push_back({std::move(rep), orbit.size});
  }
  return out;
}

bool FlagDatum::operator==(const FlagDatum& o) const {
  return d == o.d && lambda == o.lambda && a0 == o.a0 && alpha0 == o.alpha0;
}

int FlagDatum::lex_cmp(const FlagDatum& o) const {
  if (d.rows() != o.d.rows() || lambda.size() != o.lambda.size() || a0.size() != o.a0.size())
    throw std::invalid_argument("lex_cmp requires flag data of matching dimensions");
  if (int c = d.lex_cmp(o.d))
    return c;
  if (int c = jordan::lex_cmp(lambda, o.lambda))
    return c;
  if (int c = jordan::lex_cmp(a0, o.a0))
    return c;
  return alpha0.cmp(o.alpha0);
}

FlagDatum zero_flag(const Algebra& a) {
  FieldSpec f = a.field();
  std::size_t da = a.dim();
  return FlagDatum{Matrix(f, da, da), zero_vec(f, da), zero_vec(f, da), Scalar::zero(f)};
}

ExtendingDatum flag_to_datum(const Algebra& a, const FlagDatum& fd) {
  check_flag_shapes(a, fd);
  FieldSpec f = a.field();
  std::size_t da = a.dim();
  BilinearMap act_r(f, 1, da, 1), act_l(f, 1, da, da), cocycle(f, 1, 1, da), mul_v(f, 1, 1, 1);
  for (std::size_t j = 0; j < da; ++j) {
    act_r.set(0, j, 0, fd.lambda[j]);
    for (std::size_t k = 0; k < da; ++k)
      act_l.set(0, j, k, fd.d.at(k, j));
  }
  for (std::size_t k = 0; k < da; ++k)
    cocycle.set(0, 0, k, fd.a0[k]);
  mul_v.set(0, 0, 0, fd.alpha0);
  return ExtendingDatum(a, 1, std::move(act_r), std::move(act_l), std::move(cocycle),
                        std::move(mul_v));
}

Algebra flag_algebra_unchecked(const Algebra& a, const FlagDatum& fd) {
  return build_unified_unchecked(flag_to_datum(a, fd)).product;
}

ValidationReport validate_flag_datum(const Algebra& a, const FlagDatum& fd,
                                     const CheckMode& mode) {
  check_flag_shapes(a, fd);
  if (a.level() != VerifyLevel::JordanVerified)
    throw std::invalid_argument("the base algebra must be Jordan-verified before validating "
                                "a flag datum");
  FieldSpec f = a.field();
  std::size_t da = a.dim();
  ValidationReport rep;

  auto f1 = [&]<class R>(const typename RingOps<R>::Ctx& ctx) {
    auto mul = a.mul_map().template view<R>(ctx);
    auto dop = lift_matrix<R>(ctx, fd.d);
    auto lam = lift_vec<R>(ctx, fd.lambda);
    R zero = RingOps<R>::zero(ctx);
    return [mul, dop, lam, zero](const std::vector<std::vector<R>>& args) {
      const auto& x = args[0];
      auto x2 = mul.eval(x, x);
      auto dx = dop.apply(x);
      auto dx2 = dop.apply(x2);
      auto lhs = vec_add(mul.eval(x, dx2), vec_scale(lin_form(lam, x2, zero), dx));
      auto rhs = vec_add(mul.eval(x2, dx), vec_scale(lin_form(lam, x, zero), dx2));
      return vec_sub(lhs, rhs);
    };
  };
  rep.checks.push_back(check_identity("F1", f, {{"a", da, false}}, mode, f1));

  // F2, F4: linear in the quantified slot, so basis vectors decide them in
  // every mode; the remaining inputs are the datum's constants.
  Vec da0 = fd.d.apply(fd.a0);
  Scalar la0 = dot(f, fd.lambda, fd.a0);
  AxiomCheck f2;
  f2.axiom = "F2";
  f2.mode = mode;
  f2.slot_names = {"a"};
  AxiomCheck f4;
  f4.axiom = "F4";
  f4.mode = mode;
  f4.slot_names = {"a"};
  for (std::size_t j = 0; j < da; ++j) {
    Vec ej = unit_vec(f, da, j);
    Vec a0a = a.mul(fd.a0, ej);
    Vec defect2 = sub(fd.d.apply(a0a), add(a.mul(fd.a0, fd.d.apply(ej)), scale(fd.lambda[j], da0)));
    if (f2.passed && !is_zero_vec(defect2)) {
      f2.passed = false;
      f2.witness = {ej};
    }
    Scalar defect4 = dot(f, fd.lambda, a0a) - la0 * fd.lambda[j];
    if (f4.passed && !defect4.is_zero()) {
      f4.passed = false;
      f4.witness = {ej};
    }
  }
  rep.checks.push_back(f2);

  AxiomCheck f3;
  f3.axiom = "F3";
  f3.mode = mode;
  Vec defect3 = sub(add(fd.d.apply(da0), scale(la0, fd.a0)),
                    add(a.mul(fd.a0, fd.a0), scale(fd.alpha0, da0)));
  f3.passed = is_zero_vec(defect3);
  rep.checks.push_back(f3);

  rep.checks.push_back(f4);

  AxiomCheck f5;
  f5.axiom = "F5";
  f5.mode = mode;
  f5.passed = dot(f, fd.lambda, da0).is_zero();
  rep.checks.push_back(f5);

  Algebra built = flag_algebra_unchecked(a, fd);
  std::vector<Vec> a_units, v_units;
  for (std::size_t i = 0; i < da; ++i)
    a_units.push_back(unit_vec(f, da + 1, i));
  v_units.push_back(unit_vec(f, da + 1, da));
  ValidationReport missing = missing_relation_check(built, a_units, v_units, mode);
  for (AxiomCheck& c : missing.checks)
    c.axiom = "F6:" + c.axiom;
  rep.append(missing);
  return rep;
}

bool flag_equivalent(const Algebra& a, const FlagDatum& fd, const FlagDatum& fd2, const Vec& r,
                     const Scalar& u) {
  check_flag_shapes(a, fd);
  check_flag_shapes(a, fd2);
  if (r.size() != a.dim())
    throw std::invalid_argument("the witness r must be an element of the algebra");
  if (u.is_zero())
    throw std::invalid_argument("flag equivalence requires u != 0");
  FieldSpec f = a.field();
  Scalar two = Scalar::from_int(f, 2);
  Scalar lr = dot(f, fd2.lambda, r);

  if (!(fd.lambda == fd2.lambda))
    return false;
  Matrix rl(f, a.dim(), a.dim());
  for (std::size_t j = 0; j < a.dim(); ++j)
    for (std::size_t k = 0; k < a.dim(); ++k)
      rl.at(k, j) = r[k] * fd2.lambda[j];
  if (fd.d != fd2.d.scale(u).add(mul_by(a, r)).sub(rl))
    return false;
  if (!(fd.alpha0 == u * fd2.alpha0 + two * lr))
    return false;
  Vec a0 = add(scale(u * u, fd2.a0), a.mul(r, r));
  a0 = add(a0, scale(two * u, fd2.d.apply(r)));
  a0 = sub(a0, scale(u * fd2.alpha0, r));
  a0 = sub(a0, scale(two * lr, r));
  return fd.a0 == a0;
}

FlagDatum transform_flag(const Algebra& a, const FlagDatum& fd, const Vec& r, const Scalar& u) {
  check_flag_shapes(a, fd);
  if (r.size() != a.dim())
    throw std::invalid_argument("the witness r must be an element of the algebra");
  if (u.is_zero())
    throw std::invalid_argument("flag equivalence requires u != 0");
  FieldSpec f = a.field();
  Scalar uinv = u.inverse();
  Scalar two = Scalar::from_int(f, 2);
  Scalar lr = dot(f, fd.lambda, r);

  Matrix rl(f, a.dim(), a.dim());
  for (std::size_t j = 0; j < a.dim(); ++j)
    for (std::size_t k = 0; k < a.dim(); ++k)
      rl.at(k, j) = r[k] * fd.lambda[j];
  FlagDatum out{fd.d.sub(mul_by(a, r)).add(rl).scale(uinv), fd.lambda, fd.a0,
                uinv * (fd.alpha0 - two * lr)};
  Vec a0 = add(add(fd.a0, scale(fd.alpha0, r)), a.mul(r, r));
  a0 = sub(a0, scale(two * lr, r));
  a0 = sub(a0, scale(two, fd.d.apply(r)));
  out.a0 = scale(uinv * uinv, a0);
  return out;
}

std::vector<OrbitClass<FlagDatum>> classify_flag(const Algebra& a, std::uint64_t bound) {
  require_prime_enumeration(a.field(), "classify_flag");
  require_verified(a, "classify_flag");
  FieldSpec f = a.field();
  std::uint64_t p = f.order();
  std::size_t da = a.dim();
  FlagCode code{f, da, p};
  std::uint64_t total = require_space("flag candidates", p, code.ndigits(), bound);

  CheckMode exh = CheckMode::exhaustive(bound);
  std::vector<std::uint64_t> valid = sharded_collect<std::uint64_t>(
      total, [&](std::uint64_t lo, std::uint64_t hi, std::vector<std::uint64_t>& out) {
        for (std::uint64_t idx = lo; idx < hi; ++idx) {
          if (validate_flag_datum(a, code.decode(idx), exh).passed())
            out.push_back(idx);
        }
      });

  std::uint64_t r_total = pow_sat(p, da);
  auto images = [&](std::uint64_t idx, const std::function<void(std::uint64_t)>& emit) {
    FlagDatum fd = code.decode(idx);
    for (std::uint64_t ui = 1; ui < p; ++ui) {
      Scalar u = Scalar::from_int(f, static_cast<std::int64_t>(ui));
      for (std::uint64_t ri = 0; ri < r_total; ++ri) {
        std::vector<std::uint64_t> dig = index_digits(ri, da, p);
        emit(code.encode(transform_flag(a, fd, vec_from_digits(f, da, dig.data()), u)));
      }
    }
  };

  std::vector<OrbitClass<FlagDatum>> out;
  for (const Orbit& orbit : group_orbits(valid, images))
    out.push_back({code.decode(orbit.rep), orbit.size});
  return out;
}

bool crossed_cohomologous(const CrossedSystem& cs, const CrossedSystem& cs2, const Matrix& r) {
  if (!(cs.a == cs2.a) || !(cs.v == cs2.v))
    throw std::invalid_argument("cohomologous systems live over the same pair of algebras");
  FieldSpec f = cs.field();
  std::size_t da = cs.a.dim();
  std::size_t dv = cs.v.dim();
  if (r.rows() != da || r.cols() != dv)
    throw std::invalid_argument("the cohomology witness must be dim(A) x dim(V)");

  // Both displayed identities are bilinear, so basis pairs decide them.
  for (std::size_t i = 0; i < dv; ++i) {
    Vec xi = unit_vec(f, dv, i);
    Vec ri = r.col(i);
    for (std::size_t j = 0; j < da; ++j) {
      Vec ej = unit_vec(f, da, j);
      Vec want = sub(cs.act.eval(xi, ej), cs.a.mul(ej, ri));
      if (!is_zero_vec(sub(cs2.act.eval(xi, ej), want)))
        return false;
    }
  }
  for (std::size_t i = 0; i < dv; ++i) {
    Vec xi = unit_vec(f, dv, i);
    Vec ri = r.col(i);
    for (std::size_t j = i; j < dv; ++j) {
      Vec yj = unit_vec(f, dv, j);
      Vec rj = r.col(j);
      Vec want = add(cs.cocycle.eval(xi, yj),
                     add(r.apply(cs.v.mul(xi, yj)), cs.a.mul(ri, rj)));
      want = sub(want, add(cs.act.eval(xi, rj), cs.act.eval(yj, ri)));
      if (!is_zero_vec(sub(cs2.cocycle.eval(xi, yj), want)))
        return false;
    }
  }
  return true;
}

CrossedSystem transform_crossed(const CrossedSystem& cs, const Matrix& r) {
  FieldSpec f = cs.field();
  std::size_t da = cs.a.dim();
  std::size_t dv = cs.v.dim();
  if (r.rows() != da || r.cols() != dv)
    throw std::invalid_argument("the cohomology witness must be dim(A) x dim(V)");

  BilinearMap act(f, dv, da, da), cocycle(f, dv, dv, da);
  for (std::size_t i = 0; i < dv; ++i) {
    Vec xi = unit_vec(f, dv, i);
    Vec ri = r.col(i);
    for (std::size_t j = 0; j < da; ++j) {
      Vec ej = unit_vec(f, da, j);
      Vec out = sub(cs.act.eval(xi, ej), cs.a.mul(ej, ri));
      for (std::size_t k = 0; k < da; ++k)
        act.set(i, j, k, out[k]);
    }
  }
  for (std::size_t i = 0; i < dv; ++i) {
    Vec xi = unit_vec(f, dv, i);
    Vec ri = r.col(i);
    for (std::size_t j = i; j < dv; ++j) {
      Vec yj = unit_vec(f, dv, j);
      Vec rj = r.col(j);
      Vec out = add(cs.cocycle.eval(xi, yj),
                    add(r.apply(cs.v.mul(xi, yj)), cs.a.mul(ri, rj)));
      out = sub(out, add(cs.act.eval(xi, rj), cs.act.eval(yj, ri)));
      for (std::size_t k = 0; k < da; ++k) {
        cocycle.set(i, j, k, out[k]);
        cocycle.set(j, i, k, out[k]);
      }
    }
  }
  return CrossedSystem(cs.a, cs.v, std::move(act), std::move(cocycle));
}

std::optional<Matrix> search_cohomology_witness(const CrossedSystem& cs,
                                                const CrossedSystem& cs2, std::uint64_t bound) {
  if (!(cs.a == cs2.a) || !(cs.v == cs2.v))
    throw std::invalid_argument("cohomologous systems live over the same pair of algebras");
  FieldSpec f = cs.field();
  require_prime_enumeration(f, "search_cohomology_witness");
  std::uint64_t p = f.order();
  std::size_t da = cs.a.dim();
  std::size_t dv = cs.v.dim();
  std::uint64_t total = require_space("the witness search space", p, da * dv, bound);
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    std::vector<std::uint64_t> dig = index_digits(idx, da * dv, p);
    Matrix r = matrix_from_digits(f, da, dv, dig.data());
    if (crossed_cohomologous(cs, cs2, r))
      return r;
  }
  return std::nullopt;
}

std::vector<OrbitClass<CrossedSystem>> h2_nab(const Algebra& v, const Algebra& a,
                                              std::uint64_t bound) {
  if (!(v.field() == a.field()))
    throw std::invalid_argument("h2_nab requires algebras over the same field");
  require_prime_enumeration(a.field(), "h2_nab");
  require_verified(a, "h2_nab");
  require_verified(v, "h2_nab");
  FieldSpec f = a.field();
  std::uint64_t p = f.order();
  std::size_t da = a.dim();
  std::size_t dv = v.dim();
  CrossedCode code{f, da, dv, p};
  std::uint64_t total = require_space("crossed-system candidates", p, code.ndigits(), bound);

  CheckMode exh = CheckMode::exhaustive(bound);
  std::vector<std::uint64_t> valid = sharded_collect<std::uint64_t>(
      total, [&](std::uint64_t lo, std::uint64_t hi, std::vector<std::uint64_t>& out) {
        for (std::uint64_t idx = lo; idx < hi; ++idx) {
          CrossedSystem cs = code.decode(a, v, idx);
          if (validate_crossed_system(cs, exh).passed())
            out.push_back(idx);
        }
      });

  std::uint64_t r_total = pow_sat(p, da * dv);
  auto images = [&](std::uint64_t idx, const std::function<void(std::uint64_t)>& emit) {
    CrossedSystem cs = code.decode(a, v, idx);
    for (std::uint64_t ri = 0; ri < r_total; ++ri) {
      std::vector<std::uint64_t> dig = index_digits(ri, da * dv, p);
      emit(code.encode(transform_crossed(cs, matrix_from_digits(f, da, dv, dig.data()))));
    }
  };

  std::vector<OrbitClass<CrossedSystem>> out;
  for (const Orbit& orbit : group_orbits(valid, images)) {
    CrossedSystem rep = code.decode(a, v, orbit.rep);
    if (!validate_crossed_system(rep, exh).passed())
      throw std::logic_error("a cohomology representative failed revalidation");
    out.push_back({std::move(rep), orbit.size});
  }
  return out;
}

ValidationReport validate_onedim_pair(const Algebra& a, const Matrix& d, const Vec& a0, int eps,
                                      const CheckMode& mode) {
  std::size_t da = a.dim();
  if (d.rows() != da || d.cols() != da || a0.size() != da)
    throw std::invalid_argument("pair shapes do not match the algebra");
  if (!(d.field() == a.field()))
    throw std::invalid_argument("pair over a different field");
  require_verified(a, "validate_onedim_pair");
  FieldSpec f = a.field();
  Scalar es = Scalar::from_int(f, eps);
  ValidationReport rep;

  auto od1 = [&]<class R>(const typename RingOps<R>::Ctx& ctx) {
    auto mul = a.mul_map().template view<R>(ctx);
    auto dop = lift_matrix<R>(ctx, d);
    return [mul, dop](const std::vector<std::vector<R>>& args) {
      const auto& x = args[0];
      auto x2 = mul.eval(x, x);
      return vec_sub(mul.eval(x, dop.apply(x2)), mul.eval(x2, dop.apply(x)));
    };
  };
  rep.checks.push_back(check_identity("OD1", f, {{"a", da, false}}, mode, od1));

  // OD2 is linear in its slot, OD3 has none; both are exact basis checks.
  AxiomCheck od2;
  od2.axiom = "OD2";
  od2.mode = mode;
  od2.slot_names = {"a"};
  Vec da0 = d.apply(a0);
  for (std::size_t j = 0; j < da; ++j) {
    Vec ej = unit_vec(f, da, j);
    Vec defect = sub(d.apply(a.mul(a0, ej)), a.mul(a0, d.apply(ej)));
    if (!is_zero_vec(defect)) {
      od2.passed = false;
      od2.witness = {ej};
      break;
    }
  }
  rep.checks.push_back(od2);

  AxiomCheck od3;
  od3.axiom = "OD3";
  od3.mode = mode;
  od3.passed = is_zero_vec(sub(d.apply(da0), add(a.mul(a0, a0), scale(es, da0))));
  rep.checks.push_back(od3);

  auto od4 = [&]<class R>(const typename RingOps<R>::Ctx& ctx) {
    auto mul = a.mul_map().template view<R>(ctx);
    auto dop = lift_matrix<R>(ctx, d);
    auto c0 = lift_vec<R>(ctx, a0);
    R e = RingOps<R>::from_scalar(ctx, es);
    R e2 = e * e;
    R two = RingOps<R>::from_scalar(ctx, Scalar::from_int(f, 2));
    R three = RingOps<R>::from_scalar(ctx, Scalar::from_int(f, 3));
    return [mul, dop, c0, e, e2, two, three](const std::vector<std::vector<R>>& args) {
      const auto& x = args[0];
      auto x2 = mul.eval(x, x);
      auto dx = dop.apply(x);
      auto d2x = dop.apply(dx);
      auto lhs = vec_scale(two, mul.eval(x, d2x));
      lhs = vec_add(lhs, mul.eval(x, dop.apply(c0)));
      lhs = vec_add(lhs, vec_scale(e, mul.eval(c0, x)));
      lhs = vec_add(lhs, vec_scale(e2, dx));
      lhs = vec_add(lhs, dop.apply(dop.apply(x2)));
      lhs = vec_add(lhs, vec_scale(two, dop.apply(d2x)));
      auto rhs = mul.eval(x2, c0);
      rhs = vec_add(rhs, vec_scale(two, mul.eval(dx, dx)));
      rhs = vec_add(rhs, vec_scale(three, mul.eval(c0, dx)));
      rhs = vec_add(rhs, vec_scale(e, dop.apply(x2)));
      rhs = vec_add(rhs, vec_scale(three, vec_scale(e, d2x)));
      return vec_sub(lhs, rhs);
    };
  };
  rep.checks.push_back(check_identity("OD4", f, {{"a", da, false}}, mode, od4));

  auto od5 = [&]<class R>(const typename RingOps<R>::Ctx& ctx) {
    auto mul = a.mul_map().template view<R>(ctx);
    auto dop = lift_matrix<R>(ctx, d);
    auto c0 = lift_vec<R>(ctx, a0);
    R e = RingOps<R>::from_scalar(ctx, es);
    R two = RingOps<R>::from_scalar(ctx, Scalar::from_int(f, 2));
    return [mul, dop, c0, e, two](const std::vector<std::vector<R>>& args) {
      const auto& x = args[0];
      const auto& b = args[1];
      auto x2 = mul.eval(x, x);
      auto dx = dop.apply(x);
      auto db = dop.apply(b);
      auto bx = mul.eval(b, x);
      auto lhs = vec_scale(two, mul.eval(mul.eval(dx, b), x));
      lhs = vec_add(lhs, mul.eval(mul.eval(c0, b), x));
      lhs = vec_add(lhs, vec_scale(e, mul.eval(x, db)));
      lhs = vec_add(lhs, dop.apply(mul.eval(x2, b)));
      lhs = vec_add(lhs, vec_scale(two, dop.apply(mul.eval(dx, b))));
      auto rhs = mul.eval(x2, db);
      rhs = vec_add(rhs, vec_scale(two, mul.eval(dx, bx)));
      rhs = vec_add(rhs, vec_scale(two, mul.eval(dx, db)));
      rhs = vec_add(rhs, mul.eval(c0, bx));
      rhs = vec_add(rhs, vec_scale(e, dop.apply(bx)));
      return vec_sub(lhs, rhs);
    };
  };
  rep.checks.push_back(
      check_identity("OD5", f, {{"a", da, false}, {"b", da, true}}, mode, od5));
  return rep;
}

std::vector<OrbitClass<OneDimPair>> h2_onedim(const Algebra& a, int eps, std::uint64_t bound) {
  if (eps != 0 && eps != 1)
    throw std::invalid_argument("eps must be 0 or 1");
  require_prime_enumeration(a.field(), "h2_onedim");
  require_verified(a, "h2_onedim");
  FieldSpec f = a.field();
  std::uint64_t p = f.order();
  std::size_t da = a.dim();
  OneDimCode code{f, da, p};
  std::uint64_t total = require_space("one-dimensional pair candidates", p, code.ndigits(), bound);

  CheckMode exh = CheckMode::exhaustive(bound);
  std::vector<std::uint64_t> valid = sharded_collect<std::uint64_t>(
      total, [&](std::uint64_t lo, std::uint64_t hi, std::vector<std::uint64_t>& out) {
        for (std::uint64_t idx = lo; idx < hi; ++idx) {
          OneDimPair pair = code.decode(idx);
          if (validate_onedim_pair(a, pair.d, pair.a0, eps, exh).passed())
            out.push_back(idx);
        }
      });

  Scalar es = Scalar::from_int(f, eps);
  Scalar two = Scalar::from_int(f, 2);
  std::uint64_t r_total = pow_sat(p, da);
  auto images = [&](std::uint64_t idx, const std::function<void(std::uint64_t)>& emit) {
    OneDimPair pair = code.decode(idx);
    for (std::uint64_t ri = 0; ri < r_total; ++ri) {
      std::vector<std::uint64_t> dig = index_digits(ri, da, p);
      Vec r = vec_from_digits(f, da, dig.data());
      OneDimPair moved{pair.d.sub(mul_by(a, r)),
                       add(pair.a0, sub(add(a.mul(r, r), scale(es, r)),
                                        scale(two, pair.d.apply(r))))};
      emit(code.encode(moved));
    }
  };

  std::vector<OrbitClass<OneDimPair>> out;
  for (const Orbit& orbit : group_orbits(valid, images))
    out.push_back({code.decode(orbit.rep), orbit.size});
  return out;
}

bool matrix_cubic_satisfied(const Matrix& d) {
  if (d.rows() != d.cols())
    throw std::invalid_argument("matrix_cubic_satisfied requires a square matrix");
  FieldSpec f = d.field();
  Matrix d2 = d.mul(d);
  Matrix d3 = d2.mul(d);
  return d3.scale(Scalar::from_int(f, 2)).sub(d2.scale(Scalar::from_int(f, 3))).add(d).is_zero();
}

std::vector<Matrix> solve_matrix_cubic(std::size_t n, FieldSpec f, std::uint64_t bound) {
  require_prime_enumeration(f, "solve_matrix_cubic");
  std::uint64_t p = f.order();
  std::uint64_t total = require_space("the matrix search space", p, n * n, bound);
  return sharded_collect<Matrix>(
      total, [&](std::uint64_t lo, std::uint64_t hi, std::vector<Matrix>& out) {
        for (std::uint64_t idx = lo; idx < hi; ++idx) {
          std::vector<std::uint64_t> dig = index_digits(idx, n * n, p);
          Matrix d = matrix_from_digits(f, n, n, dig.data());
          if (matrix_cubic_satisfied(d))
            out.push_back(std::move(d));
        }
      });
}

} // namespace jordan
