#include "jordan/io.hpp"

#include <array>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <utility>

namespace jordan {

ParseError::ParseError(std::size_t line, const std::string& message)
    : std::runtime_error(message), line_(line) {}

namespace {

struct Line {
  std::size_t no = 0;
  std::vector<std::string> tokens;
};

std::vector<Line> tokenize(const std::string& text) {
  std::vector<Line> lines;
  std::istringstream in(text);
  std::string raw;
  std::size_t no = 0;
  while (std::getline(in, raw)) {
    ++no;
    std::size_t hash = raw.find('#');
    if (hash != std::string::npos)
      raw.erase(hash);
    std::istringstream ls(raw);
    Line line;
    line.no = no;
    std::string tok;
    while (ls >> tok)
      line.tokens.push_back(std::move(tok));
    if (!line.tokens.empty())
      lines.push_back(std::move(line));
  }
  return lines;
}

[[noreturn]] void fail(const Line& line, const std::string& message) {
  throw ParseError(line.no, message);
}

void expect_tokens(const Line& line, std::size_t n) {
  if (line.tokens.size() != n)
    fail(line, "'" + line.tokens[0] + "' expects " + std::to_string(n - 1) +
                   (n == 2 ? " argument" : " arguments"));
}

std::uint64_t parse_unsigned(const Line& line, const std::string& tok) {
  if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos)
    fail(line, "expected a non-negative integer, got '" + tok + "'");
  try {
    return std::stoull(tok);
  } catch (const std::exception&) {
    fail(line, "integer out of range: '" + tok + "'");
  }
}

std::size_t parse_index(const Line& line, const std::string& tok, std::size_t bound,
                        const char* slot) {
  std::uint64_t v = parse_unsigned(line, tok);
  if (v >= bound)
    fail(line, std::string(slot) + " index " + tok + " out of range (dimension " +
                   std::to_string(bound) + ")");
  return static_cast<std::size_t>(v);
}

Scalar parse_scalar(const Line& line, const std::string& tok, const FieldSpec& f) {
  try {
    return Scalar::parse(f, tok);
  } catch (const std::exception& e) {
    fail(line, e.what());
  }
}

using SeenKeys = std::set<std::array<std::size_t, 3>>;

/// One sparse-entry directive `name i j k s` targeting a bilinear map;
/// symmetric targets require i <= j and store both orders.
struct SparseTarget {
  BilinearMap* map;
  std::size_t bound1, bound2, bound_out;
  bool symmetric;
};

void apply_entry(const Line& line, const SparseTarget& t, SeenKeys& seen, const FieldSpec& f) {
  expect_tokens(line, 5);
  std::size_t i = parse_index(line, line.tokens[1], t.bound1, "first");
  std::size_t j = parse_index(line, line.tokens[2], t.bound2, "second");
  std::size_t k = parse_index(line, line.tokens[3], t.bound_out, "output");
  if (t.symmetric && i > j)
    fail(line, "'" + line.tokens[0] + "' entries require i <= j");
  if (!seen.insert({i, j, k}).second)
    fail(line, "duplicate '" + line.tokens[0] + "' entry (" + line.tokens[1] + ", " +
                   line.tokens[2] + ", " + line.tokens[3] + ")");
  Scalar s = parse_scalar(line, line.tokens[4], f);
  t.map->set(i, j, k, s);
  if (t.symmetric)
    t.map->set(j, i, k, s);
}

Algebra resolve_ref(const Line& line, const AlgebraResolver& resolve, const std::string& ref) {
  if (!resolve)
    fail(line, "no algebra resolver provided for reference '" + ref + "'");
  try {
    return resolve(ref);
  } catch (const std::runtime_error& e) {
    fail(line, e.what());
  }
}

void append_entries(std::ostringstream& out, const char* name, const BilinearMap& m,
                    bool symmetric) {
  for (std::size_t i = 0; i < m.dim1(); ++i)
    for (std::size_t j = symmetric ? i : 0; j < m.dim2(); ++j)
      for (std::size_t k = 0; k < m.dim_out(); ++k)
        if (!m.at(i, j, k).is_zero())
          out << name << ' ' << i << ' ' << j << ' ' << k << ' ' << m.at(i, j, k).to_string()
              << '\n';
}

/// Consumes `rows` data lines of `cols` scalars starting at lines[idx].
Matrix read_block(const std::vector<Line>& lines, std::size_t& idx, const Line& header,
                  const FieldSpec& f, std::size_t rows, std::size_t cols) {
  if (cols == 0)
    return Matrix(f, rows, 0);
  if (rows == 0)
    return Matrix(f, 0, cols);
  std::vector<Vec> data;
  for (std::size_t r = 0; r < rows; ++r) {
    if (idx >= lines.size())
      fail(header, "'" + header.tokens[0] + "' block expects " + std::to_string(rows) +
                       " rows, got " + std::to_string(r));
    const Line& line = lines[idx++];
    if (line.tokens.size() != cols)
      fail(line, "expected " + std::to_string(cols) + " entries, got " +
                     std::to_string(line.tokens.size()));
    Vec row;
    row.reserve(cols);
    for (const std::string& tok : line.tokens)
      row.push_back(parse_scalar(line, tok, f));
    data.push_back(std::move(row));
  }
  return Matrix::from_rows(f, data);
}

std::string field_header(const FieldSpec& f) {
  if (f.is_prime_field())
    return "field GF " + std::to_string(f.characteristic());
  return "field Q";
}

} // namespace

Algebra parse_algebra(const std::string& text) {
  std::optional<FieldSpec> field;
  std::optional<std::size_t> dim;
  std::optional<BilinearMap> mul;
  SeenKeys seen;
  for (const Line& line : tokenize(text)) {
    const std::string& head = line.tokens[0];
    if (head == "field") {
      if (field)
        fail(line, "duplicate 'field' directive");
      if (line.tokens.size() == 2 && line.tokens[1] == "Q") {
        field = FieldSpec::rationals();
      } else if (line.tokens.size() == 3 && line.tokens[1] == "GF") {
        std::uint64_t p = parse_unsigned(line, line.tokens[2]);
        try {
          field = FieldSpec::prime(p);
        } catch (const std::exception& e) {
          fail(line, e.what());
        }
      } else {
        fail(line, "expected 'field Q' or 'field GF <p>'");
      }
    } else if (head == "dim") {
      if (dim)
        fail(line, "duplicate 'dim' directive");
      expect_tokens(line, 2);
      dim = static_cast<std::size_t>(parse_unsigned(line, line.tokens[1]));
    } else if (head == "c") {
      if (!field || !dim)
        fail(line, "'c' entry before 'field' and 'dim'");
      if (!mul)
        mul.emplace(*field, *dim, *dim, *dim);
      apply_entry(line, {&*mul, *dim, *dim, *dim, true}, seen, *field);
    } else {
      fail(line, "unknown directive '" + head + "'");
    }
  }
  if (!field)
    throw ParseError(0, "missing 'field' directive");
  if (!dim)
    throw ParseError(0, "missing 'dim' directive");
  if (!mul)
    mul.emplace(*field, *dim, *dim, *dim);
  return Algebra(*field, *dim, *mul);
}

std::string serialize_algebra(const Algebra& a) {
  std::ostringstream out;
  out << field_header(a.field()) << '\n';
  out << "dim " << a.dim() << '\n';
  append_entries(out, "c", a.mul_map(), true);
  return out.str();
}

Matrix parse_matrix(const std::string& text, const FieldSpec& f, std::size_t rows,
                    std::size_t cols) {
  std::vector<Line> lines = tokenize(text);
  if (cols == 0) {
    if (!lines.empty())
      fail(lines.front(), "expected no entries for a 0-column matrix");
    return Matrix(f, rows, 0);
  }
  if (lines.size() != rows)
    throw ParseError(lines.empty() ? 0 : lines.back().no,
                     "expected " + std::to_string(rows) + " rows, got " +
                         std::to_string(lines.size()));
  if (rows == 0)
    return Matrix(f, 0, cols);
  std::vector<Vec> data;
  for (const Line& line : lines) {
    if (line.tokens.size() != cols)
      fail(line, "expected " + std::to_string(cols) + " entries, got " +
                     std::to_string(line.tokens.size()));
    Vec row;
    row.reserve(cols);
    for (const std::string& tok : line.tokens)
      row.push_back(parse_scalar(line, tok, f));
    data.push_back(std::move(row));
  }
  return Matrix::from_rows(f, data);
}

std::vector<Vec> parse_basis(const std::string& text, const FieldSpec& f, std::size_t n) {
  std::vector<Vec> out;
  for (const Line& line : tokenize(text)) {
    if (line.tokens.size() != n)
      fail(line, "expected " + std::to_string(n) + " entries, got " +
                     std::to_string(line.tokens.size()));
    Vec v;
    v.reserve(n);
    for (const std::string& tok : line.tokens)
      v.push_back(parse_scalar(line, tok, f));
    out.push_back(std::move(v));
  }
  return out;
}

ExtendingDatum parse_datum(const std::string& text, const AlgebraResolver& resolve) {
  std::optional<Algebra> a;
  std::optional<std::size_t> dim_v;
  std::optional<BilinearMap> act_r, act_l, cocycle, mul_v;
  SeenKeys seen_actr, seen_actl, seen_f, seen_mulv;
  auto maps_ready = [&](const Line& line) {
    if (!a || !dim_v)
      fail(line, "'" + line.tokens[0] + "' entry before 'A' and 'dimV'");
    if (!act_r) {
      std::size_t da = a->dim();
      std::size_t dv = *dim_v;
      FieldSpec f = a->field();
      act_r.emplace(f, dv, da, dv);
      act_l.emplace(f, dv, da, da);
      cocycle.emplace(f, dv, dv, da);
      mul_v.emplace(f, dv, dv, dv);
    }
  };
  for (const Line& line : tokenize(text)) {
    const std::string& head = line.tokens[0];
    if (head == "A") {
      if (a)
        fail(line, "duplicate 'A' directive");
      expect_tokens(line, 2);
      a = resolve_ref(line, resolve, line.tokens[1]);
    } else if (head == "dimV") {
      if (dim_v)
        fail(line, "duplicate 'dimV' directive");
      expect_tokens(line, 2);
      dim_v = static_cast<std::size_t>(parse_unsigned(line, line.tokens[1]));
    } else if (head == "actr") {
      maps_ready(line);
      apply_entry(line, {&*act_r, *dim_v, a->dim(), *dim_v, false}, seen_actr, a->field());
    } else if (head == "actl") {
      maps_ready(line);
      apply_entry(line, {&*act_l, *dim_v, a->dim(), a->dim(), false}, seen_actl, a->field());
    } else if (head == "f") {
      maps_ready(line);
      apply_entry(line, {&*cocycle, *dim_v, *dim_v, a->dim(), true}, seen_f, a->field());
    } else if (head == "mulv") {
      maps_ready(line);
      apply_entry(line, {&*mul_v, *dim_v, *dim_v, *dim_v, true}, seen_mulv, a->field());
    } else {
      fail(line, "unknown directive '" + head + "'");
    }
  }
  if (!a)
    throw ParseError(0, "missing 'A' directive");
  if (!dim_v)
    throw ParseError(0, "missing 'dimV' directive");
  if (!act_r) {
    std::size_t da = a->dim();
    std::size_t dv = *dim_v;
    FieldSpec f = a->field();
    act_r.emplace(f, dv, da, dv);
    act_l.emplace(f, dv, da, da);
    cocycle.emplace(f, dv, dv, da);
    mul_v.emplace(f, dv, dv, dv);
  }
  return ExtendingDatum(std::move(*a), *dim_v, std::move(*act_r), std::move(*act_l),
                        std::move(*cocycle), std::move(*mul_v));
}

std::string serialize_datum(const ExtendingDatum& d, const std::string& algebra_ref) {
  std::ostringstream out;
  out << "A " << algebra_ref << '\n';
  out << "dimV " << d.dim_v << '\n';
  append_entries(out, "actr", d.act_r, false);
  append_entries(out, "actl", d.act_l, false);
  append_entries(out, "f", d.cocycle, true);
  append_entries(out, "mulv", d.mul_v, true);
  return out.str();
}

CrossedSystem parse_crossed(const std::string& text, const AlgebraResolver& resolve) {
  std::optional<Algebra> a, v;
  std::optional<BilinearMap> act, cocycle;
  SeenKeys seen_actl, seen_f;
  auto maps_ready = [&](const Line& line) {
    if (!a || !v)
      fail(line, "'" + line.tokens[0] + "' entry before 'A' and 'V'");
    if (!act) {
      act.emplace(a->field(), v->dim(), a->dim(), a->dim());
      cocycle.emplace(a->field(), v->dim(), v->dim(), a->dim());
    }
  };
  for (const Line& line : tokenize(text)) {
    const std::string& head = line.tokens[0];
    if (head == "A") {
      if (a)
        fail(line, "duplicate 'A' directive");
      expect_tokens(line, 2);
      a = resolve_ref(line, resolve, line.tokens[1]);
    } else if (head == "V") {
      if (v)
        fail(line, "duplicate 'V' directive");
      expect_tokens(line, 2);
      v = resolve_ref(line, resolve, line.tokens[1]);
    } else if (head == "actl") {
      maps_ready(line);
      apply_entry(line, {&*act, v->dim(), a->dim(), a->dim(), false}, seen_actl, a->field());
    } else if (head == "f") {
      maps_ready(line);
      apply_entry(line, {&*cocycle, v->dim(), v->dim(), a->dim(), true}, seen_f, a->field());
    } else {
      fail(line, "unknown directive '" + head + "'");
    }
  }
  if (!a)
    throw ParseError(0, "missing 'A' directive");
  if (!v)
    throw ParseError(0, "missing 'V' directive");
  if (!act) {
    act.emplace(a->field(), v->dim(), a->dim(), a->dim());
    cocycle.emplace(a->field(), v->dim(), v->dim(), a->dim());
  }
  try {
    return CrossedSystem(std::move(*a), std::move(*v), std::move(*act), std::move(*cocycle));
  } catch (const std::invalid_argument& e) {
    throw ParseError(0, e.what());
  }
}

std::string serialize_crossed(const CrossedSystem& cs, const std::string& a_ref,
                              const std::string& v_ref) {
  std::ostringstream out;
  out << "A " << a_ref << '\n';
  out << "V " << v_ref << '\n';
  append_entries(out, "actl", cs.act, false);
  append_entries(out, "f", cs.cocycle, true);
  return out.str();
}

Extension parse_extension(const std::string& text, const AlgebraResolver& resolve) {
  std::vector<Line> lines = tokenize(text);
  std::optional<Algebra> e, a, v;
  std::optional<Matrix> incl, proj;
  std::size_t idx = 0;
  while (idx < lines.size()) {
    const Line& line = lines[idx++];
    const std::string& head = line.tokens[0];
    if (head == "E" || head == "A" || head == "V") {
      std::optional<Algebra>& slot = head == "E" ? e : head == "A" ? a : v;
      if (slot)
        fail(line, "duplicate '" + head + "' directive");
      expect_tokens(line, 2);
      slot = resolve_ref(line, resolve, line.tokens[1]);
    } else if (head == "i" || head == "pi") {
      if (!e || !a || !v)
        fail(line, "'" + head + "' block before 'E', 'A' and 'V'");
      std::optional<Matrix>& slot = head == "i" ? incl : proj;
      if (slot)
        fail(line, "duplicate '" + head + "' block");
      expect_tokens(line, 1);
      if (head == "i")
        slot = read_block(lines, idx, line, e->field(), e->dim(), a->dim());
      else
        slot = read_block(lines, idx, line, e->field(), v->dim(), e->dim());
    } else {
      fail(line, "unknown directive '" + head + "'");
    }
  }
  if (!e)
    throw ParseError(0, "missing 'E' directive");
  if (!a)
    throw ParseError(0, "missing 'A' directive");
  if (!v)
    throw ParseError(0, "missing 'V' directive");
  if (!incl)
    throw ParseError(0, "missing 'i' block");
  if (!proj)
    throw ParseError(0, "missing 'pi' block");
  return Extension{std::move(*e), std::move(*a), std::move(*v), std::move(*incl),
                   std::move(*proj)};
}

std::pair<Algebra, std::vector<Matrix>> parse_action(const std::string& text,
                                                     const AlgebraResolver& resolve) {
  std::vector<Line> lines = tokenize(text);
  std::optional<Algebra> a;
  std::vector<Matrix> gens;
  std::size_t idx = 0;
  while (idx < lines.size()) {
    const Line& line = lines[idx++];
    const std::string& head = line.tokens[0];
    if (head == "A") {
      if (a)
        fail(line, "duplicate 'A' directive");
      expect_tokens(line, 2);
      a = resolve_ref(line, resolve, line.tokens[1]);
    } else if (head == "gen") {
      if (!a)
        fail(line, "'gen' block before 'A'");
      expect_tokens(line, 1);
      gens.push_back(read_block(lines, idx, line, a->field(), a->dim(), a->dim()));
    } else {
      fail(line, "unknown directive '" + head + "'");
    }
  }
  if (!a)
    throw ParseError(0, "missing 'A' directive");
  return {std::move(*a), std::move(gens)};
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw std::runtime_error("cannot open file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

namespace {

AlgebraResolver file_resolver(const std::filesystem::path& path) {
  std::filesystem::path dir = path.parent_path();
  return [dir](const std::string& ref) {
    std::filesystem::path rp(ref);
    if (rp.is_relative())
      rp = dir / rp;
    return load_algebra(rp);
  };
}

[[noreturn]] void rethrow_at(const std::filesystem::path& path, const ParseError& e) {
  std::string where = path.string() + ":";
  if (e.line() > 0)
    where += std::to_string(e.line()) + ":";
  throw ParseError(e.line(), where + " " + e.what());
}

} // namespace

Algebra load_algebra(const std::filesystem::path& path) {
  std::string text = read_text_file(path);
  try {
    return parse_algebra(text);
  } catch (const ParseError& e) {
    rethrow_at(path, e);
  }
}

ExtendingDatum load_datum(const std::filesystem::path& path) {
  std::string text = read_text_file(path);
  try {
    return parse_datum(text, file_resolver(path));
  } catch (const ParseError& e) {
    rethrow_at(path, e);
  }
}

CrossedSystem load_crossed(const std::filesystem::path& path) {
  std::string text = read_text_file(path);
  try {
    return parse_crossed(text, file_resolver(path));
  } catch (const ParseError& e) {
    rethrow_at(path, e);
  }
}

Extension load_extension(const std::filesystem::path& path) {
  std::string text = read_text_file(path);
  try {
    return parse_extension(text, file_resolver(path));
  } catch (const ParseError& e) {
    rethrow_at(path, e);
  }
}

std::pair<Algebra, std::vector<Matrix>> load_action(const std::filesystem::path& path) {
  std::string text = read_text_file(path);
  try {
    return parse_action(text, file_resolver(path));
  } catch (const ParseError& e) {
    rethrow_at(path, e);
  }
}

Matrix load_matrix(const std::filesystem::path& path, const FieldSpec& f, std::size_t rows,
                   std::size_t cols) {
  std::string text = read_text_file(path);
  try {
    return parse_matrix(text, f, rows, cols);
  } catch (const ParseError& e) {
    rethrow_at(path, e);
  }
}

std::vector<Vec> load_basis(const std::filesystem::path& path, const FieldSpec& f,
                            std::size_t n) {
  std::string text = read_text_file(path);
  try {
    return parse_basis(text, f, n);
  } catch (const ParseError& e) {
    rethrow_at(path, e);
  }
}

} // namespace jordan
