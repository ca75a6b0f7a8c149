#include "jordan/linalg.hpp"

#include <sstream>
#include <stdexcept>

namespace jordan {

namespace {

void check_same_dim(const Vec& a, const Vec& b) {
  if (a.size() != b.size())
    throw std::invalid_argument("vector dimension mismatch: " + std::to_string(a.size()) +
                                " vs " + std::to_string(b.size()));
}

} // namespace

Vec zero_vec(FieldSpec f, std::size_t n) {
  return Vec(n, Scalar::zero(f));
}

Vec unit_vec(FieldSpec f, std::size_t n, std::size_t i) {
  Vec v = zero_vec(f, n);
  v.at(i) = Scalar::one(f);
  return v;
}

bool is_zero_vec(const Vec& v) {
  for (const Scalar& s : v)
    if (!s.is_zero())
      return false;
  return true;
}

Vec add(const Vec& a, const Vec& b) {
  check_same_dim(a, b);
  Vec r(a);
  for (std::size_t i = 0; i < r.size(); ++i)
    r[i] += b[i];
  return r;
}

Vec sub(const Vec& a, const Vec& b) {
  check_same_dim(a, b);
  Vec r(a);
  for (std::size_t i = 0; i < r.size(); ++i)
    r[i] -= b[i];
  return r;
}

Vec neg(const Vec& a) {
  Vec r(a);
  for (Scalar& s : r)
    s = -s;
  return r;
}

Vec scale(const Scalar& c, const Vec& v) {
  Vec r(v);
  for (Scalar& s : r)
    s *= c;
  return r;
}

int lex_cmp(const Vec& a, const Vec& b) {
  check_same_dim(a, b);
  for (std::size_t i = 0; i < a.size(); ++i) {
    int c = a[i].cmp(b[i]);
    if (c != 0)
      return c;
  }
  return 0;
}

std::string vec_to_string(const Vec& v) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i)
      os << ", ";
    os << v[i];
  }
  os << ")";
  return os.str();
}

Matrix::Matrix(FieldSpec f, std::size_t rows, std::size_t cols)
    : f_(f), rows_(rows), cols_(cols), a_(rows * cols, Scalar::zero(f)) {}

Matrix Matrix::identity(FieldSpec f, std::size_t n) {
  Matrix m(f, n, n);
  for (std::size_t i = 0; i < n; ++i)
    m.at(i, i) = Scalar::one(f);
  return m;
}

Matrix Matrix::from_rows(FieldSpec f, const std::vector<Vec>& rows) {
  std::size_t cols = rows.empty() ? 0 : rows.front().size();
  Matrix m(f, rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols)
      throw std::invalid_argument("ragged rows in matrix construction");
    for (std::size_t j = 0; j < cols; ++j)
      m.at(i, j) = rows[i][j];
  }
  return m;
}

Matrix Matrix::from_columns(FieldSpec f, std::size_t rows, const std::vector<Vec>& cols) {
  Matrix m(f, rows, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (cols[j].size() != rows)
      throw std::invalid_argument("column of wrong dimension in matrix construction");
    for (std::size_t i = 0; i < rows; ++i)
      m.at(i, j) = cols[j][i];
  }
  return m;
}

Vec Matrix::row(std::size_t i) const {
  Vec r(a_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
        a_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
  return r;
}

Vec Matrix::col(std::size_t j) const {
  Vec c;
  c.reserve(rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    c.push_back(at(i, j));
  return c;
}

Vec Matrix::apply(const Vec& x) const {
  if (x.size() != cols_)
    throw std::invalid_argument("matrix apply: expected dimension " + std::to_string(cols_) +
                                ", got " + std::to_string(x.size()));
  Vec r = zero_vec(f_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if (!at(i, j).is_zero() && !x[j].is_zero())
        r[i] += at(i, j) * x[j];
  return r;
}

Matrix Matrix::mul(const Matrix& o) const {
  if (cols_ != o.rows_)
    throw std::invalid_argument("matrix product shape mismatch");
  Matrix r(f_, rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Scalar& aik = at(i, k);
      if (aik.is_zero())
        continue;
      for (std::size_t j = 0; j < o.cols_; ++j)
        if (!o.at(k, j).is_zero())
          r.at(i, j) += aik * o.at(k, j);
    }
  return r;
}

Matrix Matrix::add(const Matrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_)
    throw std::invalid_argument("matrix sum shape mismatch");
  Matrix r(*this);
  for (std::size_t i = 0; i < a_.size(); ++i)
    r.a_[i] += o.a_[i];
  return r;
}

Matrix Matrix::sub(const Matrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_)
    throw std::invalid_argument("matrix difference shape mismatch");
  Matrix r(*this);
  for (std::size_t i = 0; i < a_.size(); ++i)
    r.a_[i] -= o.a_[i];
  return r;
}

Matrix Matrix::scale(const Scalar& c) const {
  Matrix r(*this);
  for (Scalar& s : r.a_)
    s *= c;
  return r;
}

Matrix Matrix::transpose() const {
  Matrix r(f_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      r.at(j, i) = at(i, j);
  return r;
}

bool Matrix::is_zero() const {
  for (const Scalar& s : a_)
    if (!s.is_zero())
      return false;
  return true;
}

Matrix Matrix::rref(std::vector<std::size_t>* pivots) const {
  Matrix m(*this);
  if (pivots)
    pivots->clear();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
    std::size_t piv = r;
    while (piv < rows_ && m.at(piv, c).is_zero())
      ++piv;
    if (piv == rows_)
      continue;
    if (piv != r)
      for (std::size_t j = 0; j < cols_; ++j)
        std::swap(m.at(piv, j), m.at(r, j));
    Scalar inv = m.at(r, c).inverse();
    for (std::size_t j = c; j < cols_; ++j)
      m.at(r, j) *= inv;
    for (std::size_t i = 0; i < rows_; ++i) {
      if (i == r || m.at(i, c).is_zero())
        continue;
      Scalar factor = m.at(i, c);
      for (std::size_t j = c; j < cols_; ++j)
        m.at(i, j) -= factor * m.at(r, j);
    }
    if (pivots)
      pivots->push_back(c);
    ++r;
  }
  return m;
}

std::size_t Matrix::rank() const {
  std::vector<std::size_t> pivots;
  rref(&pivots);
  return pivots.size();
}

std::optional<Matrix> Matrix::inverse() const {
  if (rows_ != cols_)
    return std::nullopt;
  // row-reduce [A | I]
  Matrix aug(f_, rows_, 2 * cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j)
      aug.at(i, j) = at(i, j);
    aug.at(i, cols_ + i) = Scalar::one(f_);
  }
  std::vector<std::size_t> pivots;
  Matrix red = aug.rref(&pivots);
  if (pivots.size() != rows_ || (rows_ > 0 && pivots.back() >= cols_))
    return std::nullopt;
  for (std::size_t i = 0; i < rows_; ++i)
    if (pivots[i] != i)
      return std::nullopt;
  Matrix inv(f_, rows_, cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      inv.at(i, j) = red.at(i, cols_ + j);
  return inv;
}

bool Matrix::invertible() const {
  return rows_ == cols_ && rank() == rows_;
}

bool Matrix::operator==(const Matrix& o) const {
  return f_ == o.f_ && rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
}

int Matrix::lex_cmp(const Matrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_)
    throw std::invalid_argument("lex_cmp on matrices of different shape");
  for (std::size_t i = 0; i < a_.size(); ++i) {
    int c = a_[i].cmp(o.a_[i]);
    if (c != 0)
      return c;
  }
  return 0;
}

std::string Matrix::to_string() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < rows_; ++i) {
    if (i)
      os << "; ";
    for (std::size_t j = 0; j < cols_; ++j) {
      if (j)
        os << " ";
      os << at(i, j);
    }
  }
  return os.str();
}

std::optional<Vec> solve_linear(const Matrix& m, const Vec& b) {
  if (b.size() != m.rows())
    throw std::invalid_argument("solve_linear: rhs dimension mismatch");
  Matrix aug(m.field(), m.rows(), m.cols() + 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j)
      aug.at(i, j) = m.at(i, j);
    aug.at(i, m.cols()) = b[i];
  }
  std::vector<std::size_t> pivots;
  Matrix red = aug.rref(&pivots);
  if (!pivots.empty() && pivots.back() == m.cols())
    return std::nullopt; // pivot in the augmented column
  Vec x = zero_vec(m.field(), m.cols());
  for (std::size_t r = 0; r < pivots.size(); ++r)
    x[pivots[r]] = red.at(r, m.cols());
  return x;
}

std::vector<Vec> kernel(const Matrix& m) {
  std::vector<std::size_t> pivots;
  Matrix red = m.rref(&pivots);
  std::vector<bool> is_pivot(m.cols(), false);
  for (std::size_t c : pivots)
    is_pivot[c] = true;
  std::vector<Vec> basis;
  for (std::size_t j = 0; j < m.cols(); ++j) {
    if (is_pivot[j])
      continue;
    Vec v = zero_vec(m.field(), m.cols());
    v[j] = Scalar::one(m.field());
    for (std::size_t r = 0; r < pivots.size(); ++r)
      v[pivots[r]] = -red.at(r, j);
    // normalize: first nonzero coordinate 1
    for (const Scalar& s : v) {
      if (s.is_zero())
        continue;
      v = scale(s.inverse(), v);
      break;
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

std::vector<Vec> echelon_basis(FieldSpec f, std::size_t n, const std::vector<Vec>& vectors) {
  for (const Vec& v : vectors)
    if (v.size() != n)
      throw std::invalid_argument("echelon_basis: vector of wrong dimension");
  if (vectors.empty())
    return {};
  Matrix red = Matrix::from_rows(f, vectors).rref();
  std::vector<Vec> basis;
  for (std::size_t i = 0; i < red.rows(); ++i) {
    Vec r = red.row(i);
    if (!is_zero_vec(r))
      basis.push_back(std::move(r));
  }
  return basis;
}

Vec reduce_against(const std::vector<Vec>& echelon, const Vec& v) {
  Vec r(v);
  for (const Vec& row : echelon) {
    std::size_t lead = 0;
    while (lead < row.size() && row[lead].is_zero())
      ++lead;
    if (lead == row.size() || r[lead].is_zero())
      continue;
    Scalar factor = r[lead] / row[lead];
    for (std::size_t j = lead; j < r.size(); ++j)
      r[j] -= factor * row[j];
  }
  return r;
}

bool in_span(const std::vector<Vec>& echelon, const Vec& v) {
  return is_zero_vec(reduce_against(echelon, v));
}

} // namespace jordan
