#include "rmlattice/matrix.hpp"

#include <stdexcept>
#include <utility>

namespace rmlattice {

Matrix::Matrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

Matrix::Matrix(std::initializer_list<std::initializer_list<Int>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw std::invalid_argument("ragged matrix literal");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Matrix Matrix::from_columns(const std::vector<Vector>& columns) {
  if (columns.empty()) return {};
  Matrix m(columns.front().size(), columns.size());
  for (std::size_t j = 0; j < columns.size(); ++j)
    for (std::size_t i = 0; i < m.rows(); ++i) m(i, j) = columns[j][i];
  return m;
}

Vector Matrix::column(std::size_t j) const {
  Vector v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
  return v;
}

Vector Matrix::row(std::size_t i) const {
  return Vector(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

bool Matrix::is_zero() const {
  for (const auto& x : data_)
    if (x != 0) return false;
  return true;
}

Int Matrix::content() const {
  Int g = 0;
  for (const auto& x : data_) g = gcd(g, x);
  return g;
}

std::optional<Matrix> Matrix::divided_exactly(const Int& d) const {
  if (d == 0) throw std::domain_error("division of a matrix by zero");
  Matrix out = *this;
  for (auto& x : out.data_) {
    if (x % d != 0) return std::nullopt;
    x /= d;
  }
  return out;
}

Matrix Matrix::mod(const Int& m) const {
  Matrix out = *this;
  for (auto& x : out.data_) x = mod_floor(x, m);
  return out;
}

Matrix Matrix::hconcat(const Matrix& other) const {
  if (other.rows_ != rows_) throw std::invalid_argument("hconcat: row mismatch");
  Matrix out(rows_, cols_ + other.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) out(i, j) = (*this)(i, j);
    for (std::size_t j = 0; j < other.cols_; ++j) out(i, cols_ + j) = other(i, j);
  }
  return out;
}

Matrix& Matrix::operator+=(const Matrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_)
    throw std::invalid_argument("matrix shape mismatch");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += other.data_[k];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_)
    throw std::invalid_argument("matrix shape mismatch");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= other.data_[k];
  return *this;
}

Matrix& Matrix::operator*=(const Int& s) {
  for (auto& x : data_) x *= s;
  return *this;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product shape mismatch");
  Matrix c(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Int& aik = a(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

Vector operator*(const Matrix& a, const Vector& v) {
  if (a.cols_ != v.size()) throw std::invalid_argument("matrix-vector shape mismatch");
  Vector out(a.rows_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t j = 0; j < a.cols_; ++j) out[i] += a(i, j) * v[j];
  return out;
}

Matrix operator-(const Matrix& a) {
  Matrix out = a;
  for (auto& x : out.data_) x = -x;
  return out;
}

Int determinant(const Matrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant of a non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  Matrix a = m;
  Int sign = 1;
  Int prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t swap = k + 1;
      while (swap < n && a(swap, k) == 0) ++swap;
      if (swap == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(swap, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

Matrix adjugate(const Matrix& m) {
  const std::size_t n = m.rows();
  if (n != m.cols()) throw std::invalid_argument("adjugate of a non-square matrix");
  Matrix adj(n, n);
  if (n == 1) {
    adj(0, 0) = 1;
    return adj;
  }
  Matrix minor(n - 1, n - 1);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t r = 0, mr = 0; r < n; ++r) {
        if (r == i) continue;
        for (std::size_t c = 0, mc = 0; c < n; ++c) {
          if (c == j) continue;
          minor(mr, mc++) = m(r, c);
        }
        ++mr;
      }
      Int cof = determinant(minor);
      adj(j, i) = ((i + j) % 2 == 0) ? cof : Int(-cof);
    }
  return adj;
}

Int pfaffian4(const Matrix& e) {
  if (e.rows() != 4 || e.cols() != 4) throw std::invalid_argument("pfaffian4 needs a 4x4 matrix");
  return e(0, 1) * e(2, 3) - e(0, 2) * e(1, 3) + e(0, 3) * e(1, 2);
}

namespace {

void swap_rows(Matrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(a, j), m(b, j));
}

void swap_cols(Matrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < m.rows(); ++i) std::swap(m(i, a), m(i, b));
}

// row[dst] -= q * row[src]
void add_row_multiple(Matrix& m, std::size_t dst, std::size_t src, const Int& q) {
  if (q == 0) return;
  for (std::size_t j = 0; j < m.cols(); ++j) m(dst, j) -= q * m(src, j);
}

void add_col_multiple(Matrix& m, std::size_t dst, std::size_t src, const Int& q) {
  if (q == 0) return;
  for (std::size_t i = 0; i < m.rows(); ++i) m(i, dst) -= q * m(i, src);
}

void negate_row(Matrix& m, std::size_t r) {
  for (std::size_t j = 0; j < m.cols(); ++j) m(r, j) = -m(r, j);
}

}  // namespace

Matrix row_hermite_form(const Matrix& m, Matrix* transform) {
  Matrix h = m;
  Matrix t = Matrix::identity(m.rows());
  std::size_t pivot_row = 0;
  for (std::size_t col = 0; col < h.cols() && pivot_row < h.rows(); ++col) {
    while (true) {
      std::size_t best = h.rows();
      for (std::size_t i = pivot_row; i < h.rows(); ++i) {
        if (h(i, col) == 0) continue;
        if (best == h.rows() || abs(h(i, col)) < abs(h(best, col))) best = i;
      }
      if (best == h.rows()) break;
      swap_rows(h, pivot_row, best);
      swap_rows(t, pivot_row, best);
      bool cleared = true;
      for (std::size_t i = pivot_row + 1; i < h.rows(); ++i) {
        if (h(i, col) == 0) continue;
        Int q = floor_div(h(i, col), h(pivot_row, col));
        add_row_multiple(h, i, pivot_row, q);
        add_row_multiple(t, i, pivot_row, q);
        if (h(i, col) != 0) cleared = false;
      }
      if (cleared) break;
    }
    if (h(pivot_row, col) == 0) continue;
    if (h(pivot_row, col) < 0) {
      negate_row(h, pivot_row);
      negate_row(t, pivot_row);
    }
    for (std::size_t i = 0; i < pivot_row; ++i) {
      Int q = floor_div(h(i, col), h(pivot_row, col));
      add_row_multiple(h, i, pivot_row, q);
      add_row_multiple(t, i, pivot_row, q);
    }
    ++pivot_row;
  }
  if (transform != nullptr) *transform = t;
  Matrix out(pivot_row, h.cols());
  for (std::size_t i = 0; i < pivot_row; ++i)
    for (std::size_t j = 0; j < h.cols(); ++j) out(i, j) = h(i, j);
  return out;
}

Matrix column_hermite_basis(const Matrix& gens) {
  return row_hermite_form(gens.transpose()).transpose();
}

SmithForm smith_normal_form(const Matrix& m) {
  Matrix d = m;
  Matrix u = Matrix::identity(m.rows());
  Matrix v = Matrix::identity(m.cols());
  const std::size_t n = std::min(m.rows(), m.cols());
  for (std::size_t k = 0; k < n; ++k) {
    while (true) {
      std::size_t bi = d.rows(), bj = d.cols();
      for (std::size_t i = k; i < d.rows(); ++i)
        for (std::size_t j = k; j < d.cols(); ++j) {
          if (d(i, j) == 0) continue;
          if (bi == d.rows() || abs(d(i, j)) < abs(d(bi, bj))) {
            bi = i;
            bj = j;
          }
        }
      if (bi == d.rows()) break;
      swap_rows(d, k, bi);
      swap_rows(u, k, bi);
      swap_cols(d, k, bj);
      swap_cols(v, k, bj);
      bool done = true;
      for (std::size_t i = k + 1; i < d.rows(); ++i) {
        Int q = floor_div(d(i, k), d(k, k));
        add_row_multiple(d, i, k, q);
        add_row_multiple(u, i, k, q);
        if (d(i, k) != 0) done = false;
      }
      for (std::size_t j = k + 1; j < d.cols(); ++j) {
        Int q = floor_div(d(k, j), d(k, k));
        add_col_multiple(d, j, k, q);
        add_col_multiple(v, j, k, q);
        if (d(k, j) != 0) done = false;
      }
      if (!done) continue;
      bool fixed = false;
      for (std::size_t i = k + 1; i < d.rows() && !fixed; ++i)
        for (std::size_t j = k + 1; j < d.cols(); ++j)
          if (d(i, j) % d(k, k) != 0) {
            add_row_multiple(d, k, i, -1);
            add_row_multiple(u, k, i, -1);
            fixed = true;
            break;
          }
      if (!fixed) break;
    }
    if (d(k, k) < 0) {
      negate_row(d, k);
      negate_row(u, k);
    }
  }
  SmithForm out{u, v, {}};
  for (std::size_t k = 0; k < n; ++k) out.diagonal.push_back(d(k, k));
  return out;
}

std::optional<LatticeSolution> solve_in_lattice(const Matrix& gens, const Vector& target) {
  if (target.size() != gens.rows()) throw std::invalid_argument("solve_in_lattice: size mismatch");
  // T * gens^T = [H; 0], so gens * T^T = [H^T | 0].
  Matrix t;
  Matrix h = row_hermite_form(gens.transpose(), &t);
  const std::size_t rank = h.rows();
  Vector z(gens.cols());
  Vector residual = target;
  std::size_t col = 0;
  for (std::size_t i = 0; i < rank; ++i) {
    while (h(i, col) == 0) {
      if (residual[col] != 0) return std::nullopt;
      ++col;
    }
    if (residual[col] % h(i, col) != 0) return std::nullopt;
    z[i] = residual[col] / h(i, col);
    for (std::size_t j = col; j < h.cols(); ++j) residual[j] -= z[i] * h(i, j);
    ++col;
  }
  for (const auto& r : residual)
    if (r != 0) return std::nullopt;
  LatticeSolution sol;
  Matrix tt = t.transpose();
  sol.coefficients = tt * z;
  for (std::size_t j = rank; j < tt.cols(); ++j) sol.kernel.push_back(tt.column(j));
  return sol;
}

std::optional<Matrix> conjugate_integral(const Matrix& m, const Matrix& x) {
  Int det = determinant(m);
  if (det == 0) throw std::domain_error("conjugate_integral: singular basis");
  return (adjugate(m) * x * m).divided_exactly(det);
}

}  // namespace rmlattice
