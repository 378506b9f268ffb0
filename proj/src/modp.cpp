#include "rmlattice/modp.hpp"

#include <stdexcept>
#include <utility>

namespace rmlattice::modp {

std::int64_t reduce(std::int64_t a, std::int64_t p) {
  a %= p;
  return a < 0 ? a + p : a;
}

std::int64_t inverse(std::int64_t a, std::int64_t p) {
  std::int64_t t = 0, new_t = 1, r = p, new_r = reduce(a, p);
  while (new_r != 0) {
    std::int64_t q = r / new_r;
    t = std::exchange(new_t, t - q * new_t);
    r = std::exchange(new_r, r - q * new_r);
  }
  if (r != 1) throw std::domain_error("element is not invertible mod p");
  return reduce(t, p);
}

Mat from_matrix(const Matrix& m, std::int64_t p) {
  Mat out{p, {}};
  const Int mod = p;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Row r(m.cols());
    for (std::size_t j = 0; j < m.cols(); ++j)
      r[j] = mod_floor(m(i, j), mod).convert_to<std::int64_t>();
    out.rows.push_back(std::move(r));
  }
  return out;
}

Row from_vector(const Vector& v, std::int64_t p) {
  Row r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    r[i] = mod_floor(v[i], Int(p)).convert_to<std::int64_t>();
  return r;
}

Mat multiply(const Mat& a, const Mat& b) {
  Mat c{a.p, std::vector<Row>(a.row_count(), Row(b.col_count(), 0))};
  for (std::size_t i = 0; i < a.row_count(); ++i)
    for (std::size_t k = 0; k < a.col_count(); ++k) {
      if (a.rows[i][k] == 0) continue;
      for (std::size_t j = 0; j < b.col_count(); ++j)
        c.rows[i][j] = (c.rows[i][j] + a.rows[i][k] * b.rows[k][j]) % a.p;
    }
  return c;
}

Row apply(const Mat& a, const Row& v) {
  Row out(a.row_count(), 0);
  for (std::size_t i = 0; i < a.row_count(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j)
      out[i] = (out[i] + a.rows[i][j] * v[j]) % a.p;
  return out;
}

Mat rref(Mat m) {
  const std::int64_t p = m.p;
  std::size_t lead = 0;
  const std::size_t cols = m.col_count();
  for (std::size_t c = 0; c < cols && lead < m.row_count(); ++c) {
    std::size_t piv = lead;
    while (piv < m.row_count() && m.rows[piv][c] == 0) ++piv;
    if (piv == m.row_count()) continue;
    std::swap(m.rows[lead], m.rows[piv]);
    const std::int64_t inv = inverse(m.rows[lead][c], p);
    for (auto& x : m.rows[lead]) x = x * inv % p;
    for (std::size_t i = 0; i < m.row_count(); ++i) {
      if (i == lead || m.rows[i][c] == 0) continue;
      const std::int64_t f = m.rows[i][c];
      for (std::size_t j = 0; j < cols; ++j)
        m.rows[i][j] = reduce(m.rows[i][j] - f * m.rows[lead][j], p);
    }
    ++lead;
  }
  m.rows.resize(lead);
  return m;
}

std::size_t rank(const Mat& m) { return rref(m).row_count(); }

std::int64_t determinant(Mat m) {
  const std::int64_t p = m.p;
  const std::size_t n = m.row_count();
  std::int64_t det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && m.rows[piv][c] == 0) ++piv;
    if (piv == n) return 0;
    if (piv != c) {
      std::swap(m.rows[piv], m.rows[c]);
      det = reduce(-det, p);
    }
    det = det * m.rows[c][c] % p;
    const std::int64_t inv = inverse(m.rows[c][c], p);
    for (std::size_t i = c + 1; i < n; ++i) {
      const std::int64_t f = m.rows[i][c] * inv % p;
      for (std::size_t j = c; j < n; ++j)
        m.rows[i][j] = reduce(m.rows[i][j] - f * m.rows[c][j], p);
    }
  }
  return det;
}

std::vector<Row> nullspace(const Mat& m) {
  const std::size_t n = m.col_count();
  Mat r = rref(m);
  std::vector<std::size_t> pivots;
  for (const auto& row : r.rows) {
    std::size_t c = 0;
    while (row[c] == 0) ++c;
    pivots.push_back(c);
  }
  std::vector<Row> basis;
  for (std::size_t free = 0; free < n; ++free) {
    bool is_pivot = false;
    for (auto c : pivots) is_pivot |= (c == free);
    if (is_pivot) continue;
    Row v(n, 0);
    v[free] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = reduce(-r.rows[i][free], m.p);
    basis.push_back(std::move(v));
  }
  return rref(Mat{m.p, basis}).rows;
}

std::vector<Row> span(const std::vector<Row>& vectors, std::int64_t p, std::size_t n) {
  Mat m{p, {}};
  for (const auto& v : vectors) {
    if (v.size() != n) throw std::invalid_argument("span: dimension mismatch");
    Row r(n);
    for (std::size_t j = 0; j < n; ++j) r[j] = reduce(v[j], p);
    m.rows.push_back(std::move(r));
  }
  return rref(std::move(m)).rows;
}

std::vector<Row> intersect(const std::vector<Row>& u, const std::vector<Row>& w,
                           std::int64_t p, std::size_t n) {
  if (u.empty() || w.empty()) return {};
  // Annihilator of w: x is in w iff c.x = 0 for every c in the annihilator.
  std::vector<Row> annihilator = nullspace(Mat{p, w});
  if (annihilator.empty()) return span(u, p, n);
  // Coefficients a with sum a_i u_i in w.
  Mat constraints{p, std::vector<Row>(annihilator.size(), Row(u.size(), 0))};
  for (std::size_t i = 0; i < annihilator.size(); ++i)
    for (std::size_t k = 0; k < u.size(); ++k) {
      std::int64_t s = 0;
      for (std::size_t j = 0; j < n; ++j) s = (s + annihilator[i][j] * u[k][j]) % p;
      constraints.rows[i][k] = s;
    }
  std::vector<Row> out;
  for (const auto& a : nullspace(constraints)) {
    Row v(n, 0);
    for (std::size_t k = 0; k < u.size(); ++k)
      for (std::size_t j = 0; j < n; ++j) v[j] = (v[j] + a[k] * u[k][j]) % p;
    out.push_back(std::move(v));
  }
  return span(out, p, n);
}

bool contains(const std::vector<Row>& basis, const Row& v, std::int64_t p) {
  std::vector<Row> extended = basis;
  extended.push_back(v);
  return span(extended, p, v.size()).size() == span(basis, p, v.size()).size();
}

}  // namespace rmlattice::modp
