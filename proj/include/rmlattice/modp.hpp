#pragma once

#include <cstdint>
#include <vector>

#include "rmlattice/matrix.hpp"

// Linear algebra over the prime field Z/p with p small enough for int64 products.
namespace rmlattice::modp {

using Row = std::vector<std::int64_t>;

/// Matrix over Z/p stored as rows, entries in [0, p).
struct Mat {
  std::int64_t p = 0;
  std::vector<Row> rows;

  std::size_t row_count() const { return rows.size(); }
  std::size_t col_count() const { return rows.empty() ? 0 : rows.front().size(); }
};

std::int64_t reduce(std::int64_t a, std::int64_t p);
std::int64_t inverse(std::int64_t a, std::int64_t p);

Mat from_matrix(const Matrix& m, std::int64_t p);
Row from_vector(const Vector& v, std::int64_t p);

Mat multiply(const Mat& a, const Mat& b);
Row apply(const Mat& a, const Row& v);

/// Reduced row echelon form with zero rows removed.
Mat rref(Mat m);
std::size_t rank(const Mat& m);
std::int64_t determinant(Mat m);

/// Basis (rref rows) of {x : m x = 0}.
std::vector<Row> nullspace(const Mat& m);

/// Canonical basis (rref) of the span of the given vectors in (Z/p)^n.
std::vector<Row> span(const std::vector<Row>& vectors, std::int64_t p, std::size_t n);

std::vector<Row> intersect(const std::vector<Row>& u, const std::vector<Row>& w,
                           std::int64_t p, std::size_t n);

bool contains(const std::vector<Row>& basis, const Row& v, std::int64_t p);

}  // namespace rmlattice::modp
