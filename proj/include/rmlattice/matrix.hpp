#pragma once

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <vector>

#include "rmlattice/integer.hpp"

namespace rmlattice {

using Vector = std::vector<Int>;

/// Dense row-major integer matrix.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols);
  Matrix(std::initializer_list<std::initializer_list<Int>> rows);

  static Matrix identity(std::size_t n);
  static Matrix from_columns(const std::vector<Vector>& columns);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Int& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Int& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  Vector column(std::size_t j) const;
  Vector row(std::size_t i) const;

  Matrix transpose() const;
  bool is_zero() const;
  /// gcd of all entries (0 for the zero matrix).
  Int content() const;

  /// this / d when every entry is divisible by d.
  std::optional<Matrix> divided_exactly(const Int& d) const;

  /// Entries reduced into [0, m).
  Matrix mod(const Int& m) const;

  /// Horizontal concatenation [this | other].
  Matrix hconcat(const Matrix& other) const;

  Matrix& operator+=(const Matrix& other);
  Matrix& operator-=(const Matrix& other);
  Matrix& operator*=(const Int& s);

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Matrix a, const Int& s) { return a *= s; }
  friend Matrix operator*(const Int& s, Matrix a) { return a *= s; }
  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend Vector operator*(const Matrix& a, const Vector& v);
  friend Matrix operator-(const Matrix& a);

  bool operator==(const Matrix& other) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Int> data_;
};

/// Fraction-free (Bareiss) determinant.
Int determinant(const Matrix& m);

Matrix adjugate(const Matrix& m);

/// Pfaffian of a 4x4 alternating matrix.
Int pfaffian4(const Matrix& e);

/// Row Hermite normal form: rows of the result span the row lattice of `m`,
/// upper echelon, positive pivots, entries above each pivot in [0, pivot).
/// Zero rows are dropped. `transform` (if given) receives T with T*m = [H; 0].
Matrix row_hermite_form(const Matrix& m, Matrix* transform = nullptr);

/// Canonical basis (as columns) of the lattice spanned by the columns of `gens`.
/// Lower-triangular when full rank; entries left of each pivot lie in [0, pivot).
Matrix column_hermite_basis(const Matrix& gens);

struct SmithForm {
  Matrix left;   // U, unimodular
  Matrix right;  // V, unimodular
  std::vector<Int> diagonal;  // U * m * V = diag, d_0 | d_1 | ...
};

SmithForm smith_normal_form(const Matrix& m);

struct LatticeSolution {
  Vector coefficients;        // gens * coefficients = target
  std::vector<Vector> kernel;  // basis of {c : gens * c = 0}
};

/// Integer solution of gens * c = target, or nullopt if target is not in the
/// column lattice of gens.
std::optional<LatticeSolution> solve_in_lattice(const Matrix& gens,
                                                const Vector& target);

/// M^{-1} * X * M for square invertible M, if the result is integral.
std::optional<Matrix> conjugate_integral(const Matrix& m, const Matrix& x);

}  // namespace rmlattice
