#ifndef MODSUPER_MATRIX_HPP
#define MODSUPER_MATRIX_HPP

#include <vector>

#include <json.hpp>

#include "modsuper/field.hpp"

namespace modsuper {

using Vec = std::vector<Scalar>;

/// Dense row-major matrix over a shared FieldCtx.
class Matrix {
 public:
  Matrix() = default;
  Matrix(FieldPtr F, int rows, int cols)
      : F_(std::move(F)), rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols) {}

  static Matrix identity(FieldPtr F, int n);
  static Matrix from_rows(FieldPtr F, const std::vector<Vec>& rows, int cols);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  const FieldPtr& field() const { return F_; }

  Scalar at(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }
  void set(int i, int j, Scalar s) { a_[static_cast<size_t>(i) * cols_ + j] = s; }

  Vec row(int i) const;
  Vec col(int j) const;

  Matrix operator+(const Matrix& o) const;
  Matrix operator-(const Matrix& o) const;
  Matrix operator*(const Matrix& o) const;
  Matrix scaled(Scalar c) const;
  Matrix transpose() const;
  Scalar trace() const;
  bool operator==(const Matrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_; }
  bool is_zero() const;

  Vec apply(const Vec& v) const;          // this * v (column vector)
  void add_in_place(const Matrix& o, Scalar c);  // this += c*o

  nlohmann::json to_json() const;
  static Matrix from_json(const nlohmann::json& j);

 private:
  FieldPtr F_;
  int rows_ = 0, cols_ = 0;
  std::vector<Scalar> a_;
};

Matrix matrix_pow(const Matrix& A, std::uint64_t e);

/// Row echelon data of a matrix (reduced form).
struct Echelon {
  Matrix rref;
  std::vector<int> pivots;  // pivot column per nonzero row
  int rank = 0;
};

Echelon row_reduce(const Matrix& A);
int rank(const Matrix& A);

/// Basis of the right kernel {v : Av = 0}; each entry is a column vector.
std::vector<Vec> kernel_basis(const Matrix& A);

/// Solves Ax = b; returns false if inconsistent.
bool solve(const Matrix& A, const Vec& b, Vec& x);
Matrix inverse(const Matrix& A);

/// Characteristic polynomial, coefficients lowest degree first, monic.
std::vector<Scalar> charpoly(const Matrix& A);

/// Incrementally maintained reduced row space; the workhorse behind spans,
/// spinning and membership tests.
class RowSpan {
 public:
  RowSpan(FieldPtr F, int width) : F_(std::move(F)), width_(width) {}

  /// Reduces v against the current rows; returns true if it enlarged the span
  /// (in which case the reduced vector is inserted).
  bool insert(Vec v);
  bool contains(Vec v) const;
  /// Residual of v after reduction (zero iff contained).
  Vec reduce(Vec v) const;

  int dim() const { return static_cast<int>(rows_.size()); }
  int width() const { return width_; }
  const std::vector<Vec>& rows() const { return rows_; }
  const std::vector<int>& pivots() const { return pivots_; }
  /// Coordinates of v in terms of rows() (v must be contained).
  Vec coordinates(const Vec& v) const;

 private:
  FieldPtr F_;
  int width_;
  std::vector<Vec> rows_;
  std::vector<int> pivots_;
};

/// Forward-only echelon span that remembers how each stored row is expressed
/// in the originally inserted vectors (fixed coordinate length). Used to
/// solve repeated "coordinates of v in this spanning set" queries.
class TrackedSpan {
 public:
  TrackedSpan(FieldPtr F, int width, int coord_len)
      : F_(std::move(F)), width_(width), coord_len_(coord_len) {}

  /// Inserts v tagged with the given coordinate vector (typically a unit
  /// vector naming v's index in the original list). Returns false if v was
  /// already in the span.
  bool insert(Vec v, Vec coord);
  /// Writes the coordinates of v in the original vectors; false if v is not
  /// in the span.
  bool express(const Vec& v, Vec& coords_out) const;
  bool contains(const Vec& v) const;
  int dim() const { return static_cast<int>(rows_.size()); }

 private:
  FieldPtr F_;
  int width_;
  int coord_len_;
  std::vector<Vec> rows_;
  std::vector<Vec> coords_;
  std::vector<int> pivots_;
};

// small vector helpers
Vec vec_zero(int n);
Vec vec_unit(const FieldCtx& F, int n, int i);
bool vec_is_zero(const Vec& v);
Vec vec_add(const FieldCtx& F, const Vec& a, const Vec& b);
Vec vec_sub(const FieldCtx& F, const Vec& a, const Vec& b);
Vec vec_scale(const FieldCtx& F, Scalar c, const Vec& a);
void vec_axpy(const FieldCtx& F, Vec& y, Scalar c, const Vec& x);  // y += c*x
Scalar vec_dot(const FieldCtx& F, const Vec& a, const Vec& b);

}  // namespace modsuper

#endif
