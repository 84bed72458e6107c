#pragma once

#include <optional>
#include <vector>

#include "logcurve/rational.hpp"

namespace logcurve {

/// Dense matrix over the rationals.  All eliminations are exact; no
/// floating-point enters any rank, kernel or solve decision.
class QMat {
 public:
  QMat() : rows_(0), cols_(0) {}
  QMat(long rows, long cols);

  static QMat identity(long n);
  static QMat from_rows(const std::vector<std::vector<Rat>>& rows);

  long rows() const { return rows_; }
  long cols() const { return cols_; }

  Rat& at(long i, long j) { return data_[i * cols_ + j]; }
  const Rat& at(long i, long j) const { return data_[i * cols_ + j]; }

  QMat transpose() const;
  std::vector<Rat> col(long j) const;
  std::vector<Rat> row(long i) const;
  void set_col(long j, const std::vector<Rat>& v);

  bool operator==(const QMat& o) const;
  bool operator!=(const QMat& o) const { return !(*this == o); }
  QMat operator+(const QMat& o) const;
  QMat operator-(const QMat& o) const;
  QMat operator*(const QMat& o) const;
  QMat operator*(const Rat& s) const;
  std::vector<Rat> operator*(const std::vector<Rat>& v) const;

  bool is_zero() const;
  bool is_square() const { return rows_ == cols_; }

 private:
  long rows_, cols_;
  std::vector<Rat> data_;
};

QMat hstack(const QMat& a, const QMat& b);
QMat vstack(const QMat& a, const QMat& b);

// Reduced row echelon form.  Pivot columns are appended to *pivots if given.
QMat rref(const QMat& a, std::vector<long>* pivots = nullptr);
long rank(const QMat& a);
Rat det(const QMat& a);
QMat inverse(const QMat& a);  // throws input_error on singular input

// Basis of { x : a x = 0 } as matrix columns.
QMat right_kernel(const QMat& a);

// One solution of a x = b, or nullopt if inconsistent.
std::optional<std::vector<Rat>> solve(const QMat& a, const std::vector<Rat>& b);

// X with a X = b; throws internal_error if any column is inconsistent.
QMat solve_many(const QMat& a, const QMat& b);

// Monic characteristic polynomial det(T I - a), coefficients low to high.
// Faddeev-LeVerrier over exact rationals.
std::vector<Rat> charpoly(const QMat& a);

QMat mat_pow(const QMat& a, long k);

// ---- Subspaces ----------------------------------------------------------
// A subspace of Q^n is any matrix whose columns span it.  span_canon gives
// the unique column-echelon basis, so span_eq is bytewise comparable.

QMat span_canon(const QMat& v);
long span_dim(const QMat& v);
QMat span_sum(const QMat& a, const QMat& b);
QMat span_intersect(const QMat& a, const QMat& b);
bool span_contains(const QMat& v, const std::vector<Rat>& x);
bool span_leq(const QMat& a, const QMat& b);
bool span_eq(const QMat& a, const QMat& b);

/// Dense matrix over the integers; carrier for lattice computations.
class ZMat {
 public:
  ZMat() : rows_(0), cols_(0) {}
  ZMat(long rows, long cols);

  static ZMat identity(long n);
  static ZMat from_rows(const std::vector<std::vector<Int>>& rows);

  long rows() const { return rows_; }
  long cols() const { return cols_; }

  Int& at(long i, long j) { return data_[i * cols_ + j]; }
  const Int& at(long i, long j) const { return data_[i * cols_ + j]; }

  ZMat transpose() const;
  bool operator==(const ZMat& o) const;
  ZMat operator*(const ZMat& o) const;

  QMat to_q() const;

 private:
  long rows_, cols_;
  std::vector<Int> data_;
};

// Exact conversion; every entry must already be an integer.
ZMat to_z(const QMat& a);

}  // namespace logcurve
