#include "logcurve/matrix.hpp"

#include <utility>

namespace logcurve {

QMat::QMat(long rows, long cols) : rows_(rows), cols_(cols) {
  if (rows < 0 || cols < 0) throw internal_error("negative matrix dimension");
  data_.assign(static_cast<std::size_t>(rows) * cols, Rat(0));
}

QMat QMat::identity(long n) {
  QMat m(n, n);
  for (long i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

QMat QMat::from_rows(const std::vector<std::vector<Rat>>& rows) {
  long r = static_cast<long>(rows.size());
  long c = r == 0 ? 0 : static_cast<long>(rows[0].size());
  QMat m(r, c);
  for (long i = 0; i < r; ++i) {
    if (static_cast<long>(rows[i].size()) != c)
      throw internal_error("ragged row list");
    for (long j = 0; j < c; ++j) m.at(i, j) = rows[i][j];
  }
  return m;
}

QMat QMat::transpose() const {
  QMat t(cols_, rows_);
  for (long i = 0; i < rows_; ++i)
    for (long j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
  return t;
}

std::vector<Rat> QMat::col(long j) const {
  std::vector<Rat> v(rows_);
  for (long i = 0; i < rows_; ++i) v[i] = at(i, j);
  return v;
}

std::vector<Rat> QMat::row(long i) const {
  std::vector<Rat> v(cols_);
  for (long j = 0; j < cols_; ++j) v[j] = at(i, j);
  return v;
}

void QMat::set_col(long j, const std::vector<Rat>& v) {
  if (static_cast<long>(v.size()) != rows_)
    throw internal_error("set_col size mismatch");
  for (long i = 0; i < rows_; ++i) at(i, j) = v[i];
}

bool QMat::operator==(const QMat& o) const {
  return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
}

QMat QMat::operator+(const QMat& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_)
    throw internal_error("shape mismatch in +");
  QMat m(rows_, cols_);
  for (std::size_t k = 0; k < data_.size(); ++k) m.data_[k] = data_[k] + o.data_[k];
  return m;
}

QMat QMat::operator-(const QMat& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_)
    throw internal_error("shape mismatch in -");
  QMat m(rows_, cols_);
  for (std::size_t k = 0; k < data_.size(); ++k) m.data_[k] = data_[k] - o.data_[k];
  return m;
}

QMat QMat::operator*(const QMat& o) const {
  if (cols_ != o.rows_) throw internal_error("shape mismatch in *");
  QMat m(rows_, o.cols_);
  for (long i = 0; i < rows_; ++i)
    for (long k = 0; k < cols_; ++k) {
      const Rat& x = at(i, k);
      if (x == 0) continue;
      for (long j = 0; j < o.cols_; ++j) m.at(i, j) += x * o.at(k, j);
    }
  return m;
}

QMat QMat::operator*(const Rat& s) const {
  QMat m(rows_, cols_);
  for (std::size_t k = 0; k < data_.size(); ++k) m.data_[k] = data_[k] * s;
  return m;
}

std::vector<Rat> QMat::operator*(const std::vector<Rat>& v) const {
  if (cols_ != static_cast<long>(v.size()))
    throw internal_error("shape mismatch in mat*vec");
  std::vector<Rat> out(rows_, Rat(0));
  for (long i = 0; i < rows_; ++i)
    for (long j = 0; j < cols_; ++j)
      if (at(i, j) != 0) out[i] += at(i, j) * v[j];
  return out;
}

bool QMat::is_zero() const {
  for (const Rat& x : data_)
    if (x != 0) return false;
  return true;
}

QMat hstack(const QMat& a, const QMat& b) {
  if (a.rows() != b.rows()) throw internal_error("hstack row mismatch");
  QMat m(a.rows(), a.cols() + b.cols());
  for (long i = 0; i < a.rows(); ++i) {
    for (long j = 0; j < a.cols(); ++j) m.at(i, j) = a.at(i, j);
    for (long j = 0; j < b.cols(); ++j) m.at(i, a.cols() + j) = b.at(i, j);
  }
  return m;
}

QMat vstack(const QMat& a, const QMat& b) {
  if (a.cols() != b.cols()) throw internal_error("vstack col mismatch");
  QMat m(a.rows() + b.rows(), a.cols());
  for (long i = 0; i < a.rows(); ++i)
    for (long j = 0; j < a.cols(); ++j) m.at(i, j) = a.at(i, j);
  for (long i = 0; i < b.rows(); ++i)
    for (long j = 0; j < a.cols(); ++j) m.at(a.rows() + i, j) = b.at(i, j);
  return m;
}

QMat rref(const QMat& a, std::vector<long>* pivots) {
  QMat m = a;
  long r = 0;
  for (long j = 0; j < m.cols() && r < m.rows(); ++j) {
    long p = -1;
    for (long i = r; i < m.rows(); ++i)
      if (m.at(i, j) != 0) {
        p = i;
        break;
      }
    if (p < 0) continue;
    if (p != r)
      for (long k = 0; k < m.cols(); ++k) std::swap(m.at(p, k), m.at(r, k));
    Rat inv = Rat(1) / m.at(r, j);
    for (long k = j; k < m.cols(); ++k) m.at(r, k) *= inv;
    for (long i = 0; i < m.rows(); ++i) {
      if (i == r || m.at(i, j) == 0) continue;
      Rat f = m.at(i, j);
      for (long k = j; k < m.cols(); ++k) m.at(i, k) -= f * m.at(r, k);
    }
    if (pivots != nullptr) pivots->push_back(j);
    ++r;
  }
  return m;
}

long rank(const QMat& a) {
  std::vector<long> piv;
  rref(a, &piv);
  return static_cast<long>(piv.size());
}

Rat det(const QMat& a) {
  if (!a.is_square()) throw internal_error("det of non-square matrix");
  QMat m = a;
  long n = m.rows();
  Rat d(1);
  for (long j = 0; j < n; ++j) {
    long p = -1;
    for (long i = j; i < n; ++i)
      if (m.at(i, j) != 0) {
        p = i;
        break;
      }
    if (p < 0) return Rat(0);
    if (p != j) {
      for (long k = 0; k < n; ++k) std::swap(m.at(p, k), m.at(j, k));
      d = -d;
    }
    d *= m.at(j, j);
    Rat inv = Rat(1) / m.at(j, j);
    for (long i = j + 1; i < n; ++i) {
      if (m.at(i, j) == 0) continue;
      Rat f = m.at(i, j) * inv;
      for (long k = j; k < n; ++k) m.at(i, k) -= f * m.at(j, k);
    }
  }
  return d;
}

QMat inverse(const QMat& a) {
  if (!a.is_square()) throw internal_error("inverse of non-square matrix");
  long n = a.rows();
  std::vector<long> piv;
  QMat red = rref(hstack(a, QMat::identity(n)), &piv);
  if (static_cast<long>(piv.size()) != n || (n > 0 && piv.back() >= n))
    throw input_error("matrix is singular");
  QMat inv(n, n);
  for (long i = 0; i < n; ++i)
    for (long j = 0; j < n; ++j) inv.at(i, j) = red.at(i, n + j);
  return inv;
}

QMat right_kernel(const QMat& a) {
  std::vector<long> piv;
  QMat red = rref(a, &piv);
  std::vector<bool> is_piv(a.cols(), false);
  for (long j : piv) is_piv[j] = true;
  std::vector<long> free_cols;
  for (long j = 0; j < a.cols(); ++j)
    if (!is_piv[j]) free_cols.push_back(j);
  QMat ker(a.cols(), static_cast<long>(free_cols.size()));
  for (std::size_t k = 0; k < free_cols.size(); ++k) {
    long f = free_cols[k];
    ker.at(f, static_cast<long>(k)) = 1;
    for (std::size_t r = 0; r < piv.size(); ++r)
      ker.at(piv[r], static_cast<long>(k)) = -red.at(static_cast<long>(r), f);
  }
  return ker;
}

std::optional<std::vector<Rat>> solve(const QMat& a, const std::vector<Rat>& b) {
  if (a.rows() != static_cast<long>(b.size()))
    throw internal_error("solve size mismatch");
  QMat rhs(a.rows(), 1);
  rhs.set_col(0, b);
  std::vector<long> piv;
  QMat red = rref(hstack(a, rhs), &piv);
  if (!piv.empty() && piv.back() == a.cols()) return std::nullopt;
  std::vector<Rat> x(a.cols(), Rat(0));
  for (std::size_t r = 0; r < piv.size(); ++r)
    x[piv[r]] = red.at(static_cast<long>(r), a.cols());
  return x;
}

QMat solve_many(const QMat& a, const QMat& b) {
  if (a.rows() != b.rows()) throw internal_error("solve_many size mismatch");
  QMat x(a.cols(), b.cols());
  for (long j = 0; j < b.cols(); ++j) {
    auto s = solve(a, b.col(j));
    if (!s) throw internal_error("solve_many: inconsistent system");
    x.set_col(j, *s);
  }
  return x;
}

std::vector<Rat> charpoly(const QMat& a) {
  if (!a.is_square()) throw internal_error("charpoly of non-square matrix");
  long n = a.rows();
  std::vector<Rat> c(n + 1, Rat(0));
  c[n] = 1;
  QMat m = QMat::identity(n);  // running M_k of Faddeev-LeVerrier
  for (long k = 1; k <= n; ++k) {
    m = a * m;
    Rat tr(0);
    for (long i = 0; i < n; ++i) tr += m.at(i, i);
    c[n - k] = -tr / k;
    for (long i = 0; i < n; ++i) m.at(i, i) += c[n - k];
  }
  return c;
}

QMat mat_pow(const QMat& a, long k) {
  if (!a.is_square()) throw internal_error("mat_pow of non-square matrix");
  if (k < 0) throw internal_error("negative matrix power");
  QMat r = QMat::identity(a.rows());
  for (long i = 0; i < k; ++i) r = r * a;
  return r;
}

QMat span_canon(const QMat& v) {
  std::vector<long> piv;
  QMat red = rref(v.transpose(), &piv);
  QMat basis(v.rows(), static_cast<long>(piv.size()));
  for (std::size_t r = 0; r < piv.size(); ++r)
    for (long i = 0; i < v.rows(); ++i)
      basis.at(i, static_cast<long>(r)) = red.at(static_cast<long>(r), i);
  return basis;
}

long span_dim(const QMat& v) { return rank(v); }

QMat span_sum(const QMat& a, const QMat& b) { return span_canon(hstack(a, b)); }

QMat span_intersect(const QMat& a, const QMat& b) {
  if (a.rows() != b.rows()) throw internal_error("span_intersect row mismatch");
  if (a.cols() == 0 || b.cols() == 0) return QMat(a.rows(), 0);
  // x in both spans iff a u = b w; kernel of [a | -b] gives all such pairs.
  QMat ker = right_kernel(hstack(a, b * Rat(-1)));
  QMat gens(a.rows(), ker.cols());
  for (long k = 0; k < ker.cols(); ++k) {
    std::vector<Rat> u(ker.rows(), Rat(0));
    for (long i = 0; i < a.cols(); ++i) u[i] = ker.at(i, k);
    std::vector<Rat> x(a.rows(), Rat(0));
    for (long i = 0; i < a.rows(); ++i)
      for (long j = 0; j < a.cols(); ++j)
        if (a.at(i, j) != 0) x[i] += a.at(i, j) * u[j];
    gens.set_col(k, x);
  }
  return span_canon(gens);
}

bool span_contains(const QMat& v, const std::vector<Rat>& x) {
  return solve(v, x).has_value();
}

bool span_leq(const QMat& a, const QMat& b) {
  for (long j = 0; j < a.cols(); ++j)
    if (!span_contains(b, a.col(j))) return false;
  return true;
}

bool span_eq(const QMat& a, const QMat& b) {
  return span_canon(a) == span_canon(b);
}

ZMat::ZMat(long rows, long cols) : rows_(rows), cols_(cols) {
  if (rows < 0 || cols < 0) throw internal_error("negative matrix dimension");
  data_.assign(static_cast<std::size_t>(rows) * cols, Int(0));
}

ZMat ZMat::identity(long n) {
  ZMat m(n, n);
  for (long i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

ZMat ZMat::from_rows(const std::vector<std::vector<Int>>& rows) {
  long r = static_cast<long>(rows.size());
  long c = r == 0 ? 0 : static_cast<long>(rows[0].size());
  ZMat m(r, c);
  for (long i = 0; i < r; ++i) {
    if (static_cast<long>(rows[i].size()) != c)
      throw internal_error("ragged row list");
    for (long j = 0; j < c; ++j) m.at(i, j) = rows[i][j];
  }
  return m;
}

ZMat ZMat::transpose() const {
  ZMat t(cols_, rows_);
  for (long i = 0; i < rows_; ++i)
    for (long j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
  return t;
}

bool ZMat::operator==(const ZMat& o) const {
  return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
}

ZMat ZMat::operator*(const ZMat& o) const {
  if (cols_ != o.rows_) throw internal_error("shape mismatch in *");
  ZMat m(rows_, o.cols_);
  for (long i = 0; i < rows_; ++i)
    for (long k = 0; k < cols_; ++k) {
      const Int& x = at(i, k);
      if (x == 0) continue;
      for (long j = 0; j < o.cols_; ++j) m.at(i, j) += x * o.at(k, j);
    }
  return m;
}

ZMat to_z(const QMat& a) {
  ZMat out(a.rows(), a.cols());
  for (long i = 0; i < a.rows(); ++i)
    for (long j = 0; j < a.cols(); ++j) {
      const Rat& x = a.at(i, j);
      if (x.get_den() != 1)
        throw internal_error("matrix entry is not an integer");
      out.at(i, j) = x.get_num();
    }
  return out;
}

QMat ZMat::to_q() const {
  QMat m(rows_, cols_);
  for (long i = 0; i < rows_; ++i)
    for (long j = 0; j < cols_; ++j) m.at(i, j) = Rat(at(i, j));
  return m;
}

}  // namespace logcurve
