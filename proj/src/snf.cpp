#include "logcurve/snf.hpp"

#include <cstdlib>
#include <utility>

namespace logcurve {

namespace {

void swap_rows(ZMat& m, long a, long b) {
  for (long j = 0; j < m.cols(); ++j) std::swap(m.at(a, j), m.at(b, j));
}

void swap_cols(ZMat& m, long a, long b) {
  for (long i = 0; i < m.rows(); ++i) std::swap(m.at(i, a), m.at(i, b));
}

// row[a] -= f * row[b]
void row_sub(ZMat& m, long a, long b, const Int& f) {
  if (f == 0) return;
  for (long j = 0; j < m.cols(); ++j) m.at(a, j) -= f * m.at(b, j);
}

void col_sub(ZMat& m, long a, long b, const Int& f) {
  if (f == 0) return;
  for (long i = 0; i < m.rows(); ++i) m.at(i, a) -= f * m.at(i, b);
}

void negate_row(ZMat& m, long a) {
  for (long j = 0; j < m.cols(); ++j) m.at(a, j) = -m.at(a, j);
}

}  // namespace

SmithResult smith_normal_form(const ZMat& a) {
  ZMat d = a;
  ZMat u = ZMat::identity(a.rows());
  ZMat v = ZMat::identity(a.cols());
  long n = std::min(a.rows(), a.cols());

  for (long t = 0; t < n; ++t) {
    // Pivot: the entry of least absolute value in the remaining block.
    long pi = -1, pj = -1;
    Int best(0);
    for (long i = t; i < d.rows(); ++i)
      for (long j = t; j < d.cols(); ++j) {
        if (d.at(i, j) == 0) continue;
        Int v2 = abs(d.at(i, j));
        if (pi < 0 || v2 < best) {
          best = v2;
          pi = i;
          pj = j;
        }
      }
    if (pi < 0) break;  // remaining block is zero
    if (pi != t) { swap_rows(d, t, pi); swap_rows(u, t, pi); }
    if (pj != t) { swap_cols(d, t, pj); swap_cols(v, t, pj); }

    for (;;) {
      // Clear column t below the pivot, then row t to its right.  A nonzero
      // remainder becomes the new, strictly smaller pivot, so this loop ends.
      bool dirty = false;
      for (long i = t + 1; i < d.rows(); ++i) {
        if (d.at(i, t) == 0) continue;
        Int q = d.at(i, t) / d.at(t, t);  // C++ truncation matches mpz tdiv
        row_sub(d, i, t, q);
        row_sub(u, i, t, q);
        if (d.at(i, t) != 0) {
          swap_rows(d, t, i);
          swap_rows(u, t, i);
          dirty = true;
        }
      }
      for (long j = t + 1; j < d.cols(); ++j) {
        if (d.at(t, j) == 0) continue;
        Int q = d.at(t, j) / d.at(t, t);
        col_sub(d, j, t, q);
        col_sub(v, j, t, q);
        if (d.at(t, j) != 0) {
          swap_cols(d, t, j);
          swap_cols(v, t, j);
          dirty = true;
        }
      }
      if (dirty) continue;
      // Pivot must divide the rest of the block; if not, fold the offending
      // row into row t and reduce again.
      bool fixed = true;
      for (long i = t + 1; i < d.rows() && fixed; ++i)
        for (long j = t + 1; j < d.cols() && fixed; ++j)
          if (d.at(i, j) % d.at(t, t) != 0) {
            row_sub(d, t, i, Int(-1));
            row_sub(u, t, i, Int(-1));
            fixed = false;
          }
      if (fixed) break;
    }
    if (d.at(t, t) < 0) { negate_row(d, t); negate_row(u, t); }
  }

  SmithResult out{std::move(d), std::move(u), std::move(v), {}};
  for (long t = 0; t < n; ++t)
    if (out.d.at(t, t) != 0) out.divisors.push_back(out.d.at(t, t));

  if (!(out.u * a * out.v == out.d))
    throw internal_error("smith_normal_form: transform identity violated");
  if (abs(det(out.u.to_q())) != 1 || abs(det(out.v.to_q())) != 1)
    throw internal_error("smith_normal_form: transform not unimodular");
  for (std::size_t k = 0; k + 1 < out.divisors.size(); ++k)
    if (out.divisors[k + 1] % out.divisors[k] != 0)
      throw internal_error("smith_normal_form: divisor chain broken");
  return out;
}

ZMat z_right_kernel(const ZMat& a) {
  SmithResult s = smith_normal_form(a);
  long r = static_cast<long>(s.divisors.size());
  ZMat ker(a.cols(), a.cols() - r);
  for (long k = r; k < a.cols(); ++k)
    for (long i = 0; i < a.cols(); ++i) ker.at(i, k - r) = s.v.at(i, k);
  return ker;
}

}  // namespace logcurve
