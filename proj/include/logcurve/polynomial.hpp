#pragma once

#include <complex>
#include <utility>
#include <vector>

#include "logcurve/rational.hpp"

namespace logcurve {

/// Polynomial over Q.  c[i] is the coefficient of T^i; no trailing zeros.
struct QPoly {
  std::vector<Rat> c;

  QPoly() = default;
  explicit QPoly(std::vector<Rat> coeffs) : c(std::move(coeffs)) { trim(); }
  static QPoly constant(const Rat& x) { return QPoly({x}); }

  void trim() {
    while (!c.empty() && c.back() == 0) c.pop_back();
  }
  bool is_zero() const { return c.empty(); }
  long degree() const { return static_cast<long>(c.size()) - 1; }
  const Rat& lead() const { return c.back(); }
  Rat coeff(long i) const {
    return i >= 0 && i < static_cast<long>(c.size()) ? c[i] : Rat(0);
  }
  bool operator==(const QPoly& o) const { return c == o.c; }
};

QPoly operator+(const QPoly& a, const QPoly& b);
QPoly operator-(const QPoly& a, const QPoly& b);
QPoly operator*(const QPoly& a, const QPoly& b);
QPoly operator*(const QPoly& a, const Rat& s);

// Quotient and remainder; b must be nonzero.
std::pair<QPoly, QPoly> divmod(const QPoly& a, const QPoly& b);

QPoly poly_gcd(const QPoly& a, const QPoly& b);  // monic unless zero
QPoly derivative(const QPoly& a);
QPoly monic(const QPoly& a);
Rat eval(const QPoly& a, const Rat& x);
std::complex<double> eval(const QPoly& a, const std::complex<double>& x);

// Largest k with (T - root)^k dividing a, by repeated exact division.
long root_multiplicity(const QPoly& a, const Rat& root);

// Yun decomposition: a = lead * prod f_k^k with the f_k squarefree, monic,
// pairwise coprime.  Pairs are (f_k, k) for the nontrivial f_k only.
std::vector<std::pair<QPoly, long>> squarefree_decomposition(const QPoly& a);
QPoly squarefree_part(const QPoly& a);

// T^deg * a(1/T).  With deg = degree(a) this swaps roots and reciprocal
// roots, converting between det(1 - F T) and det(T I - F) normalizations.
QPoly reverse_poly(const QPoly& a, long deg);

std::string poly_str(const QPoly& a, const std::string& var = "T");

}  // namespace logcurve
