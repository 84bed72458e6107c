#ifndef LOGCURVE_THETA_HPP
#define LOGCURVE_THETA_HPP

#include <map>
#include <string>
#include <vector>

#include "logcurve/rational.hpp"

namespace logcurve::theta {

/// Truncated series in q whose coefficients are Laurent polynomials in t
/// with exact rational entries.  Orders 0 <= n < prec are meaningful;
/// arithmetic propagates the weaker precision of the operands and never
/// stores an order at or beyond it.
struct QSeries {
  long prec = 0;
  std::map<long, std::map<long, Rat>> coeffs;  // q-order -> t-degree -> value

  Rat coeff(long qexp, long texp) const;
  void set(long qexp, long texp, const Rat& v);
  long t_min() const;  // 0 for the zero series
  long t_max() const;
  bool operator==(const QSeries& o) const;
};

QSeries qs_const(const Rat& c, long prec);
QSeries qs_term(const Rat& c, long qexp, long texp, long prec);
QSeries operator+(const QSeries& a, const QSeries& b);
QSeries operator-(const QSeries& a, const QSeries& b);
QSeries operator*(const QSeries& a, const QSeries& b);
QSeries operator*(const QSeries& a, const Rat& s);
QSeries truncate_qseries(const QSeries& s, long prec);

// t -> t/u, i.e. each t^m picks up u^{-m}.  u must be nonzero.
QSeries substitute_t_scale(const QSeries& s, const Rat& u);

// t -> q^j t with j >= 0: order n, degree m lands at order n + j m.  Terms
// of negative t-degree lower their q-order, so the declared precision drops
// to prec + j * min(t_min, 0); a term landing below order 0 is rejected.
QSeries substitute_t_qshift(const QSeries& s, long j);

// Exact value at rational q0, t0 of the truncated polynomial.
Flt eval_qseries(const QSeries& s, const Rat& q0, const Rat& t0);

// prod_{n>=0} (1 - q^n t) * prod_{n>=1} (1 - q^n t^{-1}) through O(q^prec);
// factor n only touches orders >= n, so the product is cut at n = prec.
QSeries theta_series(long prec);

// prod_{n>=1} (1 - q^n) through O(q^prec), the weight term of the triple
// product identity.
QSeries euler_factor(long prec);

/// Multiplicative normal form sign * q^q_exp * t^t_exp * unit(t) used for
/// the shifted series: the lattice part of the shift cannot stay inside a
/// plain q-series.  q_exp is integral for every shift produced here.
struct ThetaSection {
  int sign = 1;
  long t_exp = 0;
  Rat q_exp;
  QSeries unit;
};

ThetaSection section_mul(const ThetaSection& a, const ThetaSection& b);
Flt eval_section(const ThetaSection& s, const Rat& q0, const Rat& t0);

// theta_a(t) = theta(t / a) for a = a_unit * q^a_texp.  For a_texp = 0 the
// section is just the substituted series; each q-power in a contributes the
// transformation factor -a t^{-1}, collected into the normal form.
ThetaSection theta_shift(long a_texp, const Rat& a_unit, long prec);

struct IdentityReport {
  bool pass = false;
  long prec = 0;
  std::vector<std::string> failures;  // "q^n t^m: lhs != rhs" mismatches
};

// theta(qt) + t^{-1} theta(t) == 0, coefficientwise through O(q^prec).  The
// series is computed with enough guard orders that the substitution loses
// nothing below prec.
IdentityReport functional_equation_check(long prec);
IdentityReport functional_equation_check_on(const QSeries& candidate,
                                            long prec);

// euler_factor * theta == sum_n (-1)^n q^{n(n-1)/2} t^n, both sides built
// independently, through O(q^prec).
IdentityReport triple_product_check(long prec);
IdentityReport triple_product_check_on(const QSeries& candidate, long prec);

struct NumericReport {
  bool pass = false;
  double max_error = 0.0;
  std::vector<std::string> failures;
};

// Truncated product value with exact rational factors, accumulated in
// arbitrary-precision floating point.  Requires |q| < 1, t != 0, trunc >= 1.
Flt theta_numeric(const Rat& q, const Rat& t, long trunc);

// theta(t / a) for rational a != 0.
Flt theta_shift_numeric(const Rat& q, const Rat& a, const Rat& t, long trunc);

// Exact test for t in a * q^Z within exponent range |m| <= trunc.
bool on_theta_lattice(const Rat& q, const Rat& a, const Rat& t, long trunc);

// theta_{ab}(qt) theta_1(qt) theta_a(t) theta_b(t) against the same product
// with the substituted and plain arguments exchanged, to relative 1e-20.
// Arguments on the zero lattices of the denominators are rejected.
NumericReport cross_ratio_check(const Rat& q, const Rat& a, const Rat& b,
                                const Rat& t, long trunc);

// theta_a vanishes on a q^Z (exact zero factors once trunc covers the
// exponent) and stays bounded away from zero on a fixed off-lattice grid.
NumericReport divisor_check(const Rat& q, const Rat& a, long m_range,
                            long trunc);

// theta(t2 / t1); the two-variable form depends only on the ratio.
Flt theta_delta(const Rat& q, const Rat& t1, const Rat& t2, long trunc);

// theta(t / t1) as a series in t with t1 a rational parameter; t1 = 1
// recovers theta_series exactly.
QSeries theta_delta_formal(const Rat& t1, long prec);

struct MultiRelationReport {
  bool pass = false;
  long c = 0;  // the detected exponent with prod a_i^{n_i} = q^c
  double max_error = 0.0;
  std::vector<std::string> failures;
};

// For sum n_i = 0 and prod a_i^{n_i} = q^c: the combination
// t^{-c} prod theta_{a_i}(t)^{n_i} is q-shift invariant.  Verified on a
// fixed grid in cleared-denominator form; hypothesis violations are
// rejected with the failing hypothesis named.
MultiRelationReport multi_relation_check(const std::vector<Rat>& a,
                                         const std::vector<long>& n,
                                         const Rat& q, long trunc);

}  // namespace logcurve::theta

#endif
