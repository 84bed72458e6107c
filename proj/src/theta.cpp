#include "logcurve/theta.hpp"

#include <algorithm>
#include <sstream>

namespace logcurve::theta {

namespace {

void require(bool ok, const std::string& msg) {
  if (!ok) throw input_error(msg);
}

// Drops explicit zeros and empty rows so equality is structural.
void normalize(QSeries& s) {
  for (auto it = s.coeffs.begin(); it != s.coeffs.end();) {
    auto& row = it->second;
    for (auto jt = row.begin(); jt != row.end();) {
      if (jt->second == 0) {
        jt = row.erase(jt);
      } else {
        ++jt;
      }
    }
    if (row.empty()) {
      it = s.coeffs.erase(it);
    } else {
      ++it;
    }
  }
}

std::string term_name(long qexp, long texp) {
  std::ostringstream os;
  os << "q^" << qexp << " t^" << texp;
  return os.str();
}

// Smallest b whose contribution q^{b(b+1)/2} t^{-b} (or the mirrored
// positive-degree term) cannot reach below order prec after t -> qt.  Guard
// orders beyond this bound make the substituted product exact through prec.
long guard_orders(long prec) {
  long b = 1;
  while (b * (b + 1) / 2 <= prec + b) ++b;
  return b;
}

using TermMap = std::map<long, std::map<long, Rat>>;

void accumulate(TermMap& m, long qexp, long texp, const Rat& v) {
  Rat& slot = m[qexp][texp];
  slot += v;
  if (slot == 0) {
    m[qexp].erase(texp);
    if (m[qexp].empty()) m.erase(qexp);
  }
}

// Coefficientwise comparison of two cleaned term maps below order prec;
// negative orders, which can only arise from a corrupted candidate, are
// always compared.
IdentityReport compare_terms(const TermMap& lhs, const TermMap& rhs,
                             long prec) {
  IdentityReport rep;
  rep.prec = prec;
  auto visit = [&](const TermMap& m) {
    for (const auto& [n, row] : m) {
      if (n >= prec) continue;
      for (const auto& [t, v] : row) {
        (void)v;
        Rat a = 0;
        Rat b = 0;
        if (auto it = lhs.find(n); it != lhs.end()) {
          if (auto jt = it->second.find(t); jt != it->second.end())
            a = jt->second;
        }
        if (auto it = rhs.find(n); it != rhs.end()) {
          if (auto jt = it->second.find(t); jt != it->second.end())
            b = jt->second;
        }
        if (a != b) {
          std::string name = term_name(n, t) + ": " + rat_str(a) +
                             " != " + rat_str(b);
          if (std::find(rep.failures.begin(), rep.failures.end(), name) ==
              rep.failures.end())
            rep.failures.push_back(name);
        }
      }
    }
  };
  visit(lhs);
  visit(rhs);
  rep.pass = rep.failures.empty();
  return rep;
}

Flt flt_abs(const Flt& x) { return x < 0 ? Flt(-x) : x; }

Flt tolerance(const char* digits) {
  Flt t;
  t = digits;  // parsed at working precision
  return t;
}

// |x - y| <= tol * max(1, |x|, |y|); returns the scaled error.
Flt relative_error(const Flt& x, const Flt& y) {
  Flt scale = 1;
  if (flt_abs(x) > scale) scale = flt_abs(x);
  if (flt_abs(y) > scale) scale = flt_abs(y);
  return flt_abs(x - y) / scale;
}

}  // namespace

Rat QSeries::coeff(long qexp, long texp) const {
  auto it = coeffs.find(qexp);
  if (it == coeffs.end()) return 0;
  auto jt = it->second.find(texp);
  if (jt == it->second.end()) return 0;
  return jt->second;
}

void QSeries::set(long qexp, long texp, const Rat& v) {
  require(qexp >= 0 && qexp < prec, "coefficient order out of range");
  if (v == 0) {
    auto it = coeffs.find(qexp);
    if (it != coeffs.end()) {
      it->second.erase(texp);
      if (it->second.empty()) coeffs.erase(it);
    }
    return;
  }
  coeffs[qexp][texp] = v;
}

long QSeries::t_min() const {
  long best = 0;
  bool seen = false;
  for (const auto& [n, row] : coeffs) {
    (void)n;
    if (row.empty()) continue;
    long lo = row.begin()->first;
    if (!seen || lo < best) best = lo;
    seen = true;
  }
  return seen ? best : 0;
}

long QSeries::t_max() const {
  long best = 0;
  bool seen = false;
  for (const auto& [n, row] : coeffs) {
    (void)n;
    if (row.empty()) continue;
    long hi = row.rbegin()->first;
    if (!seen || hi > best) best = hi;
    seen = true;
  }
  return seen ? best : 0;
}

bool QSeries::operator==(const QSeries& o) const {
  return prec == o.prec && coeffs == o.coeffs;
}

QSeries qs_const(const Rat& c, long prec) {
  require(prec >= 0, "precision must be nonnegative");
  QSeries s;
  s.prec = prec;
  if (prec > 0 && c != 0) s.coeffs[0][0] = c;
  return s;
}

QSeries qs_term(const Rat& c, long qexp, long texp, long prec) {
  require(prec >= 0, "precision must be nonnegative");
  QSeries s;
  s.prec = prec;
  if (qexp >= 0 && qexp < prec && c != 0) s.coeffs[qexp][texp] = c;
  return s;
}

QSeries operator+(const QSeries& a, const QSeries& b) {
  QSeries s;
  s.prec = std::min(a.prec, b.prec);
  for (const QSeries* src : {&a, &b})
    for (const auto& [n, row] : src->coeffs) {
      if (n >= s.prec) break;
      for (const auto& [t, v] : row) accumulate(s.coeffs, n, t, v);
    }
  return s;
}

QSeries operator-(const QSeries& a, const QSeries& b) {
  return a + b * Rat(-1);
}

QSeries operator*(const QSeries& a, const QSeries& b) {
  QSeries s;
  s.prec = std::min(a.prec, b.prec);
  for (const auto& [na, rowa] : a.coeffs) {
    if (na >= s.prec) break;
    for (const auto& [nb, rowb] : b.coeffs) {
      if (na + nb >= s.prec) break;
      for (const auto& [ta, va] : rowa)
        for (const auto& [tb, vb] : rowb)
          accumulate(s.coeffs, na + nb, ta + tb, va * vb);
    }
  }
  return s;
}

QSeries operator*(const QSeries& a, const Rat& c) {
  QSeries s;
  s.prec = a.prec;
  if (c == 0) return s;
  s.coeffs = a.coeffs;
  for (auto& [n, row] : s.coeffs) {
    (void)n;
    for (auto& [t, v] : row) {
      (void)t;
      v *= c;
    }
  }
  return s;
}

QSeries truncate_qseries(const QSeries& s, long prec) {
  require(prec >= 0 && prec <= s.prec,
          "truncation target exceeds the available precision");
  QSeries out;
  out.prec = prec;
  for (const auto& [n, row] : s.coeffs) {
    if (n >= prec) break;
    out.coeffs[n] = row;
  }
  return out;
}

QSeries substitute_t_scale(const QSeries& s, const Rat& u) {
  require(u != 0, "substitution base must be nonzero");
  QSeries out;
  out.prec = s.prec;
  for (const auto& [n, row] : s.coeffs)
    for (const auto& [t, v] : row)
      accumulate(out.coeffs, n, t, v * rat_pow(u, -t));
  normalize(out);
  return out;
}

QSeries substitute_t_qshift(const QSeries& s, long j) {
  require(j >= 0, "shift exponent must be nonnegative");
  long drop = std::min<long>(0, s.t_min()) * j;
  long prec = s.prec + drop;
  require(prec > 0, "insufficient precision for this substitution");
  QSeries out;
  out.prec = prec;
  for (const auto& [n, row] : s.coeffs)
    for (const auto& [t, v] : row) {
      long target = n + j * t;
      if (target < 0)
        throw input_error("substitution produces a negative order at " +
                          term_name(n, t));
      if (target < prec) accumulate(out.coeffs, target, t, v);
    }
  return out;
}

Flt eval_qseries(const QSeries& s, const Rat& q0, const Rat& t0) {
  require(t0 != 0 || s.t_min() >= 0, "evaluation at t = 0 needs t^-k absent");
  Rat acc = 0;
  for (const auto& [n, row] : s.coeffs)
    for (const auto& [t, v] : row) acc += v * rat_pow(q0, n) * rat_pow(t0, t);
  return Flt(acc);
}

QSeries theta_series(long prec) {
  require(prec >= 1, "precision must be at least 1");
  QSeries s = qs_const(1, prec);
  for (long n = 0; n < prec; ++n)
    s = s * (qs_const(1, prec) - qs_term(1, n, 1, prec));
  for (long n = 1; n < prec; ++n)
    s = s * (qs_const(1, prec) - qs_term(1, n, -1, prec));
  return s;
}

QSeries euler_factor(long prec) {
  require(prec >= 1, "precision must be at least 1");
  QSeries s = qs_const(1, prec);
  for (long n = 1; n < prec; ++n)
    s = s * (qs_const(1, prec) - qs_term(1, n, 0, prec));
  return s;
}

ThetaSection section_mul(const ThetaSection& a, const ThetaSection& b) {
  ThetaSection s;
  s.sign = a.sign * b.sign;
  s.t_exp = a.t_exp + b.t_exp;
  s.q_exp = a.q_exp + b.q_exp;
  s.unit = a.unit * b.unit;
  return s;
}

Flt eval_section(const ThetaSection& s, const Rat& q0, const Rat& t0) {
  if (s.q_exp.get_den() != 1)
    throw internal_error("section q-exponent is not an integer");
  long qe = s.q_exp.get_num().get_si();
  require(q0 != 0 || qe >= 0, "cannot evaluate a q-pole at q = 0");
  require(t0 != 0 || s.t_exp >= 0, "cannot evaluate a t-pole at t = 0");
  Rat prefactor = rat_pow(q0, qe) * rat_pow(t0, s.t_exp) * s.sign;
  return Flt(prefactor) * eval_qseries(s.unit, q0, t0);
}

ThetaSection theta_shift(long a_texp, const Rat& a_unit, long prec) {
  require(a_unit != 0, "shift base must be nonzero");
  require(prec >= 1, "precision must be at least 1");
  // Each q-power in the base applies t -> t/q once; iterating the relation
  // value(qt) = -t^{-1} value(t) collects the closed form
  //   (-1)^j u^{-j} q^{-j(j+1)/2} t^j * theta(t/u)   for the base u q^j.
  ThetaSection s;
  long j = a_texp;
  s.sign = (j % 2 == 0) ? 1 : -1;
  s.t_exp = j;
  s.q_exp = Rat(-j) * (j + 1) / 2;
  s.unit = substitute_t_scale(theta_series(prec), a_unit) *
           rat_pow(a_unit, -j);
  return s;
}

IdentityReport functional_equation_check_on(const QSeries& candidate,
                                            long prec) {
  require(prec >= 2, "precision must be at least 2");
  long window = std::max<long>(0, -candidate.t_min());
  long usable = std::min(prec, candidate.prec - window);
  require(usable >= 1,
          "candidate precision cannot support the requested order");
  TermMap lhs;  // candidate at qt
  TermMap rhs;  // -t^{-1} candidate at t
  for (const auto& [n, row] : candidate.coeffs)
    for (const auto& [t, v] : row) {
      if (n + t < usable) accumulate(lhs, n + t, t, v);
      if (n < usable) accumulate(rhs, n, t - 1, -v);
    }
  return compare_terms(lhs, rhs, usable);
}

IdentityReport functional_equation_check(long prec) {
  require(prec >= 2, "precision must be at least 2");
  // Guard orders keep every term that the substitution can pull below prec.
  return functional_equation_check_on(theta_series(prec + guard_orders(prec)),
                                      prec);
}

IdentityReport triple_product_check_on(const QSeries& candidate, long prec) {
  require(prec >= 1, "precision must be at least 1");
  long usable = std::min(prec, candidate.prec);
  require(usable >= 1,
          "candidate precision cannot support the requested order");
  QSeries lhs = euler_factor(candidate.prec) * candidate;
  TermMap rhs;
  for (long j = 0; j * (j - 1) / 2 < usable; ++j)
    accumulate(rhs, j * (j - 1) / 2, j, (j % 2 == 0) ? 1 : -1);
  for (long j = -1; j * (j - 1) / 2 < usable; --j)
    accumulate(rhs, j * (j - 1) / 2, j, (j % 2 == 0) ? 1 : -1);
  return compare_terms(lhs.coeffs, rhs, usable);
}

IdentityReport triple_product_check(long prec) {
  return triple_product_check_on(theta_series(prec), prec);
}

Flt theta_numeric(const Rat& q, const Rat& t, long trunc) {
  require(abs(q) < 1, "requires |q| < 1");
  require(t != 0, "requires t != 0");
  require(trunc >= 1, "truncation must be at least 1");
  // Factors stay rational so lattice zeros are exact, not approximate.
  Flt acc = 1;
  Rat qp = 1;
  for (long n = 0; n < trunc; ++n) {
    acc *= Flt(Rat(1 - qp * t));
    qp *= q;
  }
  qp = q;
  for (long n = 1; n <= trunc; ++n) {
    acc *= Flt(Rat(1 - qp / t));
    qp *= q;
  }
  return acc;
}

Flt theta_shift_numeric(const Rat& q, const Rat& a, const Rat& t,
                        long trunc) {
  require(a != 0, "shift base must be nonzero");
  return theta_numeric(q, Rat(t / a), trunc);
}

bool on_theta_lattice(const Rat& q, const Rat& a, const Rat& t, long trunc) {
  require(a != 0, "shift base must be nonzero");
  require(t != 0, "requires t != 0");
  Rat s = t / a;
  if (s == 1) return true;
  if (q == 0) return false;
  Rat up = 1;
  Rat down = s;
  for (long m = 1; m <= trunc; ++m) {
    up *= q;
    down *= q;
    if (s == up || down == 1) return true;
  }
  return false;
}

NumericReport cross_ratio_check(const Rat& q, const Rat& a, const Rat& b,
                                const Rat& t, long trunc) {
  require(q != 0 && abs(q) < 1, "requires 0 < |q| < 1");
  require(a != 0 && b != 0, "shift base must be nonzero");
  require(t != 0, "requires t != 0");
  require(trunc >= 1, "truncation must be at least 1");
  for (const Rat& base : {a, b})
    if (on_theta_lattice(q, base, t, trunc))
      throw input_error("t = " + rat_str(t) + " lies on the zero lattice " +
                        rat_str(base) + "*q^Z of a denominator");
  Rat ab = a * b;
  Rat qt = q * t;
  Flt lhs = theta_shift_numeric(q, ab, qt, trunc) *
            theta_shift_numeric(q, 1, qt, trunc) *
            theta_shift_numeric(q, a, t, trunc) *
            theta_shift_numeric(q, b, t, trunc);
  Flt rhs = theta_shift_numeric(q, ab, t, trunc) *
            theta_shift_numeric(q, 1, t, trunc) *
            theta_shift_numeric(q, a, qt, trunc) *
            theta_shift_numeric(q, b, qt, trunc);
  NumericReport rep;
  Flt err = relative_error(lhs, rhs);
  rep.max_error = err.get_d();
  rep.pass = err <= tolerance("1e-20");
  if (!rep.pass)
    rep.failures.push_back("cross ratio mismatch at t = " + rat_str(t));
  return rep;
}

NumericReport divisor_check(const Rat& q, const Rat& a, long m_range,
                            long trunc) {
  require(q != 0 && abs(q) < 1, "requires 0 < |q| < 1");
  require(a != 0, "shift base must be nonzero");
  require(m_range >= 0, "exponent range must be nonnegative");
  require(trunc > m_range, "truncation must exceed the exponent range");
  NumericReport rep;
  rep.pass = true;
  Flt zero_tol = tolerance("1e-20");
  Flt floor_tol = tolerance("1e-6");
  for (long m = -m_range; m <= m_range; ++m) {
    Flt v = theta_shift_numeric(q, a, Rat(a * rat_pow(q, m)), trunc);
    Flt err = flt_abs(v);
    if (err.get_d() > rep.max_error) rep.max_error = err.get_d();
    if (err > zero_tol) {
      rep.pass = false;
      rep.failures.push_back("nonzero value at lattice exponent " +
                             std::to_string(m));
    }
  }
  // Points a*(1 + k/101) sit strictly between consecutive lattice rungs.
  for (long k = 1; k <= 100; ++k) {
    Rat r = 1 + Rat(k, 101);
    Flt v = theta_shift_numeric(q, a, Rat(a * r), trunc);
    if (flt_abs(v) <= floor_tol) {
      rep.pass = false;
      rep.failures.push_back("off-lattice value too small at ratio " +
                             rat_str(r));
    }
  }
  return rep;
}

Flt theta_delta(const Rat& q, const Rat& t1, const Rat& t2, long trunc) {
  require(t1 != 0 && t2 != 0, "requires t != 0");
  return theta_numeric(q, Rat(t2 / t1), trunc);
}

QSeries theta_delta_formal(const Rat& t1, long prec) {
  return substitute_t_scale(theta_series(prec), t1);
}

MultiRelationReport multi_relation_check(const std::vector<Rat>& a,
                                         const std::vector<long>& n,
                                         const Rat& q, long trunc) {
  require(!a.empty() && a.size() == n.size(),
          "bases and exponents must be nonempty lists of equal length");
  require(q != 0 && abs(q) < 1, "requires 0 < |q| < 1");
  require(trunc >= 1, "truncation must be at least 1");
  long degree = 0;
  Rat product = 1;
  for (std::size_t i = 0; i < a.size(); ++i) {
    require(a[i] != 0, "shift base must be nonzero");
    degree += n[i];
    product *= rat_pow(a[i], n[i]);
  }
  if (degree != 0)
    throw input_error("degree hypothesis violated: exponents sum to " +
                      std::to_string(degree) + ", not 0");
  long c = 0;
  bool found = (product == 1);
  Rat up = 1;
  Rat down = product;
  for (long m = 1; !found && m <= 4 * trunc + 16; ++m) {
    up *= q;
    down *= q;
    if (product == up) {
      c = m;
      found = true;
    } else if (down == 1) {
      c = -m;
      found = true;
    }
  }
  if (!found)
    throw input_error("lattice hypothesis violated: base product " +
                      rat_str(product) + " is not an integer power of q");

  MultiRelationReport rep;
  rep.c = c;
  rep.pass = true;
  Flt tol = tolerance("1e-20");
  long tested = 0;
  for (long k = 1; k <= 24; ++k) {
    Rat t = 1 + Rat(k, 101);
    bool skip = false;
    for (const Rat& base : a)
      if (on_theta_lattice(q, base, t, trunc)) skip = true;
    if (skip) continue;
    ++tested;
    // Cleared form: q^{-c} * NUM(qt) * DEN(t) == NUM(t) * DEN(qt).
    Flt lhs = Flt(rat_pow(q, -c));
    Flt rhs = 1;
    Rat qt = q * t;
    for (std::size_t i = 0; i < a.size(); ++i) {
      for (long e = 0; e < n[i]; ++e) {
        lhs *= theta_shift_numeric(q, a[i], qt, trunc);
        rhs *= theta_shift_numeric(q, a[i], t, trunc);
      }
      for (long e = 0; e < -n[i]; ++e) {
        lhs *= theta_shift_numeric(q, a[i], t, trunc);
        rhs *= theta_shift_numeric(q, a[i], qt, trunc);
      }
    }
    Flt err = relative_error(lhs, rhs);
    if (err.get_d() > rep.max_error) rep.max_error = err.get_d();
    if (err > tol) {
      rep.pass = false;
      rep.failures.push_back("shift invariance fails at t = " + rat_str(t));
    }
  }
  if (tested == 0) {
    rep.pass = false;
    rep.failures.push_back("every grid point met a zero lattice");
  }
  return rep;
}

}  // namespace logcurve::theta
