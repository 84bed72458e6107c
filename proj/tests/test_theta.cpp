#include <doctest.h>

#include "logcurve/theta.hpp"

using namespace logcurve;
namespace th = logcurve::theta;

namespace {

Rat r(long p, long q = 1) { return Rat(p, q); }

Flt tol(const char* digits) {
  Flt t;
  t = digits;
  return t;
}

Flt fabsf_(const Flt& x) { return x < 0 ? Flt(-x) : x; }

}  // namespace

TEST_CASE("q-series arithmetic keeps the weaker precision") {
  th::QSeries a = th::qs_const(1, 5);
  th::QSeries b = th::qs_term(r(2), 1, -1, 3);
  th::QSeries s = a + b;
  CHECK(s.prec == 3);
  CHECK(s.coeff(0, 0) == 1);
  CHECK(s.coeff(1, -1) == 2);

  th::QSeries p = a * b;
  CHECK(p.prec == 3);
  CHECK(p.coeff(1, -1) == 2);

  // Orders at or above the joint precision are dropped by multiplication.
  th::QSeries high = th::qs_term(r(1), 2, 0, 3) * th::qs_term(r(1), 2, 0, 3);
  CHECK(high.prec == 3);
  CHECK(high.coeffs.empty());

  th::QSeries z = b - b;
  CHECK(z.coeffs.empty());
  CHECK(z.t_min() == 0);
  CHECK(z.t_max() == 0);

  CHECK(b.t_min() == -1);
  CHECK(b.t_max() == -1);

  th::QSeries c = th::qs_const(1, 4);
  CHECK_THROWS_AS(c.set(4, 0, r(1)), input_error);
  CHECK_THROWS_AS(c.set(-1, 0, r(1)), input_error);
  c.set(2, 3, r(5));
  CHECK(c.coeff(2, 3) == 5);
  c.set(2, 3, r(0));
  CHECK(c.coeff(2, 3) == 0);
}

TEST_CASE("truncation is a prefix and substitutions track degree windows") {
  th::QSeries t9 = th::theta_series(9);
  CHECK(th::truncate_qseries(t9, 5) == th::theta_series(5));
  CHECK(th::truncate_qseries(th::euler_factor(9), 4) == th::euler_factor(4));
  CHECK_THROWS_AS(th::truncate_qseries(t9, 10), input_error);

  // t -> q t sends order n, degree m to order n + m; declared precision
  // shrinks by the depth of the negative-degree window.
  th::QSeries s = th::qs_const(1, 5) + th::qs_term(r(1), 1, -1, 5);
  th::QSeries sub = th::substitute_t_qshift(s, 1);
  CHECK(sub.prec == 4);
  CHECK(sub.coeff(0, 0) == 1);
  CHECK(sub.coeff(0, -1) == 1);

  // A constant-order term of negative degree has nowhere to go.
  CHECK_THROWS_AS(th::substitute_t_qshift(th::qs_term(r(1), 0, -2, 5), 1),
                  input_error);
  CHECK_THROWS_AS(th::substitute_t_qshift(s, -1), input_error);

  th::QSeries scaled = th::substitute_t_scale(th::qs_term(r(1), 0, 2, 3),
                                              r(3));
  CHECK(scaled.coeff(0, 2) == r(1, 9));
  CHECK_THROWS_AS(th::substitute_t_scale(scaled, r(0)), input_error);
}

TEST_CASE("theta series low-order coefficients") {
  th::QSeries t1 = th::theta_series(1);
  CHECK(t1.coeff(0, 0) == 1);
  CHECK(t1.coeff(0, 1) == -1);
  CHECK(t1.coeffs.size() == 1);

  // (1 - t) - q (1 - t)(t + 1/t) through O(q^2).
  th::QSeries t2 = th::theta_series(2);
  CHECK(t2.coeff(0, 0) == 1);
  CHECK(t2.coeff(0, 1) == -1);
  CHECK(t2.coeff(1, -1) == -1);
  CHECK(t2.coeff(1, 0) == 1);
  CHECK(t2.coeff(1, 1) == -1);
  CHECK(t2.coeff(1, 2) == 1);

  CHECK_THROWS_AS(th::theta_series(0), input_error);

  th::QSeries e3 = th::euler_factor(3);
  CHECK(e3.coeff(0, 0) == 1);
  CHECK(e3.coeff(1, 0) == -1);
  CHECK(e3.coeff(2, 0) == -1);
}

TEST_CASE("shifted sections") {
  th::ThetaSection one = th::theta_shift(0, r(1), 4);
  CHECK(one.sign == 1);
  CHECK(one.t_exp == 0);
  CHECK(one.q_exp == 0);
  CHECK(one.unit == th::theta_series(4));

  th::ThetaSection half = th::theta_shift(0, r(2), 1);
  CHECK(half.unit.coeff(0, 0) == 1);
  CHECK(half.unit.coeff(0, 1) == r(-1, 2));

  // Base q itself: one transformation factor -a t^{-1}.
  th::ThetaSection shifted = th::theta_shift(1, r(1), 6);
  CHECK(shifted.sign == -1);
  CHECK(shifted.t_exp == 1);
  CHECK(shifted.q_exp == -1);
  CHECK(shifted.unit == th::theta_series(6));

  CHECK_THROWS_AS(th::theta_shift(0, r(0), 4), input_error);

  th::ThetaSection prod = th::section_mul(shifted, shifted);
  CHECK(prod.sign == 1);
  CHECK(prod.t_exp == 2);
  CHECK(prod.q_exp == -2);

  // Numerically the section value is theta(t / a) and obeys
  // value(q t) = -a t^{-1} value(t).  The series tail at order p with
  // degree window sqrt(2 p) stays far below the tolerance for p = 40.
  th::ThetaSection deep = th::theta_shift(1, r(1), 40);
  Rat q0 = r(1, 10);
  Rat t0 = r(3, 2);
  Flt direct = th::theta_numeric(q0, Rat(t0 / q0), 60);
  Flt via = th::eval_section(deep, q0, t0);
  CHECK(fabsf_(direct - via) <= tol("1e-20") * fabsf_(direct));

  Flt at_qt = th::eval_section(deep, q0, Rat(q0 * t0));
  Flt law = Flt(Rat(-q0 / t0)) * th::eval_section(deep, q0, t0);
  CHECK(fabsf_(at_qt - law) <= tol("1e-20") * fabsf_(law));
}

TEST_CASE("functional equation holds formally and numerically") {
  for (long p = 2; p <= 16; ++p) {
    th::IdentityReport rep = th::functional_equation_check(p);
    CHECK(rep.pass);
    CHECK(rep.prec == p);
    CHECK(rep.failures.empty());
  }

  // A corrupted coefficient is caught and named.
  th::QSeries bad = th::theta_series(12);
  bad.set(1, 0, bad.coeff(1, 0) + 1);
  th::IdentityReport rep = th::functional_equation_check_on(bad, 6);
  CHECK_FALSE(rep.pass);
  REQUIRE_FALSE(rep.failures.empty());
  CHECK(rep.failures.front().find("q^1") != std::string::npos);

  // |theta(q t) + t^{-1} theta(t)| at q = 1/10, t = 2.
  Rat q0 = r(1, 10);
  Flt residue = th::theta_numeric(q0, Rat(q0 * 2), 60) +
                th::theta_numeric(q0, r(2), 60) / 2;
  CHECK(fabsf_(residue) < tol("1e-30"));
}

TEST_CASE("triple product identity") {
  for (long p = 1; p <= 16; ++p) {
    th::IdentityReport rep = th::triple_product_check(p);
    CHECK(rep.pass);
    CHECK(rep.prec == p);
  }

  th::QSeries bad = th::theta_series(12);
  bad.set(3, 2, bad.coeff(3, 2) - 5);
  th::IdentityReport rep = th::triple_product_check_on(bad, 12);
  CHECK_FALSE(rep.pass);
  REQUIRE_FALSE(rep.failures.empty());
  CHECK(rep.failures.front().find("q^3") != std::string::npos);
}

TEST_CASE("series evaluation matches the truncated product") {
  Rat q0 = r(1, 10);
  Rat t0 = r(3, 2);
  long p = 8;
  Flt series = th::eval_qseries(th::theta_series(p), q0, t0);
  Flt product = th::theta_numeric(q0, t0, p);
  Flt scale = fabsf_(product) > 1 ? fabsf_(product) : Flt(1);
  CHECK(fabsf_(series - product) <= Flt(10) * tol("1e-8") * scale);
}

TEST_CASE("numeric backend validates its domain") {
  CHECK_THROWS_AS(th::theta_numeric(r(1), r(2), 10), input_error);
  CHECK_THROWS_AS(th::theta_numeric(r(-3, 2), r(2), 10), input_error);
  CHECK_THROWS_AS(th::theta_numeric(r(1, 10), r(0), 10), input_error);
  CHECK_THROWS_AS(th::theta_numeric(r(1, 10), r(2), 0), input_error);
  // q = 0 degenerates to 1 - t.
  CHECK(th::theta_numeric(r(0), r(3), 5) == Flt(-2));
}

TEST_CASE("lattice membership is decided exactly") {
  Rat q0 = r(1, 10);
  CHECK(th::on_theta_lattice(q0, r(2), r(2), 10));
  CHECK(th::on_theta_lattice(q0, r(2), r(1, 5), 10));     // 2 q
  CHECK(th::on_theta_lattice(q0, r(2), r(2000), 10));     // 2 q^-3
  CHECK_FALSE(th::on_theta_lattice(q0, r(2), r(3), 10));
  CHECK_FALSE(th::on_theta_lattice(q0, r(2), r(1, 7), 10));
}

TEST_CASE("cross ratio relation") {
  th::NumericReport rep =
      th::cross_ratio_check(r(1, 10), r(2), r(3), r(5), 80);
  CHECK(rep.pass);
  CHECK(rep.max_error <= 1e-20);

  CHECK_THROWS_WITH_AS(th::cross_ratio_check(r(1, 10), r(2), r(3), r(2), 80),
                       doctest::Contains("zero lattice"), input_error);
  CHECK_THROWS_AS(th::cross_ratio_check(r(0), r(2), r(3), r(5), 80),
                  input_error);
}

TEST_CASE("divisor support sits exactly on the shift lattice") {
  th::NumericReport rep = th::divisor_check(r(1, 10), r(3), 2, 30);
  CHECK(rep.pass);
  CHECK(rep.max_error == 0.0);
  CHECK(rep.failures.empty());

  CHECK_THROWS_AS(th::divisor_check(r(1, 10), r(3), 5, 5), input_error);
  CHECK_THROWS_AS(th::divisor_check(r(1, 10), r(0), 2, 30), input_error);
}

TEST_CASE("two-variable form depends only on the ratio") {
  Rat q0 = r(1, 10);
  CHECK(th::theta_delta(q0, r(1), r(7, 3), 50) ==
        th::theta_numeric(q0, r(7, 3), 50));
  // Scaling both slots by q leaves the ratio unchanged.
  CHECK(th::theta_delta(q0, Rat(q0 * 2), Rat(q0 * 5), 50) ==
        th::theta_delta(q0, r(2), r(5), 50));

  // Shifting the second slot alone applies -t1 t2^{-1}.
  Flt lhs = th::theta_delta(q0, r(2), Rat(q0 * 5), 60);
  Flt rhs = Flt(r(-2, 5)) * th::theta_delta(q0, r(2), r(5), 60);
  CHECK(fabsf_(lhs - rhs) <= tol("1e-20") * fabsf_(rhs));

  CHECK(th::theta_delta_formal(r(1), 6) == th::theta_series(6));
  th::QSeries d2 = th::theta_delta_formal(r(2), 2);
  CHECK(d2.coeff(0, 1) == r(-1, 2));
  CHECK(d2.coeff(1, -1) == -2);
  CHECK(d2.coeff(1, 2) == r(1, 4));
  CHECK_THROWS_AS(th::theta_delta(q0, r(0), r(1), 50), input_error);
}

TEST_CASE("multiplicative relations among shifted sections") {
  Rat q0 = r(1, 10);

  // Cross ratio instance: theta_{xy} theta_1 / (theta_x theta_y).
  th::MultiRelationReport cross = th::multi_relation_check(
      {r(2), r(3), r(6), r(1)}, {-1, -1, 1, 1}, q0, 60);
  CHECK(cross.pass);
  CHECK(cross.c == 0);
  CHECK(cross.max_error <= 1e-20);

  th::MultiRelationReport trivial =
      th::multi_relation_check({r(2), r(2)}, {1, -1}, q0, 60);
  CHECK(trivial.pass);
  CHECK(trivial.c == 0);

  // Bases 2 and 2q differ by one lattice step, so the product is q^{-1}.
  th::MultiRelationReport step =
      th::multi_relation_check({r(2), r(1, 5)}, {1, -1}, q0, 60);
  CHECK(step.pass);
  CHECK(step.c == -1);

  CHECK_THROWS_WITH_AS(
      th::multi_relation_check({r(2), r(3)}, {1, 1}, q0, 60),
      doctest::Contains("degree hypothesis"), input_error);
  CHECK_THROWS_WITH_AS(
      th::multi_relation_check({r(2), r(3)}, {1, -1}, q0, 60),
      doctest::Contains("lattice hypothesis"), input_error);
  CHECK_THROWS_AS(th::multi_relation_check({}, {}, q0, 60), input_error);
}
