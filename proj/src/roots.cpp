#include "logcurve/roots.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <sstream>

namespace logcurve {

namespace {

std::vector<std::complex<double>> simple_roots(const QPoly& f) {
  long n = f.degree();
  if (n <= 0) return {};
  if (n == 1) return {std::complex<double>(to_double(-f.c[0] / f.c[1]), 0.0)};
  Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(n, n);
  Rat inv = Rat(1) / f.lead();
  for (long i = 0; i < n; ++i) comp(i, n - 1) = -to_double(f.c[i] * inv);
  for (long i = 1; i < n; ++i) comp(i, i - 1) = 1.0;
  Eigen::EigenSolver<Eigen::MatrixXd> es(comp);
  std::vector<std::complex<double>> out;
  out.reserve(n);
  for (long i = 0; i < n; ++i) out.push_back(es.eigenvalues()[i]);
  return out;
}

std::string cplx_str(const std::complex<double>& z) {
  std::ostringstream os;
  os << z.real();
  if (z.imag() >= 0) os << "+" << z.imag() << "i";
  else os << z.imag() << "i";
  return os.str();
}

}  // namespace

std::vector<std::pair<std::complex<double>, long>> complex_roots(const QPoly& p) {
  if (p.is_zero()) throw internal_error("complex_roots of zero polynomial");
  std::vector<std::pair<std::complex<double>, long>> out;
  for (const auto& [f, mult] : squarefree_decomposition(p))
    for (const auto& r : simple_roots(f)) out.emplace_back(r, mult);
  return out;
}

WeilClassification weil_weight_partition(const QPoly& charpoly_monic,
                                         const Int& q, double tol) {
  if (q < 2) throw input_error("field size must be at least 2");
  WeilClassification cls;
  double logq = std::log(q.get_d());
  for (const auto& [alpha, mult] : complex_roots(charpoly_monic)) {
    double a2 = std::norm(alpha);
    if (!(a2 > 0.0)) {
      throw input_error("eigenvalue " + cplx_str(alpha) +
                        " is not a Weil number for q=" + int_str(q) +
                        " (zero modulus)");
    }
    long w = std::llround(2.0 * std::log(a2) / (2.0 * logq));
    double qw = std::pow(q.get_d(), static_cast<double>(w));
    if (std::abs(a2 - qw) > tol * std::max(1.0, qw)) {
      std::ostringstream os;
      os << "eigenvalue " << cplx_str(alpha) << " has |alpha|^2 = " << a2
         << ", not a half-integral power of q=" << int_str(q)
         << " within tolerance";
      throw input_error(os.str());
    }
    cls.dim_by_weight[w] += mult;
  }
  return cls;
}

bool roots_have_weight(const QPoly& charpoly_monic, const Int& q, long w,
                       double tol, std::string* diagnostic) {
  if (charpoly_monic.degree() <= 0) return true;
  try {
    WeilClassification cls = weil_weight_partition(charpoly_monic, q, tol);
    for (const auto& [weight, dim] : cls.dim_by_weight) {
      if (weight != w && dim > 0) {
        if (diagnostic != nullptr) {
          std::ostringstream os;
          os << dim << " eigenvalue(s) of weight " << weight << ", expected "
             << w;
          *diagnostic = os.str();
        }
        return false;
      }
    }
    return true;
  } catch (const input_error& e) {
    if (diagnostic != nullptr) *diagnostic = e.what();
    return false;
  }
}

}  // namespace logcurve
