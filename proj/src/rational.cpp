#include "logcurve/rational.hpp"

#include <cstdlib>

namespace logcurve {

unsigned long working_precision_bits() {
  static const unsigned long bits = [] {
    const char* env = std::getenv("LOGCURVE_PRECISION");
    if (env == nullptr || *env == '\0') return 128ul;
    char* end = nullptr;
    unsigned long v = std::strtoul(env, &end, 10);
    if (end == nullptr || *end != '\0' || v == 0) return 128ul;
    return v < 64 ? 64ul : v;
  }();
  return bits;
}

void init_numeric_precision() { mpf_set_default_prec(working_precision_bits()); }

Rat parse_rat(const std::string& text) {
  if (text.empty()) throw input_error("empty rational literal");
  // mpq_class accepts "p/q" directly but aborts the process on garbage, so
  // validate by hand first.
  std::size_t slash = text.find('/');
  auto check_int = [&](std::size_t lo, std::size_t hi) {
    if (lo >= hi) return false;
    std::size_t i = lo;
    if (text[i] == '-') ++i;
    if (i >= hi) return false;
    for (; i < hi; ++i)
      if (text[i] < '0' || text[i] > '9') return false;
    return true;
  };
  bool ok = slash == std::string::npos
                ? check_int(0, text.size())
                : check_int(0, slash) && check_int(slash + 1, text.size());
  if (!ok) throw input_error("bad rational literal: '" + text + "'");
  Rat r;
  if (mpq_set_str(r.get_mpq_t(), text.c_str(), 10) != 0)
    throw input_error("bad rational literal: '" + text + "'");
  if (sgn(Rat(r.get_den())) == 0)
    throw input_error("zero denominator in rational literal: '" + text + "'");
  r.canonicalize();
  return r;
}

std::string rat_str(const Rat& x) {
  Rat c(x);
  c.canonicalize();
  return c.get_str();
}

std::string int_str(const Int& x) { return x.get_str(); }

Rat rat_pow(const Rat& base, long exp) {
  if (exp == 0) return Rat(1);
  if (base == 0) {
    if (exp < 0) throw input_error("0 raised to a negative power");
    return Rat(0);
  }
  Rat b = exp < 0 ? Rat(1) / base : base;
  unsigned long e = exp < 0 ? -static_cast<unsigned long>(exp) : exp;
  Rat out;
  mpz_pow_ui(out.get_num_mpz_t(), b.get_num_mpz_t(), e);
  mpz_pow_ui(out.get_den_mpz_t(), b.get_den_mpz_t(), e);
  out.canonicalize();
  return out;
}

double to_double(const Rat& x) { return x.get_d(); }

bool is_prime_power(const Int& n) {
  if (n < 2) return false;
  unsigned long bits = mpz_sizeinbase(n.get_mpz_t(), 2);
  for (unsigned long e = 1; e <= bits; ++e) {
    Int root;
    if (mpz_root(root.get_mpz_t(), n.get_mpz_t(), e) != 0 &&
        mpz_probab_prime_p(root.get_mpz_t(), 32) != 0)
      return true;
  }
  return false;
}

}  // namespace logcurve
