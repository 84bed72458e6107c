#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace logcurve {

using Int = mpz_class;
using Rat = mpq_class;
using Flt = mpf_class;

/// Raised for inputs that violate a documented precondition or schema.
/// The CLI maps this to exit code 2.
class input_error : public std::runtime_error {
 public:
  explicit input_error(const std::string& what) : std::runtime_error(what) {}
};

/// Raised when an internal consistency check fails.  Reaching this is a bug.
class internal_error : public std::logic_error {
 public:
  explicit internal_error(const std::string& what) : std::logic_error(what) {}
};

// Floating-point working precision in bits.  Reads LOGCURVE_PRECISION once;
// unset or unparsable values fall back to 128, values below 64 clamp to 64.
unsigned long working_precision_bits();

// Installs working_precision_bits() as the mpf default.  Must run before the
// first Flt is constructed; the CLI and the test mains call it on entry.
void init_numeric_precision();

// Parses "p", "-p" or "p/q"; the result is canonicalized (q > 0, gcd 1).
Rat parse_rat(const std::string& text);

// Canonical "p" or "p/q" form; round-trips through parse_rat.
std::string rat_str(const Rat& x);

std::string int_str(const Int& x);

// base^exp with exact rational result; exp may be negative (base != 0 then).
Rat rat_pow(const Rat& base, long exp);

double to_double(const Rat& x);

// True iff n = p^e for a prime p and e >= 1.
bool is_prime_power(const Int& n);

}  // namespace logcurve
