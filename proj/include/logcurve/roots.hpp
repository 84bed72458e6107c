#pragma once

#include <complex>
#include <map>
#include <vector>

#include "logcurve/polynomial.hpp"

namespace logcurve {

// All complex roots with multiplicity.  Multiplicities come from the exact
// squarefree decomposition; floating point only locates the simple roots of
// each squarefree factor, so root clusters cannot smear multiplicities.
std::vector<std::pair<std::complex<double>, long>> complex_roots(const QPoly& p);

// Weight w of a root alpha satisfies |alpha|^2 = q^w.  tol is the absolute
// tolerance on |alpha|^2 relative to max(1, q^w).
struct WeilClassification {
  std::map<long, long> dim_by_weight;  // weight -> total multiplicity
};

// Partitions the roots of a monic characteristic polynomial by weight.
// Throws input_error naming the first root whose modulus is not a
// half-integral power of q within tol.
WeilClassification weil_weight_partition(const QPoly& charpoly_monic,
                                         const Int& q, double tol = 1e-9);

// True iff every root of charpoly has |alpha|^2 = q^w within tol, for the
// single given w.
bool roots_have_weight(const QPoly& charpoly_monic, const Int& q, long w,
                       double tol = 1e-9, std::string* diagnostic = nullptr);

}  // namespace logcurve
