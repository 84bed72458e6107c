#pragma once

#include <map>
#include <string>
#include <vector>

#include "logcurve/matrix.hpp"
#include "logcurve/polynomial.hpp"
#include "logcurve/snf.hpp"

namespace logcurve::monodromy {

/// Finite-dimensional Q-vector space with a Frobenius action, a nilpotent
/// operator N, and a central weight m.  The compatibility
///     frobenius * N * field_size == N * frobenius
/// (i.e. F N F^{-1} = (1/#k) N) is asserted exactly on construction.
struct GaloisSpace {
  long dim = 0;
  QMat frobenius;
  QMat nilpotent;
  long central_weight = 0;
  Int field_size;
};

GaloisSpace make_galois_space(QMat frobenius, QMat nilpotent,
                              long central_weight, Int field_size);

// Replaces N by c^{-1} N; models switching the chosen generator of the base
// monoid by an index-c one.  c must be nonzero.  The monodromy filtration is
// unchanged by any such rescaling.
QMat rescale_monodromy(const QMat& nilpotent, const Rat& c);
GaloisSpace rescale_monodromy(const GaloisSpace& s, const Rat& c);

/// Increasing filtration W_lo <= ... <= W_hi of the ambient space, indexed by
/// absolute weight (center + relative index).  w(r) is empty below lo and the
/// full space above hi; bases are column-echelon canonical.
struct Filtration {
  long center = 0;
  long lo = 0, hi = 0;
  long ambient_dim = 0;
  std::vector<QMat> steps;  // steps[i] = basis of W_{lo+i}

  QMat w(long r) const;
  long dim_w(long r) const;
  long gr_dim(long r) const;
};

// The unique increasing filtration with N W_r <= W_{r-2} and
// N^k : gr_{m+k} ~ gr_{m-k}; built from kernels and images of powers of N,
// then both defining properties are re-verified before returning.
Filtration monodromy_filtration(const QMat& nilpotent, long center);

// Partitions the characteristic polynomial's roots by the weight w with
// |alpha| = (#k)^{w/2}; values are total multiplicities.  Root moduli are
// classified numerically, all multiplicity bookkeeping is exact.
std::map<long, long> frobenius_weights(const GaloisSpace& s);

// Exact charpoly of the action induced by s.frobenius on W_r / W_{r-1}.
QPoly graded_frobenius_charpoly(const GaloisSpace& s, const Filtration& fil,
                                long r);

struct WmReport {
  bool pass = false;
  Filtration filtration;
  std::map<long, long> gr_dims;
  std::map<long, QPoly> gr_charpolys;      // exact, per graded index
  std::vector<std::string> failures;       // naming (index, offending root)
};

// Checks that every Frobenius eigenvalue on gr_r has weight exactly r.
WmReport wm_check(const GaloisSpace& s);

// Sum over weights of w * dim_w / dim; exact rational.
Rat average_weight(const GaloisSpace& s);

struct Sl2Triple {
  QMat e, h, f;
};

// f = N; h acts by w - m on the weight-w part; e is the unique raising
// operator with [e, f] = h, built string by string from the primitive
// decomposition of N relative to h.  Preconditions: wm_check passes and the
// Frobenius is semisimple (checked via its squarefree minimal polynomial).
// All three brackets are verified exactly before returning.
Sl2Triple sl2_triple(const GaloisSpace& s);

// det(1 - frobenius T) restricted to ker N, as an exact polynomial in T.
QPoly lfactor_kernel_poly(const GaloisSpace& s);

// Multiplicity of the eigenvalue (#k)^r of the Frobenius acting on ker N,
// computed by exact division of the characteristic polynomial.
long pole_order(const GaloisSpace& s, long r);

struct HomSymReport {
  long dim = 0;                // dim Hom(Sym^t SE, S(r)) commuting with F, N
  std::vector<QMat> basis;     // each dim_S x (t+1)
  QMat evaluation;             // column j = basis[j] applied to e1^t
  long fixed_dim = 0;          // dim S(r)^{F=1, N=0}
  QMat fixed_basis;
};

// SE must be the two-dimensional Tate-curve space: F = diag(1, #k) and
// N(e2) = nu e1 with nu != 0.  Sym^t carries the Leibniz N and the diagonal
// Frobenius (1, #k, ..., #k^t); S(r) divides the Frobenius of S by (#k)^r.
// t > 64 is rejected.
HomSymReport hom_from_sym(const GaloisSpace& se, long t, const GaloisSpace& s,
                          long r);

struct UnipotenceReport {
  std::vector<Int> elementary_divisors;  // nonzero divisors of the cokernel
  long free_rank = 0;
  bool torsion_free = false;
  bool bound_applies = false;            // mirrors torsion_free
};

// Cokernel of the lattice map Z -> Z^n given by an integer column vector;
// torsion-free iff every elementary divisor is 0 or 1.  The zero map is
// rejected.
UnipotenceReport unipotence_bound(const ZMat& column);

}  // namespace logcurve::monodromy
