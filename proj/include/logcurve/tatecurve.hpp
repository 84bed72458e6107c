#ifndef LOGCURVE_TATECURVE_HPP
#define LOGCURVE_TATECURVE_HPP

#include <vector>

#include "logcurve/dualgraph.hpp"
#include "logcurve/matrix.hpp"
#include "logcurve/monodromy.hpp"
#include "logcurve/rational.hpp"

namespace logcurve::tatecurve {

/// Base log point: residue field of size #k and the index e of the chosen
/// parameter against the generator of the value monoid.  Fields above 2^16
/// are rejected so unit groups stay enumerable.
struct LogPointBase {
  Int field_size;
  long q_exp = 1;
};

LogPointBase make_base(const Int& field_size, long q_exp);

/// Point over the base, in exponent coordinates: unit_exp indexes a power of
/// a fixed generator of the unit group, vclass is the valuation mod e.
struct TatePoint {
  long unit_exp = 0;
  long vclass = 0;
};

/// The points form k^x x Z/eZ.  Generators are (1, 0) and (0, 1) in exponent
/// coordinates; the identity is (0, 0), i.e. the unit 1 at valuation 0.
struct PointGroup {
  LogPointBase base;
  long unit_order = 1;                  // #k - 1
  long v_order = 1;                     // e
  std::vector<long> invariant_factors;  // d1 | d2 | ..., 1s dropped
};

PointGroup point_group(const LogPointBase& base);
long group_order(const PointGroup& g);

TatePoint identity_point();
TatePoint normalize_point(const PointGroup& g, const TatePoint& p);
TatePoint add_points(const PointGroup& g, const TatePoint& p,
                     const TatePoint& r);
TatePoint negate_point(const PointGroup& g, const TatePoint& p);
bool same_point(const PointGroup& g, const TatePoint& p, const TatePoint& r);

// a-fold sum; a >= 1.
TatePoint mult_by_a(const PointGroup& g, const TatePoint& p, long a);

// Order of the kernel of multiplication by a: gcd(a, #k - 1) * gcd(a, e).
long mult_kernel_order(const PointGroup& g, long a);

/// n-gon model over the base; n >= 2 (the 1-gon has a self-intersecting
/// component and is excluded).
struct NgonModel {
  long n = 2;
  LogPointBase base;
};

NgonModel make_ngon(long n, const LogPointBase& base);

/// Where a point lands on the n-gon: a smooth point of component `index`
/// when the scaled valuation n v / e is integral, otherwise the node joining
/// components `index` and `index + 1`.
struct ComponentLocus {
  bool at_node = false;
  long index = 0;
};

ComponentLocus component_index(const TatePoint& p, const NgonModel& m);

struct ModelProperties {
  bool semistable = false;  // e == n
  bool saturated = false;   // n divides e
  long gon_count = 0;
};

ModelProperties model_properties(const NgonModel& m);

// Cycle graph with n genus-0 components, n nodes and trivial Frobenius.
dualgraph::DualGraph ngon_dual_graph(const NgonModel& m);

/// Valuation-rescaling homomorphisms between the point groups of two bases
/// over the same field, in both directions, with exact kernel and cokernel
/// orders.  With g = gcd(e1, e2) the forward map has kernel e1/g and
/// cokernel e2/g; both are finite, so the groups are isogenous.
struct IsogenyWitness {
  long forward_kernel = 1;
  long forward_cokernel = 1;
  long backward_kernel = 1;
  long backward_cokernel = 1;
};

IsogenyWitness isogeny_witness(const LogPointBase& b1,
                               const LogPointBase& b2);

// Image of (u, v) in the group of b2 under the forward witness map;
// the unit coordinate is untouched, v is scaled by e2/gcd(e1, e2).
TatePoint isogeny_forward(const LogPointBase& b1, const LogPointBase& b2,
                          const TatePoint& p);

// Degree-1 space of the curve over the base: F = diag(1, #k) and N sending
// the top basis vector to e times the bottom one, measured against the
// generator of the base monoid (the parameter q = pi^e rescales N by e).
monodromy::GaloisSpace h1_tate_model(const LogPointBase& base);

// Stalk maps of the base value lattice into the interior lattice of each
// component r = 0..n-1, as 1x1 columns (n / gcd(n, e r)).  The component-r
// direction t satisfies n t = e r modulo units; saturating that relation
// makes the generator (g/n)-fractional, so the base generator lands at
// index n/g.  Node stalks are free of rank 2 and always torsion-free.
std::vector<ZMat> stalk_lattice_maps(const NgonModel& m);
ZMat node_stalk_map();

// True iff every component stalk cokernel is torsion-free; equivalent to
// saturatedness of the model.
bool model_lattice_torsion_free(const NgonModel& m);

}  // namespace logcurve::tatecurve

#endif
