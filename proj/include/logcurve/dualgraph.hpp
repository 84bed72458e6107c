#ifndef LOGCURVE_DUALGRAPH_HPP
#define LOGCURVE_DUALGRAPH_HPP

#include <optional>
#include <string>
#include <vector>

#include "logcurve/matrix.hpp"
#include "logcurve/monodromy.hpp"
#include "logcurve/polynomial.hpp"
#include "logcurve/rational.hpp"
#include "logcurve/snf.hpp"

namespace logcurve::dualgraph {

/// Irreducible component of the special fibre.  h1_charpoly, when present,
/// lists the coefficients of det(1 - F T) on the degree-1 cohomology of the
/// component, constant term first; it must have constant term 1 and degree
/// exactly 2 * genus.
struct Component {
  long id = 0;
  long genus = 0;
  std::optional<std::vector<Rat>> h1_charpoly;
};

/// Singular point, oriented tail -> head.  The orientation is a bookkeeping
/// choice fixed by the input; all invariants are independent of it.
struct Node {
  long id = 0;
  long tail = 0;
  long head = 0;
};

struct NodeImage {
  long image = 0;
  bool flip = false;  // image reverses the tail -> head orientation
};

/// Dual graph of a strictly semistable curve over a field with #k elements,
/// together with the Frobenius permutation of components and nodes.  Use
/// make_dual_graph; it validates connectivity, incidence compatibility of
/// the permutations, and the supplied component polynomials.
struct DualGraph {
  Int field_size;
  std::vector<Component> components;
  std::vector<Node> nodes;
  std::vector<long> frobenius_components;  // position-aligned image ids
  std::vector<NodeImage> frobenius_nodes;
  bool allow_self_loops = false;

  long component_index(long id) const;  // input_error for unknown ids
  long node_index(long id) const;
};

// Validates and returns the graph.  Frobenius data may be left empty for the
// identity action.  Self-loops are rejected unless allow_self_loops is set.
DualGraph make_dual_graph(DualGraph g);

// |J| x |I| matrix of the map sending a component function to its jumps:
// row j carries +1 at head(j) and -1 at tail(j), a zero row for self-loops.
ZMat coboundary_matrix(const DualGraph& g);

struct H1Lattice {
  long rank = 0;
  std::vector<Int> divisors;  // elementary divisors of the coboundary
  ZMat basis;                 // |J| x rank, lifts of a cokernel basis
  ZMat coords;                // rank x |J|, cokernel coordinates of e_j
};

// Degree-1 cohomology of the graph as the cokernel of the coboundary,
// computed by Smith normal form.  Graph cokernels are torsion free; this is
// re-verified and a violation reported as an internal error.
H1Lattice h1_lattice(const DualGraph& g);

// Rows form a saturated basis of the cycle lattice, the kernel of the
// transposed coboundary.  Fundamental cycles of a breadth-first spanning
// tree, one row per non-tree node, each normalized so that its first nonzero
// entry is positive.
ZMat cycle_basis(const DualGraph& g);

// Edge inner products of the cycle basis rows; symmetric positive definite.
ZMat gram_matrix(const DualGraph& g);

struct WmCurveReport {
  long rank = 0;
  Int gram_det;
  bool pass = false;
};

// det(Gram) != 0 together with positivity of the leading minors.  For an
// actual graph this always passes; a failure indicates a bug, not an input.
WmCurveReport wm_verify_curve(const DualGraph& g);

/// Graded pieces of the assembled degree-1 space.  W0 and the twist of
/// W2modW1 both have dimension |nodes| - |components| + 1 (the cycle rank);
/// the middle piece collects 2 * genus dimensions per component.
struct GradedH1Model {
  long cycle_rank = 0;
  long weight1_dim = 0;
  QMat w0_frobenius;       // action on cohomology in the cycle-dual basis
  QMat weight1_frobenius;  // orbit-permuted companion blocks
  QMat h1_frobenius;       // action on the cycle lattice, untwisted
  ZMat gram;               // the monodromy block W2modW1 -> W0
};

GradedH1Model graded_model(const DualGraph& g);

// Full degree-1 space of the curve: basis ordered (W0, W1/W0, W2/W1),
// Frobenius assembled per graded piece with the Tate twist multiplying the
// top block by #k, N equal to the Gram block from W2/W1 to W0, central
// weight 1.  Components of positive genus must supply their polynomial.
monodromy::GaloisSpace assemble_h1(const DualGraph& g);

// Pairing of cohomology classes in the cycle-dual basis: <Gram^{-1} x, y>.
Rat h1_pairing(const DualGraph& g, const std::vector<Rat>& x,
               const std::vector<Rat>& y);

// The endomorphism of assemble_h1(g) obtained from a dual-basis expansion of
// the identity of the cycle lattice, pushed into cohomology.  Built from the
// Smith-normal-form coordinates of h1_lattice, not from the Gram product; it
// must coincide with the N block of assemble_h1 exactly.
QMat monodromy_cycle_matrix(const DualGraph& g);

// rank of the degree-1 logarithmic part: rank(cohomology) - rank(cycles),
// with the two ranks computed along independent routes.  Always 0.
long log_pic_rank(const DualGraph& g);

}  // namespace logcurve::dualgraph

#endif
