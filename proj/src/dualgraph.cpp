#include "logcurve/dualgraph.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <sstream>

#include "logcurve/roots.hpp"

namespace logcurve::dualgraph {

namespace {

constexpr double kWeilTol = 1e-9;

std::string join_ids(const std::vector<long>& ids) {
  std::ostringstream os;
  for (size_t i = 0; i < ids.size(); ++i) os << (i ? "," : "") << ids[i];
  return os.str();
}

// Frobenius orbits on component indices, each starting at its smallest
// member, listed in order of that member.
std::vector<std::vector<long>> component_orbits(const DualGraph& g) {
  long n = static_cast<long>(g.components.size());
  std::vector<long> image(n);
  for (long i = 0; i < n; ++i)
    image[i] = g.component_index(g.frobenius_components[i]);
  std::vector<bool> seen(n, false);
  std::vector<std::vector<long>> orbits;
  for (long i = 0; i < n; ++i) {
    if (seen[i]) continue;
    std::vector<long> orbit;
    for (long j = i; !seen[j]; j = image[j]) {
      seen[j] = true;
      orbit.push_back(j);
    }
    orbits.push_back(std::move(orbit));
  }
  return orbits;
}

struct SpanningTree {
  std::vector<long> parent_node;    // node index entering the vertex, -1 root
  std::vector<long> parent_vertex;  // -1 for the root
  std::vector<long> depth;
  std::vector<bool> node_in_tree;
};

// Breadth-first tree from component 0, scanning nodes in input order.
SpanningTree spanning_tree(const DualGraph& g) {
  long nc = static_cast<long>(g.components.size());
  long nn = static_cast<long>(g.nodes.size());
  SpanningTree t;
  t.parent_node.assign(nc, -1);
  t.parent_vertex.assign(nc, -1);
  t.depth.assign(nc, 0);
  t.node_in_tree.assign(nn, false);
  std::vector<bool> visited(nc, false);
  std::deque<long> queue{0};
  visited[0] = true;
  while (!queue.empty()) {
    long v = queue.front();
    queue.pop_front();
    for (long j = 0; j < nn; ++j) {
      long a = g.component_index(g.nodes[j].tail);
      long b = g.component_index(g.nodes[j].head);
      if (a == b) continue;
      long other = a == v ? b : (b == v ? a : -1);
      if (other < 0 || visited[other]) continue;
      visited[other] = true;
      t.parent_node[other] = j;
      t.parent_vertex[other] = v;
      t.depth[other] = t.depth[v] + 1;
      t.node_in_tree[j] = true;
      queue.push_back(other);
    }
  }
  return t;
}

// Adds the signed tree path from vertex v up to vertex top to the cycle
// coefficients: +1 for a tree node crossed tail -> head, -1 otherwise.
// Stepping from v to its parent crosses the parent node against its
// orientation exactly when the node's head is v.
void add_tree_path(const DualGraph& g, const SpanningTree& t, long v, long top,
                   long sign, std::vector<Int>& coeff) {
  while (v != top) {
    long j = t.parent_node[v];
    long head = g.component_index(g.nodes[j].head);
    coeff[j] += (head == v ? -sign : sign);
    v = t.parent_vertex[v];
  }
}

void require_weight1_data(const DualGraph& g) {
  std::vector<long> missing;
  for (const Component& c : g.components)
    if (c.genus > 0 && !c.h1_charpoly) missing.push_back(c.id);
  if (!missing.empty())
    throw input_error(
        "components of positive genus need h1_charpoly for this operation: " +
        join_ids(missing));
}

// Companion matrix of a monic polynomial, characteristic polynomial m.
QMat companion_of(const QPoly& m) {
  long n = m.degree();
  QMat c(n, n);
  for (long i = 0; i + 1 < n; ++i) c.at(i + 1, i) = 1;
  for (long i = 0; i < n; ++i) c.at(i, n - 1) = -m.coeff(i);
  return c;
}

}  // namespace

long DualGraph::component_index(long id) const {
  for (size_t i = 0; i < components.size(); ++i)
    if (components[i].id == id) return static_cast<long>(i);
  throw input_error("unknown component id " + std::to_string(id));
}

long DualGraph::node_index(long id) const {
  for (size_t i = 0; i < nodes.size(); ++i)
    if (nodes[i].id == id) return static_cast<long>(i);
  throw input_error("unknown node id " + std::to_string(id));
}

DualGraph make_dual_graph(DualGraph g) {
  if (g.field_size < 2 || !is_prime_power(g.field_size))
    throw input_error("field size must be a prime power, got " +
                      g.field_size.get_str());
  if (g.components.empty()) throw input_error("graph needs a component");

  std::set<long> comp_ids;
  for (const Component& c : g.components) {
    if (!comp_ids.insert(c.id).second)
      throw input_error("duplicate component id " + std::to_string(c.id));
    if (c.genus < 0) throw input_error("negative genus");
    if (c.h1_charpoly) {
      const std::vector<Rat>& p = *c.h1_charpoly;
      if (static_cast<long>(p.size()) != 2 * c.genus + 1 ||
          (c.genus > 0 && p.back() == 0))
        throw input_error("h1_charpoly of component " + std::to_string(c.id) +
                          " must have degree exactly 2*genus");
      if (p.front() != 1)
        throw input_error("h1_charpoly of component " + std::to_string(c.id) +
                          " must have constant term 1");
    }
  }

  std::set<long> node_ids;
  for (const Node& n : g.nodes) {
    if (!node_ids.insert(n.id).second)
      throw input_error("duplicate node id " + std::to_string(n.id));
    g.component_index(n.tail);
    g.component_index(n.head);
    if (n.tail == n.head && !g.allow_self_loops)
      throw input_error("node " + std::to_string(n.id) +
                        " is a self-loop; these are rejected unless "
                        "explicitly allowed");
  }

  // Default Frobenius data: identity, no orientation flips.
  if (g.frobenius_components.empty())
    for (const Component& c : g.components) g.frobenius_components.push_back(c.id);
  if (g.frobenius_nodes.empty())
    for (const Node& n : g.nodes) g.frobenius_nodes.push_back({n.id, false});

  if (g.frobenius_components.size() != g.components.size())
    throw input_error("frobenius must list one image per component");
  if (g.frobenius_nodes.size() != g.nodes.size())
    throw input_error("frobenius must list one image per node");
  std::set<long> comp_images, node_images;
  for (long id : g.frobenius_components) {
    g.component_index(id);
    if (!comp_images.insert(id).second)
      throw input_error("frobenius component map is not a permutation");
  }
  for (const NodeImage& im : g.frobenius_nodes) {
    g.node_index(im.image);
    if (!node_images.insert(im.image).second)
      throw input_error("frobenius node map is not a permutation");
  }

  // Permutations must be compatible with incidence, up to recorded flips.
  for (size_t j = 0; j < g.nodes.size(); ++j) {
    const Node& n = g.nodes[j];
    const Node& m = g.nodes[g.node_index(g.frobenius_nodes[j].image)];
    bool flip = g.frobenius_nodes[j].flip;
    long tail_image = g.frobenius_components[g.component_index(n.tail)];
    long head_image = g.frobenius_components[g.component_index(n.head)];
    long want_tail = flip ? m.head : m.tail;
    long want_head = flip ? m.tail : m.head;
    if (tail_image != want_tail || head_image != want_head)
      throw input_error("frobenius is incompatible with incidence at node " +
                        std::to_string(n.id));
  }
  for (size_t i = 0; i < g.components.size(); ++i) {
    const Component& a = g.components[i];
    const Component& b =
        g.components[g.component_index(g.frobenius_components[i])];
    if (a.genus != b.genus)
      throw input_error("frobenius image of component " + std::to_string(a.id) +
                        " has a different genus");
  }

  // Connectivity, with the offending split reported.
  {
    long nc = static_cast<long>(g.components.size());
    std::vector<bool> visited(nc, false);
    std::deque<long> queue{0};
    visited[0] = true;
    while (!queue.empty()) {
      long v = queue.front();
      queue.pop_front();
      for (const Node& n : g.nodes) {
        long a = g.component_index(n.tail), b = g.component_index(n.head);
        long other = a == v ? b : (b == v ? a : -1);
        if (other >= 0 && !visited[other]) {
          visited[other] = true;
          queue.push_back(other);
        }
      }
    }
    std::vector<long> in, out;
    for (long i = 0; i < nc; ++i)
      (visited[i] ? in : out).push_back(g.components[i].id);
    if (!out.empty())
      throw input_error("graph is disconnected: components {" + join_ids(in) +
                        "} are separated from {" + join_ids(out) + "}");
  }

  // Orbit-level checks of the supplied component polynomials: all members of
  // an orbit describe the same return map, and its reciprocal roots must be
  // q^L-Weil of weight 1 where L is the orbit length.
  for (const std::vector<long>& orbit : component_orbits(g)) {
    const Component& rep = g.components[orbit[0]];
    const std::optional<std::vector<Rat>>* first = nullptr;
    for (long i : orbit) {
      const Component& c = g.components[i];
      if (!c.h1_charpoly) continue;
      if (first == nullptr)
        first = &c.h1_charpoly;
      else if (**first != *c.h1_charpoly)
        throw input_error(
            "components in one frobenius orbit must share h1_charpoly "
            "(orbit of component " +
            std::to_string(rep.id) + ")");
    }
    if (first != nullptr && rep.genus > 0) {
      Int qo;
      mpz_pow_ui(qo.get_mpz_t(), g.field_size.get_mpz_t(), orbit.size());
      QPoly monic = reverse_poly(QPoly(**first), 2 * rep.genus);
      std::string diag;
      if (!roots_have_weight(monic, qo, 1, kWeilTol, &diag))
        throw input_error("h1_charpoly of component " + std::to_string(rep.id) +
                          " is not pure of weight 1: " + diag);
    }
  }

  return g;
}

ZMat coboundary_matrix(const DualGraph& g) {
  ZMat d(static_cast<long>(g.nodes.size()),
         static_cast<long>(g.components.size()));
  for (size_t j = 0; j < g.nodes.size(); ++j) {
    long a = g.component_index(g.nodes[j].tail);
    long b = g.component_index(g.nodes[j].head);
    if (a == b) continue;  // self-loops contribute a zero row
    d.at(static_cast<long>(j), b) = 1;
    d.at(static_cast<long>(j), a) = -1;
  }
  return d;
}

H1Lattice h1_lattice(const DualGraph& g) {
  ZMat d = coboundary_matrix(g);
  long nn = d.rows(), nc = d.cols();
  SmithResult snf = smith_normal_form(d);
  long r = static_cast<long>(snf.divisors.size());

  H1Lattice lat;
  lat.rank = nn - r;
  lat.divisors = snf.divisors;
  if (lat.rank != nn - nc + 1)
    throw internal_error("cohomology rank disagrees with Euler count");
  for (const Int& e : snf.divisors)
    if (e != 1)
      throw internal_error("graph cohomology acquired torsion: divisor " +
                           e.get_str());

  // u * d * v is diagonal, so classes of u^{-1} e_k, k >= r, form a basis of
  // the cokernel and row k of u reads off the k-th coordinate of a class.
  QMat uinv = inverse(snf.u.to_q());
  lat.basis = ZMat(nn, lat.rank);
  lat.coords = ZMat(lat.rank, nn);
  for (long k = 0; k < lat.rank; ++k)
    for (long j = 0; j < nn; ++j) {
      if (uinv.at(j, r + k).get_den() != 1)
        throw internal_error("unimodular inverse is not integral");
      lat.basis.at(j, k) = uinv.at(j, r + k).get_num();
      lat.coords.at(k, j) = snf.u.at(r + k, j);
    }
  return lat;
}

ZMat cycle_basis(const DualGraph& g) {
  long nn = static_cast<long>(g.nodes.size());
  SpanningTree t = spanning_tree(g);
  std::vector<std::vector<Int>> rows;
  for (long j = 0; j < nn; ++j) {
    if (t.node_in_tree[j]) continue;
    long u = g.component_index(g.nodes[j].tail);
    long v = g.component_index(g.nodes[j].head);
    std::vector<Int> coeff(nn, Int(0));
    coeff[j] = 1;
    // Close the cycle through the tree: walk both ends up to equal depth,
    // then in lockstep to the meeting vertex.
    long x = v, y = u;  // path v -> meet gains sign +, u -> meet gains -
    while (t.depth[x] > t.depth[y]) {
      long p = t.parent_vertex[x];
      add_tree_path(g, t, x, p, 1, coeff);
      x = p;
    }
    while (t.depth[y] > t.depth[x]) {
      long p = t.parent_vertex[y];
      add_tree_path(g, t, y, p, -1, coeff);
      y = p;
    }
    while (x != y) {
      long px = t.parent_vertex[x], py = t.parent_vertex[y];
      add_tree_path(g, t, x, px, 1, coeff);
      add_tree_path(g, t, y, py, -1, coeff);
      x = px;
      y = py;
    }
    for (long k = 0; k < nn; ++k) {
      if (coeff[k] == 0) continue;
      if (coeff[k] < 0)
        for (long l = 0; l < nn; ++l) coeff[l] = -coeff[l];
      break;
    }
    rows.push_back(std::move(coeff));
  }

  ZMat basis = rows.empty() ? ZMat(0, nn) : ZMat::from_rows(rows);
  if (basis.rows() != nn - static_cast<long>(g.components.size()) + 1)
    throw internal_error("cycle count disagrees with Euler count");
  if (basis.rows() > 0) {
    // Saturation: the lattice spanned by the rows is primitive.
    for (const Int& e : smith_normal_form(basis).divisors)
      if (e != 1) throw internal_error("cycle basis is not saturated");
  }
  return basis;
}

ZMat gram_matrix(const DualGraph& g) {
  ZMat b = cycle_basis(g);
  ZMat gram = b * b.transpose();
  for (long i = 0; i < gram.rows(); ++i)
    for (long j = 0; j < i; ++j)
      if (gram.at(i, j) != gram.at(j, i))
        throw internal_error("gram matrix is not symmetric");
  return gram;
}

WmCurveReport wm_verify_curve(const DualGraph& g) {
  ZMat gram = gram_matrix(g);
  WmCurveReport rep;
  rep.rank = gram.rows();
  QMat gq = gram.to_q();
  Rat dq = rep.rank == 0 ? Rat(1) : det(gq);
  if (dq.get_den() != 1) throw internal_error("integer determinant expected");
  rep.gram_det = dq.get_num();
  rep.pass = true;
  // Positive definiteness via leading principal minors.
  for (long k = 1; k <= rep.rank; ++k) {
    QMat minor(k, k);
    for (long i = 0; i < k; ++i)
      for (long j = 0; j < k; ++j) minor.at(i, j) = gq.at(i, j);
    if (det(minor) <= 0) rep.pass = false;
  }
  return rep;
}

GradedH1Model graded_model(const DualGraph& g) {
  require_weight1_data(g);
  ZMat b = cycle_basis(g);
  long c = b.rows();
  long nn = b.cols();

  GradedH1Model model;
  model.cycle_rank = c;
  model.gram = b * b.transpose();

  // Signed node permutation: column j carries +-1 at the image of node j.
  QMat p(nn, nn);
  for (long j = 0; j < nn; ++j)
    p.at(g.node_index(g.frobenius_nodes[j].image), j) =
        g.frobenius_nodes[j].flip ? Rat(-1) : Rat(1);

  // Rows of b * p^T are the transported cycles; express them in the cycle
  // basis to get the action on the cycle lattice and, by duality, on
  // cohomology.
  QMat bq = b.to_q();
  QMat transported = bq * p.transpose();
  QMat ct = solve_many(bq.transpose(), transported.transpose());
  QMat cmat = ct.transpose();  // cmat * b = b * p^T
  to_z(cmat);                  // the action preserves the lattice
  model.h1_frobenius = ct;
  model.w0_frobenius = c == 0 ? QMat(0, 0) : inverse(cmat);
  if (!(cmat * model.gram.to_q() * ct == model.gram.to_q()))
    throw internal_error("cycle action does not preserve the gram pairing");

  // Weight-1 part: one cyclic block per orbit, identity steps and the
  // companion matrix of the orbit's return polynomial on the closing step.
  long w1 = 0;
  for (const Component& comp : g.components) w1 += 2 * comp.genus;
  model.weight1_dim = w1;
  model.weight1_frobenius = QMat(w1, w1);
  std::vector<long> offset(g.components.size(), 0);
  {
    long acc = 0;
    for (const std::vector<long>& orbit : component_orbits(g))
      for (long i : orbit) {
        offset[i] = acc;
        acc += 2 * g.components[i].genus;
      }
  }
  for (const std::vector<long>& orbit : component_orbits(g)) {
    const Component& rep = g.components[orbit[0]];
    if (rep.genus == 0) continue;
    long tg = 2 * rep.genus;
    QMat comp = companion_of(reverse_poly(QPoly(*rep.h1_charpoly), tg));
    long len = static_cast<long>(orbit.size());
    for (long pth = 0; pth + 1 < len; ++pth)
      for (long j = 0; j < tg; ++j)
        model.weight1_frobenius.at(offset[orbit[pth + 1]] + j,
                                   offset[orbit[pth]] + j) = 1;
    for (long j = 0; j < tg; ++j)
      for (long i = 0; i < tg; ++i)
        model.weight1_frobenius.at(offset[orbit[0]] + i,
                                   offset[orbit[len - 1]] + j) = comp.at(i, j);
  }
  return model;
}

monodromy::GaloisSpace assemble_h1(const DualGraph& g) {
  GradedH1Model model = graded_model(g);
  long c = model.cycle_rank, w1 = model.weight1_dim;
  long dim = 2 * c + w1;
  QMat phi(dim, dim), n(dim, dim);
  for (long i = 0; i < c; ++i)
    for (long j = 0; j < c; ++j) {
      phi.at(i, j) = model.w0_frobenius.at(i, j);
      phi.at(c + w1 + i, c + w1 + j) =
          model.h1_frobenius.at(i, j) * Rat(g.field_size);
      n.at(i, c + w1 + j) = Rat(model.gram.at(i, j));
    }
  for (long i = 0; i < w1; ++i)
    for (long j = 0; j < w1; ++j)
      phi.at(c + i, c + j) = model.weight1_frobenius.at(i, j);
  return monodromy::make_galois_space(phi, n, 1, g.field_size);
}

Rat h1_pairing(const DualGraph& g, const std::vector<Rat>& x,
               const std::vector<Rat>& y) {
  ZMat gram = gram_matrix(g);
  long c = gram.rows();
  if (static_cast<long>(x.size()) != c || static_cast<long>(y.size()) != c)
    throw input_error("pairing arguments must have the cycle rank " +
                      std::to_string(c) + " as length");
  if (c == 0) return Rat(0);
  QMat xs(c, 1);
  for (long i = 0; i < c; ++i) xs.at(i, 0) = x[i];
  QMat z = solve_many(gram.to_q(), xs);
  Rat acc(0);
  for (long i = 0; i < c; ++i) acc += z.at(i, 0) * y[i];
  return acc;
}

QMat monodromy_cycle_matrix(const DualGraph& g) {
  require_weight1_data(g);
  H1Lattice lat = h1_lattice(g);
  ZMat b = cycle_basis(g);
  long c = b.rows();

  // Pairing of cycle i against the k-th cohomology basis class, and the
  // cohomology coordinates of the cycle classes themselves.  Composing the
  // two re-expresses the inclusion of cycles into cohomology on the basis
  // dual to the cycles, with no reference to the edge products of b.
  ZMat pairing = b * lat.basis;          // c x c
  ZMat classes = lat.coords * b.transpose();  // c x c
  QMat block = pairing.to_q() * classes.to_q();

  long w1 = 0;
  for (const Component& comp : g.components) w1 += 2 * comp.genus;
  long dim = 2 * c + w1;
  QMat n(dim, dim);
  for (long i = 0; i < c; ++i)
    for (long j = 0; j < c; ++j) n.at(i, c + w1 + j) = block.at(i, j);
  return n;
}

long log_pic_rank(const DualGraph& g) {
  // Over a finite base the degree-0 line bundle classes form a finite group,
  // so only the two lattice ranks enter; they are computed along different
  // routes and must agree.
  long via_snf = h1_lattice(g).rank;
  long via_cycles = rank(cycle_basis(g).to_q());
  if (via_snf != via_cycles)
    throw internal_error("cohomology and cycle ranks disagree");
  return via_snf - via_cycles;
}

}  // namespace logcurve::dualgraph
