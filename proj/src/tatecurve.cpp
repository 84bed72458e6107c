#include "logcurve/tatecurve.hpp"

#include <numeric>
#include <string>

namespace logcurve::tatecurve {

namespace {

void require(bool ok, const std::string& msg) {
  if (!ok) throw input_error(msg);
}

long mod(long a, long m) {
  long r = a % m;
  return r < 0 ? r + m : r;
}

// (a * b) mod m without overflow for m <= 2^16 and a, b reduced.
long mulmod(long a, long b, long m) { return mod(a * b, m); }

}  // namespace

LogPointBase make_base(const Int& field_size, long q_exp) {
  require(field_size >= 2 && is_prime_power(field_size),
          "field size must be a prime power, got " + int_str(field_size));
  require(field_size <= 65536,
          "field size exceeds the unit-table bound 2^16");
  require(q_exp >= 1, "the parameter index e must be at least 1");
  return LogPointBase{field_size, q_exp};
}

PointGroup point_group(const LogPointBase& base) {
  LogPointBase b = make_base(base.field_size, base.q_exp);
  PointGroup g;
  g.base = b;
  g.unit_order = b.field_size.get_si() - 1;
  g.v_order = b.q_exp;
  long d1 = std::gcd(g.unit_order, g.v_order);
  long d2 = g.unit_order / d1 * g.v_order;  // lcm
  if (d1 > 1) g.invariant_factors.push_back(d1);
  if (d2 > 1) g.invariant_factors.push_back(d2);
  return g;
}

long group_order(const PointGroup& g) { return g.unit_order * g.v_order; }

TatePoint identity_point() { return TatePoint{0, 0}; }

TatePoint normalize_point(const PointGroup& g, const TatePoint& p) {
  return TatePoint{mod(p.unit_exp, g.unit_order), mod(p.vclass, g.v_order)};
}

TatePoint add_points(const PointGroup& g, const TatePoint& p,
                     const TatePoint& r) {
  return TatePoint{mod(p.unit_exp + r.unit_exp, g.unit_order),
                   mod(p.vclass + r.vclass, g.v_order)};
}

TatePoint negate_point(const PointGroup& g, const TatePoint& p) {
  return TatePoint{mod(-p.unit_exp, g.unit_order),
                   mod(-p.vclass, g.v_order)};
}

bool same_point(const PointGroup& g, const TatePoint& p, const TatePoint& r) {
  TatePoint a = normalize_point(g, p);
  TatePoint b = normalize_point(g, r);
  return a.unit_exp == b.unit_exp && a.vclass == b.vclass;
}

TatePoint mult_by_a(const PointGroup& g, const TatePoint& p, long a) {
  require(a >= 1, "multiplication index must be at least 1");
  TatePoint q = normalize_point(g, p);
  return TatePoint{mulmod(mod(a, g.unit_order), q.unit_exp, g.unit_order),
                   mulmod(mod(a, g.v_order), q.vclass, g.v_order)};
}

long mult_kernel_order(const PointGroup& g, long a) {
  require(a >= 1, "multiplication index must be at least 1");
  return std::gcd(a, g.unit_order) * std::gcd(a, g.v_order);
}

NgonModel make_ngon(long n, const LogPointBase& base) {
  require(n >= 2, "gon count must be at least 2; the 1-gon self-intersects");
  return NgonModel{n, make_base(base.field_size, base.q_exp)};
}

ComponentLocus component_index(const TatePoint& p, const NgonModel& m) {
  long e = m.base.q_exp;
  long v = mod(p.vclass, e);
  // Scaled valuation n v / e: integral values are the distinguished
  // component representatives, the strict windows in between collapse to
  // the node joining the neighbouring components.
  long num = m.n * v;
  if (num % e == 0) return ComponentLocus{false, mod(num / e, m.n)};
  return ComponentLocus{true, mod(num / e, m.n)};
}

ModelProperties model_properties(const NgonModel& m) {
  ModelProperties p;
  p.gon_count = m.n;
  p.semistable = (m.base.q_exp == m.n);
  p.saturated = (m.base.q_exp % m.n == 0);
  return p;
}

dualgraph::DualGraph ngon_dual_graph(const NgonModel& m) {
  dualgraph::DualGraph g;
  g.field_size = m.base.field_size;
  for (long i = 0; i < m.n; ++i)
    g.components.push_back(dualgraph::Component{i, 0, std::nullopt});
  for (long i = 0; i < m.n; ++i)
    g.nodes.push_back(dualgraph::Node{i, i, (i + 1) % m.n});
  return dualgraph::make_dual_graph(g);
}

IsogenyWitness isogeny_witness(const LogPointBase& b1,
                               const LogPointBase& b2) {
  LogPointBase a = make_base(b1.field_size, b1.q_exp);
  LogPointBase b = make_base(b2.field_size, b2.q_exp);
  require(a.field_size == b.field_size,
          "isogeny witnesses need a common residue field");
  long g = std::gcd(a.q_exp, b.q_exp);
  IsogenyWitness w;
  w.forward_kernel = a.q_exp / g;
  w.forward_cokernel = b.q_exp / g;
  w.backward_kernel = b.q_exp / g;
  w.backward_cokernel = a.q_exp / g;
  return w;
}

TatePoint isogeny_forward(const LogPointBase& b1, const LogPointBase& b2,
                          const TatePoint& p) {
  LogPointBase a = make_base(b1.field_size, b1.q_exp);
  LogPointBase b = make_base(b2.field_size, b2.q_exp);
  require(a.field_size == b.field_size,
          "isogeny witnesses need a common residue field");
  long g = std::gcd(a.q_exp, b.q_exp);
  long scale = b.q_exp / g;
  PointGroup source = point_group(a);
  TatePoint q = normalize_point(source, p);
  return TatePoint{q.unit_exp, mod(q.vclass * scale, b.q_exp)};
}

monodromy::GaloisSpace h1_tate_model(const LogPointBase& base) {
  LogPointBase b = make_base(base.field_size, base.q_exp);
  QMat f = QMat::from_rows({{Rat(1), Rat(0)}, {Rat(0), Rat(b.field_size)}});
  QMat n = QMat::from_rows({{Rat(0), Rat(b.q_exp)}, {Rat(0), Rat(0)}});
  return monodromy::make_galois_space(f, n, 1, b.field_size);
}

std::vector<ZMat> stalk_lattice_maps(const NgonModel& m) {
  std::vector<ZMat> maps;
  for (long r = 0; r < m.n; ++r) {
    long g = std::gcd(m.n, m.base.q_exp * r);
    maps.push_back(ZMat::from_rows({{Int(m.n / g)}}));
  }
  return maps;
}

ZMat node_stalk_map() { return ZMat::from_rows({{Int(0)}, {Int(1)}}); }

bool model_lattice_torsion_free(const NgonModel& m) {
  for (const ZMat& column : stalk_lattice_maps(m))
    if (!monodromy::unipotence_bound(column).torsion_free) return false;
  return true;
}

}  // namespace logcurve::tatecurve
