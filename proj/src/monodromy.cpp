#include "logcurve/monodromy.hpp"

#include <algorithm>
#include <sstream>

#include "logcurve/roots.hpp"

namespace logcurve::monodromy {

namespace {

QMat eval_matrix(const QPoly& p, const QMat& a) {
  QMat acc(a.rows(), a.cols());
  QMat pw = QMat::identity(a.rows());
  for (long i = 0; i <= p.degree(); ++i) {
    if (p.c[i] != 0) acc = acc + pw * p.c[i];
    if (i < p.degree()) pw = pw * a;
  }
  return acc;
}

// Smallest d >= 0 with N^(d+1) = 0; input_error if N is not nilpotent.
long nilpotency_index(const QMat& n) {
  if (!n.is_square()) throw input_error("nilpotent operator must be square");
  QMat pw = n;  // N^p for the running p
  long p = 1;
  while (!pw.is_zero()) {
    if (p > n.rows()) throw input_error("operator is not nilpotent");
    pw = pw * n;
    ++p;
  }
  return p - 1;
}

// Columns completing span(prev) to span(cur); taken greedily from cur.
QMat quotient_lift(const QMat& prev, const QMat& cur) {
  QMat acc = prev;
  QMat lift(cur.rows(), 0);
  for (long j = 0; j < cur.cols(); ++j) {
    if (span_contains(acc, cur.col(j))) continue;
    QMat v(cur.rows(), 1);
    v.set_col(0, cur.col(j));
    lift = hstack(lift, v);
    acc = hstack(acc, v);
  }
  return lift;
}

// Matrix of the action induced by op on span(cur)/span(prev), in the basis
// given by the columns of lift.  Requires op * cur stays in span(cur).
QMat induced_on_quotient(const QMat& op, const QMat& prev, const QMat& lift) {
  QMat full = hstack(prev, lift);
  QMat coords = solve_many(full, op * lift);
  QMat out(lift.cols(), lift.cols());
  for (long i = 0; i < lift.cols(); ++i)
    for (long j = 0; j < lift.cols(); ++j)
      out.at(i, j) = coords.at(prev.cols() + i, j);
  return out;
}

}  // namespace

GaloisSpace make_galois_space(QMat frobenius, QMat nilpotent,
                              long central_weight, Int field_size) {
  if (!frobenius.is_square() || !nilpotent.is_square() ||
      frobenius.rows() != nilpotent.rows())
    throw input_error("frobenius and nilpotent must be square of equal size");
  if (field_size < 2) throw input_error("field size must be at least 2");
  GaloisSpace s;
  s.dim = frobenius.rows();
  s.frobenius = std::move(frobenius);
  s.nilpotent = std::move(nilpotent);
  s.central_weight = central_weight;
  s.field_size = std::move(field_size);
  if (s.dim > 0 && det(s.frobenius) == 0)
    throw input_error("frobenius must be invertible");
  if (!mat_pow(s.nilpotent, s.dim).is_zero())
    throw input_error("operator N is not nilpotent");
  // F N (#k) == N F, i.e. conjugating N by F divides it by #k.
  if (!(s.frobenius * s.nilpotent * Rat(s.field_size) ==
        s.nilpotent * s.frobenius))
    throw input_error(
        "twist compatibility F N F^{-1} = (1/#k) N fails exactly");
  return s;
}

QMat rescale_monodromy(const QMat& nilpotent, const Rat& c) {
  if (c == 0) throw input_error("rescale constant must be nonzero");
  return nilpotent * (Rat(1) / c);
}

GaloisSpace rescale_monodromy(const GaloisSpace& s, const Rat& c) {
  return make_galois_space(s.frobenius, rescale_monodromy(s.nilpotent, c),
                           s.central_weight, s.field_size);
}

QMat Filtration::w(long r) const {
  if (r < lo) return QMat(ambient_dim, 0);
  if (r > hi) return steps.back();
  return steps[r - lo];
}

long Filtration::dim_w(long r) const { return w(r).cols(); }

long Filtration::gr_dim(long r) const { return dim_w(r) - dim_w(r - 1); }

Filtration monodromy_filtration(const QMat& nilpotent, long center) {
  long dim = nilpotent.rows();
  long d = nilpotency_index(nilpotent);

  std::vector<QMat> powers;  // powers[a] = N^a
  powers.push_back(QMat::identity(dim));
  for (long a = 1; a <= d + 1; ++a) powers.push_back(powers.back() * nilpotent);

  std::vector<QMat> kernels(d + 2, QMat(dim, 0));  // kernels[a] = ker N^a
  for (long a = 0; a <= d + 1; ++a) kernels[a] = right_kernel(powers[a]);
  std::vector<QMat> images(d + 2, QMat(dim, 0));  // images[b] = im N^b
  for (long b = 0; b <= d + 1; ++b) images[b] = span_canon(powers[b]);

  Filtration fil;
  fil.center = center;
  fil.lo = center - d - 1;  // the last index at which the filtration is 0
  fil.hi = center + d;
  fil.ambient_dim = dim;
  fil.steps.push_back(QMat(dim, 0));

  // W_{center+j} = sum over b of ker N^{j+b+1} cap im N^b.
  for (long j = -d; j <= d; ++j) {
    QMat acc(dim, 0);
    for (long b = std::max(0l, -j); b <= d; ++b) {
      long ke = j + b + 1;
      if (ke <= 0) continue;
      const QMat& ker = ke > d + 1 ? kernels[d + 1] : kernels[ke];
      acc = span_sum(acc, span_intersect(ker, images[b]));
    }
    fil.steps.push_back(span_canon(acc));
  }

  // Defining property checks; failures here are implementation bugs.
  if (fil.steps.back().cols() != dim)
    throw internal_error("monodromy filtration does not exhaust the space");
  for (long r = fil.lo; r <= fil.hi; ++r) {
    if (!span_leq(fil.w(r - 1), fil.w(r)))
      throw internal_error("monodromy filtration is not increasing");
    QMat img = nilpotent * fil.w(r);
    if (!span_leq(img, fil.w(r - 2)))
      throw internal_error("monodromy filtration: N W_r not inside W_{r-2}");
  }
  for (long k = 1; k <= d; ++k) {
    long top = center + k, bot = center - k;
    if (fil.gr_dim(top) != fil.gr_dim(bot))
      throw internal_error("monodromy filtration: gr dims asymmetric");
    QMat lift = quotient_lift(fil.w(top - 1), fil.w(top));
    QMat mapped = hstack(fil.w(bot - 1), powers[k] * lift);
    if (rank(mapped) - fil.dim_w(bot - 1) != fil.gr_dim(top))
      throw internal_error("monodromy filtration: N^k not injective on gr");
    if (!span_leq(mapped, fil.w(bot)))
      throw internal_error("monodromy filtration: N^k image escapes W_{m-k}");
  }
  return fil;
}

std::map<long, long> frobenius_weights(const GaloisSpace& s) {
  QPoly cp(charpoly(s.frobenius));
  return weil_weight_partition(cp, s.field_size).dim_by_weight;
}

QPoly graded_frobenius_charpoly(const GaloisSpace& s, const Filtration& fil,
                                long r) {
  QMat prev = fil.w(r - 1);
  QMat lift = quotient_lift(prev, fil.w(r));
  if (lift.cols() == 0) return QPoly::constant(Rat(1));
  QMat cur = fil.w(r);
  QMat fcur = s.frobenius * cur;
  for (long j = 0; j < cur.cols(); ++j)
    if (!span_contains(cur, fcur.col(j)))
      throw internal_error("frobenius does not preserve the filtration");
  return QPoly(charpoly(induced_on_quotient(s.frobenius, prev, lift)));
}

WmReport wm_check(const GaloisSpace& s) {
  WmReport rep;
  rep.filtration = monodromy_filtration(s.nilpotent, s.central_weight);
  for (long r = rep.filtration.lo; r <= rep.filtration.hi; ++r) {
    long d = rep.filtration.gr_dim(r);
    rep.gr_dims[r] = d;
    QPoly cp = graded_frobenius_charpoly(s, rep.filtration, r);
    rep.gr_charpolys[r] = cp;
    if (d == 0) continue;
    std::string diag;
    if (!roots_have_weight(cp, s.field_size, r, 1e-9, &diag)) {
      std::ostringstream os;
      os << "gr_" << r << ": " << diag;
      rep.failures.push_back(os.str());
    }
  }
  rep.pass = rep.failures.empty();
  return rep;
}

Rat average_weight(const GaloisSpace& s) {
  if (s.dim == 0) throw input_error("average weight of the zero space");
  std::map<long, long> w = frobenius_weights(s);
  Rat acc(0);
  for (const auto& [weight, d] : w) acc += Rat(weight) * Rat(d);
  return acc / Rat(s.dim);
}

Sl2Triple sl2_triple(const GaloisSpace& s) {
  WmReport wm = wm_check(s);
  if (!wm.pass) {
    std::string msg = "sl2 construction requires the weight filtration check "
                      "to pass; first failure: ";
    throw input_error(msg + wm.failures.front());
  }
  QPoly cp(charpoly(s.frobenius));
  if (!eval_matrix(squarefree_part(cp), s.frobenius).is_zero())
    throw input_error("sl2 construction requires a semisimple frobenius");

  long m = s.central_weight;
  // Weight space V_w = ker c_w(F), with c_w the exact charpoly of gr_w.
  // Distinct graded indices give coprime c_w (their roots differ in modulus),
  // so these kernels decompose the space.
  std::map<long, QMat> weight_space;
  QMat assembled(s.dim, 0);
  std::vector<long> col_weight;
  for (const auto& [w, cpw] : wm.gr_charpolys) {
    if (cpw.degree() <= 0) continue;
    QMat vw = right_kernel(eval_matrix(cpw, s.frobenius));
    if (vw.cols() != cpw.degree())
      throw internal_error("weight space dimension mismatch");
    weight_space[w] = vw;
    assembled = hstack(assembled, vw);
    for (long j = 0; j < vw.cols(); ++j) col_weight.push_back(w);
  }
  if (assembled.cols() != s.dim || rank(assembled) != s.dim)
    throw internal_error("weight spaces do not decompose the space");
  for (const auto& [w, vw] : weight_space) {
    QMat img = s.nilpotent * vw;
    auto it = weight_space.find(w - 2);
    QMat target = it == weight_space.end() ? QMat(s.dim, 0) : it->second;
    if (!span_leq(img, target))
      throw internal_error("N does not lower the weight grading by 2");
  }

  QMat inv_assembled = inverse(assembled);
  QMat h(s.dim, s.dim);
  {
    QMat diag(s.dim, s.dim);
    for (long j = 0; j < s.dim; ++j) diag.at(j, j) = Rat(col_weight[j] - m);
    h = assembled * diag * inv_assembled;
  }

  // Primitive decomposition: at level k >= 0 the primitives are
  // V_{m+k} cap ker N^{k+1}; chains N^j p, j = 0..k, exhaust the space.
  QMat chain_basis(s.dim, 0);
  QMat e_coords(s.dim, s.dim);
  long col = 0;
  std::vector<long> ks;
  for (const auto& [w, vw] : weight_space)
    if (w >= m) ks.push_back(w - m);
  std::sort(ks.rbegin(), ks.rend());
  for (long k : ks) {
    const QMat& vw = weight_space.at(m + k);
    QMat prim = span_intersect(vw, right_kernel(mat_pow(s.nilpotent, k + 1)));
    for (long pj = 0; pj < prim.cols(); ++pj) {
      QMat chain(s.dim, k + 1);
      std::vector<Rat> v = prim.col(pj);
      for (long j = 0; j <= k; ++j) {
        chain.set_col(j, v);
        if (j < k) v = s.nilpotent * v;
      }
      // e(N^j p) = j (k + 1 - j) N^{j-1} p on this chain.
      for (long j = 1; j <= k; ++j)
        e_coords.at(col + j - 1, col + j) = Rat(j) * Rat(k + 1 - j);
      chain_basis = hstack(chain_basis, chain);
      col += k + 1;
    }
  }
  if (chain_basis.cols() != s.dim)
    throw internal_error("primitive chains do not exhaust the space");
  QMat e = chain_basis * e_coords * inverse(chain_basis);

  Sl2Triple t{e, h, s.nilpotent};
  QMat ef = t.e * t.f - t.f * t.e;
  if (!(ef == t.h)) throw internal_error("sl2 bracket [e,f] != h");
  if (!(t.h * t.e - t.e * t.h == t.e * Rat(2)))
    throw internal_error("sl2 bracket [h,e] != 2e");
  if (!(t.h * t.f - t.f * t.h == t.f * Rat(-2)))
    throw internal_error("sl2 bracket [h,f] != -2f");
  return t;
}

namespace {

// Basis of ker N together with the matrix of F restricted to it.
std::pair<QMat, QMat> kernel_action(const GaloisSpace& s) {
  QMat k = right_kernel(s.nilpotent);
  QMat fk = solve_many(k, s.frobenius * k);  // F preserves ker N by the twist
  return {k, fk};
}

}  // namespace

QPoly lfactor_kernel_poly(const GaloisSpace& s) {
  auto [k, fk] = kernel_action(s);
  QPoly cp(charpoly(fk));
  return reverse_poly(cp, k.cols());  // det(1 - F T) on ker N
}

long pole_order(const GaloisSpace& s, long r) {
  auto [k, fk] = kernel_action(s);
  if (k.cols() == 0) return 0;
  QPoly cp(charpoly(fk));
  Rat target = rat_pow(Rat(s.field_size), r);
  return root_multiplicity(cp, target);
}

HomSymReport hom_from_sym(const GaloisSpace& se, long t, const GaloisSpace& s,
                          long r) {
  if (t < 0) throw input_error("symmetric power exponent must be nonnegative");
  if (t > 64) throw input_error("symmetric power exponent above 64 rejected");
  if (se.dim != 2) throw input_error("SE must be two-dimensional");
  if (se.field_size != s.field_size)
    throw input_error("SE and S must share the field size");
  const QMat& fe = se.frobenius;
  const QMat& ne = se.nilpotent;
  if (!(fe.at(0, 0) == 1 && fe.at(1, 1) == Rat(se.field_size) &&
        fe.at(0, 1) == 0 && fe.at(1, 0) == 0))
    throw input_error("SE frobenius must be diag(1, #k)");
  if (!(ne.at(0, 0) == 0 && ne.at(1, 0) == 0 && ne.at(1, 1) == 0) ||
      ne.at(0, 1) == 0)
    throw input_error("SE nilpotent must send e2 to a nonzero multiple of e1");
  const Rat nu = ne.at(0, 1);

  // Sym^t in the basis e1^t, e1^{t-1} e2, ..., e2^t.
  long da = t + 1, ds = s.dim;
  QMat fa(da, da), na(da, da);
  for (long a = 0; a < da; ++a) {
    fa.at(a, a) = rat_pow(Rat(s.field_size), a);
    if (a >= 1) na.at(a - 1, a) = Rat(a) * nu;  // Leibniz rule
  }
  QMat fb = s.frobenius * rat_pow(Rat(s.field_size), -r);
  const QMat& nb = s.nilpotent;

  // vec(X) column-major: X_{i,a} at index a*ds + i.
  long unknowns = ds * da;
  QMat system(2 * unknowns, unknowns);
  auto row_base = [&](bool second, long i, long b) {
    return (second ? unknowns : 0) + b * ds + i;
  };
  for (long i = 0; i < ds; ++i)
    for (long b = 0; b < da; ++b) {
      // (X fa - fb X)_{i,b} = 0
      for (long a = 0; a < da; ++a)
        if (fa.at(a, b) != 0)
          system.at(row_base(false, i, b), a * ds + i) += fa.at(a, b);
      for (long j = 0; j < ds; ++j)
        if (fb.at(i, j) != 0)
          system.at(row_base(false, i, b), b * ds + j) -= fb.at(i, j);
      // (X na - nb X)_{i,b} = 0
      for (long a = 0; a < da; ++a)
        if (na.at(a, b) != 0)
          system.at(row_base(true, i, b), a * ds + i) += na.at(a, b);
      for (long j = 0; j < ds; ++j)
        if (nb.at(i, j) != 0)
          system.at(row_base(true, i, b), b * ds + j) -= nb.at(i, j);
    }

  QMat ker = right_kernel(system);
  HomSymReport rep;
  rep.dim = ker.cols();
  rep.evaluation = QMat(ds, ker.cols());
  for (long c = 0; c < ker.cols(); ++c) {
    QMat x(ds, da);
    for (long a = 0; a < da; ++a)
      for (long i = 0; i < ds; ++i) x.at(i, a) = ker.at(a * ds + i, c);
    rep.evaluation.set_col(c, x.col(0));  // value on e1^t
    rep.basis.push_back(std::move(x));
  }

  QMat fixed_sys = vstack(fb - QMat::identity(ds), nb);
  rep.fixed_basis = right_kernel(fixed_sys);
  rep.fixed_dim = rep.fixed_basis.cols();
  return rep;
}

UnipotenceReport unipotence_bound(const ZMat& column) {
  if (column.cols() != 1 || column.rows() < 1)
    throw input_error("lattice map must be a single nonempty column");
  bool all_zero = true;
  for (long i = 0; i < column.rows(); ++i)
    if (column.at(i, 0) != 0) all_zero = false;
  if (all_zero) throw input_error("zero lattice map rejected");
  SmithResult snf = smith_normal_form(column);
  UnipotenceReport rep;
  rep.elementary_divisors = snf.divisors;
  rep.free_rank = column.rows() - static_cast<long>(snf.divisors.size());
  rep.torsion_free = true;
  for (const Int& d : snf.divisors)
    if (d != 1) rep.torsion_free = false;
  rep.bound_applies = rep.torsion_free;
  return rep;
}

}  // namespace logcurve::monodromy
