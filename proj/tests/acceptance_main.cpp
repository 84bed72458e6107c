// Acceptance gate: ten desk-scale property suites, one verdict line each.
// Seeds, grids, tolerances and time budgets are pinned here on purpose so
// a run is reproducible bit for bit.
#include <chrono>
#include <cstdio>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "logcurve/dualgraph.hpp"
#include "logcurve/monodromy.hpp"
#include "logcurve/tatecurve.hpp"
#include "logcurve/theta.hpp"
#include "oracles.hpp"

namespace {

using namespace logcurve;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

constexpr unsigned long long kSeed = 20260823ull;
constexpr double kNumericTol = 1e-20;

bool criterion_graph_wm(std::string& note) {
  auto t0 = Clock::now();
  std::mt19937_64 rng(kSeed + 1);
  for (int i = 0; i < 500; ++i) {
    dualgraph::DualGraph g = oracle::random_multigraph(rng, 8, 16, Int(2));
    dualgraph::WmCurveReport rep = dualgraph::wm_verify_curve(g);
    if (!rep.pass) {
      note = "graph " + std::to_string(i) + " failed positivity";
      return false;
    }
    if (rep.gram_det != oracle::spanning_tree_count(g)) {
      note = "graph " + std::to_string(i) + " det != spanning tree count";
      return false;
    }
  }
  if (seconds_since(t0) >= 10.0) {
    note = "exceeded the 10 s budget";
    return false;
  }
  return true;
}

bool criterion_assembled_wm(std::string& note) {
  std::mt19937_64 rng(kSeed + 1);  // same stream, same 500 graphs
  for (int i = 0; i < 500; ++i) {
    dualgraph::DualGraph g = oracle::random_multigraph(rng, 8, 16, Int(2));
    monodromy::GaloisSpace s = dualgraph::assemble_h1(g);
    if (!monodromy::wm_check(s).pass) {
      note = "graph " + std::to_string(i) + " assembled space failed";
      return false;
    }
    if (!(dualgraph::monodromy_cycle_matrix(g) == s.nilpotent)) {
      note = "graph " + std::to_string(i) + " cycle matrix != assembled N";
      return false;
    }
  }
  return true;
}

bool criterion_filtration_oracle(std::string& note) {
  auto t0 = Clock::now();
  std::mt19937_64 rng(kSeed + 3);
  for (int i = 0; i < 200; ++i) {
    long dim = 2 + static_cast<long>(rng() % 5);
    long center = static_cast<long>(rng() % 4);
    QMat n = oracle::random_nilpotent(rng, dim);
    monodromy::Filtration lib = monodromy::monodromy_filtration(n, center);
    oracle::ChainFiltration ref = oracle::jordan_filtration(n, center);
    long lo = std::min(lib.lo, ref.lo) - 1;
    long hi = std::max(lib.hi, ref.hi) + 1;
    for (long r = lo; r <= hi; ++r) {
      if (!span_eq(lib.w(r), ref.w(r))) {
        note = "matrix " + std::to_string(i) + " differs at W_" +
               std::to_string(r);
        return false;
      }
    }
  }
  if (seconds_since(t0) >= 5.0) {
    note = "exceeded the 5 s budget";
    return false;
  }
  return true;
}

bool sl2_brackets_hold(const monodromy::GaloisSpace& s, std::string& note,
                       const std::string& label) {
  monodromy::Sl2Triple t = monodromy::sl2_triple(s);
  QMat he = t.h * t.e - t.e * t.h;
  QMat hf = t.h * t.f - t.f * t.h;
  QMat ef = t.e * t.f - t.f * t.e;
  if (!(he == t.e * Rat(2)) || !(hf == t.f * Rat(-2)) || !(ef == t.h)) {
    note = label + ": bracket identity violated";
    return false;
  }
  return true;
}

bool criterion_sl2(std::string& note) {
  for (long k : {2L, 3L, 5L}) {
    for (long e = 1; e <= 3; ++e) {
      monodromy::GaloisSpace s =
          tatecurve::h1_tate_model(tatecurve::make_base(Int(k), e));
      if (!sl2_brackets_hold(s, note, "model k=" + std::to_string(k) +
                                          " e=" + std::to_string(e)))
        return false;
    }
  }
  for (long n = 2; n <= 6; ++n) {
    tatecurve::NgonModel m =
        tatecurve::make_ngon(n, tatecurve::make_base(Int(2), n));
    monodromy::GaloisSpace s =
        dualgraph::assemble_h1(tatecurve::ngon_dual_graph(m));
    if (!sl2_brackets_hold(s, note, "assembled " + std::to_string(n) + "-gon"))
      return false;
  }
  return true;
}

bool criterion_theta_exact(std::string& note) {
  auto t0 = Clock::now();
  // The functional-equation window is empty below precision 2.
  for (long p = 2; p <= 16; ++p) {
    if (!theta::functional_equation_check(p).pass) {
      note = "functional equation failed at precision " + std::to_string(p);
      return false;
    }
  }
  for (long p = 1; p <= 16; ++p) {
    if (!theta::triple_product_check(p).pass) {
      note = "triple product failed at precision " + std::to_string(p);
      return false;
    }
  }
  if (seconds_since(t0) >= 2.0) {
    note = "exceeded the 2 s budget";
    return false;
  }
  return true;
}

bool criterion_theta_numeric(std::string& note) {
  auto t0 = Clock::now();
  std::mt19937_64 rng(kSeed + 6);
  const Rat q(1, 10);
  const long trunc = 80;
  auto rnd = [&rng]() {
    return Rat(1 + static_cast<long>(rng() % 9),
               1 + static_cast<long>(rng() % 9));
  };
  for (int i = 0; i < 50; ++i) {
    for (int attempt = 0;; ++attempt) {
      if (attempt > 100) {
        note = "could not find a nondegenerate parameter set";
        return false;
      }
      try {
        theta::NumericReport cr =
            theta::cross_ratio_check(q, rnd(), rnd(), rnd(), trunc);
        if (!cr.pass || cr.max_error > kNumericTol) {
          note = "cross ratio set " + std::to_string(i) + " error " +
                 std::to_string(cr.max_error);
          return false;
        }
        break;
      } catch (const input_error&) {
        continue;  // resample away from the zero lattice
      }
    }
    theta::NumericReport dv = theta::divisor_check(q, rnd(), 2, trunc);
    if (!dv.pass || dv.max_error > kNumericTol) {
      note = "divisor set " + std::to_string(i);
      return false;
    }
    Rat u1 = rnd(), u2 = rnd();
    long c = static_cast<long>(rng() % 5) - 2;
    std::vector<Rat> bases = {u1, u2, u1 * u1 / u2 * rat_pow(q, -c)};
    theta::MultiRelationReport mr =
        theta::multi_relation_check(bases, {2, -1, -1}, q, trunc);
    if (!mr.pass || mr.c != c || mr.max_error > kNumericTol) {
      note = "multi relation set " + std::to_string(i);
      return false;
    }
  }
  if (seconds_since(t0) >= 5.0) {
    note = "exceeded the 5 s budget";
    return false;
  }
  return true;
}

bool criterion_tate_groups(std::string& note) {
  for (long k : {2L, 3L, 4L, 5L, 7L, 8L, 9L, 11L}) {
    for (long e = 1; e <= 6; ++e) {
      tatecurve::LogPointBase base = tatecurve::make_base(Int(k), e);
      tatecurve::PointGroup g = tatecurve::point_group(base);
      std::string label = "k=" + std::to_string(k) + " e=" + std::to_string(e);

      std::vector<tatecurve::TatePoint> pts;
      for (long u = 0; u < g.unit_order; ++u)
        for (long v = 0; v < g.v_order; ++v) pts.push_back({u, v});
      tatecurve::TatePoint id = tatecurve::identity_point();

      for (const auto& p : pts) {
        if (!tatecurve::same_point(g, tatecurve::add_points(g, p, id), p)) {
          note = label + ": identity axiom";
          return false;
        }
        auto neg = tatecurve::negate_point(g, p);
        if (!tatecurve::same_point(g, tatecurve::add_points(g, p, neg), id)) {
          note = label + ": inverse axiom";
          return false;
        }
      }
      for (const auto& a : pts)
        for (const auto& b : pts) {
          if (!tatecurve::same_point(g, tatecurve::add_points(g, a, b),
                                     tatecurve::add_points(g, b, a))) {
            note = label + ": commutativity";
            return false;
          }
          for (const auto& c : pts) {
            auto left = tatecurve::add_points(g, tatecurve::add_points(g, a, b), c);
            auto right = tatecurve::add_points(g, a, tatecurve::add_points(g, b, c));
            if (!tatecurve::same_point(g, left, right)) {
              note = label + ": associativity";
              return false;
            }
          }
        }
      for (long a = 1; a <= 8; ++a) {
        long brute = 0;
        for (const auto& p : pts)
          if (tatecurve::same_point(g, tatecurve::mult_by_a(g, p, a), id))
            ++brute;
        if (brute != tatecurve::mult_kernel_order(g, a)) {
          note = label + ": kernel of a=" + std::to_string(a);
          return false;
        }
      }
    }
    // Isogeny bookkeeping over the same unit group.
    for (long e1 = 1; e1 <= 6; ++e1)
      for (long e2 = 1; e2 <= 6; ++e2) {
        tatecurve::LogPointBase b1 = tatecurve::make_base(Int(k), e1);
        tatecurve::LogPointBase b2 = tatecurve::make_base(Int(k), e2);
        tatecurve::IsogenyWitness w = tatecurve::isogeny_witness(b1, b2);
        std::string label = "k=" + std::to_string(k) + " e1=" +
                            std::to_string(e1) + " e2=" + std::to_string(e2);
        if (w.forward_kernel * e2 != w.forward_cokernel * e1 ||
            w.forward_kernel != w.backward_cokernel ||
            w.forward_cokernel != w.backward_kernel) {
          note = label + ": index bookkeeping";
          return false;
        }
        tatecurve::PointGroup g1 = tatecurve::point_group(b1);
        tatecurve::PointGroup g2 = tatecurve::point_group(b2);
        tatecurve::TatePoint id = tatecurve::identity_point();
        long brute_kernel = 0;
        std::set<std::pair<long, long>> image;
        for (long u = 0; u < g1.unit_order; ++u)
          for (long v = 0; v < g1.v_order; ++v) {
            tatecurve::TatePoint q =
                tatecurve::normalize_point(g2,
                                           tatecurve::isogeny_forward(b1, b2, {u, v}));
            if (tatecurve::same_point(g2, q, id)) ++brute_kernel;
            image.insert({q.unit_exp, q.vclass});
          }
        long brute_cokernel =
            tatecurve::group_order(g2) / static_cast<long>(image.size());
        if (brute_kernel != w.forward_kernel ||
            brute_cokernel != w.forward_cokernel) {
          note = label + ": brute-force kernel/cokernel mismatch";
          return false;
        }
      }
  }
  return true;
}

bool criterion_pole_order(std::string& note) {
  for (long k : {2L, 3L, 5L, 7L}) {
    for (long e = 1; e <= 4; ++e) {
      monodromy::GaloisSpace s =
          tatecurve::h1_tate_model(tatecurve::make_base(Int(k), e));
      std::string label = "k=" + std::to_string(k) + " e=" + std::to_string(e);
      long p0 = monodromy::pole_order(s, 0);
      long p1 = monodromy::pole_order(s, 1);
      if (p0 != 1 || p1 != 0) {
        note = label + ": orders (" + std::to_string(p0) + "," +
               std::to_string(p1) + "), expected (1,0)";
        return false;
      }
      if (p0 != oracle::pole_order_by_division(s, 0) ||
          p1 != oracle::pole_order_by_division(s, 1)) {
        note = label + ": division oracle disagrees";
        return false;
      }
    }
  }
  return true;
}

bool criterion_hom_sym(std::string& note) {
  for (long n = 2; n <= 6; ++n) {
    tatecurve::LogPointBase base = tatecurve::make_base(Int(2), n);
    monodromy::GaloisSpace se = tatecurve::h1_tate_model(base);
    monodromy::GaloisSpace s = dualgraph::assemble_h1(
        tatecurve::ngon_dual_graph(tatecurve::make_ngon(n, base)));
    monodromy::HomSymReport rep = monodromy::hom_from_sym(se, 1, s, 0);
    if (rep.dim != rep.fixed_dim) {
      note = std::to_string(n) + "-gon: Hom dim " + std::to_string(rep.dim) +
             " != fixed dim " + std::to_string(rep.fixed_dim);
      return false;
    }
  }
  return true;
}

bool criterion_unipotence(std::string& note) {
  for (long e = 1; e <= 12; ++e)
    for (long n = 2; n <= 6; ++n) {
      tatecurve::NgonModel m =
          tatecurve::make_ngon(n, tatecurve::make_base(Int(2), e));
      bool saturated = tatecurve::model_properties(m).saturated;
      bool torsion_free = tatecurve::model_lattice_torsion_free(m);
      bool stalkwise = true;
      for (const ZMat& col : tatecurve::stalk_lattice_maps(m))
        stalkwise = stalkwise && monodromy::unipotence_bound(col).torsion_free;
      std::string label = "e=" + std::to_string(e) + " n=" + std::to_string(n);
      if (stalkwise != torsion_free) {
        note = label + ": stalkwise bound disagrees with model summary";
        return false;
      }
      if (saturated != torsion_free) {
        note = label + ": saturation and torsion-freeness disagree";
        return false;
      }
    }
  return true;
}

struct Criterion {
  const char* name;
  bool (*run)(std::string&);
};

}  // namespace

int main() {
  init_numeric_precision();
  const std::vector<Criterion> criteria = {
      {"graph weight-monodromy on 500 random multigraphs", criterion_graph_wm},
      {"assembled curve spaces pass wm-check with matching N",
       criterion_assembled_wm},
      {"monodromy filtration matches the Jordan-chain oracle",
       criterion_filtration_oracle},
      {"sl2 triples satisfy the bracket identities exactly", criterion_sl2},
      {"theta exact identities hold through precision 16",
       criterion_theta_exact},
      {"theta numeric identities hold on 50 random parameter sets",
       criterion_theta_numeric},
      {"point groups verified exhaustively with isogeny bookkeeping",
       criterion_tate_groups},
      {"pole orders are (1,0) and match the division oracle",
       criterion_pole_order},
      {"Hom-from-sym dimension equals the fixed-space dimension",
       criterion_hom_sym},
      {"saturation, stalk bounds and torsion-freeness agree",
       criterion_unipotence},
  };

  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    std::string note;
    bool ok = false;
    try {
      ok = criteria[i].run(note);
    } catch (const std::exception& e) {
      note = std::string("exception: ") + e.what();
    }
    if (ok) {
      std::printf("[PASS] %2zu. %s\n", i + 1, criteria[i].name);
    } else {
      std::printf("[FAIL] %2zu. %s (%s)\n", i + 1, criteria[i].name,
                  note.c_str());
      ++failed;
    }
  }
  return failed == 0 ? 0 : 1;
}
