#include "logcurve/cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>

#include "logcurve/dualgraph.hpp"
#include "logcurve/monodromy.hpp"
#include "logcurve/tatecurve.hpp"
#include "logcurve/theta.hpp"

namespace logcurve::cli {

namespace {

using jsonio::Json;

[[noreturn]] void fail(const std::string& what) { throw input_error(what); }

bool has(const Json& o, const std::string& key) {
  return o.is_object() && o.contains(key);
}

Rat opt_rat(const Json& o, const std::string& key) {
  return jsonio::get_rat(jsonio::member(o, key, "/options"),
                         "/options/" + key);
}

long opt_long(const Json& o, const std::string& key) {
  Rat r = opt_rat(o, key);
  if (r.get_den() != 1) fail("/options/" + key + ": expected an integer");
  return r.get_num().get_si();
}

long opt_long_default(const Json& o, const std::string& key, long dflt) {
  return has(o, key) ? opt_long(o, key) : dflt;
}

Int opt_int(const Json& o, const std::string& key) {
  Rat r = opt_rat(o, key);
  if (r.get_den() != 1) fail("/options/" + key + ": expected an integer");
  return r.get_num();
}

// Accepts a JSON array or a comma-separated string.
std::vector<Rat> opt_rat_list(const Json& o, const std::string& key) {
  const Json& v = jsonio::member(o, key, "/options");
  if (v.is_array()) return jsonio::parse_rat_list(v, "/options/" + key);
  if (v.is_string()) {
    std::vector<Rat> out;
    std::stringstream ss(v.get<std::string>());
    std::string item;
    while (std::getline(ss, item, ',')) {
      try {
        out.push_back(parse_rat(item));
      } catch (const input_error&) {
        fail("/options/" + key + ": bad rational \"" + item + "\"");
      }
    }
    if (out.empty()) fail("/options/" + key + ": empty list");
    return out;
  }
  fail("/options/" + key + ": expected a list");
}

std::vector<long> opt_long_list(const Json& o, const std::string& key) {
  std::vector<long> out;
  for (const Rat& r : opt_rat_list(o, key)) {
    if (r.get_den() != 1) fail("/options/" + key + ": expected integers");
    out.push_back(r.get_num().get_si());
  }
  return out;
}

const Json& required_input(const Json& o) {
  if (!has(o, "input")) fail("/options/input: missing required field");
  return o["input"];
}

bool input_is_curve(const Json& in) { return has(in, "components"); }

monodromy::GaloisSpace space_from_input(const Json& in) {
  if (input_is_curve(in))
    return dualgraph::assemble_h1(jsonio::parse_dual_graph(in));
  return jsonio::parse_galois_space(in);
}

Json weights_json(const std::map<long, long>& w) {
  Json out = Json::object();
  for (const auto& [weight, count] : w)
    out[std::to_string(weight)] = count;
  return out;
}

Json int_list_json(const std::vector<Int>& v) {
  Json out = Json::array();
  for (const Int& x : v) out.push_back(int_str(x));
  return out;
}

struct Outcome {
  Json results = Json::object();
  std::string verdict;  // empty for pure computations
};

Outcome cmd_cohomology(const Json& o) {
  dualgraph::DualGraph g = jsonio::parse_dual_graph(required_input(o));
  dualgraph::H1Lattice lat = dualgraph::h1_lattice(g);
  dualgraph::WmCurveReport wm = dualgraph::wm_verify_curve(g);
  Outcome out;
  out.results["components"] = g.components.size();
  out.results["nodes"] = g.nodes.size();
  out.results["coboundary"] = jsonio::zmat_json(dualgraph::coboundary_matrix(g));
  out.results["rank"] = lat.rank;
  out.results["elementary_divisors"] = int_list_json(lat.divisors);
  out.results["h1_basis"] = jsonio::zmat_json(lat.basis);
  out.results["h1_coords"] = jsonio::zmat_json(lat.coords);
  out.results["cycle_basis"] = jsonio::zmat_json(dualgraph::cycle_basis(g));
  out.results["gram"] = jsonio::zmat_json(dualgraph::gram_matrix(g));
  out.results["gram_det"] = int_str(wm.gram_det);
  out.results["positive_definite"] = wm.pass;
  out.results["log_pic_rank"] = dualgraph::log_pic_rank(g);
  return out;
}

Outcome cmd_monodromy(const Json& o) {
  const Json& in = required_input(o);
  monodromy::GaloisSpace s = space_from_input(in);
  if (has(o, "rescale"))
    s = monodromy::rescale_monodromy(s, opt_rat(o, "rescale"));
  monodromy::Filtration fil =
      monodromy::monodromy_filtration(s.nilpotent, s.central_weight);
  Outcome out;
  out.results["dim"] = s.dim;
  out.results["field_size"] = int_str(s.field_size);
  out.results["central_weight"] = s.central_weight;
  out.results["frobenius"] = jsonio::qmat_json(s.frobenius);
  out.results["nilpotent"] = jsonio::qmat_json(s.nilpotent);
  Json dims = Json::array();
  for (long r = fil.lo; r <= fil.hi; ++r) dims.push_back(fil.dim_w(r));
  out.results["filtration"] = Json{{"lo", fil.lo}, {"hi", fil.hi},
                                   {"dims", dims}};
  out.results["frobenius_weights"] =
      weights_json(monodromy::frobenius_weights(s));
  if (input_is_curve(in)) {
    dualgraph::DualGraph g = jsonio::parse_dual_graph(in);
    dualgraph::GradedH1Model model = dualgraph::graded_model(g);
    Json graded = Json::object();
    graded["cycle_rank"] = model.cycle_rank;
    graded["weight1_dim"] = model.weight1_dim;
    graded["w0_frobenius"] = jsonio::qmat_json(model.w0_frobenius);
    graded["weight1_frobenius"] = jsonio::qmat_json(model.weight1_frobenius);
    graded["h1_frobenius"] = jsonio::qmat_json(model.h1_frobenius);
    graded["gram"] = jsonio::zmat_json(model.gram);
    out.results["graded"] = graded;
  }
  return out;
}

Outcome cmd_wm_check(const Json& o) {
  monodromy::GaloisSpace s = space_from_input(required_input(o));
  monodromy::WmReport rep = monodromy::wm_check(s);
  Outcome out;
  Json dims = Json::object();
  for (const auto& [r, d] : rep.gr_dims) dims[std::to_string(r)] = d;
  Json polys = Json::object();
  for (const auto& [r, p] : rep.gr_charpolys)
    polys[std::to_string(r)] = jsonio::qpoly_json(p);
  out.results["gr_dims"] = dims;
  out.results["gr_charpolys"] = polys;
  out.results["average_weight"] = rat_str(monodromy::average_weight(s));
  out.results["failures"] = rep.failures;
  out.verdict = rep.pass ? "PASS" : "FAIL";
  return out;
}

Outcome cmd_sl2(const Json& o) {
  monodromy::GaloisSpace s = space_from_input(required_input(o));
  monodromy::Sl2Triple t = monodromy::sl2_triple(s);
  Outcome out;
  out.results["e"] = jsonio::qmat_json(t.e);
  out.results["h"] = jsonio::qmat_json(t.h);
  out.results["f"] = jsonio::qmat_json(t.f);
  out.verdict = "PASS";
  return out;
}

Outcome cmd_pole_order(const Json& o) {
  monodromy::GaloisSpace s = space_from_input(required_input(o));
  long r = opt_long(o, "r");
  Outcome out;
  out.results["r"] = r;
  out.results["order"] = monodromy::pole_order(s, r);
  return out;
}

Outcome cmd_lfactor_kernel(const Json& o) {
  monodromy::GaloisSpace s = space_from_input(required_input(o));
  QPoly p = monodromy::lfactor_kernel_poly(s);
  Outcome out;
  out.results["poly"] = jsonio::qpoly_json(p);
  out.results["degree"] = p.degree();
  return out;
}

Outcome cmd_theta_eval(const Json& o) {
  Rat q = opt_rat(o, "q");
  long trunc = opt_long_default(o, "prec", 60);
  Outcome out;
  out.results["q"] = rat_str(q);
  out.results["trunc"] = trunc;
  Flt value;
  if (has(o, "t1") || has(o, "t2")) {
    Rat t1 = opt_rat(o, "t1");
    Rat t2 = opt_rat(o, "t2");
    value = theta::theta_delta(q, t1, t2, trunc);
    out.results["t1"] = rat_str(t1);
    out.results["t2"] = rat_str(t2);
  } else {
    Rat t = opt_rat(o, "t");
    Rat a = has(o, "a") ? opt_rat(o, "a") : Rat(1);
    value = theta::theta_shift_numeric(q, a, t, trunc);
    out.results["t"] = rat_str(t);
    out.results["a"] = rat_str(a);
  }
  out.results["value_approx"] = jsonio::flt_str(value);
  out.results["approximate"] = true;
  return out;
}

Outcome cmd_theta_verify(const Json& o) {
  std::string identity =
      jsonio::get_string(jsonio::member(o, "identity", "/options"),
                         "/options/identity");
  Outcome out;
  out.results["identity"] = identity;
  if (identity == "functional" || identity == "triple") {
    long prec = opt_long_default(o, "prec", 8);
    theta::IdentityReport rep = identity == "functional"
                                    ? theta::functional_equation_check(prec)
                                    : theta::triple_product_check(prec);
    out.results["prec"] = rep.prec;
    out.results["failures"] = rep.failures;
    out.verdict = rep.pass ? "PASS" : "FAIL";
    return out;
  }
  long trunc = opt_long_default(o, "trunc", 60);
  if (identity == "cross") {
    theta::NumericReport rep = theta::cross_ratio_check(
        opt_rat(o, "q"), opt_rat(o, "a"), opt_rat(o, "b"), opt_rat(o, "t"),
        trunc);
    out.results["max_error_approx"] = rep.max_error;
    out.results["approximate"] = true;
    out.results["failures"] = rep.failures;
    out.verdict = rep.pass ? "PASS" : "FAIL";
    return out;
  }
  if (identity == "divisor") {
    theta::NumericReport rep = theta::divisor_check(
        opt_rat(o, "q"), opt_rat(o, "a"), opt_long_default(o, "m_range", 2),
        trunc);
    out.results["max_error_approx"] = rep.max_error;
    out.results["approximate"] = true;
    out.results["failures"] = rep.failures;
    out.verdict = rep.pass ? "PASS" : "FAIL";
    return out;
  }
  if (identity == "multi") {
    theta::MultiRelationReport rep = theta::multi_relation_check(
        opt_rat_list(o, "bases"), opt_long_list(o, "exponents"),
        opt_rat(o, "q"), trunc);
    out.results["c"] = rep.c;
    out.results["max_error_approx"] = rep.max_error;
    out.results["approximate"] = true;
    out.results["failures"] = rep.failures;
    out.verdict = rep.pass ? "PASS" : "FAIL";
    return out;
  }
  fail("/options/identity: unknown identity \"" + identity + "\"");
}

Outcome cmd_tate_group(const Json& o) {
  tatecurve::LogPointBase base =
      tatecurve::make_base(opt_int(o, "k"), opt_long(o, "e"));
  tatecurve::PointGroup g = tatecurve::point_group(base);
  Outcome out;
  out.results["field_size"] = int_str(base.field_size);
  out.results["e"] = base.q_exp;
  out.results["order"] = tatecurve::group_order(g);
  out.results["unit_order"] = g.unit_order;
  out.results["v_order"] = g.v_order;
  out.results["invariant_factors"] = g.invariant_factors;
  if (has(o, "a")) {
    long a = opt_long(o, "a");
    out.results["a"] = a;
    out.results["kernel_order"] = tatecurve::mult_kernel_order(g, a);
  }
  return out;
}

Outcome cmd_tate_model(const Json& o) {
  tatecurve::LogPointBase base = tatecurve::make_base(
      Int(opt_long_default(o, "k", 2)), opt_long(o, "e"));
  tatecurve::NgonModel m = tatecurve::make_ngon(opt_long(o, "n"), base);
  tatecurve::ModelProperties props = tatecurve::model_properties(m);
  Outcome out;
  out.results["n"] = m.n;
  out.results["e"] = base.q_exp;
  out.results["field_size"] = int_str(base.field_size);
  out.results["semistable"] = props.semistable;
  out.results["saturated"] = props.saturated;
  out.results["gon_count"] = props.gon_count;
  Json stalks = Json::array();
  for (const ZMat& col : tatecurve::stalk_lattice_maps(m))
    stalks.push_back(int_str(col.at(0, 0)));
  out.results["stalk_indices"] = stalks;
  out.results["torsion_free"] = tatecurve::model_lattice_torsion_free(m);
  out.results["gram"] =
      jsonio::zmat_json(dualgraph::gram_matrix(tatecurve::ngon_dual_graph(m)));
  monodromy::GaloisSpace h1 = tatecurve::h1_tate_model(base);
  out.results["h1_frobenius"] = jsonio::qmat_json(h1.frobenius);
  out.results["h1_nilpotent"] = jsonio::qmat_json(h1.nilpotent);
  if (has(o, "v")) {
    tatecurve::ComponentLocus loc =
        tatecurve::component_index({0, opt_long(o, "v")}, m);
    out.results["locus"] =
        Json{{"at_node", loc.at_node}, {"index", loc.index}};
  }
  return out;
}

Outcome cmd_tate_isogeny(const Json& o) {
  Int k = opt_int(o, "k");
  tatecurve::LogPointBase b1 = tatecurve::make_base(k, opt_long(o, "e1"));
  tatecurve::LogPointBase b2 = tatecurve::make_base(k, opt_long(o, "e2"));
  tatecurve::IsogenyWitness w = tatecurve::isogeny_witness(b1, b2);
  Outcome out;
  out.results["field_size"] = int_str(k);
  out.results["e1"] = b1.q_exp;
  out.results["e2"] = b2.q_exp;
  out.results["forward_kernel"] = w.forward_kernel;
  out.results["forward_cokernel"] = w.forward_cokernel;
  out.results["backward_kernel"] = w.backward_kernel;
  out.results["backward_cokernel"] = w.backward_cokernel;
  return out;
}

Outcome cmd_hom_sym(const Json& o) {
  monodromy::GaloisSpace target = space_from_input(required_input(o));
  tatecurve::LogPointBase base = tatecurve::make_base(
      Int(opt_long_default(o, "k", 2)), opt_long_default(o, "e", 1));
  monodromy::GaloisSpace se = tatecurve::h1_tate_model(base);
  long t = opt_long(o, "t");
  long r = opt_long_default(o, "r", 0);
  monodromy::HomSymReport rep = monodromy::hom_from_sym(se, t, target, r);
  Outcome out;
  out.results["t"] = t;
  out.results["r"] = r;
  out.results["dim"] = rep.dim;
  out.results["fixed_dim"] = rep.fixed_dim;
  out.results["evaluation"] = jsonio::qmat_json(rep.evaluation);
  return out;
}

Outcome cmd_pairing(const Json& o) {
  dualgraph::DualGraph g = jsonio::parse_dual_graph(required_input(o));
  std::vector<Rat> x = opt_rat_list(o, "x");
  std::vector<Rat> y = opt_rat_list(o, "y");
  Outcome out;
  out.results["x"] = jsonio::rat_list_json(x);
  out.results["y"] = jsonio::rat_list_json(y);
  out.results["value"] = rat_str(dualgraph::h1_pairing(g, x, y));
  out.results["cycle_matrix"] =
      jsonio::qmat_json(dualgraph::monodromy_cycle_matrix(g));
  return out;
}

using Handler = std::function<Outcome(const Json&)>;

const std::map<std::string, Handler>& dispatch_table() {
  static const std::map<std::string, Handler> table = {
      {"cohomology", cmd_cohomology},
      {"monodromy", cmd_monodromy},
      {"wm-check", cmd_wm_check},
      {"sl2", cmd_sl2},
      {"pole-order", cmd_pole_order},
      {"lfactor-kernel", cmd_lfactor_kernel},
      {"theta-eval", cmd_theta_eval},
      {"theta-verify", cmd_theta_verify},
      {"tate-group", cmd_tate_group},
      {"tate-model", cmd_tate_model},
      {"tate-isogeny", cmd_tate_isogeny},
      {"hom-sym", cmd_hom_sym},
      {"pairing", cmd_pairing},
  };
  return table;
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, handler] : dispatch_table()) out.push_back(name);
    return out;
  }();
  return names;
}

RunResult run_command(const std::string& command, const jsonio::Json& options) {
  RunResult res;
  res.report["command"] = command;
  try {
    auto it = dispatch_table().find(command);
    if (it == dispatch_table().end())
      fail("unknown command \"" + command + "\"");
    Json resolved = options.is_null() ? Json::object() : options;
    if (!resolved.is_object()) fail("/options: expected an object");
    if (has(resolved, "input") && resolved["input"].is_string())
      resolved["input"] =
          jsonio::load_json_file(resolved["input"].get<std::string>());
    res.report["input_digest"] = jsonio::input_digest(resolved);
    Outcome out = it->second(resolved);
    res.report["results"] = std::move(out.results);
    if (!out.verdict.empty()) {
      res.report["verdict"] = out.verdict;
      res.exit_code = out.verdict == "PASS" ? 0 : 1;
    }
  } catch (const input_error& e) {
    res.report.erase("results");
    res.report["error"] = Json{{"type", "input_error"}, {"message", e.what()}};
    res.exit_code = 2;
  } catch (const internal_error& e) {
    res.report.erase("results");
    res.report["error"] =
        Json{{"type", "internal_error"}, {"message", e.what()}};
    res.exit_code = 2;
  }
  return res;
}

RunResult run_batch(const jsonio::Json& manifest) {
  RunResult res;
  res.report["command"] = "batch";
  if (!manifest.is_array()) {
    res.report["error"] =
        Json{{"type", "input_error"}, {"message", "manifest must be an array"}};
    res.exit_code = 2;
    return res;
  }
  Json reports = Json::array();
  int worst = 0;
  for (std::size_t i = 0; i < manifest.size(); ++i) {
    const Json& job = manifest[i];
    std::string command;
    Json options = Json::object();
    if (job.is_object() && job.contains("command") &&
        job["command"].is_string()) {
      command = job["command"].get<std::string>();
      if (job.contains("options")) options = job["options"];
    }
    RunResult one = run_command(command, options);
    if (one.exit_code != 0) worst = 1;  // job failures are contained
    reports.push_back(std::move(one.report));
  }
  res.report["jobs"] = manifest.size();
  res.report["reports"] = std::move(reports);
  res.exit_code = worst;
  return res;
}

int main_entry(int argc, char** argv) {
  init_numeric_precision();

  CLI::App app{"dual-graph cohomology, monodromy filtrations and Tate curve "
               "models over finite fields"};
  app.require_subcommand(1);

  // Flag keys double as option-object keys; per-command lists keep the help
  // output honest.
  static const std::map<std::string, std::vector<std::string>> flags = {
      {"cohomology", {}},
      {"monodromy", {"rescale"}},
      {"wm-check", {}},
      {"sl2", {}},
      {"pole-order", {"r"}},
      {"lfactor-kernel", {}},
      {"theta-eval", {"q", "t", "a", "t1", "t2", "prec"}},
      {"theta-verify",
       {"identity", "prec", "q", "a", "b", "t", "trunc", "m_range", "bases",
        "exponents"}},
      {"tate-group", {"k", "e", "a"}},
      {"tate-model", {"k", "e", "n", "v"}},
      {"tate-isogeny", {"k", "e1", "e2"}},
      {"hom-sym", {"k", "e", "t", "r"}},
      {"pairing", {"x", "y"}},
      {"batch", {}},
  };

  struct SubState {
    std::string input, inline_json, out;
    bool timing = false;
    std::map<std::string, std::string> values;
  };
  std::map<std::string, SubState> state;

  for (const auto& [name, keys] : flags) {
    CLI::App* sub = app.add_subcommand(name);
    SubState& st = state[name];
    sub->add_option("--input", st.input, "path of the JSON input document");
    sub->add_option("--json", st.inline_json, "inline JSON input document");
    sub->add_option("--out", st.out, "write the report here, not stdout");
    sub->add_flag("--timing", st.timing,
                  "append wall-clock timing to the report");
    for (const std::string& key : keys)
      sub->add_option("--" + key, st.values[key]);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  CLI::App* sub = app.get_subcommands().front();
  const SubState& st = state[sub->get_name()];

  RunResult result;
  auto started = std::chrono::steady_clock::now();
  try {
    Json options = Json::object();
    if (!st.inline_json.empty())
      options["input"] = jsonio::load_json_text(st.inline_json);
    else if (!st.input.empty())
      options["input"] = st.input;  // resolved by run_command
    for (const auto& [key, value] : st.values)
      if (sub->count("--" + key) > 0) options[key] = value;

    if (sub->get_name() == "batch") {
      if (!options.contains("input"))
        fail("batch needs --input or --json with a manifest array");
      Json manifest = options["input"].is_string()
                          ? jsonio::load_json_file(
                                options["input"].get<std::string>())
                          : options["input"];
      result = run_batch(manifest);
    } else {
      result = run_command(sub->get_name(), options);
    }
  } catch (const input_error& e) {
    result.report = Json{{"command", sub->get_name()},
                         {"error", Json{{"type", "input_error"},
                                        {"message", e.what()}}}};
    result.exit_code = 2;
  }

  if (st.timing) {
    auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
        std::chrono::steady_clock::now() - started);
    result.report["timing_ms"] = elapsed.count();
  }

  std::string text = result.report.dump(2) + "\n";
  if (!st.out.empty()) {
    std::ofstream out(st.out);
    if (!out) {
      std::cerr << "cannot write report to " << st.out << "\n";
      return 2;
    }
    out << text;
  } else {
    std::cout << text;
  }
  return result.exit_code;
}

}  // namespace logcurve::cli
