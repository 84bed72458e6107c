#include "logcurve/json_io.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace logcurve::jsonio {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw input_error(path.empty() ? what : path + ": " + what);
}

}  // namespace

const Json& member(const Json& j, const std::string& key,
                   const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(path + "/" + key, "missing required field");
  return *it;
}

long get_long(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) fail(path, "expected an integer");
  return j.get<long>();
}

Int get_int(const Json& j, const std::string& path) {
  if (j.is_number_integer()) return Int(j.get<long>());
  if (j.is_string()) {
    try {
      Rat r = parse_rat(j.get<std::string>());
      if (r.get_den() != 1) fail(path, "expected an integer");
      return r.get_num();
    } catch (const input_error&) {
      fail(path, "expected an integer");
    }
  }
  fail(path, "expected an integer");
}

Rat get_rat(const Json& j, const std::string& path) {
  if (j.is_number_integer()) return Rat(j.get<long>());
  if (j.is_string()) {
    try {
      return parse_rat(j.get<std::string>());
    } catch (const input_error&) {
      fail(path, "expected a rational \"p/q\" string");
    }
  }
  fail(path, "expected a rational \"p/q\" string");
}

bool get_bool(const Json& j, const std::string& path) {
  if (!j.is_boolean()) fail(path, "expected a boolean");
  return j.get<bool>();
}

std::string get_string(const Json& j, const std::string& path) {
  if (!j.is_string()) fail(path, "expected a string");
  return j.get<std::string>();
}

std::vector<Rat> parse_rat_list(const Json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array of rationals");
  std::vector<Rat> out;
  for (std::size_t i = 0; i < j.size(); ++i)
    out.push_back(get_rat(j[i], path + "/" + std::to_string(i)));
  return out;
}

QMat parse_qmat(const Json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) fail(path, "expected a nonempty matrix");
  std::vector<std::vector<Rat>> rows;
  for (std::size_t i = 0; i < j.size(); ++i) {
    rows.push_back(parse_rat_list(j[i], path + "/" + std::to_string(i)));
    if (rows.back().size() != rows.front().size())
      fail(path + "/" + std::to_string(i), "ragged matrix row");
  }
  return QMat::from_rows(rows);
}

dualgraph::DualGraph parse_dual_graph(const Json& j) {
  dualgraph::DualGraph g;
  g.field_size = get_int(member(j, "field_size", ""), "/field_size");

  const Json& comps = member(j, "components", "");
  if (!comps.is_array()) fail("/components", "expected an array");
  std::set<long> comp_ids;
  for (std::size_t i = 0; i < comps.size(); ++i) {
    std::string path = "/components/" + std::to_string(i);
    dualgraph::Component c;
    c.id = get_long(member(comps[i], "id", path), path + "/id");
    c.genus = get_long(member(comps[i], "genus", path), path + "/genus");
    if (comps[i].contains("h1_charpoly"))
      c.h1_charpoly =
          parse_rat_list(comps[i]["h1_charpoly"], path + "/h1_charpoly");
    comp_ids.insert(c.id);
    g.components.push_back(std::move(c));
  }

  const Json& nodes = member(j, "nodes", "");
  if (!nodes.is_array()) fail("/nodes", "expected an array");
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    std::string path = "/nodes/" + std::to_string(i);
    dualgraph::Node n;
    n.id = get_long(member(nodes[i], "id", path), path + "/id");
    n.tail = get_long(member(nodes[i], "tail", path), path + "/tail");
    n.head = get_long(member(nodes[i], "head", path), path + "/head");
    if (!comp_ids.count(n.tail))
      fail(path + "/tail",
           "unknown component id " + std::to_string(n.tail));
    if (!comp_ids.count(n.head))
      fail(path + "/head",
           "unknown component id " + std::to_string(n.head));
    g.nodes.push_back(n);
  }

  if (j.contains("allow_self_loops"))
    g.allow_self_loops = get_bool(j["allow_self_loops"], "/allow_self_loops");

  if (j.contains("frobenius")) {
    const Json& f = j["frobenius"];
    if (!f.is_object()) fail("/frobenius", "expected an object");
    if (f.contains("components")) {
      const Json& fc = f["components"];
      if (!fc.is_array()) fail("/frobenius/components", "expected an array");
      for (std::size_t i = 0; i < fc.size(); ++i)
        g.frobenius_components.push_back(
            get_long(fc[i], "/frobenius/components/" + std::to_string(i)));
    }
    if (f.contains("nodes")) {
      const Json& fn = f["nodes"];
      if (!fn.is_array()) fail("/frobenius/nodes", "expected an array");
      for (std::size_t i = 0; i < fn.size(); ++i) {
        std::string path = "/frobenius/nodes/" + std::to_string(i);
        dualgraph::NodeImage im;
        im.image = get_long(member(fn[i], "image", path), path + "/image");
        if (fn[i].contains("flip"))
          im.flip = get_bool(fn[i]["flip"], path + "/flip");
        g.frobenius_nodes.push_back(im);
      }
    }
  }

  return dualgraph::make_dual_graph(std::move(g));
}

monodromy::GaloisSpace parse_galois_space(const Json& j) {
  long dim = get_long(member(j, "dim", ""), "/dim");
  QMat f = parse_qmat(member(j, "frobenius", ""), "/frobenius");
  QMat n = parse_qmat(member(j, "nilpotent", ""), "/nilpotent");
  if (f.rows() != dim || f.cols() != dim)
    fail("/frobenius", "matrix shape disagrees with dim");
  if (n.rows() != dim || n.cols() != dim)
    fail("/nilpotent", "matrix shape disagrees with dim");
  long m = get_long(member(j, "central_weight", ""), "/central_weight");
  Int k = get_int(member(j, "field_size", ""), "/field_size");
  return monodromy::make_galois_space(f, n, m, k);
}

Json qmat_json(const QMat& m) {
  Json rows = Json::array();
  for (long i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (long j = 0; j < m.cols(); ++j) row.push_back(rat_str(m.at(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json zmat_json(const ZMat& m) {
  Json rows = Json::array();
  for (long i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (long j = 0; j < m.cols(); ++j) row.push_back(int_str(m.at(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json qpoly_json(const QPoly& p) {
  Json out = Json::array();
  for (const Rat& c : p.c) out.push_back(rat_str(c));
  return out;
}

Json rat_list_json(const std::vector<Rat>& v) {
  Json out = Json::array();
  for (const Rat& c : v) out.push_back(rat_str(c));
  return out;
}

std::string flt_str(const Flt& x) {
  mp_exp_t exp = 0;
  std::string digits = x.get_str(exp, 10, 30);
  bool neg = !digits.empty() && digits[0] == '-';
  std::string mant = neg ? digits.substr(1) : digits;
  if (mant.empty()) return "0";
  std::ostringstream os;
  if (neg) os << '-';
  os << "0." << mant << "e" << exp;
  return os.str();
}

std::string input_digest(const Json& j) {
  std::string dump = j.dump();
  unsigned long long h = 1469598103934665603ull;
  for (unsigned char c : dump) {
    h ^= c;
    h *= 1099511628211ull;
  }
  std::ostringstream os;
  os << "fnv1a:" << std::hex;
  os.width(16);
  os.fill('0');
  os << h;
  return os.str();
}

Json load_json_text(const std::string& text) {
  Json j = Json::parse(text, nullptr, false);
  if (j.is_discarded()) throw input_error("malformed JSON document");
  return j;
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw input_error("cannot open input file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return load_json_text(buf.str());
}

}  // namespace logcurve::jsonio
