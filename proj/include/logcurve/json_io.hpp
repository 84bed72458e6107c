#ifndef LOGCURVE_JSON_IO_HPP
#define LOGCURVE_JSON_IO_HPP

#include <json.hpp>

#include <string>
#include <vector>

#include "logcurve/dualgraph.hpp"
#include "logcurve/matrix.hpp"
#include "logcurve/monodromy.hpp"
#include "logcurve/polynomial.hpp"
#include "logcurve/rational.hpp"

namespace logcurve::jsonio {

// Key order is preserved so identical inputs dump to identical bytes.
using Json = nlohmann::ordered_json;

// Schema accessors.  Every failure names the JSON path of the offending
// value, e.g. "/nodes/2/tail: expected an integer".
const Json& member(const Json& j, const std::string& key,
                   const std::string& path);
long get_long(const Json& j, const std::string& path);
Int get_int(const Json& j, const std::string& path);
Rat get_rat(const Json& j, const std::string& path);
bool get_bool(const Json& j, const std::string& path);
std::string get_string(const Json& j, const std::string& path);

// {field_size, components[{id,genus,h1_charpoly?}], nodes[{id,tail,head}],
//  frobenius{components,nodes{image,flip}}?, allow_self_loops?}; node
// endpoints are checked against the component ids during the walk so the
// diagnostic carries the path.
dualgraph::DualGraph parse_dual_graph(const Json& j);

// {dim, frobenius, nilpotent, central_weight, field_size}.
monodromy::GaloisSpace parse_galois_space(const Json& j);

QMat parse_qmat(const Json& j, const std::string& path);
std::vector<Rat> parse_rat_list(const Json& j, const std::string& path);

Json qmat_json(const QMat& m);  // row-major, exact rational strings
Json zmat_json(const ZMat& m);
Json qpoly_json(const QPoly& p);  // constant term first
Json rat_list_json(const std::vector<Rat>& v);

// Approximate decimal rendering for numeric-diagnostic fields only.
std::string flt_str(const Flt& x);

// 64-bit FNV-1a over the compact dump, rendered as "fnv1a:%016x".
std::string input_digest(const Json& j);

Json load_json_text(const std::string& text);   // parse errors -> input_error
Json load_json_file(const std::string& path);

}  // namespace logcurve::jsonio

#endif
