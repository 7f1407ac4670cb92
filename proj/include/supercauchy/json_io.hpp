#pragma once

#include "supercauchy/analyticity.hpp"
#include "supercauchy/quadrature.hpp"

#include <json.hpp>

#include <string>

namespace supercauchy {

using Json = nlohmann::json;

/// Algebra document:
/// {"name": str, "p_plus_1": int, "q": int, "gamma": [[[num|"n/d"]]],
///  "a1": {"s": [int], "a": [[num|"n/d"]]}?}
/// gamma indexed [i][j][k]; a1.a entries may be length p+1 (Lambda_0) or p+1+q.
AlgebraPtr algebra_from_json(const Json& doc);
AlgebraPtr algebra_from_file(const std::string& path);
Json algebra_to_json(const Algebra& a);

/// Polynomial exchange: list of {"exp": [int...], "coeff": [num|"n/d"...]},
/// or an object {"n": int, "m": int, "terms": [...]} fixing the shape.
PolyFunction poly_from_json(const Json& doc, const Shape& default_shape);
Json poly_to_json(const PolyFunction& f);

Json element_to_json(const Element& e);
Element element_from_json(const Json& j, int dim);

Json series_to_json(const SuperSeries& s);
Json report_to_json(const QuadReport& r);
Json validation_to_json(const ValidationReport& r);
Json a1_report_to_json(const A1Report& r);

}  // namespace supercauchy
