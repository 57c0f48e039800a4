#pragma once

#include "qps/box_spline.hpp"
#include "qps/oracle.hpp"

#include <json.hpp>

#include <string>

namespace qps {

using Json = nlohmann::json;

// Every *_from_json throws SchemaError on malformed input. Integers may be
// JSON numbers or decimal strings (for values beyond 64 bits); rationals
// are "p/q" strings.

Json integer_to_json(const Integer& v);
Integer integer_from_json(const Json& j);

Json poly_to_json(const MultiPoly& p);
MultiPoly poly_from_json(const Json& j, std::size_t nvars);

/// {dim, period, table}; the table lists every class modulo the single
/// period that carries a nonzero polynomial.
Json qp_to_json(const QuasiPolynomial& q);
QuasiPolynomial qp_from_json(const Json& j);

Json arrangement_to_json(const Arrangement& a);
Arrangement arrangement_from_json(const Json& j);

Json box_spline_to_json(const BoxSpline& f);
BoxSpline box_spline_from_json(const Json& j);

Json dio_to_json(const DioSystem& s);
DioSystem dio_from_json(const Json& j);

Json semisimple_to_json(const SemiSimpleSet& x);
SemiSimpleSet semisimple_from_json(const Json& j);

Json dm_to_json(const DMInstance& d);
DMInstance dm_from_json(const Json& j);

/// {kind, payload}.
Json problem_to_json(const Problem& p);
Problem problem_from_json(const Json& j);

Json report_to_json(const DiffReport& r);

/// Canonical text: sorted keys, two-space indent, trailing newline.
std::string dump(const Json& j);
/// Parses text; SchemaError on syntax errors.
Json parse_json(const std::string& text);

}  // namespace qps
