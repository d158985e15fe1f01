#pragma once
/*
 * JSON (de)serialization for configurations and reports.
 *
 * Conventions: complex numbers are [re, im] pairs; polynomials are ascending
 * coefficient lists; matrices are row-major nested arrays of complex pairs;
 * rational matrices are {"entries": [[{"num": poly, "den": poly}, ...]]};
 * factorial series are {"h", "coeffs", "cert": [C, lambda] | null};
 * difference systems are {"h", "orientation": "plus" | "minus",
 * "A": {"rational": ...} | {"factorial": ...}}.
 *
 * Every reader validates shape and domain and raises ValidationError with a
 * descriptive message; readers and writers are exact inverses on valid data.
 */
#include <json.hpp>

#include "conflux/diff_system.hpp"
#include "conflux/factorial_series.hpp"
#include "conflux/rational.hpp"
#include "conflux/types.hpp"

namespace conflux {

using Json = nlohmann::json;

Json complex_to_json(Complex z);
Complex complex_from_json(const Json& j);

Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j);

Json polynomial_to_json(const Polynomial& p);
Polynomial polynomial_from_json(const Json& j);

Json rational_to_json(const RationalMatrix& r);
RationalMatrix rational_from_json(const Json& j);

Json series_to_json(const FactorialSeries& f);
FactorialSeries series_from_json(const Json& j);

Json system_to_json(const DifferenceSystem& s);
DifferenceSystem system_from_json(const Json& j);

} // namespace conflux
