#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "tstein/matrix.hpp"

namespace tstein::cli {

using Json = nlohmann::ordered_json;

/// Report schema version, emitted as the top-level "schema" field.
inline constexpr int kSchemaVersion = 1;

/// Serializes with every floating-point number written as %.17g; NaN and Inf become null.
std::string dump_json(const Json& j, int indent = 2);

Json complex_json(Complex z);
Json complex_list_json(const std::vector<Complex>& values);
/// {"rows": m, "cols": n, "data": [[re, im], ...]} in column-major order.
Json matrix_json(const ComplexMatrix& m);

} // namespace tstein::cli
