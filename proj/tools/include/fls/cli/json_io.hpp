#pragma once

#include <string>

#include "json.hpp"

#include "fls/arrangement.hpp"
#include "fls/decomposition.hpp"
#include "fls/matroid.hpp"
#include "fls/numeric.hpp"
#include "fls/partition.hpp"
#include "fls/system.hpp"

namespace fls::cli {

using Json = nlohmann::json;

/// Member `key` of an object; Error{schema} if absent.
const Json& field(const Json& j, const char* key);

/// Integer or "p/q" string.
Rational parse_rational_json(const Json& j);
RationalMatrix parse_rational_matrix(const Json& j);

/// {"type":"linear","matrix":[[...]]} or {"type":"uniform","l":int,"n":int}
MatroidPtr parse_matroid(const Json& j);
Json matroid_json(const Matroid& m);

/// Sorted array of labels in 1..n.
Subset parse_subset(const Json& j, int n);
Json subset_json(Subset s);

System parse_system(const Json& j);
Json system_json(const System& t);
/// "[2,0,1]", used as an object key.
std::string system_key(const System& t);

/// Number, "p/q" string or [re, im].
Complex parse_complex(const Json& j);
Json complex_json(Complex c);
Point parse_point(const Json& j);
Json vector_json(const CVector& v);

/// {"B":[[...]], "a":[...], "x":[...]}
ArrangementData parse_arrangement(const Json& j);

PartitionProblem parse_partition_problem(const Json& j);

Json strong_decomposition_json(const StrongDecomposition& d);

/// Deterministic serialization: object keys sorted, floating-point numbers
/// printed with 17 significant digits.
std::string emit(const Json& j, int indent = 2);

}  // namespace fls::cli
