#pragma once

// JSON forms of complex numbers and generalized functions.  Complex values
// are always {"re": .., "im": ..}.

#include <json.hpp>

#include "ws/distr.hpp"

namespace ws {

using json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "ws-kernel/1";

json to_json(cplx z);
cplx complex_from_json(const json& j);

json to_json(const Coefficient& c);
Coefficient coefficient_from_json(const json& j);

json to_json(const SingularBasis& b);
SingularBasis basis_from_json(const json& j);

// Throws Error(InvalidArgument) if a coefficient carries an opaque factor.
json to_json(const GeneralizedFunction& d);
GeneralizedFunction generalized_function_from_json(const json& j);

}  // namespace ws
