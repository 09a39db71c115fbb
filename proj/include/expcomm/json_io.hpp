#pragma once

#include <json.hpp>

#include "expcomm/generators.hpp"
#include "expcomm/matrix.hpp"
#include "expcomm/theorems.hpp"
#include "expcomm/tolerance.hpp"

namespace expcomm {

using Json = nlohmann::json;

// Matrix interchange format: {"dim": n, "re": [[...]], "im": [[...]]},
// row-major. Doubles are written in shortest round-trip form.
void to_json(Json& j, const ComplexMatrix& m);
void from_json(const Json& j, ComplexMatrix& m);

void to_json(Json& j, const ToleranceConfig& tol);
/// Missing keys keep their defaults; the result is validated.
void from_json(const Json& j, ToleranceConfig& tol);

void to_json(Json& j, const Interval& w);
void from_json(const Json& j, Interval& w);
void to_json(Json& j, const Arc& a);
void from_json(const Json& j, Arc& a);
void to_json(Json& j, const GenSpec& spec);
void from_json(const Json& j, GenSpec& spec);

void to_json(Json& j, const ImplicationResult& r);
void to_json(Json& j, const CounterexampleRecord& r);

}  // namespace expcomm
