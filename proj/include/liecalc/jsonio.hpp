#pragma once

#include <json.hpp>

#include "liecalc/cubic.hpp"
#include "liecalc/laws.hpp"

namespace liecalc {

using Json = nlohmann::json;

/// Rationals go out as canonical strings ("p" or "p/q") so the round-trip
/// is bit-exact; floats as numbers, prime-field residues as integers.
Json rv_to_json(const RingValue& v);
RingValue rv_from_json(const Json& j, const BackendTag& tag);

/// {"n":…, "t":[…], "carrier":[…], "coeffs":{"∅":…, "1":…, "12":…}}
Json cubic_to_json(const CubicScalar& a);
CubicScalar cubic_from_json(const Json& j, const BackendTag& tag);

/// {"law":…, "samples":…, "failures":…, "counterexample":…|null}
Json report_to_json(const LawReport& r);

}  // namespace liecalc
