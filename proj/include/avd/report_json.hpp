#pragma once

#include <json.hpp>

#include "avd/certify.hpp"
#include "avd/diagram.hpp"
#include "avd/variation.hpp"
#include "avd/verify.hpp"

namespace avd {

using Json = nlohmann::ordered_json;

/// {kind, sigma1, sigma1_provenance, cover, cover_resolution, packing,
///  ratio, condition_value, verdict, reason}; condition_value is null when
/// the verdict is Inapplicable.
Json to_json(const Certificate& c);
Json to_json(const OrphanReport& r);
Json to_json(const NeighborBoundReport& r);
Json to_json(const VariationReport& r);
Json to_json(const VerifyReport& r);

}  // namespace avd
