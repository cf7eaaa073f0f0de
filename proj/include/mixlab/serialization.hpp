#pragma once

#include "mixlab/order_measure.hpp"
#include "mixlab/spherical_measure.hpp"

#include <json.hpp>

#include <cstdint>
#include <string>

namespace mixlab {

using Json = nlohmann::json;

// {"variant":"uniform","dimension":N}
// {"variant":"atomic","dimension":2,"angles":[...],"weights":[...]}
// {"variant":"atomic","dimension":1,"signs":[+1,-1],"weights":[...]}
// {"variant":"mixture","parts":[{"coefficient":c,"measure":{...}},...]}
Json to_json(const SphericalMeasure& sigma);
SphericalMeasure measure_from_json(const Json& j);

// {"breakpoints":[...],"pieces":[...],"tail":{...}}; a missing tail is the
// uniform measure of the pieces' dimension (or "dimension", default 1).
Json to_json(const MeasureFamily& family);
MeasureFamily family_from_json(const Json& j);

// {"pos_atoms":[[s,w],...],"neg_atoms":[...],"pos_density":[[a,b,v],...],"neg_density":[...]}
Json to_json(const OrderMeasure& mu);
OrderMeasure order_measure_from_json(const Json& j);

// Accepts inline JSON, a path to a JSON file, "delta:s", "delta:s:w", or a
// comma list of weighted atoms "w@s" (negative w goes to mu-).
OrderMeasure parse_order_measure(const std::string& text);
// Inline JSON, a JSON file, "uniform:N", or "angle:phi" (N = 2 atom).
SphericalMeasure parse_spherical_measure(const std::string& text);
// Inline JSON or file; anything accepted by parse_spherical_measure gives a
// constant family.
MeasureFamily parse_family(const std::string& text);

// FNV-1a over the compact dump; stable across runs and platforms.
std::uint64_t config_hash(const Json& config);
std::string hex(std::uint64_t v);

}  // namespace mixlab
