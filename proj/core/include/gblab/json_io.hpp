#pragma once

#include "json.hpp"

#include "gblab/systems.hpp"

namespace gblab {

nlohmann::json spec_to_json(const CipherSpec& spec);
// throws ParseError naming the failing field
CipherSpec spec_from_json(const nlohmann::json& j);

nlohmann::json system_to_json(const PolySystem& sys);
PolySystem system_from_json(const nlohmann::json& j);

}
