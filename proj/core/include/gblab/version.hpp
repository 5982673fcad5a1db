#pragma once

namespace gblab {

inline constexpr const char* kVersion = "0.1.0";

}
