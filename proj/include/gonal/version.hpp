#pragma once

namespace gonal {

inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace gonal
