#pragma once

namespace loggen {

inline constexpr const char* kToolkitVersion = "0.1.0";

} // namespace loggen
