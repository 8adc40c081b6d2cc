#pragma once

namespace qkonc {

inline constexpr const char* kVersion = "0.1.0";

} // namespace qkonc
