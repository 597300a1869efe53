#pragma once

namespace regimekit {

inline constexpr const char* kVersion = "0.1.0";

} // namespace regimekit
