#pragma once

namespace peernet {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace peernet
