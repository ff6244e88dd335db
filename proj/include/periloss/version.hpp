#pragma once

namespace periloss {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace periloss
