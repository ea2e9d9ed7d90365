#pragma once

namespace toric {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace toric
