#pragma once

namespace dpsubmod {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace dpsubmod
