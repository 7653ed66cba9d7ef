#pragma once

namespace pinvspec {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace pinvspec
