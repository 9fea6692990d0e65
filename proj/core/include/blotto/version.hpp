#pragma once

namespace blotto {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace blotto
