#pragma once

namespace ribbonzeta {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace ribbonzeta
