#pragma once

namespace ldag {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace ldag
