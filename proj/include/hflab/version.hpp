#pragma once

namespace hflab {
inline constexpr const char* kVersion = "0.1.0";
}
