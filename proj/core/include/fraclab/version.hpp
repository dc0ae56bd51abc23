#pragma once

namespace fraclab {
inline constexpr const char* kVersion = "0.1.0";
}
