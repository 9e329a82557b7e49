#pragma once

namespace radialnet {
inline constexpr const char* kVersion = "0.4.0";
}
