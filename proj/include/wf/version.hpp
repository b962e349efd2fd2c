#pragma once

namespace wf {
inline constexpr const char* kVersion = "0.1.0";
}
