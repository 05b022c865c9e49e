#pragma once

namespace dopwave {

inline constexpr const char* kVersion = "0.1.0";

} // namespace dopwave
