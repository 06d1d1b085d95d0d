#pragma once

namespace spinchain {

inline constexpr const char* version = "1.0.0";

} // namespace spinchain
