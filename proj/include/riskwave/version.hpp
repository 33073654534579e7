#pragma once

namespace riskwave {

inline constexpr const char* version = "0.1.0";

} // namespace riskwave
