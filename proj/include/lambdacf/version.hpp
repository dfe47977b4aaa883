#pragma once

namespace lambdacf {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace lambdacf
