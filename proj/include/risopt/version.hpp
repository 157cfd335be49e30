#pragma once

namespace risopt {

inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace risopt
