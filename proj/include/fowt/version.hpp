#pragma once

namespace fowt {

inline constexpr const char* kToolName = "fowtctl";
inline constexpr const char* kVersion = "1.0.0";

}  // namespace fowt
