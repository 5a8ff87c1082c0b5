#pragma once

namespace fvp {

inline constexpr const char* version_string = "fvpricer 0.1.0";

}  // namespace fvp
