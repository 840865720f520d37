#pragma once

namespace fracsurf {

inline constexpr const char* toolkit_version = "0.1.0";

} // namespace fracsurf
