#pragma once

namespace empsup {

inline constexpr const char* library_version = "1.0.0";

}  // namespace empsup
