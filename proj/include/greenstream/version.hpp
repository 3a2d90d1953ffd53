#pragma once

namespace greenstream {

inline constexpr const char* kVersion = "0.1.0";

} // namespace greenstream
