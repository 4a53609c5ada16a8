#pragma once

namespace peakspread {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace peakspread
