#pragma once

namespace lwnb {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace lwnb
