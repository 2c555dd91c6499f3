#pragma once

namespace ecgen {

inline constexpr const char* kGeneratorVersion = "1.0.0";

}  // namespace ecgen
