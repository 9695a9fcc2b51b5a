#pragma once

namespace mpa {

inline constexpr const char* kVersion = "1.0.0";

}
