#pragma once

namespace psilab {

inline constexpr const char* kVersion = "0.1.0";

}
