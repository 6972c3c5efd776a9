#pragma once

namespace resetldp {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace resetldp
