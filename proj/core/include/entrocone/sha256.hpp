#pragma once

#include <cstdint>
#include <string>

namespace entrocone {

// Hex digest of the SHA-256 of a byte string (cache keys, run manifests).
std::string sha256_hex(const std::string& data);

}  // namespace entrocone
