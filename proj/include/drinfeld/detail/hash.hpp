#pragma once

#include <cstdint>
#include <string_view>

namespace drinfeld::detail {

// FNV-1a, 64-bit. Stable across platforms, unlike std::hash.
constexpr std::uint64_t fnv1a(std::string_view bytes, std::uint64_t h = 0xcbf29ce484222325ULL) noexcept {
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

} // namespace drinfeld::detail
