#pragma once

#include <array>
#include <cstdint>
#include <span>

namespace gpz {

namespace detail {

// Reflected CRC-32, polynomial 0xEDB88320 (the zlib/PNG parameterization).
constexpr std::array<std::uint32_t, 256> make_crc32_table()
{
    std::array<std::uint32_t, 256> table{};
    for (std::uint32_t i = 0; i < 256; ++i) {
        std::uint32_t c = i;
        for (int j = 0; j < 8; ++j)
            c = (c & 1u) ? (c >> 1) ^ 0xEDB88320u : (c >> 1);
        table[i] = c;
    }
    return table;
}

inline constexpr auto crc32_table = make_crc32_table();

}  // namespace detail

// Initial value all-ones, final XOR all-ones.
inline std::uint32_t crc32(std::span<const std::uint8_t> data, std::uint32_t seed = 0)
{
    std::uint32_t crc = ~seed;
    for (const std::uint8_t byte : data)
        crc = (crc >> 8) ^ detail::crc32_table[(crc ^ byte) & 0xFFu];
    return ~crc;
}

}  // namespace gpz
