#pragma once

// Move-to-front codec over the full 256-symbol alphabet. The stack starts in
// identity order 0..255. lookup_parallel/update_parallel model the
// constant-depth parallel variant where one lane per stack slot compares its
// symbol against the input; exactly one lane ever matches.

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "gpz/parprim.hpp"

namespace gpz::mtf {

struct MtfStack {
    std::array<std::uint8_t, 256> order{};  // front = most recently used

    static MtfStack identity();
    bool is_permutation() const;
};

std::vector<std::uint8_t> encode(std::span<const std::uint8_t> block);
std::vector<std::uint8_t> decode(std::span<const std::uint8_t> indices);

struct LookupResult {
    std::uint8_t index = 0;
    std::uint32_t matching_lanes = 0;  // must be exactly 1
};

// All 256 lanes compare their slot against the symbol in one step; the
// single matching lane publishes its index (one more step for the
// reduction of that write).
LookupResult lookup_parallel(const MtfStack& stack, std::uint8_t symbol,
                             parprim::CostMeter* meter = nullptr);

// Lane 0 reads the found symbol, lanes 1..found_index read their left
// neighbor, lanes beyond copy through.
MtfStack update_parallel(const MtfStack& stack, std::uint8_t found_index);

}  // namespace gpz::mtf
