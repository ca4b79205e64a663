#pragma once

// Run-length codec built from the primitive layer, four parallel steps in
// each direction. Encode: run boundary search, output positions by exclusive
// scan, compacting scatter of values and one-based end indices, run lengths
// from adjacent end-index differences. Decode: boundary positions by
// inclusive scan, boundary flags by scatter, source indices by exclusive
// scan, output by gather.

#include <cstdint>
#include <span>
#include <vector>

#include "gpz/parprim.hpp"

namespace gpz::rle {

struct RunSequence {
    std::vector<std::uint8_t> values;   // one symbol per run, adjacent values differ
    std::vector<std::uint32_t> lengths; // every length >= 1
    std::uint32_t source_length = 0;    // sum of lengths
};

// Throws CorruptError if any RunSequence invariant fails.
void validate(const RunSequence& runs);

struct EncodeTrace {
    std::vector<std::uint32_t> boundary_flags;
    std::vector<std::uint32_t> output_positions;
    std::vector<std::uint32_t> end_indices;  // one-based end of each run
    RunSequence runs;
};

struct DecodeTrace {
    std::vector<std::uint32_t> boundary_positions;
    std::vector<std::uint32_t> boundary_flags;
    std::vector<std::uint32_t> scatter_positions;
    std::vector<std::uint8_t> output;
};

EncodeTrace encode_with_trace(std::span<const std::uint8_t> block,
                              parprim::CostMeter* scan_meter = nullptr);
RunSequence encode(std::span<const std::uint8_t> block,
                   parprim::CostMeter* scan_meter = nullptr);

DecodeTrace decode_with_trace(const RunSequence& runs,
                              parprim::CostMeter* scan_meter = nullptr);
std::vector<std::uint8_t> decode(const RunSequence& runs,
                                 parprim::CostMeter* scan_meter = nullptr);

}  // namespace gpz::rle
