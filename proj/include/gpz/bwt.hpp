#pragma once

// Burrows-Wheeler transform over whole blocks, no sentinel symbol. The
// forward transform sorts all rotations of the block and keeps the last
// column plus the row of the unrotated block (the primary index). Rotations
// are ordered by their content read circularly, ties broken by start offset,
// which makes the output deterministic for periodic inputs.

#include <cstdint>
#include <span>
#include <vector>

#include "gpz/parprim.hpp"

namespace gpz::bwt {

struct BwtBlock {
    std::vector<std::uint8_t> payload;  // last column of the sorted rotation matrix
    std::uint32_t primary_index = 0;    // row of the unrotated block
};

// Rotation sort via circular prefix doubling: rotations are bucketed by
// their first symbol (counting scatter), then every round refines the
// still-tied buckets by the rank h places ahead through parprim::sort_pairs.
// Output is bit-identical to materializing and stably sorting all rotations.
BwtBlock forward(std::span<const std::uint8_t> block,
                 parprim::CostMeter* sort_meter = nullptr);

// LF-mapping walk: rebuilds the block in text order by following the
// successor permutation (symbol counting + exclusive scan).
std::vector<std::uint8_t> inverse_serial(const BwtBlock& block,
                                         parprim::CostMeter* scan_meter = nullptr);

// Optional per-invocation evidence from the multi-start inverse.
struct MultistartTrace {
    std::vector<std::uint32_t> segment_lengths;  // chained along the anchor cycle
    std::uint64_t cycle_length = 0;              // sum of the above
    std::uint32_t walker_count = 0;              // starts actually placed
};

// Multi-start inverse: several walkers start at distinct rows of the
// successor permutation (evenly spaced in index space, plus the anchor row
// reached from the primary index) and each copies symbols until it reaches
// another walker's start. Segment lengths are combined by exclusive scan to
// place every segment at its output offset. For periodic blocks the
// successor permutation decomposes into cycles shorter than the block; the
// anchor cycle is emitted once and extended periodically.
std::vector<std::uint8_t> inverse_multistart(const BwtBlock& block, std::uint32_t walkers,
                                             parprim::CostMeter* scan_meter = nullptr,
                                             MultistartTrace* trace = nullptr);

}  // namespace gpz::bwt
