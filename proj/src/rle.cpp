#include "gpz/rle.hpp"

#include <functional>

#include "gpz/errors.hpp"

namespace gpz::rle {

void validate(const RunSequence& runs)
{
    if (runs.values.size() != runs.lengths.size())
        throw CorruptError("rle: values and lengths differ in size");
    std::uint64_t total = 0;
    for (std::size_t j = 0; j < runs.lengths.size(); ++j) {
        if (runs.lengths[j] == 0)
            throw CorruptError("rle: zero run length");
        if (j > 0 && runs.values[j] == runs.values[j - 1])
            throw CorruptError("rle: adjacent runs share a value");
        total += runs.lengths[j];
    }
    if (total != runs.source_length)
        throw CorruptError("rle: run lengths do not sum to the source length");
}

EncodeTrace encode_with_trace(std::span<const std::uint8_t> block,
                              parprim::CostMeter* scan_meter)
{
    EncodeTrace trace;
    const std::size_t n = block.size();
    trace.boundary_flags = parprim::map_adjacent_neq(block, scan_meter);
    trace.output_positions = parprim::scan_exclusive<std::uint32_t>(
        trace.boundary_flags, std::plus<>{}, 0u, scan_meter);

    const std::size_t run_count =
        n == 0 ? 0 : trace.output_positions[n - 1] + trace.boundary_flags[n - 1];

    // Only boundary lanes carry data into the compacting scatter.
    std::vector<std::uint8_t> boundary_values;
    std::vector<std::uint32_t> boundary_ends;
    std::vector<std::uint32_t> boundary_positions;
    boundary_values.reserve(run_count);
    boundary_ends.reserve(run_count);
    boundary_positions.reserve(run_count);
    for (std::size_t i = 0; i < n; ++i) {
        if (trace.boundary_flags[i]) {
            boundary_values.push_back(block[i]);
            boundary_ends.push_back(static_cast<std::uint32_t>(i + 1));
            boundary_positions.push_back(trace.output_positions[i]);
        }
    }
    trace.runs.values =
        parprim::scatter<std::uint8_t>(boundary_values, boundary_positions, run_count);
    trace.end_indices =
        parprim::scatter<std::uint32_t>(boundary_ends, boundary_positions, run_count);

    trace.runs.lengths.resize(run_count);
    for (std::size_t j = 0; j < run_count; ++j)
        trace.runs.lengths[j] =
            trace.end_indices[j] - (j == 0 ? 0 : trace.end_indices[j - 1]);
    trace.runs.source_length = static_cast<std::uint32_t>(n);
    return trace;
}

RunSequence encode(std::span<const std::uint8_t> block, parprim::CostMeter* scan_meter)
{
    return encode_with_trace(block, scan_meter).runs;
}

DecodeTrace decode_with_trace(const RunSequence& runs, parprim::CostMeter* scan_meter)
{
    validate(runs);
    DecodeTrace trace;
    trace.boundary_positions = parprim::scan_inclusive<std::uint32_t>(
        runs.lengths, std::plus<>{}, 0u, scan_meter);

    std::vector<std::uint32_t> ones(runs.lengths.size(), 1u);
    std::vector<std::uint32_t> flag_slots(runs.lengths.size());
    for (std::size_t j = 0; j < flag_slots.size(); ++j)
        flag_slots[j] = trace.boundary_positions[j] - 1;
    trace.boundary_flags =
        parprim::scatter<std::uint32_t>(ones, flag_slots, runs.source_length);

    trace.scatter_positions = parprim::scan_exclusive<std::uint32_t>(
        trace.boundary_flags, std::plus<>{}, 0u, scan_meter);
    trace.output =
        parprim::gather<std::uint8_t>(runs.values, trace.scatter_positions);
    return trace;
}

std::vector<std::uint8_t> decode(const RunSequence& runs, parprim::CostMeter* scan_meter)
{
    return decode_with_trace(runs, scan_meter).output;
}

}  // namespace gpz::rle
