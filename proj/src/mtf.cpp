#include "gpz/mtf.hpp"

#include <cstring>
#include <numeric>

#include "gpz/errors.hpp"

namespace gpz::mtf {

MtfStack MtfStack::identity()
{
    MtfStack s;
    std::iota(s.order.begin(), s.order.end(), 0);
    return s;
}

bool MtfStack::is_permutation() const
{
    bool seen[256] = {};
    for (const std::uint8_t c : order) {
        if (seen[c])
            return false;
        seen[c] = true;
    }
    return true;
}

std::vector<std::uint8_t> encode(std::span<const std::uint8_t> block)
{
    std::array<std::uint8_t, 256> order{};
    std::iota(order.begin(), order.end(), 0);
    std::vector<std::uint8_t> out(block.size());
    for (std::size_t i = 0; i < block.size(); ++i) {
        const std::uint8_t sym = block[i];
        std::size_t pos = 0;
        while (order[pos] != sym)
            ++pos;
        out[i] = static_cast<std::uint8_t>(pos);
        std::memmove(order.data() + 1, order.data(), pos);
        order[0] = sym;
    }
    return out;
}

std::vector<std::uint8_t> decode(std::span<const std::uint8_t> indices)
{
    std::array<std::uint8_t, 256> order{};
    std::iota(order.begin(), order.end(), 0);
    std::vector<std::uint8_t> out(indices.size());
    for (std::size_t i = 0; i < indices.size(); ++i) {
        const std::uint8_t pos = indices[i];
        const std::uint8_t sym = order[pos];
        out[i] = sym;
        std::memmove(order.data() + 1, order.data(), pos);
        order[0] = sym;
    }
    return out;
}

LookupResult lookup_parallel(const MtfStack& stack, std::uint8_t symbol,
                             parprim::CostMeter* meter)
{
    LookupResult result;
    for (std::size_t lane = 0; lane < 256; ++lane) {
        if (stack.order[lane] == symbol) {
            result.index = static_cast<std::uint8_t>(lane);
            ++result.matching_lanes;
        }
    }
    // one compare step across all lanes, one reduction of the single write
    if (meter)
        meter->record(256, 2, 256);
    if (result.matching_lanes != 1)
        throw CorruptError("mtf: stack lost its uniqueness invariant");
    return result;
}

MtfStack update_parallel(const MtfStack& stack, std::uint8_t found_index)
{
    MtfStack out;
    out.order[0] = stack.order[found_index];
    for (std::size_t i = 1; i <= found_index; ++i)
        out.order[i] = stack.order[i - 1];
    for (std::size_t i = std::size_t(found_index) + 1; i < 256; ++i)
        out.order[i] = stack.order[i];
    return out;
}

}  // namespace gpz::mtf
