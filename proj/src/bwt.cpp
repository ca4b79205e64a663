#include "gpz/bwt.hpp"

#include <functional>
#include <numeric>

#include "gpz/errors.hpp"

namespace gpz::bwt {

namespace {

// Successor vector: next[j] is the row holding the rotation that starts one
// position later in the text. Built from the standard LF mapping
// next[C[L[j]] + occ(L[j], j)] = j, with C produced by an exclusive scan of
// the symbol counts.
std::vector<std::uint32_t> successor_vector(const BwtBlock& block,
                                            parprim::CostMeter* scan_meter)
{
    const auto& payload = block.payload;
    const std::size_t n = payload.size();
    if (n == 0 || block.primary_index >= n)
        throw CorruptError("bwt: primary index out of range");

    std::vector<std::uint32_t> counts(256, 0);
    for (const std::uint8_t c : payload)
        ++counts[c];
    std::vector<std::uint32_t> cursor = parprim::scan_exclusive<std::uint32_t>(
        counts, std::plus<>{}, 0u, scan_meter);

    std::vector<std::uint32_t> next(n);
    for (std::uint32_t i = 0; i < n; ++i)
        next[cursor[payload[i]]++] = i;
    return next;
}

}  // namespace

BwtBlock forward(std::span<const std::uint8_t> block, parprim::CostMeter* sort_meter)
{
    const std::size_t n = block.size();
    if (n == 0)
        throw ContractError("bwt: empty block");
    if (n > 0xFFFFFFFFull)
        throw ContractError("bwt: block exceeds 32-bit indexing");

    // Bootstrap: order rotations by their first symbol with a counting
    // scatter; within a symbol the start indices stay ascending.
    std::vector<std::uint32_t> counts(256, 0);
    for (const std::uint8_t c : block)
        ++counts[c];
    std::vector<std::uint32_t> cursor =
        parprim::scan_exclusive<std::uint32_t>(counts, std::plus<>{}, 0u);
    std::vector<std::uint32_t> positions(n);
    for (std::size_t i = 0; i < n; ++i)
        positions[i] = cursor[block[i]]++;
    std::vector<std::uint32_t> start_index(n);
    std::iota(start_index.begin(), start_index.end(), 0u);
    std::vector<std::uint32_t> order =
        parprim::scatter<std::uint32_t>(start_index, positions, n);

    std::vector<std::uint32_t> rank(n);
    std::uint32_t r = 0;
    rank[order[0]] = 0;
    for (std::size_t i = 1; i < n; ++i) {
        if (block[order[i]] != block[order[i - 1]])
            ++r;
        rank[order[i]] = r;
    }
    std::size_t classes = std::size_t(r) + 1;

    // Circular prefix doubling: rank covers h symbols at the top of each
    // round. Only buckets of still-equal rotations are re-sorted; every
    // bucket is in ascending start order, and the stable sort keeps equal
    // keys that way, which fixes the tie order of periodic blocks.
    std::vector<std::uint32_t> next_rank(n);
    std::vector<std::uint32_t> bucket_keys;
    std::vector<std::uint32_t> bucket_idx;
    for (std::size_t h = 1; classes < n && h < n;) {
        const auto ahead = [&](std::uint32_t i) {
            const std::size_t j = i + h;
            return j < n ? j : j - n;
        };

        std::size_t b0 = 0;
        while (b0 < n) {
            std::size_t b1 = b0 + 1;
            while (b1 < n && rank[order[b1]] == rank[order[b0]])
                ++b1;
            if (b1 - b0 >= 2) {
                bucket_keys.resize(b1 - b0);
                bucket_idx.assign(order.begin() + b0, order.begin() + b1);
                for (std::size_t j = 0; j < bucket_idx.size(); ++j)
                    bucket_keys[j] = rank[ahead(bucket_idx[j])];
                auto [sorted_keys, sorted_idx] =
                    parprim::sort_pairs<std::uint32_t, std::uint32_t>(
                        bucket_keys, bucket_idx, std::less<>{}, sort_meter);
                std::copy(sorted_idx.begin(), sorted_idx.end(), order.begin() + b0);
            }
            b0 = b1;
        }

        std::uint32_t nr = 0;
        next_rank[order[0]] = 0;
        for (std::size_t i = 1; i < n; ++i) {
            const std::uint32_t cur = order[i];
            const std::uint32_t prev = order[i - 1];
            if (rank[cur] != rank[prev] || rank[ahead(cur)] != rank[ahead(prev)])
                ++nr;
            next_rank[cur] = nr;
        }
        std::swap(rank, next_rank);
        const std::size_t new_classes = std::size_t(nr) + 1;
        // A partition that doubling failed to refine never refines again:
        // the surviving ties are genuinely equal rotations.
        if (new_classes == classes)
            break;
        classes = new_classes;
        h *= 2;
    }

    BwtBlock out;
    out.payload.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t start = order[i];
        out.payload[i] = block[start == 0 ? n - 1 : start - 1];
        if (start == 0)
            out.primary_index = static_cast<std::uint32_t>(i);
    }
    return out;
}

std::vector<std::uint8_t> inverse_serial(const BwtBlock& block,
                                         parprim::CostMeter* scan_meter)
{
    const std::vector<std::uint32_t> next = successor_vector(block, scan_meter);
    const std::size_t n = block.payload.size();
    std::vector<std::uint8_t> out(n);
    std::uint32_t row = next[block.primary_index];
    for (std::size_t t = 0; t < n; ++t) {
        out[t] = block.payload[row];
        row = next[row];
    }
    return out;
}

std::vector<std::uint8_t> inverse_multistart(const BwtBlock& block, std::uint32_t walkers,
                                             parprim::CostMeter* scan_meter,
                                             MultistartTrace* trace)
{
    const std::vector<std::uint32_t> next = successor_vector(block, scan_meter);
    const std::size_t n = block.payload.size();
    if (walkers == 0 || walkers > n)
        throw ContractError("bwt: walker count out of range");

    // Candidate starts at even spacing in index space, deduplicated, plus the
    // anchor row the text walk begins from.
    std::vector<char> is_start(n, 0);
    std::vector<std::uint32_t> starts;
    starts.reserve(std::size_t(walkers) + 1);
    for (std::uint32_t i = 0; i < walkers; ++i) {
        const auto s = static_cast<std::uint32_t>(std::uint64_t(i) * n / walkers);
        if (!is_start[s]) {
            is_start[s] = 1;
            starts.push_back(s);
        }
    }
    const std::uint32_t anchor = next[block.primary_index];
    if (!is_start[anchor]) {
        is_start[anchor] = 1;
        starts.push_back(anchor);
    }

    // Every walker copies symbols until it reaches another walker's start.
    struct Segment {
        std::vector<std::uint8_t> text;
        std::uint32_t reached = 0;
    };
    std::vector<Segment> segments(starts.size());
    std::vector<std::uint32_t> slot_of_row(n, 0);
    for (std::size_t s = 0; s < starts.size(); ++s)
        slot_of_row[starts[s]] = static_cast<std::uint32_t>(s);
    for (std::size_t s = 0; s < starts.size(); ++s) {
        std::uint32_t row = starts[s];
        do {
            segments[s].text.push_back(block.payload[row]);
            row = next[row];
        } while (!is_start[row]);
        segments[s].reached = row;
    }

    // Chain segments along the anchor's cycle; the exclusive scan of their
    // lengths gives each segment's output offset. Starts that landed on a
    // different cycle of the permutation never enter the chain.
    std::vector<std::uint32_t> chain;
    std::vector<std::uint32_t> lengths;
    const std::uint32_t anchor_slot = slot_of_row[anchor];
    std::uint32_t slot = anchor_slot;
    do {
        chain.push_back(slot);
        lengths.push_back(static_cast<std::uint32_t>(segments[slot].text.size()));
        slot = slot_of_row[segments[slot].reached];
    } while (slot != anchor_slot);

    const std::vector<std::uint32_t> offsets =
        parprim::scan_exclusive<std::uint32_t>(lengths, std::plus<>{}, 0u, scan_meter);
    const std::uint64_t cycle_length =
        std::uint64_t(offsets.back()) + lengths.back();

    std::vector<std::uint8_t> out(n);
    for (std::size_t t = 0; t < chain.size(); ++t) {
        const auto& text = segments[chain[t]].text;
        std::copy(text.begin(), text.end(), out.begin() + offsets[t]);
    }
    // A cycle shorter than the block means the block is periodic with the
    // cycle length as a period.
    for (std::size_t t = cycle_length; t < n; ++t)
        out[t] = out[t - cycle_length];

    if (trace) {
        trace->segment_lengths = std::move(lengths);
        trace->cycle_length = cycle_length;
        trace->walker_count = static_cast<std::uint32_t>(starts.size());
    }
    return out;
}

}  // namespace gpz::bwt
