#pragma once

// Deterministic data-parallel primitives: scan, sort, scatter, gather and
// the adjacent-compare map. A "parallel" phase is specified purely as
// dependency structure: every lane of a phase reads only arrays produced by
// earlier phases, so results are independent of lane evaluation order even
// though this implementation runs the lanes sequentially.
//
// CostMeter counts combine/compare applications (work) and dependent phases
// (depth). Memory moves are not counted. For a scan of n >= 2 elements the
// recorded costs satisfy work <= 2n and depth <= 2*ceil(log2 n); a sort of
// n >= 2 pairs satisfies depth <= 2*ceil(log2 n)^2.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "gpz/errors.hpp"

namespace gpz::parprim {

inline std::uint64_t ceil_log2(std::uint64_t n)
{
    return n <= 1 ? 0 : static_cast<std::uint64_t>(std::bit_width(n - 1));
}

// Work/depth accounting. Totals accumulate across invocations; the max_*
// fields track the most expensive single invocation, which is what the
// per-invocation bounds are checked against.
struct CostMeter {
    std::uint64_t work = 0;
    std::uint64_t depth = 0;
    std::uint64_t invocations = 0;
    std::uint64_t max_invocation_work = 0;
    std::uint64_t max_invocation_depth = 0;
    std::uint64_t max_length = 0;

    void record(std::uint64_t w, std::uint64_t d, std::uint64_t n)
    {
        work += w;
        depth += d;
        ++invocations;
        max_invocation_work = std::max(max_invocation_work, w);
        max_invocation_depth = std::max(max_invocation_depth, d);
        max_length = std::max(max_length, n);
    }

    void reset() { *this = CostMeter{}; }
};

namespace detail {

// Work-efficient tree scan, one recursion level per tree level. The
// contraction of adjacent pairs is the upsweep; the expansion that fills in
// odd and even slots is the downsweep. A phase adds depth only when it
// performs at least one combine, which keeps work >= depth.
template <typename T, typename Op>
std::vector<T> scan_inclusive_rec(std::span<const T> a, Op& op,
                                  std::uint64_t& work, std::uint64_t& depth)
{
    const std::size_t n = a.size();
    std::vector<T> out(a.begin(), a.end());
    if (n <= 1)
        return out;

    std::vector<T> pairs(n / 2);
    for (std::size_t i = 0; i < pairs.size(); ++i)
        pairs[i] = op(a[2 * i], a[2 * i + 1]);
    work += pairs.size();
    depth += 1;

    const std::vector<T> sums =
        scan_inclusive_rec(std::span<const T>(pairs.data(), pairs.size()), op, work, depth);

    std::uint64_t combines = 0;
    for (std::size_t i = 1; i < n; ++i) {
        if (i % 2 == 1) {
            out[i] = sums[i / 2];
        } else {
            out[i] = op(sums[i / 2 - 1], a[i]);
            ++combines;
        }
    }
    if (combines > 0) {
        work += combines;
        depth += 1;
    }
    return out;
}

}  // namespace detail

// result[i] = op over values[0..=i]. op must be associative with the given
// identity; addition is the only op the pipeline uses.
template <typename T, typename Op>
std::vector<T> scan_inclusive(std::span<const T> values, Op op, T /*identity*/,
                              CostMeter* meter = nullptr)
{
    std::uint64_t work = 0;
    std::uint64_t depth = 0;
    std::vector<T> out = detail::scan_inclusive_rec(values, op, work, depth);
    if (meter)
        meter->record(work, depth, values.size());
    return out;
}

// result[0] = identity, result[i] = op(result[i-1], values[i-1]).
template <typename T, typename Op>
std::vector<T> scan_exclusive(std::span<const T> values, Op op, T identity,
                              CostMeter* meter = nullptr)
{
    std::uint64_t work = 0;
    std::uint64_t depth = 0;
    std::vector<T> out = detail::scan_inclusive_rec(values, op, work, depth);
    if (!out.empty()) {
        for (std::size_t i = out.size(); i-- > 1;)
            out[i] = out[i - 1];
        out[0] = identity;
    }
    if (meter)
        meter->record(work, depth, values.size());
    return out;
}

// Stable merge sort with parallel-shaped merge levels: every element of a
// run binary-searches its rank in the sibling run, so one level costs
// O(log run_width) sequential compares per lane. Equal keys keep input
// order (left-run elements count strictly-smaller right keys, right-run
// elements count less-or-equal left keys).
template <typename K, typename V, typename Compare = std::less<K>>
std::pair<std::vector<K>, std::vector<V>>
sort_pairs(std::span<const K> keys, std::span<const V> values, Compare comp = {},
           CostMeter* meter = nullptr)
{
    if (keys.size() != values.size())
        throw ContractError("sort_pairs: keys and values length mismatch");
    const std::size_t n = keys.size();
    std::vector<K> cur_k(keys.begin(), keys.end());
    std::vector<V> cur_v(values.begin(), values.end());
    std::vector<K> next_k(n);
    std::vector<V> next_v(n);
    std::uint64_t work = 0;
    std::uint64_t depth = 0;

    for (std::size_t width = 1; width < n; width *= 2) {
        std::uint64_t level_lane_max = 0;
        for (std::size_t lo = 0; lo < n; lo += 2 * width) {
            const std::size_t mid = std::min(lo + width, n);
            const std::size_t hi = std::min(lo + 2 * width, n);
            if (mid == hi) {  // lone trailing run, copy through
                std::copy(cur_k.begin() + lo, cur_k.begin() + hi, next_k.begin() + lo);
                std::copy(cur_v.begin() + lo, cur_v.begin() + hi, next_v.begin() + lo);
                continue;
            }
            for (std::size_t i = lo; i < mid; ++i) {
                std::uint64_t compares = 0;
                std::size_t s = mid;
                std::size_t e = hi;
                while (s < e) {
                    const std::size_t m = s + (e - s) / 2;
                    ++compares;
                    if (comp(cur_k[m], cur_k[i]))
                        s = m + 1;
                    else
                        e = m;
                }
                work += compares;
                level_lane_max = std::max(level_lane_max, compares);
                const std::size_t pos = i + (s - mid);
                next_k[pos] = cur_k[i];
                next_v[pos] = cur_v[i];
            }
            for (std::size_t j = mid; j < hi; ++j) {
                std::uint64_t compares = 0;
                std::size_t s = lo;
                std::size_t e = mid;
                while (s < e) {
                    const std::size_t m = s + (e - s) / 2;
                    ++compares;
                    if (comp(cur_k[j], cur_k[m]))
                        e = m;
                    else
                        s = m + 1;
                }
                work += compares;
                level_lane_max = std::max(level_lane_max, compares);
                const std::size_t pos = s + (j - mid);
                next_k[pos] = cur_k[j];
                next_v[pos] = cur_v[j];
            }
        }
        depth += level_lane_max;
        std::swap(cur_k, next_k);
        std::swap(cur_v, next_v);
    }

    if (meter)
        meter->record(work, depth, n);
    return {std::move(cur_k), std::move(cur_v)};
}

// result[positions[i]] = values[i]; unwritten slots hold zero. Positions
// must be in range and pairwise distinct, checked deterministically.
template <typename T>
std::vector<T> scatter(std::span<const T> values, std::span<const std::uint32_t> positions,
                       std::size_t out_length)
{
    if (values.size() != positions.size())
        throw ContractError("scatter: values and positions length mismatch");
    std::vector<T> out(out_length, T{});
    std::vector<char> written(out_length, 0);
    for (std::size_t i = 0; i < values.size(); ++i) {
        const std::uint32_t p = positions[i];
        if (p >= out_length)
            throw ContractError("scatter: position out of range");
        if (written[p])
            throw ContractError("scatter: duplicate position");
        written[p] = 1;
        out[p] = values[i];
    }
    return out;
}

// result[i] = source[indices[i]].
template <typename T>
std::vector<T> gather(std::span<const T> source, std::span<const std::uint32_t> indices)
{
    std::vector<T> out(indices.size());
    for (std::size_t i = 0; i < indices.size(); ++i) {
        if (indices[i] >= source.size())
            throw ContractError("gather: index out of range");
        out[i] = source[indices[i]];
    }
    return out;
}

// flag[i] = 1 iff i is the last index or values[i] != values[i+1]; each lane
// compares its element with its right neighbor in one parallel step.
inline std::vector<std::uint32_t> map_adjacent_neq(std::span<const std::uint8_t> values,
                                                   CostMeter* meter = nullptr)
{
    const std::size_t n = values.size();
    std::vector<std::uint32_t> flags(n, 0);
    for (std::size_t i = 0; i + 1 < n; ++i)
        flags[i] = values[i] != values[i + 1] ? 1u : 0u;
    if (n > 0)
        flags[n - 1] = 1;
    if (meter)
        meter->record(n > 1 ? n - 1 : 0, n > 1 ? 1 : 0, n);
    return flags;
}

}  // namespace gpz::parprim
