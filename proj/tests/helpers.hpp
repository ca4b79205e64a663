#pragma once

#include <cctype>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace testutil {

inline std::vector<std::uint8_t> bytes(std::string_view s)
{
    return {s.begin(), s.end()};
}

inline std::string text(const std::vector<std::uint8_t>& v)
{
    return {v.begin(), v.end()};
}

inline std::vector<std::uint8_t> random_bytes(std::mt19937& rng, std::size_t n,
                                              int alphabet = 256)
{
    std::uniform_int_distribution<int> dist(0, alphabet - 1);
    std::vector<std::uint8_t> out(n);
    for (auto& b : out)
        b = static_cast<std::uint8_t>(dist(rng));
    return out;
}

// Run-heavy data, the shape BWT output tends to have.
inline std::vector<std::uint8_t> runny_bytes(std::mt19937& rng, std::size_t n)
{
    std::uniform_int_distribution<int> sym(0, 255);
    std::uniform_int_distribution<int> run(1, 24);
    std::vector<std::uint8_t> out;
    out.reserve(n);
    while (out.size() < n) {
        const auto value = static_cast<std::uint8_t>(sym(rng));
        for (int k = run(rng); k > 0 && out.size() < n; --k)
            out.push_back(value);
    }
    return out;
}

// Lengths drawn log-uniformly over [lo, hi] so small and large inputs both
// appear often.
inline std::size_t log_uniform_length(std::mt19937& rng, std::size_t lo, std::size_t hi)
{
    std::uniform_real_distribution<double> dist(0.0, 1.0);
    const double a = static_cast<double>(lo < 1 ? 1 : lo);
    const double b = static_cast<double>(hi);
    const double x = a * std::pow(b / a, dist(rng));
    auto n = static_cast<std::size_t>(x);
    if (n < lo)
        n = lo;
    if (n > hi)
        n = hi;
    return n;
}

// Deterministic English-shaped filler text.
inline std::vector<std::uint8_t> synthetic_text(std::mt19937& rng, std::size_t target)
{
    static const char* words[] = {
        "the",  "quick",  "stream", "block",   "sorts", "every", "rotation",
        "and",  "counts", "runs",   "of",      "equal", "bytes", "before",
        "it",   "writes", "codes",  "to",      "a",     "packed", "output",
        "with", "stable", "order",  "under",   "load",  "while", "buffers",
        "hold", "their",  "state",  "between", "calls", "in",    "memory"};
    std::uniform_int_distribution<std::size_t> pick(0, std::size(words) - 1);
    std::uniform_int_distribution<int> sentence_len(5, 14);

    std::vector<std::uint8_t> out;
    out.reserve(target + 64);
    while (out.size() < target) {
        const int count = sentence_len(rng);
        for (int w = 0; w < count; ++w) {
            std::string word = words[pick(rng)];
            if (w == 0)
                word[0] = static_cast<char>(std::toupper(word[0]));
            for (const char c : word)
                out.push_back(static_cast<std::uint8_t>(c));
            out.push_back(w + 1 == count ? '.' : ' ');
        }
        out.push_back(out.size() % 601 < 80 ? '\n' : ' ');
    }
    out.resize(target);
    return out;
}

}  // namespace testutil
