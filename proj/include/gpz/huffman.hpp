#pragma once

// Canonical Huffman coding. Tables are built serially per block (tree
// construction does not fit the primitive layer); the encoder substitutes
// codewords in parallel shape: a codeword/length lookup per symbol, an
// exclusive scan of the lengths for the bit offsets, then OR-deposits into
// disjoint bit ranges. Decoding is strictly serial.
//
// Codewords are canonical: assigned in (length, symbol) order, so a table is
// fully reconstructible from its 256 lengths. Bit order is MSB-first.

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "gpz/parprim.hpp"

namespace gpz::huffman {

inline constexpr std::uint32_t max_code_bits = 32;

struct CodeTable {
    std::array<std::uint8_t, 256> lengths{};    // 0 = symbol absent
    std::array<std::uint32_t, 256> codewords{}; // low `length` bits, MSB-first

    bool operator==(const CodeTable&) const = default;
};

struct BitStream {
    std::vector<std::uint8_t> payload;  // ceil(bit_length / 8) bytes, pad bits zero
    std::uint64_t bit_length = 0;       // bit 0 = MSB of payload[0]
};

// Optimal code lengths for the frequency vector, canonicalized. Merging
// prefers lower total weight, then lower minimum contained symbol. A lone
// present symbol gets a 1-bit code.
CodeTable build_code(std::span<const std::uint64_t> frequencies);

// Rebuilds the canonical codewords from lengths alone. Throws CorruptError
// on lengths that violate the Kraft inequality or exceed max_code_bits.
CodeTable table_from_lengths(const std::array<std::uint8_t, 256>& lengths);

// Kraft sum scaled by 2^32: sum of 2^(32 - len) over present symbols.
std::uint64_t kraft_sum_scaled(const std::array<std::uint8_t, 256>& lengths);

// Bit offset of each codeword given the per-symbol codeword lengths
// (the scan step of the encoder, 64-bit to match BitStream addressing).
std::vector<std::uint64_t> codeword_offsets(std::span<const std::uint32_t> lengths,
                                            parprim::CostMeter* scan_meter = nullptr);

BitStream vle_encode(std::span<const std::uint8_t> block, const CodeTable& table,
                     parprim::CostMeter* scan_meter = nullptr);

// Decodes exactly symbol_count symbols and requires the stream to end on
// the last codeword boundary.
std::vector<std::uint8_t> vle_decode(const BitStream& stream, const CodeTable& table,
                                     std::size_t symbol_count);

// Decodes until the stream's bit_length is exhausted (the symbol count is
// not stored in the container; the bit length is the terminator).
std::vector<std::uint8_t> vle_decode_all(const BitStream& stream, const CodeTable& table);

}  // namespace gpz::huffman
