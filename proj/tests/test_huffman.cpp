#include <doctest.h>

#include <numeric>
#include <random>

#include "gpz/errors.hpp"
#include "gpz/huffman.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

using namespace gpz;

namespace {

std::array<std::uint64_t, 256> freq_of(std::span<const std::uint8_t> block)
{
    std::array<std::uint64_t, 256> freq{};
    for (const std::uint8_t b : block)
        ++freq[b];
    return freq;
}

std::uint64_t weighted_length(const huffman::CodeTable& table,
                              std::span<const std::uint64_t> freq)
{
    std::uint64_t total = 0;
    for (std::size_t s = 0; s < 256; ++s)
        total += freq[s] * table.lengths[s];
    return total;
}

}  // namespace

TEST_CASE("two present symbols get one bit each")
{
    std::array<std::uint64_t, 256> freq{};
    freq['x'] = 10;
    freq['y'] = 90;
    const auto table = huffman::build_code(freq);
    CHECK(table.lengths['x'] == 1);
    CHECK(table.lengths['y'] == 1);
    CHECK(huffman::kraft_sum_scaled(table.lengths) == (std::uint64_t(1) << 32));
}

TEST_CASE("a lone symbol gets a 1-bit code")
{
    std::array<std::uint64_t, 256> freq{};
    freq[7] = 3;
    const auto table = huffman::build_code(freq);
    CHECK(table.lengths[7] == 1);
    CHECK(huffman::kraft_sum_scaled(table.lengths) == (std::uint64_t(1) << 31));

    // a block under an all-1-bit table costs exactly one bit per symbol
    const std::vector<std::uint8_t> block(300, 7);
    const auto stream = huffman::vle_encode(block, table);
    CHECK(stream.bit_length == block.size());
    CHECK(huffman::vle_decode(stream, table, block.size()) == block);
}

TEST_CASE("all-zero frequencies are rejected")
{
    const std::array<std::uint64_t, 256> freq{};
    CHECK_THROWS_AS(huffman::build_code(freq), ContractError);
}

TEST_CASE("skewed four-symbol alphabet gets the classic depths")
{
    std::array<std::uint64_t, 256> freq{};
    freq['A'] = 5;
    freq['B'] = 2;
    freq['C'] = 1;
    freq['D'] = 1;
    const auto table = huffman::build_code(freq);
    CHECK(table.lengths['A'] == 1);
    CHECK(table.lengths['B'] == 2);
    CHECK(table.lengths['C'] == 3);
    CHECK(table.lengths['D'] == 3);
    CHECK(weighted_length(table, freq) == oracle::optimal_prefix_weighted_length(freq));
}

TEST_CASE("build_code is optimal for small alphabets")
{
    std::mt19937 rng(83);
    std::uniform_int_distribution<int> syms(2, 4);
    std::uniform_int_distribution<std::uint64_t> weight(1, 1000);
    for (int rep = 0; rep < 100; ++rep) {
        std::array<std::uint64_t, 256> freq{};
        const int m = syms(rng);
        for (int s = 0; s < m; ++s)
            freq[std::size_t(40 + 13 * s)] = weight(rng);
        const auto table = huffman::build_code(freq);
        CHECK(weighted_length(table, freq) ==
              oracle::optimal_prefix_weighted_length(freq));
    }
}

TEST_CASE("tables rebuild from lengths alone")
{
    std::mt19937 rng(89);
    for (int rep = 0; rep < 50; ++rep) {
        const auto block =
            testutil::random_bytes(rng, testutil::log_uniform_length(rng, 1, 4096),
                                   rep % 2 ? 7 : 256);
        const auto table = huffman::build_code(freq_of(block));
        const std::size_t present =
            256 - static_cast<std::size_t>(
                      std::count(table.lengths.begin(), table.lengths.end(), 0));
        if (present >= 2)  // a full binary tree meets Kraft with equality
            CHECK(huffman::kraft_sum_scaled(table.lengths) == (std::uint64_t(1) << 32));
        else
            CHECK(huffman::kraft_sum_scaled(table.lengths) < (std::uint64_t(1) << 32));
        CHECK(huffman::table_from_lengths(table.lengths) == table);
    }
}

TEST_CASE("table_from_lengths rejects impossible length vectors")
{
    std::array<std::uint8_t, 256> over{};
    over[0] = 1;
    over[1] = 1;
    over[2] = 1;  // Kraft sum 1.5
    CHECK_THROWS_AS(huffman::table_from_lengths(over), CorruptError);

    std::array<std::uint8_t, 256> none{};
    CHECK_THROWS_AS(huffman::table_from_lengths(none), CorruptError);

    std::array<std::uint8_t, 256> huge{};
    huge[0] = 40;
    CHECK_THROWS_AS(huffman::table_from_lengths(huge), CorruptError);
}

TEST_CASE("codeword offsets come from the exclusive scan of the lengths")
{
    const std::vector<std::uint32_t> lengths = {1, 8, 16, 7, 14, 9, 4, 4};
    const std::vector<std::uint64_t> expected = {0, 1, 9, 25, 32, 46, 55, 59};
    CHECK(huffman::codeword_offsets(lengths) == expected);
}

TEST_CASE("encoding three 1-bit symbols packs three bits")
{
    std::array<std::uint64_t, 256> freq{};
    freq['0'] = 1;
    freq['1'] = 1;
    const auto table = huffman::build_code(freq);

    const auto block = testutil::bytes("010");
    const auto stream = huffman::vle_encode(block, table);
    CHECK(stream.bit_length == 3);
    CHECK(huffman::vle_decode(stream, table, 3) == block);
}

TEST_CASE("empty block encodes to an empty stream")
{
    std::array<std::uint64_t, 256> freq{};
    freq[0] = 1;
    const auto table = huffman::build_code(freq);
    const auto stream = huffman::vle_encode({}, table);
    CHECK(stream.bit_length == 0);
    CHECK(stream.payload.empty());
    CHECK(huffman::vle_decode(stream, table, 0).empty());
}

TEST_CASE("encoding a symbol without a codeword is a contract error")
{
    std::array<std::uint64_t, 256> freq{};
    freq['a'] = 1;
    freq['b'] = 1;
    const auto table = huffman::build_code(freq);
    CHECK_THROWS_AS(huffman::vle_encode(testutil::bytes("abc"), table), ContractError);
}

TEST_CASE("bit length equals the sum of the codeword lengths")
{
    std::mt19937 rng(97);
    for (int rep = 0; rep < 40; ++rep) {
        const auto block =
            testutil::random_bytes(rng, testutil::log_uniform_length(rng, 1, 4096),
                                   rep % 3 ? 32 : 256);
        const auto table = huffman::build_code(freq_of(block));
        const auto stream = huffman::vle_encode(block, table);

        std::uint64_t expected_bits = 0;
        for (const std::uint8_t b : block)
            expected_bits += table.lengths[b];
        CHECK(stream.bit_length == expected_bits);
        CHECK(stream.payload.size() == (expected_bits + 7) / 8);

        CHECK(huffman::vle_decode(stream, table, block.size()) == block);
        CHECK(huffman::vle_decode_all(stream, table) == block);
    }
}

TEST_CASE("encoder agrees with the naive bit appender")
{
    std::mt19937 rng(101);
    for (int rep = 0; rep < 25; ++rep) {
        const auto block = testutil::runny_bytes(rng, 3000);
        const auto table = huffman::build_code(freq_of(block));
        const auto stream = huffman::vle_encode(block, table);
        const auto naive = oracle::huffman_naive_encode(block, table);
        CHECK(stream.bit_length == naive.bit_length);
        CHECK(stream.payload == naive.payload);
    }
}

TEST_CASE("decode failures are corrupt-stream errors")
{
    std::array<std::uint64_t, 256> freq{};
    freq['a'] = 3;
    freq['b'] = 2;
    freq['c'] = 1;
    const auto table = huffman::build_code(freq);
    const auto block = testutil::bytes("abcaba");
    auto stream = huffman::vle_encode(block, table);

    // asking for more symbols than the stream holds
    CHECK_THROWS_AS(huffman::vle_decode(stream, table, block.size() + 1), CorruptError);
    // truncated bit budget ends mid-codeword or leaves trailing bits
    auto truncated = stream;
    truncated.bit_length -= 1;
    CHECK_THROWS_AS(huffman::vle_decode(truncated, table, block.size()), CorruptError);

    // an incomplete code leaves unmapped patterns
    std::array<std::uint8_t, 256> sparse{};
    sparse['a'] = 2;
    sparse['b'] = 2;  // 00 and 01 defined, 1x undefined
    const auto partial = huffman::table_from_lengths(sparse);
    huffman::BitStream bad;
    bad.payload = {0xFF};
    bad.bit_length = 2;
    CHECK_THROWS_AS(huffman::vle_decode(bad, partial, 1), CorruptError);
}
