#include <doctest.h>

#include <random>

#include "gpz/errors.hpp"
#include "gpz/rle.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

using namespace gpz;
using testutil::bytes;

TEST_CASE("encode reproduces the worked example row for row")
{
    const auto trace = rle::encode_with_trace(bytes("AAABBCCC"));
    CHECK(trace.boundary_flags == std::vector<std::uint32_t>{0, 0, 1, 0, 1, 0, 0, 1});
    CHECK(trace.output_positions == std::vector<std::uint32_t>{0, 0, 0, 1, 1, 2, 2, 2});
    CHECK(trace.end_indices == std::vector<std::uint32_t>{3, 5, 8});
    CHECK(trace.runs.values == bytes("ABC"));
    CHECK(trace.runs.lengths == std::vector<std::uint32_t>{3, 2, 3});
    CHECK(trace.runs.source_length == 8);
}

TEST_CASE("encode of a singleton and of nothing")
{
    const auto one = rle::encode(bytes("X"));
    CHECK(one.values == bytes("X"));
    CHECK(one.lengths == std::vector<std::uint32_t>{1});
    CHECK(one.source_length == 1);

    const auto none = rle::encode({});
    CHECK(none.values.empty());
    CHECK(none.lengths.empty());
    CHECK(none.source_length == 0);
    CHECK(rle::decode(none).empty());
}

TEST_CASE("decode reproduces the worked example row for row")
{
    rle::RunSequence runs;
    runs.values = bytes("ABC");
    runs.lengths = {3, 2, 3};
    runs.source_length = 8;

    const auto trace = rle::decode_with_trace(runs);
    CHECK(trace.boundary_positions == std::vector<std::uint32_t>{3, 5, 8});
    CHECK(trace.boundary_flags == std::vector<std::uint32_t>{0, 0, 1, 0, 1, 0, 0, 1});
    CHECK(trace.scatter_positions == std::vector<std::uint32_t>{0, 0, 0, 1, 1, 2, 2, 2});
    CHECK(trace.output == bytes("AAABBCCC"));
}

TEST_CASE("decode of a single run")
{
    rle::RunSequence runs;
    runs.values = bytes("X");
    runs.lengths = {1};
    runs.source_length = 1;
    CHECK(rle::decode(runs) == bytes("X"));
}

TEST_CASE("decode rejects malformed run sequences")
{
    rle::RunSequence zero;
    zero.values = bytes("A");
    zero.lengths = {0};
    zero.source_length = 0;
    CHECK_THROWS_AS(rle::decode(zero), CorruptError);

    rle::RunSequence twin;
    twin.values = bytes("AA");
    twin.lengths = {1, 1};
    twin.source_length = 2;
    CHECK_THROWS_AS(rle::decode(twin), CorruptError);

    rle::RunSequence short_sum;
    short_sum.values = bytes("AB");
    short_sum.lengths = {2, 2};
    short_sum.source_length = 5;
    CHECK_THROWS_AS(rle::decode(short_sum), CorruptError);

    rle::RunSequence ragged;
    ragged.values = bytes("AB");
    ragged.lengths = {2};
    ragged.source_length = 2;
    CHECK_THROWS_AS(rle::decode(ragged), CorruptError);
}

TEST_CASE("encode output always satisfies the run invariants")
{
    std::mt19937 rng(71);
    for (int rep = 0; rep < 30; ++rep) {
        const auto block =
            testutil::runny_bytes(rng, testutil::log_uniform_length(rng, 1, 8192));
        const auto runs = rle::encode(block);
        CHECK_NOTHROW(rle::validate(runs));
    }
}

TEST_CASE("encode agrees with the serial run scanner")
{
    std::mt19937 rng(73);
    for (int rep = 0; rep < 30; ++rep) {
        const auto block = rep % 2
                               ? testutil::runny_bytes(rng, 4096)
                               : testutil::random_bytes(rng, 4096, 4);
        const auto runs = rle::encode(block);
        const auto expected = oracle::rle_naive(block);
        CHECK(runs.values == expected.values);
        CHECK(runs.lengths == expected.lengths);
        CHECK(runs.source_length == expected.source_length);
    }
}

TEST_CASE("decode after encode is the identity")
{
    std::mt19937 rng(79);
    for (int rep = 0; rep < 60; ++rep) {
        const std::size_t n = testutil::log_uniform_length(rng, 0, 65536);
        const auto block = rep % 2 ? testutil::runny_bytes(rng, n)
                                   : testutil::random_bytes(rng, n);
        CHECK(rle::decode(rle::encode(block)) == block);
    }
}
