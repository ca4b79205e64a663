#include "gpz/container.hpp"

#include <algorithm>
#include <atomic>
#include <cstring>
#include <exception>
#include <string>
#include <thread>

#include "gpz/bwt.hpp"
#include "gpz/crc32.hpp"
#include "gpz/errors.hpp"
#include "gpz/mtf.hpp"
#include "gpz/rle.hpp"

namespace gpz::container {

namespace {

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v)
{
    out.push_back(static_cast<std::uint8_t>(v));
    out.push_back(static_cast<std::uint8_t>(v >> 8));
    out.push_back(static_cast<std::uint8_t>(v >> 16));
    out.push_back(static_cast<std::uint8_t>(v >> 24));
}

void put_u64(std::vector<std::uint8_t>& out, std::uint64_t v)
{
    for (int i = 0; i < 8; ++i)
        out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

struct Cursor {
    std::span<const std::uint8_t> data;
    std::size_t pos = 0;

    void need(std::size_t n) const
    {
        if (data.size() - pos < n)
            throw CorruptError("archive: truncated input");
    }
    std::uint8_t u8()
    {
        need(1);
        return data[pos++];
    }
    std::uint32_t u32()
    {
        need(4);
        std::uint32_t v = 0;
        for (int i = 0; i < 4; ++i)
            v |= std::uint32_t(data[pos++]) << (8 * i);
        return v;
    }
    std::uint64_t u64()
    {
        need(8);
        std::uint64_t v = 0;
        for (int i = 0; i < 8; ++i)
            v |= std::uint64_t(data[pos++]) << (8 * i);
        return v;
    }
    std::span<const std::uint8_t> bytes(std::size_t n)
    {
        need(n);
        auto s = data.subspan(pos, n);
        pos += n;
        return s;
    }
};

std::uint32_t get_varint(std::span<const std::uint8_t> stream, std::size_t& pos)
{
    std::uint32_t value = 0;
    for (std::uint32_t shift = 0; shift < 35; shift += 7) {
        if (pos >= stream.size())
            throw CorruptError("block: run length varint is truncated");
        const std::uint8_t byte = stream[pos++];
        const std::uint64_t part = std::uint64_t(byte & 0x7Fu) << shift;
        if (part > 0xFFFFFFFFull - value)
            throw CorruptError("block: run length varint overflows 32 bits");
        value |= static_cast<std::uint32_t>(part);
        if ((byte & 0x80u) == 0)
            return value;
    }
    throw CorruptError("block: run length varint is too long");
}

// BWT through MTF plus stream serialization; the VLE step is split off so
// shared-table compression can histogram every block first.
struct StagedBlock {
    std::uint32_t original_length = 0;
    std::uint32_t primary_index = 0;
    std::uint32_t run_count = 0;
    std::vector<std::uint8_t> stream;
    std::uint32_t checksum = 0;
};

StagedBlock stage_block(std::span<const std::uint8_t> block, StageInfo* info)
{
    StagedBlock staged;
    staged.original_length = static_cast<std::uint32_t>(block.size());
    staged.checksum = crc32(block);

    const bwt::BwtBlock transformed =
        bwt::forward(block, info ? &info->sort : nullptr);
    staged.primary_index = transformed.primary_index;

    const rle::RunSequence runs =
        rle::encode(transformed.payload, info ? &info->scan : nullptr);
    staged.run_count = static_cast<std::uint32_t>(runs.values.size());

    const std::vector<std::uint8_t> coded_values = mtf::encode(runs.values);
    staged.stream.reserve(runs.values.size() * 2);
    for (std::size_t j = 0; j < runs.values.size(); ++j) {
        staged.stream.push_back(coded_values[j]);
        put_varint(staged.stream, runs.lengths[j]);
    }
    if (info)
        info->stream_bytes = staged.stream.size();
    return staged;
}

std::array<std::uint64_t, 256> histogram(std::span<const std::uint8_t> bytes)
{
    std::array<std::uint64_t, 256> freq{};
    for (const std::uint8_t b : bytes)
        ++freq[b];
    return freq;
}

BlockRecord finish_block(StagedBlock&& staged, const huffman::CodeTable& table,
                         StageInfo* info)
{
    BlockRecord record;
    record.original_length = staged.original_length;
    record.bwt_primary_index = staged.primary_index;
    record.run_count = staged.run_count;
    record.code_lengths = table.lengths;
    record.checksum = staged.checksum;

    huffman::BitStream bits =
        huffman::vle_encode(staged.stream, table, info ? &info->scan : nullptr);
    record.payload_bit_length = bits.bit_length;
    record.payload = std::move(bits.payload);
    return record;
}

// Claims indices from a shared counter until none remain; the first failure
// (lowest block index) wins so errors are deterministic.
template <typename F>
void parallel_for(std::size_t count, F&& body)
{
    const std::size_t workers =
        std::min<std::size_t>(std::max(1u, std::thread::hardware_concurrency()), count);
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i)
            body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(count);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
                try {
                    body(i);
                } catch (...) {
                    errors[i] = std::current_exception();
                }
            }
        });
    }
    for (auto& t : pool)
        t.join();
    for (auto& e : errors)
        if (e)
            std::rethrow_exception(e);
}

}  // namespace

void put_varint(std::vector<std::uint8_t>& out, std::uint32_t value)
{
    while (value >= 0x80u) {
        out.push_back(static_cast<std::uint8_t>(value) | 0x80u);
        value >>= 7;
    }
    out.push_back(static_cast<std::uint8_t>(value));
}

std::size_t BlockRecord::serialized_size() const
{
    return 4 + 4 + 4 + 256 + 8 + payload.size() + 4;
}

BlockRecord compress_block(std::span<const std::uint8_t> block, const Options& opts,
                           StageInfo* info)
{
    if (block.empty() || block.size() > opts.block_size)
        throw ContractError("container: block size out of range");
    StagedBlock staged = stage_block(block, info);
    const huffman::CodeTable table = huffman::build_code(histogram(staged.stream));
    return finish_block(std::move(staged), table, info);
}

std::vector<std::uint8_t> decompress_block(const BlockRecord& record,
                                           std::uint32_t multistart_walkers,
                                           StageInfo* info)
{
    if (record.original_length == 0)
        throw CorruptError("block: original length is zero");
    if (record.bwt_primary_index >= record.original_length)
        throw CorruptError("block: primary index out of range");
    if (record.run_count == 0 || record.run_count > record.original_length)
        throw CorruptError("block: run count out of range");
    if (record.payload.size() != (record.payload_bit_length + 7) / 8)
        throw CorruptError("block: payload is truncated");

    const huffman::CodeTable table = huffman::table_from_lengths(record.code_lengths);
    const huffman::BitStream stream{record.payload, record.payload_bit_length};
    const std::vector<std::uint8_t> bytes = huffman::vle_decode_all(stream, table);
    if (info)
        info->stream_bytes = bytes.size();

    std::vector<std::uint8_t> coded_values;
    rle::RunSequence runs;
    coded_values.reserve(record.run_count);
    runs.lengths.reserve(record.run_count);
    std::size_t pos = 0;
    for (std::uint32_t j = 0; j < record.run_count; ++j) {
        if (pos >= bytes.size())
            throw CorruptError("block: run stream is shorter than the run count");
        coded_values.push_back(bytes[pos++]);
        runs.lengths.push_back(get_varint(bytes, pos));
    }
    if (pos != bytes.size())
        throw CorruptError("block: trailing bytes after the last run");

    runs.values = mtf::decode(coded_values);
    runs.source_length = record.original_length;

    const std::vector<std::uint8_t> bwt_payload =
        rle::decode(runs, info ? &info->scan : nullptr);

    const std::uint32_t walkers = std::min<std::uint32_t>(
        std::max<std::uint32_t>(multistart_walkers, 1), record.original_length);
    const std::vector<std::uint8_t> block = bwt::inverse_multistart(
        bwt::BwtBlock{bwt_payload, record.bwt_primary_index}, walkers,
        info ? &info->scan : nullptr);

    if (crc32(block) != record.checksum)
        throw CorruptError("block: checksum mismatch");
    return block;
}

void write_header(std::vector<std::uint8_t>& out, const FileHeader& header)
{
    out.insert(out.end(), magic.begin(), magic.end());
    out.push_back(format_version);
    put_u32(out, header.block_size);
    put_u32(out, header.block_count);
}

void write_record(std::vector<std::uint8_t>& out, const BlockRecord& record)
{
    put_u32(out, record.original_length);
    put_u32(out, record.bwt_primary_index);
    put_u32(out, record.run_count);
    out.insert(out.end(), record.code_lengths.begin(), record.code_lengths.end());
    put_u64(out, record.payload_bit_length);
    out.insert(out.end(), record.payload.begin(), record.payload.end());
    put_u32(out, record.checksum);
}

ArchiveReader::ArchiveReader(std::span<const std::uint8_t> file) : data_(file)
{
    Cursor cur{data_, 0};
    const auto m = cur.bytes(4);
    if (!std::equal(m.begin(), m.end(), magic.begin()))
        throw FormatError("archive: bad magic");
    const std::uint8_t version = cur.u8();
    if (version != format_version)
        throw FormatError("archive: unsupported version " + std::to_string(version));
    header.block_size = cur.u32();
    header.block_count = cur.u32();
    pos_ = cur.pos;
}

BlockRecord ArchiveReader::next()
{
    if (!has_next())
        throw CorruptError("archive: no more records");
    Cursor cur{data_, pos_};
    BlockRecord record;
    record.original_length = cur.u32();
    record.bwt_primary_index = cur.u32();
    record.run_count = cur.u32();
    const auto lens = cur.bytes(256);
    std::copy(lens.begin(), lens.end(), record.code_lengths.begin());
    record.payload_bit_length = cur.u64();
    if (record.payload_bit_length > (cur.data.size() - cur.pos) * 8ull)
        throw CorruptError("archive: truncated input");
    const std::size_t payload_bytes =
        static_cast<std::size_t>((record.payload_bit_length + 7) / 8);
    const auto payload = cur.bytes(payload_bytes);
    record.payload.assign(payload.begin(), payload.end());
    if (record.payload_bit_length % 8 != 0) {
        const std::uint8_t pad_mask =
            static_cast<std::uint8_t>(0xFFu >> (record.payload_bit_length % 8));
        if (!record.payload.empty() && (record.payload.back() & pad_mask) != 0)
            throw CorruptError("archive: nonzero padding bits");
    }
    record.checksum = cur.u32();
    pos_ = cur.pos;
    ++records_read;
    return record;
}

std::vector<std::uint8_t> compress_stream(std::span<const std::uint8_t> input,
                                          const Options& opts)
{
    if (opts.block_size == 0)
        throw ContractError("container: block size must be at least 1");

    const std::size_t block_count =
        (input.size() + opts.block_size - 1) / opts.block_size;
    auto slice = [&](std::size_t i) {
        const std::size_t begin = i * std::size_t(opts.block_size);
        return input.subspan(begin, std::min<std::size_t>(opts.block_size,
                                                          input.size() - begin));
    };

    std::vector<BlockRecord> records(block_count);
    if (opts.shared_table && block_count > 0) {
        std::vector<StagedBlock> staged(block_count);
        parallel_for(block_count, [&](std::size_t i) {
            staged[i] = stage_block(slice(i), nullptr);
        });
        std::array<std::uint64_t, 256> freq{};
        for (const auto& s : staged)
            for (const std::uint8_t b : s.stream)
                ++freq[b];
        const huffman::CodeTable table = huffman::build_code(freq);
        parallel_for(block_count, [&](std::size_t i) {
            records[i] = finish_block(std::move(staged[i]), table, nullptr);
        });
    } else {
        parallel_for(block_count, [&](std::size_t i) {
            records[i] = compress_block(slice(i), opts, nullptr);
        });
    }

    std::vector<std::uint8_t> out;
    std::size_t total = header_bytes;
    for (const auto& r : records)
        total += r.serialized_size();
    out.reserve(total);
    write_header(out, FileHeader{opts.block_size,
                                 static_cast<std::uint32_t>(block_count)});
    for (const auto& r : records)
        write_record(out, r);
    return out;
}

std::vector<std::uint8_t> decompress_stream(std::span<const std::uint8_t> file,
                                            std::uint32_t multistart_walkers)
{
    ArchiveReader reader(file);
    std::vector<BlockRecord> records;
    records.reserve(reader.header.block_count);
    std::uint64_t total = 0;
    while (reader.has_next()) {
        records.push_back(reader.next());
        const auto& r = records.back();
        if (r.original_length > reader.header.block_size)
            throw CorruptError("block " + std::to_string(records.size() - 1) +
                               ": longer than the declared block size");
        total += r.original_length;
    }
    if (reader.bytes_consumed() != reader.bytes_total())
        throw CorruptError("archive: trailing data after the last record");

    std::vector<std::vector<std::uint8_t>> blocks(records.size());
    parallel_for(records.size(), [&](std::size_t i) {
        try {
            blocks[i] = decompress_block(records[i], multistart_walkers, nullptr);
        } catch (const CorruptError& e) {
            throw CorruptError("block " + std::to_string(i) + ": " + e.what());
        }
    });

    std::vector<std::uint8_t> out;
    out.reserve(static_cast<std::size_t>(total));
    for (const auto& b : blocks)
        out.insert(out.end(), b.begin(), b.end());
    return out;
}

}  // namespace gpz::container
