#pragma once

// Block-splitting pipeline and the archive format. Each block runs
// BWT -> RLE -> MTF -> VLE independently; records are decodable in any
// order. All multi-byte integers are little-endian. The layout is
// documented byte-exactly in docs/format.md.

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "gpz/huffman.hpp"
#include "gpz/parprim.hpp"

namespace gpz::container {

inline constexpr std::uint8_t format_version = 1;
inline constexpr std::array<std::uint8_t, 4> magic = {'G', 'P', 'Z', '1'};
inline constexpr std::size_t header_bytes = 13;  // magic + version + block_size + block_count

struct FileHeader {
    std::uint32_t block_size = 0;   // configured maximum block size
    std::uint32_t block_count = 0;
};

struct BlockRecord {
    std::uint32_t original_length = 0;
    std::uint32_t bwt_primary_index = 0;
    std::uint32_t run_count = 0;
    std::array<std::uint8_t, 256> code_lengths{};
    std::uint64_t payload_bit_length = 0;
    std::vector<std::uint8_t> payload;
    std::uint32_t checksum = 0;  // CRC-32 of the original block

    std::size_t serialized_size() const;
};

struct Options {
    std::uint32_t block_size = 1u << 20;
    bool shared_table = false;  // one Huffman table for the whole file
};

// Per-block cost evidence and stage sizes, filled when requested.
struct StageInfo {
    parprim::CostMeter scan;
    parprim::CostMeter sort;
    std::uint64_t stream_bytes = 0;  // serialized run/value stream entering the VLE
};

// Run values and lengths serialized as the byte stream the entropy coder
// sees: per run, one MTF-coded value byte followed by the run length as a
// little-endian base-128 varint (low 7 bits first, high bit = continue).
void put_varint(std::vector<std::uint8_t>& out, std::uint32_t value);

BlockRecord compress_block(std::span<const std::uint8_t> block, const Options& opts = {},
                           StageInfo* info = nullptr);
std::vector<std::uint8_t> decompress_block(const BlockRecord& record,
                                           std::uint32_t multistart_walkers = 8,
                                           StageInfo* info = nullptr);

std::vector<std::uint8_t> compress_stream(std::span<const std::uint8_t> input,
                                          const Options& opts = {});
std::vector<std::uint8_t> decompress_stream(std::span<const std::uint8_t> file,
                                            std::uint32_t multistart_walkers = 8);

// Serialization of the pieces, used by the stream functions and by tools
// that need to walk an archive record by record.
void write_header(std::vector<std::uint8_t>& out, const FileHeader& header);
void write_record(std::vector<std::uint8_t>& out, const BlockRecord& record);

struct ArchiveReader {
    explicit ArchiveReader(std::span<const std::uint8_t> file);
    // the reader is a view; it must not outlive the archive bytes
    explicit ArchiveReader(std::vector<std::uint8_t>&&) = delete;

    FileHeader header;
    std::uint32_t records_read = 0;

    bool has_next() const { return records_read < header.block_count; }
    BlockRecord next();
    std::size_t bytes_consumed() const { return pos_; }
    std::size_t bytes_total() const { return data_.size(); }

private:
    std::span<const std::uint8_t> data_;
    std::size_t pos_ = 0;
};

}  // namespace gpz::container
