#include "gpz/huffman.hpp"

#include <algorithm>
#include <functional>
#include <queue>

#include "gpz/errors.hpp"

namespace gpz::huffman {

namespace {

struct Node {
    std::uint64_t weight = 0;
    std::uint8_t min_symbol = 0;  // tie-break key, unique across live nodes
    int left = -1;                // < 0 for leaves
    int right = -1;
    std::uint8_t symbol = 0;
};

void deposit_bits(std::vector<std::uint8_t>& buf, std::uint64_t bit_offset,
                  std::uint32_t code, std::uint32_t len)
{
    while (len > 0) {
        const std::size_t byte = bit_offset >> 3;
        const std::uint32_t used = bit_offset & 7;
        const std::uint32_t room = 8 - used;
        const std::uint32_t chunk = std::min(room, len);
        const std::uint32_t shift = len - chunk;
        const std::uint8_t bits =
            static_cast<std::uint8_t>((code >> shift) & ((1u << chunk) - 1));
        buf[byte] |= static_cast<std::uint8_t>(bits << (room - chunk));
        bit_offset += chunk;
        len -= chunk;
    }
}

struct BitReader {
    std::span<const std::uint8_t> payload;
    std::uint64_t bit_length = 0;
    std::uint64_t pos = 0;

    std::uint32_t next()
    {
        if (pos >= bit_length)
            throw CorruptError("vle: bit stream exhausted mid-codeword");
        const std::uint8_t byte = payload[pos >> 3];
        const std::uint32_t bit = (byte >> (7 - (pos & 7))) & 1u;
        ++pos;
        return bit;
    }
};

struct CanonicalDecoder {
    std::array<std::uint32_t, max_code_bits + 1> count{};
    std::array<std::uint64_t, max_code_bits + 2> first_code{};
    std::array<std::uint32_t, max_code_bits + 1> first_slot{};
    std::vector<std::uint8_t> symbols;  // present symbols in (length, symbol) order

    explicit CanonicalDecoder(const CodeTable& table)
    {
        for (std::size_t s = 0; s < 256; ++s)
            if (table.lengths[s] > 0)
                ++count[table.lengths[s]];
        std::uint64_t code = 0;
        std::uint32_t slot = 0;
        for (std::uint32_t len = 1; len <= max_code_bits; ++len) {
            first_code[len] = code = (code + count[len - 1]) << 1;
            first_slot[len] = slot;
            slot += count[len];
        }
        symbols.reserve(slot);
        for (std::uint32_t len = 1; len <= max_code_bits; ++len)
            for (std::size_t s = 0; s < 256; ++s)
                if (table.lengths[s] == len)
                    symbols.push_back(static_cast<std::uint8_t>(s));
    }

    std::uint8_t decode_one(BitReader& reader) const
    {
        std::uint64_t code = 0;
        for (std::uint32_t len = 1; len <= max_code_bits; ++len) {
            code = (code << 1) | reader.next();
            if (count[len] > 0 && code >= first_code[len] &&
                code - first_code[len] < count[len]) {
                return symbols[first_slot[len] +
                               static_cast<std::uint32_t>(code - first_code[len])];
            }
        }
        throw CorruptError("vle: bit pattern matches no codeword");
    }
};

}  // namespace

std::uint64_t kraft_sum_scaled(const std::array<std::uint8_t, 256>& lengths)
{
    std::uint64_t sum = 0;
    for (const std::uint8_t len : lengths)
        if (len > 0)
            sum += std::uint64_t(1) << (max_code_bits - len);
    return sum;
}

CodeTable table_from_lengths(const std::array<std::uint8_t, 256>& lengths)
{
    std::size_t present = 0;
    for (const std::uint8_t len : lengths) {
        if (len > max_code_bits)
            throw CorruptError("huffman: code length exceeds 32 bits");
        if (len > 0)
            ++present;
    }
    if (present == 0)
        throw CorruptError("huffman: no symbol has a code");
    if (kraft_sum_scaled(lengths) > (std::uint64_t(1) << max_code_bits))
        throw CorruptError("huffman: lengths violate the Kraft inequality");

    CodeTable table;
    table.lengths = lengths;
    std::uint64_t code = 0;
    std::uint32_t prev_len = 0;
    for (std::uint32_t len = 1; len <= max_code_bits; ++len) {
        for (std::size_t s = 0; s < 256; ++s) {
            if (lengths[s] != len)
                continue;
            if (prev_len == 0) {
                code = 0;
                prev_len = len;
            } else {
                code = (code + 1) << (len - prev_len);
                prev_len = len;
            }
            table.codewords[s] = static_cast<std::uint32_t>(code);
        }
    }
    return table;
}

CodeTable build_code(std::span<const std::uint64_t> frequencies)
{
    if (frequencies.size() != 256)
        throw ContractError("huffman: frequency vector must have 256 entries");

    std::vector<Node> nodes;
    nodes.reserve(512);
    for (std::size_t s = 0; s < 256; ++s) {
        if (frequencies[s] > 0) {
            Node leaf;
            leaf.weight = frequencies[s];
            leaf.min_symbol = static_cast<std::uint8_t>(s);
            leaf.symbol = static_cast<std::uint8_t>(s);
            nodes.push_back(leaf);
        }
    }
    if (nodes.empty())
        throw ContractError("huffman: all frequencies are zero");

    std::array<std::uint8_t, 256> lengths{};
    if (nodes.size() == 1) {
        lengths[nodes[0].symbol] = 1;
        return table_from_lengths(lengths);
    }

    using Entry = std::pair<std::pair<std::uint64_t, std::uint8_t>, int>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> queue;
    for (int i = 0; i < static_cast<int>(nodes.size()); ++i)
        queue.push({{nodes[i].weight, nodes[i].min_symbol}, i});

    while (queue.size() > 1) {
        const int a = queue.top().second;
        queue.pop();
        const int b = queue.top().second;
        queue.pop();
        Node parent;
        parent.weight = nodes[a].weight + nodes[b].weight;
        parent.min_symbol = std::min(nodes[a].min_symbol, nodes[b].min_symbol);
        parent.left = a;
        parent.right = b;
        nodes.push_back(parent);
        const int idx = static_cast<int>(nodes.size()) - 1;
        queue.push({{parent.weight, parent.min_symbol}, idx});
    }

    // leaf depths by an explicit stack walk from the root
    std::vector<std::pair<int, std::uint32_t>> stack{{queue.top().second, 0}};
    while (!stack.empty()) {
        const auto [idx, depth] = stack.back();
        stack.pop_back();
        const Node& node = nodes[idx];
        if (node.left < 0) {
            if (depth > max_code_bits)
                throw ContractError("huffman: code length exceeds 32 bits");
            lengths[node.symbol] = static_cast<std::uint8_t>(depth);
            continue;
        }
        stack.push_back({node.left, depth + 1});
        stack.push_back({node.right, depth + 1});
    }
    return table_from_lengths(lengths);
}

std::vector<std::uint64_t> codeword_offsets(std::span<const std::uint32_t> lengths,
                                            parprim::CostMeter* scan_meter)
{
    std::vector<std::uint64_t> wide(lengths.begin(), lengths.end());
    return parprim::scan_exclusive<std::uint64_t>(wide, std::plus<>{}, std::uint64_t(0),
                                                  scan_meter);
}

BitStream vle_encode(std::span<const std::uint8_t> block, const CodeTable& table,
                     parprim::CostMeter* scan_meter)
{
    const std::size_t n = block.size();
    std::vector<std::uint32_t> lengths(n);
    for (std::size_t i = 0; i < n; ++i) {
        lengths[i] = table.lengths[block[i]];
        if (lengths[i] == 0)
            throw ContractError("vle: symbol has no codeword");
    }

    const std::vector<std::uint64_t> offsets = codeword_offsets(lengths, scan_meter);

    BitStream stream;
    stream.bit_length = n == 0 ? 0 : offsets[n - 1] + lengths[n - 1];
    stream.payload.assign((stream.bit_length + 7) / 8, 0);
    // deposits touch disjoint bit ranges, so OR-merging is order independent
    for (std::size_t i = 0; i < n; ++i)
        deposit_bits(stream.payload, offsets[i], table.codewords[block[i]], lengths[i]);
    return stream;
}

std::vector<std::uint8_t> vle_decode(const BitStream& stream, const CodeTable& table,
                                     std::size_t symbol_count)
{
    const CanonicalDecoder decoder(table);
    BitReader reader{stream.payload, stream.bit_length};
    std::vector<std::uint8_t> out;
    out.reserve(symbol_count);
    for (std::size_t i = 0; i < symbol_count; ++i)
        out.push_back(decoder.decode_one(reader));
    if (reader.pos != stream.bit_length)
        throw CorruptError("vle: trailing bits after the last codeword");
    return out;
}

std::vector<std::uint8_t> vle_decode_all(const BitStream& stream, const CodeTable& table)
{
    const CanonicalDecoder decoder(table);
    BitReader reader{stream.payload, stream.bit_length};
    std::vector<std::uint8_t> out;
    while (reader.pos < stream.bit_length)
        out.push_back(decoder.decode_one(reader));
    return out;
}

}  // namespace gpz::huffman
