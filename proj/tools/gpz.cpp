// gpz - block compressor built on BWT -> RLE -> MTF -> VLE with a
// data-parallel primitive layer underneath. Subcommands: compress,
// decompress, verify, stats. Paths of "-" mean stdin/stdout.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gpz/container.hpp"
#include "gpz/errors.hpp"
#include "gpz/parprim.hpp"

namespace {

std::vector<std::uint8_t> read_input(const std::string& path)
{
    if (path == "-") {
        std::vector<std::uint8_t> data;
        char buf[1 << 16];
        while (std::cin.read(buf, sizeof(buf)) || std::cin.gcount() > 0)
            data.insert(data.end(), buf, buf + std::cin.gcount());
        return data;
    }
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open input file: " + path);
    std::vector<std::uint8_t> data((std::istreambuf_iterator<char>(in)),
                                   std::istreambuf_iterator<char>());
    if (in.bad())
        throw std::runtime_error("read failed: " + path);
    return data;
}

void write_output(const std::string& path, std::span<const std::uint8_t> data)
{
    if (path == "-") {
        std::cout.write(reinterpret_cast<const char*>(data.data()),
                        static_cast<std::streamsize>(data.size()));
        std::cout.flush();
        if (!std::cout)
            throw std::runtime_error("write to stdout failed");
        return;
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw std::runtime_error("cannot open output file: " + path);
    out.write(reinterpret_cast<const char*>(data.data()),
              static_cast<std::streamsize>(data.size()));
    out.flush();
    if (!out)
        throw std::runtime_error("write failed: " + path);
}

struct Args {
    std::string input;
    std::string output;
    std::uint32_t block_size = 1u << 20;
    std::uint32_t multistart = 8;
    bool shared_table = false;
    bool emit_cost = false;

    std::string resolved_output() const
    {
        if (output.empty())
            throw std::runtime_error("no output path given (positional or --output)");
        return output;
    }
};

int run_compress(const Args& args)
{
    const auto input = read_input(args.input);
    gpz::container::Options opts;
    opts.block_size = args.block_size;
    opts.shared_table = args.shared_table;
    const auto archive = gpz::container::compress_stream(input, opts);
    write_output(args.resolved_output(), archive);
    return 0;
}

int run_decompress(const Args& args)
{
    const auto archive = read_input(args.input);
    const auto output = gpz::container::decompress_stream(archive, args.multistart);
    write_output(args.resolved_output(), output);
    return 0;
}

int run_verify(const Args& args)
{
    const auto input = read_input(args.input);
    gpz::container::Options opts;
    opts.block_size = args.block_size;
    opts.shared_table = args.shared_table;
    const auto archive = gpz::container::compress_stream(input, opts);
    const auto restored = gpz::container::decompress_stream(archive, args.multistart);
    const bool identical =
        restored.size() == input.size() &&
        std::equal(restored.begin(), restored.end(), input.begin());
    const std::size_t blocks =
        input.empty() ? 0 : (input.size() + opts.block_size - 1) / opts.block_size;
    std::cout << "blocks=" << blocks << "\n"
              << "original_bytes=" << input.size() << "\n"
              << "compressed_bytes=" << archive.size() << "\n"
              << "identical=" << (identical ? "true" : "false") << "\n";
    if (!identical)
        throw std::runtime_error("verify: round trip differs from the input");
    return 0;
}

int run_stats(const Args& args)
{
    const auto file = read_input(args.input);
    gpz::container::ArchiveReader reader(file);
    std::cout << "block_size=" << reader.header.block_size << "\n"
              << "block_count=" << reader.header.block_count << "\n";

    std::uint64_t total_original = 0;
    std::size_t index = 0;
    while (reader.has_next()) {
        const auto record = reader.next();
        gpz::container::StageInfo decode_info;
        const auto block = gpz::container::decompress_block(
            record, args.multistart, &decode_info);
        total_original += block.size();

        const std::uint64_t run_value_bytes = record.run_count;
        const std::uint64_t run_length_bytes =
            decode_info.stream_bytes - run_value_bytes;
        std::cout << "block=" << index
                  << " original_bytes=" << record.original_length
                  << " record_bytes=" << record.serialized_size()
                  << " runs=" << record.run_count
                  << " run_value_bytes=" << run_value_bytes
                  << " run_length_bytes=" << run_length_bytes
                  << " stream_bytes=" << decode_info.stream_bytes
                  << " payload_bits=" << record.payload_bit_length
                  << " payload_bytes=" << record.payload.size() << "\n";

        if (args.emit_cost) {
            // decode-side scans, plus the sort/scan meters of a re-compression
            gpz::container::Options opts;
            opts.block_size = reader.header.block_size;
            gpz::container::StageInfo encode_info;
            gpz::container::compress_block(block, opts, &encode_info);

            const auto& scan = decode_info.scan;
            const std::uint64_t scan_bound =
                2 * gpz::parprim::ceil_log2(scan.max_length);
            std::cout << "block=" << index
                      << " scan_invocations=" << scan.invocations
                      << " scan_work=" << scan.work
                      << " scan_depth=" << scan.depth
                      << " scan_max_depth=" << scan.max_invocation_depth
                      << " scan_depth_bound=" << scan_bound
                      << " scan_within_bound="
                      << (scan.max_invocation_depth <= scan_bound ? "true" : "false")
                      << "\n";
            const auto& sort = encode_info.sort;
            const std::uint64_t sort_bound =
                2 * gpz::parprim::ceil_log2(sort.max_length) *
                gpz::parprim::ceil_log2(sort.max_length);
            std::cout << "block=" << index
                      << " sort_invocations=" << sort.invocations
                      << " sort_work=" << sort.work
                      << " sort_depth=" << sort.depth
                      << " sort_max_depth=" << sort.max_invocation_depth
                      << " sort_depth_bound=" << sort_bound
                      << " sort_within_bound="
                      << (sort.max_invocation_depth <= sort_bound ? "true" : "false")
                      << "\n";
        }
        ++index;
    }
    std::cout << "total_original_bytes=" << total_original << "\n"
              << "total_compressed_bytes=" << file.size() << "\n";
    if (total_original > 0) {
        std::printf("ratio=%.4f\n",
                    double(file.size()) / double(total_original));
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"gpz block compressor (BWT + RLE + MTF + VLE)"};
    app.require_subcommand(1);

    Args args;
    auto add_common = [&](CLI::App* cmd, bool takes_output) {
        cmd->add_option("input", args.input, "input path, - for stdin")->required();
        if (takes_output)
            cmd->add_option("output,--output", args.output, "output path, - for stdout");
    };

    auto* compress = app.add_subcommand("compress", "compress a file into an archive");
    add_common(compress, true);
    compress->add_option("--block-size", args.block_size, "maximum block size in bytes")
        ->check(CLI::PositiveNumber);
    compress->add_flag("--shared-table", args.shared_table,
                       "use one code table for every block");

    auto* decompress = app.add_subcommand("decompress", "restore a file from an archive");
    add_common(decompress, true);
    decompress->add_option("--multistart", args.multistart,
                           "inverse-BWT walker count")
        ->check(CLI::PositiveNumber);

    auto* verify = app.add_subcommand(
        "verify", "compress and decompress in memory, compare with the input");
    add_common(verify, false);
    verify->add_option("--block-size", args.block_size, "maximum block size in bytes")
        ->check(CLI::PositiveNumber);
    verify->add_option("--multistart", args.multistart, "inverse-BWT walker count")
        ->check(CLI::PositiveNumber);
    verify->add_flag("--shared-table", args.shared_table,
                     "use one code table for every block");

    auto* stats = app.add_subcommand("stats", "report per-block sizes of an archive");
    add_common(stats, false);
    stats->add_option("--multistart", args.multistart, "inverse-BWT walker count")
        ->check(CLI::PositiveNumber);
    stats->add_flag("--emit-cost", args.emit_cost,
                    "report scan/sort work and depth counters");

    CLI11_PARSE(app, argc, argv);

    std::string cleanup_path;
    try {
        if (compress->parsed() || decompress->parsed()) {
            const std::string out = args.resolved_output();
            if (out != "-")
                cleanup_path = out;
        }
        if (compress->parsed())
            return run_compress(args);
        if (decompress->parsed())
            return run_decompress(args);
        if (verify->parsed())
            return run_verify(args);
        return run_stats(args);
    } catch (const std::exception& e) {
        if (!cleanup_path.empty()) {
            std::error_code ec;
            std::filesystem::remove(cleanup_path, ec);
        }
        std::cerr << "gpz: " << e.what() << "\n";
        return 1;
    }
}
