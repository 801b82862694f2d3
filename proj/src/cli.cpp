#include "ccz/cli.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <ostream>

#include "ccz/bench.hpp"
#include "ccz/circles.hpp"
#include "ccz/container.hpp"
#include "ccz/decoder.hpp"
#include "ccz/encoder.hpp"
#include "ccz/io.hpp"

namespace ccz::cli {

namespace {

namespace fs = std::filesystem;

struct Config {
    std::string input;
    std::string output;
    std::string corpus;
    std::string format = "markdown";
    std::size_t limit = 64;
    unsigned threads = 0;
    int verbosity = 0;
};

std::string show_byte(std::uint8_t b) {
    if (b >= 0x20 && b < 0x7f && b != '\'' && b != '\\') {
        return std::string("'") + static_cast<char>(b) + "'";
    }
    char buf[8];
    std::snprintf(buf, sizeof buf, "0x%02x", b);
    return buf;
}

std::string quote(ByteView bytes) {
    std::string out = "\"";
    for (auto b : bytes) {
        if (b == '"' || b == '\\') {
            out += '\\';
            out += static_cast<char>(b);
        } else if (b >= 0x20 && b < 0x7f) {
            out += static_cast<char>(b);
        } else {
            char buf[8];
            std::snprintf(buf, sizeof buf, "\\x%02x", b);
            out += buf;
        }
    }
    return out + "\"";
}

std::string show_delta(int d) { return (d >= 0 ? "+" : "") + std::to_string(d); }

void print_run(std::ostream& out, const Run& run) {
    out << "  " << show_byte(run.ch) << " r1=" << run.r1 << " count=" << run.count << " occurrences=[";
    for (std::size_t i = 0; i < run.occurrences.size(); ++i) {
        out << (i ? "," : "") << run.occurrences[i];
    }
    out << "]\n";
}

template <typename T, typename F>
void print_limited(std::ostream& out, const std::vector<T>& items, std::size_t limit, F&& print) {
    const auto shown = std::min(items.size(), limit);
    for (std::size_t i = 0; i < shown; ++i) {
        print(items[i]);
    }
    if (shown < items.size()) {
        out << "  ... (" << items.size() - shown << " more)\n";
    }
}

int cmd_compress(const Config& cfg, std::ostream& out, std::ostream& err) {
    const auto input = read_file(cfg.input);
    const auto archive = compress(input);
    write_file(cfg.output, archive);
    out << "original " << input.size() << " bytes, compressed " << archive.size() << " bytes, factor "
        << format_factor(compression_factor(input.size(), archive.size())) << '\n';
    if (cfg.verbosity > 0) {
        err << "wrote " << cfg.output << '\n';
    }
    return 0;
}

int cmd_decompress(const Config& cfg, std::ostream& out, std::ostream& err) {
    const auto archive = read_file(cfg.input);
    const auto data = decompress(archive);
    write_file(cfg.output, data);
    out << "decompressed " << archive.size() << " bytes to " << data.size() << " bytes\n";
    if (cfg.verbosity > 0) {
        err << "wrote " << cfg.output << '\n';
    }
    return 0;
}

void inspect_archive(const Config& cfg, ByteView data, std::ostream& out) {
    const auto header = parse_header(data);
    const auto parts = parse(data);
    out << "archive: " << cfg.input << " (" << data.size() << " bytes)\n"
        << "magic: CCZ1\n"
        << "version: " << static_cast<int>(header.version) << '\n'
        << "original_len: " << header.original_len << '\n'
        << "literal_len: " << header.literal_len << '\n'
        << "entry_count: " << header.entry_count << '\n'
        << "flag_bytes: " << (header.original_len + 7) / 8 << '\n';

    const auto live = undo_delta(parts.entries);
    out << "entries:\n";
    std::size_t real = 0;
    std::size_t shown = 0;
    for (std::size_t i = 0; i < parts.entries.size() && shown < cfg.limit; ++i, ++shown) {
        const auto& e = parts.entries[i];
        if (e.is_rebase()) {
            out << "  #" << i << " rebase +" << e.rebase_amount() << '\n';
            continue;
        }
        out << "  #" << i << " (" << show_delta(e.signed_delta()) << "," << show_byte(e.ch) << ","
            << static_cast<int>(e.count) << ") r1=" << live[real].r1_abs << '\n';
        ++real;
    }
    if (shown < parts.entries.size()) {
        out << "  ... (" << parts.entries.size() - shown << " more)\n";
    }
}

void inspect_plain(const Config& cfg, ByteView data, std::ostream& out) {
    const auto seg = split_circles(data);
    const auto views = circle_views(seg, data);
    const auto result = encode_detailed(data);

    out << "input: " << cfg.input << " (" << data.size() << " bytes)\n";
    out << "circles: " << seg.size() << '\n';
    out << "segmentation: [";
    for (std::size_t i = 0; i < std::min(views.size(), cfg.limit); ++i) {
        out << (i ? "," : "") << quote(views[i]);
    }
    out << (views.size() > cfg.limit ? ",...]\n" : "]\n");

    out << "runs: " << result.runs.size() << '\n';
    print_limited(out, result.runs, cfg.limit, [&](const Run& r) { print_run(out, r); });
    out << "removed as redundant: " << result.removed.size() << '\n';
    print_limited(out, result.removed, cfg.limit, [&](const Run& r) { print_run(out, r); });
    if (!result.dropped.empty()) {
        out << "dropped (delta below -128): " << result.dropped.size() << '\n';
        print_limited(out, result.dropped, cfg.limit, [&](const Run& r) { print_run(out, r); });
    }
    const auto size = archive_size(data.size(), result.parts.literals.size(), result.parts.entries.size());
    out << "literals: " << result.parts.literals.size() << '\n'
        << "entries: " << result.parts.entries.size() << '\n'
        << "archive_size: " << size << " (factor " << format_factor(compression_factor(data.size(), size)) << ")\n";
}

int cmd_inspect(const Config& cfg, std::ostream& out) {
    const auto data = read_file(cfg.input);
    if (looks_like_archive(data)) {
        inspect_archive(cfg, data, out);
    } else {
        inspect_plain(cfg, data, out);
    }
    return 0;
}

int cmd_bench(const Config& cfg, std::ostream& out, std::ostream& err) {
    const auto format = cfg.format == "csv" ? ReportFormat::csv : ReportFormat::markdown;
    const auto report = run_corpus(cfg.corpus, Codecs{}, cfg.threads);
    for (const auto& w : report.warnings) {
        err << "warning: skipped " << w.name << ": " << w.message << '\n';
    }
    out << emit_report(report, format);
    return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Concentric circles compressor", "ccz"};
    app.require_subcommand(1);
    Config cfg;
    app.add_flag("-v,--verbose", cfg.verbosity, "Print progress to stderr");

    auto* compress_cmd = app.add_subcommand("compress", "Compress a file into a CCZ1 archive");
    compress_cmd->add_option("input", cfg.input, "Input file")->required();
    compress_cmd->add_option("output", cfg.output, "Archive to write")->required();

    auto* decompress_cmd = app.add_subcommand("decompress", "Restore the original file from an archive");
    decompress_cmd->add_option("input", cfg.input, "Archive file")->required();
    decompress_cmd->add_option("output", cfg.output, "File to write")->required();

    auto* inspect_cmd = app.add_subcommand("inspect", "Show circles and runs of a file, or the contents of an archive");
    inspect_cmd->add_option("input", cfg.input, "Plain file or archive")->required();
    inspect_cmd->add_option("--limit", cfg.limit, "Maximum circles/runs/entries to list")->capture_default_str();

    auto* bench_cmd = app.add_subcommand("bench", "Compression factors of CC and naive RLE over a directory");
    bench_cmd->add_option("corpus", cfg.corpus, "Directory of files")->required();
    bench_cmd->add_option("--format", cfg.format, "Report format")
        ->check(CLI::IsMember({"csv", "markdown"}))
        ->capture_default_str();
    bench_cmd->add_option("--threads", cfg.threads, "Worker threads (0 = all cores)")->capture_default_str();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err);
    }

    try {
        if (compress_cmd->parsed()) {
            return cmd_compress(cfg, out, err);
        }
        if (decompress_cmd->parsed()) {
            return cmd_decompress(cfg, out, err);
        }
        if (inspect_cmd->parsed()) {
            return cmd_inspect(cfg, out);
        }
        return cmd_bench(cfg, out, err);
    } catch (const std::exception& e) {
        err << "ccz: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace ccz::cli
