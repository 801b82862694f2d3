#include "ccz/bench.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

#include "ccz/decoder.hpp"
#include "ccz/encoder.hpp"
#include "ccz/io.hpp"
#include "ccz/rle.hpp"

namespace ccz {

namespace fs = std::filesystem;

double compression_factor(std::uint64_t original_size, std::uint64_t compressed_size) {
    if (compressed_size == 0) {
        throw std::invalid_argument("compression_factor: compressed size is zero");
    }
    return static_cast<double>(original_size) / static_cast<double>(compressed_size);
}

namespace {

// An empty input compressed to nothing has factor 1.
std::optional<double> factor_of(std::uint64_t original, std::optional<std::uint64_t> compressed) {
    if (!compressed) {
        return std::nullopt;
    }
    if (*compressed == 0 && original == 0) {
        return 1.0;
    }
    return compression_factor(original, *compressed);
}

}  // namespace

std::optional<double> BenchRow::cc_factor() const { return factor_of(original, cc_size); }
std::optional<double> BenchRow::rle_factor() const { return factor_of(original, rle_size); }

BenchRow BenchReport::overall() const {
    BenchRow total;
    total.name = "overall";
    total.verified = true;
    for (const auto& row : rows) {
        total.original += row.original;
        if (row.cc_size) {
            total.cc_size = total.cc_size.value_or(0) + *row.cc_size;
        }
        if (row.rle_size) {
            total.rle_size = total.rle_size.value_or(0) + *row.rle_size;
        }
        total.verified = total.verified && row.verified;
    }
    return total;
}

BenchRow bench_buffer(const std::string& name, const std::vector<std::uint8_t>& data, Codecs codecs) {
    BenchRow row;
    row.name = name;
    row.original = data.size();
    if (codecs.cc) {
        const auto archive = compress(data);
        if (decompress(archive) != data) {
            throw RoundtripFailure("CC roundtrip failed for " + name);
        }
        row.cc_size = archive.size();
    }
    if (codecs.rle) {
        const auto packed = rle_encode(data);
        if (rle_decode(packed) != data) {
            throw RoundtripFailure("RLE roundtrip failed for " + name);
        }
        row.rle_size = packed.size();
    }
    row.verified = true;
    return row;
}

BenchReport run_corpus(const fs::path& dir, Codecs codecs, unsigned threads) {
    if (!fs::is_directory(dir)) {
        throw std::runtime_error("corpus directory " + dir.string() + " is not a readable directory");
    }
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir)) {
        std::error_code ec;
        if (!entry.is_directory(ec)) {
            files.push_back(entry.path());
        }
    }
    std::sort(files.begin(), files.end(),
              [](const fs::path& a, const fs::path& b) { return a.filename().string() < b.filename().string(); });

    struct Slot {
        std::optional<BenchRow> row;
        std::optional<BenchWarning> warning;
    };
    std::vector<Slot> slots(files.size());
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;

    auto worker = [&] {
        for (std::size_t i = next++; i < files.size(); i = next++) {
            const auto name = files[i].filename().string();
            Bytes data;
            try {
                data = read_file(files[i]);
            } catch (const std::exception& e) {
                slots[i].warning = BenchWarning{name, e.what()};
                continue;
            }
            try {
                slots[i].row = bench_buffer(name, data, codecs);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) {
                    failure = std::current_exception();
                }
                next = files.size();
            }
        }
    };

    if (threads == 0) {
        threads = std::max(1u, std::thread::hardware_concurrency());
    }
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(files.size(), 1)));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < threads; ++t) {
        pool.emplace_back(worker);
    }
    worker();
    for (auto& t : pool) {
        t.join();
    }
    if (failure) {
        std::rethrow_exception(failure);
    }

    BenchReport report;
    for (auto& slot : slots) {
        if (slot.row) {
            report.rows.push_back(std::move(*slot.row));
        } else if (slot.warning) {
            report.warnings.push_back(std::move(*slot.warning));
        }
    }
    return report;
}

std::string format_factor(double factor) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, factor, std::chars_format::fixed, 3);
    return ec == std::errc{} ? std::string(buf, end) : std::string("nan");
}

namespace {

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    return out + "\"";
}

std::string md_field(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '|') {
            out += '\\';
        }
        out += c;
    }
    return out;
}

std::vector<std::string> cells(const BenchRow& row) {
    auto opt_size = [](std::optional<std::uint64_t> v) { return v ? std::to_string(*v) : std::string(); };
    auto opt_factor = [](std::optional<double> v) { return v ? format_factor(*v) : std::string(); };
    return {row.name,
            std::to_string(row.original),
            opt_size(row.cc_size),
            opt_factor(row.cc_factor()),
            opt_size(row.rle_size),
            opt_factor(row.rle_factor()),
            row.verified ? "true" : "false"};
}

const std::vector<std::string> kColumns = {"name", "original", "cc_size", "cc_factor", "rle_size", "rle_factor",
                                           "verified"};

}  // namespace

std::string emit_report(const BenchReport& report, ReportFormat format) {
    std::vector<std::vector<std::string>> table;
    for (const auto& row : report.rows) {
        table.push_back(cells(row));
    }
    if (!report.rows.empty()) {
        table.push_back(cells(report.overall()));
    }

    std::ostringstream out;
    if (format == ReportFormat::csv) {
        auto line = [&](const std::vector<std::string>& fields, bool quote) {
            for (std::size_t i = 0; i < fields.size(); ++i) {
                out << (i ? "," : "") << (quote ? csv_field(fields[i]) : fields[i]);
            }
            out << '\n';
        };
        line(kColumns, false);
        for (const auto& r : table) {
            line(r, true);
        }
    } else {
        auto line = [&](const std::vector<std::string>& fields) {
            out << '|';
            for (const auto& f : fields) {
                out << ' ' << md_field(f) << " |";
            }
            out << '\n';
        };
        line(kColumns);
        out << '|';
        for (std::size_t i = 0; i < kColumns.size(); ++i) {
            out << (i == 0 ? "---|" : "---:|");
        }
        out << '\n';
        for (const auto& r : table) {
            line(r);
        }
    }
    return out.str();
}

}  // namespace ccz
