#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ccz {

// original / compressed. Throws std::invalid_argument if compressed == 0.
double compression_factor(std::uint64_t original_size, std::uint64_t compressed_size);

struct Codecs {
    bool cc = true;
    bool rle = true;
};

struct BenchRow {
    std::string name;
    std::uint64_t original = 0;
    std::optional<std::uint64_t> cc_size;
    std::optional<std::uint64_t> rle_size;
    bool verified = false;

    std::optional<double> cc_factor() const;
    std::optional<double> rle_factor() const;
};

struct BenchWarning {
    std::string name;
    std::string message;
};

struct BenchReport {
    std::vector<BenchRow> rows;
    std::vector<BenchWarning> warnings;

    // Size-weighted aggregate: sum of originals over sum of compressed sizes.
    BenchRow overall() const;
};

class RoundtripFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Encodes every file directly inside `dir` with the selected codecs and checks
// each roundtrip byte for byte. Rows are ordered by file name. Unreadable files
// become warnings; a failed roundtrip throws RoundtripFailure.
// threads == 0 picks the hardware concurrency.
BenchReport run_corpus(const std::filesystem::path& dir, Codecs codecs = {}, unsigned threads = 0);

// Benchmarks a single in-memory buffer.
BenchRow bench_buffer(const std::string& name, const std::vector<std::uint8_t>& data, Codecs codecs = {});

enum class ReportFormat { csv, markdown };

std::string format_factor(double factor);
std::string emit_report(const BenchReport& report, ReportFormat format);

}  // namespace ccz
