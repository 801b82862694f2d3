#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "ccz/types.hpp"

namespace ccz {

inline constexpr std::array<std::uint8_t, 4> kMagic = {'C', 'C', 'Z', '1'};
inline constexpr std::uint8_t kFormatVersion = 1;
inline constexpr std::size_t kHeaderSize = 25;

inline constexpr int kMinRunCount = 2;
inline constexpr int kMaxRunCount = 127;
inline constexpr int kMinDelta = -128;
inline constexpr int kMaxDelta = 127;

// One 3-byte record of the entry stream, stored on disk as [delta][ch][count].
//
// count in [2, 127]: a real run; delta is a two's-complement offset of r1
// against the current reference node.
// count == 0: a rebase record; ch is 0 and delta in [1, 255] is an unsigned
// amount added to the reference r1.
struct CompressedEntry {
    std::uint8_t delta = 0;
    std::uint8_t ch = 0;
    std::uint8_t count = 0;

    static CompressedEntry run(int delta, std::uint8_t ch, int count);
    static CompressedEntry rebase(int amount);

    bool is_rebase() const { return count == 0; }
    int signed_delta() const { return static_cast<std::int8_t>(delta); }
    int rebase_amount() const { return delta; }

    bool operator==(const CompressedEntry&) const = default;
};

struct ArchiveHeader {
    std::uint8_t version = kFormatVersion;
    std::uint64_t original_len = 0;
    std::uint64_t literal_len = 0;
    std::uint32_t entry_count = 0;
};

// The three streams produced by the encoder. flags holds one bit per input
// byte: false = literal, true = filled from an entry.
struct EncodedParts {
    std::vector<bool> flags;
    Bytes literals;
    std::vector<CompressedEntry> entries;

    std::uint64_t original_len() const { return flags.size(); }
    bool operator==(const EncodedParts&) const = default;
};

class ArchiveError : public std::runtime_error {
public:
    enum class Section { header, flags, literals, entries };
    enum class Kind { bad_magic, bad_version, truncated, inconsistent, illegal_count, illegal_entry, trailing_data };

    ArchiveError(Section section, Kind kind, const std::string& what);

    Section section() const { return section_; }
    Kind kind() const { return kind_; }

private:
    Section section_;
    Kind kind_;
};

const char* section_name(ArchiveError::Section s);

// MSB-first: bit i lands in bit (7 - i % 8) of byte i / 8; the tail is zero padded.
Bytes pack_flags(const std::vector<bool>& bits);
std::vector<bool> unpack_flags(ByteView packed, std::uint64_t bit_count);

std::uint64_t archive_size(std::uint64_t original_len, std::uint64_t literal_len, std::uint64_t entry_count);

Bytes serialize(const EncodedParts& parts);
EncodedParts parse(ByteView archive);
ArchiveHeader parse_header(ByteView archive);

bool looks_like_archive(ByteView data);

}  // namespace ccz
