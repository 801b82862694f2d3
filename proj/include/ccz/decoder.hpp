#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "ccz/container.hpp"
#include "ccz/types.hpp"

namespace ccz {

class CorruptArchive : public std::runtime_error {
public:
    explicit CorruptArchive(const std::string& what) : std::runtime_error("corrupt archive: " + what) {}
};

// A decoded entry with its absolute starting circle. remaining counts the
// circles it still has to fill; consumed_in_circle is the last circle in
// which it filled a position (0 = never).
struct LiveEntry {
    std::uint8_t ch = 0;
    std::uint64_t r1_abs = 0;
    std::uint32_t count = 0;
    std::uint32_t remaining = 0;
    std::uint64_t consumed_in_circle = 0;

    std::uint64_t last_circle() const { return r1_abs + count - 1; }
    bool active_at(std::uint64_t r) const { return r1_abs <= r && r <= last_circle(); }
};

// Rebase records advance the reference and yield no LiveEntry.
std::vector<LiveEntry> undo_delta(std::span<const CompressedEntry> entries);

// Raw entry stream ([delta][ch][count] triples). Throws CorruptArchive if the
// length is not a multiple of 3.
std::vector<LiveEntry> undo_delta(ByteView entry_stream);

// Optional record of which live entry filled each flagged position.
struct DecodeTrace {
    struct Fill {
        std::uint64_t offset;
        std::uint64_t circle;
        std::uint32_t entry;
    };
    std::vector<Fill> fills;
    std::vector<LiveEntry> entries;
};

Bytes decode_parts(const EncodedParts& parts, DecodeTrace* trace = nullptr);

// Parses and decodes a full archive. Container errors surface as ArchiveError,
// inconsistent streams as CorruptArchive.
Bytes decode(ByteView archive);

inline Bytes decompress(ByteView archive) { return decode(archive); }

}  // namespace ccz
