#include "ccz/container.hpp"

#include <algorithm>
#include <limits>

namespace ccz {

namespace {

using Section = ArchiveError::Section;
using Kind = ArchiveError::Kind;

std::uint64_t flag_bytes(std::uint64_t bits) { return (bits + 7) / 8; }

void put_le(Bytes& out, std::uint64_t value, int width) {
    for (int i = 0; i < width; ++i) {
        out.push_back(static_cast<std::uint8_t>(value >> (8 * i)));
    }
}

std::uint64_t get_le(ByteView in, std::size_t pos, int width) {
    std::uint64_t v = 0;
    for (int i = 0; i < width; ++i) {
        v |= static_cast<std::uint64_t>(in[pos + i]) << (8 * i);
    }
    return v;
}

}  // namespace

CompressedEntry CompressedEntry::run(int delta, std::uint8_t ch, int count) {
    if (delta < kMinDelta || delta > kMaxDelta) {
        throw std::invalid_argument("entry delta " + std::to_string(delta) + " outside [-128, 127]");
    }
    if (count < kMinRunCount || count > kMaxRunCount) {
        throw std::invalid_argument("entry count " + std::to_string(count) + " outside [2, 127]");
    }
    return {static_cast<std::uint8_t>(static_cast<std::int8_t>(delta)), ch, static_cast<std::uint8_t>(count)};
}

CompressedEntry CompressedEntry::rebase(int amount) {
    if (amount < 1 || amount > 255) {
        throw std::invalid_argument("rebase amount " + std::to_string(amount) + " outside [1, 255]");
    }
    return {static_cast<std::uint8_t>(amount), 0, 0};
}

ArchiveError::ArchiveError(Section section, Kind kind, const std::string& what)
    : std::runtime_error(std::string("corrupt archive (") + section_name(section) + "): " + what),
      section_(section),
      kind_(kind) {}

const char* section_name(ArchiveError::Section s) {
    switch (s) {
        case Section::header: return "header";
        case Section::flags: return "flags";
        case Section::literals: return "literals";
        case Section::entries: return "entries";
    }
    return "unknown";
}

Bytes pack_flags(const std::vector<bool>& bits) {
    Bytes out(flag_bytes(bits.size()), 0);
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (bits[i]) {
            out[i / 8] |= static_cast<std::uint8_t>(0x80u >> (i % 8));
        }
    }
    return out;
}

std::vector<bool> unpack_flags(ByteView packed, std::uint64_t bit_count) {
    if (packed.size() != flag_bytes(bit_count)) {
        throw ArchiveError(Section::flags, Kind::truncated,
                           "flag bitmap is " + std::to_string(packed.size()) + " bytes, expected " +
                               std::to_string(flag_bytes(bit_count)));
    }
    std::vector<bool> bits(bit_count);
    for (std::uint64_t i = 0; i < bit_count; ++i) {
        bits[i] = (packed[i / 8] >> (7 - i % 8)) & 1u;
    }
    return bits;
}

std::uint64_t archive_size(std::uint64_t original_len, std::uint64_t literal_len, std::uint64_t entry_count) {
    return kHeaderSize + flag_bytes(original_len) + literal_len + 3 * entry_count;
}

Bytes serialize(const EncodedParts& parts) {
    if (parts.entries.size() > std::numeric_limits<std::uint32_t>::max()) {
        throw std::length_error("too many entries for a single archive");
    }
    Bytes out;
    out.reserve(archive_size(parts.flags.size(), parts.literals.size(), parts.entries.size()));
    out.insert(out.end(), kMagic.begin(), kMagic.end());
    out.push_back(kFormatVersion);
    put_le(out, parts.flags.size(), 8);
    put_le(out, parts.literals.size(), 8);
    put_le(out, parts.entries.size(), 4);

    const auto flags = pack_flags(parts.flags);
    out.insert(out.end(), flags.begin(), flags.end());
    out.insert(out.end(), parts.literals.begin(), parts.literals.end());
    for (const auto& e : parts.entries) {
        out.push_back(e.delta);
        out.push_back(e.ch);
        out.push_back(e.count);
    }
    return out;
}

bool looks_like_archive(ByteView data) {
    return data.size() >= kMagic.size() && std::equal(kMagic.begin(), kMagic.end(), data.begin());
}

ArchiveHeader parse_header(ByteView archive) {
    if (archive.size() < kMagic.size() || !looks_like_archive(archive)) {
        throw ArchiveError(Section::header, Kind::bad_magic, "bad magic, expected \"CCZ1\"");
    }
    if (archive.size() < kHeaderSize) {
        throw ArchiveError(Section::header, Kind::truncated,
                           "header is " + std::to_string(archive.size()) + " bytes, expected 25");
    }
    ArchiveHeader h;
    h.version = archive[4];
    if (h.version != kFormatVersion) {
        throw ArchiveError(Section::header, Kind::bad_version, "unsupported version " + std::to_string(h.version));
    }
    h.original_len = get_le(archive, 5, 8);
    h.literal_len = get_le(archive, 13, 8);
    h.entry_count = static_cast<std::uint32_t>(get_le(archive, 21, 4));
    if (h.literal_len > h.original_len) {
        throw ArchiveError(Section::header, Kind::inconsistent,
                           "literal_len " + std::to_string(h.literal_len) + " exceeds original_len " +
                               std::to_string(h.original_len));
    }
    return h;
}

EncodedParts parse(ByteView archive) {
    const auto h = parse_header(archive);
    std::size_t pos = kHeaderSize;
    auto remaining = [&] { return archive.size() - pos; };

    const auto nflag = flag_bytes(h.original_len);
    if (remaining() < nflag) {
        throw ArchiveError(Section::flags, Kind::truncated,
                           "need " + std::to_string(nflag) + " bytes, have " + std::to_string(remaining()));
    }
    EncodedParts parts;
    parts.flags = unpack_flags(archive.subspan(pos, nflag), h.original_len);
    pos += nflag;

    if (remaining() < h.literal_len) {
        throw ArchiveError(Section::literals, Kind::truncated,
                           "need " + std::to_string(h.literal_len) + " bytes, have " + std::to_string(remaining()));
    }
    parts.literals.assign(archive.begin() + pos, archive.begin() + pos + h.literal_len);
    pos += h.literal_len;

    const std::uint64_t entry_bytes = 3ull * h.entry_count;
    if (remaining() < entry_bytes) {
        throw ArchiveError(Section::entries, Kind::truncated,
                           "need " + std::to_string(entry_bytes) + " bytes, have " + std::to_string(remaining()));
    }
    if (remaining() > entry_bytes) {
        throw ArchiveError(Section::entries, Kind::trailing_data,
                           std::to_string(remaining() - entry_bytes) + " bytes after the entry stream");
    }

    std::uint64_t covered = 0;
    parts.entries.reserve(h.entry_count);
    for (std::uint32_t i = 0; i < h.entry_count; ++i, pos += 3) {
        const CompressedEntry e{archive[pos], archive[pos + 1], archive[pos + 2]};
        if (e.is_rebase()) {
            if (e.ch != 0 || e.delta == 0) {
                throw ArchiveError(Section::entries, Kind::illegal_entry,
                                   "rebase entry " + std::to_string(i) + " must have ch 0 and amount 1..255");
            }
        } else if (e.count < kMinRunCount || e.count > kMaxRunCount) {
            throw ArchiveError(Section::entries, Kind::illegal_count,
                               "entry " + std::to_string(i) + " has illegal count " + std::to_string(e.count));
        } else {
            covered += e.count;
        }
        parts.entries.push_back(e);
    }

    const auto ones = static_cast<std::uint64_t>(std::count(parts.flags.begin(), parts.flags.end(), true));
    if (ones + h.literal_len != h.original_len) {
        throw ArchiveError(Section::flags, Kind::inconsistent,
                           std::to_string(ones) + " set flags + " + std::to_string(h.literal_len) +
                               " literals != original_len " + std::to_string(h.original_len));
    }
    if (ones != covered) {
        throw ArchiveError(Section::entries, Kind::inconsistent,
                           "entries cover " + std::to_string(covered) + " bytes but " + std::to_string(ones) +
                               " flags are set");
    }
    return parts;
}

}  // namespace ccz
