#include <gtest/gtest.h>

#include "ccz/container.hpp"
#include "ccz/encoder.hpp"
#include "oracles.hpp"

namespace ccz {
namespace {

std::vector<bool> bits(std::string_view s) {
    std::vector<bool> out;
    for (char c : s) {
        out.push_back(c == '1');
    }
    return out;
}

const Bytes kAbabbaArchive = {
    'C', 'C', 'Z', '1', 0x01,                          // magic, version
    0x06, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00,    // original_len
    0x03, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00,    // literal_len
    0x01, 0x00, 0x00, 0x00,                            // entry_count
    0x58,                                              // flags 010110
    'A', 'A', 'A',                                     // literals
    0x01, 'B', 0x03,                                   // (+1, 'B', 3)
};

ArchiveError::Kind parse_error_kind(const Bytes& archive, ArchiveError::Section* section = nullptr) {
    try {
        parse(archive);
    } catch (const ArchiveError& e) {
        if (section) {
            *section = e.section();
        }
        return e.kind();
    }
    ADD_FAILURE() << "parse accepted a malformed archive";
    return ArchiveError::Kind::inconsistent;
}

TEST(PackFlags, Examples) {
    EXPECT_EQ(pack_flags(bits("0100")), (Bytes{0x40}));
    EXPECT_EQ(pack_flags(bits("010110")), (Bytes{0x58}));
    EXPECT_EQ(pack_flags(bits("010010000001")), (Bytes{0x48, 0x10}));
    EXPECT_TRUE(pack_flags({}).empty());
    EXPECT_EQ(pack_flags(bits("11111111")), (Bytes{0xff}));
    EXPECT_EQ(pack_flags(bits("000000001")), (Bytes{0x00, 0x80}));
}

TEST(UnpackFlags, Examples) {
    EXPECT_EQ(unpack_flags(Bytes{0x40}, 4), bits("0100"));
    EXPECT_EQ(unpack_flags(Bytes{0x58}, 6), bits("010110"));
    EXPECT_EQ(unpack_flags(Bytes{0x48, 0x10}, 12), bits("010010000001"));
    // Padding bits are ignored.
    EXPECT_EQ(unpack_flags(Bytes{0x5f}, 4), bits("0101"));
}

TEST(UnpackFlags, LengthMismatch) {
    EXPECT_THROW(unpack_flags(Bytes{0x40, 0x00}, 4), ArchiveError);
    EXPECT_THROW(unpack_flags(Bytes{}, 1), ArchiveError);
}

TEST(PackFlags, InverseOnRandomBits) {
    std::mt19937_64 rng(3);
    for (int iter = 0; iter < 300; ++iter) {
        std::vector<bool> b(rng() % 100);
        for (std::size_t i = 0; i < b.size(); ++i) {
            b[i] = rng() & 1;
        }
        const auto packed = pack_flags(b);
        ASSERT_EQ(packed.size(), (b.size() + 7) / 8);
        ASSERT_EQ(unpack_flags(packed, b.size()), b);
    }
}

TEST(CompressedEntry, Validation) {
    EXPECT_EQ(CompressedEntry::run(-1, 'x', 3).delta, 0xff);
    EXPECT_EQ(CompressedEntry::run(-128, 'x', 127).signed_delta(), -128);
    EXPECT_THROW(CompressedEntry::run(128, 'x', 3), std::invalid_argument);
    EXPECT_THROW(CompressedEntry::run(0, 'x', 1), std::invalid_argument);
    EXPECT_THROW(CompressedEntry::run(0, 'x', 128), std::invalid_argument);
    EXPECT_EQ(CompressedEntry::rebase(255).rebase_amount(), 255);
    EXPECT_TRUE(CompressedEntry::rebase(1).is_rebase());
    EXPECT_THROW(CompressedEntry::rebase(0), std::invalid_argument);
    EXPECT_THROW(CompressedEntry::rebase(256), std::invalid_argument);
}

TEST(Serialize, LayoutSizes) {
    const auto abc = serialize(encode(as_bytes("ABC")));
    EXPECT_EQ(abc.size(), 29u);
    EXPECT_EQ(abc[25], 0x00);
    EXPECT_EQ(std::string(abc.begin() + 26, abc.end()), "ABC");

    EXPECT_EQ(serialize(encode({})).size(), kHeaderSize);
    EXPECT_EQ(serialize(encode(as_bytes("ABABBA"))).size(), 32u);
}

TEST(Serialize, GoldenAbabba) {
    EXPECT_EQ(serialize(encode(as_bytes("ABABBA"))), kAbabbaArchive);

    const auto parts = parse(kAbabbaArchive);
    EXPECT_EQ(parts.flags, bits("010110"));
    EXPECT_EQ(parts.literals, to_bytes("AAA"));
    ASSERT_EQ(parts.entries.size(), 1u);
    EXPECT_EQ(parts.entries[0], CompressedEntry::run(1, 'B', 3));
}

TEST(Parse, InverseOfSerialize) {
    for (auto s : {"", "ABC", "ABABBA", "THEPHONEBLAH"}) {
        const auto parts = encode(as_bytes(s));
        const auto archive = serialize(parts);
        EXPECT_EQ(parse(archive), parts) << s;
        EXPECT_EQ(serialize(parse(archive)), archive) << s;
    }
}

TEST(Parse, BadMagic) {
    auto a = kAbabbaArchive;
    std::copy_n("XXXX", 4, a.begin());
    ArchiveError::Section section{};
    EXPECT_EQ(parse_error_kind(a, &section), ArchiveError::Kind::bad_magic);
    EXPECT_EQ(section, ArchiveError::Section::header);
    EXPECT_EQ(parse_error_kind(Bytes{'C', 'C'}), ArchiveError::Kind::bad_magic);
}

TEST(Parse, UnsupportedVersion) {
    auto a = kAbabbaArchive;
    a[4] = 2;
    EXPECT_EQ(parse_error_kind(a), ArchiveError::Kind::bad_version);
}

TEST(Parse, TruncatedSectionsAreNamed) {
    ArchiveError::Section section{};
    EXPECT_EQ(parse_error_kind(Bytes(kAbabbaArchive.begin(), kAbabbaArchive.begin() + 20), &section),
              ArchiveError::Kind::truncated);
    EXPECT_EQ(section, ArchiveError::Section::header);

    EXPECT_EQ(parse_error_kind(Bytes(kAbabbaArchive.begin(), kAbabbaArchive.begin() + 25), &section),
              ArchiveError::Kind::truncated);
    EXPECT_EQ(section, ArchiveError::Section::flags);

    EXPECT_EQ(parse_error_kind(Bytes(kAbabbaArchive.begin(), kAbabbaArchive.begin() + 28), &section),
              ArchiveError::Kind::truncated);
    EXPECT_EQ(section, ArchiveError::Section::literals);

    EXPECT_EQ(parse_error_kind(Bytes(kAbabbaArchive.begin(), kAbabbaArchive.end() - 1), &section),
              ArchiveError::Kind::truncated);
    EXPECT_EQ(section, ArchiveError::Section::entries);

    auto extra = kAbabbaArchive;
    extra.push_back(0);
    EXPECT_EQ(parse_error_kind(extra), ArchiveError::Kind::trailing_data);
}

TEST(Parse, IllegalCounts) {
    auto a = kAbabbaArchive;
    a.back() = 1;
    ArchiveError::Section section{};
    EXPECT_EQ(parse_error_kind(a, &section), ArchiveError::Kind::illegal_count);
    EXPECT_EQ(section, ArchiveError::Section::entries);
    a.back() = 128;
    EXPECT_EQ(parse_error_kind(a), ArchiveError::Kind::illegal_count);

    // A rebase must carry ch 0 and a non-zero amount.
    a.back() = 0;
    EXPECT_EQ(parse_error_kind(a), ArchiveError::Kind::illegal_entry);
    a[a.size() - 2] = 0;
    a[a.size() - 3] = 0;
    EXPECT_EQ(parse_error_kind(a), ArchiveError::Kind::illegal_entry);
}

TEST(Parse, FlagLiteralInconsistency) {
    auto a = kAbabbaArchive;
    a[25] = 0x78;  // 011110: four set flags, but only 3 + 4 != 6
    ArchiveError::Section section{};
    EXPECT_EQ(parse_error_kind(a, &section), ArchiveError::Kind::inconsistent);
    EXPECT_EQ(section, ArchiveError::Section::flags);

    // Flags agree with literals, but the entry covers 4 positions, not 3.
    a = kAbabbaArchive;
    a.back() = 4;
    EXPECT_EQ(parse_error_kind(a, &section), ArchiveError::Kind::inconsistent);
    EXPECT_EQ(section, ArchiveError::Section::entries);

    // literal_len > original_len
    a = kAbabbaArchive;
    a[13] = 7;
    EXPECT_EQ(parse_error_kind(a, &section), ArchiveError::Kind::inconsistent);
    EXPECT_EQ(section, ArchiveError::Section::header);
}

TEST(Serialize, SizeLawOnRandomInputs) {
    testing::InputGen gen(5);
    for (int iter = 0; iter < 500; ++iter) {
        const auto input = gen.any(1500);
        const auto parts = encode(input);
        const auto archive = serialize(parts);
        ASSERT_EQ(archive.size(),
                  kHeaderSize + (input.size() + 7) / 8 + parts.literals.size() + 3 * parts.entries.size());
        ASSERT_EQ(archive.size(), archive_size(input.size(), parts.literals.size(), parts.entries.size()));
        ASSERT_EQ(parse(archive), parts);
    }
}

}  // namespace
}  // namespace ccz
