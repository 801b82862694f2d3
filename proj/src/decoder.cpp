#include "ccz/decoder.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <set>

#include "ccz/circles.hpp"
#include "ccz/encoder.hpp"

namespace ccz {

std::vector<LiveEntry> undo_delta(std::span<const CompressedEntry> entries) {
    std::vector<LiveEntry> out;
    out.reserve(entries.size());
    DeltaContext ctx;
    for (const auto& e : entries) {
        if (e.is_rebase()) {
            ctx.ref_r1 += e.rebase_amount();
            continue;
        }
        const auto r1 = ctx.ref_r1 + e.signed_delta();
        if (r1 < 1) {
            throw CorruptArchive("entry for byte " + std::to_string(e.ch) + " starts at circle " + std::to_string(r1));
        }
        LiveEntry live;
        live.ch = e.ch;
        live.r1_abs = static_cast<std::uint64_t>(r1);
        live.count = e.count;
        live.remaining = e.count;
        ctx.observe(live.r1_abs, live.count);
        out.push_back(live);
    }
    return out;
}

std::vector<LiveEntry> undo_delta(ByteView entry_stream) {
    if (entry_stream.size() % 3 != 0) {
        throw CorruptArchive("entry stream of " + std::to_string(entry_stream.size()) +
                             " bytes is not a multiple of 3");
    }
    std::vector<CompressedEntry> entries;
    entries.reserve(entry_stream.size() / 3);
    for (std::size_t i = 0; i < entry_stream.size(); i += 3) {
        entries.push_back({entry_stream[i], entry_stream[i + 1], entry_stream[i + 2]});
    }
    return undo_delta(entries);
}

namespace {

// Live entries of the current circle, kept in serialized order. Entries join
// when the circle reaches their r1 and leave once exhausted.
class CircleCursor {
public:
    explicit CircleCursor(std::vector<LiveEntry>& entries) : entries_(entries), pending_(entries.size()) {
        std::iota(pending_.begin(), pending_.end(), 0u);
        std::stable_sort(pending_.begin(), pending_.end(),
                         [&](std::uint32_t a, std::uint32_t b) { return entries_[a].r1_abs < entries_[b].r1_abs; });
        activate();
    }

    std::uint64_t circle() const { return r_; }

    void advance() {
        for (auto idx : active_) {
            if (entries_[idx].consumed_in_circle != r_) {
                throw CorruptArchive("entry " + std::to_string(idx) + " was not used in circle " + std::to_string(r_));
            }
        }
        ++r_;
        prevpos_ = -1;
        activate();
    }

    // Next entry after prevpos that is active here, or -1.
    std::int64_t next_candidate() const {
        auto it = prevpos_ < 0 ? active_.begin() : active_.upper_bound(static_cast<std::uint32_t>(prevpos_));
        return it == active_.end() ? -1 : static_cast<std::int64_t>(*it);
    }

    std::uint8_t consume(std::uint32_t idx) {
        auto& e = entries_[idx];
        if (e.consumed_in_circle == r_) {
            throw CorruptArchive("entry " + std::to_string(idx) + " used twice in circle " + std::to_string(r_));
        }
        e.consumed_in_circle = r_;
        --e.remaining;
        prevpos_ = idx;
        if (e.remaining == 0) {
            active_.erase(idx);
        }
        return e.ch;
    }

    bool all_consumed() const {
        return active_.empty() && next_pending_ == pending_.size();
    }

private:
    void activate() {
        while (next_pending_ < pending_.size() && entries_[pending_[next_pending_]].r1_abs == r_) {
            active_.insert(pending_[next_pending_++]);
        }
        if (next_pending_ < pending_.size() && entries_[pending_[next_pending_]].r1_abs < r_) {
            throw CorruptArchive("entry starting at circle " + std::to_string(entries_[pending_[next_pending_]].r1_abs) +
                                 " was never reached");
        }
    }

    std::vector<LiveEntry>& entries_;
    std::vector<std::uint32_t> pending_;
    std::size_t next_pending_ = 0;
    std::set<std::uint32_t> active_;
    std::uint64_t r_ = 1;
    std::int64_t prevpos_ = -1;
};

}  // namespace

Bytes decode_parts(const EncodedParts& parts, DecodeTrace* trace) {
    auto entries = undo_delta(parts.entries);
    CircleCursor cursor(entries);

    // seen[b] == circle in which b was last emitted.
    std::array<std::uint64_t, kAlphabetSize> seen{};
    Bytes out;
    out.reserve(parts.flags.size());
    std::size_t lit = 0;

    for (std::uint64_t i = 0; i < parts.flags.size(); ++i) {
        std::uint8_t b = 0;
        if (!parts.flags[i]) {
            if (lit >= parts.literals.size()) {
                throw CorruptArchive("literal stream exhausted at offset " + std::to_string(i));
            }
            b = parts.literals[lit++];
            if (seen[b] == cursor.circle()) {
                cursor.advance();
            }
        } else {
            auto idx = cursor.next_candidate();
            if (idx < 0) {
                cursor.advance();
                idx = cursor.next_candidate();
                if (idx < 0) {
                    throw CorruptArchive("no entry can fill offset " + std::to_string(i));
                }
                b = entries[static_cast<std::size_t>(idx)].ch;
                if (seen[b] != cursor.circle() - 1) {
                    throw CorruptArchive("offset " + std::to_string(i) + " starts a circle without a repeated byte");
                }
            } else {
                b = entries[static_cast<std::size_t>(idx)].ch;
                if (seen[b] == cursor.circle()) {
                    throw CorruptArchive("entry byte repeats inside circle " + std::to_string(cursor.circle()));
                }
            }
            cursor.consume(static_cast<std::uint32_t>(idx));
            if (trace != nullptr) {
                trace->fills.push_back({i, cursor.circle(), static_cast<std::uint32_t>(idx)});
            }
        }
        seen[b] = cursor.circle();
        out.push_back(b);
    }

    if (lit != parts.literals.size()) {
        throw CorruptArchive(std::to_string(parts.literals.size() - lit) + " literals left over");
    }
    if (!parts.flags.empty() && !cursor.all_consumed()) {
        throw CorruptArchive("entries left unconsumed at end of input");
    }
    if (parts.flags.empty() && !entries.empty()) {
        throw CorruptArchive("entries present for empty input");
    }
    if (trace != nullptr) {
        trace->entries = std::move(entries);
    }
    return out;
}

Bytes decode(ByteView archive) { return decode_parts(parse(archive)); }

}  // namespace ccz
