#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "ccz/circles.hpp"
#include "ccz/container.hpp"
#include "ccz/types.hpp"

namespace ccz {

// A run: byte `ch` found once in each of the circles r1 .. r1 + count - 1,
// at the absolute input offsets in `occurrences` (one per circle).
struct Run {
    std::uint8_t ch = 0;
    std::uint64_t r1 = 0;
    std::uint32_t count = 0;
    std::vector<std::uint64_t> occurrences;

    std::uint64_t last_circle() const { return r1 + count - 1; }
    // Ordering key for reference-node selection (r1 + count).
    std::uint64_t reach() const { return r1 + count; }

    bool operator==(const Run&) const = default;
};

// Reference node tracking shared by the encoder's delta pass and the
// decoder's undo pass. ref_r2 stores the reach (r1 + count) of the reference.
struct DeltaContext {
    std::int64_t ref_r1 = 0;
    std::int64_t ref_r2 = 0;

    std::int64_t delta_of(std::uint64_t r1) const { return static_cast<std::int64_t>(r1) - ref_r1; }
    bool would_become_reference(std::uint64_t r1, std::uint32_t count) const {
        return static_cast<std::int64_t>(r1 + count) > ref_r2;
    }
    // Returns true if the node became the new reference.
    bool observe(std::uint64_t r1, std::uint32_t count) {
        if (!would_become_reference(r1, count)) {
            return false;
        }
        ref_r1 = static_cast<std::int64_t>(r1);
        ref_r2 = static_cast<std::int64_t>(r1 + count);
        return true;
    }

    bool operator==(const DeltaContext&) const = default;
};

inline bool delta_in_range(std::int64_t d) { return d >= kMinDelta && d <= kMaxDelta; }

// Streaming run detection over one input. Holds the per-byte chains (most
// recent run first), the theta-ordered run list, and the previous/current
// circle bookkeeping. Feed bytes in order with push(), then read runs().
class RunDetector {
public:
    static constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();

    RunDetector();

    void push(std::uint8_t c);

    // True iff matching `c` against its previous-circle occurrence would cross
    // a run already matched in the current circle.
    bool paradox_check(std::uint8_t c) const;

    std::uint64_t current_circle() const { return current_r_; }
    std::uint64_t bytes_seen() const { return offset_; }
    std::size_t run_count() const { return nodes_.size(); }

    // Runs in theta (run list) order.
    std::vector<Run> runs() const;

    // Number of nodes inspected by chain lookups; stays at one per lookup.
    std::uint64_t chain_inspections() const { return chain_inspections_; }

private:
    struct Node {
        Run run;
        std::uint32_t chain_next = kNone;
        std::uint32_t order_prev = kNone;
        std::uint32_t order_next = kNone;
    };

    // Occupancy of one circle's theta slots by runs covering that circle.
    struct SlotTable {
        std::array<std::uint64_t, kAlphabetSize / 64> used{};
        std::array<std::uint32_t, kAlphabetSize> owner{};

        void clear() { used.fill(0); }
        void set(std::uint32_t theta, std::uint32_t node) {
            used[theta / 64] |= std::uint64_t{1} << (theta % 64);
            owner[theta] = node;
        }
        // First occupied slot strictly after theta, or kNone.
        std::uint32_t next_after(std::uint32_t theta) const;
    };

    void start_circle();
    void match(std::uint8_t c, std::uint32_t theta);
    std::uint32_t start_run(std::uint8_t c, std::uint32_t prev_theta);
    void link_before(std::uint32_t node, std::uint32_t before);
    void link_tail(std::uint32_t node);

    // Theta of c in circle r - 1, or -1. Valid while c is not yet in the current circle.
    int prev_theta_of(std::uint8_t c) const;

    std::vector<Node> nodes_;
    std::array<std::uint32_t, kAlphabetSize> chain_head_;
    std::uint32_t list_head_ = kNone;
    std::uint32_t list_tail_ = kNone;

    std::uint32_t cursor_ = kNone;
    int cursor_prev_theta_ = -1;

    std::uint64_t offset_ = 0;
    std::uint64_t current_r_ = 0;
    std::uint64_t circle_start_ = 0;
    std::uint64_t prev_circle_start_ = 0;
    std::uint32_t circle_len_ = 0;

    // Last circle / theta at which each byte value was seen.
    std::array<std::uint64_t, kAlphabetSize> seen_circle_{};
    std::array<std::uint32_t, kAlphabetSize> seen_theta_{};

    SlotTable prev_slots_;
    SlotTable cur_slots_;

    std::uint64_t chain_inspections_ = 0;
};

std::vector<Run> detect_runs(ByteView input);

// Serializes theta-ordered runs into entries, inserting rebase records when a
// delta exceeds 127. Throws std::domain_error if a delta falls below -128;
// encode() drops such runs before calling this.
std::vector<CompressedEntry> delta_encode_entries(std::span<const Run> runs);

struct RedundancyResult {
    std::vector<Run> kept;
    std::vector<Run> removed;
};

// Uncompresses count-2 runs unless the run is a reference node whose removal
// would push a following delta out of [-128, 127]. Repeats until stable.
RedundancyResult remove_redundant_entries(std::vector<Run> runs);

// Same pass, also patching the flag and literal streams of an encoding.
std::vector<Run> remove_redundant_entries(std::vector<Run> runs, std::vector<bool>& flags, Bytes& literals);

// Removes runs whose delta would fall below -128 and returns them. Such runs
// are never reference nodes, so the remaining deltas are unaffected.
std::vector<Run> drop_unencodable(std::vector<Run>& runs);

struct EncodeResult {
    std::vector<Run> detected;
    std::vector<Run> removed;
    std::vector<Run> dropped;
    std::vector<Run> runs;
    EncodedParts parts;
};

EncodeResult encode_detailed(ByteView input);
EncodedParts encode(ByteView input);

// Flags and literals for `input` given the final run list, plus its entries.
EncodedParts assemble_parts(ByteView input, std::span<const Run> runs);

Bytes compress(ByteView input);

}  // namespace ccz
