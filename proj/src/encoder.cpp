#include "ccz/encoder.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <string>
#include <utility>

namespace ccz {

std::uint32_t RunDetector::SlotTable::next_after(std::uint32_t theta) const {
    std::uint32_t start = theta + 1;
    for (std::uint32_t w = start / 64; w < used.size(); ++w) {
        std::uint64_t bits = used[w];
        if (w == start / 64) {
            const auto shift = start % 64;
            bits = shift == 0 ? bits : bits & (~std::uint64_t{0} << shift);
        }
        if (bits != 0) {
            return w * 64 + static_cast<std::uint32_t>(std::countr_zero(bits));
        }
    }
    return kNone;
}

RunDetector::RunDetector() { chain_head_.fill(kNone); }

int RunDetector::prev_theta_of(std::uint8_t c) const {
    if (current_r_ < 2 || seen_circle_[c] != current_r_ - 1) {
        return -1;
    }
    return static_cast<int>(seen_theta_[c]);
}

bool RunDetector::paradox_check(std::uint8_t c) const {
    const int pt = prev_theta_of(c);
    return cursor_ != kNone && pt >= 0 && pt < cursor_prev_theta_;
}

void RunDetector::push(std::uint8_t c) {
    if (current_r_ == 0) {
        current_r_ = 1;
    } else if (seen_circle_[c] == current_r_) {
        start_circle();
    }
    const std::uint32_t theta = circle_len_;
    if (current_r_ >= 2) {
        match(c, theta);
    }
    seen_circle_[c] = current_r_;
    seen_theta_[c] = theta;
    ++circle_len_;
    ++offset_;
}

void RunDetector::start_circle() {
    ++current_r_;
    prev_circle_start_ = circle_start_;
    circle_start_ = offset_;
    circle_len_ = 0;
    std::swap(prev_slots_, cur_slots_);
    cur_slots_.clear();
    cursor_ = kNone;
    cursor_prev_theta_ = -1;
}

void RunDetector::match(std::uint8_t c, std::uint32_t theta) {
    const int pt = prev_theta_of(c);
    if (pt < 0 || paradox_check(c)) {
        return;
    }

    std::uint32_t node = chain_head_[c];
    if (node != kNone) {
        ++chain_inspections_;
        auto& head = nodes_[node].run;
        if (head.last_circle() == current_r_ - 1) {
            // The previous-circle occurrence already belongs to this run, so
            // it is either extended or c stays literal.
            if (head.count >= static_cast<std::uint32_t>(kMaxRunCount)) {
                return;
            }
            ++head.count;
            head.occurrences.push_back(offset_);
        } else {
            node = start_run(c, static_cast<std::uint32_t>(pt));
        }
    } else {
        node = start_run(c, static_cast<std::uint32_t>(pt));
    }
    cur_slots_.set(theta, node);
    cursor_ = node;
    cursor_prev_theta_ = pt;
}

std::uint32_t RunDetector::start_run(std::uint8_t c, std::uint32_t prev_theta) {
    const auto id = static_cast<std::uint32_t>(nodes_.size());
    Node n;
    n.run.ch = c;
    n.run.r1 = current_r_ - 1;
    n.run.count = 2;
    n.run.occurrences = {prev_circle_start_ + prev_theta, offset_};
    n.chain_next = chain_head_[c];
    nodes_.push_back(std::move(n));
    chain_head_[c] = id;

    // Place before the first run whose previous-circle occurrence follows c's;
    // with none, the new run goes to the tail.
    const auto later = prev_slots_.next_after(prev_theta);
    if (later != kNone) {
        link_before(id, prev_slots_.owner[later]);
    } else {
        link_tail(id);
    }
    prev_slots_.set(prev_theta, id);
    return id;
}

void RunDetector::link_tail(std::uint32_t node) {
    nodes_[node].order_prev = list_tail_;
    nodes_[node].order_next = kNone;
    if (list_tail_ != kNone) {
        nodes_[list_tail_].order_next = node;
    } else {
        list_head_ = node;
    }
    list_tail_ = node;
}

void RunDetector::link_before(std::uint32_t node, std::uint32_t before) {
    const auto prev = nodes_[before].order_prev;
    nodes_[node].order_prev = prev;
    nodes_[node].order_next = before;
    nodes_[before].order_prev = node;
    if (prev != kNone) {
        nodes_[prev].order_next = node;
    } else {
        list_head_ = node;
    }
}

std::vector<Run> RunDetector::runs() const {
    std::vector<Run> out;
    out.reserve(nodes_.size());
    for (auto i = list_head_; i != kNone; i = nodes_[i].order_next) {
        out.push_back(nodes_[i].run);
    }
    return out;
}

std::vector<Run> detect_runs(ByteView input) {
    RunDetector det;
    for (auto b : input) {
        det.push(b);
    }
    return det.runs();
}

std::vector<CompressedEntry> delta_encode_entries(std::span<const Run> runs) {
    std::vector<CompressedEntry> out;
    out.reserve(runs.size());
    DeltaContext ctx;
    for (const auto& run : runs) {
        auto d = ctx.delta_of(run.r1);
        if (d < kMinDelta) {
            throw std::domain_error("run at r1=" + std::to_string(run.r1) + " has delta " + std::to_string(d) +
                                    " below -128");
        }
        if (d > kMaxDelta) {
            // Walk the reference up to r1 - 1 in unsigned steps.
            for (auto gap = d - 1; gap > 0;) {
                const auto step = std::min<std::int64_t>(gap, 255);
                out.push_back(CompressedEntry::rebase(static_cast<int>(step)));
                ctx.ref_r1 += step;
                gap -= step;
            }
            d = 1;
        }
        out.push_back(CompressedEntry::run(static_cast<int>(d), run.ch, static_cast<int>(run.count)));
        ctx.observe(run.r1, run.count);
    }
    return out;
}

namespace {

// Whether dropping runs[i] (a count-2 run, with ctx the context before it)
// keeps every delta that currently fits inside [-128, 127]. Only runs up to
// the point where both contexts agree again can be affected.
bool can_remove(const std::vector<Run>& runs, std::size_t i, const DeltaContext& ctx) {
    const auto& x = runs[i];
    if (!ctx.would_become_reference(x.r1, x.count)) {
        return true;
    }
    DeltaContext with = ctx;
    with.observe(x.r1, x.count);
    DeltaContext without = ctx;
    for (std::size_t j = i + 1; j < runs.size() && !(with == without); ++j) {
        const auto& y = runs[j];
        if (delta_in_range(with.delta_of(y.r1)) && !delta_in_range(without.delta_of(y.r1))) {
            return false;
        }
        with.observe(y.r1, y.count);
        without.observe(y.r1, y.count);
    }
    return true;
}

}  // namespace

std::vector<Run> drop_unencodable(std::vector<Run>& runs) {
    std::vector<Run> kept;
    std::vector<Run> dropped;
    kept.reserve(runs.size());
    DeltaContext ctx;
    for (auto& run : runs) {
        if (ctx.delta_of(run.r1) < kMinDelta) {
            dropped.push_back(std::move(run));
            continue;
        }
        ctx.observe(run.r1, run.count);
        kept.push_back(std::move(run));
    }
    runs = std::move(kept);
    return dropped;
}

RedundancyResult remove_redundant_entries(std::vector<Run> runs) {
    RedundancyResult result;
    for (bool changed = true; changed;) {
        changed = false;
        std::vector<Run> next;
        next.reserve(runs.size());
        DeltaContext ctx;
        for (std::size_t i = 0; i < runs.size(); ++i) {
            if (runs[i].count == 2 && can_remove(runs, i, ctx)) {
                result.removed.push_back(std::move(runs[i]));
                changed = true;
                continue;
            }
            ctx.observe(runs[i].r1, runs[i].count);
            next.push_back(std::move(runs[i]));
        }
        runs = std::move(next);
    }
    result.kept = std::move(runs);
    return result;
}

std::vector<Run> remove_redundant_entries(std::vector<Run> runs, std::vector<bool>& flags, Bytes& literals) {
    auto result = remove_redundant_entries(std::move(runs));

    std::vector<std::pair<std::uint64_t, std::uint8_t>> restored;
    for (const auto& run : result.removed) {
        for (auto off : run.occurrences) {
            restored.emplace_back(off, run.ch);
        }
    }
    std::sort(restored.begin(), restored.end());

    Bytes merged;
    merged.reserve(literals.size() + restored.size());
    std::size_t lit = 0;
    auto next = restored.begin();
    for (std::uint64_t i = 0; i < flags.size(); ++i) {
        if (!flags[i]) {
            merged.push_back(literals.at(lit++));
        } else if (next != restored.end() && next->first == i) {
            merged.push_back(next->second);
            flags[i] = false;
            ++next;
        }
    }
    literals = std::move(merged);
    return std::move(result.kept);
}

EncodedParts assemble_parts(ByteView input, std::span<const Run> runs) {
    EncodedParts parts;
    parts.flags.assign(input.size(), false);
    for (const auto& run : runs) {
        for (auto off : run.occurrences) {
            parts.flags[off] = true;
        }
    }
    parts.literals.reserve(input.size());
    for (std::size_t i = 0; i < input.size(); ++i) {
        if (!parts.flags[i]) {
            parts.literals.push_back(input[i]);
        }
    }
    parts.entries = delta_encode_entries(runs);
    return parts;
}

EncodeResult encode_detailed(ByteView input) {
    EncodeResult result;
    result.detected = detect_runs(input);
    auto pruned = remove_redundant_entries(result.detected);
    result.removed = std::move(pruned.removed);
    result.runs = std::move(pruned.kept);
    result.dropped = drop_unencodable(result.runs);
    result.parts = assemble_parts(input, result.runs);
    return result;
}

EncodedParts encode(ByteView input) {
    auto runs = detect_runs(input);
    auto kept = remove_redundant_entries(std::move(runs)).kept;
    drop_unencodable(kept);
    return assemble_parts(input, kept);
}

Bytes compress(ByteView input) { return serialize(encode(input)); }

}  // namespace ccz
