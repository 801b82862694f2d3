#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "ccz/types.hpp"

namespace ccz {

// Largest possible circle: every byte value at most once.
inline constexpr std::size_t kAlphabetSize = 256;

struct CircleSpan {
    std::uint64_t start = 0;
    std::uint32_t length = 0;

    std::uint64_t end() const { return start + length; }
    bool operator==(const CircleSpan&) const = default;
};

// (r, theta) coordinates of a byte. r is 1-based (innermost circle is 1),
// theta is the 0-based ordinal inside the circle.
struct CirclePosition {
    std::uint64_t r = 0;
    std::uint32_t theta = 0;

    bool operator==(const CirclePosition&) const = default;
};

// Partition of a byte stream into maximal runs of distinct bytes.
// circles[k] is circle r = k + 1.
class CircleSegmentation {
public:
    CircleSegmentation() = default;
    explicit CircleSegmentation(std::vector<CircleSpan> circles) : circles_(std::move(circles)) {}

    const std::vector<CircleSpan>& circles() const { return circles_; }
    std::size_t size() const { return circles_.size(); }
    bool empty() const { return circles_.empty(); }

    // Span of circle r (1-based).
    const CircleSpan& circle(std::uint64_t r) const { return circles_.at(r - 1); }

    std::uint64_t total_length() const { return circles_.empty() ? 0 : circles_.back().end(); }

private:
    std::vector<CircleSpan> circles_;
};

// A byte starts a new circle iff its value already occurs in the circle
// accumulated so far.
CircleSegmentation split_circles(ByteView input);

// Throws std::out_of_range if offset >= seg.total_length().
CirclePosition position_of(const CircleSegmentation& seg, std::uint64_t offset);

// Slices of the input, one per circle. Convenience for tests and inspect.
std::vector<ByteView> circle_views(const CircleSegmentation& seg, ByteView input);

}  // namespace ccz
