#include "ccz/circles.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>
#include <string>

namespace ccz {

CircleSegmentation split_circles(ByteView input) {
    std::vector<CircleSpan> circles;
    if (input.empty()) {
        return CircleSegmentation{};
    }

    // seen[b] == generation of the circle in which b was last seen; avoids
    // clearing the table at every break.
    std::array<std::uint64_t, kAlphabetSize> seen{};
    std::uint64_t generation = 1;
    CircleSpan current{0, 0};

    for (std::uint64_t i = 0; i < input.size(); ++i) {
        const auto b = input[i];
        if (seen[b] == generation) {
            circles.push_back(current);
            current = CircleSpan{i, 0};
            ++generation;
        }
        seen[b] = generation;
        ++current.length;
    }
    circles.push_back(current);
    return CircleSegmentation{std::move(circles)};
}

CirclePosition position_of(const CircleSegmentation& seg, std::uint64_t offset) {
    if (offset >= seg.total_length()) {
        throw std::out_of_range("position_of: offset " + std::to_string(offset) +
                                " outside input of length " + std::to_string(seg.total_length()));
    }
    const auto& circles = seg.circles();
    auto it = std::upper_bound(circles.begin(), circles.end(), offset,
                               [](std::uint64_t off, const CircleSpan& c) { return off < c.start; });
    --it;
    return CirclePosition{static_cast<std::uint64_t>(it - circles.begin()) + 1,
                          static_cast<std::uint32_t>(offset - it->start)};
}

std::vector<ByteView> circle_views(const CircleSegmentation& seg, ByteView input) {
    std::vector<ByteView> out;
    out.reserve(seg.size());
    for (const auto& c : seg.circles()) {
        out.push_back(input.subspan(c.start, c.length));
    }
    return out;
}

}  // namespace ccz
