#include "ccz/rle.hpp"

#include <stdexcept>
#include <string>

namespace ccz {

Bytes rle_encode(ByteView input) {
    Bytes out;
    std::size_t i = 0;
    while (i < input.size()) {
        const auto ch = input[i];
        std::size_t run = 1;
        while (i + run < input.size() && input[i + run] == ch && run < 255) {
            ++run;
        }
        out.push_back(ch);
        out.push_back(static_cast<std::uint8_t>(run));
        i += run;
    }
    return out;
}

Bytes rle_decode(ByteView encoded) {
    if (encoded.size() % 2 != 0) {
        throw std::invalid_argument("rle stream has odd length " + std::to_string(encoded.size()));
    }
    Bytes out;
    for (std::size_t i = 0; i < encoded.size(); i += 2) {
        const auto run = encoded[i + 1];
        if (run == 0) {
            throw std::invalid_argument("zero run length at byte " + std::to_string(i + 1));
        }
        out.insert(out.end(), run, encoded[i]);
    }
    return out;
}

}  // namespace ccz
