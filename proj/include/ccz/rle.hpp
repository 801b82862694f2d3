#pragma once

#include "ccz/types.hpp"

namespace ccz {

// Naive byte RLE: each maximal run becomes [ch][len], len in [1, 255].
// Runs longer than 255 are split.
Bytes rle_encode(ByteView input);

// Throws std::invalid_argument on odd length or a zero run length.
Bytes rle_decode(ByteView encoded);

}  // namespace ccz
