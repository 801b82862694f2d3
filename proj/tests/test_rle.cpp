#include <gtest/gtest.h>

#include "ccz/rle.hpp"
#include "oracles.hpp"

namespace ccz {
namespace {

TEST(Rle, EncodeExamples) {
    EXPECT_EQ(rle_encode(as_bytes("AAAB")), (Bytes{'A', 3, 'B', 1}));
    EXPECT_EQ(rle_encode(as_bytes("ABC")), (Bytes{'A', 1, 'B', 1, 'C', 1}));
    EXPECT_TRUE(rle_encode({}).empty());
    EXPECT_EQ(rle_encode(Bytes(257, 'A')), (Bytes{'A', 255, 'A', 2}));
}

TEST(Rle, DecodeExamples) {
    EXPECT_EQ(rle_decode(Bytes{'A', 3, 'B', 1}), to_bytes("AAAB"));
    EXPECT_TRUE(rle_decode({}).empty());
    EXPECT_EQ(rle_decode(Bytes{'A', 255, 'A', 2}), Bytes(257, 'A'));
}

TEST(Rle, DecodeErrors) {
    EXPECT_THROW(rle_decode(Bytes{'A'}), std::invalid_argument);
    EXPECT_THROW(rle_decode(Bytes{'A', 0}), std::invalid_argument);
}

TEST(Rle, RoundtripAndSize) {
    testing::InputGen gen(2);
    for (int iter = 0; iter < 500; ++iter) {
        auto input = gen.any(1200);
        if (iter % 5 == 0) {
            input.insert(input.end(), gen.rng()() % 700, 'z');
        }
        const auto packed = rle_encode(input);
        ASSERT_EQ(rle_decode(packed), input);

        // Size oracle: count maximal runs, splitting every 255.
        std::size_t pairs = 0;
        for (std::size_t i = 0; i < input.size();) {
            std::size_t j = i;
            while (j < input.size() && input[j] == input[i]) {
                ++j;
            }
            pairs += (j - i + 254) / 255;
            i = j;
        }
        ASSERT_EQ(packed.size(), 2 * pairs);
        for (std::size_t k = 2; k < packed.size(); k += 2) {
            ASSERT_TRUE(packed[k] != packed[k - 2] || packed[k - 1] == 255);
        }
    }
}

}  // namespace
}  // namespace ccz
