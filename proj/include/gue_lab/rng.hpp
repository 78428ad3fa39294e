#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace gue_lab {

/// Identifies one independent random stream: a user seed and a replicate index.
/// Streams with different tags never share counter space, so replicates can be
/// drawn in any order on any worker and still reproduce bit for bit.
struct StreamTag {
    std::uint64_t seed = 0;
    std::uint64_t replicate = 0;

    friend bool operator==(const StreamTag&, const StreamTag&) = default;
};

/// Philox4x32-10 (Salmon et al., SC'11) exposed as a 64-bit
/// UniformRandomBitGenerator.
///
/// The key is the seed; counter words 2..3 hold a sub-stream id and words
/// 0..1 count blocks. Each block yields two 64-bit outputs.
class Philox4x32 {
public:
    using result_type = std::uint64_t;
    using Block = std::array<std::uint32_t, 4>;
    using Key = std::array<std::uint32_t, 2>;

    Philox4x32() : Philox4x32(StreamTag{}) {}
    explicit Philox4x32(StreamTag tag, std::uint64_t substream = 0);

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()();

    /// Skip ahead by `blocks` counter blocks.
    void discard_blocks(std::uint64_t blocks);

    /// The raw bijection; exposed for known-answer tests.
    static Block encrypt(Block ctr, Key key);

    [[nodiscard]] StreamTag tag() const { return tag_; }

private:
    void refill();

    StreamTag tag_;
    Key key_{};
    Block counter_{};
    Block buffer_{};
    int next_ = 4;
};

/// Engine for replicate `tag.replicate` of experiment seed `tag.seed`.
/// `substream` separates independent uses inside one replicate.
inline Philox4x32 make_engine(StreamTag tag, std::uint64_t substream = 0) {
    return Philox4x32(tag, substream);
}

}  // namespace gue_lab
