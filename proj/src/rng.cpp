#include "gue_lab/rng.hpp"

namespace gue_lab {

namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
    const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
    hi = static_cast<std::uint32_t>(p >> 32);
    lo = static_cast<std::uint32_t>(p);
}

}  // namespace

Philox4x32::Block Philox4x32::encrypt(Block ctr, Key key) {
    for (int round = 0; round < 10; ++round) {
        std::uint32_t hi0, lo0, hi1, lo1;
        mulhilo(kMul0, ctr[0], hi0, lo0);
        mulhilo(kMul1, ctr[2], hi1, lo1);
        ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
        key[0] += kWeyl0;
        key[1] += kWeyl1;
    }
    return ctr;
}

Philox4x32::Philox4x32(StreamTag tag, std::uint64_t substream) : tag_(tag) {
    key_ = {static_cast<std::uint32_t>(tag.seed), static_cast<std::uint32_t>(tag.seed >> 32)};
    // Replicate index and substream share the upper counter words; substreams
    // are limited to 2^16 and replicates to 2^48.
    const std::uint64_t stream = (tag.replicate << 16) ^ (substream & 0xFFFFu);
    counter_ = {0u, 0u, static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
}

void Philox4x32::refill() {
    buffer_ = encrypt(counter_, key_);
    if (++counter_[0] == 0) ++counter_[1];
    next_ = 0;
}

Philox4x32::result_type Philox4x32::operator()() {
    if (next_ >= 4) refill();
    const std::uint64_t lo = buffer_[next_];
    const std::uint64_t hi = buffer_[next_ + 1];
    next_ += 2;
    return (hi << 32) | lo;
}

void Philox4x32::discard_blocks(std::uint64_t blocks) {
    std::uint64_t c = (static_cast<std::uint64_t>(counter_[1]) << 32) | counter_[0];
    c += blocks;
    counter_[0] = static_cast<std::uint32_t>(c);
    counter_[1] = static_cast<std::uint32_t>(c >> 32);
    next_ = 4;
}

}  // namespace gue_lab
