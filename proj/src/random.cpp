#include "permround/random.hpp"

namespace permround {
namespace {

// Philox-4x64 constants (Salmon et al., "Parallel random numbers: as easy as
// 1, 2, 3").
constexpr std::uint64_t kMul0 = 0xD2E7470EE14C6C93ULL;
constexpr std::uint64_t kMul1 = 0xCA5A826395121157ULL;
constexpr std::uint64_t kWeyl0 = 0x9E3779B97F4A7C15ULL;
constexpr std::uint64_t kWeyl1 = 0xBB67AE8584CAA73BULL;

inline void mulhilo(std::uint64_t a, std::uint64_t b, std::uint64_t& hi, std::uint64_t& lo) {
    const unsigned __int128 p = static_cast<unsigned __int128>(a) * b;
    hi = static_cast<std::uint64_t>(p >> 64);
    lo = static_cast<std::uint64_t>(p);
}

inline std::uint64_t splitmix_mix(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ULL;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return z;
}

}  // namespace

RandomStream::RandomStream(std::uint64_t seed, std::uint64_t stream_id)
    : seed_(seed), stream_id_(stream_id) {}

void RandomStream::refill() {
    std::array<std::uint64_t, 4> ctr = counter_;
    std::uint64_t k0 = seed_;
    std::uint64_t k1 = stream_id_;
    for (int round = 0; round < 10; ++round) {
        if (round > 0) {
            k0 += kWeyl0;
            k1 += kWeyl1;
        }
        std::uint64_t hi0, lo0, hi1, lo1;
        mulhilo(kMul0, ctr[0], hi0, lo0);
        mulhilo(kMul1, ctr[2], hi1, lo1);
        ctr = {hi1 ^ ctr[1] ^ k0, lo1, hi0 ^ ctr[3] ^ k1, lo0};
    }
    block_ = ctr;
    block_pos_ = 0;
    for (auto& word : counter_) {
        if (++word != 0) break;  // 256-bit increment
    }
}

std::uint64_t RandomStream::next_u64() {
    if (block_pos_ >= 4) refill();
    return block_[block_pos_++];
}

double RandomStream::next_uniform() {
    // 53-bit mantissa shifted to the open interval (0, 1).
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

RandomStream RandomStream::substream(std::uint64_t k) const {
    return RandomStream(seed_, splitmix_mix(stream_id_ + kWeyl0 * (k + 1)));
}

}  // namespace permround
