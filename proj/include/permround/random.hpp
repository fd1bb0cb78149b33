#pragma once

#include <array>
#include <cstdint>

namespace permround {

/// Counter-based pseudorandom stream (Philox-4x64-10).
///
/// The generator is keyed by (seed, stream_id): identical keys reproduce the
/// identical output sequence, distinct stream_ids give statistically
/// independent sequences, and the 256-bit counter makes the per-stream period
/// astronomically larger than any run. Because output is a pure function of
/// (key, counter), Monte Carlo work can be split across workers by handing
/// each one its own substream and remains reproducible for a fixed split.
///
/// A stream is owned by one worker at a time; it is cheap to copy.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed, std::uint64_t stream_id = 0);

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream_id() const { return stream_id_; }

    std::uint64_t next_u64();
    /// Uniform draw strictly inside (0, 1).
    double next_uniform();

    /// Independent stream derived from this one. Derived ids are spread by a
    /// 64-bit mix so they do not collide with small user-chosen stream ids.
    RandomStream substream(std::uint64_t k) const;

private:
    void refill();

    std::uint64_t seed_;
    std::uint64_t stream_id_;
    std::array<std::uint64_t, 4> counter_{};
    std::array<std::uint64_t, 4> block_{};
    int block_pos_ = 4;  // forces refill on first draw
};

}  // namespace permround
