#pragma once

#include <cstdint>

namespace vho {

/// Counter-based random stream.
///
/// The k-th draw of stream (seed, stream_id) is a pure function of
/// (seed, stream_id, k): a SplitMix64 finalizer applied to a Weyl sequence
/// whose origin is derived from the key. Streams are cheap value types, so a
/// trial can own its stream and results never depend on evaluation order.
class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t stream_id) noexcept;

    std::uint64_t seed() const noexcept { return seed_; }
    std::uint64_t stream_id() const noexcept { return stream_id_; }
    std::uint64_t position() const noexcept { return counter_; }

    /// A fresh stream with the same seed and a different id.
    RngStream substream(std::uint64_t stream_id) const noexcept { return {seed_, stream_id}; }

    std::uint64_t next_u64() noexcept;

    /// Uniform on [0, 1) with 53 random bits.
    double uniform() noexcept;

    /// Standard normal via the Marsaglia polar method.
    double normal() noexcept;
    double normal(double mean, double stddev) noexcept { return mean + stddev * normal(); }

private:
    std::uint64_t seed_;
    std::uint64_t stream_id_;
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

} // namespace vho
