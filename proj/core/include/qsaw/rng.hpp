#pragma once

#include <array>
#include <cstdint>

namespace qsaw {

// Philox4x32-10 counter-based generator. Counter-based RNG keeps ensemble
// and sampling results reproducible under any parallel schedule: stream s,
// draw d always yields the same value regardless of evaluation order.
struct Philox4x32 {
    using ctr_t = std::array<std::uint32_t, 4>;
    using key_t = std::array<std::uint32_t, 2>;

    static ctr_t round10(ctr_t ctr, key_t key);
};

// One logical random stream: (seed, stream) fix the key and the upper
// counter words; consecutive draws advance the lower counter words.
class RngStream {
  public:
    RngStream(std::uint64_t seed, std::uint64_t stream)
        : seed_(seed), stream_(stream) {}

    std::uint32_t next_u32();
    std::uint64_t next_u64();
    // uniform in [0, 1), 53-bit resolution
    double next_double();
    // uniform in [0, 2*pi)
    double next_angle();
    // standard normal deviate (Box-Muller, one value per call pair cached)
    double next_normal();

    // Random value for an addressed draw without disturbing the stream
    // position; used for order-independent per-draw sampling.
    static double uniform_at(std::uint64_t seed, std::uint64_t stream,
                             std::uint64_t draw);

  private:
    void refill();

    std::uint64_t seed_;
    std::uint64_t stream_;
    std::uint64_t draw_ = 0;
    Philox4x32::ctr_t block_{};
    int avail_ = 0;
    double cached_normal_ = 0.0;
    bool has_cached_normal_ = false;
};

}  // namespace qsaw
