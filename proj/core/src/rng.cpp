#include "qsaw/rng.hpp"

#include <cmath>
#include <numbers>

namespace qsaw {

namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi,
                    std::uint32_t& lo) {
    std::uint64_t p = static_cast<std::uint64_t>(a) * b;
    hi = static_cast<std::uint32_t>(p >> 32);
    lo = static_cast<std::uint32_t>(p);
}

}  // namespace

Philox4x32::ctr_t Philox4x32::round10(ctr_t x, key_t k) {
    for (int r = 0; r < 10; ++r) {
        std::uint32_t hi0, lo0, hi1, lo1;
        mulhilo(kMul0, x[0], hi0, lo0);
        mulhilo(kMul1, x[2], hi1, lo1);
        x = {hi1 ^ x[1] ^ k[0], lo1, hi0 ^ x[3] ^ k[1], lo0};
        k[0] += kWeyl0;
        k[1] += kWeyl1;
    }
    return x;
}

void RngStream::refill() {
    Philox4x32::ctr_t ctr = {
        static_cast<std::uint32_t>(draw_),
        static_cast<std::uint32_t>(draw_ >> 32),
        static_cast<std::uint32_t>(stream_),
        static_cast<std::uint32_t>(stream_ >> 32),
    };
    Philox4x32::key_t key = {
        static_cast<std::uint32_t>(seed_),
        static_cast<std::uint32_t>(seed_ >> 32),
    };
    block_ = Philox4x32::round10(ctr, key);
    ++draw_;
    avail_ = 4;
}

std::uint32_t RngStream::next_u32() {
    if (avail_ == 0) refill();
    return block_[4 - avail_--];
}

std::uint64_t RngStream::next_u64() {
    std::uint64_t lo = next_u32();
    std::uint64_t hi = next_u32();
    return (hi << 32) | lo;
}

double RngStream::next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RngStream::next_angle() {
    return 2.0 * std::numbers::pi * next_double();
}

double RngStream::next_normal() {
    if (has_cached_normal_) {
        has_cached_normal_ = false;
        return cached_normal_;
    }
    double u1 = next_double();
    double u2 = next_double();
    while (u1 == 0.0) u1 = next_double();
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 2.0 * std::numbers::pi * u2;
    cached_normal_ = r * std::sin(a);
    has_cached_normal_ = true;
    return r * std::cos(a);
}

double RngStream::uniform_at(std::uint64_t seed, std::uint64_t stream,
                             std::uint64_t draw) {
    Philox4x32::ctr_t ctr = {
        static_cast<std::uint32_t>(draw),
        static_cast<std::uint32_t>(draw >> 32),
        static_cast<std::uint32_t>(stream),
        static_cast<std::uint32_t>(stream >> 32),
    };
    Philox4x32::key_t key = {
        static_cast<std::uint32_t>(seed),
        static_cast<std::uint32_t>(seed >> 32),
    };
    auto out = Philox4x32::round10(ctr, key);
    std::uint64_t v = (static_cast<std::uint64_t>(out[1]) << 32) | out[0];
    return static_cast<double>(v >> 11) * 0x1.0p-53;
}

}  // namespace qsaw
