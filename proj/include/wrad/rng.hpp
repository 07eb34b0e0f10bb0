#pragma once

#include <array>
#include <cstdint>
#include <span>

namespace wrad {

// Philox4x32-10 counter-based generator (Salmon et al., SC'11 constants).
// Stateless: each (key, counter) pair maps to four 32-bit words, so draws
// are addressable by (seed, stream, block) and identical no matter how work
// is divided across threads.
std::array<uint32_t, 4> philox4x32(std::array<uint32_t, 4> counter,
                                   std::array<uint32_t, 2> key);

// Double in the open interval (0,1) from 53 high bits of a 64-bit word.
double uniform_from_bits(uint64_t bits);

// Derived seed for an independent substream (splitmix64 finalizer).
uint64_t mix_seed(uint64_t seed, uint64_t salt);

// Inverse of the standard normal CDF (Wichura's PPND16 rational
// approximation, accurate to ~1e-15 on (0,1)).
double normal_quantile(double p);

// Addressable N(0,1) stream: draw(i) is the i-th variate of the stream
// identified by (seed, stream_id). Two variates per Philox block.
class NormalStream {
public:
    NormalStream(uint64_t seed, uint64_t stream_id);

    double draw(uint64_t index) const;

    // Variates start_index .. start_index + out.size() - 1, one Philox call
    // per pair.
    void fill(std::span<double> out, uint64_t start_index = 0) const;

private:
    std::array<uint32_t, 4> block(uint64_t block_index) const;

    std::array<uint32_t, 2> key_;
    std::array<uint32_t, 2> stream_;
};

// Compensated (Neumaier) accumulator; chunked sums combined in a fixed
// order agree with the serial sum to within one rounding.
class KahanSum {
public:
    void add(double value);
    double value() const { return sum_ + compensation_; }

private:
    double sum_ = 0.0;
    double compensation_ = 0.0;
};

}  // namespace wrad
