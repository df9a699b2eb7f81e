#ifndef DDA_SAMPLING_HPP
#define DDA_SAMPLING_HPP

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "dda/manifold.hpp"

namespace dda {

uint64_t splitmix64(uint64_t x);

// Sub-seed for a given chunk; stable across worker counts.
inline uint64_t derive_seed(uint64_t seed, uint64_t chunk) {
    return splitmix64(seed ^ splitmix64(chunk + 0x9e3779b97f4a7c15ULL));
}

struct WilsonInterval {
    double lo = 0.0, hi = 1.0;
};

// 95% Wilson score interval; well behaved at fractions 0 and 1.
WilsonInterval wilson95(long long successes, long long samples);

struct MeasureEstimate {
    double fraction = 0.0;
    long long samples = 0;
    WilsonInterval ci;
    uint64_t seed = 0;
};

// Samples are drawn in fixed chunks of kChunkSize, each chunk with its own
// derived sub-seed, and chunk tallies are merged in index order.  The result
// is therefore byte-identical for any worker count.
inline constexpr int kChunkSize = 1024;

// Counts predicate hits over N uniform samples in `box`.  `workers` >= 1.
MeasureEstimate estimate_fraction(
    const Box& box, long long N, uint64_t seed, int workers,
    const std::function<bool(const std::vector<double>&)>& predicate);

// Runs fn(chunk_index, sample_count, rng) for every chunk, possibly in
// parallel; per-chunk results must be written to distinct slots by index.
void for_chunks(long long N, int workers,
                const std::function<void(long long chunk, int count)>& fn);

} // namespace dda

#endif
