#include "dda/sampling.hpp"

#include <atomic>
#include <cmath>
#include <thread>

#include "dda/errors.hpp"

namespace dda {

uint64_t splitmix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

WilsonInterval wilson95(long long successes, long long samples) {
    if (samples <= 0) return {0.0, 1.0};
    const double z = 1.959963984540054;
    const double nd = double(samples);
    const double phat = double(successes) / nd;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / nd;
    const double center = phat + z2 / (2.0 * nd);
    const double half = z * std::sqrt(phat * (1.0 - phat) / nd + z2 / (4.0 * nd * nd));
    return {(center - half) / denom, (center + half) / denom};
}

void for_chunks(long long N, int workers,
                const std::function<void(long long chunk, int count)>& fn) {
    if (N < 0) throw input_error("for_chunks: negative sample count");
    if (workers < 1) workers = 1;
    const long long chunks = (N + kChunkSize - 1) / kChunkSize;
    if (workers == 1 || chunks <= 1) {
        for (long long c = 0; c < chunks; ++c)
            fn(c, static_cast<int>(std::min<long long>(kChunkSize, N - c * kChunkSize)));
        return;
    }
    std::atomic<long long> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                const long long c = next.fetch_add(1);
                if (c >= chunks) return;
                fn(c, static_cast<int>(std::min<long long>(kChunkSize, N - c * kChunkSize)));
            }
        });
    }
    for (auto& t : pool) t.join();
}

MeasureEstimate estimate_fraction(
    const Box& box, long long N, uint64_t seed, int workers,
    const std::function<bool(const std::vector<double>&)>& predicate) {
    if (N < 1) throw input_error("estimate_fraction: need N >= 1");
    const long long chunks = (N + kChunkSize - 1) / kChunkSize;
    std::vector<long long> hits(static_cast<size_t>(chunks), 0);
    for_chunks(N, workers, [&](long long chunk, int count) {
        std::mt19937_64 rng(derive_seed(seed, static_cast<uint64_t>(chunk)));
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        std::vector<double> x(box.dim());
        long long h = 0;
        for (int i = 0; i < count; ++i) {
            for (int d = 0; d < box.dim(); ++d)
                x[d] = box.lo[d] + (box.hi[d] - box.lo[d]) * unit(rng);
            if (predicate(x)) ++h;
        }
        hits[static_cast<size_t>(chunk)] = h;
    });
    long long total = 0;
    for (long long h : hits) total += h;  // fixed merge order
    MeasureEstimate est;
    est.fraction = double(total) / double(N);
    est.samples = N;
    est.ci = wilson95(total, N);
    est.seed = seed;
    return est;
}

} // namespace dda
