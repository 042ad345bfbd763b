#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <random>

namespace tvc {

/// SplitMix64 finalizer; a bijective 64-bit mix.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// Child seed for a path of keys below `seed`. Distinct key paths give
/// statistically independent streams, and the result depends only on the
/// keys, never on the order streams are created in.
std::uint64_t derive_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> keys) noexcept;

/// One pseudo-random stream (Mersenne Twister 64) with the draws used here.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed) : engine_(mix64(seed)) {}

    double normal() { return normal_(engine_); }
    double uniform() { return std::uniform_real_distribution<double>(0.0, 1.0)(engine_); }
    double exponential(double rate = 1.0) {
        return std::exponential_distribution<double>(rate)(engine_);
    }
    double student_t(double df) { return std::student_t_distribution<double>(df)(engine_); }
    std::size_t index(std::size_t n) {
        return std::uniform_int_distribution<std::size_t>(0, n - 1)(engine_);
    }

    std::mt19937_64& engine() noexcept { return engine_; }

private:
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_{0.0, 1.0};
};

/// Runs body(i) for i in [0, count) on up to `workers` threads (0 = hardware
/// concurrency). Work is handed out by an atomic counter; the body must write
/// only to index-owned output. The first exception is rethrown after joining.
void parallel_for(std::size_t count, std::size_t workers,
                  const std::function<void(std::size_t)>& body);

/// Worker count from the TVC_WORKERS environment variable, else hardware concurrency.
std::size_t default_workers();

}  // namespace tvc
