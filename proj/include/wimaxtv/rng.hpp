#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <string_view>

namespace wimaxtv {

/// Named random stream. The same (seed, stream id) pair always yields the same
/// sequence, and distinct ids give statistically independent sequences.
class RngStream {
public:
    RngStream(std::uint64_t seed, std::string_view stream_id);

    std::uint64_t seed() const { return seed_; }
    const std::string& stream_id() const { return id_; }

    /// Uniform on [0, 1).
    double uniform();
    double normal(double mean, double stddev);
    /// True with probability p (one uniform draw regardless of p).
    bool bernoulli(double p);

    std::mt19937_64& engine() { return gen_; }

private:
    std::uint64_t seed_;
    std::string id_;
    std::mt19937_64 gen_;
};

/// Mixes a base seed with a stream label into a 64-bit engine seed.
std::uint64_t derive_seed(std::uint64_t seed, std::string_view stream_id);

}  // namespace wimaxtv
