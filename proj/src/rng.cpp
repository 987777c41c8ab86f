#include "wimaxtv/rng.hpp"

#include <cmath>

#include "wimaxtv/sim_time.hpp"

namespace wimaxtv {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

}  // namespace

SimTime SimTime::from_seconds_f(double s) { return from_us(std::llround(s * 1e6)); }

std::uint64_t derive_seed(std::uint64_t seed, std::string_view stream_id) {
    return splitmix64(splitmix64(seed) ^ fnv1a(stream_id));
}

RngStream::RngStream(std::uint64_t seed, std::string_view stream_id)
    : seed_(seed), id_(stream_id), gen_(derive_seed(seed, stream_id)) {}

double RngStream::uniform() {
    // 53 random bits -> [0, 1); avoids generate_canonical's libstdc++ edge case of returning 1.
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
}

double RngStream::normal(double mean, double stddev) {
    // Box-Muller on our own uniforms so the sequence does not depend on the
    // standard library's distribution implementation.
    double u1 = uniform();
    while (u1 <= 0.0) {
        u1 = uniform();
    }
    const double u2 = uniform();
    const double z = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
    return mean + stddev * z;
}

bool RngStream::bernoulli(double p) { return uniform() < p; }

}  // namespace wimaxtv
