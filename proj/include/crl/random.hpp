#ifndef CRL_RANDOM_HPP
#define CRL_RANDOM_HPP

#include <cstdint>
#include <random>

namespace crl {

/// Seeded generator with platform-independent draws.
///
/// std::uniform_*_distribution is implementation-defined, so uniform() and
/// below() are derived directly from mt19937_64 output, whose sequence the
/// standard pins down.
class Rng {
 public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }
    /// Uniform on [0, 1) with 53 random bits.
    double uniform();
    /// Uniform integer in [0, n); n must be positive.
    std::uint64_t below(std::uint64_t n);

 private:
    std::mt19937_64 engine_;
};

/// Independent seed for sub-stream `stream` of `seed` (splitmix64 mixing).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

}  // namespace crl

#endif  // CRL_RANDOM_HPP
