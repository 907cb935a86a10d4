#pragma once

#include <cstdint>
#include <random>

namespace remeta {

/// Seedable stream of uniform variates on the open interval (0, 1).
///
/// Streams are keyed by (seed, substream): each bootstrap block owns the
/// substream equal to its block index, so draws do not depend on how blocks
/// are scheduled across threads. The engine is std::mt19937_64 seeded through
/// std::seed_seq, both of which have standard-mandated output.
class RandomStream {
public:
    RandomStream(std::uint64_t seed, std::uint64_t substream);

    /// (k + 0.5) / 2^53 for a 53-bit integer k; never 0 or 1.
    double uniform();

    double normal();               // inverse-CDF transform of uniform()
    double student_t(double df);   // inverse-CDF transform of uniform()

private:
    std::mt19937_64 engine_;
};

/// Seed used when the caller does not provide one.
inline constexpr std::uint64_t kDefaultSeed = 20190901;

}  // namespace remeta
