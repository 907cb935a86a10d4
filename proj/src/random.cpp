#include "remeta/random.hpp"

#include "remeta/distributions.hpp"

namespace remeta {

namespace {

std::mt19937_64 make_engine(std::uint64_t seed, std::uint64_t substream) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(substream),
                      static_cast<std::uint32_t>(substream >> 32), 0x6d657461u};
    return std::mt19937_64(seq);
}

}  // namespace

RandomStream::RandomStream(std::uint64_t seed, std::uint64_t substream)
    : engine_(make_engine(seed, substream)) {}

double RandomStream::uniform() {
    const std::uint64_t k = engine_() >> 11;
    return (static_cast<double>(k) + 0.5) * 0x1.0p-53;
}

double RandomStream::normal() { return normal_quantile(uniform()); }

double RandomStream::student_t(double df) { return t_quantile(uniform(), df); }

}  // namespace remeta
