#pragma once

#include <cmath>
#include <cstdint>

namespace kraichnan {

// Stateless counter-based generator. A draw is a pure function of
// (seed, stream, counter), so Monte Carlo results do not depend on how
// samples are scheduled across threads.
class CounterRng {
public:
    CounterRng(std::uint64_t seed, std::uint64_t stream)
        : key_(finalize(seed + golden * (stream + 1))) {}

    // uniform in [0, 1)
    double uniform(std::uint64_t counter) const {
        return static_cast<double>(word(counter) >> 11) * 0x1.0p-53;
    }

    // standard normal; consumes counters 2k and 2k+1 (Box-Muller)
    double normal(std::uint64_t k) const {
        const double u1 = static_cast<double>((word(2 * k) >> 11) + 1) * 0x1.0p-53; // (0,1]
        const double u2 = uniform(2 * k + 1);
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925287 * u2);
    }

private:
    static constexpr std::uint64_t golden = 0x9E3779B97F4A7C15ull;

    static std::uint64_t finalize(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    std::uint64_t word(std::uint64_t counter) const {
        return finalize(key_ + golden * (counter + 1));
    }

    std::uint64_t key_;
};

// Compensated (Kahan) accumulator; fixed summation order keeps results
// reproducible when quadrature loops are restructured.
struct KahanSum {
    double sum = 0.0;
    double carry = 0.0;

    void add(double x) {
        const double y = x - carry;
        const double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }

    double value() const { return sum; }
};

} // namespace kraichnan
