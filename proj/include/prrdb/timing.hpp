#pragma once

#include <chrono>
#include <cstdint>

#include "rules.hpp"

namespace prrdb {

struct GenerationTiming {
    std::uint64_t bits = 0;
    double seconds = 0.0;
    std::uint64_t ones = 0; // keeps the loop observable

    double ns_per_bit() const { return bits ? seconds * 1e9 / static_cast<double>(bits) : 0.0; }
};

// Wall-clock cost of streaming `bits` bits from 0^n.
inline GenerationTiming time_generation(const RuleSpec& spec, std::uint64_t bits)
{
    SequenceGenerator gen(spec, State::zeros(spec.n));
    GenerationTiming t;
    t.bits = bits;
    const auto start = std::chrono::steady_clock::now();
    for (std::uint64_t i = 0; i < bits; ++i)
        t.ones += gen.next();
    t.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return t;
}

} // namespace prrdb
