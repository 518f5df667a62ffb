#pragma once

#include <cstdint>
#include <numeric>
#include <optional>
#include <string>

#include "errors.hpp"

namespace prrdb {

// lcm(1, 2, ..., m), or nothing once the value leaves 64 bits (m >= 43).
inline std::optional<std::uint64_t> checked_lcm_range(int m)
{
    if (m < 1)
        throw error("lcm_range needs m >= 1, got " + std::to_string(m));
    std::uint64_t acc = 1;
    for (std::uint64_t i = 2; i <= static_cast<std::uint64_t>(m); ++i) {
        const std::uint64_t step = i / std::gcd(acc, i);
        if (acc > UINT64_MAX / step)
            return std::nullopt;
        acc *= step;
    }
    return acc;
}

inline std::uint64_t lcm_range(int m)
{
    if (auto v = checked_lcm_range(m))
        return *v;
    throw overflow_error("lcm(1.." + std::to_string(m) + ") does not fit in 64 bits");
}

} // namespace prrdb
