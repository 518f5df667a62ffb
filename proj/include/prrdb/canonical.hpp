#pragma once

#include <concepts>
#include <cstddef>

#include "state.hpp"

namespace prrdb {

// Linear-time necklace test over any indexable binary string of length len.
//
// Scans the string keeping p, the period of the longest Lyndon prefix seen so
// far. The string is a necklace iff no position undercuts the periodic
// extension and len is a multiple of the final period.
template <class BitAt>
    requires std::invocable<BitAt, std::size_t>
constexpr bool is_necklace_string(std::size_t len, BitAt&& at)
{
    std::size_t p = 1;
    for (std::size_t i = 1; i < len; ++i) {
        const bool prev = at(i - p);
        const bool cur = at(i);
        if (cur < prev)
            return false;
        if (cur > prev)
            p = i + 1;
    }
    return len % p == 0;
}

// True iff u is the lexicographically least of its rotations.
inline bool is_necklace(const State& u)
{
    return is_necklace_string(static_cast<std::size_t>(u.order()),
                              [&u](std::size_t i) { return u.bit(static_cast<int>(i)); });
}

// True iff u is the least length-m window of the 2m-periodic word u || ~u,
// i.e. the least state of its complemented-cycling-register cycle.
//
// The window following any copy of u in that word is ~u, so u is the least
// window exactly when u || ~u is a necklace.
inline bool is_conecklace(const State& u)
{
    const auto m = static_cast<std::size_t>(u.order());
    return is_necklace_string(2 * m, [&u, m](std::size_t i) {
        return i < m ? u.bit(static_cast<int>(i)) : !u.bit(static_cast<int>(i - m));
    });
}

} // namespace prrdb
