#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "errors.hpp"
#include "state.hpp"

namespace prrdb {

// Pure run-length register: x_0 + x_1 + x_{n-1}.
inline bool prr_next_bit(const State& s) { return s.bit(0) ^ s.bit(1) ^ s.back(); }

// Pure cycling register: x_0.
inline bool pcr_next_bit(const State& s) { return s.front(); }

// Complemented cycling register: x_0 + 1.
inline bool ccr_next_bit(const State& s) { return !s.front(); }

// c_1, ..., c_{n-1}, b
inline State shift_in(const State& s, bool b)
{
    return State((s.word() << 1) | std::uint64_t{b}, s.order());
}

inline State prr_successor(const State& s) { return shift_in(s, prr_next_bit(s)); }

enum class CycleKind { pcr, ccr };

inline std::string_view to_string(CycleKind kind) { return kind == CycleKind::pcr ? "PCR" : "CCR"; }

// A state of the run-length register lies on a cycle inherited from the
// cycling register of order n-1 iff its end bits agree.
inline CycleKind classify_state(const State& s)
{
    return s.front() == s.back() ? CycleKind::pcr : CycleKind::ccr;
}

struct Cycle {
    // Distinct states in successor order, starting at the representative.
    std::vector<State> states;
    State representative;
    CycleKind kind = CycleKind::pcr;

    // Least period, i.e. the number of distinct states.
    std::size_t period() const { return states.size(); }
};

class CycleStructure {
public:
    int order() const { return order_; }

    // Sorted by representative within each kind.
    const std::vector<Cycle>& pcr_cycles() const { return pcr_; }
    const std::vector<Cycle>& ccr_cycles() const { return ccr_; }

    std::size_t size() const { return pcr_.size() + ccr_.size(); }

    // Cycle ids run over the PCR-type cycles first, then the CCR-type ones.
    const Cycle& cycle(std::size_t id) const
    {
        return id < pcr_.size() ? pcr_[id] : ccr_[id - pcr_.size()];
    }

    std::size_t cycle_id(const State& s) const { return index_[s.word()]; }

    // One cycle per line: `kind period (representative)`.
    std::string to_text() const
    {
        std::string out;
        for (std::size_t id = 0; id < size(); ++id) {
            const Cycle& c = cycle(id);
            out += to_string(c.kind);
            out += ' ';
            out += std::to_string(c.period());
            out += " (";
            out += c.representative.to_string();
            out += ")\n";
        }
        return out;
    }

private:
    friend CycleStructure decompose(int n);

    int order_ = 0;
    std::vector<Cycle> pcr_;
    std::vector<Cycle> ccr_;
    std::vector<std::uint32_t> index_;
};

inline constexpr int max_decompose_order = 24;

// Splits all 2^n states into the cycles of the run-length register by
// following successors from each unvisited state in increasing order; the
// first state reached on a cycle is therefore its least.
inline CycleStructure decompose(int n)
{
    if (n < 3 || n > max_decompose_order)
        throw order_out_of_range("decompose needs 3 <= n <= 24, got " + std::to_string(n));

    constexpr std::uint32_t ccr_flag = std::uint32_t{1} << 31;
    constexpr std::uint32_t unvisited = ~std::uint32_t{0};

    CycleStructure cs;
    cs.order_ = n;
    const std::uint64_t total = std::uint64_t{1} << n;
    cs.index_.assign(total, unvisited);

    for (std::uint64_t w = 0; w < total; ++w) {
        if (cs.index_[w] != unvisited)
            continue;
        Cycle c;
        c.representative = State(w, n);
        c.kind = classify_state(c.representative);
        auto& list = c.kind == CycleKind::pcr ? cs.pcr_ : cs.ccr_;
        const auto tag = static_cast<std::uint32_t>(list.size()) | (c.kind == CycleKind::ccr ? ccr_flag : 0);
        State s = c.representative;
        do {
            cs.index_[s.word()] = tag;
            c.states.push_back(s);
            s = prr_successor(s);
        } while (s != c.representative);
        list.push_back(std::move(c));
    }

    const auto pcr_count = static_cast<std::uint32_t>(cs.pcr_.size());
    for (auto& id : cs.index_)
        if (id & ccr_flag)
            id = (id & ~ccr_flag) + pcr_count;
    return cs;
}

inline std::uint64_t euler_totient(std::uint64_t m)
{
    std::uint64_t result = m;
    for (std::uint64_t p = 2; p * p <= m; ++p) {
        if (m % p != 0)
            continue;
        while (m % p == 0)
            m /= p;
        result -= result / p;
    }
    if (m > 1)
        result -= result / m;
    return result;
}

struct CycleCounts {
    std::uint64_t pcr = 0;   // cycles of the PCR of order n-1
    std::uint64_t ccr = 0;   // cycles of the CCR of order n-1
    std::uint64_t total = 0; // cycles of the PRR of order n
};

namespace detail {
__extension__ using uint128 = unsigned __int128;
} // namespace detail

// Closed-form cycle counts via the necklace-counting sums over divisors of n-1.
inline CycleCounts count_cycles(int n)
{
    if (n < 3 || n > max_order)
        throw order_out_of_range("count_cycles needs 3 <= n <= 64, got " + std::to_string(n));
    const auto m = static_cast<std::uint64_t>(n - 1);
    detail::uint128 all = 0;
    detail::uint128 odd = 0;
    for (std::uint64_t d = 1; d <= m; ++d) {
        if (m % d != 0)
            continue;
        const detail::uint128 term = static_cast<detail::uint128>(euler_totient(d)) << (m / d);
        all += term;
        if (d % 2 == 1)
            odd += term;
    }
    CycleCounts counts;
    counts.pcr = static_cast<std::uint64_t>(all / m);
    counts.ccr = static_cast<std::uint64_t>(odd / (2 * m));
    counts.total = counts.pcr + counts.ccr;
    return counts;
}

} // namespace prrdb
