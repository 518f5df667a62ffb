#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "errors.hpp"

namespace prrdb {

inline constexpr int max_order = 64;

// Mask covering the low `order` bits of a word.
constexpr std::uint64_t order_mask(int order) noexcept
{
    return order >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << order) - 1;
}

// An ordered register content c_0, c_1, ..., c_{n-1} packed into one word.
//
// c_0 is stored in the most significant of the n used bits, so comparing the
// packed words compares the states lexicographically. The textual form reads
// c_0 first.
class State {
public:
    constexpr State() noexcept = default;

    State(std::uint64_t word, int order) : word_(word), order_(order)
    {
        if (order < 1 || order > max_order)
            throw order_out_of_range("state order " + std::to_string(order) + " is outside [1, 64]");
        word_ &= order_mask(order);
    }

    static State zeros(int order) { return State(0, order); }
    static State ones(int order) { return State(~std::uint64_t{0}, order); }

    static State from_string(std::string_view text)
    {
        if (text.empty() || text.size() > static_cast<std::size_t>(max_order))
            throw parse_error("state string must hold 1 to 64 bits, got " + std::to_string(text.size()));
        std::uint64_t word = 0;
        for (char ch : text) {
            if (ch != '0' && ch != '1')
                throw parse_error("state string contains '" + std::string(1, ch) + "'");
            word = (word << 1) | static_cast<std::uint64_t>(ch == '1');
        }
        return State(word, static_cast<int>(text.size()));
    }

    constexpr int order() const noexcept { return order_; }
    constexpr std::uint64_t word() const noexcept { return word_; }

    // c_i, with i = 0 the oldest bit.
    constexpr bool bit(int i) const noexcept { return (word_ >> (order_ - 1 - i)) & 1U; }
    constexpr bool front() const noexcept { return bit(0); }
    constexpr bool back() const noexcept { return word_ & 1U; }

    constexpr bool is_zero() const noexcept { return word_ == 0; }

    // c_1, ..., c_{n-1}
    State drop_front() const { return State(word_, order_ - 1); }
    // c_0, ..., c_{n-2}
    State drop_back() const { return State(word_ >> 1, order_ - 1); }
    // c_0, ..., c_{n-1}, b
    State push_back(bool b) const { return State((word_ << 1) | std::uint64_t{b}, order_ + 1); }
    // b, c_0, ..., c_{n-1}
    State push_front(bool b) const
    {
        return State(word_ | (std::uint64_t{b} << order_ % 64), order_ + 1);
    }

    std::string to_string() const
    {
        std::string out(static_cast<std::size_t>(order_), '0');
        for (int i = 0; i < order_; ++i)
            if (bit(i))
                out[static_cast<std::size_t>(i)] = '1';
        return out;
    }

    friend constexpr bool operator==(const State&, const State&) noexcept = default;

    // Lexicographic order; only meaningful between states of equal order.
    friend constexpr std::strong_ordering operator<=>(const State& a, const State& b) noexcept
    {
        if (auto c = a.order_ <=> b.order_; c != 0)
            return c;
        return a.word_ <=> b.word_;
    }

private:
    std::uint64_t word_ = 0;
    int order_ = 0;
};

namespace detail {

// Cyclic left rotation of the low `order` bits by `r` (0 <= r < order).
constexpr std::uint64_t rotate_left(std::uint64_t word, int order, int r) noexcept
{
    if (r == 0)
        return word;
    return ((word << r) | (word >> (order - r))) & order_mask(order);
}

// 0-based index (c_0 = 0) of the first set bit of a nonzero word.
constexpr int first_one(std::uint64_t word, int order) noexcept
{
    return std::countl_zero(word) - (64 - order);
}

} // namespace detail

inline State complement(const State& s) { return State(~s.word(), s.order()); }

inline State conjugate(const State& s)
{
    return State(s.word() ^ (std::uint64_t{1} << (s.order() - 1)), s.order());
}

inline State companion(const State& s) { return State(s.word() ^ 1U, s.order()); }

// L: c_1, ..., c_{n-1}, c_0
inline State left_shift(const State& s, int r = 1)
{
    const int n = s.order();
    r %= n;
    if (r < 0)
        r += n;
    return State(detail::rotate_left(s.word(), n, r), n);
}

inline int weight(const State& s) { return std::popcount(s.word()); }

struct RunLengthEncoding {
    std::vector<int> runs;

    int total() const
    {
        int sum = 0;
        for (int r : runs)
            sum += r;
        return sum;
    }

    // Number of maximal runs.
    std::size_t run_length() const { return runs.size(); }

    // Rebuilds the encoded state given the value of its first bit.
    State decode(bool first_bit) const
    {
        std::uint64_t word = 0;
        bool value = first_bit;
        for (int r : runs) {
            for (int i = 0; i < r; ++i)
                word = (word << 1) | std::uint64_t{value};
            value = !value;
        }
        return State(word, total());
    }

    std::string to_string() const
    {
        std::string out;
        for (std::size_t i = 0; i < runs.size(); ++i) {
            if (i != 0)
                out += ',';
            out += std::to_string(runs[i]);
        }
        return out;
    }

    friend bool operator==(const RunLengthEncoding&, const RunLengthEncoding&) = default;
};

inline RunLengthEncoding run_length_encode(const State& s)
{
    RunLengthEncoding rle;
    int run = 1;
    for (int i = 1; i < s.order(); ++i) {
        if (s.bit(i) == s.bit(i - 1)) {
            ++run;
        } else {
            rle.runs.push_back(run);
            run = 1;
        }
    }
    rle.runs.push_back(run);
    return rle;
}

namespace detail {

constexpr std::uint64_t lambda_once(std::uint64_t word, int order) noexcept
{
    const int shift = (first_one(word, order) + 1) % order;
    return rotate_left(word, order, shift);
}

constexpr bool theta_fixed(std::uint64_t word, int order) noexcept
{
    const std::uint64_t mask = order_mask(order);
    return word == mask || word == (mask >> 1);
}

constexpr std::uint64_t theta_once(std::uint64_t word, int order) noexcept
{
    if (theta_fixed(word, order))
        return word;
    // zeros at positions 1..n-1; position 0 is ignored
    const std::uint64_t zeros = ~word & (order_mask(order) >> 1);
    return rotate_left(word, order, first_one(zeros, order));
}

} // namespace detail

// Lambda^r: each step rotates the first 1 cyclically to the end.
//
// After the first step the state ends in a 1 and every further step moves the
// next 1 to the end, so the orbit has period wt(u). That bounds the work to
// wt(u) word rotations whatever r is.
inline State lambda_rotate(const State& u, std::uint64_t r)
{
    if (u.is_zero())
        throw zero_state_error();
    if (r == 0)
        return u;
    const int n = u.order();
    std::uint64_t word = detail::lambda_once(u.word(), n);
    const std::uint64_t rest = (r - 1) % static_cast<std::uint64_t>(weight(u));
    for (std::uint64_t i = 0; i < rest; ++i)
        word = detail::lambda_once(word, n);
    return State(word, n);
}

// Theta^r: fixes 1^m and 01^{m-1}; otherwise each step rotates the state to
// start at its first 0 found at index >= 1.
//
// After the first step the state starts with 0 and the orbit cycles through
// its zeros, so the period is the number of zeros.
inline State theta_rotate(const State& u, std::uint64_t r)
{
    const int n = u.order();
    if (r == 0 || detail::theta_fixed(u.word(), n))
        return u;
    std::uint64_t word = detail::theta_once(u.word(), n);
    if (detail::theta_fixed(word, n))
        return State(word, n);
    const std::uint64_t zeros = static_cast<std::uint64_t>(n - weight(u));
    const std::uint64_t rest = (r - 1) % zeros;
    for (std::uint64_t i = 0; i < rest; ++i)
        word = detail::theta_once(word, n);
    return State(word, n);
}

} // namespace prrdb
