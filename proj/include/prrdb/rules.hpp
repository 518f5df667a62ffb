#pragma once

#include <algorithm>
#include <charconv>
#include <concepts>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "canonical.hpp"
#include "errors.hpp"
#include "lcm.hpp"
#include "registers.hpp"
#include "state.hpp"

namespace prrdb {

enum class RuleKind { sala, psi1, psi2, upsilon1, upsilon2 };

inline constexpr RuleKind all_rule_kinds[] = {RuleKind::sala, RuleKind::psi1, RuleKind::psi2,
                                              RuleKind::upsilon1, RuleKind::upsilon2};

inline std::string_view to_string(RuleKind kind)
{
    switch (kind) {
    case RuleKind::sala: return "sala";
    case RuleKind::psi1: return "psi1";
    case RuleKind::psi2: return "psi2";
    case RuleKind::upsilon1: return "upsilon1";
    case RuleKind::upsilon2: return "upsilon2";
    }
    return "?";
}

inline RuleKind parse_rule_kind(std::string_view text)
{
    for (RuleKind kind : all_rule_kinds)
        if (to_string(kind) == text)
            return kind;
    throw parse_error("unknown rule kind '" + std::string(text) + "'");
}

inline bool uses_kset(RuleKind kind) { return kind == RuleKind::psi1 || kind == RuleKind::upsilon1; }
inline bool uses_k(RuleKind kind) { return kind == RuleKind::psi2 || kind == RuleKind::upsilon2; }

// The three ways a rule picks the state whose successor it flips.
enum class RuleClass {
    lexicographic, // joins each cycle at its representative
    psi,           // v_c = c_1..c_{n-1},1 is pinned down per cycle
    upsilon,       // x_c is pinned down per cycle
};

inline RuleClass rule_class(RuleKind kind)
{
    switch (kind) {
    case RuleKind::psi1:
    case RuleKind::psi2: return RuleClass::psi;
    case RuleKind::upsilon1:
    case RuleKind::upsilon2: return RuleClass::upsilon;
    default: return RuleClass::lexicographic;
    }
}

struct RuleSpec {
    RuleKind kind = RuleKind::sala;
    int n = 0;
    std::vector<int> kset;  // psi1, upsilon1
    std::uint64_t k = 0;    // psi2, upsilon2

    static RuleSpec sala(int n) { return {RuleKind::sala, n, {}, 0}; }
    static RuleSpec psi1(int n, std::vector<int> kset) { return {RuleKind::psi1, n, std::move(kset), 0}; }
    static RuleSpec psi2(int n, std::uint64_t k) { return {RuleKind::psi2, n, {}, k}; }
    static RuleSpec upsilon1(int n, std::vector<int> kset) { return {RuleKind::upsilon1, n, std::move(kset), 0}; }
    static RuleSpec upsilon2(int n, std::uint64_t k) { return {RuleKind::upsilon2, n, {}, k}; }

    // Text form: `psi1:n=6:kset=1,2,6`, `psi2:n=6:k=3`, `sala:n=6`.
    std::string to_string() const
    {
        std::string out(prrdb::to_string(kind));
        out += ":n=" + std::to_string(n);
        if (uses_kset(kind)) {
            out += ":kset=";
            for (std::size_t i = 0; i < kset.size(); ++i)
                out += (i ? "," : "") + std::to_string(kset[i]);
        } else if (uses_k(kind)) {
            out += ":k=" + std::to_string(k);
        }
        return out;
    }

    friend bool operator==(const RuleSpec&, const RuleSpec&) = default;
};

// Largest valid k for psi2 (inclusive) or upper bound for upsilon2
// (exclusive): lcm(1..n-2). Saturates at UINT64_MAX when it overflows, which
// leaves every representable k in range.
inline std::uint64_t rule_period(int n)
{
    return checked_lcm_range(n - 2).value_or(UINT64_MAX);
}

inline void validate(const RuleSpec& spec)
{
    const auto fail = [&spec](const std::string& why) {
        throw invalid_spec(spec.to_string() + ": " + why);
    };
    if (spec.n < 3 || spec.n > max_order)
        fail("n must lie in [3, 64]");

    if (uses_kset(spec.kind)) {
        const auto& ks = spec.kset;
        const auto t = static_cast<int>(ks.size());
        if (t < 2 || t > spec.n - 1)
            fail("kset size must lie in [2, n-1]");
        if (ks.front() != 1)
            fail("kset must start at 1");
        if (ks.back() != spec.n)
            fail("kset must end at n");
        if (!std::ranges::is_sorted(ks, std::less_equal<>{}) || std::ranges::adjacent_find(ks) != ks.end())
            fail("kset must be strictly increasing");
        if (ks[ks.size() - 2] >= spec.n - 1)
            fail("second-largest kset entry must be below n-1");
    } else if (spec.kind == RuleKind::psi2) {
        if (spec.k < 1 || spec.k > rule_period(spec.n))
            fail("k must lie in [1, lcm(1..n-2)]");
    } else if (spec.kind == RuleKind::upsilon2) {
        const std::uint64_t period = rule_period(spec.n);
        if (period != UINT64_MAX && spec.k >= period)
            fail("k must lie in [0, lcm(1..n-2) - 1]");
    }
}

namespace detail {

inline int parse_int_field(std::string_view text, std::string_view field)
{
    int value = 0;
    const auto* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (text.empty() || ec != std::errc{} || ptr != end)
        throw parse_error("field '" + std::string(field) + "': expected an integer, got '" + std::string(text) + "'");
    return value;
}

inline std::uint64_t parse_u64_field(std::string_view text, std::string_view field)
{
    std::uint64_t value = 0;
    const auto* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (text.empty() || ec != std::errc{} || ptr != end)
        throw parse_error("field '" + std::string(field) + "': expected a non-negative integer, got '" +
                          std::string(text) + "'");
    return value;
}

inline std::string_view expect_field(std::string_view part, std::string_view name)
{
    const std::string prefix = std::string(name) + "=";
    if (!part.starts_with(prefix))
        throw parse_error("field '" + std::string(name) + "': expected '" + prefix + "...', got '" +
                          std::string(part) + "'");
    return part.substr(prefix.size());
}

inline std::vector<std::string_view> split(std::string_view text, char sep)
{
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        const auto pos = text.find(sep, start);
        parts.push_back(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos)
            break;
        start = pos + 1;
    }
    return parts;
}

} // namespace detail

// Parses the text grammar. Only syntax is checked here; call validate() for
// the parameter constraints.
inline RuleSpec parse_rule_spec(std::string_view text)
{
    const auto parts = detail::split(text, ':');
    RuleSpec spec;
    spec.kind = parse_rule_kind(parts[0]);
    const std::size_t expected = spec.kind == RuleKind::sala ? 2 : 3;
    if (parts.size() != expected) {
        const std::string fields = uses_kset(spec.kind) ? "'n' and 'kset'" : uses_k(spec.kind) ? "'n' and 'k'" : "'n'";
        throw parse_error("rule '" + std::string(parts[0]) + "' takes field(s) " + fields + ", got " +
                          std::to_string(parts.size() - 1) + " field(s)");
    }
    spec.n = detail::parse_int_field(detail::expect_field(parts[1], "n"), "n");
    if (uses_kset(spec.kind)) {
        for (auto item : detail::split(detail::expect_field(parts[2], "kset"), ','))
            spec.kset.push_back(detail::parse_int_field(item, "kset"));
    } else if (uses_k(spec.kind)) {
        spec.k = detail::parse_u64_field(detail::expect_field(parts[2], "k"), "k");
    }
    return spec;
}

// --- selectors --------------------------------------------------------------

// Picks exactly one state u = c_1..c_{n-1}, with c_1 = 1, out of every PCR
// cycle of order n-1 other than (0^{n-1}). Any such predicate yields a valid
// rule of the psi class.
template <class S>
concept PsiSelector = requires(const S& sel, const State& u) {
    { sel(u) } -> std::convertible_to<bool>;
};

// Picks exactly one state w starting with 0 out of every PCR cycle of order
// n-1 other than (1^{n-1}). Any such predicate yields a valid rule of the
// upsilon class.
template <class S>
concept UpsilonSelector = requires(const S& sel, const State& w) {
    { sel(w) } -> std::convertible_to<bool>;
};

namespace detail {

// The entry k_i of kset with k_i <= value < k_{i+1}.
inline int bracket(std::span<const int> kset, int value)
{
    int chosen = kset.front();
    for (int k : kset) {
        if (k > value)
            break;
        chosen = k;
    }
    return chosen;
}

} // namespace detail

struct Psi1Selector {
    std::span<const int> kset;

    bool operator()(const State& u) const
    {
        const int k = detail::bracket(kset, weight(u));
        return is_necklace(lambda_rotate(u, static_cast<std::uint64_t>(k)));
    }
};

// Selects u when Lambda^{k-1} u is a necklace, reading Lambda^0 as a full
// turn Lambda^{wt(u)} of the orbit. k = 1 therefore picks the same states as
// psi1 with kset {1, 2, ..., n-2, n}, and k = 2 the same as kset {1, n}.
struct Psi2Selector {
    std::uint64_t k;

    bool operator()(const State& u) const
    {
        const std::uint64_t steps = k == 1 ? static_cast<std::uint64_t>(weight(u)) : k - 1;
        return is_necklace(lambda_rotate(u, steps));
    }
};

struct Upsilon1Selector {
    std::span<const int> kset;

    bool operator()(const State& w) const
    {
        const int zeros = w.order() - weight(w);
        const int k = detail::bracket(kset, zeros);
        return is_necklace(theta_rotate(w, static_cast<std::uint64_t>(k - 1)));
    }
};

// Selects w when Theta^{k-1} w is a necklace. w starts with 0, so its Theta
// orbit has period z = number of zeros and k = 0 is read as Theta^{z-1}.
// k = 1 picks the same states as upsilon1 with kset {1, n}.
struct Upsilon2Selector {
    std::uint64_t k;

    bool operator()(const State& w) const
    {
        const auto zeros = static_cast<std::uint64_t>(w.order() - weight(w));
        const std::uint64_t steps = k == 0 ? zeros - 1 : k - 1;
        return is_necklace(theta_rotate(w, steps));
    }
};

// --- critical sets ----------------------------------------------------------

inline bool in_critical_set_sala(const State& c)
{
    const State u = c.drop_front();
    return is_necklace(u) || is_conecklace(u);
}

template <PsiSelector Sel>
bool in_psi_critical_set(const State& c, const Sel& select)
{
    const State u = c.drop_front();
    return c.bit(1) ? static_cast<bool>(select(u)) : is_conecklace(u);
}

// y_c = ~c_1, ..., ~c_{n-2}, 0
inline State upsilon_y(const State& c)
{
    return complement(c.drop_front().drop_back()).push_back(false);
}

// w_c = 0, c_1, ..., c_{n-2}
inline State upsilon_w(const State& c)
{
    const State head = c.drop_back();
    return State(head.word() & (order_mask(head.order()) >> 1), head.order());
}

template <UpsilonSelector Sel>
bool in_upsilon_critical_set(const State& c, const Sel& select)
{
    if (c.back())
        return is_conecklace(upsilon_y(c));
    return static_cast<bool>(select(upsilon_w(c)));
}

inline bool in_critical_set_psi1(const State& c, std::span<const int> kset)
{
    return in_psi_critical_set(c, Psi1Selector{kset});
}

inline bool in_critical_set_psi2(const State& c, std::uint64_t k)
{
    return in_psi_critical_set(c, Psi2Selector{k});
}

inline bool in_critical_set_upsilon1(const State& c, std::span<const int> kset)
{
    return in_upsilon_critical_set(c, Upsilon1Selector{kset});
}

inline bool in_critical_set_upsilon2(const State& c, std::uint64_t k)
{
    return in_upsilon_critical_set(c, Upsilon2Selector{k});
}

// A validated spec bound to its predicate. Cheap to copy.
class SuccessorRule {
public:
    explicit SuccessorRule(RuleSpec spec) : spec_(std::move(spec)) { validate(spec_); }

    const RuleSpec& spec() const { return spec_; }
    int order() const { return spec_.n; }

    bool in_critical_set(const State& c) const
    {
        switch (spec_.kind) {
        case RuleKind::sala: return in_critical_set_sala(c);
        case RuleKind::psi1: return in_critical_set_psi1(c, spec_.kset);
        case RuleKind::psi2: return in_critical_set_psi2(c, spec_.k);
        case RuleKind::upsilon1: return in_critical_set_upsilon1(c, spec_.kset);
        case RuleKind::upsilon2: return in_critical_set_upsilon2(c, spec_.k);
        }
        return false;
    }

    bool next_bit(const State& c) const { return prr_next_bit(c) ^ in_critical_set(c); }

    State successor(const State& c) const { return shift_in(c, next_bit(c)); }

private:
    RuleSpec spec_;
};

inline void check_order(const RuleSpec& spec, const State& s)
{
    if (s.order() != spec.n)
        throw invalid_spec(spec.to_string() + ": state " + s.to_string() + " has order " +
                           std::to_string(s.order()));
}

inline bool in_critical_set(const RuleSpec& spec, const State& s)
{
    check_order(spec, s);
    return SuccessorRule(spec).in_critical_set(s);
}

inline bool next_bit(const RuleSpec& spec, const State& s)
{
    check_order(spec, s);
    return SuccessorRule(spec).next_bit(s);
}

// Streams the sequence one bit at a time holding only the current window.
// Each call emits the oldest bit of the window and then advances it.
class SequenceGenerator {
public:
    SequenceGenerator(const RuleSpec& spec, const State& start) : rule_(spec), window_(start)
    {
        check_order(spec, start);
    }

    bool next()
    {
        const bool out = window_.front();
        window_ = rule_.successor(window_);
        return out;
    }

    const State& window() const { return window_; }

private:
    SuccessorRule rule_;
    State window_;
};

struct SequenceRecord {
    std::string bits;
    RuleSpec spec;
    State start;
};

inline std::string generate(const RuleSpec& spec, const State& start, std::uint64_t count)
{
    SequenceGenerator gen(spec, start);
    std::string out;
    out.reserve(count);
    for (std::uint64_t i = 0; i < count; ++i)
        out.push_back(gen.next() ? '1' : '0');
    return out;
}

// One full period (2^n bits) from the given start state.
inline SequenceRecord generate_period(const RuleSpec& spec, const State& start)
{
    if (spec.n > 40)
        throw order_out_of_range("a full period of order " + std::to_string(spec.n) + " is too large to hold");
    return {generate(spec, start, std::uint64_t{1} << spec.n), spec, start};
}

inline SequenceRecord generate_period(const RuleSpec& spec)
{
    return generate_period(spec, State::zeros(spec.n));
}

// --- spec enumeration -------------------------------------------------------

// Every valid kset for order n: {1} + S + {n} for S a subset of {2..n-2},
// ordered by size and then lexicographically.
inline std::vector<std::vector<int>> all_ksets(int n)
{
    if (n < 3 || n > 32)
        throw order_out_of_range("kset enumeration needs 3 <= n <= 32, got " + std::to_string(n));
    const int free_count = n - 3; // candidates 2..n-2
    std::vector<std::vector<int>> out;
    for (int size = 0; size <= free_count; ++size) {
        std::vector<bool> pick(static_cast<std::size_t>(free_count), false);
        std::fill(pick.begin(), pick.begin() + size, true);
        do {
            std::vector<int> ks{1};
            for (int i = 0; i < free_count; ++i)
                if (pick[static_cast<std::size_t>(i)])
                    ks.push_back(i + 2);
            ks.push_back(n);
            out.push_back(std::move(ks));
        } while (std::prev_permutation(pick.begin(), pick.end()));
    }
    return out;
}

// Every valid spec of a kind, in table order (ksets as above, k ascending).
inline std::vector<RuleSpec> all_specs(RuleKind kind, int n)
{
    std::vector<RuleSpec> out;
    switch (kind) {
    case RuleKind::sala:
        out.push_back(RuleSpec::sala(n));
        break;
    case RuleKind::psi1:
    case RuleKind::upsilon1:
        for (auto& ks : all_ksets(n))
            out.push_back({kind, n, std::move(ks), 0});
        break;
    case RuleKind::psi2:
    case RuleKind::upsilon2: {
        const std::uint64_t period = lcm_range(n - 2);
        const std::uint64_t first = kind == RuleKind::psi2 ? 1 : 0;
        for (std::uint64_t k = first; k < first + period; ++k)
            out.push_back({kind, n, {}, k});
        break;
    }
    }
    for (const auto& spec : out)
        validate(spec);
    return out;
}

} // namespace prrdb
