#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "lcm.hpp"
#include "rules.hpp"

namespace prrdb {

inline constexpr int max_oracle_order = 24;

struct RepeatedWindow {
    std::size_t position = 0; // start of the second occurrence
    std::string window;
};

namespace detail {

inline void check_sequence(std::string_view bits, int n)
{
    if (n < 1 || n > max_oracle_order)
        throw order_out_of_range("de Bruijn checks need 1 <= n <= 24, got " + std::to_string(n));
    const std::uint64_t expected = std::uint64_t{1} << n;
    if (bits.size() != expected)
        throw length_mismatch("expected " + std::to_string(expected) + " bits for order " + std::to_string(n) +
                              ", got " + std::to_string(bits.size()));
    for (char ch : bits)
        if (ch != '0' && ch != '1')
            throw parse_error("sequence contains '" + std::string(1, ch) + "'");
}

} // namespace detail

// First cyclic n-window that occurs twice, scanning from position 0.
inline std::optional<RepeatedWindow> first_repeated_window(std::string_view bits, int n)
{
    detail::check_sequence(bits, n);
    const std::size_t len = bits.size();
    const std::uint64_t mask = order_mask(n);
    std::vector<bool> seen(len, false);
    std::uint64_t window = 0;
    for (int i = 0; i < n; ++i)
        window = (window << 1) | static_cast<std::uint64_t>(bits[static_cast<std::size_t>(i)] == '1');
    for (std::size_t pos = 0; pos < len; ++pos) {
        if (seen[window])
            return RepeatedWindow{pos, State(window, n).to_string()};
        seen[window] = true;
        window = ((window << 1) | static_cast<std::uint64_t>(bits[(pos + static_cast<std::size_t>(n)) % len] == '1')) &
                 mask;
    }
    return std::nullopt;
}

// Every n-tuple occurs exactly once among the cyclic windows.
inline bool is_de_bruijn(std::string_view bits, int n) { return !first_repeated_window(bits, n); }

// The rotation that starts at the unique occurrence of 0^n.
inline std::string canonical_form(std::string_view bits, int n)
{
    if (!is_de_bruijn(bits, n))
        throw not_de_bruijn("sequence is not de Bruijn of order " + std::to_string(n));
    const std::string doubled = std::string(bits) + std::string(bits);
    const auto start = doubled.find(std::string(static_cast<std::size_t>(n), '0'));
    return doubled.substr(start, bits.size());
}

// Family sizes: 2^{n-3} for the kset rules, lcm(1..n-2) for the k rules.
inline std::optional<std::uint64_t> expected_family_size(RuleKind kind, int n)
{
    switch (kind) {
    case RuleKind::sala: return 1;
    case RuleKind::psi1:
    case RuleKind::upsilon1: return std::uint64_t{1} << (n - 3);
    case RuleKind::psi2:
    case RuleKind::upsilon2: return checked_lcm_range(n - 2);
    }
    return std::nullopt;
}

struct FamilyRow {
    RuleSpec spec;
    std::string sequence; // canonical form when de Bruijn, raw output otherwise
    bool de_bruijn = false;
};

struct FamilyReport {
    std::string label;
    int n = 0;
    std::vector<FamilyRow> rows;
    std::optional<std::uint64_t> expected;
    // (earlier spec, later spec) pairs whose sequences coincide
    std::vector<std::pair<std::string, std::string>> collisions;
    std::size_t distinct = 0;

    std::size_t total() const { return rows.size(); }

    bool all_de_bruijn() const
    {
        for (const auto& r : rows)
            if (!r.de_bruijn)
                return false;
        return true;
    }

    bool matches_expected() const { return expected && *expected == distinct && all_de_bruijn(); }

    // `spec,canonical_sequence,is_de_bruijn` rows followed by a summary line.
    std::string to_csv() const
    {
        std::string out = "spec,canonical_sequence,is_de_bruijn\n";
        for (const auto& r : rows)
            out += "\"" + r.spec.to_string() + "\"," + r.sequence + "," + (r.de_bruijn ? "true" : "false") + "\n";
        out += "# family=" + label + " n=" + std::to_string(n) + " total=" + std::to_string(total()) +
               " distinct=" + std::to_string(distinct) +
               " expected=" + (expected ? std::to_string(*expected) : std::string("none")) +
               " collisions=" + std::to_string(collisions.size()) + "\n";
        return out;
    }
};

namespace detail {

inline void tally(FamilyReport& report)
{
    std::map<std::string, std::string> first_seen;
    report.collisions.clear();
    for (const auto& row : report.rows) {
        auto [it, inserted] = first_seen.emplace(row.sequence, row.spec.to_string());
        if (!inserted)
            report.collisions.emplace_back(it->second, row.spec.to_string());
    }
    report.distinct = first_seen.size();
}

} // namespace detail

inline constexpr int min_family_order = 4;
inline constexpr int max_family_order = 11;

// Generates every valid spec of a kind from 0^n and counts the distinct
// sequences up to rotation.
inline FamilyReport enumerate_family(RuleKind kind, int n)
{
    if (n < min_family_order || n > max_family_order)
        throw order_out_of_range("family enumeration needs 4 <= n <= 11, got " + std::to_string(n));
    FamilyReport report;
    report.label = std::string(to_string(kind));
    report.n = n;
    report.expected = expected_family_size(kind, n);
    for (auto& spec : all_specs(kind, n)) {
        std::string bits = generate_period(spec).bits;
        const bool ok = is_de_bruijn(bits, n);
        if (ok)
            bits = canonical_form(bits, n);
        report.rows.push_back({std::move(spec), std::move(bits), ok});
    }
    detail::tally(report);
    return report;
}

// Concatenates the rows of several reports of the same order and recounts.
inline FamilyReport family_union(std::span<const FamilyReport> reports)
{
    FamilyReport out;
    for (const auto& r : reports) {
        if (!out.label.empty()) {
            out.label += "+";
            if (r.n != out.n)
                throw order_out_of_range("cannot unite families of order " + std::to_string(out.n) + " and " +
                                         std::to_string(r.n));
        }
        out.label += r.label;
        out.n = r.n;
        out.rows.insert(out.rows.end(), r.rows.begin(), r.rows.end());
    }
    detail::tally(out);
    return out;
}

inline FamilyReport family_union(std::initializer_list<FamilyReport> reports)
{
    return family_union(std::span<const FamilyReport>(reports.begin(), reports.size()));
}

// The two-part tables of sequences from 0^n: "table1" lists psi1 then psi2,
// "table3" lists upsilon1 then upsilon2. One row per spec:
// `<rule> <entry> <parameter> <sequence>`.
inline std::string table_text(std::string_view which, int n)
{
    RuleKind first;
    RuleKind second;
    if (which == "table1") {
        first = RuleKind::psi1;
        second = RuleKind::psi2;
    } else if (which == "table3") {
        first = RuleKind::upsilon1;
        second = RuleKind::upsilon2;
    } else {
        throw parse_error("unknown table '" + std::string(which) + "', expected table1 or table3");
    }
    if (n < 3 || n > max_family_order)
        throw order_out_of_range("tables need 3 <= n <= 11, got " + std::to_string(n));

    std::string out;
    for (RuleKind kind : {first, second}) {
        std::size_t entry = 0;
        for (const auto& spec : all_specs(kind, n)) {
            std::string param;
            if (uses_kset(kind)) {
                param = "{";
                for (std::size_t i = 0; i < spec.kset.size(); ++i)
                    param += (i ? "," : "") + std::to_string(spec.kset[i]);
                param += "}";
            } else {
                param = std::to_string(spec.k);
            }
            out += std::string(to_string(kind)) + " " + std::to_string(++entry) + " " + param + " " +
                   generate_period(spec).bits + "\n";
        }
    }
    return out;
}

} // namespace prrdb
