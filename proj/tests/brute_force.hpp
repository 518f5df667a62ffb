#pragma once

// Slow reference implementations used only as test oracles. They work on
// '0'/'1' strings and follow the definitions literally.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <set>
#include <string>
#include <vector>

namespace bf {

inline std::string bits(std::uint64_t word, int n)
{
    std::string s(static_cast<std::size_t>(n), '0');
    for (int i = 0; i < n; ++i)
        if ((word >> (n - 1 - i)) & 1U)
            s[static_cast<std::size_t>(i)] = '1';
    return s;
}

inline std::string rotate(const std::string& s, std::size_t r)
{
    if (s.empty())
        return s;
    r %= s.size();
    return s.substr(r) + s.substr(0, r);
}

inline std::string complement(std::string s)
{
    for (char& ch : s)
        ch = ch == '0' ? '1' : '0';
    return s;
}

// Least among all rotations.
inline bool is_necklace(const std::string& s)
{
    for (std::size_t r = 1; r < s.size(); ++r)
        if (rotate(s, r) < s)
            return false;
    return true;
}

// u + ~u is least among all its rotations.
inline bool is_conecklace(const std::string& u) { return is_necklace(u + complement(u)); }

// One Lambda step: move everything up to and including the first 1 to the end.
inline std::string lambda_once(const std::string& u)
{
    const auto i = u.find('1');
    return rotate(u, i + 1);
}

inline std::string lambda(std::string u, std::uint64_t r)
{
    for (std::uint64_t i = 0; i < r; ++i)
        u = lambda_once(u);
    return u;
}

// One Theta step: fixes 1^m and 01^{m-1}, otherwise starts the string at its
// first 0 among positions 1..m-1.
inline std::string theta_once(const std::string& u)
{
    const std::string ones(u.size(), '1');
    if (u == ones || u == "0" + ones.substr(1))
        return u;
    return rotate(u, u.find('0', 1));
}

inline std::string theta(std::string u, std::uint64_t r)
{
    for (std::uint64_t i = 0; i < r; ++i)
        u = theta_once(u);
    return u;
}

inline bool is_de_bruijn(const std::string& s, int n)
{
    if (s.size() != (std::size_t{1} << n))
        return false;
    const std::string ss = s + s.substr(0, static_cast<std::size_t>(n - 1));
    std::set<std::string> seen;
    for (std::size_t i = 0; i < s.size(); ++i)
        if (!seen.insert(ss.substr(i, static_cast<std::size_t>(n))).second)
            return false;
    return true;
}

// Next state of the pure run-length register on strings.
inline std::string prr_next(const std::string& s)
{
    const char b = ((s[0] - '0') ^ (s[1] - '0') ^ (s.back() - '0')) ? '1' : '0';
    return s.substr(1) + b;
}

// Cycles of the pure run-length register, as sets of states.
inline std::vector<std::set<std::string>> prr_cycles(int n)
{
    std::vector<std::set<std::string>> out;
    std::set<std::string> seen;
    for (std::uint64_t w = 0; w < (std::uint64_t{1} << n); ++w) {
        std::string s = bits(w, n);
        if (seen.count(s))
            continue;
        std::set<std::string> cyc;
        while (cyc.insert(s).second) {
            seen.insert(s);
            s = prr_next(s);
        }
        out.push_back(std::move(cyc));
    }
    return out;
}

// Number of maximal runs in a string.
inline int run_count(const std::string& s)
{
    int runs = 1;
    for (std::size_t i = 1; i < s.size(); ++i)
        runs += s[i] != s[i - 1];
    return runs;
}

inline std::uint64_t lcm_range(int m)
{
    std::uint64_t l = 1;
    for (int i = 2; i <= m; ++i)
        l = std::lcm(l, static_cast<std::uint64_t>(i));
    return l;
}

} // namespace bf
