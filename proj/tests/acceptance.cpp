// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fail.
// Pass criterion numbers as arguments to run only those.

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "brute_force.hpp"
#include "reference_data.hpp"
#include "prrdb/prrdb.hpp"

using prrdb::RuleKind;
using prrdb::RuleSpec;
using prrdb::State;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

// Collects the first few failures of a criterion.
class Check {
public:
    void expect(bool ok, const std::string& what)
    {
        if (ok)
            return;
        if (++failures_ <= 3)
            notes_ += (notes_.empty() ? "" : "; ") + what;
    }

    Outcome done(const std::string& summary) const
    {
        if (failures_ == 0)
            return {true, summary};
        return {false, std::to_string(failures_) + " failure(s): " + notes_};
    }

private:
    int failures_ = 0;
    std::string notes_;
};

Outcome golden_tables()
{
    Check c;
    for (const char* name : {"table1", "table3"}) {
        const auto rows = ref::read_table(std::string(name) + "_n6.txt");
        std::istringstream produced(prrdb::table_text(name, 6));
        std::string rule, param, bits;
        int entry = 0;
        std::size_t i = 0;
        while (produced >> rule >> entry >> param >> bits) {
            c.expect(i < rows.size() && rows[i].rule == rule && rows[i].entry == entry && rows[i].sequence == bits,
                     std::string(name) + " row " + std::to_string(i + 1));
            ++i;
        }
        c.expect(i == 20 && rows.size() == 20, std::string(name) + " has " + std::to_string(i) + " rows");
    }
    return c.done("40 of 40 sequences match table1 and table3 byte for byte");
}

std::size_t de_bruijn_sweep(Check& c, RuleKind kind, int lo, int hi)
{
    std::size_t specs = 0;
    for (int n = lo; n <= hi; ++n)
        for (const auto& spec : prrdb::all_specs(kind, n)) {
            ++specs;
            c.expect(prrdb::is_de_bruijn(prrdb::generate(spec, State::zeros(n), std::uint64_t{1} << n), n),
                     spec.to_string());
        }
    return specs;
}

Outcome de_bruijn_property()
{
    Check c;
    std::size_t specs = 0;
    for (RuleKind kind : prrdb::all_rule_kinds)
        specs += de_bruijn_sweep(c, kind, 3, 11);
    return c.done(std::to_string(specs) + " specs, n = 3..11, all de Bruijn");
}

Outcome family_sizes()
{
    Check c;
    for (int n = 4; n <= 10; ++n)
        for (RuleKind kind : {RuleKind::psi1, RuleKind::psi2, RuleKind::upsilon1, RuleKind::upsilon2}) {
            const auto report = prrdb::enumerate_family(kind, n);
            const std::uint64_t want =
                prrdb::uses_kset(kind) ? std::uint64_t{1} << (n - 3) : bf::lcm_range(n - 2);
            c.expect(report.all_de_bruijn() && report.distinct == want,
                     std::string(prrdb::to_string(kind)) + " n=" + std::to_string(n) + " distinct=" +
                         std::to_string(report.distinct) + " want " + std::to_string(want));
        }
    return c.done("2^{n-3} and lcm(1..n-2) distinct sequences for n = 4..10");
}

Outcome union_counts()
{
    Check c;
    const std::pair<std::size_t, std::size_t> same[] = {{0, 1}, {1, 2}, {2, 3}, {7, 0}};
    for (auto [a, b] : {std::pair{RuleKind::psi1, RuleKind::psi2}, std::pair{RuleKind::upsilon1, RuleKind::upsilon2}}) {
        const auto first = prrdb::enumerate_family(a, 6);
        const auto second = prrdb::enumerate_family(b, 6);
        const auto uni = prrdb::family_union({first, second});
        c.expect(uni.distinct == 16, uni.label + " distinct=" + std::to_string(uni.distinct));
        for (const auto& [x, y] : uni.collisions) {
            bool listed = false;
            for (auto [i, j] : same)
                listed = listed || (x == first.rows[i].spec.to_string() && y == second.rows[j].spec.to_string());
            c.expect(listed, "unlisted overlap " + x + " = " + y);
        }
        for (auto [i, j] : same)
            c.expect(first.rows[i].sequence == second.rows[j].sequence,
                     uni.label + " entry " + std::to_string(i + 1) + " vs " + std::to_string(j + 1));
    }
    return c.done("both unions hold 16 sequences; entries 1,2,3,8 = 2,3,4,1");
}

Outcome cycle_counts()
{
    Check c;
    for (int n = 3; n <= 16; ++n) {
        const auto cs = prrdb::decompose(n);
        const auto z = prrdb::count_cycles(n);
        c.expect(z.pcr == cs.pcr_cycles().size() && z.ccr == cs.ccr_cycles().size() && z.total == cs.size(),
                 "n=" + std::to_string(n) + " closed form " + std::to_string(z.total) + " vs " +
                     std::to_string(cs.size()));
    }
    const auto cs = prrdb::decompose(6);
    c.expect(cs.pcr_cycles().size() == 8 && cs.ccr_cycles().size() == 4, "n=6 split");
    for (std::size_t i = 0; i < 8 && i < cs.pcr_cycles().size(); ++i)
        c.expect(cs.pcr_cycles()[i].representative.drop_back().to_string() == ref::pcr_n6[i],
                 "PCR " + std::to_string(i + 1));
    for (std::size_t i = 0; i < 4 && i < cs.ccr_cycles().size(); ++i)
        c.expect(cs.ccr_cycles()[i].representative.drop_back().to_string() == ref::ccr_n6[i],
                 "CCR " + std::to_string(i + 1));
    return c.done("closed form equals decomposition for n = 3..16; n = 6 lists 8 PCR + 4 CCR cycles");
}

Outcome lemma_invariants()
{
    Check c;
    for (int n = 3; n <= 14; ++n) {
        const auto cs = prrdb::decompose(n);
        for (std::size_t id = 0; id < cs.size(); ++id) {
            const auto& cyc = cs.cycle(id);
            const auto runs = prrdb::run_length_encode(cyc.representative).run_length();
            for (const State& s : cyc.states) {
                c.expect(prrdb::classify_state(s) == cyc.kind, "mixed cycle at " + s.to_string());
                c.expect(prrdb::run_length_encode(s).run_length() == runs, "run length varies at " + s.to_string());
            }
        }
    }
    const auto six = prrdb::decompose(6);
    const auto& c2 = six.ccr_cycles().at(1);
    c.expect(c2.period() == 10, "second CCR cycle period");
    for (const State& s : c2.states)
        c.expect(prrdb::run_length_encode(s).run_length() == 4, "run length of " + s.to_string());
    return c.done("pure cycle types and uniform run length for n = 3..14; all ten states of the second CCR cycle have "
                  "run length 4");
}

std::size_t critical_set_sweep(Check& c, RuleKind kind, int lo, int hi)
{
    std::size_t specs = 0;
    for (int n = lo; n <= hi; ++n) {
        const auto cs = prrdb::decompose(n);
        const State root = prrdb::rule_class(kind) == prrdb::RuleClass::upsilon ? State::ones(n) : State::zeros(n);
        for (const auto& spec : prrdb::all_specs(kind, n)) {
            ++specs;
            try {
                const auto report = prrdb::verify_critical_set(cs, spec);
                c.expect(report.passed(), report.summary());
                c.expect(report.tree.deviation_states == 2 * (prrdb::count_cycles(n).total - 1),
                         spec.to_string() + " deviation count");
                c.expect(report.tree.representatives[report.tree.root] == root, spec.to_string() + " root");
            } catch (const prrdb::error& e) {
                c.expect(false, spec.to_string() + ": " + e.what());
            }
        }
    }
    return specs;
}

bool negative_control_fails()
{
    const auto cs = prrdb::decompose(8);
    const prrdb::SuccessorRule rule(RuleSpec::psi2(8, 5));
    const std::uint64_t flip = 0x5A;
    try {
        const auto report = prrdb::verify_critical_set(cs, RuleSpec::psi2(8, 5), [&](const State& s) {
            return rule.in_critical_set(s) != (s.word() == flip);
        });
        return !report.passed();
    } catch (const prrdb::not_paired&) {
        return true;
    } catch (const prrdb::not_spanning&) {
        return true;
    }
}

Outcome critical_sets()
{
    Check c;
    std::size_t specs = 0;
    for (RuleKind kind : prrdb::all_rule_kinds)
        specs += critical_set_sweep(c, kind, 3, 12);
    c.expect(negative_control_fails(), "mutated predicate was accepted");
    return c.done(std::to_string(specs) + " specs, n = 3..12, trees span with 2(Z-1) deviation states; "
                                          "mutated predicate rejected");
}

Outcome canonical_oracles()
{
    Check c;
    std::uint64_t states = 0;
    for (int n = 1; n <= 16; ++n)
        for (std::uint64_t w = 0; w < (std::uint64_t{1} << n); ++w) {
            const State s(w, n);
            const std::string str = s.to_string();
            c.expect(prrdb::is_necklace(s) == bf::is_necklace(str), "necklace " + str);
            c.expect(prrdb::is_conecklace(s) == bf::is_conecklace(str), "co-necklace " + str);
            ++states;
        }
    return c.done(std::to_string(states) + " states of length 1..16 agree with brute force");
}

double best_ns_per_bit(const RuleSpec& spec, std::uint64_t bits)
{
    double best = 1e300;
    for (int rep = 0; rep < 5; ++rep)
        best = std::min(best, prrdb::time_generation(spec, bits).ns_per_bit());
    return best;
}

Outcome complexity()
{
    Check c;
    constexpr std::uint64_t bits = 400'000;
    std::string summary;
    for (const auto& make : {std::function<RuleSpec(int)>([](int n) { return RuleSpec::sala(n); }),
                             std::function<RuleSpec(int)>([](int n) { return RuleSpec::psi2(n, 2); })}) {
        std::vector<double> ns;
        for (int n : {8, 16, 32, 64})
            ns.push_back(best_ns_per_bit(make(n), bits));
        const double ratio = ns.back() / ns.front();
        char line[160];
        std::snprintf(line, sizeof line, "%s ns/bit %.1f %.1f %.1f %.1f (ratio %.2f)",
                      std::string(prrdb::to_string(make(8).kind)).c_str(), ns[0], ns[1], ns[2], ns[3], ratio);
        summary += (summary.empty() ? "" : "; ") + std::string(line);
        c.expect(ratio <= 16.0, line);
    }
    return c.done(summary);
}

Outcome lexicographic_properties()
{
    Check c;
    const std::size_t a = de_bruijn_sweep(c, RuleKind::sala, 3, 12);
    const std::size_t b = critical_set_sweep(c, RuleKind::sala, 3, 12);
    return c.done(std::to_string(a) + " sequences de Bruijn and " + std::to_string(b) +
                  " critical sets valid for n = 3..12");
}

} // namespace

int main(int argc, char** argv)
{
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
        {"golden tables", golden_tables},
        {"de Bruijn property", de_bruijn_property},
        {"family sizes", family_sizes},
        {"n = 6 union counts", union_counts},
        {"cycle counts", cycle_counts},
        {"cycle lemmas", lemma_invariants},
        {"critical-set validation", critical_sets},
        {"canonical predicates", canonical_oracles},
        {"per-bit cost growth", complexity},
        {"lexicographic rule", lexicographic_properties},
    };
    std::vector<std::size_t> selected;
    for (int a = 1; a < argc; ++a) {
        const std::size_t k = std::strtoul(argv[a], nullptr, 10);
        if (k < 1 || k > criteria.size()) {
            std::fprintf(stderr, "no criterion '%s'\n", argv[a]);
            return 2;
        }
        selected.push_back(k - 1);
    }
    if (selected.empty())
        for (std::size_t i = 0; i < criteria.size(); ++i)
            selected.push_back(i);

    int failed = 0;
    for (std::size_t i : selected) {
        const auto start = std::chrono::steady_clock::now();
        Outcome out;
        try {
            out = criteria[i].second();
        } catch (const std::exception& e) {
            out = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        failed += !out.pass;
        std::printf("criterion %2zu %-24s %s  %s (%.2fs)\n", i + 1, criteria[i].first, out.pass ? "PASS" : "FAIL",
                    out.detail.c_str(), secs);
    }
    std::printf("%zu/%zu criteria passed\n", selected.size() - static_cast<std::size_t>(failed), selected.size());
    return failed ? 1 : 0;
}
