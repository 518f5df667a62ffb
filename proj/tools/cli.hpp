#pragma once

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "prrdb/prrdb.hpp"

namespace prrdb::cli {

// Process exit codes.
enum exit_code : int {
    ok = 0,
    property_failed = 1,
    bad_input = 2,
    invariant_violated = 3,
};

namespace detail {

// Writes to --out when given, otherwise to the supplied stream.
class Sink {
public:
    Sink(const std::string& path, std::ostream& fallback) : out_(&fallback)
    {
        if (!path.empty()) {
            file_.open(path, std::ios::binary);
            if (!file_)
                throw prrdb::error("cannot open '" + path + "' for writing");
            out_ = &file_;
        }
    }

    std::ostream& stream() { return *out_; }

private:
    std::ofstream file_;
    std::ostream* out_;
};

inline RuleSpec parse_valid_spec(const std::string& text)
{
    RuleSpec spec = parse_rule_spec(text); // parse_error -> 2
    validate(spec);                        // invalid_spec -> 3
    return spec;
}

// Strips whitespace and one pair of enclosing parentheses.
inline std::string read_bits(std::istream& in)
{
    std::string raw{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    std::string bits;
    for (char ch : raw)
        if (!std::isspace(static_cast<unsigned char>(ch)))
            bits.push_back(ch);
    if (bits.size() >= 2 && bits.front() == '(' && bits.back() == ')')
        bits = bits.substr(1, bits.size() - 2);
    return bits;
}

} // namespace detail

// Runs the command line `args` (program name excluded). Errors are reported
// on `err` and mapped onto exit_code.
inline int run(std::vector<std::string> args, std::istream& in, std::ostream& out, std::ostream& err)
{
    CLI::App app{"De Bruijn sequences from successor rules over the pure run-length register", "prrdb"};
    app.require_subcommand(1);

    std::string spec_text;
    std::string start_text;
    std::string out_path;
    std::string format = "raw";
    std::uint64_t count = 0;
    int order = 0;
    std::string kind_text;
    std::string which;
    std::string input = "-";
    std::uint64_t bench_bits = 1'000'000;

    auto* gen = app.add_subcommand("generate", "Stream a sequence from a rule");
    gen->add_option("--spec", spec_text, "Rule, e.g. psi1:n=6:kset=1,6")->required();
    gen->add_option("--start", start_text, "Start state (n bits, default 0^n)");
    auto* count_opt = gen->add_option("--count", count, "Number of bits (default 2^n)");
    gen->add_option("--format", format, "raw or cyclic")->check(CLI::IsMember({"raw", "cyclic"}));
    gen->add_option("--out", out_path, "Write to a file instead of stdout");

    auto* ver = app.add_subcommand("verify", "Check that a bit string is de Bruijn");
    ver->add_option("--n", order, "Order")->required();
    ver->add_option("input", input, "File to read, or - for stdin");

    auto* dec = app.add_subcommand("decompose", "List the cycles of the run-length register");
    dec->add_option("--n", order, "Order")->required();
    dec->add_option("--out", out_path, "Write to a file instead of stdout");

    auto* fam = app.add_subcommand("family", "Enumerate every rule of a kind and count distinct sequences");
    fam->add_option("--kind", kind_text, "sala, psi1, psi2, upsilon1 or upsilon2")->required();
    fam->add_option("--n", order, "Order")->required();
    fam->add_option("--out", out_path, "Write to a file instead of stdout");

    auto* tab = app.add_subcommand("table", "List every sequence of a rule pair from 0^n");
    tab->add_option("--which", which, "table1 (psi) or table3 (upsilon)")->required();
    tab->add_option("--n", order, "Order")->default_val(6);
    tab->add_option("--out", out_path, "Write to a file instead of stdout");

    auto* tree = app.add_subcommand("tree", "Emit the cycle-joining tree of a rule as DOT");
    tree->add_option("--spec", spec_text, "Rule")->required();
    tree->add_option("--out", out_path, "Write to a file instead of stdout");

    auto* bench = app.add_subcommand("bench", "Time bit generation");
    bench->add_option("--spec", spec_text, "Rule")->required();
    bench->add_option("--bits", bench_bits, "Number of bits to generate");

    try {
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return bad_input;
    }

    try {
        if (*gen) {
            const RuleSpec spec = detail::parse_valid_spec(spec_text);
            State start = State::zeros(spec.n);
            if (!start_text.empty()) {
                start = State::from_string(start_text);
                if (start.order() != spec.n)
                    throw parse_error("field 'start': expected " + std::to_string(spec.n) + " bits, got " +
                                      std::to_string(start.order()));
            }
            if (!*count_opt) {
                if (spec.n > 40)
                    throw order_out_of_range("give --count explicitly for n > 40");
                count = std::uint64_t{1} << spec.n;
            }
            detail::Sink sink(out_path, out);
            auto& os = sink.stream();
            if (count == 0)
                return ok;
            SequenceGenerator g(spec, start);
            std::string chunk;
            chunk.reserve(1 << 16);
            if (format == "cyclic")
                os << '(';
            for (std::uint64_t i = 0; i < count; ++i) {
                chunk.push_back(g.next() ? '1' : '0');
                if (chunk.size() == chunk.capacity()) {
                    os << chunk;
                    chunk.clear();
                }
            }
            os << chunk << (format == "cyclic" ? ")\n" : "\n");
            return ok;
        }

        if (*ver) {
            std::string bits;
            if (input == "-") {
                bits = detail::read_bits(in);
            } else {
                std::ifstream file(input, std::ios::binary);
                if (!file)
                    throw parse_error("cannot read '" + input + "'");
                bits = detail::read_bits(file);
            }
            if (auto rep = first_repeated_window(bits, order)) {
                out << "not de Bruijn: window " << rep->window << " repeats at position " << rep->position << "\n";
                return property_failed;
            }
            out << "de Bruijn sequence of order " << order << "\n";
            return ok;
        }

        if (*dec) {
            detail::Sink sink(out_path, out);
            sink.stream() << decompose(order).to_text();
            return ok;
        }

        if (*fam) {
            const FamilyReport report = enumerate_family(parse_rule_kind(kind_text), order);
            detail::Sink sink(out_path, out);
            sink.stream() << report.to_csv();
            return report.all_de_bruijn() ? ok : property_failed;
        }

        if (*tab) {
            detail::Sink sink(out_path, out);
            sink.stream() << table_text(which, order);
            return ok;
        }

        if (*tree) {
            const RuleSpec spec = detail::parse_valid_spec(spec_text);
            const CycleTree t = extract_tree(spec);
            detail::Sink sink(out_path, out);
            sink.stream() << t.to_dot();
            return ok;
        }

        if (*bench) {
            const RuleSpec spec = detail::parse_valid_spec(spec_text);
            const GenerationTiming t = time_generation(spec, bench_bits);
            out << "spec=" << spec.to_string() << " bits=" << t.bits << " seconds=" << std::setprecision(6)
                << t.seconds << " ns_per_bit=" << std::fixed << std::setprecision(2) << t.ns_per_bit() << "\n";
            return ok;
        }
    } catch (const parse_error& e) {
        err << "error: " << e.what() << "\n";
        return bad_input;
    } catch (const length_mismatch& e) {
        err << "error: " << e.what() << "\n";
        return bad_input;
    } catch (const prrdb::error& e) {
        err << "error: " << e.what() << "\n";
        return invariant_violated;
    }
    return ok;
}

} // namespace prrdb::cli
