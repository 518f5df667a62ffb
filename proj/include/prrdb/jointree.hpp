#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "errors.hpp"
#include "registers.hpp"
#include "rules.hpp"
#include "state.hpp"

namespace prrdb {

inline constexpr int max_tree_order = 20;

// child --(child_state, parent_state)--> parent, where the two states form
// a conjugate pair.
struct TreeEdge {
    std::size_t child = 0;
    std::size_t parent = 0;
    State child_state;
    State parent_state;
};

// Rooted spanning tree over the cycles of the run-length register induced by
// a rule's deviation set. Node ids are CycleStructure cycle ids.
struct CycleTree {
    int order = 0;
    std::vector<State> representatives;
    std::vector<CycleKind> kinds;
    std::vector<std::optional<TreeEdge>> out_edge; // empty only at the root
    std::size_t root = 0;
    std::size_t deviation_states = 0;

    std::size_t size() const { return representatives.size(); }

    std::vector<TreeEdge> edges() const
    {
        std::vector<TreeEdge> out;
        for (const auto& e : out_edge)
            if (e)
                out.push_back(*e);
        return out;
    }

    std::optional<std::size_t> parent(std::size_t node) const
    {
        if (const auto& e = out_edge[node])
            return e->parent;
        return std::nullopt;
    }

    std::string label(std::size_t node) const
    {
        return std::string(to_string(kinds[node])) + " (" + representatives[node].to_string() + ")";
    }

    // Graphviz digraph; nodes are labelled by representative, edges by the
    // child's half of the joining conjugate pair.
    std::string to_dot() const
    {
        std::string out = "digraph cycle_tree {\n";
        for (std::size_t i = 0; i < size(); ++i) {
            out += "  c" + std::to_string(i) + " [label=\"" + representatives[i].to_string() + "\"";
            out += kinds[i] == CycleKind::ccr ? ", shape=box" : "";
            out += i == root ? ", peripheries=2" : "";
            out += "];\n";
        }
        for (const auto& e : edges())
            out += "  c" + std::to_string(e.child) + " -> c" + std::to_string(e.parent) + " [label=\"" +
                   e.child_state.to_string() + "\"];\n";
        out += "}\n";
        return out;
    }
};

// The state whose cycle is the child end of the pair that contains c: the
// state each rule class pins down uniquely per cycle.
inline State designated_state(RuleClass cls, const CycleStructure& cs, const State& c)
{
    switch (cls) {
    case RuleClass::psi:
        return shift_in(c, true);
    case RuleClass::upsilon: {
        const int n = c.order();
        if (!c.back())
            return State(c.word() & (order_mask(n) >> 1), n);
        // ~c_1, ..., ~c_{n-2}, 0, c_1
        return upsilon_y(c).push_back(c.bit(1));
    }
    case RuleClass::lexicographic:
        break;
    }
    // The successor that represents its cycle; when both do, the larger.
    const State hi = shift_in(c, true);
    if (cs.cycle(cs.cycle_id(hi)).representative == hi)
        return hi;
    return shift_in(c, false);
}

// Pairs up the deviation set by exhaustive scan and orients each pair from
// the cycle holding the designated state to the other cycle.
//
// Throws not_paired when a deviation state's conjugate is not a deviation
// state, and not_spanning when the pairs fail to form a rooted spanning tree.
template <class Membership>
CycleTree extract_tree(const CycleStructure& cs, RuleClass cls, Membership&& in_set)
{
    const int n = cs.order();
    if (n > max_tree_order)
        throw order_out_of_range("tree extraction needs n <= 20, got " + std::to_string(n));

    CycleTree tree;
    tree.order = n;
    tree.out_edge.resize(cs.size());
    for (std::size_t id = 0; id < cs.size(); ++id) {
        tree.representatives.push_back(cs.cycle(id).representative);
        tree.kinds.push_back(cs.cycle(id).kind);
    }

    const std::uint64_t total = std::uint64_t{1} << n;
    for (std::uint64_t w = 0; w < total; ++w) {
        const State s(w, n);
        if (!in_set(s))
            continue;
        ++tree.deviation_states;
        const State partner = conjugate(s);
        if (!in_set(partner))
            throw not_paired("deviation state " + s.to_string() + " has conjugate " + partner.to_string() +
                             " outside the deviation set");
        if (s.front())
            continue; // each pair once, from its 0-first member

        const std::size_t a = cs.cycle_id(s);
        const std::size_t b = cs.cycle_id(partner);
        if (a == b)
            throw not_spanning("conjugate pair " + s.to_string() + "/" + partner.to_string() +
                               " lies inside cycle " + tree.label(a));
        const std::size_t child = cs.cycle_id(designated_state(cls, cs, s));
        if (child != a && child != b)
            throw not_spanning("pair " + s.to_string() + "/" + partner.to_string() +
                               " designates a state outside both of its cycles");
        if (tree.out_edge[child])
            throw not_spanning("cycle " + tree.label(child) + " is joined upward twice");
        const bool s_in_child = child == a;
        tree.out_edge[child] = TreeEdge{child, s_in_child ? b : a, s_in_child ? s : partner,
                                        s_in_child ? partner : s};
    }

    std::optional<std::size_t> root;
    for (std::size_t id = 0; id < cs.size(); ++id) {
        if (tree.out_edge[id])
            continue;
        if (root)
            throw not_spanning("cycles " + tree.label(*root) + " and " + tree.label(id) + " both lack a parent");
        root = id;
    }
    if (!root)
        throw not_spanning("every cycle has a parent, so the parent links contain a loop");
    tree.root = *root;

    // 0 = unseen, 1 = on the current path, 2 = reaches the root
    std::vector<std::uint8_t> mark(cs.size(), 0);
    mark[tree.root] = 2;
    for (std::size_t start = 0; start < cs.size(); ++start) {
        std::vector<std::size_t> path;
        std::size_t node = start;
        while (mark[node] == 0) {
            mark[node] = 1;
            path.push_back(node);
            node = tree.out_edge[node]->parent;
        }
        if (mark[node] == 1)
            throw not_spanning("parent links loop through cycle " + tree.label(node));
        for (auto p : path)
            mark[p] = 2;
    }
    return tree;
}

inline CycleTree extract_tree(const CycleStructure& cs, const RuleSpec& spec)
{
    if (cs.order() != spec.n)
        throw invalid_spec(spec.to_string() + ": cycle structure has order " + std::to_string(cs.order()));
    const SuccessorRule rule(spec);
    return extract_tree(cs, rule_class(spec.kind), [&rule](const State& s) { return rule.in_critical_set(s); });
}

inline CycleTree extract_tree(const RuleSpec& spec)
{
    validate(spec);
    if (spec.n > max_tree_order)
        throw order_out_of_range("tree extraction needs n <= 20, got " + std::to_string(spec.n));
    return extract_tree(decompose(spec.n), spec);
}

struct CriticalSetReport {
    std::string rule;
    CycleTree tree;
    std::size_t expected_deviation_states = 0;
    std::vector<std::string> violations;

    bool passed() const { return violations.empty(); }

    std::string summary() const
    {
        std::string out = rule + ": " + (passed() ? "pass" : "FAIL") + ", " + std::to_string(tree.size()) +
                          " cycles, " + std::to_string(tree.deviation_states) + " deviation states, root " +
                          tree.label(tree.root);
        for (const auto& v : violations)
            out += "\n  " + v;
        return out;
    }
};

namespace detail {

// Position of each cycle in the order that the upsilon class joins along:
// (1^{n-1}) first, then each CCR cycle in lexicographic order followed by the
// PCR cycles hanging off it. Returns nothing for cycles the order cannot place.
inline std::vector<std::optional<std::size_t>> upsilon_ranks(const CycleTree& tree)
{
    std::vector<std::optional<std::size_t>> rank(tree.size());
    std::size_t ccr_index = 0;
    for (std::size_t id = 0; id < tree.size(); ++id) {
        if (tree.kinds[id] == CycleKind::ccr)
            rank[id] = 2 * ccr_index++ + 1;
        else if (tree.representatives[id] == State::ones(tree.order))
            rank[id] = 0;
    }
    for (std::size_t id = 0; id < tree.size(); ++id) {
        if (tree.kinds[id] != CycleKind::pcr || rank[id])
            continue;
        if (auto p = tree.parent(id); p && tree.kinds[*p] == CycleKind::ccr)
            rank[id] = *rank[*p] + 1;
    }
    return rank;
}

} // namespace detail

// Checks the extracted tree against what the rule class promises: one
// designated state per non-root cycle of the prescribed shape, every parent
// earlier than its child in the class's cycle order, and the expected root.
template <class Membership>
CriticalSetReport verify_critical_set(const CycleStructure& cs, const RuleSpec& spec, Membership&& in_set)
{
    const RuleClass cls = rule_class(spec.kind);
    CriticalSetReport report{spec.to_string(), extract_tree(cs, cls, in_set), 2 * (cs.size() - 1), {}};
    const CycleTree& tree = report.tree;
    auto& bad = report.violations;
    const int n = cs.order();

    if (tree.deviation_states != report.expected_deviation_states)
        bad.push_back("deviation set has " + std::to_string(tree.deviation_states) + " states, expected " +
                      std::to_string(report.expected_deviation_states));

    const State expected_root = cls == RuleClass::upsilon ? State::ones(n) : State::zeros(n);
    if (tree.representatives[tree.root] != expected_root)
        bad.push_back("tree is rooted at " + tree.label(tree.root) + ", expected (" + expected_root.to_string() + ")");

    for (const auto& e : tree.edges()) {
        const State d = designated_state(cls, cs, e.child_state);
        const bool is_rep = d == tree.representatives[e.child];
        const bool child_ccr = tree.kinds[e.child] == CycleKind::ccr;
        if ((cls == RuleClass::lexicographic || child_ccr) && !is_rep)
            bad.push_back("cycle " + tree.label(e.child) + " is joined at " + d.to_string() +
                          ", not at its representative");
        if (cls == RuleClass::psi && !child_ccr && !(d.bit(0) && d.back()))
            bad.push_back("cycle " + tree.label(e.child) + " designates " + d.to_string() +
                          ", which must start and end with 1");
        if (cls == RuleClass::upsilon && !child_ccr && d.bit(0))
            bad.push_back("cycle " + tree.label(e.child) + " designates " + d.to_string() + ", which must start with 0");
    }

    if (cls == RuleClass::upsilon) {
        const auto rank = detail::upsilon_ranks(tree);
        for (const auto& e : tree.edges()) {
            if (tree.kinds[e.child] == tree.kinds[e.parent])
                bad.push_back("edge " + tree.label(e.child) + " -> " + tree.label(e.parent) +
                              " does not alternate between CCR and PCR cycles");
            if (!rank[e.child] || !rank[e.parent] || *rank[e.parent] >= *rank[e.child])
                bad.push_back("parent " + tree.label(e.parent) + " does not precede child " + tree.label(e.child));
        }
    } else {
        for (const auto& e : tree.edges())
            if (!(tree.representatives[e.parent] < tree.representatives[e.child]))
                bad.push_back("parent " + tree.label(e.parent) + " is not lexicographically below child " +
                              tree.label(e.child));
    }
    return report;
}

inline CriticalSetReport verify_critical_set(const CycleStructure& cs, const RuleSpec& spec)
{
    const SuccessorRule rule(spec);
    return verify_critical_set(cs, spec, [&rule](const State& s) { return rule.in_critical_set(s); });
}

inline CriticalSetReport verify_critical_set(const RuleSpec& spec)
{
    validate(spec);
    if (spec.n > max_tree_order)
        throw order_out_of_range("critical set verification needs n <= 20, got " + std::to_string(spec.n));
    return verify_critical_set(decompose(spec.n), spec);
}

} // namespace prrdb
