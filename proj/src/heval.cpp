#include "cabm/heval.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace cabm {

namespace {

// state-0 result carrying the most severe behavior: chaotic > decrease > stable
MCode severest_zero(MCode a, MCode b) {
    if (a.chaotic() || b.chaotic()) return MCode(2);
    if (a.value() == 1 || b.value() == 1) return MCode(1);
    return MCode(0);
}

}  // namespace

MCode h_not(MCode a) { return MCode(5 - a.value()); }

MCode h_and(MCode a, MCode b) {
    if (a.state() & b.state()) {
        if (a.value() == 5 && b.value() == 5) return MCode(5);
        if (a.chaotic() || b.chaotic()) return MCode(3);
        return MCode(4);
    }
    // Chaos dominates a destroyed input; the decrease rule applies to the
    // remaining mixed-state pairs.
    if (a.chaotic() || b.chaotic()) return MCode(2);
    if (a.state() != b.state()) return MCode(1);
    return severest_zero(a, b);
}

MCode h_or(MCode a, MCode b) {
    if (a.state() | b.state()) return (a.value() == 5 && b.value() == 5) ? MCode(5) : MCode(4);
    return severest_zero(a, b);
}

MCode h_xor(MCode a, MCode b) {
    if (a.state() ^ b.state()) return MCode(4);
    if ((a.state() && b.state()) || a.chaotic() || b.chaotic()) return MCode(2);
    return MCode(0);
}

const HTables& HTables::standard() {
    static const HTables tables = [] {
        HTables t;
        for (int a = 0; a < 6; ++a) {
            t.not_table[a] = h_not(MCode(a));
            for (int b = 0; b < 6; ++b) {
                t.and_table[a][b] = h_and(MCode(a), MCode(b));
                t.or_table[a][b] = h_or(MCode(a), MCode(b));
                t.xor_table[a][b] = h_xor(MCode(a), MCode(b));
            }
        }
        return t;
    }();
    return tables;
}

MCode eval_g(const BoolExpr& expr, std::span<const std::uint8_t> input, const HTables& tables) {
    using K = BoolExpr::Kind;
    switch (expr.kind()) {
        case K::constant: return expr.const_value() ? tables.leaf_one : tables.leaf_zero;
        case K::var: {
            const auto i = static_cast<std::size_t>(expr.var_index());
            if (i >= input.size()) throw std::invalid_argument("input shorter than expression arity");
            return input[i] ? tables.leaf_one : tables.leaf_zero;
        }
        case K::negation: return tables.op_not(eval_g(expr.children()[0], input, tables));
        default: break;
    }
    const auto& kids = expr.children();
    MCode acc = eval_g(kids[0], input, tables);
    for (std::size_t i = 1; i < kids.size(); ++i) {
        const MCode next = eval_g(kids[i], input, tables);
        switch (expr.kind()) {
            case K::conjunction: acc = tables.op_and(acc, next); break;
            case K::disjunction: acc = tables.op_or(acc, next); break;
            default: acc = tables.op_xor(acc, next); break;
        }
    }
    return acc;
}

std::vector<MCode> m_truth_table(const BoolExpr& expr, int arity, const HTables& tables) {
    TruthTable::check_arity(arity);
    std::vector<MCode> out(std::size_t{1} << arity);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = eval_g(expr, neighborhood_cells(i, arity), tables);
    return out;
}

std::vector<MCode> m_truth_table(const TruthTable& tt, const HTables& tables) {
    return m_truth_table(minimize(tt), tt.arity(), tables);
}

bool ValidationReport::all_passed() const {
    return std::all_of(items.begin(), items.end(), [](const ValidationItem& i) { return i.passed; });
}

namespace {

std::size_t count_behavior(const std::vector<MCode>& ms, Behavior b) {
    return static_cast<std::size_t>(
        std::count_if(ms.begin(), ms.end(), [b](MCode m) { return m.behavior() == b; }));
}

std::string codes_to_string(const std::vector<MCode>& ms) {
    std::string s;
    for (auto m : ms) s += static_cast<char>('0' + m.value());
    return s;
}

}  // namespace

ValidationReport validate_h(const HTables& t) {
    ValidationReport report;
    auto add = [&](std::string name, bool ok, std::string detail) {
        report.items.push_back({std::move(name), ok, std::move(detail)});
    };

    add("leaf mapping", t.leaf_zero.value() == 0 && t.leaf_one.value() == 5,
        "0 -> " + std::to_string(t.leaf_zero.value()) + ", 1 -> " + std::to_string(t.leaf_one.value()));

    // structural properties
    bool consistent = true;
    bool commutative = true;
    for (int a = 0; a < 6; ++a) {
        const MCode ma(a);
        if (t.op_not(ma).state() != 1 - ma.state()) consistent = false;
        for (int b = 0; b < 6; ++b) {
            const MCode mb(b);
            if (t.op_and(ma, mb).state() != (ma.state() & mb.state())) consistent = false;
            if (t.op_or(ma, mb).state() != (ma.state() | mb.state())) consistent = false;
            if (t.op_xor(ma, mb).state() != (ma.state() ^ mb.state())) consistent = false;
            if (t.op_and(ma, mb) != t.op_and(mb, ma) || t.op_or(ma, mb) != t.op_or(mb, ma) ||
                t.op_xor(ma, mb) != t.op_xor(mb, ma))
                commutative = false;
        }
    }
    add("state consistency", consistent, "output state equals the Boolean operator on input states");
    add("commutativity", commutative, "and/or/xor tables symmetric");

    // elementary-rule percentages, checked as exact fractions of 8 rows
    struct Target {
        unsigned rule;
        Behavior behavior;
        std::size_t eighths;
    };
    const Target targets[] = {
        {150, Behavior::chaotic, 3},  {90, Behavior::chaotic, 2},   {204, Behavior::chaotic, 0},
        {204, Behavior::decrease, 0}, {128, Behavior::decrease, 6}, {160, Behavior::decrease, 4},
        {254, Behavior::growth, 6},   {250, Behavior::growth, 4},
    };
    for (const auto& tg : targets) {
        const auto ms = m_truth_table(elementary_rule(tg.rule), t);
        const auto n = count_behavior(ms, tg.behavior);
        std::ostringstream name;
        name << "R" << tg.rule << ' ' << to_string(tg.behavior) << " = " << tg.eighths << "/8";
        add(name.str(), n == tg.eighths, "got " + std::to_string(n) + "/8");
    }

    {
        const auto ms = m_truth_table(elementary_rule(94), t);
        const auto got = codes_to_string(ms);
        add("R94 M column", got == "14444242", "got " + got + ", want 14444242");
    }

    {
        // input 101 through (q & !p) | (p ^ r)
        const MCode p = t.leaf_one;
        const MCode q = t.leaf_zero;
        const MCode r = t.leaf_one;
        const MCode not_p = t.op_not(p);
        const MCode conj = t.op_and(not_p, q);
        const MCode par = t.op_xor(p, r);
        const MCode root = t.op_or(conj, par);
        std::ostringstream detail;
        detail << "!p=" << not_p.value() << " and=" << conj.value() << " xor=" << par.value()
               << " or=" << root.value();
        add("R94 input 101 steps", not_p.value() == 0 && conj.value() == 0 && par.value() == 2 && root.value() == 2,
            detail.str());
    }
    return report;
}

}  // namespace cabm
