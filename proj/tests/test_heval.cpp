#include "doctest.h"

#include <algorithm>

#include "cabm/heval.hpp"
#include "cabm/rng.hpp"

using namespace cabm;

namespace {

std::string codes(const std::vector<MCode>& ms) {
    std::string s;
    for (auto m : ms) s += static_cast<char>('0' + m.value());
    return s;
}

int count(const std::vector<MCode>& ms, Behavior b) {
    return static_cast<int>(std::count_if(ms.begin(), ms.end(), [b](MCode m) { return m.behavior() == b; }));
}

const ValidationItem* find_item(const ValidationReport& r, std::string_view prefix) {
    for (const auto& i : r.items)
        if (i.name.rfind(prefix, 0) == 0) return &i;
    return nullptr;
}

}  // namespace

TEST_CASE("not") {
    CHECK(h_not(MCode(5)) == MCode(0));
    CHECK(h_not(MCode(0)) == MCode(5));
    CHECK(h_not(MCode(2)) == MCode(3));
    CHECK(h_not(MCode(1)) == MCode(4));
    for (int a = 0; a < 6; ++a) CHECK(h_not(h_not(MCode(a))) == MCode(a));
}

TEST_CASE("and") {
    CHECK(h_and(MCode(0), MCode(0)) == MCode(0));
    CHECK(h_and(MCode(0), MCode(5)) == MCode(1));
    CHECK(h_and(MCode(5), MCode(0)) == MCode(1));
    CHECK(h_and(MCode(1), MCode(5)) == MCode(1));
    CHECK(h_and(MCode(5), MCode(5)) == MCode(5));
    CHECK(h_and(MCode(3), MCode(5)) == MCode(3));
    CHECK(h_and(MCode(4), MCode(5)) == MCode(4));
    // chaos survives a state-0 result
    CHECK(h_and(MCode(2), MCode(5)) == MCode(2));
    CHECK(h_and(MCode(3), MCode(0)) == MCode(2));
    CHECK(h_and(MCode(1), MCode(0)) == MCode(1));
}

TEST_CASE("or") {
    CHECK(h_or(MCode(0), MCode(2)) == MCode(2));
    CHECK(h_or(MCode(1), MCode(4)) == MCode(4));
    CHECK(h_or(MCode(5), MCode(0)) == MCode(4));
    CHECK(h_or(MCode(5), MCode(5)) == MCode(5));
    CHECK(h_or(MCode(0), MCode(0)) == MCode(0));
    CHECK(h_or(MCode(1), MCode(2)) == MCode(2));
    CHECK(h_or(MCode(1), MCode(0)) == MCode(1));
}

TEST_CASE("xor") {
    CHECK(h_xor(MCode(5), MCode(5)) == MCode(2));
    CHECK(h_xor(MCode(0), MCode(5)) == MCode(4));
    CHECK(h_xor(MCode(2), MCode(0)) == MCode(2));
    CHECK(h_xor(MCode(2), MCode(5)) == MCode(4));
    CHECK(h_xor(MCode(0), MCode(0)) == MCode(0));
    CHECK(h_xor(MCode(1), MCode(0)) == MCode(0));
}

TEST_CASE("pure-state rows") {
    const MCode z(0), o(5);
    CHECK(h_and(z, z).behavior() == Behavior::stable);
    CHECK(h_and(z, o).behavior() == Behavior::decrease);
    CHECK(h_and(o, o).behavior() == Behavior::stable);
    CHECK(h_or(z, z).behavior() == Behavior::stable);
    CHECK(h_or(z, o).behavior() == Behavior::growth);
    CHECK(h_or(o, o).behavior() == Behavior::stable);
    CHECK(h_xor(o, o) == MCode(2));
    CHECK(h_xor(z, o) == MCode(4));
}

TEST_CASE("table properties") {
    const auto& t = HTables::standard();
    for (int a = 0; a < 6; ++a)
        for (int b = 0; b < 6; ++b) {
            const MCode ma(a), mb(b);
            CHECK(t.op_and(ma, mb) == t.op_and(mb, ma));
            CHECK(t.op_or(ma, mb) == t.op_or(mb, ma));
            CHECK(t.op_xor(ma, mb) == t.op_xor(mb, ma));
            CHECK(t.op_and(ma, mb).state() == (ma.state() & mb.state()));
            CHECK(t.op_or(ma, mb).state() == (ma.state() | mb.state()));
            CHECK(t.op_xor(ma, mb).state() == (ma.state() ^ mb.state()));
        }

    // all three happen to be associative, so the fold order of n-ary nodes
    // cannot change a result
    int or_fail = 0, and_fail = 0, xor_fail = 0;
    for (int a = 0; a < 6; ++a)
        for (int b = 0; b < 6; ++b)
            for (int c = 0; c < 6; ++c) {
                const MCode x(a), y(b), z(c);
                and_fail += t.op_and(t.op_and(x, y), z) != t.op_and(x, t.op_and(y, z));
                or_fail += t.op_or(t.op_or(x, y), z) != t.op_or(x, t.op_or(y, z));
                xor_fail += t.op_xor(t.op_xor(x, y), z) != t.op_xor(x, t.op_xor(y, z));
            }
    CHECK(and_fail == 0);
    CHECK(or_fail == 0);
    CHECK(xor_fail == 0);
}

TEST_CASE("n-ary nodes fold left to right") {
    const auto e = BoolExpr::parity({BoolExpr::var(0), BoolExpr::var(1), BoolExpr::var(2)});
    const auto& t = HTables::standard();
    for (std::size_t i = 0; i < 8; ++i) {
        const auto in = neighborhood_cells(i, 3);
        auto leaf = [&](int v) { return in[static_cast<std::size_t>(v)] ? MCode(5) : MCode(0); };
        CHECK(eval_g(e, in) == t.op_xor(t.op_xor(leaf(0), leaf(1)), leaf(2)));
    }
}

TEST_CASE("eval_g examples") {
    const auto e94 = minimize(elementary_rule(94));
    const std::uint8_t in101[] = {1, 0, 1};
    const std::uint8_t in000[] = {0, 0, 0};
    const std::uint8_t in010[] = {0, 1, 0};
    CHECK(eval_g(e94, in101) == MCode(2));
    CHECK(eval_g(e94, in000) == MCode(1));
    CHECK(eval_g(minimize(elementary_rule(204)), in010) == MCode(5));
    CHECK(eval_g(BoolExpr::constant(false), in010) == MCode(0));
    CHECK(eval_g(BoolExpr::constant(true), in010) == MCode(5));
}

TEST_CASE("M-coded truth tables") {
    CHECK(codes(m_truth_table(elementary_rule(94))) == "14444242");
    CHECK(codes(m_truth_table(elementary_rule(204))) == "00550055");
    const auto m90 = m_truth_table(elementary_rule(90));
    CHECK(count(m90, Behavior::stable) == 2);
    CHECK(count(m90, Behavior::growth) == 4);
    CHECK(count(m90, Behavior::chaotic) == 2);
}

TEST_CASE("state projection is sound") {
    for (unsigned rule = 0; rule < 256; ++rule) {
        const auto tt = elementary_rule(rule);
        const auto ms = m_truth_table(tt);
        for (std::size_t i = 0; i < 8; ++i) CHECK(ms[i].state() == static_cast<int>(tt[i]));
    }
    Rng rng(29);
    for (int k = 0; k < 10; ++k) {
        const auto tt = TruthTable::from_function(9, [&](std::size_t) { return rng() & 1U; });
        const auto ms = m_truth_table(minimize(tt, {CoverMode::greedy}), 9);
        for (std::size_t i = 0; i < 512; ++i) CHECK(ms[i].state() == static_cast<int>(tt[i]));
    }
    const auto g = gol_truth_table();
    const auto mg = m_truth_table(g);
    for (std::size_t i = 0; i < 512; ++i) CHECK(mg[i].state() == static_cast<int>(g[i]));
}

TEST_CASE("validate_h") {
    const auto report = validate_h();
    for (const auto& item : report.items) CHECK_MESSAGE(item.passed, item.name << ": " << item.detail);
    CHECK(report.all_passed());
    CHECK(report.items.size() >= 12);

    HTables bad_xor = HTables::standard();
    bad_xor.xor_table[2][0] = MCode(0);
    bad_xor.xor_table[0][2] = MCode(0);
    const auto r1 = validate_h(bad_xor);
    CHECK_FALSE(r1.all_passed());
    const auto* c150 = find_item(r1, "R150 chaotic");
    REQUIRE(c150);
    CHECK_FALSE(c150->passed);
    CHECK(c150->detail == "got 2/8");

    HTables bad_leaf = HTables::standard();
    bad_leaf.leaf_one = MCode(4);
    const auto r2 = validate_h(bad_leaf);
    const auto* leaf = find_item(r2, "leaf mapping");
    REQUIRE(leaf);
    CHECK_FALSE(leaf->passed);

    HTables asym = HTables::standard();
    asym.and_table[1][5] = MCode(0);
    const auto r3 = validate_h(asym);
    CHECK_FALSE(find_item(r3, "commutativity")->passed);
}
