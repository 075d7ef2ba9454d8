#include "doctest.h"

#include <algorithm>
#include <set>

#include "cabm/boolmin.hpp"
#include "cabm/rng.hpp"

using namespace cabm;

namespace {

using E = BoolExpr;
const E p = E::var(0);
const E q = E::var(1);
const E r = E::var(2);

Implicant cube(int arity, std::initializer_list<std::pair<int, bool>> lits) {
    Implicant c{0, 0, arity};
    for (auto [v, pos] : lits) {
        c.mask |= static_cast<std::uint16_t>(1U << (arity - 1 - v));
        if (pos) c.value |= static_cast<std::uint16_t>(1U << (arity - 1 - v));
    }
    return c;
}

// every cube over m variables, by brute force
std::vector<Implicant> all_cubes(int m) {
    std::vector<Implicant> out;
    std::size_t total = 1;
    for (int i = 0; i < m; ++i) total *= 3;
    for (std::size_t code = 0; code < total; ++code) {
        Implicant c{0, 0, m};
        std::size_t x = code;
        for (int v = 0; v < m; ++v, x /= 3) {
            const auto bit = static_cast<std::uint16_t>(1U << (m - 1 - v));
            if (x % 3 == 1) c.mask |= bit;
            if (x % 3 == 2) c.mask |= bit, c.value |= bit;
        }
        out.push_back(c);
    }
    return out;
}

bool is_implicant(const Implicant& c, const TruthTable& tt) {
    for (auto mt : c.minterms())
        if (!tt[mt]) return false;
    return true;
}

bool contains(const Implicant& big, const Implicant& small) {
    return (big.mask & small.mask) == big.mask && (small.value & big.mask) == big.value;
}

std::vector<Implicant> brute_primes(const TruthTable& tt) {
    std::vector<Implicant> imps;
    for (const auto& c : all_cubes(tt.arity()))
        if (is_implicant(c, tt)) imps.push_back(c);
    std::vector<Implicant> primes;
    for (const auto& c : imps) {
        const bool dominated = std::any_of(imps.begin(), imps.end(),
                                           [&](const Implicant& o) { return !(o == c) && contains(o, c); });
        if (!dominated) primes.push_back(c);
    }
    std::sort(primes.begin(), primes.end(), cube_less);
    return primes;
}

bool covers_all(const Sop& sop, const TruthTable& tt) {
    for (std::size_t i = 0; i < tt.size(); ++i) {
        const bool hit = std::any_of(sop.begin(), sop.end(), [&](const Implicant& c) { return c.covers(i); });
        if (hit != tt[i]) return false;
    }
    return true;
}

int literals(const Sop& sop) {
    int n = 0;
    for (const auto& c : sop) n += c.literal_count();
    return n;
}

bool equivalent(const BoolExpr& e, const TruthTable& tt) {
    for (std::size_t i = 0; i < tt.size(); ++i)
        if (eval_bool(e, neighborhood_cells(i, tt.arity())) != tt[i]) return false;
    return true;
}

}  // namespace

TEST_CASE("prime implicants of small rules") {
    const auto p204 = prime_implicants(elementary_rule(204));
    REQUIRE(p204.size() == 1);
    CHECK(p204[0] == cube(3, {{1, true}}));

    const auto p90 = prime_implicants(elementary_rule(90));
    REQUIRE(p90.size() == 2);
    CHECK(std::count(p90.begin(), p90.end(), cube(3, {{0, true}, {2, false}})) == 1);
    CHECK(std::count(p90.begin(), p90.end(), cube(3, {{0, false}, {2, true}})) == 1);

    const auto p255 = prime_implicants(elementary_rule(255));
    REQUIRE(p255.size() == 1);
    CHECK(p255[0].mask == 0);

    CHECK_THROWS_AS(prime_implicants(elementary_rule(0)), std::domain_error);
}

TEST_CASE("prime implicants match brute force") {
    for (unsigned rule = 1; rule < 256; ++rule) {
        const auto tt = elementary_rule(rule);
        CHECK(prime_implicants(tt) == brute_primes(tt));
    }
    Rng rng(3);
    for (int k = 0; k < 10; ++k) {
        const auto tt = TruthTable::from_function(6, [&](std::size_t) { return uniform_below(rng, 3) != 0; });
        CHECK(prime_implicants(tt) == brute_primes(tt));
    }
}

TEST_CASE("gol primes") {
    const auto g = gol_truth_table();
    CHECK(prime_implicants(g).size() == 224);
}

TEST_CASE("cube order") {
    // negative literal first, shorter prefix first
    CHECK(cube_less(cube(3, {{0, false}}), cube(3, {{0, true}})));
    CHECK(cube_less(cube(3, {{0, true}}), cube(3, {{0, true}, {1, false}})));
    CHECK(cube_less(cube(3, {{0, true}, {2, true}}), cube(3, {{1, false}})));
    CHECK_FALSE(cube_less(cube(3, {{1, true}}), cube(3, {{1, true}})));
}

TEST_CASE("exact cover examples") {
    auto cover_of = [](unsigned rule) {
        const auto tt = elementary_rule(rule);
        return minimal_cover(prime_implicants(tt), tt, {CoverMode::exact});
    };
    CHECK(cover_of(160).cubes == Sop{cube(3, {{0, true}, {2, true}})});
    CHECK(cover_of(128).cubes == Sop{cube(3, {{0, true}, {1, true}, {2, true}})});
    const auto c94 = cover_of(94);
    CHECK(c94.exact);
    CHECK(c94.cubes.size() == 3);
    CHECK(std::count(c94.cubes.begin(), c94.cubes.end(), cube(3, {{0, false}, {2, true}})) == 1);
    CHECK(std::count(c94.cubes.begin(), c94.cubes.end(), cube(3, {{0, true}, {2, false}})) == 1);
}

// best subset of primes under (count, literals, sorted cube list)
Sop brute_cover(const std::vector<Implicant>& primes, const TruthTable& tt) {
    Sop best;
    bool found = false;
    for (std::size_t mask = 1; mask < (std::size_t{1} << primes.size()); ++mask) {
        Sop s;
        for (std::size_t j = 0; j < primes.size(); ++j)
            if (mask >> j & 1U) s.push_back(primes[j]);
        if (found && s.size() > best.size()) continue;
        if (!covers_all(s, tt)) continue;
        auto better = [&] {
            if (!found) return true;
            if (s.size() != best.size()) return s.size() < best.size();
            if (literals(s) != literals(best)) return literals(s) < literals(best);
            return std::lexicographical_compare(s.begin(), s.end(), best.begin(), best.end(), cube_less);
        };
        if (better()) {
            best = s;
            found = true;
        }
    }
    return best;
}

TEST_CASE("exact cover equals brute-force minimum for every elementary rule") {
    for (unsigned rule = 1; rule < 256; ++rule) {
        const auto tt = elementary_rule(rule);
        const auto primes = prime_implicants(tt);
        const auto got = minimal_cover(primes, tt, {CoverMode::exact});
        CHECK_MESSAGE(got.cubes == brute_cover(primes, tt), "rule " << rule);
        CHECK(got.exact);
    }
}

TEST_CASE("exact cover equals brute-force minimum on random 4- and 5-input tables") {
    Rng rng(11);
    int checked = 0;
    while (checked < 80) {
        const int m = checked < 40 ? 4 : 5;
        const auto tt = TruthTable::from_function(m, [&](std::size_t) { return rng() & 1U; });
        if (tt.on_count() == 0) continue;
        const auto primes = prime_implicants(tt);
        if (primes.size() > 16) continue;
        const auto got = minimal_cover(primes, tt, {CoverMode::exact});
        CHECK_MESSAGE(got.cubes == brute_cover(primes, tt), "table " << tt.to_bit_string());
        ++checked;
    }
}

TEST_CASE("greedy cover is a valid irredundant cover") {
    Rng rng(17);
    for (int k = 0; k < 20; ++k) {
        const auto tt = TruthTable::from_function(9, [&](std::size_t) { return rng() & 1U; });
        const auto primes = prime_implicants(tt);
        const auto g = minimal_cover(primes, tt, {CoverMode::greedy});
        CHECK_FALSE(g.exact);
        CHECK(covers_all(g.cubes, tt));
        for (std::size_t drop = 0; drop < g.cubes.size(); ++drop) {
            Sop s = g.cubes;
            s.erase(s.begin() + static_cast<std::ptrdiff_t>(drop));
            CHECK_FALSE(covers_all(s, tt));
        }
    }
}

TEST_CASE("automatic cover on the game of life") {
    const auto g = gol_truth_table();
    const auto c = minimal_cover(prime_implicants(g), g);
    CHECK(c.exact);
    CHECK(c.cubes.size() == 84);
    CHECK(covers_all(c.cubes, g));

    // reductions alone settle this one; a random table with a tiny budget
    // falls back to greedy
    Rng rng(3);
    const auto noisy = TruthTable::from_function(9, [&](std::size_t) { return rng() & 1U; });
    const auto fallback = minimal_cover(prime_implicants(noisy), noisy, {CoverMode::automatic, 10});
    CHECK_FALSE(fallback.exact);
    CHECK(covers_all(fallback.cubes, noisy));
}

TEST_CASE("cover preconditions") {
    const auto tt = elementary_rule(90);
    auto primes = prime_implicants(tt);
    primes.pop_back();
    CHECK_THROWS_AS(minimal_cover(primes, tt), std::invalid_argument);
    const Sop bad{cube(3, {{0, true}})};
    CHECK_THROWS_AS(minimal_cover(bad, tt), std::invalid_argument);
}

TEST_CASE("expression normal form") {
    CHECK(E::negate(E::negate(p)) == p);
    CHECK(E::conj({q, E::negate(p)}) == E::conj({E::negate(p), q}));
    CHECK(E::conj({q, E::negate(p)}).children()[0] == E::negate(p));
    CHECK(E::conj({p, E::conj({q, r})}).children().size() == 3);
    CHECK(E::conj({p, p}) == p);
    CHECK(E::conj({p, E::negate(p)}) == E::constant(false));
    CHECK(E::disj({p, E::negate(p)}) == E::constant(true));
    CHECK(E::conj({p, E::constant(true)}) == p);
    CHECK(E::disj({p, E::constant(true)}) == E::constant(true));
    CHECK(E::parity({p, p}) == E::constant(false));
    CHECK(E::parity({p, q, p}) == q);
    CHECK(E::parity({E::negate(p), E::negate(q)}) == E::parity({p, q}));
    // negation lands on the first child
    CHECK(E::negate(E::parity({q, p})) == E::parity({E::negate(p), q}));
    CHECK(to_string(E::negate(E::parity({p, q})), 3) == "!p ^ q");
    CHECK(E::parity({p, E::constant(true)}) == E::negate(p));
}

TEST_CASE("text grammar") {
    const auto e = E::disj({E::conj({q, E::negate(p)}), E::parity({p, r})});
    CHECK(to_string(e, 3) == "(!p & q) | (p ^ r)");
    CHECK(to_string(E::conj({E::var(0), E::var(8)}), 9) == "x0 & x8");
    CHECK(to_string(E::negate(E::conj({p, q})), 3) == "!(p & q)");
    CHECK(to_string(E::constant(true), 3) == "1");
    CHECK_THROWS_AS(E::var(9), std::out_of_range);
}

TEST_CASE("xor extraction") {
    CHECK(minimize(elementary_rule(90)) == E::parity({p, r}));
    CHECK(minimize(elementary_rule(150)) == E::parity({p, q, r}));
    CHECK(minimize(elementary_rule(94)) == E::disj({E::conj({q, E::negate(p)}), E::parity({p, r})}));

    const auto t94 = elementary_rule(94);
    const auto sop = minimal_cover(prime_implicants(t94), t94).cubes;
    CHECK(xor_extract(t94, sop) == minimize(t94));
    // parity split ignores the cover it is given
    const auto t150 = elementary_rule(150);
    CHECK(xor_extract(t150, minimal_cover(prime_implicants(t150), t150).cubes) == E::parity({p, q, r}));
}

TEST_CASE("printed minimal forms") {
    CHECK(minimize(elementary_rule(204)) == q);
    CHECK(minimize(elementary_rule(128)) == E::conj({p, q, r}));
    CHECK(minimize(elementary_rule(160)) == E::conj({p, r}));
    CHECK(minimize(elementary_rule(250)) == E::disj({p, r}));
    CHECK(minimize(elementary_rule(252)) == E::disj({p, q}));
    CHECK(minimize(elementary_rule(254)) == E::disj({p, q, r}));
    CHECK(minimize(elementary_rule(255)) == E::constant(true));
    CHECK(minimize(elementary_rule(0)) == E::constant(false));
    CHECK(to_string(minimize(elementary_rule(30)), 3) == "p ^ (q | r)");
}

TEST_CASE("minimized forms are equivalent to their tables") {
    for (unsigned rule = 0; rule < 256; ++rule) {
        const auto tt = elementary_rule(rule);
        const auto e = minimize(tt);
        CHECK_MESSAGE(equivalent(e, tt), "rule " << rule);
    }
    Rng rng(23);
    for (int k = 0; k < 15; ++k) {
        const auto tt = TruthTable::from_function(9, [&](std::size_t) { return rng() & 1U; });
        CHECK(equivalent(minimize(tt, {CoverMode::greedy}), tt));
    }
    CHECK(equivalent(minimize(gol_truth_table()), gol_truth_table()));
}

TEST_CASE("xor extraction never adds leaves") {
    for (unsigned rule = 1; rule < 255; ++rule) {
        const auto tt = elementary_rule(rule);
        const auto sop = minimal_cover(prime_implicants(tt), tt).cubes;
        CHECK(xor_extract(tt, sop).leaf_count() <= static_cast<std::size_t>(literals(sop)));
    }
    const auto g = gol_truth_table();
    const auto sop = minimal_cover(prime_implicants(g), g).cubes;
    CHECK(xor_extract(g, sop).leaf_count() <= static_cast<std::size_t>(literals(sop)));
}

TEST_CASE("minimize is deterministic") {
    const auto g = gol_truth_table();
    const auto a = minimize(g);
    const auto b = minimize(g);
    CHECK(a == b);
    CHECK(to_string(a, 9) == to_string(b, 9));
    // 28 neighbor pairs show up as x ^ y factors
    std::set<std::pair<int, int>> pairs;
    for (const auto& term : a.children())
        for (const auto& f : term.children())
            if (f.kind() == E::Kind::parity) pairs.insert({f.children()[0].var_index(), f.children()[1].var_index()});
    CHECK(pairs.size() == 28);
    CHECK(a.children().size() == 37);
}

TEST_CASE("eval_bool") {
    const auto e = minimize(elementary_rule(94));
    const std::uint8_t in101[] = {1, 0, 1};
    CHECK_FALSE(eval_bool(e, in101));
    CHECK(eval_bool(E::constant(true), in101));
    const std::uint8_t shorter[] = {1};
    CHECK_THROWS_AS(eval_bool(e, shorter), std::invalid_argument);
}
