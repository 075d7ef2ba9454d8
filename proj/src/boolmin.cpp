#include "cabm/boolmin.hpp"

#include <algorithm>
#include <bit>
#include <iterator>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <tuple>
#include <unordered_set>
#include <utility>

namespace cabm {

// ---------------------------------------------------------------------------
// BoolExpr

namespace {

int kind_rank(BoolExpr::Kind k) { return static_cast<int>(k); }

void collect_leaves(const BoolExpr& e, std::vector<int>& out) {
    if (e.kind() == BoolExpr::Kind::var) {
        out.push_back(e.var_index());
        return;
    }
    for (const auto& c : e.children()) collect_leaves(c, out);
}

void sort_unique(std::vector<BoolExpr>& v) {
    std::sort(v.begin(), v.end(),
              [](const BoolExpr& a, const BoolExpr& b) { return canonical_compare(a, b) < 0; });
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

void flatten_into(std::vector<BoolExpr>& out, BoolExpr e, BoolExpr::Kind kind) {
    if (e.kind() == kind) {
        for (const auto& c : e.children()) out.push_back(c);
    } else {
        out.push_back(std::move(e));
    }
}

bool contains_complementary_literals(const std::vector<BoolExpr>& v) {
    for (const auto& a : v) {
        if (a.kind() != BoolExpr::Kind::negation || !a.is_literal()) continue;
        const int var = a.children()[0].var_index();
        for (const auto& b : v) {
            if (b.kind() == BoolExpr::Kind::var && b.var_index() == var) return true;
        }
    }
    return false;
}

}  // namespace

std::size_t BoolExpr::leaf_count() const {
    if (kind_ == Kind::var) return 1;
    std::size_t n = 0;
    for (const auto& c : children_) n += c.leaf_count();
    return n;
}

std::vector<int> BoolExpr::leaf_vars() const {
    std::vector<int> out;
    collect_leaves(*this, out);
    return out;
}

std::strong_ordering canonical_compare(const BoolExpr& a, const BoolExpr& b) {
    const auto la = a.leaf_vars();
    const auto lb = b.leaf_vars();
    if (auto c = std::lexicographical_compare_three_way(la.begin(), la.end(), lb.begin(), lb.end());
        c != 0)
        return c;
    if (auto c = kind_rank(a.kind()) <=> kind_rank(b.kind()); c != 0) return c;
    if (a.kind() == BoolExpr::Kind::constant) return a.const_value() <=> b.const_value();
    if (a.kind() == BoolExpr::Kind::var) return a.var_index() <=> b.var_index();
    if (auto c = a.children().size() <=> b.children().size(); c != 0) return c;
    for (std::size_t i = 0; i < a.children().size(); ++i) {
        if (auto c = canonical_compare(a.children()[i], b.children()[i]); c != 0) return c;
    }
    return std::strong_ordering::equal;
}

BoolExpr BoolExpr::constant(bool value) {
    BoolExpr e;
    e.kind_ = Kind::constant;
    e.value_ = value ? 1 : 0;
    return e;
}

BoolExpr BoolExpr::var(int index) {
    if (index < 0 || index >= TruthTable::max_arity) throw std::out_of_range("variable index out of range");
    BoolExpr e;
    e.kind_ = Kind::var;
    e.value_ = index;
    return e;
}

BoolExpr BoolExpr::negate(BoolExpr inner) {
    switch (inner.kind_) {
        case Kind::constant: return constant(!inner.const_value());
        case Kind::negation: return std::move(inner.children_[0]);
        case Kind::parity: {
            auto children = std::move(inner.children_);
            children.push_back(constant(true));
            return parity(std::move(children));
        }
        default: {
            BoolExpr e;
            e.kind_ = Kind::negation;
            e.children_.push_back(std::move(inner));
            return e;
        }
    }
}

BoolExpr BoolExpr::conj(std::vector<BoolExpr> children) {
    std::vector<BoolExpr> flat;
    for (auto& c : children) {
        if (c.kind_ == Kind::constant) {
            if (!c.const_value()) return constant(false);
            continue;
        }
        flatten_into(flat, std::move(c), Kind::conjunction);
    }
    sort_unique(flat);
    if (contains_complementary_literals(flat)) return constant(false);
    if (flat.empty()) return constant(true);
    if (flat.size() == 1) return std::move(flat[0]);
    BoolExpr e;
    e.kind_ = Kind::conjunction;
    e.children_ = std::move(flat);
    return e;
}

BoolExpr BoolExpr::disj(std::vector<BoolExpr> children) {
    std::vector<BoolExpr> flat;
    for (auto& c : children) {
        if (c.kind_ == Kind::constant) {
            if (c.const_value()) return constant(true);
            continue;
        }
        flatten_into(flat, std::move(c), Kind::disjunction);
    }
    sort_unique(flat);
    if (contains_complementary_literals(flat)) return constant(true);
    if (flat.empty()) return constant(false);
    if (flat.size() == 1) return std::move(flat[0]);
    BoolExpr e;
    e.kind_ = Kind::disjunction;
    e.children_ = std::move(flat);
    return e;
}

BoolExpr BoolExpr::parity(std::vector<BoolExpr> children) {
    bool flip = false;
    std::vector<BoolExpr> flat;
    for (auto& c : children) {
        std::vector<BoolExpr> pieces;
        flatten_into(pieces, std::move(c), Kind::parity);
        for (auto& p : pieces) {
            if (p.kind_ == Kind::constant) {
                flip ^= p.const_value();
            } else if (p.kind_ == Kind::negation) {
                flip = !flip;
                flat.push_back(std::move(p.children_[0]));
            } else {
                flat.push_back(std::move(p));
            }
        }
    }
    std::sort(flat.begin(), flat.end(),
              [](const BoolExpr& a, const BoolExpr& b) { return canonical_compare(a, b) < 0; });
    // a ^ a = 0
    std::vector<BoolExpr> kept;
    for (auto& f : flat) {
        if (!kept.empty() && kept.back() == f) {
            kept.pop_back();
        } else {
            kept.push_back(std::move(f));
        }
    }
    if (kept.empty()) return constant(flip);
    if (kept.size() == 1) return flip ? negate(std::move(kept[0])) : std::move(kept[0]);
    if (flip) {
        kept[0] = negate(std::move(kept[0]));
        std::sort(kept.begin(), kept.end(),
                  [](const BoolExpr& a, const BoolExpr& b) { return canonical_compare(a, b) < 0; });
    }
    BoolExpr e;
    e.kind_ = Kind::parity;
    e.children_ = std::move(kept);
    return e;
}

namespace {

std::string var_name(int index, int arity) {
    if (arity == 3) return std::string(1, "pqr"[index]);
    return "x" + std::to_string(index);
}

void print_expr(const BoolExpr& e, int arity, bool nested, std::string& out) {
    using K = BoolExpr::Kind;
    switch (e.kind()) {
        case K::constant: out += e.const_value() ? "1" : "0"; return;
        case K::var: out += var_name(e.var_index(), arity); return;
        case K::negation:
            out += '!';
            print_expr(e.children()[0], arity, true, out);
            return;
        default: break;
    }
    const char* op = e.kind() == K::conjunction ? " & " : e.kind() == K::disjunction ? " | " : " ^ ";
    if (nested) out += '(';
    for (std::size_t i = 0; i < e.children().size(); ++i) {
        if (i) out += op;
        print_expr(e.children()[i], arity, true, out);
    }
    if (nested) out += ')';
}

}  // namespace

std::string to_string(const BoolExpr& e, int arity) {
    std::string out;
    print_expr(e, arity, false, out);
    return out;
}

bool eval_bool(const BoolExpr& e, std::span<const std::uint8_t> assignment) {
    using K = BoolExpr::Kind;
    switch (e.kind()) {
        case K::constant: return e.const_value();
        case K::var:
            if (static_cast<std::size_t>(e.var_index()) >= assignment.size())
                throw std::invalid_argument("assignment shorter than expression arity");
            return assignment[static_cast<std::size_t>(e.var_index())] != 0;
        case K::negation: return !eval_bool(e.children()[0], assignment);
        case K::conjunction:
            for (const auto& c : e.children())
                if (!eval_bool(c, assignment)) return false;
            return true;
        case K::disjunction:
            for (const auto& c : e.children())
                if (eval_bool(c, assignment)) return true;
            return false;
        case K::parity: {
            bool acc = false;
            for (const auto& c : e.children()) acc ^= eval_bool(c, assignment);
            return acc;
        }
    }
    return false;
}

// ---------------------------------------------------------------------------
// Implicants

int Implicant::literal_count() const { return std::popcount(static_cast<unsigned>(mask)); }

std::vector<std::size_t> Implicant::minterms() const {
    const unsigned full = (1U << arity) - 1;
    const unsigned free_bits = full & ~static_cast<unsigned>(mask);
    std::vector<std::size_t> out;
    // enumerate subsets of the free bits
    unsigned sub = 0;
    do {
        out.push_back(value | sub);
        sub = (sub - free_bits) & free_bits;
    } while (sub != 0);
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

std::vector<int> cube_key(const Implicant& c) {
    std::vector<int> key;
    for (int v = 0; v < c.arity; ++v) {
        if (c.has_var(v)) key.push_back(2 * v + (c.positive(v) ? 1 : 0));
    }
    return key;
}

}  // namespace

bool cube_less(const Implicant& a, const Implicant& b) {
    const auto ka = cube_key(a);
    const auto kb = cube_key(b);
    return std::lexicographical_compare(ka.begin(), ka.end(), kb.begin(), kb.end());
}

std::vector<Implicant> prime_implicants(const TruthTable& tt) {
    const int m = tt.arity();
    const auto full = static_cast<std::uint16_t>((1U << m) - 1);
    auto pack = [](std::uint16_t mask, std::uint16_t value) {
        return (static_cast<std::uint32_t>(mask) << 16) | value;
    };

    std::unordered_set<std::uint32_t> current;
    for (std::size_t i = 0; i < tt.size(); ++i) {
        if (tt[i]) current.insert(pack(full, static_cast<std::uint16_t>(i)));
    }
    if (current.empty()) throw std::domain_error("empty cover: constant-0 function has no implicants");

    std::vector<Implicant> primes;
    while (!current.empty()) {
        std::unordered_set<std::uint32_t> next;
        std::unordered_set<std::uint32_t> merged;
        for (auto packed : current) {
            const auto mask = static_cast<std::uint16_t>(packed >> 16);
            const auto value = static_cast<std::uint16_t>(packed & 0xffffU);
            for (int b = 0; b < m; ++b) {
                const auto bit = static_cast<std::uint16_t>(1U << b);
                if (!(mask & bit) || (value & bit)) continue;
                const auto partner = pack(mask, static_cast<std::uint16_t>(value | bit));
                if (current.count(partner)) {
                    next.insert(pack(static_cast<std::uint16_t>(mask & ~bit), value));
                    merged.insert(packed);
                    merged.insert(partner);
                }
            }
        }
        for (auto packed : current) {
            if (!merged.count(packed))
                primes.push_back({static_cast<std::uint16_t>(packed >> 16),
                                  static_cast<std::uint16_t>(packed & 0xffffU), m});
        }
        current = std::move(next);
    }
    std::sort(primes.begin(), primes.end(), cube_less);
    return primes;
}

// ---------------------------------------------------------------------------
// Covering

namespace {

struct CoverProblem {
    std::vector<Implicant> primes;                 // sorted by cube_less
    std::vector<std::size_t> minterms;             // on-set
    std::vector<std::vector<std::size_t>> rows;    // prime -> minterm slots
    std::vector<std::vector<std::size_t>> cands;   // minterm slot -> primes (ascending)
};

CoverProblem build_problem(std::span<const Implicant> primes_in, const TruthTable& tt) {
    CoverProblem p;
    p.primes.assign(primes_in.begin(), primes_in.end());
    std::sort(p.primes.begin(), p.primes.end(), cube_less);
    p.primes.erase(std::unique(p.primes.begin(), p.primes.end()), p.primes.end());

    std::vector<std::size_t> slot_of(tt.size(), SIZE_MAX);
    for (std::size_t i = 0; i < tt.size(); ++i) {
        if (tt[i]) {
            slot_of[i] = p.minterms.size();
            p.minterms.push_back(i);
        }
    }
    p.rows.resize(p.primes.size());
    p.cands.resize(p.minterms.size());
    for (std::size_t j = 0; j < p.primes.size(); ++j) {
        if (p.primes[j].arity != tt.arity()) throw std::invalid_argument("implicant arity mismatch");
        for (auto mt : p.primes[j].minterms()) {
            if (slot_of[mt] == SIZE_MAX) throw std::invalid_argument("implicant covers an off-set minterm");
            p.rows[j].push_back(slot_of[mt]);
            p.cands[slot_of[mt]].push_back(j);
        }
    }
    for (const auto& c : p.cands) {
        if (c.empty()) throw std::invalid_argument("primes do not cover the on-set");
    }
    return p;
}

std::vector<std::size_t> essentials(const CoverProblem& p) {
    std::vector<std::size_t> ess;
    for (const auto& c : p.cands) {
        if (c.size() == 1) ess.push_back(c[0]);
    }
    std::sort(ess.begin(), ess.end());
    ess.erase(std::unique(ess.begin(), ess.end()), ess.end());
    return ess;
}

std::vector<std::size_t> greedy_cover(const CoverProblem& p) {
    std::vector<std::size_t> chosen = essentials(p);
    std::vector<int> covered(p.minterms.size(), 0);
    std::size_t remaining = p.minterms.size();
    auto take = [&](std::size_t j) {
        for (auto s : p.rows[j]) {
            if (covered[s]++ == 0) --remaining;
        }
    };
    for (auto j : chosen) take(j);

    std::vector<char> in_cover(p.primes.size(), 0);
    for (auto j : chosen) in_cover[j] = 1;
    while (remaining > 0) {
        std::size_t best = SIZE_MAX;
        std::size_t best_gain = 0;
        for (std::size_t j = 0; j < p.primes.size(); ++j) {
            if (in_cover[j]) continue;
            std::size_t gain = 0;
            for (auto s : p.rows[j]) gain += covered[s] == 0;
            if (gain > best_gain) {
                best_gain = gain;
                best = j;
            }
        }
        in_cover[best] = 1;
        chosen.push_back(best);
        take(best);
    }

    // drop redundant cubes, largest first
    std::sort(chosen.begin(), chosen.end());
    for (auto it = chosen.rbegin(); it != chosen.rend();) {
        const auto j = *it;
        const bool redundant =
            std::all_of(p.rows[j].begin(), p.rows[j].end(), [&](std::size_t s) { return covered[s] > 1; });
        if (redundant) {
            for (auto s : p.rows[j]) --covered[s];
            it = std::reverse_iterator(chosen.erase(std::next(it).base()));
        } else {
            ++it;
        }
    }
    return chosen;
}

struct BudgetExceeded {};

class ExactSearch {
public:
    ExactSearch(const CoverProblem& p, std::vector<std::size_t> slots, std::size_t& nodes, std::size_t budget,
                std::size_t size_limit)
        : p_(p),
          slots_(std::move(slots)),
          nodes_(nodes),
          budget_(budget),
          size_limit_(size_limit),
          covered_(p.minterms.size(), 0) {
        min_literals_ = p_.primes.empty() ? 0 : p_.primes[0].arity;
        for (auto s : slots_) {
            for (auto j : p_.cands[s]) min_literals_ = std::min(min_literals_, p_.primes[j].literal_count());
        }
    }

    std::vector<std::size_t> run() {
        dfs();
        std::sort(best_.begin(), best_.end());
        return best_;
    }

private:
    std::size_t pick_branch_slot() const {
        std::size_t best = SIZE_MAX;
        for (auto s : slots_) {
            if (covered_[s]) continue;
            if (best == SIZE_MAX || p_.cands[s].size() < p_.cands[best].size()) best = s;
        }
        return best;
    }

    // Uncovered minterms with pairwise disjoint candidate sets each need
    // their own cube.
    std::size_t lower_bound() const {
        std::vector<std::size_t> open;
        for (auto s : slots_) {
            if (!covered_[s]) open.push_back(s);
        }
        std::stable_sort(open.begin(), open.end(),
                         [&](std::size_t a, std::size_t b) { return p_.cands[a].size() < p_.cands[b].size(); });
        std::vector<char> used(p_.primes.size(), 0);
        std::size_t lb = 0;
        for (auto s : open) {
            const auto& c = p_.cands[s];
            if (std::any_of(c.begin(), c.end(), [&](std::size_t j) { return used[j]; })) continue;
            ++lb;
            for (auto j : c) used[j] = 1;
        }
        return lb;
    }

    bool better_than_best(const std::vector<std::size_t>& sorted, int lits) const {
        if (!found_) return true;
        if (sorted.size() != best_.size()) return sorted.size() < best_.size();
        if (lits != best_lits_) return lits < best_lits_;
        return std::lexicographical_compare(sorted.begin(), sorted.end(), best_.begin(), best_.end());
    }

    void dfs() {
        if (++nodes_ > budget_) throw BudgetExceeded{};
        const auto slot = pick_branch_slot();
        if (slot == SIZE_MAX) {
            auto sorted = chosen_;
            std::sort(sorted.begin(), sorted.end());
            if (better_than_best(sorted, lits_)) {
                best_ = std::move(sorted);
                best_lits_ = lits_;
                found_ = true;
            }
            return;
        }
        const auto lb = lower_bound();
        if (chosen_.size() + lb > size_limit_) return;
        if (found_) {
            if (chosen_.size() + lb > best_.size()) return;
            const auto extra = static_cast<int>(best_.size() - chosen_.size());
            if (lits_ + extra * min_literals_ > best_lits_) return;
        }
        for (auto j : p_.cands[slot]) {
            chosen_.push_back(j);
            lits_ += p_.primes[j].literal_count();
            for (auto s : p_.rows[j]) ++covered_[s];
            dfs();
            for (auto s : p_.rows[j]) --covered_[s];
            lits_ -= p_.primes[j].literal_count();
            chosen_.pop_back();
        }
    }

    const CoverProblem& p_;
    std::vector<std::size_t> slots_;
    std::size_t& nodes_;
    std::size_t budget_;
    std::size_t size_limit_;
    std::vector<int> covered_;
    std::vector<std::size_t> chosen_;
    int lits_ = 0;
    int min_literals_ = 0;
    std::vector<std::size_t> best_;
    int best_lits_ = 0;
    bool found_ = false;
};

// Components of the uncovered minterms, linked through shared primes. The
// objective (count, literals, lexicographic list) decomposes over them.
std::vector<std::vector<std::size_t>> components(const CoverProblem& p, const std::vector<char>& done) {
    std::vector<std::size_t> parent(p.minterms.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (std::size_t j = 0; j < p.primes.size(); ++j) {
        std::size_t first = SIZE_MAX;
        for (auto s : p.rows[j]) {
            if (done[s]) continue;
            if (first == SIZE_MAX) {
                first = s;
            } else {
                parent[find(s)] = find(first);
            }
        }
    }
    std::map<std::size_t, std::vector<std::size_t>> groups;
    for (std::size_t s = 0; s < p.minterms.size(); ++s) {
        if (!done[s]) groups[find(s)].push_back(s);
    }
    std::vector<std::vector<std::size_t>> out;
    for (auto& [root, slots] : groups) out.push_back(std::move(slots));
    return out;
}

// Cyclic-core reduction: secondary essentials, dominated primes and
// dominating minterms. Every step keeps the unique optimum under the
// (count, literals, cube list) order, so the search below stays exact.
struct Reduction {
    std::vector<std::size_t> chosen;
    std::vector<char> alive;  // per prime
    std::vector<char> done;   // per minterm: covered or implied
};

Reduction reduce(const CoverProblem& p) {
    Reduction red;
    red.alive.assign(p.primes.size(), 1);
    red.done.assign(p.minterms.size(), 0);
    auto choose = [&](std::size_t j) {
        red.chosen.push_back(j);
        red.alive[j] = 0;
        for (auto s : p.rows[j]) red.done[s] = 1;
    };
    std::vector<std::vector<std::size_t>> live_rows(p.primes.size());
    std::vector<std::vector<std::size_t>> live_cands(p.minterms.size());

    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t s = 0; s < p.minterms.size(); ++s) {
            if (red.done[s]) continue;
            std::size_t n = 0, last = 0;
            for (auto j : p.cands[s])
                if (red.alive[j]) ++n, last = j;
            if (n == 1) {
                choose(last);
                changed = true;
            }
        }

        for (std::size_t j = 0; j < p.primes.size(); ++j) {
            live_rows[j].clear();
            if (!red.alive[j]) continue;
            for (auto s : p.rows[j])
                if (!red.done[s]) live_rows[j].push_back(s);
            if (live_rows[j].empty()) {
                red.alive[j] = 0;
                changed = true;
            }
        }
        // a prime is dropped when another one covers all its live minterms
        // and is no worse in literals and order
        for (std::size_t j = 0; j < p.primes.size(); ++j) {
            if (!red.alive[j]) continue;
            for (std::size_t k = 0; k < p.primes.size(); ++k) {
                if (k == j || !red.alive[k]) continue;
                const int lj = p.primes[j].literal_count();
                const int lk = p.primes[k].literal_count();
                if (lk > lj || (lk == lj && k > j)) continue;
                if (std::includes(live_rows[k].begin(), live_rows[k].end(), live_rows[j].begin(),
                                  live_rows[j].end())) {
                    red.alive[j] = 0;
                    changed = true;
                    break;
                }
            }
        }

        for (std::size_t s = 0; s < p.minterms.size(); ++s) {
            live_cands[s].clear();
            if (red.done[s]) continue;
            for (auto j : p.cands[s])
                if (red.alive[j]) live_cands[s].push_back(j);
        }
        // covering minterm a covers b whenever cands(a) is inside cands(b)
        for (std::size_t a = 0; a < p.minterms.size(); ++a) {
            if (red.done[a]) continue;
            for (std::size_t b = 0; b < p.minterms.size(); ++b) {
                if (b == a || red.done[b]) continue;
                if (live_cands[a].size() > live_cands[b].size()) continue;
                if (live_cands[a].size() == live_cands[b].size() && b < a) continue;
                if (std::includes(live_cands[b].begin(), live_cands[b].end(), live_cands[a].begin(),
                                  live_cands[a].end())) {
                    red.done[b] = 1;
                    changed = true;
                }
            }
        }
    }
    return red;
}

// Cover size of a quick greedy pass over one component; bounds the search.
std::size_t greedy_bound(const CoverProblem& core, const std::vector<std::size_t>& slots) {
    std::vector<char> open(core.minterms.size(), 0);
    for (auto s : slots) open[s] = 1;
    std::size_t remaining = slots.size();
    std::size_t picked = 0;
    while (remaining > 0) {
        std::size_t best = SIZE_MAX, best_gain = 0;
        for (auto s : slots) {
            if (!open[s]) continue;
            for (auto j : core.cands[s]) {
                std::size_t gain = 0;
                for (auto t : core.rows[j]) gain += open[t];
                if (gain > best_gain) best_gain = gain, best = j;
            }
        }
        for (auto t : core.rows[best])
            if (open[t]) open[t] = 0, --remaining;
        ++picked;
    }
    return picked;
}

std::optional<std::vector<std::size_t>> exact_cover(const CoverProblem& p, std::size_t budget) {
    Reduction red = reduce(p);
    CoverProblem core = p;
    for (std::size_t j = 0; j < core.primes.size(); ++j)
        if (!red.alive[j]) core.rows[j].clear();
    for (auto& c : core.cands) {
        std::vector<std::size_t> kept;
        for (auto j : c)
            if (red.alive[j]) kept.push_back(j);
        c = std::move(kept);
    }
    std::vector<std::size_t> chosen = std::move(red.chosen);
    std::size_t nodes = 0;
    try {
        for (auto& slots : components(core, red.done)) {
            const auto bound = greedy_bound(core, slots);
            ExactSearch search(core, slots, nodes, budget, bound);
            auto part = search.run();
            chosen.insert(chosen.end(), part.begin(), part.end());
        }
    } catch (const BudgetExceeded&) {
        return std::nullopt;
    }
    std::sort(chosen.begin(), chosen.end());
    return chosen;
}

}  // namespace

CoverResult minimal_cover(std::span<const Implicant> primes, const TruthTable& tt, const CoverOptions& options) {
    CoverResult result;
    if (tt.on_count() == 0) {
        result.exact = true;
        return result;
    }
    const CoverProblem p = build_problem(primes, tt);

    std::vector<std::size_t> chosen;
    if (options.mode == CoverMode::greedy) {
        chosen = greedy_cover(p);
    } else {
        const std::size_t budget = options.mode == CoverMode::exact ? SIZE_MAX : options.work_budget;
        if (auto exact = exact_cover(p, budget)) {
            chosen = std::move(*exact);
            result.exact = true;
        } else {
            chosen = greedy_cover(p);
        }
    }
    std::sort(chosen.begin(), chosen.end());
    for (auto j : chosen) result.cubes.push_back(p.primes[j]);
    return result;
}

// ---------------------------------------------------------------------------
// XOR extraction

namespace {

// Factor of a product term: a literal or a two-variable parity a ^ b.
struct Factor {
    int a = 0;
    int b = 0;  // second variable of a parity factor
    bool positive = true;
    bool is_parity = false;

    auto key() const { return std::tuple(a, is_parity ? 1 : 0, is_parity ? b : (positive ? 1 : 0)); }
    friend bool operator==(const Factor& x, const Factor& y) { return x.key() == y.key(); }
    friend bool operator<(const Factor& x, const Factor& y) { return x.key() < y.key(); }
};

using Term = std::vector<Factor>;  // sorted

bool term_less(const Term& x, const Term& y) {
    return std::lexicographical_compare(x.begin(), x.end(), y.begin(), y.end());
}

Term term_from_cube(const Implicant& c) {
    Term t;
    for (int v = 0; v < c.arity; ++v) {
        if (c.has_var(v)) t.push_back({v, 0, c.positive(v), false});
    }
    return t;
}

// T&a&!b with T&!a&b gives T&(a^b); returns the merged term and its new pair.
std::optional<std::pair<Term, std::pair<int, int>>> merge_terms(const Term& x, const Term& y) {
    if (x.size() != y.size()) return std::nullopt;
    Term common, only_x, only_y;
    std::set_intersection(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(common));
    if (common.size() + 2 != x.size()) return std::nullopt;
    std::set_difference(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(only_x));
    std::set_difference(y.begin(), y.end(), x.begin(), x.end(), std::back_inserter(only_y));
    for (const auto* side : {&only_x, &only_y}) {
        for (const auto& f : *side) {
            if (f.is_parity) return std::nullopt;
        }
    }
    // both sides are sorted by variable
    if (only_x[0].a != only_y[0].a || only_x[1].a != only_y[1].a) return std::nullopt;
    if (only_x[0].positive == only_y[0].positive || only_x[1].positive == only_y[1].positive) return std::nullopt;
    if (only_x[0].positive == only_x[1].positive) return std::nullopt;
    const int lo = only_x[0].a;
    const int hi = only_x[1].a;
    common.push_back({lo, hi, true, true});
    std::sort(common.begin(), common.end());
    return std::pair(std::move(common), std::pair(lo, hi));
}

// Pass-based pairing. In each pass the terms are visited in canonical
// order; a term merges with the later unmerged partner whose parity pair
// has been introduced least often so far (first such partner on ties).
std::vector<Term> pair_parities(std::vector<Term> terms) {
    std::map<std::pair<int, int>, std::size_t> uses;
    for (;;) {
        std::sort(terms.begin(), terms.end(), term_less);
        std::vector<char> used(terms.size(), 0);
        std::vector<Term> out;
        bool merged_any = false;
        for (std::size_t i = 0; i < terms.size(); ++i) {
            if (used[i]) continue;
            used[i] = 1;
            std::optional<std::pair<Term, std::pair<int, int>>> best;
            std::size_t best_j = 0;
            std::size_t best_uses = 0;
            for (std::size_t j = i + 1; j < terms.size(); ++j) {
                if (used[j]) continue;
                auto m = merge_terms(terms[i], terms[j]);
                if (!m) continue;
                const auto u = uses[m->second];
                if (!best || u < best_uses) {
                    best = std::move(m);
                    best_j = j;
                    best_uses = u;
                }
            }
            if (best) {
                used[best_j] = 1;
                ++uses[best->second];
                out.push_back(std::move(best->first));
                merged_any = true;
            } else {
                out.push_back(std::move(terms[i]));
            }
        }
        terms = std::move(out);
        if (!merged_any) break;
    }
    std::sort(terms.begin(), terms.end(), term_less);
    return terms;
}

BoolExpr build_expression(const std::vector<Term>& terms) {
    std::vector<BoolExpr> products;
    for (const auto& t : terms) {
        std::vector<BoolExpr> factors;
        for (const auto& f : t) {
            if (f.is_parity) {
                factors.push_back(BoolExpr::parity({BoolExpr::var(f.a), BoolExpr::var(f.b)}));
            } else {
                auto v = BoolExpr::var(f.a);
                factors.push_back(f.positive ? std::move(v) : BoolExpr::negate(std::move(v)));
            }
        }
        products.push_back(BoolExpr::conj(std::move(factors)));
    }
    return BoolExpr::disj(std::move(products));
}

std::optional<int> parity_variable(const TruthTable& tt) {
    for (int v = 0; v < tt.arity(); ++v) {
        if (tt.cofactor(v, false) == ~tt.cofactor(v, true)) return v;
    }
    return std::nullopt;
}

Minimized split_on_parity(const TruthTable& tt, int var, const CoverOptions& options) {
    auto rest = minimize_detailed(tt.cofactor(var, false), options);
    return {BoolExpr::parity({BoolExpr::var(var), std::move(rest.expr)}), rest.exact};
}

BoolExpr from_sop(const Sop& sop) {
    std::vector<Term> terms;
    terms.reserve(sop.size());
    for (const auto& c : sop) terms.push_back(term_from_cube(c));
    return build_expression(pair_parities(std::move(terms)));
}

}  // namespace

BoolExpr xor_extract(const TruthTable& tt, const Sop& sop, const CoverOptions& options) {
    if (tt.is_constant()) return BoolExpr::constant(tt[0]);
    if (auto v = parity_variable(tt)) return split_on_parity(tt, *v, options).expr;
    return from_sop(sop);
}

Minimized minimize_detailed(const TruthTable& tt, const CoverOptions& options) {
    if (tt.is_constant()) return {BoolExpr::constant(tt[0]), true};
    if (auto v = parity_variable(tt)) return split_on_parity(tt, *v, options);
    const auto primes = prime_implicants(tt);
    auto cover = minimal_cover(primes, tt, options);
    return {from_sop(cover.cubes), cover.exact};
}

}  // namespace cabm
