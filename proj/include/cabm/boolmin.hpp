#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "cabm/core.hpp"

namespace cabm {

/// Minimized Boolean expression over variables x0..x{m-1}.
///
/// Values are built through the factory functions, which keep every node in
/// canonical form: And/Or/Xor are flattened, their children sorted by
/// `canonical_compare` and deduplicated, constants folded, double negation
/// removed, and negation of an Xor pushed onto its first child.
class BoolExpr {
public:
    enum class Kind : std::uint8_t { constant, var, negation, conjunction, disjunction, parity };

    BoolExpr() = default;

    static BoolExpr constant(bool value);
    static BoolExpr var(int index);
    static BoolExpr negate(BoolExpr e);
    static BoolExpr conj(std::vector<BoolExpr> children);
    static BoolExpr disj(std::vector<BoolExpr> children);
    static BoolExpr parity(std::vector<BoolExpr> children);

    Kind kind() const { return kind_; }
    bool const_value() const { return value_ != 0; }
    int var_index() const { return value_; }
    const std::vector<BoolExpr>& children() const { return children_; }

    bool is_literal() const {
        return kind_ == Kind::var || (kind_ == Kind::negation && children_[0].kind_ == Kind::var);
    }

    /// Number of variable leaves.
    std::size_t leaf_count() const;
    /// Variable indices of the leaves in depth-first order.
    std::vector<int> leaf_vars() const;

    friend bool operator==(const BoolExpr&, const BoolExpr&) = default;

private:
    Kind kind_ = Kind::constant;
    int value_ = 0;
    std::vector<BoolExpr> children_;
};

/// Total order used to sort n-ary children: leaf-variable sequence first,
/// then node kind, then children pairwise.
std::strong_ordering canonical_compare(const BoolExpr& a, const BoolExpr& b);

/// Text form, e.g. "(!p & q) | (p ^ r)". Variables are p, q, r for arity 3
/// and x0..x{m-1} otherwise.
std::string to_string(const BoolExpr& e, int arity);

bool eval_bool(const BoolExpr& e, std::span<const std::uint8_t> assignment);

/// Cube over m variables. Bit (m-1-i) of `mask`/`value` belongs to variable
/// i, matching neighborhood indices; value bits are zero outside the mask.
struct Implicant {
    std::uint16_t mask = 0;
    std::uint16_t value = 0;
    int arity = 0;

    int literal_count() const;
    bool covers(std::size_t minterm) const { return (minterm & mask) == value; }
    std::vector<std::size_t> minterms() const;

    bool has_var(int var) const { return (mask >> (arity - 1 - var)) & 1U; }
    bool positive(int var) const { return (value >> (arity - 1 - var)) & 1U; }

    friend bool operator==(const Implicant&, const Implicant&) = default;
};

/// Cube order: literal lists (variable, polarity) compared lexicographically,
/// negative before positive, shorter prefix first.
bool cube_less(const Implicant& a, const Implicant& b);

using Sop = std::vector<Implicant>;

enum class CoverMode { exact, greedy, automatic };

struct CoverOptions {
    CoverMode mode = CoverMode::automatic;
    /// Search-node budget of the exact cover in automatic mode.
    std::size_t work_budget = 20000;
};

struct CoverResult {
    Sop cubes;
    /// True when the cover is a proven minimum under the tie-breaking order.
    bool exact = false;
};

/// All prime implicants of the on-set, sorted by cube_less. Throws
/// std::domain_error for a constant-0 table (empty cover).
std::vector<Implicant> prime_implicants(const TruthTable& tt);

/// Exact: minimum cube count, then fewest literals, then lexicographically
/// smallest cube list. Greedy: essentials, then largest uncovered gain with
/// ties to the smallest cube, then redundant cubes dropped.
CoverResult minimal_cover(std::span<const Implicant> primes, const TruthTable& tt,
                          const CoverOptions& options = {});

/// Rewrites a cover of `tt` into a mixed AND/OR/XOR/NOT expression:
///  1. parity split on the lowest variable x with f|x=0 == !f|x=1,
///     giving x ^ minimize(f|x=0);
///  2. otherwise, term pairs T&a&!b, T&!a&b merge into T&(a^b), pass by
///     pass until nothing merges;
///  3. the remaining terms become an Or of Ands.
BoolExpr xor_extract(const TruthTable& tt, const Sop& sop, const CoverOptions& options = {});

struct Minimized {
    BoolExpr expr;
    /// False if some cover along the way fell back to greedy.
    bool exact = true;
};

Minimized minimize_detailed(const TruthTable& tt, const CoverOptions& options = {});

inline BoolExpr minimize(const TruthTable& tt, const CoverOptions& options = {}) {
    return minimize_detailed(tt, options).expr;
}

}  // namespace cabm
