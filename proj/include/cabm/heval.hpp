#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include "cabm/boolmin.hpp"
#include "cabm/core.hpp"

namespace cabm {

/// Operator tables of the heuristic over the six M codes.
struct HTables {
    using Unary = std::array<MCode, 6>;
    using Binary = std::array<std::array<MCode, 6>, 6>;

    Unary not_table{};
    Binary and_table{};
    Binary or_table{};
    Binary xor_table{};
    MCode leaf_zero{0};
    MCode leaf_one{5};

    static const HTables& standard();

    MCode op_not(MCode a) const { return not_table[a.value()]; }
    MCode op_and(MCode a, MCode b) const { return and_table[a.value()][b.value()]; }
    MCode op_or(MCode a, MCode b) const { return or_table[a.value()][b.value()]; }
    MCode op_xor(MCode a, MCode b) const { return xor_table[a.value()][b.value()]; }
};

// Rules behind the standard tables.
MCode h_not(MCode a);
MCode h_and(MCode a, MCode b);
MCode h_or(MCode a, MCode b);
MCode h_xor(MCode a, MCode b);

/// M code of the expression for one input. n-ary nodes fold left to right
/// over their (canonically sorted) children.
MCode eval_g(const BoolExpr& expr, std::span<const std::uint8_t> input,
             const HTables& tables = HTables::standard());

/// eval_g over every neighborhood in index order.
std::vector<MCode> m_truth_table(const BoolExpr& expr, int arity, const HTables& tables = HTables::standard());
std::vector<MCode> m_truth_table(const TruthTable& tt, const HTables& tables = HTables::standard());

struct ValidationItem {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct ValidationReport {
    std::vector<ValidationItem> items;
    bool all_passed() const;
};

/// Checks the tables against the calibration rules: leaf mapping, the
/// elementary-rule percentages, R94's M column and the step-by-step example.
ValidationReport validate_h(const HTables& tables = HTables::standard());

}  // namespace cabm
