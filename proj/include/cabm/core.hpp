#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace cabm {

/// Behavior axis of the M code.
enum class Behavior : std::uint8_t { stable, decrease, growth, chaotic };

std::string_view to_string(Behavior b);

/// Six-valued state/behavior code.
///
///   0 {0, stable}   1 {0, decrease}  2 {0, chaotic}
///   3 {1, chaotic}  4 {1, growth}    5 {1, stable}
class MCode {
public:
    constexpr MCode() = default;
    constexpr explicit MCode(int value) : value_(static_cast<std::uint8_t>(value)) {
        if (value < 0 || value > 5) throw std::out_of_range("MCode value must be in [0, 5]");
    }

    /// Throws std::invalid_argument for combinations the code cannot express
    /// (decrease with state 1, growth with state 0).
    static MCode from(int state, Behavior behavior);

    constexpr int value() const { return value_; }
    constexpr int state() const { return value_ >= 3 ? 1 : 0; }
    constexpr Behavior behavior() const {
        switch (value_) {
            case 1: return Behavior::decrease;
            case 2:
            case 3: return Behavior::chaotic;
            case 4: return Behavior::growth;
            default: return Behavior::stable;
        }
    }
    constexpr bool chaotic() const { return value_ == 2 || value_ == 3; }

    friend constexpr auto operator<=>(MCode, MCode) = default;

private:
    std::uint8_t value_ = 0;
};

/// Local transition function as 2^arity output bits indexed by neighborhood value.
class TruthTable {
public:
    static constexpr int max_arity = 9;

    TruthTable() = default;
    TruthTable(int arity, std::vector<std::uint8_t> outputs);

    /// Parses a string of '0'/'1' characters, index 0 first. The arity is
    /// inferred from the length, which must be a power of two.
    static TruthTable from_bits(std::string_view bits);

    template <typename F>
    static TruthTable from_function(int arity, F&& f) {
        check_arity(arity);
        std::vector<std::uint8_t> out(std::size_t{1} << arity);
        for (std::size_t i = 0; i < out.size(); ++i) out[i] = f(i) ? 1 : 0;
        return TruthTable(arity, std::move(out));
    }

    int arity() const { return arity_; }
    std::size_t size() const { return outputs_.size(); }
    bool operator[](std::size_t index) const { return outputs_[index] != 0; }
    std::span<const std::uint8_t> outputs() const { return outputs_; }

    std::size_t on_count() const;
    bool is_constant() const;

    /// Bit of `index` holding variable `var` (variable 0 is most significant).
    int var_shift(int var) const { return arity_ - 1 - var; }

    /// Same-arity table with `var` fixed to `value`; the result no longer
    /// depends on `var`.
    TruthTable cofactor(int var, bool value) const;
    bool depends_on(int var) const;

    TruthTable operator~() const;
    std::string to_bit_string() const;

    friend bool operator==(const TruthTable&, const TruthTable&) = default;

    static void check_arity(int arity);

private:
    int arity_ = 0;
    std::vector<std::uint8_t> outputs_;
};

/// Sum of cells[i] * 2^(m-1-i); the first cell is most significant.
/// For the Moore neighborhood the cells are the 3x3 block scanned row-major
/// from the top-left, so the center is cell 4.
std::size_t neighborhood_index(std::span<const std::uint8_t> cells);
std::size_t neighborhood_index(std::span<const std::uint8_t> cells, int arity);

/// Inverse of neighborhood_index.
std::vector<std::uint8_t> neighborhood_cells(std::size_t index, int arity);

/// Significance convention for rule-number bits of Moore rules.
///   msb_first: neighborhood x0 (top-left) is the most significant input bit.
///   lsb_first: x0 is the least significant input bit.
enum class BitOrder { msb_first, lsb_first };

/// Table whose input bit order is reversed: out[i] = in[reverse(i)].
TruthTable reverse_inputs(const TruthTable& tt);

using BigUint = boost::multiprecision::cpp_int;

/// Non-negative rule number below 2^(2^arity), bit i = output for neighborhood i.
class RuleNumber {
public:
    RuleNumber(BigUint value, int arity);

    /// Decimal digits only; throws std::invalid_argument / std::out_of_range.
    static RuleNumber parse(std::string_view decimal, int arity);

    const BigUint& value() const { return value_; }
    int arity() const { return arity_; }
    std::string to_string() const;

    friend bool operator==(const RuleNumber&, const RuleNumber&) = default;

private:
    BigUint value_;
    int arity_;
};

TruthTable decode_rule_number(const RuleNumber& rn, BitOrder order = BitOrder::msb_first);
RuleNumber encode_rule_number(const TruthTable& tt, BitOrder order = BitOrder::msb_first);

/// B3/S23.
TruthTable gol_truth_table();

inline TruthTable elementary_rule(unsigned number) {
    if (number > 255) throw std::out_of_range("elementary rule number must be in [0, 255]");
    return TruthTable::from_function(3, [number](std::size_t i) { return (number >> i) & 1U; });
}

/// Cyclic binary lattice, 1D (a single row) or 2D. Rows are bit-packed into
/// 64-bit words, bit c % 64 of word c / 64 holding column c.
class Lattice {
public:
    static Lattice line(std::size_t length);
    static Lattice grid(std::size_t rows, std::size_t cols);

    /// Rows separated by newlines, cells '0'/'1' (also '.' and '*' / 'o').
    /// Produces a 2D lattice of at least `rows` x `cols`, pattern placed at
    /// the center; a zero size means "exactly the pattern size".
    static Lattice from_text(std::string_view text, std::size_t rows = 0, std::size_t cols = 0);

    int dimension() const { return dimension_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t size() const { return rows_ * cols_; }
    std::size_t words_per_row() const { return words_per_row_; }

    bool get(std::size_t row, std::size_t col) const {
        return (words_[row * words_per_row_ + (col >> 6)] >> (col & 63)) & 1U;
    }
    void set(std::size_t row, std::size_t col, bool value) {
        auto& w = words_[row * words_per_row_ + (col >> 6)];
        const std::uint64_t bit = std::uint64_t{1} << (col & 63);
        w = value ? (w | bit) : (w & ~bit);
    }

    /// Index arithmetic modulo the lattice dimensions.
    bool at(std::ptrdiff_t row, std::ptrdiff_t col) const;
    std::size_t wrap_row(std::ptrdiff_t row) const;
    std::size_t wrap_col(std::ptrdiff_t col) const;

    std::span<const std::uint64_t> row_words(std::size_t row) const {
        return {words_.data() + row * words_per_row_, words_per_row_};
    }
    std::span<std::uint64_t> row_words(std::size_t row) {
        return {words_.data() + row * words_per_row_, words_per_row_};
    }

    std::size_t population() const;
    Lattice shifted(std::ptrdiff_t drow, std::ptrdiff_t dcol) const;
    std::string to_text() const;

    friend bool operator==(const Lattice&, const Lattice&) = default;

private:
    Lattice(int dimension, std::size_t rows, std::size_t cols);

    int dimension_ = 1;
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::size_t words_per_row_ = 0;
    std::vector<std::uint64_t> words_;
};

/// One MCode per site of a lattice with the same shape.
class MField {
public:
    MField(int dimension, std::size_t rows, std::size_t cols)
        : dimension_(dimension), rows_(rows), cols_(cols), codes_(rows * cols) {}

    int dimension() const { return dimension_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    MCode get(std::size_t row, std::size_t col) const { return codes_[row * cols_ + col]; }
    void set(std::size_t row, std::size_t col, MCode m) { codes_[row * cols_ + col] = m; }
    std::span<const MCode> codes() const { return codes_; }

    /// Lattice of state projections.
    Lattice states() const;

    friend bool operator==(const MField&, const MField&) = default;

private:
    int dimension_;
    std::size_t rows_;
    std::size_t cols_;
    std::vector<MCode> codes_;
};

}  // namespace cabm
