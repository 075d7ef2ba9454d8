#include "cabm/core.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

namespace cabm {

std::string_view to_string(Behavior b) {
    switch (b) {
        case Behavior::stable: return "stable";
        case Behavior::decrease: return "decrease";
        case Behavior::growth: return "growth";
        case Behavior::chaotic: return "chaotic";
    }
    return "?";
}

MCode MCode::from(int state, Behavior behavior) {
    if (state != 0 && state != 1) throw std::invalid_argument("state must be 0 or 1");
    switch (behavior) {
        case Behavior::stable: return MCode(state ? 5 : 0);
        case Behavior::chaotic: return MCode(state ? 3 : 2);
        case Behavior::decrease:
            if (state) throw std::invalid_argument("decrease only exists with state 0");
            return MCode(1);
        case Behavior::growth:
            if (!state) throw std::invalid_argument("growth only exists with state 1");
            return MCode(4);
    }
    throw std::invalid_argument("unknown behavior");
}

// ---------------------------------------------------------------------------
// TruthTable

void TruthTable::check_arity(int arity) {
    if (arity < 1 || arity > max_arity)
        throw std::invalid_argument("arity must be in [1, " + std::to_string(max_arity) + "]");
}

TruthTable::TruthTable(int arity, std::vector<std::uint8_t> outputs)
    : arity_(arity), outputs_(std::move(outputs)) {
    check_arity(arity);
    if (outputs_.size() != (std::size_t{1} << arity))
        throw std::invalid_argument("truth table needs exactly 2^arity outputs");
    for (auto& o : outputs_) {
        if (o > 1) throw std::invalid_argument("truth table outputs must be 0 or 1");
    }
}

TruthTable TruthTable::from_bits(std::string_view bits) {
    const auto n = bits.size();
    if (n < 2 || !std::has_single_bit(n))
        throw std::invalid_argument("truth table length " + std::to_string(n) +
                                    " is not a power of two");
    std::vector<std::uint8_t> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (bits[i] != '0' && bits[i] != '1')
            throw std::invalid_argument("truth table may only contain '0' and '1'");
        out[i] = bits[i] == '1';
    }
    return TruthTable(std::countr_zero(n), std::move(out));
}

std::size_t TruthTable::on_count() const {
    return static_cast<std::size_t>(std::count(outputs_.begin(), outputs_.end(), 1));
}

bool TruthTable::is_constant() const {
    return std::all_of(outputs_.begin(), outputs_.end(),
                       [&](std::uint8_t o) { return o == outputs_.front(); });
}

TruthTable TruthTable::cofactor(int var, bool value) const {
    const std::size_t bit = std::size_t{1} << var_shift(var);
    std::vector<std::uint8_t> out(outputs_.size());
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = outputs_[value ? (i | bit) : (i & ~bit)];
    return TruthTable(arity_, std::move(out));
}

bool TruthTable::depends_on(int var) const {
    const std::size_t bit = std::size_t{1} << var_shift(var);
    for (std::size_t i = 0; i < outputs_.size(); ++i) {
        if (!(i & bit) && outputs_[i] != outputs_[i | bit]) return true;
    }
    return false;
}

TruthTable TruthTable::operator~() const {
    auto out = outputs_;
    for (auto& o : out) o ^= 1;
    return TruthTable(arity_, std::move(out));
}

std::string TruthTable::to_bit_string() const {
    std::string s(outputs_.size(), '0');
    for (std::size_t i = 0; i < s.size(); ++i) s[i] = outputs_[i] ? '1' : '0';
    return s;
}

// ---------------------------------------------------------------------------
// Neighborhoods and rule numbers

std::size_t neighborhood_index(std::span<const std::uint8_t> cells) {
    if (cells.empty() || cells.size() > static_cast<std::size_t>(TruthTable::max_arity))
        throw std::invalid_argument("neighborhood size out of range");
    std::size_t index = 0;
    for (auto c : cells) {
        if (c > 1) throw std::invalid_argument("neighborhood cells must be 0 or 1");
        index = (index << 1) | c;
    }
    return index;
}

std::size_t neighborhood_index(std::span<const std::uint8_t> cells, int arity) {
    if (cells.size() != static_cast<std::size_t>(arity))
        throw std::invalid_argument("neighborhood has " + std::to_string(cells.size()) +
                                    " cells, rule arity is " + std::to_string(arity));
    return neighborhood_index(cells);
}

std::vector<std::uint8_t> neighborhood_cells(std::size_t index, int arity) {
    TruthTable::check_arity(arity);
    if (index >= (std::size_t{1} << arity)) throw std::out_of_range("neighborhood index out of range");
    std::vector<std::uint8_t> cells(static_cast<std::size_t>(arity));
    for (int i = 0; i < arity; ++i) cells[static_cast<std::size_t>(i)] = (index >> (arity - 1 - i)) & 1U;
    return cells;
}

namespace {

std::size_t reverse_bits(std::size_t v, int width) {
    std::size_t r = 0;
    for (int i = 0; i < width; ++i) r |= ((v >> i) & 1U) << (width - 1 - i);
    return r;
}

}  // namespace

TruthTable reverse_inputs(const TruthTable& tt) {
    return TruthTable::from_function(tt.arity(),
                                     [&](std::size_t i) { return tt[reverse_bits(i, tt.arity())]; });
}

RuleNumber::RuleNumber(BigUint value, int arity) : value_(std::move(value)), arity_(arity) {
    TruthTable::check_arity(arity);
    if (value_ < 0) throw std::out_of_range("rule number must be non-negative");
    if (value_ != 0 && boost::multiprecision::msb(value_) >= (1U << arity))
        throw std::out_of_range("rule number must be below 2^(2^" + std::to_string(arity) + ")");
}

RuleNumber RuleNumber::parse(std::string_view decimal, int arity) {
    if (decimal.empty()) throw std::invalid_argument("empty rule number");
    for (char c : decimal) {
        if (c < '0' || c > '9') throw std::invalid_argument("rule number must be decimal digits");
    }
    return RuleNumber(BigUint(std::string(decimal)), arity);
}

std::string RuleNumber::to_string() const { return value_.str(); }

TruthTable decode_rule_number(const RuleNumber& rn, BitOrder order) {
    const std::size_t n = std::size_t{1} << rn.arity();
    std::vector<std::uint8_t> out(n);
    for (std::size_t i = 0; i < n; ++i)
        out[i] = boost::multiprecision::bit_test(rn.value(), static_cast<unsigned>(i)) ? 1 : 0;
    TruthTable tt(rn.arity(), std::move(out));
    return order == BitOrder::msb_first ? tt : reverse_inputs(tt);
}

RuleNumber encode_rule_number(const TruthTable& tt, BitOrder order) {
    const TruthTable t = order == BitOrder::msb_first ? tt : reverse_inputs(tt);
    BigUint value = 0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (t[i]) boost::multiprecision::bit_set(value, static_cast<unsigned>(i));
    }
    return RuleNumber(std::move(value), t.arity());
}

TruthTable gol_truth_table() {
    return TruthTable::from_function(9, [](std::size_t i) {
        const bool center = (i >> 4) & 1U;
        const int neighbors = std::popcount(i) - (center ? 1 : 0);
        return center ? (neighbors == 2 || neighbors == 3) : neighbors == 3;
    });
}

// ---------------------------------------------------------------------------
// Lattice

Lattice::Lattice(int dimension, std::size_t rows, std::size_t cols)
    : dimension_(dimension), rows_(rows), cols_(cols), words_per_row_((cols + 63) / 64) {
    if (rows == 0 || cols == 0) throw std::invalid_argument("lattice dimensions must be positive");
    words_.assign(rows_ * words_per_row_, 0);
}

Lattice Lattice::line(std::size_t length) { return Lattice(1, 1, length); }

Lattice Lattice::grid(std::size_t rows, std::size_t cols) { return Lattice(2, rows, cols); }

Lattice Lattice::from_text(std::string_view text, std::size_t rows, std::size_t cols) {
    std::vector<std::string> lines;
    std::string current;
    for (char c : text) {
        if (c == '\n') {
            lines.push_back(current);
            current.clear();
        } else if (c != '\r') {
            current.push_back(c);
        }
    }
    if (!current.empty()) lines.push_back(current);
    while (!lines.empty() && lines.back().find_first_not_of(" \t") == std::string::npos) lines.pop_back();
    if (lines.empty()) throw std::invalid_argument("empty pattern");

    std::size_t width = 0;
    for (auto& l : lines) width = std::max(width, l.size());
    const std::size_t r = std::max(rows, lines.size());
    const std::size_t c = std::max(cols, width);
    Lattice lat = grid(r, c);
    const std::size_t r0 = (r - lines.size()) / 2;
    const std::size_t c0 = (c - width) / 2;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        for (std::size_t j = 0; j < lines[i].size(); ++j) {
            const char ch = lines[i][j];
            if (ch == '1' || ch == '*' || ch == 'o' || ch == 'O') {
                lat.set(r0 + i, c0 + j, true);
            } else if (ch != '0' && ch != '.' && ch != ' ' && ch != 'b') {
                throw std::invalid_argument(std::string("unexpected pattern character '") + ch + "'");
            }
        }
    }
    return lat;
}

std::size_t Lattice::wrap_row(std::ptrdiff_t row) const {
    const auto n = static_cast<std::ptrdiff_t>(rows_);
    return static_cast<std::size_t>(((row % n) + n) % n);
}

std::size_t Lattice::wrap_col(std::ptrdiff_t col) const {
    const auto n = static_cast<std::ptrdiff_t>(cols_);
    return static_cast<std::size_t>(((col % n) + n) % n);
}

bool Lattice::at(std::ptrdiff_t row, std::ptrdiff_t col) const { return get(wrap_row(row), wrap_col(col)); }

std::size_t Lattice::population() const {
    std::size_t n = 0;
    for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
    return n;
}

Lattice Lattice::shifted(std::ptrdiff_t drow, std::ptrdiff_t dcol) const {
    Lattice out(dimension_, rows_, cols_);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) {
            if (get(r, c))
                out.set(wrap_row(static_cast<std::ptrdiff_t>(r) + drow),
                        wrap_col(static_cast<std::ptrdiff_t>(c) + dcol), true);
        }
    }
    return out;
}

std::string Lattice::to_text() const {
    std::ostringstream os;
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) os << (get(r, c) ? '1' : '0');
        os << '\n';
    }
    return os.str();
}

Lattice MField::states() const {
    Lattice out = dimension_ == 1 ? Lattice::line(cols_) : Lattice::grid(rows_, cols_);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) out.set(r, c, get(r, c).state() == 1);
    }
    return out;
}

}  // namespace cabm
