#include "cabm/simulator.hpp"

#include <fstream>
#include <stdexcept>

#include "cabm/heval.hpp"
#include "cabm/rng.hpp"

namespace cabm {

namespace {

void check_shape(const Lattice& c, int arity) {
    if (c.dimension() == 1 && arity == 3) return;
    if (c.dimension() == 2 && arity == 9) return;
    throw std::invalid_argument("rule of arity " + std::to_string(arity) + " does not fit a " +
                                std::to_string(c.dimension()) + "D lattice");
}

inline unsigned bit_at(const std::uint64_t* row, std::size_t col) {
    return static_cast<unsigned>((row[col >> 6] >> (col & 63)) & 1U);
}

// Calls visit(row, col, index) for every cell. Each of the three rows keeps
// a sliding 3-bit window (left neighbor most significant).
template <typename Visit>
void scan(const Lattice& c, Visit&& visit) {
    const std::size_t rows = c.rows();
    const std::size_t cols = c.cols();
    const auto right_of = [cols](std::size_t col) { return col + 1 == cols ? 0 : col + 1; };
    const auto window0 = [&](const std::uint64_t* w) {
        return (bit_at(w, cols - 1) << 2) | (bit_at(w, 0) << 1) | bit_at(w, right_of(0));
    };

    if (c.dimension() == 1) {
        const std::uint64_t* w = c.row_words(0).data();
        unsigned win = window0(w);
        for (std::size_t col = 0; col < cols; ++col) {
            visit(std::size_t{0}, col, win);
            win = ((win << 1) & 7U) | bit_at(w, right_of(right_of(col)));
        }
        return;
    }

    for (std::size_t r = 0; r < rows; ++r) {
        const std::uint64_t* up = c.row_words(r == 0 ? rows - 1 : r - 1).data();
        const std::uint64_t* mid = c.row_words(r).data();
        const std::uint64_t* down = c.row_words(r + 1 == rows ? 0 : r + 1).data();
        unsigned wu = window0(up), wm = window0(mid), wd = window0(down);
        for (std::size_t col = 0; col < cols; ++col) {
            visit(r, col, (wu << 6) | (wm << 3) | wd);
            const std::size_t next = right_of(right_of(col));
            wu = ((wu << 1) & 7U) | bit_at(up, next);
            wm = ((wm << 1) & 7U) | bit_at(mid, next);
            wd = ((wd << 1) & 7U) | bit_at(down, next);
        }
    }
}

Lattice empty_like(const Lattice& c) {
    return c.dimension() == 1 ? Lattice::line(c.cols()) : Lattice::grid(c.rows(), c.cols());
}

}  // namespace

Lattice step(const Lattice& c, const TruthTable& tt) {
    check_shape(c, tt.arity());
    Lattice out = empty_like(c);
    const auto table = tt.outputs();
    scan(c, [&](std::size_t r, std::size_t col, unsigned idx) {
        if (table[idx]) out.row_words(r)[col >> 6] |= std::uint64_t{1} << (col & 63);
    });
    return out;
}

Lattice step_counting(const Lattice& c, const TruthTable& tt, std::span<std::uint64_t> histogram) {
    check_shape(c, tt.arity());
    if (histogram.size() != tt.size()) throw std::invalid_argument("histogram size must be 2^arity");
    Lattice out = empty_like(c);
    const auto table = tt.outputs();
    scan(c, [&](std::size_t r, std::size_t col, unsigned idx) {
        ++histogram[idx];
        if (table[idx]) out.row_words(r)[col >> 6] |= std::uint64_t{1} << (col & 63);
    });
    return out;
}

Lattice step_reference(const Lattice& c, const TruthTable& tt) {
    check_shape(c, tt.arity());
    Lattice out = empty_like(c);
    std::vector<std::uint8_t> cells;
    for (std::size_t r = 0; r < c.rows(); ++r) {
        for (std::size_t col = 0; col < c.cols(); ++col) {
            cells.clear();
            const auto row = static_cast<std::ptrdiff_t>(r);
            const auto cc = static_cast<std::ptrdiff_t>(col);
            if (c.dimension() == 1) {
                for (std::ptrdiff_t d = -1; d <= 1; ++d) cells.push_back(c.at(0, cc + d));
            } else {
                for (std::ptrdiff_t dr = -1; dr <= 1; ++dr)
                    for (std::ptrdiff_t dc = -1; dc <= 1; ++dc) cells.push_back(c.at(row + dr, cc + dc));
            }
            out.set(r, col, tt[neighborhood_index(cells, tt.arity())]);
        }
    }
    return out;
}

MField m_field(const Lattice& c, std::span<const MCode> mtable) {
    const int arity = mtable.size() == 8 ? 3 : mtable.size() == 512 ? 9 : 0;
    if (arity == 0) throw std::invalid_argument("M table must have 8 or 512 entries");
    check_shape(c, arity);
    MField out(c.dimension(), c.rows(), c.cols());
    scan(c, [&](std::size_t r, std::size_t col, unsigned idx) { out.set(r, col, mtable[idx]); });
    return out;
}

MField m_field(const Lattice& c, const TruthTable& tt) {
    const auto mt = m_truth_table(tt);
    return m_field(c, mt);
}

EvolutionHistory evolve(const Lattice& c0, const TruthTable& tt, std::size_t steps, bool with_mfields) {
    check_shape(c0, tt.arity());
    EvolutionHistory h;
    h.frames.reserve(steps + 1);
    h.frames.push_back(c0);
    std::vector<MCode> mt;
    if (with_mfields) mt = m_truth_table(tt);
    for (std::size_t t = 0; t < steps; ++t) {
        const Lattice& cur = h.frames.back();
        if (with_mfields) h.mfields.push_back(m_field(cur, mt));
        Lattice next = step(cur, tt);
        h.frames.push_back(std::move(next));
    }
    return h;
}

GrayImage averaged_spacetime(const EvolutionHistory& h) {
    if (h.frames.empty()) throw std::invalid_argument("empty history");
    if (h.frames.front().dimension() != 2)
        throw std::invalid_argument("averaged spacetime needs a 2D history; use the raw spacetime for 1D");
    GrayImage img;
    img.rows = h.frames.size();
    img.cols = h.frames.front().cols();
    img.values.assign(img.rows * img.cols, 0.0);
    for (std::size_t t = 0; t < h.frames.size(); ++t) {
        const Lattice& f = h.frames[t];
        for (std::size_t col = 0; col < f.cols(); ++col) {
            std::size_t live = 0;
            for (std::size_t r = 0; r < f.rows(); ++r) live += f.get(r, col);
            img.values[t * img.cols + col] = static_cast<double>(live) / static_cast<double>(f.rows());
        }
    }
    return img;
}

Lattice spacetime(const EvolutionHistory& h) {
    if (h.frames.empty() || h.frames.front().dimension() != 1)
        throw std::invalid_argument("spacetime needs a non-empty 1D history");
    Lattice out = Lattice::grid(h.frames.size(), h.frames.front().cols());
    for (std::size_t t = 0; t < h.frames.size(); ++t) {
        for (std::size_t col = 0; col < out.cols(); ++col) out.set(t, col, h.frames[t].get(0, col));
    }
    return out;
}

MField mfield_spacetime(const EvolutionHistory& h) {
    if (h.mfields.empty() || h.mfields.front().dimension() != 1)
        throw std::invalid_argument("M spacetime needs 1D M fields");
    MField out(2, h.mfields.size(), h.mfields.front().cols());
    for (std::size_t t = 0; t < h.mfields.size(); ++t) {
        for (std::size_t col = 0; col < out.cols(); ++col) out.set(t, col, h.mfields[t].get(0, col));
    }
    return out;
}

Rgb m_color(MCode m) {
    static constexpr Rgb palette[6] = {
        {255, 255, 255}, {255, 255, 0}, {0, 255, 0}, {255, 0, 0}, {0, 0, 255}, {0, 0, 0},
    };
    return palette[m.value()];
}

namespace {

std::string ppm_header(std::size_t rows, std::size_t cols) {
    return "P6\n" + std::to_string(cols) + " " + std::to_string(rows) + "\n255\n";
}

void put(std::string& s, Rgb c) {
    s.push_back(static_cast<char>(c.r));
    s.push_back(static_cast<char>(c.g));
    s.push_back(static_cast<char>(c.b));
}

}  // namespace

std::string encode_ppm(const Lattice& lattice) {
    std::string s = ppm_header(lattice.rows(), lattice.cols());
    for (std::size_t r = 0; r < lattice.rows(); ++r)
        for (std::size_t c = 0; c < lattice.cols(); ++c)
            put(s, lattice.get(r, c) ? Rgb{0, 0, 0} : Rgb{255, 255, 255});
    return s;
}

std::string encode_ppm(const MField& field) {
    std::string s = ppm_header(field.rows(), field.cols());
    for (auto m : field.codes()) put(s, m_color(m));
    return s;
}

std::string encode_ppm(const GrayImage& image) {
    std::string s = ppm_header(image.rows, image.cols);
    for (double v : image.values) {
        const double clamped = v < 0 ? 0 : v > 1 ? 1 : v;
        const auto g = static_cast<std::uint8_t>(clamped * 255.0 + 0.5);
        put(s, {g, g, g});
    }
    return s;
}

void write_file(const std::string& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw std::runtime_error("write failed: " + path);
}

Lattice random_lattice(int dimension, std::size_t rows, std::size_t cols, double density, std::uint64_t seed) {
    if (dimension == 1 && rows != 1) throw std::invalid_argument("1D lattices have a single row");
    if (dimension != 1 && dimension != 2) throw std::invalid_argument("dimension must be 1 or 2");
    Lattice out = dimension == 1 ? Lattice::line(cols) : Lattice::grid(rows, cols);
    Rng rng(seed);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c)
            if (bernoulli(rng, density)) out.set(r, c, true);
    return out;
}

}  // namespace cabm
