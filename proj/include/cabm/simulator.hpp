#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "cabm/core.hpp"

namespace cabm {

/// Synchronous update on the torus. 1D lattices take arity-3 rules, 2D
/// lattices Moore (arity-9) rules.
Lattice step(const Lattice& c, const TruthTable& tt);

/// Same as step; additionally adds the number of cells that saw each
/// neighborhood index to `histogram` (size 2^arity).
Lattice step_counting(const Lattice& c, const TruthTable& tt, std::span<std::uint64_t> histogram);

/// Cell-by-cell reference implementation.
Lattice step_reference(const Lattice& c, const TruthTable& tt);

/// D = G(C, f) given the rule's M-coded truth table.
MField m_field(const Lattice& c, std::span<const MCode> mtable);
MField m_field(const Lattice& c, const TruthTable& tt);

struct EvolutionHistory {
    std::vector<Lattice> frames;   // C^0..C^T
    std::vector<MField> mfields;   // D^1..D^T when requested
};

EvolutionHistory evolve(const Lattice& c0, const TruthTable& tt, std::size_t steps, bool with_mfields = false);

/// Row-major matrix of values in [0, 1].
struct GrayImage {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> values;

    double at(std::size_t r, std::size_t c) const { return values[r * cols + c]; }
};

/// Row t holds the column means of frame C^t.
GrayImage averaged_spacetime(const EvolutionHistory& h);

/// 1D histories stacked into a 2D picture, time downward.
Lattice spacetime(const EvolutionHistory& h);
MField mfield_spacetime(const EvolutionHistory& h);

struct Rgb {
    std::uint8_t r, g, b;
};

Rgb m_color(MCode m);

/// Binary P6 images. Lattice: 0 white, 1 black. Gray: 0 black, 1 white.
std::string encode_ppm(const Lattice& lattice);
std::string encode_ppm(const MField& field);
std::string encode_ppm(const GrayImage& image);

void write_file(const std::string& path, const std::string& bytes);

/// Lattice with each cell set independently with probability `density`,
/// drawn in row-major order.
Lattice random_lattice(int dimension, std::size_t rows, std::size_t cols, double density, std::uint64_t seed);

}  // namespace cabm
