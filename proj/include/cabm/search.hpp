#pragma once

#include <bitset>
#include <cstdint>
#include <functional>
#include <limits>
#include <utility>
#include <vector>

#include "cabm/boolmin.hpp"
#include "cabm/measures.hpp"
#include "cabm/rng.hpp"

namespace cabm {

/// Bit i is the rule output for Moore neighborhood i.
using Chromosome = std::bitset<512>;

TruthTable to_truth_table(const Chromosome& c);
Chromosome to_chromosome(const TruthTable& tt);
std::uint64_t chromosome_hash(const Chromosome& c);
bool chromosome_less(const Chromosome& a, const Chromosome& b);

/// Feature vector of the Game of Life as published:
/// static (67.96, 4.68, 27.34, 0), dynamic (13.38, 75.23, 11.37, 0).
FeatureVector gol_target();

struct GAConfig {
    std::size_t population = 20;
    std::size_t generations = 5000;
    double mutation = 0.01;
    std::size_t elitism = 2;
    std::size_t tournament = 3;
    std::size_t keep = 1000;
    std::uint64_t seed = 1;
    DynamicParams dynamic = [] {
        DynamicParams d;
        d.runs = 10;
        return d;
    }();
    FeatureVector target = gol_target();
    CoverOptions search_cover{CoverMode::greedy, 0};
    /// Used to re-report the kept entries at the end of the run.
    CoverOptions report_cover{};
    unsigned threads = 0;

    void validate() const;
};

inline constexpr double worst_fitness = std::numeric_limits<double>::infinity();

struct Individual {
    Chromosome chromosome;
    BehaviorVector me;
    BehaviorVector md;
    double fitness = worst_fitness;
    /// stability = 0 in both measures
    bool feasible = false;
    bool exact = false;
    CoverMode cover_mode = CoverMode::greedy;
    std::size_t generation_found = 0;
    std::uint64_t dynamic_seed = 0;
};

std::vector<Chromosome> random_population(const GAConfig& cfg, Rng& rng);

/// Seed of the dynamic measure for this chromosome within a run.
std::uint64_t individual_seed(const GAConfig& cfg, const Chromosome& c);

Individual evaluate(const Chromosome& c, const GAConfig& cfg, const CoverOptions& cover);
inline Individual evaluate(const Chromosome& c, const GAConfig& cfg) { return evaluate(c, cfg, cfg.search_cover); }

/// Children exchange suffixes starting at bit `point` (1..511).
std::pair<Chromosome, Chromosome> one_point_crossover(const Chromosome& a, const Chromosome& b, std::size_t point);
std::pair<Chromosome, Chromosome> one_point_crossover(const Chromosome& a, const Chromosome& b, Rng& rng);

Chromosome mutate(Chromosome c, double p, Rng& rng);

struct GAResult {
    /// Feasible archive entries, best first, at most cfg.keep.
    std::vector<Individual> catalog;
    /// Best fitness of each generation's population.
    std::vector<double> best_history;
    std::size_t distinct_evaluated = 0;
};

using GAProgress = std::function<void(std::size_t generation, double best)>;

GAResult run_ga(const GAConfig& cfg, const GAProgress& progress = {});

}  // namespace cabm
