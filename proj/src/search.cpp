#include "cabm/search.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <map>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace cabm {

namespace {

struct ChromosomeLess {
    bool operator()(const Chromosome& a, const Chromosome& b) const { return chromosome_less(a, b); }
};

// Runs f(i) for i in [0, n) on up to `threads` workers.
template <typename F>
void parallel_for(std::size_t n, unsigned threads, F&& f) {
    unsigned workers = threads ? threads : std::max(1U, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, n));
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex m;
    auto work = [&] {
        try {
            for (std::size_t i = next++; i < n; i = next++) f(i);
        } catch (...) {
            std::lock_guard lock(m);
            if (!failure) failure = std::current_exception();
        }
    };
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }
    if (failure) std::rethrow_exception(failure);
}

bool ranks_before(const Individual& a, const Individual& b) {
    if (a.fitness != b.fitness) return a.fitness < b.fitness;
    return chromosome_less(a.chromosome, b.chromosome);
}

}  // namespace

TruthTable to_truth_table(const Chromosome& c) {
    return TruthTable::from_function(9, [&](std::size_t i) { return c.test(i); });
}

Chromosome to_chromosome(const TruthTable& tt) {
    if (tt.arity() != 9) throw std::invalid_argument("chromosomes encode Moore rules (arity 9)");
    Chromosome c;
    for (std::size_t i = 0; i < tt.size(); ++i) c.set(i, tt[i]);
    return c;
}

std::uint64_t chromosome_hash(const Chromosome& c) {
    // FNV-1a over the bits packed into bytes, bit 0 first
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (std::size_t byte = 0; byte < 64; ++byte) {
        unsigned v = 0;
        for (unsigned b = 0; b < 8; ++b) v |= static_cast<unsigned>(c.test(byte * 8 + b)) << b;
        h = (h ^ v) * 0x100000001b3ULL;
    }
    return h;
}

bool chromosome_less(const Chromosome& a, const Chromosome& b) {
    // compare as numbers, bit 511 most significant
    for (std::size_t i = 512; i-- > 0;) {
        if (a.test(i) != b.test(i)) return b.test(i);
    }
    return false;
}

FeatureVector gol_target() { return {67.96, 4.68, 27.34, 0.0, 13.38, 75.23, 11.37, 0.0}; }

void GAConfig::validate() const {
    if (population < 2) throw std::invalid_argument("population must be >= 2");
    if (generations < 1) throw std::invalid_argument("generations must be >= 1");
    if (!(mutation >= 0.0 && mutation <= 1.0)) throw std::invalid_argument("mutation probability must be in [0, 1]");
    if (elitism > population) throw std::invalid_argument("elitism exceeds population");
    if (tournament < 1) throw std::invalid_argument("tournament size must be >= 1");
    dynamic.validate();
    dynamic.shape(9);
}

std::vector<Chromosome> random_population(const GAConfig& cfg, Rng& rng) {
    std::vector<Chromosome> pop(cfg.population);
    for (auto& c : pop) {
        for (std::size_t w = 0; w < 8; ++w) {
            const std::uint64_t bits = rng();
            for (std::size_t b = 0; b < 64; ++b) c.set(w * 64 + b, (bits >> b) & 1U);
        }
    }
    return pop;
}

std::uint64_t individual_seed(const GAConfig& cfg, const Chromosome& c) {
    return derive_seed(cfg.seed, chromosome_hash(c));
}

Individual evaluate(const Chromosome& c, const GAConfig& cfg, const CoverOptions& cover) {
    Individual ind;
    ind.chromosome = c;
    ind.cover_mode = cover.mode;
    const auto profile = profile_rule(to_truth_table(c), cover);
    ind.exact = profile.exact;
    ind.me = static_measure(profile);
    DynamicParams dp = cfg.dynamic;
    dp.seed = individual_seed(cfg, c);
    dp.threads = 1;
    ind.dynamic_seed = dp.seed;
    ind.md = dynamic_measure(profile, dp);
    ind.feasible = ind.me.stability == 0.0 && ind.md.stability == 0.0;
    ind.fitness = ind.feasible ? distance(feature_vector(ind.me, ind.md), cfg.target) : worst_fitness;
    return ind;
}

std::pair<Chromosome, Chromosome> one_point_crossover(const Chromosome& a, const Chromosome& b, std::size_t point) {
    if (point < 1 || point > 511) throw std::out_of_range("crossover point must be in [1, 511]");
    Chromosome low;
    for (std::size_t i = 0; i < point; ++i) low.set(i);
    const Chromosome high = ~low;
    return {(a & low) | (b & high), (b & low) | (a & high)};
}

std::pair<Chromosome, Chromosome> one_point_crossover(const Chromosome& a, const Chromosome& b, Rng& rng) {
    return one_point_crossover(a, b, 1 + uniform_below(rng, 511));
}

Chromosome mutate(Chromosome c, double p, Rng& rng) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("mutation probability must be in [0, 1]");
    if (p == 0.0) return c;
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (bernoulli(rng, p)) c.flip(i);
    }
    return c;
}

GAResult run_ga(const GAConfig& cfg, const GAProgress& progress) {
    cfg.validate();
    GAResult result;
    Rng rng(derive_seed(cfg.seed, 0x6761ULL));
    std::map<Chromosome, Individual, ChromosomeLess> archive;

    std::vector<Chromosome> pop = random_population(cfg, rng);
    for (std::size_t gen = 0; gen < cfg.generations; ++gen) {
        std::vector<Chromosome> fresh;
        for (const auto& c : pop) {
            if (!archive.count(c)) fresh.push_back(c);
        }
        std::sort(fresh.begin(), fresh.end(), chromosome_less);
        fresh.erase(std::unique(fresh.begin(), fresh.end()), fresh.end());
        std::vector<Individual> evaluated(fresh.size());
        parallel_for(fresh.size(), cfg.threads, [&](std::size_t i) { evaluated[i] = evaluate(fresh[i], cfg); });
        for (auto& ind : evaluated) {
            ind.generation_found = gen;
            archive.emplace(ind.chromosome, std::move(ind));
        }

        std::vector<const Individual*> ranked;
        for (const auto& c : pop) ranked.push_back(&archive.at(c));
        std::stable_sort(ranked.begin(), ranked.end(),
                         [](const Individual* a, const Individual* b) { return ranks_before(*a, *b); });
        result.best_history.push_back(ranked.front()->fitness);
        if (progress) progress(gen, ranked.front()->fitness);
        if (gen + 1 == cfg.generations) break;

        // tournament over ranks: the lowest drawn rank wins
        auto select = [&]() -> const Chromosome& {
            std::size_t best = ranked.size();
            for (std::size_t k = 0; k < cfg.tournament; ++k) best = std::min<std::size_t>(best, uniform_below(rng, ranked.size()));
            return ranked[best]->chromosome;
        };
        std::vector<Chromosome> next;
        for (std::size_t e = 0; e < cfg.elitism; ++e) next.push_back(ranked[e]->chromosome);
        while (next.size() < cfg.population) {
            const Chromosome& a = select();
            const Chromosome& b = select();
            auto [c1, c2] = one_point_crossover(a, b, rng);
            next.push_back(mutate(c1, cfg.mutation, rng));
            if (next.size() < cfg.population) next.push_back(mutate(c2, cfg.mutation, rng));
        }
        pop = std::move(next);
    }
    result.distinct_evaluated = archive.size();

    std::vector<Individual> all;
    for (auto& [c, ind] : archive) {
        if (ind.feasible) all.push_back(ind);
    }
    std::stable_sort(all.begin(), all.end(), ranks_before);
    if (all.size() > cfg.keep) all.resize(cfg.keep);

    // re-report the kept entries with the reporting cover mode
    if (cfg.report_cover.mode != cfg.search_cover.mode) {
        std::vector<Individual> reported(all.size());
        parallel_for(all.size(), cfg.threads, [&](std::size_t i) {
            reported[i] = evaluate(all[i].chromosome, cfg, cfg.report_cover);
            reported[i].generation_found = all[i].generation_found;
        });
        all.clear();
        for (auto& ind : reported) {
            if (ind.feasible) all.push_back(std::move(ind));
        }
        std::stable_sort(all.begin(), all.end(), ranks_before);
    }
    result.catalog = std::move(all);
    return result;
}

}  // namespace cabm
