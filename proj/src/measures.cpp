#include "cabm/measures.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "cabm/rng.hpp"
#include "cabm/simulator.hpp"

namespace cabm {

BehaviorVector BehaviorVector::from_counts(const std::array<std::uint64_t, 4>& counts) {
    const std::uint64_t total = counts[0] + counts[1] + counts[2] + counts[3];
    if (total == 0) throw std::invalid_argument("no samples");
    std::array<double, 4> v{};
    for (std::size_t i = 0; i < 4; ++i) v[i] = 100.0 * static_cast<double>(counts[i]) / static_cast<double>(total);
    return from_values(v);
}

RuleProfile profile_rule(const TruthTable& tt, const CoverOptions& options, const HTables& tables) {
    RuleProfile p;
    p.table = tt;
    auto m = minimize_detailed(tt, options);
    p.expr = std::move(m.expr);
    p.exact = m.exact;
    p.mtable = m_truth_table(p.expr, tt.arity(), tables);
    return p;
}

BehaviorVector static_measure(const RuleProfile& profile) {
    std::array<std::uint64_t, 4> counts{};
    for (auto m : profile.mtable) ++counts[static_cast<std::size_t>(m.behavior())];
    return BehaviorVector::from_counts(counts);
}

BehaviorVector static_measure(const TruthTable& tt, const CoverOptions& options) {
    return static_measure(profile_rule(tt, options));
}

void DynamicParams::validate() const {
    if (runs < 1) throw std::invalid_argument("runs must be >= 1");
    if (max_steps < 1) throw std::invalid_argument("max steps must be >= 1");
    if (!(density >= 0.0 && density <= 1.0)) throw std::invalid_argument("density must be in [0, 1]");
    if ((rows == 0) != (cols == 0)) throw std::invalid_argument("give both lattice dimensions or neither");
}

std::pair<std::size_t, std::size_t> DynamicParams::shape(int arity) const {
    if (arity == 3) {
        if (rows > 1) throw std::invalid_argument("elementary rules run on a single row");
        return {1, cols ? cols : 200};
    }
    if (arity == 9) return {rows ? rows : 100, cols ? cols : 100};
    throw std::invalid_argument("dynamic measure needs arity 3 or 9");
}

namespace {

BehaviorVector single_run(const RuleProfile& profile, const DynamicParams& params, std::size_t run) {
    const int arity = profile.table.arity();
    const auto [rows, cols] = params.shape(arity);
    Rng rng(derive_seed(params.seed, run));
    const auto k = 1 + uniform_below(rng, params.max_steps);
    Lattice c = random_lattice(arity == 3 ? 1 : 2, rows, cols, params.density, rng());

    std::vector<std::uint64_t> hist(profile.table.size(), 0);
    for (std::uint64_t t = 0; t < k; ++t) {
        // frame t+1's M codes come from the neighborhoods of frame t
        if (params.protocol == SamplingProtocol::snapshot && t + 1 < k) {
            c = step(c, profile.table);
        } else {
            c = step_counting(c, profile.table, hist);
        }
    }
    std::array<std::uint64_t, 4> counts{};
    for (std::size_t i = 0; i < hist.size(); ++i)
        counts[static_cast<std::size_t>(profile.mtable[i].behavior())] += hist[i];
    return BehaviorVector::from_counts(counts);
}

}  // namespace

BehaviorVector dynamic_measure(const RuleProfile& profile, const DynamicParams& params) {
    params.validate();
    params.shape(profile.table.arity());

    std::vector<BehaviorVector> per_run(params.runs);
    unsigned workers = params.threads ? params.threads : std::max(1U, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, params.runs));

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto work = [&] {
        try {
            for (std::size_t i = next++; i < params.runs; i = next++) per_run[i] = single_run(profile, params, i);
        } catch (...) {
            std::lock_guard lock(failure_mutex);
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

    std::array<double, 4> mean{};
    for (const auto& v : per_run) {
        const auto vals = v.values();
        for (std::size_t i = 0; i < 4; ++i) mean[i] += vals[i];
    }
    for (auto& m : mean) m /= static_cast<double>(params.runs);
    return BehaviorVector::from_values(mean);
}

BehaviorVector dynamic_measure(const TruthTable& tt, const DynamicParams& params, const CoverOptions& options) {
    return dynamic_measure(profile_rule(tt, options), params);
}

FeatureVector feature_vector(const BehaviorVector& me, const BehaviorVector& md) {
    return {me.chaoticity, me.decrease, me.growth, me.stability,
            md.chaoticity, md.decrease, md.growth, md.stability};
}

double distance(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw std::invalid_argument("vectors differ in length");
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
    return std::sqrt(s);
}

double correlation(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size() || a.empty()) throw std::invalid_argument("vectors differ in length");
    const double n = static_cast<double>(a.size());
    double ma = 0, mb = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        ma += a[i];
        mb += b[i];
    }
    ma /= n;
    mb /= n;
    double sab = 0, saa = 0, sbb = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        sab += (a[i] - ma) * (b[i] - mb);
        saa += (a[i] - ma) * (a[i] - ma);
        sbb += (b[i] - mb) * (b[i] - mb);
    }
    if (saa == 0 || sbb == 0) throw std::domain_error("correlation undefined for a constant vector");
    return sab / std::sqrt(saa * sbb);
}

double correlation(const BehaviorVector& me, const BehaviorVector& md) {
    const auto a = me.values();
    const auto b = md.values();
    return correlation(a, b);
}

}  // namespace cabm
