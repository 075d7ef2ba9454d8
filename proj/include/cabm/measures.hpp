#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "cabm/boolmin.hpp"
#include "cabm/core.hpp"
#include "cabm/heval.hpp"

namespace cabm {

/// Behavior percentages in the order (stability, decrease, growth, chaoticity).
struct BehaviorVector {
    double stability = 0;
    double decrease = 0;
    double growth = 0;
    double chaoticity = 0;

    std::array<double, 4> values() const { return {stability, decrease, growth, chaoticity}; }
    static BehaviorVector from_values(const std::array<double, 4>& v) { return {v[0], v[1], v[2], v[3]}; }

    /// counts indexed by Behavior
    static BehaviorVector from_counts(const std::array<std::uint64_t, 4>& counts);

    double sum() const { return stability + decrease + growth + chaoticity; }

    friend bool operator==(const BehaviorVector&, const BehaviorVector&) = default;
};

/// A rule together with everything derived from its minimal form.
struct RuleProfile {
    TruthTable table;
    BoolExpr expr;
    bool exact = true;
    std::vector<MCode> mtable;
};

RuleProfile profile_rule(const TruthTable& tt, const CoverOptions& options = {},
                         const HTables& tables = HTables::standard());

BehaviorVector static_measure(const RuleProfile& profile);
BehaviorVector static_measure(const TruthTable& tt, const CoverOptions& options = {});

enum class SamplingProtocol {
    accumulate,  // every frame 1..k_i
    snapshot,    // frame k_i only
};

struct DynamicParams {
    std::size_t runs = 30;
    /// 0 means the default: 100x100 for Moore rules, 1x200 for elementary ones.
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::size_t max_steps = 100;
    double density = 0.5;
    std::uint64_t seed = 1;
    SamplingProtocol protocol = SamplingProtocol::accumulate;
    /// 0 = hardware concurrency
    unsigned threads = 0;

    /// Throws std::invalid_argument on an unusable configuration.
    void validate() const;
    /// Lattice shape used for a rule of the given arity.
    std::pair<std::size_t, std::size_t> shape(int arity) const;
};

BehaviorVector dynamic_measure(const RuleProfile& profile, const DynamicParams& params);
BehaviorVector dynamic_measure(const TruthTable& tt, const DynamicParams& params,
                               const CoverOptions& options = {});

using FeatureVector = std::array<double, 8>;

/// (chaoticity, decrease, growth, stability) of me, then of md.
FeatureVector feature_vector(const BehaviorVector& me, const BehaviorVector& md);

double distance(std::span<const double> a, std::span<const double> b);

/// Pearson correlation. Throws std::domain_error when either side is constant.
double correlation(std::span<const double> a, std::span<const double> b);
double correlation(const BehaviorVector& me, const BehaviorVector& md);

}  // namespace cabm
