#include "cabm/io.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace cabm {

namespace {

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

}  // namespace

TruthTable parse_rule_spec(std::string_view text, BitOrder order) {
    const std::string spec = trim(text);
    if (spec == "gol") return gol_truth_table();
    const auto colon = spec.find(':');
    if (colon == std::string::npos)
        throw std::invalid_argument("rule spec '" + spec + "' must be elem:<n>, moore2d:<n>, table:<path> or gol");
    const std::string kind = spec.substr(0, colon);
    const std::string arg = spec.substr(colon + 1);

    if (kind == "elem") {
        const auto rn = RuleNumber::parse(arg, 3);
        return elementary_rule(rn.value().convert_to<unsigned>());
    }
    if (kind == "moore2d") return decode_rule_number(RuleNumber::parse(arg, 9), order);
    if (kind == "table") {
        std::ifstream in(arg);
        if (!in) throw std::invalid_argument("cannot read table file " + arg);
        std::string line;
        std::getline(in, line);
        std::string rest;
        while (std::getline(in, rest)) {
            if (!trim(rest).empty()) throw std::invalid_argument("table file must hold a single line");
        }
        line = trim(line);
        if (line.size() != 8 && line.size() != 512)
            throw std::invalid_argument("table file needs 8 or 512 characters, got " + std::to_string(line.size()));
        return TruthTable::from_bits(line);
    }
    throw std::invalid_argument("unknown rule spec kind '" + kind + "'");
}

BitOrder parse_bit_order(std::string_view text) {
    if (text == "msb") return BitOrder::msb_first;
    if (text == "lsb") return BitOrder::lsb_first;
    throw std::invalid_argument("bit order must be msb or lsb");
}

std::string_view to_string(BitOrder order) { return order == BitOrder::msb_first ? "msb" : "lsb"; }

CoverMode parse_cover_mode(std::string_view text) {
    if (text == "exact") return CoverMode::exact;
    if (text == "greedy") return CoverMode::greedy;
    if (text == "auto") return CoverMode::automatic;
    throw std::invalid_argument("cover mode must be exact, greedy or auto");
}

std::string_view to_string(CoverMode mode) {
    switch (mode) {
        case CoverMode::exact: return "exact";
        case CoverMode::greedy: return "greedy";
        case CoverMode::automatic: return "auto";
    }
    return "?";
}

nlohmann::ordered_json to_json(const BehaviorVector& v) {
    return nlohmann::ordered_json::array({v.stability, v.decrease, v.growth, v.chaoticity});
}

BehaviorVector behavior_from_json(const nlohmann::ordered_json& j) {
    if (!j.is_array() || j.size() != 4) throw std::invalid_argument("behavior vector needs 4 numbers");
    std::array<double, 4> v{};
    for (std::size_t i = 0; i < 4; ++i) v[i] = j.at(i).get<double>();
    const auto bv = BehaviorVector::from_values(v);
    if (std::abs(bv.sum() - 100.0) > 1e-6) throw std::invalid_argument("behavior vector must sum to 100");
    return bv;
}

nlohmann::ordered_json to_json(const CatalogRecord& r) {
    nlohmann::ordered_json j;
    j["rule"] = r.rule;
    j["arity"] = r.arity;
    j["bit_order"] = r.bit_order;
    j["me"] = to_json(r.me);
    j["md"] = r.md ? to_json(*r.md) : nlohmann::ordered_json(nullptr);
    j["fitness"] = r.fitness ? nlohmann::ordered_json(*r.fitness) : nlohmann::ordered_json(nullptr);
    j["correlation"] = r.correlation ? nlohmann::ordered_json(*r.correlation) : nlohmann::ordered_json(nullptr);
    j["generation_found"] =
        r.generation_found ? nlohmann::ordered_json(*r.generation_found) : nlohmann::ordered_json(nullptr);
    j["cover_mode"] = r.cover_mode;
    j["exact"] = r.exact;
    j["seed"] = r.seed ? nlohmann::ordered_json(*r.seed) : nlohmann::ordered_json(nullptr);
    return j;
}

CatalogRecord record_from_json(const nlohmann::ordered_json& j) {
    CatalogRecord r;
    r.rule = j.at("rule").get<std::string>();
    r.arity = j.value("arity", 9);
    r.bit_order = j.value("bit_order", std::string("msb"));
    // validates the number against the arity
    RuleNumber::parse(r.rule, r.arity);
    parse_bit_order(r.bit_order);
    r.me = behavior_from_json(j.at("me"));
    if (j.contains("md") && !j["md"].is_null()) r.md = behavior_from_json(j["md"]);
    if (j.contains("fitness") && !j["fitness"].is_null()) r.fitness = j["fitness"].get<double>();
    if (j.contains("correlation") && !j["correlation"].is_null()) r.correlation = j["correlation"].get<double>();
    if (j.contains("generation_found") && !j["generation_found"].is_null())
        r.generation_found = j["generation_found"].get<std::size_t>();
    r.cover_mode = j.value("cover_mode", std::string("auto"));
    parse_cover_mode(r.cover_mode);
    r.exact = j.value("exact", true);
    if (j.contains("seed") && !j["seed"].is_null()) r.seed = j["seed"].get<std::uint64_t>();
    return r;
}

CatalogRecord to_record(const Individual& ind, std::uint64_t run_seed) {
    CatalogRecord r;
    r.rule = encode_rule_number(to_truth_table(ind.chromosome)).to_string();
    r.arity = 9;
    r.me = ind.me;
    r.md = ind.md;
    if (ind.feasible) r.fitness = ind.fitness;
    try {
        r.correlation = correlation(ind.me, ind.md);
    } catch (const std::domain_error&) {
    }
    r.generation_found = ind.generation_found;
    r.cover_mode = std::string(to_string(ind.cover_mode));
    r.exact = ind.exact;
    r.seed = run_seed;
    return r;
}

void write_catalog(std::ostream& out, const std::vector<CatalogRecord>& records) {
    for (const auto& r : records) out << to_json(r).dump() << '\n';
}

std::vector<CatalogRecord> read_catalog(std::istream& in) {
    std::vector<CatalogRecord> out;
    std::string line;
    std::size_t n = 0;
    while (std::getline(in, line)) {
        ++n;
        if (trim(line).empty()) continue;
        try {
            out.push_back(record_from_json(nlohmann::ordered_json::parse(line)));
        } catch (const std::exception& e) {
            throw std::invalid_argument("catalog line " + std::to_string(n) + ": " + e.what());
        }
    }
    return out;
}

ImportResult import_published_rules(std::istream& in, const ImportOptions& options) {
    ImportResult result;
    std::string line;
    std::size_t n = 0;
    while (std::getline(in, line)) {
        ++n;
        const std::string text = trim(line);
        if (text.empty() || text[0] == '#') continue;
        try {
            const auto rn = RuleNumber::parse(text, 9);
            const auto tt = decode_rule_number(rn, options.bit_order);
            const auto profile = profile_rule(tt, options.cover);
            CatalogRecord r;
            r.rule = rn.to_string();
            r.bit_order = std::string(to_string(options.bit_order));
            r.me = static_measure(profile);
            r.cover_mode = std::string(to_string(options.cover.mode));
            r.exact = profile.exact;
            if (options.with_dynamic) {
                r.md = dynamic_measure(profile, options.dynamic);
                r.fitness = distance(feature_vector(r.me, *r.md), options.target);
                r.seed = options.dynamic.seed;
                try {
                    r.correlation = correlation(r.me, *r.md);
                } catch (const std::domain_error&) {
                }
            }
            result.records.push_back(std::move(r));
        } catch (const std::exception& e) {
            result.diagnostics.push_back({n, e.what()});
        }
    }
    return result;
}

ImportResult import_published_rules(const std::string& path, const ImportOptions& options) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path);
    return import_published_rules(in, options);
}

}  // namespace cabm
