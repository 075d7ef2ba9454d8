#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "cabm/core.hpp"
#include "cabm/measures.hpp"
#include "cabm/search.hpp"

namespace cabm {

/// `elem:<0..255>`, `moore2d:<decimal>`, `table:<path>` or `gol`.
/// `order` only affects moore2d numbers.
TruthTable parse_rule_spec(std::string_view text, BitOrder order = BitOrder::msb_first);

BitOrder parse_bit_order(std::string_view text);
std::string_view to_string(BitOrder order);
CoverMode parse_cover_mode(std::string_view text);
std::string_view to_string(CoverMode mode);

struct CatalogRecord {
    std::string rule;  // decimal
    int arity = 9;
    std::string bit_order = "msb";
    BehaviorVector me;
    std::optional<BehaviorVector> md;
    std::optional<double> fitness;
    std::optional<double> correlation;
    std::optional<std::size_t> generation_found;
    std::string cover_mode = "auto";
    bool exact = true;
    std::optional<std::uint64_t> seed;

    friend bool operator==(const CatalogRecord&, const CatalogRecord&) = default;
};

nlohmann::ordered_json to_json(const BehaviorVector& v);
BehaviorVector behavior_from_json(const nlohmann::ordered_json& j);

nlohmann::ordered_json to_json(const CatalogRecord& r);
CatalogRecord record_from_json(const nlohmann::ordered_json& j);

CatalogRecord to_record(const Individual& ind, std::uint64_t run_seed);

void write_catalog(std::ostream& out, const std::vector<CatalogRecord>& records);
/// Throws std::invalid_argument naming the offending line.
std::vector<CatalogRecord> read_catalog(std::istream& in);

struct ImportOptions {
    BitOrder bit_order = BitOrder::msb_first;
    bool with_dynamic = false;
    DynamicParams dynamic{};
    CoverOptions cover{};
    FeatureVector target = gol_target();
};

struct ImportDiagnostic {
    std::size_t line = 0;
    std::string message;
};

struct ImportResult {
    std::vector<CatalogRecord> records;
    std::vector<ImportDiagnostic> diagnostics;
};

/// One decimal Moore rule number per line; blank lines and lines starting
/// with '#' are skipped. Bad lines become diagnostics.
ImportResult import_published_rules(std::istream& in, const ImportOptions& options = {});
ImportResult import_published_rules(const std::string& path, const ImportOptions& options = {});

}  // namespace cabm
