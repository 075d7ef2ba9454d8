#include "cabm/cli.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "cabm/heval.hpp"
#include "cabm/io.hpp"
#include "cabm/measures.hpp"
#include "cabm/search.hpp"
#include "cabm/simulator.hpp"

namespace cabm::cli {

namespace {

using json = nlohmann::ordered_json;

constexpr std::uint64_t default_seed = 1;

struct RuleArgs {
    std::string spec;
    std::string bit_order = "msb";
    std::string cover_mode = "auto";

    void add_to(CLI::App* app, bool positional = true) {
        if (positional) app->add_option("rule", spec, "elem:<n> | moore2d:<n> | table:<path> | gol")->required();
        app->add_option("--bit-order", bit_order, "significance of Moore rule-number inputs")
            ->check(CLI::IsMember({"msb", "lsb"}));
        app->add_option("--cover-mode", cover_mode, "cover search of the minimizer")
            ->check(CLI::IsMember({"exact", "greedy", "auto"}));
    }
    BitOrder order() const { return parse_bit_order(bit_order); }
    CoverOptions cover() const { return {parse_cover_mode(cover_mode), CoverOptions{}.work_budget}; }
};

struct DynamicArgs {
    std::size_t runs = 30;
    std::string size;
    std::size_t steps = 100;
    double density = 0.5;
    std::optional<std::uint64_t> seed;
    std::string protocol = "accumulate";
    unsigned threads = 0;

    void add_to(CLI::App* app, std::size_t default_runs) {
        runs = default_runs;
        app->add_option("--runs", runs, "sampling runs")->capture_default_str();
        app->add_option("--size", size, "lattice size RxC (2D) or N (1D)");
        app->add_option("--steps", steps, "largest sampled step K")->capture_default_str();
        app->add_option("--density", density, "initial density")->capture_default_str();
        app->add_option("--seed", seed, "RNG seed (default 1)");
        app->add_option("--protocol", protocol, "accumulate frames 1..k or snapshot at k")
            ->check(CLI::IsMember({"accumulate", "snapshot"}));
        app->add_option("--threads", threads, "worker threads, 0 = all cores");
    }

    DynamicParams params(std::ostream& err) const {
        DynamicParams p;
        p.runs = runs;
        p.max_steps = steps;
        p.density = density;
        p.seed = seed.value_or(default_seed);
        if (!seed) err << "seed: " << default_seed << " (default)\n";
        p.protocol = protocol == "snapshot" ? SamplingProtocol::snapshot : SamplingProtocol::accumulate;
        p.threads = threads;
        if (!size.empty()) {
            const auto x = size.find('x');
            try {
                if (x == std::string::npos) {
                    p.rows = 1;
                    p.cols = std::stoull(size);
                } else {
                    p.rows = std::stoull(size.substr(0, x));
                    p.cols = std::stoull(size.substr(x + 1));
                }
            } catch (const std::logic_error&) {
                throw std::invalid_argument("size must be RxC or N");
            }
            if (p.rows == 0 || p.cols == 0) throw std::invalid_argument("size must be positive");
        }
        p.validate();
        return p;
    }
};

json params_json(const DynamicParams& p, int arity) {
    const auto [rows, cols] = p.shape(arity);
    json j;
    j["runs"] = p.runs;
    j["rows"] = rows;
    j["cols"] = cols;
    j["steps"] = p.max_steps;
    j["density"] = p.density;
    j["seed"] = p.seed;
    j["protocol"] = p.protocol == SamplingProtocol::snapshot ? "snapshot" : "accumulate";
    return j;
}

json vector_json(const BehaviorVector& v) {
    json j;
    j["stability"] = v.stability;
    j["decrease"] = v.decrease;
    j["growth"] = v.growth;
    j["chaoticity"] = v.chaoticity;
    return j;
}

json correlation_json(const BehaviorVector& a, const BehaviorVector& b) {
    try {
        return correlation(a, b);
    } catch (const std::domain_error&) {
        return nullptr;
    }
}

json rule_json(const RuleArgs& args, const RuleProfile& profile) {
    json j;
    j["rule"] = encode_rule_number(profile.table, args.order()).to_string();
    j["arity"] = profile.table.arity();
    if (profile.table.arity() == 9) j["bit_order"] = args.bit_order;
    j["expr"] = to_string(profile.expr, profile.table.arity());
    j["cover_mode"] = args.cover_mode;
    j["exact"] = profile.exact;
    return j;
}

RuleProfile load(const RuleArgs& args) { return profile_rule(parse_rule_spec(args.spec, args.order()), args.cover()); }

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Behavioral metrics and genetic search for binary cellular automata", "ca"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all");

    // analyze
    auto* analyze = app.add_subcommand("analyze", "minimal expression and M-coded truth table");
    RuleArgs analyze_rule;
    analyze_rule.add_to(analyze);
    bool emit_expr = false;
    bool emit_mtable = false;
    analyze->add_flag("--emit-expr", emit_expr, "print the minimized expression");
    analyze->add_flag("--emit-mtable", emit_mtable, "print index and M code per neighborhood");

    // static
    auto* static_cmd = app.add_subcommand("static", "static behavior measure");
    RuleArgs static_rule;
    static_rule.add_to(static_cmd);

    // dynamic
    auto* dynamic_cmd = app.add_subcommand("dynamic", "dynamic behavior measure");
    RuleArgs dynamic_rule;
    dynamic_rule.add_to(dynamic_cmd);
    DynamicArgs dynamic_args;
    dynamic_args.add_to(dynamic_cmd, 30);

    // distance
    auto* distance_cmd = app.add_subcommand("distance", "feature distance between two rules");
    RuleArgs distance_rule;
    std::string other_spec;
    distance_cmd->add_option("rule", distance_rule.spec, "first rule")->required();
    distance_cmd->add_option("other", other_spec, "second rule")->required();
    distance_rule.add_to(distance_cmd, false);
    DynamicArgs distance_args;
    distance_args.add_to(distance_cmd, 30);

    // simulate
    auto* simulate = app.add_subcommand("simulate", "evolve a lattice and write PPM images");
    RuleArgs sim_rule;
    sim_rule.add_to(simulate);
    std::string sim_size;
    std::size_t sim_steps = 100;
    std::optional<std::uint64_t> sim_seed;
    double sim_density = 0.5;
    std::string seed_pattern;
    std::string out_dir = ".";
    bool sim_frames = false;
    bool sim_mfields = false;
    simulate->add_option("--size", sim_size, "RxC (2D) or N (1D)");
    simulate->add_option("--steps", sim_steps, "number of steps")->capture_default_str();
    simulate->add_option("--seed", sim_seed, "RNG seed of the random initial lattice (default 1)");
    simulate->add_option("--density", sim_density, "initial density")->capture_default_str();
    simulate->add_option("--seed-pattern", seed_pattern, "text file with a 0/1 grid placed at the center");
    simulate->add_option("--out", out_dir, "output directory")->capture_default_str();
    simulate->add_flag("--frames", sim_frames, "write every frame as frame-<t>.ppm");
    simulate->add_flag("--mfields", sim_mfields, "write M fields as mfield-<t>.ppm");

    // search
    auto* search = app.add_subcommand("search", "genetic search for rules close to a target");
    GAConfig ga;
    std::optional<std::uint64_t> ga_seed;
    std::string ga_out;
    std::string ga_target;
    std::size_t ga_steps = ga.dynamic.max_steps;
    std::string ga_size;
    std::string ga_report_mode = "auto";
    bool ga_quiet = false;
    search->add_option("--pop", ga.population, "population size")->capture_default_str();
    search->add_option("--gens", ga.generations, "generations")->capture_default_str();
    search->add_option("--mutation", ga.mutation, "per-bit mutation probability")->capture_default_str();
    search->add_option("--runs", ga.dynamic.runs, "dynamic sampling runs per rule")->capture_default_str();
    search->add_option("--steps", ga_steps, "largest sampled step K")->capture_default_str();
    search->add_option("--size", ga_size, "lattice RxC");
    search->add_option("--seed", ga_seed, "RNG seed (default 1)");
    search->add_option("--keep", ga.keep, "catalog length")->capture_default_str();
    search->add_option("--elitism", ga.elitism, "elite count")->capture_default_str();
    search->add_option("--tournament", ga.tournament, "tournament size")->capture_default_str();
    search->add_option("--threads", ga.threads, "worker threads, 0 = all cores");
    search->add_option("--out", ga_out, "catalog path (JSON lines); stdout when omitted");
    search->add_option("--target", ga_target, "JSON file with the 8-value target feature vector");
    search->add_option("--report-cover-mode", ga_report_mode, "cover mode used to re-report kept rules")
        ->check(CLI::IsMember({"exact", "greedy", "auto"}));
    search->add_flag("--quiet", ga_quiet, "no per-generation progress on stderr");

    // validate-h
    auto* validate = app.add_subcommand("validate-h", "check the operator tables against the calibration rules");

    // import
    auto* import_cmd = app.add_subcommand("import", "measures for a file of Moore rule numbers");
    std::string import_path;
    std::string import_out;
    bool import_dynamic = false;
    RuleArgs import_rule;
    import_cmd->add_option("path", import_path, "one decimal rule number per line")->required();
    import_rule.add_to(import_cmd, false);
    import_cmd->add_flag("--dynamic", import_dynamic, "also compute the dynamic measure");
    DynamicArgs import_args;
    import_args.add_to(import_cmd, 30);
    import_cmd->add_option("--out", import_out, "catalog path; stdout when omitted");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        if (analyze->parsed()) {
            const auto profile = load(analyze_rule);
            if (emit_expr || emit_mtable) {
                if (emit_expr) out << to_string(profile.expr, profile.table.arity()) << '\n';
                if (emit_mtable)
                    for (std::size_t i = 0; i < profile.mtable.size(); ++i)
                        out << i << ' ' << profile.mtable[i].value() << '\n';
            } else {
                json j = rule_json(analyze_rule, profile);
                json mt = json::array();
                for (auto m : profile.mtable) mt.push_back(m.value());
                j["mtable"] = mt;
                j["me"] = vector_json(static_measure(profile));
                out << j.dump(2) << '\n';
            }
            return 0;
        }
        if (static_cmd->parsed()) {
            const auto profile = load(static_rule);
            json j = rule_json(static_rule, profile);
            j["me"] = vector_json(static_measure(profile));
            out << j.dump(2) << '\n';
            return 0;
        }
        if (dynamic_cmd->parsed()) {
            const auto profile = load(dynamic_rule);
            const auto params = dynamic_args.params(err);
            const auto me = static_measure(profile);
            const auto md = dynamic_measure(profile, params);
            json j = rule_json(dynamic_rule, profile);
            j["params"] = params_json(params, profile.table.arity());
            j["me"] = vector_json(me);
            j["md"] = vector_json(md);
            j["correlation"] = correlation_json(me, md);
            out << j.dump(2) << '\n';
            return 0;
        }
        if (distance_cmd->parsed()) {
            RuleArgs second = distance_rule;
            second.spec = other_spec;
            const auto params = distance_args.params(err);
            json j;
            j["params"] = nullptr;
            FeatureVector fv[2];
            json rules = json::array();
            for (int k = 0; k < 2; ++k) {
                const RuleArgs& ra = k == 0 ? distance_rule : second;
                const auto profile = load(ra);
                const auto me = static_measure(profile);
                const auto md = dynamic_measure(profile, params);
                fv[k] = feature_vector(me, md);
                json r = rule_json(ra, profile);
                r["me"] = vector_json(me);
                r["md"] = vector_json(md);
                r["correlation"] = correlation_json(me, md);
                r["features"] = fv[k];
                rules.push_back(r);
                if (k == 0) j["params"] = params_json(params, profile.table.arity());
            }
            j["rules"] = rules;
            j["distance"] = distance(fv[0], fv[1]);
            out << j.dump(2) << '\n';
            return 0;
        }
        if (simulate->parsed()) {
            const auto tt = parse_rule_spec(sim_rule.spec, sim_rule.order());
            const int dim = tt.arity() == 3 ? 1 : 2;
            std::size_t rows = dim == 1 ? 1 : 100;
            std::size_t cols = dim == 1 ? 200 : 100;
            if (!sim_size.empty()) {
                DynamicArgs tmp;
                tmp.size = sim_size;
                tmp.seed = 0;
                std::ostringstream sink;
                const auto p = tmp.params(sink);
                rows = p.rows;
                cols = p.cols;
                if (dim == 1 && rows != 1) throw std::invalid_argument("elementary rules take a 1D size N");
            }
            const std::uint64_t seed = sim_seed.value_or(default_seed);
            Lattice c0 = Lattice::line(1);
            if (!seed_pattern.empty()) {
                if (dim != 2) throw std::invalid_argument("seed patterns are 2D");
                std::ifstream in(seed_pattern);
                if (!in) throw std::invalid_argument("cannot read " + seed_pattern);
                std::stringstream ss;
                ss << in.rdbuf();
                c0 = Lattice::from_text(ss.str(), rows, cols);
            } else {
                if (!sim_seed) err << "seed: " << default_seed << " (default)\n";
                c0 = random_lattice(dim, rows, cols, sim_density, seed);
            }
            const auto h = evolve(c0, tt, sim_steps, sim_mfields);
            std::filesystem::create_directories(out_dir);
            const std::filesystem::path dir(out_dir);
            json files = json::array();
            auto emit = [&](const std::string& name, const std::string& bytes) {
                write_file((dir / name).string(), bytes);
                files.push_back(name);
            };
            if (dim == 1) {
                emit("spacetime.ppm", encode_ppm(spacetime(h)));
                if (sim_mfields) emit("mspacetime.ppm", encode_ppm(mfield_spacetime(h)));
            } else {
                emit("spacetime.ppm", encode_ppm(averaged_spacetime(h)));
                emit("final.ppm", encode_ppm(h.frames.back()));
                char name[32];
                if (sim_frames)
                    for (std::size_t t = 0; t < h.frames.size(); ++t) {
                        std::snprintf(name, sizeof name, "frame-%04zu.ppm", t);
                        emit(name, encode_ppm(h.frames[t]));
                    }
                if (sim_mfields)
                    for (std::size_t t = 0; t < h.mfields.size(); ++t) {
                        std::snprintf(name, sizeof name, "mfield-%04zu.ppm", t + 1);
                        emit(name, encode_ppm(h.mfields[t]));
                    }
            }
            json pop = json::array();
            for (const auto& f : h.frames) pop.push_back(f.population());
            json j;
            j["rule"] = encode_rule_number(tt, sim_rule.order()).to_string();
            j["rows"] = rows;
            j["cols"] = cols;
            j["steps"] = sim_steps;
            j["seed"] = seed_pattern.empty() ? json(seed) : json(nullptr);
            j["seed_pattern"] = seed_pattern.empty() ? json(nullptr) : json(seed_pattern);
            j["population"] = pop;
            j["files"] = files;
            out << j.dump(2) << '\n';
            return 0;
        }
        if (search->parsed()) {
            ga.seed = ga_seed.value_or(default_seed);
            if (!ga_seed) err << "seed: " << default_seed << " (default)\n";
            ga.dynamic.max_steps = ga_steps;
            if (!ga_size.empty()) {
                DynamicArgs tmp;
                tmp.size = ga_size;
                tmp.seed = 0;
                std::ostringstream sink;
                const auto p = tmp.params(sink);
                ga.dynamic.rows = p.rows;
                ga.dynamic.cols = p.cols;
            }
            ga.report_cover.mode = parse_cover_mode(ga_report_mode);
            if (!ga_target.empty()) {
                std::ifstream in(ga_target);
                if (!in) throw std::invalid_argument("cannot read " + ga_target);
                auto t = json::parse(in);
                if (t.is_object()) t = t.at("target");
                if (!t.is_array() || t.size() != 8) throw std::invalid_argument("target must hold 8 numbers");
                for (std::size_t i = 0; i < 8; ++i) ga.target[i] = t[i].get<double>();
            }
            GAProgress progress;
            if (!ga_quiet) progress = [&](std::size_t g, double best) { err << "generation " << g << " best " << best << '\n'; };
            const auto result = run_ga(ga, progress);
            std::vector<CatalogRecord> records;
            for (const auto& ind : result.catalog) records.push_back(to_record(ind, ga.seed));
            if (ga_out.empty()) {
                write_catalog(out, records);
            } else {
                std::ofstream f(ga_out);
                if (!f) throw std::runtime_error("cannot write " + ga_out);
                write_catalog(f, records);
                json j;
                j["out"] = ga_out;
                j["seed"] = ga.seed;
                j["distinct_evaluated"] = result.distinct_evaluated;
                j["catalog_size"] = records.size();
                j["best_history"] = result.best_history;
                out << j.dump() << '\n';
            }
            return 0;
        }
        if (validate->parsed()) {
            const auto report = validate_h();
            for (const auto& item : report.items)
                out << (item.passed ? "PASS  " : "FAIL  ") << item.name << "  (" << item.detail << ")\n";
            return report.all_passed() ? 0 : 1;
        }
        if (import_cmd->parsed()) {
            ImportOptions opts;
            opts.bit_order = import_rule.order();
            opts.cover = import_rule.cover();
            opts.with_dynamic = import_dynamic;
            if (import_dynamic) opts.dynamic = import_args.params(err);
            const auto result = import_published_rules(import_path, opts);
            for (const auto& d : result.diagnostics) err << import_path << ":" << d.line << ": " << d.message << '\n';
            if (import_out.empty()) {
                write_catalog(out, result.records);
            } else {
                std::ofstream f(import_out);
                if (!f) throw std::runtime_error("cannot write " + import_out);
                write_catalog(f, result.records);
            }
            return 0;
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}

}  // namespace cabm::cli
