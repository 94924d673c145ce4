#pragma once

#include <chrono>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "s2c/equivalence.hpp"
#include "s2c/s2c.hpp"

namespace s2c::cli {

// Exit code contract: 0 success, 1 I/O, 2 translation/validation failure,
// 3 verification mismatch.
inline constexpr int kExitOk = 0;
inline constexpr int kExitIo = 1;
inline constexpr int kExitTranslation = 2;
inline constexpr int kExitVerification = 3;

struct Config {
    std::string catalog_path;   // explicit catalog ...
    std::string dataset_path;   // ... or derive from a dataset (exactly one)
    std::string prefixes_path;
    MixedPredicatePolicy mixed = MixedPredicatePolicy::Error;
    bool pretty = false;
    bool timing = false;
    std::string golden_dir;
    std::string output_dir;
    uint32_t max_depth = 15;
    size_t node_bound = 10000;
    bool corrupt_translation = false;  // verification negative-control hook
};

namespace detail {

inline std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline PrefixMap config_prefixes(const Config& cfg) {
    if (cfg.prefixes_path.empty()) return {};
    return parse_prefix_file(slurp(cfg.prefixes_path));
}

inline SchemaCatalog resolve_catalog(const Config& cfg, const PrefixMap& prefixes,
                                     RdfGraph* dataset_out = nullptr) {
    if (!cfg.catalog_path.empty() && !cfg.dataset_path.empty()) {
        throw validation_error("specify either --catalog or --dataset, not both");
    }
    if (!cfg.catalog_path.empty()) return load_catalog(cfg.catalog_path);
    if (!cfg.dataset_path.empty()) {
        RdfGraph g = parse_ntriples(slurp(cfg.dataset_path), prefixes);
        SchemaCatalog cat = derive_catalog(g, cfg.mixed);
        if (dataset_out) *dataset_out = std::move(g);
        return cat;
    }
    throw validation_error("a catalog source is required (--catalog or --dataset)");
}

inline std::string normalize_ws(const std::string& s) {
    std::string out;
    bool in_space = true;
    for (char c : s) {
        if (std::isspace(static_cast<unsigned char>(c))) {
            if (!in_space) out.push_back(' ');
            in_space = true;
        } else {
            out.push_back(c);
            in_space = false;
        }
    }
    while (!out.empty() && out.back() == ' ') out.pop_back();
    return out;
}

inline std::string stem_of(const std::string& path) {
    return std::filesystem::path(path).stem().string();
}

} // namespace detail

/// `s2c translate`: one rendered Cypher statement per input query.
inline int cmd_translate(const std::vector<std::string>& query_files, const Config& cfg,
                         std::ostream& out, std::ostream& err) {
    if (query_files.empty()) {
        err << "translate: no query files given\n";
        return kExitTranslation;
    }
    PrefixMap prefixes;
    SchemaCatalog cat;
    try {
        prefixes = detail::config_prefixes(cfg);
        cat = detail::resolve_catalog(cfg, prefixes);
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return e.kind() == Error::Kind::Io ? kExitIo : kExitTranslation;
    }

    int rc = kExitOk;
    for (const auto& file : query_files) {
        try {
            std::string text = detail::slurp(file);
            auto t0 = std::chrono::steady_clock::now();
            SparqlQuery q = parse_sparql(text);
            q.prefixes.merge(prefixes);
            CypherQuery c = translate(q, cat);
            std::string rendered = render(c, cfg.pretty);
            auto t1 = std::chrono::steady_clock::now();
            double ms = std::chrono::duration<double, std::milli>(t1 - t0).count();

            if (!cfg.golden_dir.empty()) {
                std::string expected_path =
                    cfg.golden_dir + "/" + detail::stem_of(file) + ".cypher";
                std::string expected = detail::slurp(expected_path);
                if (detail::normalize_ws(rendered) != detail::normalize_ws(expected)) {
                    err << file << ": differs from golden " << expected_path << '\n'
                        << "  got:      " << detail::normalize_ws(rendered) << '\n'
                        << "  expected: " << detail::normalize_ws(expected) << '\n';
                    rc = std::max(rc, kExitTranslation);
                    continue;
                }
                out << file << ": matches golden\n";
            } else if (!cfg.output_dir.empty()) {
                std::filesystem::create_directories(cfg.output_dir);
                std::string out_path =
                    cfg.output_dir + "/" + detail::stem_of(file) + ".cypher";
                std::ofstream f(out_path);
                if (!f) throw io_error("cannot write " + out_path);
                f << rendered << '\n';
            } else {
                out << rendered << '\n';
            }
            if (cfg.timing) {
                err << file << ": translated in " << ms << " ms\n";
            }
        } catch (const Error& e) {
            err << file << ": " << e.what() << '\n';
            rc = std::max(rc, e.kind() == Error::Kind::Io ? kExitIo : kExitTranslation);
        }
    }
    return rc;
}

/// `s2c catalog`: derive the relationship-type / property-key partition of a
/// dataset and write it as JSON.
inline int cmd_catalog(const std::string& dataset, const std::string& out_path,
                       const Config& cfg, std::ostream& out, std::ostream& err) {
    try {
        PrefixMap prefixes = detail::config_prefixes(cfg);
        RdfGraph g = parse_ntriples(detail::slurp(dataset), prefixes);
        SchemaCatalog cat = derive_catalog(g, cfg.mixed);
        if (!out_path.empty()) {
            save_catalog(cat, out_path);
        } else {
            out << catalog_to_json(cat);
        }
        out << "|T| = " << cat.relationship_types.size()
            << "  |P| = " << cat.property_keys.size() << '\n';
        return kExitOk;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return e.kind() == Error::Kind::Io ? kExitIo : kExitTranslation;
    }
}

/// `s2c verify`: run the three-way equivalence oracle for every query over a
/// dataset; per-query PASS/FAIL plus a machine-readable summary line.
inline int cmd_verify(const std::vector<std::string>& query_files,
                      const std::string& dataset, const Config& cfg, std::ostream& out,
                      std::ostream& err) {
    RdfGraph g;
    SchemaCatalog cat;
    try {
        PrefixMap prefixes = detail::config_prefixes(cfg);
        g = parse_ntriples(detail::slurp(dataset), prefixes);
        if (!cfg.catalog_path.empty()) {
            cat = load_catalog(cfg.catalog_path);
        } else {
            cat = derive_catalog(g, cfg.mixed);
        }
        PropertyGraph pg = rdf_to_pg(g, cat);
        if (pg.nodes.size() > cfg.node_bound) {
            err << "verify: dataset maps to " << pg.nodes.size()
                << " nodes, above the oracle bound of " << cfg.node_bound
                << "; use --max-depth/--node-bound or a smaller sample\n";
            return kExitTranslation;
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return e.kind() == Error::Kind::Io ? kExitIo : kExitTranslation;
    }

    EquivalenceOptions opts;
    opts.exec.max_path_depth = cfg.max_depth;
    opts.eval.max_path_depth = cfg.max_depth;
    opts.corrupt_translation = cfg.corrupt_translation;

    size_t passed = 0;
    double total_ms = 0;
    std::vector<double> latencies;
    for (const auto& file : query_files) {
        EquivalenceReport report;
        report.name = detail::stem_of(file);
        try {
            SparqlQuery q = parse_sparql(detail::slurp(file));
            report = check_equivalence(q, g, cat, opts);
            report.name = detail::stem_of(file);
        } catch (const Error& e) {
            report.pass = false;
            report.error = e.what();
        }
        out << format_report(report);
        passed += report.pass;
        total_ms += report.translate_ms;
        latencies.push_back(report.translate_ms);
    }

    nlohmann::json summary;
    summary["queries"] = query_files.size();
    summary["passed"] = passed;
    summary["failed"] = query_files.size() - passed;
    summary["total_translate_ms"] = total_ms;
    if (!latencies.empty()) {
        std::sort(latencies.begin(), latencies.end());
        summary["median_translate_ms"] = latencies[latencies.size() / 2];
    }
    out << "SUMMARY " << summary.dump() << '\n';
    return passed == query_files.size() ? kExitOk : kExitVerification;
}

} // namespace s2c::cli
