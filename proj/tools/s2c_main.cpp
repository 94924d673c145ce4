// s2c: SPARQL-to-Cypher translation and verification front end.

#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "s2c/cli.hpp"

namespace {

void add_common(CLI::App* cmd, s2c::cli::Config& cfg) {
    cmd->add_option("--prefixes", cfg.prefixes_path,
                    "prefix file: one `prefix iri` pair per line");
    std::map<std::string, s2c::MixedPredicatePolicy> policies{
        {"error", s2c::MixedPredicatePolicy::Error},
        {"edge", s2c::MixedPredicatePolicy::ForceEdge},
        {"property", s2c::MixedPredicatePolicy::ForceProperty}};
    cmd->add_option("--mixed-predicate", cfg.mixed,
                    "predicates with both literal and resource objects: "
                    "error|edge|property")
        ->transform(CLI::CheckedTransformer(policies, CLI::ignore_case));
}

std::vector<std::string> expand_query_args(const std::vector<std::string>& args) {
    std::vector<std::string> out;
    for (const auto& a : args) {
        if (std::filesystem::is_directory(a)) {
            std::vector<std::string> found;
            for (const auto& entry : std::filesystem::directory_iterator(a)) {
                if (entry.path().extension() == ".rq") {
                    found.push_back(entry.path().string());
                }
            }
            std::sort(found.begin(), found.end());
            out.insert(out.end(), found.begin(), found.end());
        } else {
            out.push_back(a);
        }
    }
    return out;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"SPARQL-to-Cypher translator with a semantics-preservation oracle"};
    app.require_subcommand(1);

    s2c::cli::Config cfg;
    std::vector<std::string> queries;
    std::string dataset;
    std::string catalog_out;

    CLI::App* translate =
        app.add_subcommand("translate", "translate SPARQL files to Cypher");
    translate->add_option("queries", queries, "query files (.rq) or directories")
        ->required();
    translate->add_option("--catalog", cfg.catalog_path, "schema catalog JSON");
    translate->add_option("--dataset", cfg.dataset_path,
                          "derive the catalog from this N-Triples file");
    translate->add_flag("--pretty", cfg.pretty, "clause-per-line output");
    translate->add_flag("--timing", cfg.timing, "report per-query translation time");
    translate->add_option("--golden", cfg.golden_dir,
                          "compare output against <dir>/<stem>.cypher");
    translate->add_option("-o,--output", cfg.output_dir,
                          "write <stem>.cypher files into this directory");
    add_common(translate, cfg);

    CLI::App* catalog = app.add_subcommand("catalog", "derive a schema catalog");
    catalog->add_option("dataset", dataset, "N-Triples file")->required();
    catalog->add_option("-o,--output", catalog_out, "catalog output path");
    add_common(catalog, cfg);

    CLI::App* verify = app.add_subcommand("verify", "check translation equivalence");
    verify->add_option("queries", queries, "query files (.rq) or directories")
        ->required();
    verify->add_option("--dataset", cfg.dataset_path, "N-Triples file")->required();
    verify->add_option("--catalog", cfg.catalog_path,
                       "explicit catalog (otherwise derived from the dataset)");
    verify->add_option("--max-depth", cfg.max_depth,
                       "variable-length path expansion bound");
    verify->add_option("--node-bound", cfg.node_bound,
                       "refuse datasets mapping to more nodes than this");
    verify
        ->add_flag("--corrupt-translation", cfg.corrupt_translation,
                   "negative control: verify against a corrupted translation")
        ->group("");  // hidden
    add_common(verify, cfg);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*translate) {
            return s2c::cli::cmd_translate(expand_query_args(queries), cfg, std::cout,
                                           std::cerr);
        }
        if (*catalog) {
            return s2c::cli::cmd_catalog(dataset, catalog_out, cfg, std::cout,
                                         std::cerr);
        }
        if (*verify) {
            std::string ds = cfg.dataset_path;
            s2c::cli::Config vcfg = cfg;
            vcfg.dataset_path.clear();  // the dataset is passed explicitly
            return s2c::cli::cmd_verify(expand_query_args(queries), ds, vcfg, std::cout,
                                        std::cerr);
        }
    } catch (const s2c::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return e.kind() == s2c::Error::Kind::Io ? s2c::cli::kExitIo
                                                : s2c::cli::kExitTranslation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return s2c::cli::kExitIo;
    }
    return s2c::cli::kExitOk;
}
