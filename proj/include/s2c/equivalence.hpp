#pragma once

#include <algorithm>
#include <chrono>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "s2c/cypher_exec.hpp"
#include "s2c/cypher_render.hpp"
#include "s2c/interpret.hpp"
#include "s2c/property_graph.hpp"
#include "s2c/sparql_algebra.hpp"
#include "s2c/sparql_eval.hpp"
#include "s2c/translator.hpp"

namespace s2c {

/// Canonical text form of one solution mapping, for multiset comparison and
/// report diffs.
inline std::string canonical_solution(const Mapping& mu) {
    std::string out;
    for (const auto& [var, term] : mu) {
        out += var;
        out.push_back('=');
        out += value_ops::encode(Value::from_term(term));
        out.push_back(' ');
    }
    if (out.empty()) out = "{}";
    return out;
}

inline std::vector<std::string> canonical_multiset(const MappingSet& s) {
    std::vector<std::string> out;
    out.reserve(s.rows.size());
    for (const auto& mu : s.rows) out.push_back(canonical_solution(mu));
    std::sort(out.begin(), out.end());
    return out;
}

/// Multiset difference a \ b (with multiplicity).
inline std::vector<std::string> multiset_minus(const std::vector<std::string>& a,
                                               const std::vector<std::string>& b) {
    std::vector<std::string> out;
    std::map<std::string, int> counts;
    for (const auto& x : b) counts[x]++;
    for (const auto& x : a) {
        auto it = counts.find(x);
        if (it != counts.end() && it->second > 0) {
            --it->second;
        } else {
            out.push_back(x);
        }
    }
    return out;
}

struct EquivalenceOptions {
    ExecOptions exec;
    EvalOptions eval;
    bool corrupt_translation = false;  // negative-control hook
};

struct EquivalenceReport {
    std::string name;
    bool pass = false;
    std::string error;        // non-empty when a stage failed outright
    std::string cypher;       // rendered translation
    double translate_ms = 0;
    size_t card_mapping = 0;  // |A|: mapping semantics
    size_t card_exec = 0;     // |B|: exec ∘ translate, interpreted back
    size_t card_algebra = 0;  // |C|: graph-relational SPARQL semantics
    std::vector<std::string> missing_exec, extra_exec;      // B vs A
    std::vector<std::string> missing_algebra, extra_algebra;  // C vs A
};

namespace detail {

/// Negative-control corruption: invert the first relationship direction, or
/// drop a label when the pattern has no relationships, so verification has a
/// known-bad translation to catch.
inline void corrupt(CypherQuery& q) {
    for (auto& mc : q.match_clauses) {
        for (auto& p : mc.patterns) {
            if (!p.tail.empty()) {
                auto& rel = p.tail.front().first;
                rel.direction = rel.direction == RelationshipPattern::Dir::Out
                                    ? RelationshipPattern::Dir::In
                                    : RelationshipPattern::Dir::Out;
                return;
            }
        }
    }
    for (auto& mc : q.match_clauses) {
        for (auto& p : mc.patterns) {
            if (!p.head.labels.empty()) {
                p.head.labels.pop_back();
                return;
            }
        }
    }
    // no pattern structure to perturb: force an unsatisfiable filter
    q.where = CypherExpr::cmp(CompareOp::Eq, CypherExpr::constant(Value::number(0)),
                              CypherExpr::constant(Value::number(1)));
}

} // namespace detail

/// Runs all three semantics of one query and certifies multiset equality:
///   A = mapping semantics of the SPARQL query,
///   B = execution of the translated query over the mapped property graph,
///       interpreted back into term space,
///   C = the graph-relational SPARQL semantics plus modifiers, interpreted.
inline EquivalenceReport check_equivalence(const SparqlQuery& qs, const RdfGraph& gs,
                                           const SchemaCatalog& cat,
                                           const EquivalenceOptions& opts = {}) {
    EquivalenceReport report;
    try {
        MappingSet a = eval_mapping(qs, gs, cat, opts.eval);

        auto t0 = std::chrono::steady_clock::now();
        CypherQuery qc = translate(qs, cat);
        auto t1 = std::chrono::steady_clock::now();
        report.translate_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
        if (opts.corrupt_translation) detail::corrupt(qc);
        report.cypher = render(qc);

        PropertyGraph pg = rdf_to_pg(gs, cat);
        GraphRelation exec_rel = exec(qc, pg, opts.exec);
        MappingSet b = zeta(xi(exec_rel, pg, qs.prefixes));

        GraphRelation algebra_rel = eval_algebra(*qs.pattern, gs, cat, qs.prefixes, opts.eval);
        MappingSet c = zeta(apply_modifiers_relation(algebra_rel, qs.modifiers));

        auto ca = canonical_multiset(a);
        auto cb = canonical_multiset(b);
        auto cc = canonical_multiset(c);
        report.card_mapping = ca.size();
        report.card_exec = cb.size();
        report.card_algebra = cc.size();
        report.missing_exec = multiset_minus(ca, cb);
        report.extra_exec = multiset_minus(cb, ca);
        report.missing_algebra = multiset_minus(ca, cc);
        report.extra_algebra = multiset_minus(cc, ca);
        report.pass = report.missing_exec.empty() && report.extra_exec.empty() &&
                      report.missing_algebra.empty() && report.extra_algebra.empty();
    } catch (const Error& e) {
        report.error = e.what();
        report.pass = false;
    }
    return report;
}

/// Plain-text rendering of one report (the per-query section of the
/// verification output).
inline std::string format_report(const EquivalenceReport& r, bool with_diff = true) {
    std::ostringstream os;
    os << (r.pass ? "PASS" : "FAIL") << ' ' << r.name << " |mapping|=" << r.card_mapping
       << " |exec|=" << r.card_exec << " |algebra|=" << r.card_algebra << " translate="
       << r.translate_ms << "ms";
    if (!r.error.empty()) os << " error: " << r.error;
    os << '\n';
    if (with_diff && !r.pass && r.error.empty()) {
        auto dump = [&](const char* tag, const std::vector<std::string>& xs) {
            for (const auto& x : xs) os << "  " << tag << ' ' << x << '\n';
        };
        dump("missing-from-exec", r.missing_exec);
        dump("extra-in-exec", r.extra_exec);
        dump("missing-from-algebra", r.missing_algebra);
        dump("extra-in-algebra", r.extra_algebra);
    }
    return os.str();
}

} // namespace s2c
