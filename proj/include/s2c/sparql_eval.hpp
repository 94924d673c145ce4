#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "s2c/rdf_model.hpp"
#include "s2c/schema_catalog.hpp"
#include "s2c/solution_modifiers.hpp"
#include "s2c/sparql_ast.hpp"

namespace s2c {

/// A solution mapping μ: partial assignment of RDF terms to variables.
using Mapping = std::map<std::string, RdfTerm>;

/// Bag of solution mappings.
struct MappingSet {
    std::vector<Mapping> rows;

    size_t size() const { return rows.size(); }
};

struct EvalOptions {
    uint32_t max_path_depth = 15;  // parity with the Cypher-side bound
};

namespace detail {

inline bool mappings_compatible(const Mapping& a, const Mapping& b) {
    for (const auto& [var, term] : b) {
        auto it = a.find(var);
        if (it != a.end() && !(it->second == term)) return false;
    }
    return true;
}

inline Mapping merge_mappings(const Mapping& a, const Mapping& b) {
    Mapping out = a;
    for (const auto& [var, term] : b) out.emplace(var, term);
    return out;
}

inline bool unify(const TripleElement& e, const RdfTerm& t, Mapping& m) {
    if (e.is_var()) {
        auto it = m.find(e.lexical);
        if (it != m.end()) return it->second == t;
        m.emplace(e.lexical, t);
        return true;
    }
    return e.to_term() == t;
}

/// Resource terms of the graph: subjects plus resource objects of
/// relationship-type predicates — exactly the terms that become property
/// graph nodes, which fixes the domain of zero-length path endpoints.
inline std::vector<RdfTerm> resource_terms(const RdfGraph& g, const SchemaCatalog& cat) {
    std::vector<RdfTerm> out;
    std::set<std::pair<int, std::string>> seen;
    auto add = [&](const RdfTerm& t) {
        if (seen.emplace(static_cast<int>(t.kind), t.lexical).second) out.push_back(t);
    };
    for (const auto& t : g.triples) {
        add(t.subject);
        if (t.object.kind != TermKind::Literal && t.predicate.lexical != kRdfTypeIri &&
            cat.is_relationship(t.predicate.lexical)) {
            add(t.object);
        }
    }
    return out;
}

struct TermKey {
    int kind;
    std::string lexical;
    bool operator<(const TermKey& o) const {
        if (kind != o.kind) return kind < o.kind;
        return lexical < o.lexical;
    }
};

inline TermKey term_key(const RdfTerm& t) {
    return {static_cast<int>(t.kind), t.lexical};
}

/// Endpoint pairs of a property path over the RDF graph. Closure paths are
/// duplicate-free on endpoint pairs; fixed-length steps keep bag semantics;
/// sequences join through the intermediate with multiplicity.
inline std::vector<std::pair<RdfTerm, RdfTerm>> path_pairs(const PathExpr& path,
                                                           const RdfGraph& g,
                                                           const SchemaCatalog& cat,
                                                           const EvalOptions& opts) {
    using Kind = PathExpr::Kind;
    std::vector<std::pair<RdfTerm, RdfTerm>> out;
    switch (path.kind) {
        case Kind::Predicate:
            for (const auto& t : g.triples) {
                if (t.predicate.lexical == path.iri) out.emplace_back(t.subject, t.object);
            }
            return out;
        case Kind::Inverse:
            for (const auto& t : g.triples) {
                if (t.predicate.lexical == path.iri) out.emplace_back(t.object, t.subject);
            }
            return out;
        case Kind::ZeroOrMore:
        case Kind::OneOrMore:
        case Kind::ZeroOrOne: {
            std::map<TermKey, std::vector<RdfTerm>> edges;
            for (const auto& t : g.triples) {
                if (t.predicate.lexical == path.iri) {
                    edges[term_key(t.subject)].push_back(t.object);
                }
            }
            uint32_t max_len = 1;
            if (path.kind != Kind::ZeroOrOne) max_len = opts.max_path_depth;
            uint32_t min_len = path.kind == Kind::OneOrMore ? 1 : 0;
            for (const auto& start : resource_terms(g, cat)) {
                std::set<TermKey> reached;
                // breadth-first over distinct endpoints
                std::vector<RdfTerm> frontier = {start};
                std::set<TermKey> visited = {term_key(start)};
                if (min_len == 0) {
                    out.emplace_back(start, start);
                    reached.insert(term_key(start));
                }
                for (uint32_t depth = 1; depth <= max_len && !frontier.empty(); ++depth) {
                    std::vector<RdfTerm> next;
                    for (const auto& at : frontier) {
                        auto it = edges.find(term_key(at));
                        if (it == edges.end()) continue;
                        for (const auto& target : it->second) {
                            if (reached.insert(term_key(target)).second) {
                                out.emplace_back(start, target);
                            }
                            if (visited.insert(term_key(target)).second) {
                                next.push_back(target);
                            }
                        }
                    }
                    frontier = std::move(next);
                }
            }
            return out;
        }
        case Kind::Sequence: {
            auto left = path_pairs(*path.parts[0], g, cat, opts);
            auto right = path_pairs(*path.parts[1], g, cat, opts);
            std::map<TermKey, std::vector<RdfTerm>> by_start;
            for (const auto& [s, o] : right) by_start[term_key(s)].push_back(o);
            for (const auto& [s, mid] : left) {
                auto it = by_start.find(term_key(mid));
                if (it == by_start.end()) continue;
                for (const auto& o : it->second) out.emplace_back(s, o);
            }
            return out;
        }
    }
    return out;
}

/// Solutions of one triple pattern. A variable predicate denotes an unknown
/// edge and ranges over relationship types only.
inline MappingSet match_triple_pattern(const TriplePattern& tp, const RdfGraph& g,
                                       const SchemaCatalog& cat, const EvalOptions& opts) {
    MappingSet out;
    if (tp.has_path()) {
        for (const auto& [s, o] : path_pairs(*tp.path, g, cat, opts)) {
            Mapping m;
            if (unify(tp.sp, s, m) && unify(tp.op, o, m)) out.rows.push_back(std::move(m));
        }
        return out;
    }
    bool var_predicate = tp.pp.is_var();
    for (const auto& t : g.triples) {
        if (var_predicate && !cat.is_relationship(t.predicate.lexical)) continue;
        Mapping m;
        if (!unify(tp.sp, t.subject, m)) continue;
        if (!unify(tp.pp, t.predicate, m)) continue;
        if (!unify(tp.op, t.object, m)) continue;
        out.rows.push_back(std::move(m));
    }
    return out;
}

inline Value filter_value(const Expr& e, const Mapping& m) {
    switch (e.kind) {
        case Expr::Kind::Var: {
            auto it = m.find(e.var);
            if (it == m.end()) return Value::null();
            return Value::from_term(it->second);
        }
        case Expr::Kind::Const:
            if (e.constant.kind == ElementKind::Iri) return Value::iri(e.constant.lexical);
            return Value::from_term(e.constant.to_term());
        case Expr::Kind::Compare: {
            Value l = filter_value(*e.children[0], m);
            Value r = filter_value(*e.children[1], m);
            if (e.op == CompareOp::Eq || e.op == CompareOp::Ne) {
                auto eq = value_ops::eq3(l, r);
                if (!eq.has_value()) return Value::null();
                return Value::of_bool(e.op == CompareOp::Eq ? *eq : !*eq);
            }
            auto c = value_ops::cmp3(l, r);
            if (!c.has_value()) return Value::null();
            switch (e.op) {
                case CompareOp::Lt: return Value::of_bool(*c < 0);
                case CompareOp::Le: return Value::of_bool(*c <= 0);
                case CompareOp::Gt: return Value::of_bool(*c > 0);
                case CompareOp::Ge: return Value::of_bool(*c >= 0);
                default: return Value::null();
            }
        }
        case Expr::Kind::BoolAnd:
        case Expr::Kind::BoolOr: {
            Value l = filter_value(*e.children[0], m);
            Value r = filter_value(*e.children[1], m);
            bool want = e.kind == Expr::Kind::BoolOr;
            if (l.kind == Value::Kind::Bool && l.boolean == want) return Value::of_bool(want);
            if (r.kind == Value::Kind::Bool && r.boolean == want) return Value::of_bool(want);
            if (l.kind == Value::Kind::Bool && r.kind == Value::Kind::Bool) {
                return Value::of_bool(want ? (l.boolean || r.boolean)
                                           : (l.boolean && r.boolean));
            }
            return Value::null();
        }
        case Expr::Kind::Not: {
            Value v = filter_value(*e.children[0], m);
            if (v.kind != Value::Kind::Bool) return Value::null();
            return Value::of_bool(!v.boolean);
        }
    }
    return Value::null();
}

inline bool filter_true(const Expr& e, const Mapping& m) {
    Value v = filter_value(e, m);
    return v.kind == Value::Kind::Bool && v.boolean;
}

} // namespace detail

/// Mapping-based evaluation of a graph pattern: compatible-mapping join for
/// AND, left join for OPT, additive union for UNION, predicate filtering.
inline MappingSet eval_pattern(const GraphPattern& gp, const RdfGraph& g,
                               const SchemaCatalog& cat, const EvalOptions& opts = {}) {
    switch (gp.kind) {
        case GraphPattern::Kind::Bgp: {
            MappingSet acc;
            acc.rows.push_back({});
            for (const auto& tp : gp.triples) {
                MappingSet tps = detail::match_triple_pattern(tp, g, cat, opts);
                MappingSet next;
                for (const auto& a : acc.rows) {
                    for (const auto& b : tps.rows) {
                        if (detail::mappings_compatible(a, b)) {
                            next.rows.push_back(detail::merge_mappings(a, b));
                        }
                    }
                }
                acc = std::move(next);
            }
            return acc;
        }
        case GraphPattern::Kind::And: {
            MappingSet l = eval_pattern(*gp.left, g, cat, opts);
            MappingSet r = eval_pattern(*gp.right, g, cat, opts);
            MappingSet out;
            for (const auto& a : l.rows) {
                for (const auto& b : r.rows) {
                    if (detail::mappings_compatible(a, b)) {
                        out.rows.push_back(detail::merge_mappings(a, b));
                    }
                }
            }
            return out;
        }
        case GraphPattern::Kind::Opt: {
            MappingSet l = eval_pattern(*gp.left, g, cat, opts);
            MappingSet r = eval_pattern(*gp.right, g, cat, opts);
            MappingSet out;
            for (const auto& a : l.rows) {
                bool matched = false;
                for (const auto& b : r.rows) {
                    if (detail::mappings_compatible(a, b)) {
                        out.rows.push_back(detail::merge_mappings(a, b));
                        matched = true;
                    }
                }
                if (!matched) out.rows.push_back(a);
            }
            return out;
        }
        case GraphPattern::Kind::Union: {
            MappingSet l = eval_pattern(*gp.left, g, cat, opts);
            MappingSet r = eval_pattern(*gp.right, g, cat, opts);
            for (auto& m : r.rows) l.rows.push_back(std::move(m));
            return l;
        }
        case GraphPattern::Kind::Filter: {
            MappingSet inner = eval_pattern(*gp.inner, g, cat, opts);
            MappingSet out;
            for (auto& m : inner.rows) {
                if (detail::filter_true(*gp.cond, m)) out.rows.push_back(std::move(m));
            }
            return out;
        }
    }
    return {};
}

/// Full mapping-based semantics of a SELECT query: pattern evaluation
/// followed by the solution modifier pipeline.
inline MappingSet eval_mapping(const SparqlQuery& q, const RdfGraph& g,
                               const SchemaCatalog& cat, const EvalOptions& opts = {}) {
    MappingSet solutions = eval_pattern(*q.pattern, g, cat, opts);
    const auto& m = q.modifiers;

    std::vector<OutputItem> items;
    for (const auto& p : m.projection) {
        OutputItem oi;
        oi.var = p.output_name();
        oi.aggregate = p.is_aggregate();
        if (p.agg) oi.fn = p.agg->fn;
        items.push_back(std::move(oi));
    }

    auto value_of = [&](const Mapping& row, const std::string& var) {
        auto it = row.find(var);
        return it == row.end() ? Value::null() : Value::from_term(it->second);
    };
    auto item_value = [&](const Mapping& row, size_t i) {
        return value_of(row, m.projection[i].var);
    };
    auto agg_arg_value = [&](const Mapping& row, size_t i) {
        return value_of(row, m.projection[i].agg->arg);
    };

    std::vector<OrderSpec<Mapping>> order;
    for (const auto& [var, desc] : m.order) {
        OrderSpec<Mapping> spec;
        spec.descending = desc;
        for (size_t i = 0; i < m.projection.size(); ++i) {
            if (m.projection[i].output_name() == var) {
                spec.output_item = i;
                break;
            }
        }
        if (!spec.output_item) {
            std::string v = var;
            spec.key = [&, v](const Mapping& row) { return value_of(row, v); };
        }
        order.push_back(std::move(spec));
    }

    auto rows = apply_solution_modifiers<Mapping>(solutions.rows, items, item_value,
                                                  agg_arg_value, order, m.distinct, m.skip,
                                                  m.limit, nullptr);

    MappingSet out;
    for (const auto& row : rows) {
        Mapping mu;
        for (size_t i = 0; i < items.size(); ++i) {
            if (row[i].is_null()) continue;  // unbound stays out of the mapping
            mu.emplace(items[i].var, row[i].to_term());
        }
        out.rows.push_back(std::move(mu));
    }
    return out;
}

} // namespace s2c
