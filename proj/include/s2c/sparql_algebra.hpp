#pragma once

#include <string>
#include <vector>

#include "s2c/graph_relation.hpp"
#include "s2c/rdf_model.hpp"
#include "s2c/schema_catalog.hpp"
#include "s2c/solution_modifiers.hpp"
#include "s2c/sparql_ast.hpp"
#include "s2c/sparql_eval.hpp"

namespace s2c {

/// Projection/rename specification produced by genPR: which of the base
/// (s, p, o) columns survive and under which attribute.
struct GenPr {
    enum class Source { Subject, Predicate, Object };
    std::vector<std::pair<Source, Attribute>> columns;
};

namespace detail {

inline Attribute element_attribute(const TripleElement& e, const PrefixMap& prefixes) {
    if (e.is_var()) return Attribute{e.lexical, e.lexical};
    if (e.kind == ElementKind::Iri) return Attribute{prefixes.display(e.lexical), {}};
    return Attribute{e.lexical, {}};
}

} // namespace detail

/// genPR: project the subject, plus predicate/object for edge patterns, plus
/// the object for type/property patterns with a variable object — renamed to
/// the expressions they are equivalent to (labels / property access).
inline GenPr gen_pr(const TriplePattern& tp, const SchemaCatalog& cat,
                    const PrefixMap& prefixes = {}) {
    GenPr out;
    auto add = [&](GenPr::Source src, Attribute attr) {
        for (const auto& [s, a] : out.columns) {
            if (a.key() == attr.key()) return;  // one column per attribute
        }
        out.columns.emplace_back(src, std::move(attr));
    };
    add(GenPr::Source::Subject, detail::element_attribute(tp.sp, prefixes));
    TriplePatternClass cls = classify_triple(tp, cat);
    if ((cls == TriplePatternClass::IRIEdge || cls == TriplePatternClass::VarEdge) &&
        !(tp.pp == tp.sp)) {
        add(GenPr::Source::Predicate, detail::element_attribute(tp.pp, prefixes));
        add(GenPr::Source::Object, detail::element_attribute(tp.op, prefixes));
    }
    if (cls == TriplePatternClass::Type && tp.op.is_var()) {
        std::string sp_disp = detail::element_attribute(tp.sp, prefixes).display;
        add(GenPr::Source::Object, Attribute{"L(" + sp_disp + ")", tp.op.lexical});
    }
    if (cls == TriplePatternClass::Property && tp.op.is_var()) {
        std::string sp_disp = detail::element_attribute(tp.sp, prefixes).display;
        add(GenPr::Source::Object,
            Attribute{sp_disp + "." + prefixes.display(tp.pp.lexical), tp.op.lexical});
    }
    return out;
}

namespace detail {

/// Matches one triple pattern into an (s, p, o) relation, then projects and
/// renames it.
inline GraphRelation eval_triple_pattern(const TriplePattern& tp, const RdfGraph& g,
                                         const SchemaCatalog& cat,
                                         const PrefixMap& prefixes,
                                         const EvalOptions& opts) {
    GraphRelation out;
    if (tp.has_path()) {
        Attribute sa = element_attribute(tp.sp, prefixes);
        Attribute oa = element_attribute(tp.op, prefixes);
        out.schema.push_back(sa);
        bool same = oa.key() == sa.key();
        if (!same) out.schema.push_back(oa);
        for (const auto& [s, o] : path_pairs(*tp.path, g, cat, opts)) {
            if (tp.sp.is_var() || tp.sp.to_term() == s) {
                if (tp.op.is_var() || tp.op.to_term() == o) {
                    if (same && !(s == o)) continue;
                    std::vector<Value> row = {Value::from_term(s)};
                    if (!same) row.push_back(Value::from_term(o));
                    out.add_row(std::move(row));
                }
            }
        }
        return out;
    }

    GenPr pr = gen_pr(tp, cat, prefixes);
    out.schema.reserve(pr.columns.size());
    for (const auto& [src, attr] : pr.columns) out.schema.push_back(attr);

    bool var_predicate = tp.pp.is_var();
    for (const auto& t : g.triples) {
        // genCond: constants equal, shared variables equal, unknown edges
        // range over relationship types
        if (var_predicate && !cat.is_relationship(t.predicate.lexical)) continue;
        Mapping m;
        if (!unify(tp.sp, t.subject, m)) continue;
        if (!unify(tp.pp, t.predicate, m)) continue;
        if (!unify(tp.op, t.object, m)) continue;
        std::vector<Value> row;
        for (const auto& [src, attr] : pr.columns) {
            switch (src) {
                case GenPr::Source::Subject: row.push_back(Value::from_term(t.subject)); break;
                case GenPr::Source::Predicate: row.push_back(Value::from_term(t.predicate)); break;
                case GenPr::Source::Object: row.push_back(Value::from_term(t.object)); break;
            }
        }
        out.add_row(std::move(row));
    }
    return out;
}

inline Value relation_filter_value(const Expr& e, const std::vector<Value>& row,
                                   const GraphRelation& rel) {
    switch (e.kind) {
        case Expr::Kind::Var: {
            auto col = rel.column(e.var);
            return col ? row[*col] : Value::null();
        }
        case Expr::Kind::Const:
            if (e.constant.kind == ElementKind::Iri) return Value::iri(e.constant.lexical);
            return Value::from_term(e.constant.to_term());
        case Expr::Kind::Compare: {
            Value l = relation_filter_value(*e.children[0], row, rel);
            Value r = relation_filter_value(*e.children[1], row, rel);
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
            Value l = relation_filter_value(*e.children[0], row, rel);
            Value r = relation_filter_value(*e.children[1], row, rel);
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
            Value v = relation_filter_value(*e.children[0], row, rel);
            if (v.kind != Value::Kind::Bool) return Value::null();
            return Value::of_bool(!v.boolean);
        }
    }
    return Value::null();
}

} // namespace detail

/// Graph-relational semantics of a graph pattern: triple-pattern scans,
/// NULL-tolerant inner joins, left outer joins, outer unions, and filters.
inline GraphRelation eval_algebra(const GraphPattern& gp, const RdfGraph& g,
                                  const SchemaCatalog& cat, const PrefixMap& prefixes = {},
                                  const EvalOptions& opts = {}) {
    switch (gp.kind) {
        case GraphPattern::Kind::Bgp: {
            GraphRelation acc;
            acc.rows.emplace_back();
            for (const auto& tp : gp.triples) {
                acc = relation_ops::join(
                    acc, detail::eval_triple_pattern(tp, g, cat, prefixes, opts),
                    /*null_tolerant=*/true);
            }
            return acc;
        }
        case GraphPattern::Kind::And:
            return relation_ops::join(eval_algebra(*gp.left, g, cat, prefixes, opts),
                                      eval_algebra(*gp.right, g, cat, prefixes, opts), true);
        case GraphPattern::Kind::Opt:
            return relation_ops::left_join(eval_algebra(*gp.left, g, cat, prefixes, opts),
                                           eval_algebra(*gp.right, g, cat, prefixes, opts),
                                           true);
        case GraphPattern::Kind::Union:
            return relation_ops::outer_union(eval_algebra(*gp.left, g, cat, prefixes, opts),
                                             eval_algebra(*gp.right, g, cat, prefixes, opts));
        case GraphPattern::Kind::Filter: {
            GraphRelation inner = eval_algebra(*gp.inner, g, cat, prefixes, opts);
            return relation_ops::filter(inner, [&](const std::vector<Value>& row) {
                Value v = detail::relation_filter_value(*gp.cond, row, inner);
                return v.kind == Value::Kind::Bool && v.boolean;
            });
        }
    }
    return {};
}

/// Applies a query's solution modifiers to a URI-space relation (the tail of
/// the eval route); output columns are the projected variables and aliases.
inline GraphRelation apply_modifiers_relation(const GraphRelation& rel,
                                              const SolutionModifiers& m) {
    std::vector<OutputItem> items;
    for (const auto& p : m.projection) {
        OutputItem oi;
        oi.var = p.output_name();
        oi.aggregate = p.is_aggregate();
        if (p.agg) oi.fn = p.agg->fn;
        items.push_back(std::move(oi));
    }

    auto column_value = [&](const std::vector<Value>& row, const std::string& var) {
        auto col = rel.column(var);
        return col ? row[*col] : Value::null();
    };
    auto item_value = [&](const std::vector<Value>& row, size_t i) {
        return column_value(row, m.projection[i].var);
    };
    auto agg_arg_value = [&](const std::vector<Value>& row, size_t i) {
        return column_value(row, m.projection[i].agg->arg);
    };

    std::vector<OrderSpec<std::vector<Value>>> order;
    for (const auto& [var, desc] : m.order) {
        OrderSpec<std::vector<Value>> spec;
        spec.descending = desc;
        for (size_t i = 0; i < m.projection.size(); ++i) {
            if (m.projection[i].output_name() == var) {
                spec.output_item = i;
                break;
            }
        }
        if (!spec.output_item) {
            std::string v = var;
            spec.key = [&rel, column_value, v](const std::vector<Value>& row) {
                return column_value(row, v);
            };
        }
        order.push_back(std::move(spec));
    }

    auto rows = apply_solution_modifiers<std::vector<Value>>(
        rel.rows, items, item_value, agg_arg_value, order, m.distinct, m.skip, m.limit,
        nullptr);

    GraphRelation out;
    for (const auto& oi : items) out.schema.push_back(Attribute{oi.var, oi.var});
    out.rows = std::move(rows);
    return out;
}

} // namespace s2c
