#pragma once

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "s2c/rdf_model.hpp"

namespace s2c {

enum class ElementKind { Variable, Iri, Literal };

/// One position of a triple pattern. Variables are stored without the
/// leading '?'; IRIs fully expanded; literals with optional datatype.
struct TripleElement {
    ElementKind kind = ElementKind::Iri;
    std::string lexical;
    std::string datatype;  // literals only
    std::string lang;      // literals only

    static TripleElement var(std::string name) {
        return {ElementKind::Variable, std::move(name), {}, {}};
    }
    static TripleElement iri(std::string s) {
        return {ElementKind::Iri, std::move(s), {}, {}};
    }
    static TripleElement literal(std::string s, std::string dt = {}, std::string lg = {}) {
        return {ElementKind::Literal, std::move(s), std::move(dt), std::move(lg)};
    }

    bool is_var() const { return kind == ElementKind::Variable; }

    RdfTerm to_term() const {
        switch (kind) {
            case ElementKind::Iri: return RdfTerm::iri(lexical);
            case ElementKind::Literal: return RdfTerm::literal(lexical, datatype, lang);
            default: throw validation_error("variable has no term form");
        }
    }

    bool operator==(const TripleElement& o) const {
        return kind == o.kind && lexical == o.lexical && datatype == o.datatype;
    }
};

/// Classification of a triple element (variable / IRI / literal).
inline ElementKind element_kind(const TripleElement& e) { return e.kind; }

/// A SPARQL 1.1 property path in the supported subset: a single predicate
/// step, its inverse, the three closures, and predicate sequences.
struct PathExpr {
    enum class Kind { Predicate, Inverse, ZeroOrMore, OneOrMore, ZeroOrOne, Sequence };

    Kind kind = Kind::Predicate;
    std::string iri;                               // all kinds except Sequence
    std::vector<std::shared_ptr<const PathExpr>> parts;  // Sequence: exactly two

    static PathExpr step(Kind k, std::string iri) {
        PathExpr p; p.kind = k; p.iri = std::move(iri); return p;
    }
    static PathExpr sequence(std::shared_ptr<const PathExpr> a,
                             std::shared_ptr<const PathExpr> b) {
        PathExpr p; p.kind = Kind::Sequence; p.parts = {std::move(a), std::move(b)};
        return p;
    }
};

inline bool path_equals(const PathExpr& a, const PathExpr& b) {
    if (a.kind != b.kind || a.iri != b.iri) return false;
    if (a.parts.size() != b.parts.size()) return false;
    for (size_t i = 0; i < a.parts.size(); ++i) {
        if (!path_equals(*a.parts[i], *b.parts[i])) return false;
    }
    return true;
}

struct TriplePattern {
    TripleElement sp;
    TripleElement pp;                       // plain predicate position
    std::shared_ptr<const PathExpr> path;   // set instead of pp for path predicates
    TripleElement op;

    bool has_path() const { return path != nullptr; }

    bool operator==(const TriplePattern& o) const {
        if (!(sp == o.sp) || !(op == o.op)) return false;
        if (has_path() != o.has_path()) return false;
        if (has_path()) return path_equals(*path, *o.path);
        return pp == o.pp;
    }
};

enum class CompareOp { Eq, Ne, Lt, Le, Gt, Ge };

/// FILTER expression tree: comparisons over variables and constants combined
/// with &&, || and !.
struct Expr {
    enum class Kind { Var, Const, Compare, BoolAnd, BoolOr, Not };

    Kind kind = Kind::Var;
    std::string var;          // Var
    TripleElement constant;   // Const (Iri or Literal)
    CompareOp op = CompareOp::Eq;
    std::vector<std::shared_ptr<const Expr>> children;

    static std::shared_ptr<const Expr> make_var(std::string name) {
        auto e = std::make_shared<Expr>();
        e->kind = Kind::Var; e->var = std::move(name);
        return e;
    }
    static std::shared_ptr<const Expr> make_const(TripleElement c) {
        auto e = std::make_shared<Expr>();
        e->kind = Kind::Const; e->constant = std::move(c);
        return e;
    }
    static std::shared_ptr<const Expr> compare(CompareOp op,
                                               std::shared_ptr<const Expr> l,
                                               std::shared_ptr<const Expr> r) {
        auto e = std::make_shared<Expr>();
        e->kind = Kind::Compare; e->op = op; e->children = {std::move(l), std::move(r)};
        return e;
    }
    static std::shared_ptr<const Expr> logical(Kind k,
                                               std::vector<std::shared_ptr<const Expr>> ch) {
        auto e = std::make_shared<Expr>();
        e->kind = k; e->children = std::move(ch);
        return e;
    }
};

using ExprPtr = std::shared_ptr<const Expr>;

inline bool expr_equals(const Expr& a, const Expr& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
        case Expr::Kind::Var: return a.var == b.var;
        case Expr::Kind::Const: return a.constant == b.constant;
        default: break;
    }
    if (a.kind == Expr::Kind::Compare && a.op != b.op) return false;
    if (a.children.size() != b.children.size()) return false;
    for (size_t i = 0; i < a.children.size(); ++i) {
        if (!expr_equals(*a.children[i], *b.children[i])) return false;
    }
    return true;
}

struct GraphPattern;
using GraphPatternPtr = std::shared_ptr<const GraphPattern>;

/// gp → Bgp | gp AND gp | gp OPT gp | gp UNION gp | gp FILTER expr
struct GraphPattern {
    enum class Kind { Bgp, And, Opt, Union, Filter };

    Kind kind = Kind::Bgp;
    std::vector<TriplePattern> triples;  // Bgp
    GraphPatternPtr left, right;         // And / Opt / Union
    GraphPatternPtr inner;               // Filter
    ExprPtr cond;                        // Filter

    static GraphPatternPtr bgp(std::vector<TriplePattern> tps) {
        auto g = std::make_shared<GraphPattern>();
        g->kind = Kind::Bgp; g->triples = std::move(tps);
        return g;
    }
    static GraphPatternPtr binary(Kind k, GraphPatternPtr l, GraphPatternPtr r) {
        auto g = std::make_shared<GraphPattern>();
        g->kind = k; g->left = std::move(l); g->right = std::move(r);
        return g;
    }
    static GraphPatternPtr filter(GraphPatternPtr in, ExprPtr cond) {
        auto g = std::make_shared<GraphPattern>();
        g->kind = Kind::Filter; g->inner = std::move(in); g->cond = std::move(cond);
        return g;
    }
};

inline bool pattern_equals(const GraphPattern& a, const GraphPattern& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
        case GraphPattern::Kind::Bgp:
            return a.triples == b.triples;
        case GraphPattern::Kind::Filter:
            return pattern_equals(*a.inner, *b.inner) && expr_equals(*a.cond, *b.cond);
        default:
            return pattern_equals(*a.left, *b.left) && pattern_equals(*a.right, *b.right);
    }
}

enum class AggregateFn { Count, Max, Min, Sum, Avg };

struct Aggregate {
    AggregateFn fn = AggregateFn::Count;
    std::string arg;    // variable, bare
    std::string alias;  // output variable, bare

    bool operator==(const Aggregate&) const = default;
};

/// Either a plain projected variable or an aggregate with alias.
struct ProjectionItem {
    std::string var;                // set when plain
    std::optional<Aggregate> agg;   // set when aggregate

    bool is_aggregate() const { return agg.has_value(); }
    const std::string& output_name() const { return agg ? agg->alias : var; }

    bool operator==(const ProjectionItem&) const = default;
};

struct SolutionModifiers {
    std::vector<ProjectionItem> projection;
    bool distinct = false;
    std::vector<std::pair<std::string, bool>> order;  // (variable, descending)
    std::optional<int64_t> limit;
    std::optional<int64_t> skip;
    std::vector<std::string> group;  // explicit GROUP BY variables, if any

    bool has_aggregates() const {
        for (const auto& p : projection) {
            if (p.is_aggregate()) return true;
        }
        return false;
    }

    bool operator==(const SolutionModifiers&) const = default;
};

struct SparqlQuery {
    PrefixMap prefixes;
    GraphPatternPtr pattern;
    SolutionModifiers modifiers;
};

inline bool query_equals(const SparqlQuery& a, const SparqlQuery& b) {
    return a.prefixes == b.prefixes && pattern_equals(*a.pattern, *b.pattern) &&
           a.modifiers == b.modifiers;
}

/// Collects pattern variables in first-mention order (SELECT * expansion,
/// projection validation).
inline void collect_variables(const GraphPattern& gp, std::vector<std::string>& out) {
    auto add = [&](const std::string& v) {
        for (const auto& x : out) {
            if (x == v) return;
        }
        out.push_back(v);
    };
    switch (gp.kind) {
        case GraphPattern::Kind::Bgp:
            for (const auto& tp : gp.triples) {
                if (tp.sp.is_var()) add(tp.sp.lexical);
                if (!tp.has_path() && tp.pp.is_var()) add(tp.pp.lexical);
                if (tp.op.is_var()) add(tp.op.lexical);
            }
            break;
        case GraphPattern::Kind::Filter:
            collect_variables(*gp.inner, out);
            break;
        default:
            collect_variables(*gp.left, out);
            collect_variables(*gp.right, out);
            break;
    }
}

} // namespace s2c
