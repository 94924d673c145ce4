#pragma once

#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "s2c/cypher_ast.hpp"
#include "s2c/schema_catalog.hpp"
#include "s2c/sparql_ast.hpp"

namespace s2c {

/// What a SPARQL variable denotes on the Cypher side.
struct Binding {
    enum class Kind { NodeName, RelName, PropertyAccess, LabelsOf, TypeOf };

    Kind kind = Kind::NodeName;
    std::string target;  // node or relationship name
    std::string key;     // PropertyAccess key (full IRI)

    bool operator==(const Binding&) const = default;

    CypherExprPtr to_expr() const {
        switch (kind) {
            case Kind::NodeName:
            case Kind::RelName: return CypherExpr::ident(target);
            case Kind::PropertyAccess: return CypherExpr::prop(target, key);
            case Kind::LabelsOf: return CypherExpr::fn(CypherExpr::Kind::LabelsFn, target);
            case Kind::TypeOf: return CypherExpr::fn(CypherExpr::Kind::TypeFn, target);
        }
        return nullptr;
    }
};

namespace detail {

inline std::string iri_local_name(const std::string& iri) {
    size_t pos = iri.find_last_of("#/:");
    std::string local = (pos == std::string::npos) ? iri : iri.substr(pos + 1);
    return local.empty() ? iri : local;
}

inline const std::set<std::string>& cypher_reserved_words() {
    static const std::set<std::string> words = {
        "match", "optional", "where", "return", "distinct", "order", "by",
        "skip", "limit", "union", "and", "or", "not", "as", "asc", "desc",
        "null", "true", "false", "count", "max", "min", "sum", "avg", "type",
        "labels", "with", "unwind", "create", "merge", "delete", "set"};
    return words;
}

/// Allocates identifiers unique within one translation.
class NameAllocator {
public:
    static std::string sanitize(const std::string& raw) {
        std::string out;
        for (char c : raw) {
            out.push_back(std::isalnum(static_cast<unsigned char>(c)) || c == '_' ? c : '_');
        }
        if (out.empty() || std::isdigit(static_cast<unsigned char>(out[0]))) {
            out.insert(out.begin(), '_');
        }
        std::string lower = out;
        for (char& c : lower) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        if (cypher_reserved_words().count(lower)) out += "_1";
        return out;
    }

    bool reserve(const std::string& name) { return taken_.insert(name).second; }

    std::string claim(const std::string& base) {
        std::string name = sanitize(base);
        if (reserve(name)) return name;
        for (int i = 2;; ++i) {
            std::string candidate = name + "_" + std::to_string(i);
            if (reserve(candidate)) return candidate;
        }
    }

private:
    std::set<std::string> taken_;
};

} // namespace detail

/// Working state of the pattern matching mapping: the Cypher pattern set E,
/// the variable binding environment, and equality constraints produced by
/// rebinding a variable that already has a different realization.
class PatternSet {
public:
    std::vector<PathPattern> patterns;  // creation order
    std::map<std::string, Binding> binding_env;
    std::vector<CypherExprPtr> constraints;

    /// First-created pattern in which `name` occurs as a node, if any.
    const PathPattern* get_pattern(const std::string& name) const {
        for (const auto& p : patterns) {
            if (p.find_node(name)) return &p;
        }
        return nullptr;
    }

    void bind(const std::string& var, Binding b) {
        auto it = binding_env.find(var);
        if (it == binding_env.end()) {
            binding_env.emplace(var, std::move(b));
            return;
        }
        if (it->second == b) return;
        // the variable already denotes something else: join by value equality
        constraints.push_back(
            CypherExpr::cmp(CompareOp::Eq, it->second.to_expr(), b.to_expr()));
    }
};

namespace detail {

/// Shared translation context: one name space per SPARQL query.
struct TranslationState {
    NameAllocator names;
    std::map<std::string, std::string> var_names;    // SPARQL var -> cypher name
    std::map<std::string, std::string> const_nodes;  // resource IRI -> node name

    std::string var_name(const std::string& var) {
        auto it = var_names.find(var);
        if (it != var_names.end()) return it->second;
        std::string name = names.claim(var);
        var_names.emplace(var, name);
        return name;
    }
};

/// One relationship hop plus the node pattern it leads to (the node is
/// empty-named until the chain is anchored).
struct ChainSegment {
    RelationshipPattern rel;
    NodePattern to;
};

} // namespace detail

/// Property-path translation (single row of the path table): direction,
/// range and, for sequences, the anonymous intermediate nodes.
inline std::vector<detail::ChainSegment> map_property_path(const PathExpr& path,
                                                           detail::NameAllocator& names) {
    using Kind = PathExpr::Kind;
    std::vector<detail::ChainSegment> out;
    switch (path.kind) {
        case Kind::Predicate:
        case Kind::Inverse:
        case Kind::ZeroOrMore:
        case Kind::OneOrMore:
        case Kind::ZeroOrOne: {
            detail::ChainSegment seg;
            seg.rel.direction = (path.kind == Kind::Inverse)
                                    ? RelationshipPattern::Dir::In
                                    : RelationshipPattern::Dir::Out;
            seg.rel.name = names.claim(detail::iri_local_name(path.iri));
            seg.rel.rel_type = path.iri;
            if (path.kind == Kind::ZeroOrMore) seg.rel.range = RelationshipPattern::Range{0, {}};
            if (path.kind == Kind::OneOrMore) seg.rel.range = RelationshipPattern::Range{1, {}};
            if (path.kind == Kind::ZeroOrOne) seg.rel.range = RelationshipPattern::Range{0, 1};
            out.push_back(std::move(seg));
            return out;
        }
        case Kind::Sequence: {
            for (const auto& part : path.parts) {
                auto segs = map_property_path(*part, names);
                if (!out.empty()) {
                    // anonymous node joining consecutive steps
                    out.back().to.name = names.claim("_n");
                }
                for (auto& s : segs) out.push_back(std::move(s));
            }
            return out;
        }
    }
    throw unsupported("property path shape");
}

namespace detail {

/// Pattern matching mapping. Walks the triple patterns of one BGP and grows
/// the Cypher graph pattern set: new patterns, node extension, path
/// extension at either end, and name-shared patterns once a node would need
/// a third incident relationship inside one linear path.
class PmmBuilder {
public:
    PmmBuilder(const SchemaCatalog& cat, TranslationState& state)
        : cat_(cat), state_(state) {}

    PatternSet run(const std::vector<TriplePattern>& bgp) {
        for (const auto& tp : bgp) add_triple(tp);
        return std::move(set_);
    }

private:
    void add_triple(const TriplePattern& tp) {
        if (tp.has_path()) {
            add_path_triple(tp);
            return;
        }
        switch (classify_triple(tp, cat_)) {
            case TriplePatternClass::Type:
                if (tp.op.is_var()) {
                    std::string node = ensure_node(tp.sp);
                    set_.bind(tp.op.lexical, {Binding::Kind::LabelsOf, node, {}});
                } else if (tp.op.kind == ElementKind::Iri) {
                    std::string node = ensure_node(tp.sp);
                    find_node(node)->add_label(tp.op.lexical);
                } else {
                    throw unsupported("literal object of rdf:type");
                }
                break;
            case TriplePatternClass::Property:
                if (tp.op.is_var()) {
                    std::string node = ensure_node(tp.sp);
                    set_.bind(tp.op.lexical,
                              {Binding::Kind::PropertyAccess, node, tp.pp.lexical});
                } else {
                    std::string node = ensure_node(tp.sp);
                    find_node(node)->add_property(tp.pp.lexical,
                                                  Value::from_term(tp.op.to_term()));
                }
                break;
            case TriplePatternClass::IRIEdge: {
                ChainSegment seg;
                seg.rel.direction = RelationshipPattern::Dir::Out;
                seg.rel.name = state_.names.claim(iri_local_name(tp.pp.lexical));
                seg.rel.rel_type = tp.pp.lexical;
                attach_chain(tp.sp, {std::move(seg)}, tp.op);
                break;
            }
            case TriplePatternClass::VarEdge: {
                const std::string& var = tp.pp.lexical;
                if ((tp.sp.is_var() && tp.sp.lexical == var) ||
                    (tp.op.is_var() && tp.op.lexical == var)) {
                    throw unsupported("predicate variable reused in subject/object position");
                }
                ChainSegment seg;
                seg.rel.direction = RelationshipPattern::Dir::Out;
                // the variable names the relationship itself; a second use
                // gets a fresh name and a type-equality constraint via bind
                if (set_.binding_env.count(var)) {
                    seg.rel.name = state_.names.claim(var);
                } else {
                    seg.rel.name = state_.var_name(var);
                }
                set_.bind(var, {Binding::Kind::TypeOf, seg.rel.name, {}});
                attach_chain(tp.sp, {std::move(seg)}, tp.op);
                break;
            }
        }
    }

    void add_path_triple(const TriplePattern& tp) {
        auto chain = map_property_path(*tp.path, state_.names);
        attach_chain(tp.sp, std::move(chain), tp.op);
    }

    // --- node bookkeeping -------------------------------------------------

    std::string node_name(const TripleElement& e, bool& fresh_const) {
        fresh_const = false;
        if (e.is_var()) {
            std::string name = state_.var_name(e.lexical);
            set_.bind(e.lexical, {Binding::Kind::NodeName, name, {}});
            return name;
        }
        if (e.kind == ElementKind::Iri) {
            auto it = state_.const_nodes.find(e.lexical);
            if (it != state_.const_nodes.end()) return it->second;
            std::string name = state_.names.claim("_" + iri_local_name(e.lexical));
            state_.const_nodes.emplace(e.lexical, name);
            fresh_const = true;
            return name;
        }
        throw unsupported("literal where a graph node is required");
    }

    NodePattern make_node(const TripleElement& e) {
        bool fresh_const = false;
        std::string name = node_name(e, fresh_const);
        NodePattern n;
        n.name = name;
        if (fresh_const) n.add_property("uri", Value::string(e.lexical));
        return n;
    }

    /// Node pattern named `name`, creating a fresh single-node pattern when
    /// it occurs nowhere yet.
    std::string ensure_node(const TripleElement& e) {
        bool fresh_const = false;
        std::string name = node_name(e, fresh_const);
        if (!set_.get_pattern(name)) {
            NodePattern n;
            n.name = name;
            if (fresh_const) n.add_property("uri", Value::string(e.lexical));
            PathPattern p;
            p.head = std::move(n);
            set_.patterns.push_back(std::move(p));
        }
        return name;
    }

    NodePattern* find_node(const std::string& name) {
        for (auto& p : set_.patterns) {
            if (auto* n = p.find_node(name)) return n;
        }
        return nullptr;
    }

    // --- chain attachment ---------------------------------------------------

    void attach_chain(const TripleElement& sp, std::vector<ChainSegment> chain,
                      const TripleElement& op) {
        NodePattern target = make_node(op);
        chain.back().to = std::move(target);

        bool fresh_const = false;
        std::string sname = node_name(sp, fresh_const);

        for (auto& pattern : set_.patterns) {
            if (pattern.node_count() == 1 && pattern.head.name == sname) {
                // bare node grows into a path
                for (auto& seg : chain) {
                    pattern.tail.emplace_back(std::move(seg.rel), std::move(seg.to));
                }
                return;
            }
            if (pattern.node_count() > 1 && pattern.end().name == sname) {
                for (auto& seg : chain) {
                    pattern.tail.emplace_back(std::move(seg.rel), std::move(seg.to));
                }
                return;
            }
            if (pattern.node_count() > 1 && pattern.start().name == sname &&
                chain.size() == 1) {
                // branch at the start node: prepend with reversed direction
                ChainSegment& seg = chain.front();
                seg.rel.direction = (seg.rel.direction == RelationshipPattern::Dir::Out)
                                        ? RelationshipPattern::Dir::In
                                        : RelationshipPattern::Dir::Out;
                PathPattern grown;
                grown.head = std::move(seg.to);
                grown.tail.emplace_back(std::move(seg.rel), std::move(pattern.head));
                for (auto& t : pattern.tail) grown.tail.push_back(std::move(t));
                pattern = std::move(grown);
                return;
            }
        }

        // subject absent or only interior: new pattern sharing the name
        PathPattern p;
        p.head.name = sname;
        if (fresh_const) p.head.add_property("uri", Value::string(sp.lexical));
        for (auto& seg : chain) {
            p.tail.emplace_back(std::move(seg.rel), std::move(seg.to));
        }
        set_.patterns.push_back(std::move(p));
    }

    const SchemaCatalog& cat_;
    TranslationState& state_;
    PatternSet set_;
};

} // namespace detail

/// Pattern matching mapping over one basic graph pattern.
inline PatternSet pmm(const std::vector<TriplePattern>& bgp, const SchemaCatalog& cat,
                      detail::TranslationState& state) {
    detail::PmmBuilder builder(cat, state);
    return builder.run(bgp);
}

/// Convenience overload with a self-contained name space (tests, tooling).
inline PatternSet pmm(const std::vector<TriplePattern>& bgp, const SchemaCatalog& cat) {
    detail::TranslationState state;
    return pmm(bgp, cat, state);
}

/// Translates a FILTER expression against the binding environment. Node
/// variables compared with IRI constants compare via the `uri` property.
inline CypherExprPtr map_expression(const Expr& e, const std::map<std::string, Binding>& env) {
    auto lookup = [&](const std::string& var) -> const Binding& {
        auto it = env.find(var);
        if (it == env.end()) {
            throw Error(Error::Kind::UnboundFilterVariable,
                        "filter references unbound variable ?" + var);
        }
        return it->second;
    };
    switch (e.kind) {
        case Expr::Kind::Var:
            return lookup(e.var).to_expr();
        case Expr::Kind::Const: {
            if (e.constant.kind == ElementKind::Iri) {
                return CypherExpr::constant(Value::iri(e.constant.lexical));
            }
            return CypherExpr::constant(Value::from_term(e.constant.to_term()));
        }
        case Expr::Kind::Compare: {
            const Expr& l = *e.children[0];
            const Expr& r = *e.children[1];
            auto is_node_var = [&](const Expr& x) {
                return x.kind == Expr::Kind::Var &&
                       lookup(x.var).kind == Binding::Kind::NodeName;
            };
            auto is_iri_const = [](const Expr& x) {
                return x.kind == Expr::Kind::Const && x.constant.kind == ElementKind::Iri;
            };
            // a node has no term identity of its own in Cypher; compare URIs
            if (is_node_var(l) && is_iri_const(r)) {
                return CypherExpr::cmp(e.op, CypherExpr::prop(lookup(l.var).target, "uri"),
                                       CypherExpr::constant(Value::string(r.constant.lexical)));
            }
            if (is_iri_const(l) && is_node_var(r)) {
                return CypherExpr::cmp(e.op,
                                       CypherExpr::constant(Value::string(l.constant.lexical)),
                                       CypherExpr::prop(lookup(r.var).target, "uri"));
            }
            return CypherExpr::cmp(e.op, map_expression(l, env), map_expression(r, env));
        }
        case Expr::Kind::BoolAnd:
        case Expr::Kind::BoolOr: {
            auto kind = e.kind == Expr::Kind::BoolAnd ? CypherExpr::Kind::And
                                                      : CypherExpr::Kind::Or;
            return CypherExpr::logical(kind, {map_expression(*e.children[0], env),
                                              map_expression(*e.children[1], env)});
        }
        case Expr::Kind::Not:
            return CypherExpr::logical(CypherExpr::Kind::Not,
                                       {map_expression(*e.children[0], env)});
    }
    throw unsupported("filter expression");
}

namespace detail {

/// Query skeleton accumulated while structuring the binary operators.
struct Skeleton {
    std::vector<MatchClause> match_clauses;
    std::vector<OptionalMatch> optional_matches;
    CypherExprPtr where;
    std::map<std::string, Binding> env;

    bool has_patterns() const { return !match_clauses.empty(); }
};

/// Groups a pattern set into MATCH clauses: one clause per connected
/// component (patterns sharing node names stay comma-joined).
inline std::vector<MatchClause> group_components(std::vector<PathPattern> patterns) {
    size_t n = patterns.size();
    std::vector<size_t> parent(n);
    for (size_t i = 0; i < n; ++i) parent[i] = i;
    std::function<size_t(size_t)> find = [&](size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    std::map<std::string, size_t> first_with_name;
    for (size_t i = 0; i < n; ++i) {
        auto note = [&](const std::string& name) {
            if (name.empty()) return;
            auto [it, inserted] = first_with_name.emplace(name, i);
            if (!inserted) parent[find(i)] = find(it->second);
        };
        note(patterns[i].head.name);
        for (const auto& [rel, node] : patterns[i].tail) note(node.name);
    }
    std::vector<MatchClause> clauses;
    std::map<size_t, size_t> root_to_clause;
    for (size_t i = 0; i < n; ++i) {
        size_t root = find(i);
        auto [it, inserted] = root_to_clause.emplace(root, clauses.size());
        if (inserted) clauses.emplace_back();
        clauses[it->second].patterns.push_back(std::move(patterns[i]));
    }
    return clauses;
}

inline void merge_env(Skeleton& into, const std::map<std::string, Binding>& other,
                      std::vector<CypherExprPtr>& constraints) {
    for (const auto& [var, binding] : other) {
        auto it = into.env.find(var);
        if (it == into.env.end()) {
            into.env.emplace(var, binding);
        } else if (!(it->second == binding)) {
            constraints.push_back(
                CypherExpr::cmp(CompareOp::Eq, it->second.to_expr(), binding.to_expr()));
        }
    }
}

inline CypherExprPtr fold_constraints(CypherExprPtr where,
                                      const std::vector<CypherExprPtr>& constraints) {
    for (const auto& c : constraints) where = and_together(where, c);
    return where;
}

inline Skeleton build_skeleton(const GraphPattern& gp, const SchemaCatalog& cat,
                               TranslationState& state) {
    Skeleton out;
    switch (gp.kind) {
        case GraphPattern::Kind::Bgp: {
            PatternSet set = pmm(gp.triples, cat, state);
            out.env = std::move(set.binding_env);
            out.where = fold_constraints(nullptr, set.constraints);
            out.match_clauses = group_components(std::move(set.patterns));
            return out;
        }
        case GraphPattern::Kind::And: {
            Skeleton l = build_skeleton(*gp.left, cat, state);
            Skeleton r = build_skeleton(*gp.right, cat, state);
            if (!l.optional_matches.empty() && r.has_patterns()) {
                throw unsupported("graph pattern joined after OPTIONAL");
            }
            // conjunction: both arms comma-joined in one MATCH clause
            MatchClause merged;
            for (auto& mc : l.match_clauses) {
                for (auto& p : mc.patterns) merged.patterns.push_back(std::move(p));
            }
            for (auto& mc : r.match_clauses) {
                for (auto& p : mc.patterns) merged.patterns.push_back(std::move(p));
            }
            if (!merged.patterns.empty()) out.match_clauses.push_back(std::move(merged));
            out.optional_matches = std::move(l.optional_matches);
            for (auto& om : r.optional_matches) out.optional_matches.push_back(std::move(om));
            out.env = std::move(l.env);
            std::vector<CypherExprPtr> constraints;
            merge_env(out, r.env, constraints);
            out.where = fold_constraints(and_together(l.where, r.where), constraints);
            return out;
        }
        case GraphPattern::Kind::Opt: {
            Skeleton l = build_skeleton(*gp.left, cat, state);
            Skeleton r = build_skeleton(*gp.right, cat, state);
            if (!r.optional_matches.empty()) {
                throw unsupported("OPTIONAL nested inside OPTIONAL");
            }
            out = std::move(l);
            std::vector<CypherExprPtr> constraints;
            merge_env(out, r.env, constraints);
            CypherExprPtr arm_where = fold_constraints(r.where, constraints);
            if (!r.has_patterns()) {
                // arm adds only property/label bindings: NULL-valued access
                // already models the left join, no OPTIONAL MATCH needed
                if (arm_where) {
                    throw unsupported("OPTIONAL arm with filters but no graph pattern");
                }
                return out;
            }
            OptionalMatch om;
            for (auto& mc : r.match_clauses) {
                for (auto& p : mc.patterns) om.patterns.push_back(std::move(p));
            }
            om.where = arm_where;
            out.optional_matches.push_back(std::move(om));
            return out;
        }
        case GraphPattern::Kind::Filter: {
            Skeleton inner = build_skeleton(*gp.inner, cat, state);
            CypherExprPtr cond = map_expression(*gp.cond, inner.env);
            inner.where = and_together(inner.where, cond);
            return inner;
        }
        case GraphPattern::Kind::Union:
            throw unsupported("UNION below AND/OPTIONAL/FILTER");
    }
    throw unsupported("graph pattern kind");
}

inline ReturnItem item_for_binding(const Binding& b, const std::string& var) {
    switch (b.kind) {
        case Binding::Kind::NodeName: return ReturnItem::node(b.target, var);
        case Binding::Kind::RelName: return ReturnItem::relationship(b.target, var);
        case Binding::Kind::PropertyAccess: return ReturnItem::property(b.target, b.key, var);
        case Binding::Kind::LabelsOf: return ReturnItem::labels_fn(b.target, var);
        case Binding::Kind::TypeOf: return ReturnItem::type_fn(b.target, var);
    }
    throw validation_error("binding kind");
}

} // namespace detail

/// Solution modifier mapping: projection, DISTINCT, ORDER BY,
/// LIMIT/SKIP, and aggregates with AS aliases; grouping stays implicit.
inline void smm(const SolutionModifiers& m, const std::map<std::string, Binding>& env,
                CypherQuery& q, detail::TranslationState& state) {
    std::set<std::string> projected;
    bool has_agg = m.has_aggregates();
    std::map<std::string, std::string> alias_names;

    for (const auto& item : m.projection) {
        if (item.is_aggregate()) {
            const Aggregate& agg = *item.agg;
            auto it = env.find(agg.arg);
            if (it == env.end()) {
                throw validation_error("aggregate argument ?" + agg.arg + " is not bound");
            }
            ReturnItem arg = detail::item_for_binding(it->second, agg.arg);
            ReturnItem out;
            out.kind = ReturnItem::Kind::Aggregate;
            out.fn = agg.fn;
            out.arg_kind = arg.kind;
            out.target = arg.target;
            out.arg_key = arg.key;
            out.alias = state.var_name(agg.alias);
            out.var = agg.alias;
            alias_names[agg.alias] = out.alias;
            q.return_items.push_back(std::move(out));
        } else {
            auto it = env.find(item.var);
            if (it == env.end()) {
                throw validation_error("projected variable ?" + item.var + " is not bound");
            }
            q.return_items.push_back(detail::item_for_binding(it->second, item.var));
            projected.insert(item.var);
        }
    }

    q.distinct = m.distinct;

    for (const auto& [var, desc] : m.order) {
        auto alias = alias_names.find(var);
        if (alias != alias_names.end()) {
            // ordering on an aggregate output refers to its alias
            ReturnItem ref;
            ref.kind = ReturnItem::Kind::Aggregate;
            ref.alias = alias->second;
            ref.var = var;
            q.order.emplace_back(std::move(ref), desc);
            continue;
        }
        auto it = env.find(var);
        if (it == env.end()) {
            throw validation_error("ORDER BY variable ?" + var + " is not bound");
        }
        if (m.distinct && !projected.count(var)) {
            throw unsupported("ORDER BY on a variable not projected under DISTINCT");
        }
        if (has_agg && !projected.count(var)) {
            throw unsupported("ORDER BY on a non-grouping variable under aggregation");
        }
        q.order.emplace_back(detail::item_for_binding(it->second, var), desc);
    }

    q.skip = m.skip;
    q.limit = m.limit;
}

namespace detail {

/// FILTER over UNION distributes into the arms; any other nesting of UNION
/// is outside the supported fragment.
inline GraphPatternPtr push_filters(const GraphPatternPtr& gp) {
    if (gp->kind == GraphPattern::Kind::Filter) {
        auto inner = push_filters(gp->inner);
        if (inner->kind == GraphPattern::Kind::Union) {
            return GraphPattern::binary(GraphPattern::Kind::Union,
                                        push_filters(GraphPattern::filter(inner->left, gp->cond)),
                                        push_filters(GraphPattern::filter(inner->right, gp->cond)));
        }
        if (inner == gp->inner) return gp;
        return GraphPattern::filter(inner, gp->cond);
    }
    return gp;
}

inline void collect_union_arms(const GraphPatternPtr& gp,
                               std::vector<GraphPatternPtr>& arms) {
    if (gp->kind == GraphPattern::Kind::Union) {
        collect_union_arms(gp->left, arms);
        collect_union_arms(gp->right, arms);
    } else {
        arms.push_back(gp);
    }
}

inline CypherQuery build_single(const GraphPatternPtr& gp, const SparqlQuery& q,
                                const SchemaCatalog& cat, TranslationState& state) {
    CypherQuery out;
    out.prefixes = q.prefixes;
    Skeleton skel = build_skeleton(*gp, cat, state);
    out.match_clauses = std::move(skel.match_clauses);
    out.optional_matches = std::move(skel.optional_matches);
    out.where = skel.where;
    smm(q.modifiers, skel.env, out, state);
    return out;
}

} // namespace detail

/// Structures the binary operators of a graph pattern into a query
/// skeleton; exposed for targeted tests.
inline CypherQuery map_binary(const GraphPatternPtr& gp, const SchemaCatalog& cat) {
    detail::TranslationState state;
    std::vector<std::string> vars;
    collect_variables(*gp, vars);
    for (const auto& v : vars) state.var_name(v);
    CypherQuery q;
    detail::Skeleton skel = detail::build_skeleton(*gp, cat, state);
    q.match_clauses = std::move(skel.match_clauses);
    q.optional_matches = std::move(skel.optional_matches);
    q.where = skel.where;
    return q;
}

/// Full translation pipeline: pattern matching mapping, binary-operator
/// structuring, filter mapping, then solution modifier mapping.
inline CypherQuery translate(const SparqlQuery& q, const SchemaCatalog& cat) {
    detail::TranslationState state;
    // fix variable names first so generated names never shadow them
    std::vector<std::string> vars;
    collect_variables(*q.pattern, vars);
    for (const auto& v : vars) state.var_name(v);

    GraphPatternPtr root = detail::push_filters(q.pattern);
    std::vector<GraphPatternPtr> arms;
    detail::collect_union_arms(root, arms);

    if (arms.size() == 1) {
        return detail::build_single(arms[0], q, cat, state);
    }

    // UNION combines complete queries. Solution modifiers other than the
    // projection cannot attach to a Cypher union without a subquery.
    const auto& m = q.modifiers;
    if (m.distinct || m.has_aggregates() || !m.order.empty() || m.limit || m.skip) {
        throw unsupported("solution modifiers over UNION");
    }
    std::shared_ptr<CypherQuery> first;
    std::shared_ptr<CypherQuery> prev;
    for (const auto& arm : arms) {
        auto piece = std::make_shared<CypherQuery>();
        piece->prefixes = q.prefixes;
        detail::Skeleton skel = detail::build_skeleton(*arm, cat, state);
        piece->match_clauses = std::move(skel.match_clauses);
        piece->optional_matches = std::move(skel.optional_matches);
        piece->where = skel.where;
        for (const auto& item : m.projection) {
            const std::string& var = item.var;
            std::string cname = state.var_name(var);
            auto it = skel.env.find(var);
            if (it == skel.env.end()) {
                piece->return_items.push_back(ReturnItem::null_const(cname, var));
            } else {
                ReturnItem ri = detail::item_for_binding(it->second, var);
                ri.alias = cname;  // unify column names across the arms
                piece->return_items.push_back(std::move(ri));
            }
        }
        if (!first) {
            first = piece;
        } else {
            prev->union_with = piece;
        }
        prev = piece;
    }
    return *first;
}

} // namespace s2c
