#pragma once

#include <string>
#include <vector>

#include "s2c/cypher_ast.hpp"
#include "s2c/graph_relation.hpp"
#include "s2c/property_graph.hpp"
#include "s2c/solution_modifiers.hpp"

namespace s2c {

struct ExecOptions {
    uint32_t max_path_depth = 15;  // variable-length expansion bound
};

/// GetNodes: single-attribute relation of the nodes satisfying the label
/// and property constraints.
inline GraphRelation get_nodes(const PropertyGraph& g, const std::string& name,
                               const std::vector<std::string>& labels = {},
                               const std::vector<std::pair<std::string, Value>>& props = {}) {
    GraphRelation out;
    out.schema.push_back(Attribute{name, std::nullopt});
    for (const auto& n : g.nodes) {
        bool ok = true;
        for (const auto& l : labels) {
            if (!g.node_has_label(n.id, l)) {
                ok = false;
                break;
            }
        }
        if (!ok) continue;
        for (const auto& [k, v] : props) {
            auto it = n.props.find(k);
            if (it == n.props.end()) {
                ok = false;
                break;
            }
            auto eq = value_ops::eq3(it->second, v);
            if (!eq.has_value() || !*eq) {
                ok = false;
                break;
            }
        }
        if (ok) out.add_row({Value::node(n.id)});
    }
    return out;
}

namespace detail {

inline bool rel_matches(const PropertyGraph::Relationship& r, const std::string& rel_type,
                        const std::vector<std::pair<std::string, Value>>& props) {
    if (!rel_type.empty() && r.type != rel_type) return false;
    for (const auto& [k, v] : props) {
        auto it = r.props.find(k);
        if (it == r.props.end()) return false;
        auto eq = value_ops::eq3(it->second, v);
        if (!eq.has_value() || !*eq) return false;
    }
    return true;
}

/// Variable-length traversal: every relationship-distinct path of admissible
/// length starting at `start`, as (relationship list, end node) pairs. A
/// zero-length path carries no type constraint.
inline void enumerate_paths(const PropertyGraph& g, NodeId start,
                            RelationshipPattern::Dir dir, const std::string& rel_type,
                            const std::vector<std::pair<std::string, Value>>& props,
                            uint32_t min_len, uint32_t max_len,
                            std::vector<std::pair<std::vector<RelId>, NodeId>>& out) {
    std::vector<RelId> path;
    std::vector<bool> used(g.relationships.size(), false);
    std::function<void(NodeId, uint32_t)> walk = [&](NodeId at, uint32_t depth) {
        if (depth >= min_len) out.emplace_back(path, at);
        if (depth >= max_len) return;
        auto follow = [&](RelId rid, NodeId next) {
            if (used[rid]) return;
            if (!rel_matches(g.rel(rid), rel_type, props)) return;
            used[rid] = true;
            path.push_back(rid);
            walk(next, depth + 1);
            path.pop_back();
            used[rid] = false;
        };
        if (dir == RelationshipPattern::Dir::Out || dir == RelationshipPattern::Dir::Both) {
            for (RelId rid : g.out_edges[at]) follow(rid, g.rel(rid).dst);
        }
        if (dir == RelationshipPattern::Dir::In || dir == RelationshipPattern::Dir::Both) {
            for (RelId rid : g.in_edges[at]) follow(rid, g.rel(rid).src);
        }
    };
    walk(start, 0);
}

} // namespace detail

/// Expand: extends each row with relationship column `e` and target
/// column `y` reachable from the node in column `x`. When `y` or `e` already
/// exist the traversal result must agree with the present value instead of
/// adding a column. Variable-length ranges bind `e` to the relationship list.
inline GraphRelation expand(const PropertyGraph& g, const GraphRelation& r,
                            const std::string& x, const std::string& y,
                            const std::string& e, RelationshipPattern::Dir dir,
                            const std::string& rel_type,
                            const std::vector<std::pair<std::string, Value>>& props,
                            const std::optional<RelationshipPattern::Range>& range,
                            const ExecOptions& opts = {}) {
    auto xcol = r.column(x);
    if (!xcol) throw validation_error("expand: attribute '" + x + "' missing");
    auto ycol = r.column(y);
    auto ecol = e.empty() ? std::nullopt : r.column(e);

    GraphRelation out;
    out.schema = r.schema;
    std::optional<size_t> new_e, new_y;
    if (!e.empty() && !ecol) {
        out.schema.push_back(Attribute{e, std::nullopt});
        new_e = out.schema.size() - 1;
    }
    if (!ycol) {
        out.schema.push_back(Attribute{y, std::nullopt});
        new_y = out.schema.size() - 1;
    }

    auto emit = [&](const std::vector<Value>& row, Value ev, Value yv) {
        if (ycol) {
            auto eq = value_ops::eq3(row[*ycol], yv);
            if (!eq.has_value() || !*eq) return;
        }
        if (ecol) {
            auto eq = value_ops::eq3(row[*ecol], ev);
            if (!eq.has_value() || !*eq) return;
        }
        std::vector<Value> next = row;
        if (new_e) next.push_back(std::move(ev));
        if (new_y) next.push_back(std::move(yv));
        out.add_row(std::move(next));
    };

    for (const auto& row : r.rows) {
        const Value& xv = row[*xcol];
        if (xv.kind != Value::Kind::Node) continue;
        NodeId at = xv.id;
        if (!range) {
            auto follow = [&](RelId rid, NodeId next) {
                if (!detail::rel_matches(g.rel(rid), rel_type, props)) return;
                emit(row, Value::rel(rid), Value::node(next));
            };
            if (dir == RelationshipPattern::Dir::Out || dir == RelationshipPattern::Dir::Both) {
                for (RelId rid : g.out_edges[at]) follow(rid, g.rel(rid).dst);
            }
            if (dir == RelationshipPattern::Dir::In || dir == RelationshipPattern::Dir::Both) {
                for (RelId rid : g.in_edges[at]) follow(rid, g.rel(rid).src);
            }
            continue;
        }
        uint32_t max_len = range->max ? *range->max : opts.max_path_depth;
        max_len = std::min(max_len, opts.max_path_depth);
        std::vector<std::pair<std::vector<RelId>, NodeId>> paths;
        detail::enumerate_paths(g, at, dir, rel_type, props, range->min, max_len, paths);
        for (auto& [rels, target] : paths) {
            std::vector<Value> rel_list;
            rel_list.reserve(rels.size());
            for (RelId rid : rels) rel_list.push_back(Value::rel(rid));
            emit(row, Value::of_list(std::move(rel_list)), Value::node(target));
        }
    }
    return out;
}

inline GraphRelation expand_out(const PropertyGraph& g, const GraphRelation& r,
                                const std::string& x, const std::string& y,
                                const std::string& e, const std::string& rel_type = {},
                                const std::optional<RelationshipPattern::Range>& range = {},
                                const ExecOptions& opts = {}) {
    return expand(g, r, x, y, e, RelationshipPattern::Dir::Out, rel_type, {}, range, opts);
}

inline GraphRelation expand_in(const PropertyGraph& g, const GraphRelation& r,
                               const std::string& x, const std::string& y,
                               const std::string& e, const std::string& rel_type = {},
                               const std::optional<RelationshipPattern::Range>& range = {},
                               const ExecOptions& opts = {}) {
    return expand(g, r, x, y, e, RelationshipPattern::Dir::In, rel_type, {}, range, opts);
}

namespace detail {

inline GraphRelation filter_node_constraints(const PropertyGraph& g, GraphRelation r,
                                             const std::string& col,
                                             const NodePattern& n) {
    if (n.labels.empty() && n.properties.empty()) return r;
    auto idx = r.column(col);
    if (!idx) throw validation_error("pattern column missing: " + col);
    return relation_ops::filter(r, [&](const std::vector<Value>& row) {
        const Value& v = row[*idx];
        if (v.kind != Value::Kind::Node) return false;
        for (const auto& l : n.labels) {
            if (!g.node_has_label(v.id, l)) return false;
        }
        for (const auto& [k, want] : n.properties) {
            const Value* have = g.node_prop(v.id, k);
            if (!have) return false;
            auto eq = value_ops::eq3(*have, want);
            if (!eq.has_value() || !*eq) return false;
        }
        return true;
    });
}

/// Pattern matching for one path pattern via GetNodes + Expand.
inline GraphRelation match_path(const PropertyGraph& g, const PathPattern& p,
                                const ExecOptions& opts) {
    if (p.head.name.empty()) throw validation_error("unnamed node pattern in exec");
    GraphRelation rel = get_nodes(g, p.head.name, p.head.labels, p.head.properties);
    std::string prev = p.head.name;
    for (const auto& [r, node] : p.tail) {
        if (node.name.empty() || r.name.empty()) {
            throw validation_error("unnamed pattern element in exec");
        }
        rel = expand(g, rel, prev, node.name, r.name, r.direction, r.rel_type,
                     r.properties, r.range, opts);
        rel = filter_node_constraints(g, std::move(rel), node.name, node);
        prev = node.name;
    }
    return rel;
}

inline GraphRelation unit_relation() {
    GraphRelation r;
    r.rows.emplace_back();
    return r;
}

inline GraphRelation match_patterns(const PropertyGraph& g,
                                    const std::vector<PathPattern>& patterns,
                                    const ExecOptions& opts) {
    GraphRelation acc = unit_relation();
    for (const auto& p : patterns) {
        acc = relation_ops::join(acc, match_path(g, p, opts), /*null_tolerant=*/false);
    }
    return acc;
}

/// Evaluates a WHERE expression over one row; three-valued logic.
inline Value eval_cexpr(const CypherExpr& e, const std::vector<Value>& row,
                        const GraphRelation& rel, const PropertyGraph& g) {
    switch (e.kind) {
        case CypherExpr::Kind::Ident: {
            auto col = rel.column(e.target);
            if (!col) throw validation_error("unbound name in expression: " + e.target);
            return row[*col];
        }
        case CypherExpr::Kind::PropAccess: {
            auto col = rel.column(e.target);
            if (!col) throw validation_error("unbound name in expression: " + e.target);
            const Value& v = row[*col];
            if (v.kind == Value::Kind::Node) {
                const Value* p = g.node_prop(v.id, e.key);
                return p ? *p : Value::null();
            }
            if (v.kind == Value::Kind::Rel) {
                const auto& props = g.rel(v.id).props;
                auto it = props.find(e.key);
                return it == props.end() ? Value::null() : it->second;
            }
            return Value::null();
        }
        case CypherExpr::Kind::LabelsFn: {
            auto col = rel.column(e.target);
            if (!col) throw validation_error("unbound name in expression: " + e.target);
            const Value& v = row[*col];
            if (v.kind != Value::Kind::Node) return Value::null();
            std::vector<Value> labels;
            for (const auto& l : g.node(v.id).labels) labels.push_back(Value::iri(l));
            return Value::of_list(std::move(labels));
        }
        case CypherExpr::Kind::TypeFn: {
            auto col = rel.column(e.target);
            if (!col) throw validation_error("unbound name in expression: " + e.target);
            const Value& v = row[*col];
            if (v.kind != Value::Kind::Rel) return Value::null();
            return Value::iri(g.rel(v.id).type);
        }
        case CypherExpr::Kind::Const:
            return e.const_value;
        case CypherExpr::Kind::Cmp: {
            Value l = eval_cexpr(*e.children[0], row, rel, g);
            Value r = eval_cexpr(*e.children[1], row, rel, g);
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
        case CypherExpr::Kind::And:
        case CypherExpr::Kind::Or: {
            Value l = eval_cexpr(*e.children[0], row, rel, g);
            Value r = eval_cexpr(*e.children[1], row, rel, g);
            bool want = e.kind == CypherExpr::Kind::Or;
            // Kleene three-valued and/or
            if (l.kind == Value::Kind::Bool && l.boolean == want) return Value::of_bool(want);
            if (r.kind == Value::Kind::Bool && r.boolean == want) return Value::of_bool(want);
            if (l.kind == Value::Kind::Bool && r.kind == Value::Kind::Bool) {
                return Value::of_bool(want ? (l.boolean || r.boolean)
                                           : (l.boolean && r.boolean));
            }
            return Value::null();
        }
        case CypherExpr::Kind::Not: {
            Value v = eval_cexpr(*e.children[0], row, rel, g);
            if (v.kind != Value::Kind::Bool) return Value::null();
            return Value::of_bool(!v.boolean);
        }
    }
    return Value::null();
}

inline GraphRelation filter_where(const PropertyGraph& g, const GraphRelation& rel,
                                  const CypherExprPtr& where) {
    if (!where) {
        return rel;
    }
    return relation_ops::filter(rel, [&](const std::vector<Value>& row) {
        Value v = eval_cexpr(*where, row, rel, g);
        return v.kind == Value::Kind::Bool && v.boolean;
    });
}

inline Value return_item_value(const ReturnItem& item, const std::vector<Value>& row,
                               const GraphRelation& rel, const PropertyGraph& g) {
    switch (item.kind) {
        case ReturnItem::Kind::Node:
        case ReturnItem::Kind::Relationship: {
            auto col = rel.column(item.target);
            if (!col) throw validation_error("RETURN references unbound name: " + item.target);
            return row[*col];
        }
        case ReturnItem::Kind::PropertyAccess:
            return eval_cexpr(*CypherExpr::prop(item.target, item.key), row, rel, g);
        case ReturnItem::Kind::LabelsFn:
            return eval_cexpr(*CypherExpr::fn(CypherExpr::Kind::LabelsFn, item.target), row,
                              rel, g);
        case ReturnItem::Kind::TypeFn:
            return eval_cexpr(*CypherExpr::fn(CypherExpr::Kind::TypeFn, item.target), row,
                              rel, g);
        case ReturnItem::Kind::NullConst:
            return Value::null();
        case ReturnItem::Kind::Aggregate:
            throw validation_error("aggregate outside the modifier pipeline");
    }
    return Value::null();
}

/// Display text for an output attribute (schemas shown in reports/tests).
inline std::string return_item_display(const ReturnItem& item, const PrefixMap& prefixes) {
    if (!item.alias.empty()) return item.alias;
    switch (item.kind) {
        case ReturnItem::Kind::Node:
        case ReturnItem::Kind::Relationship: return item.target;
        case ReturnItem::Kind::PropertyAccess:
            return item.target + "." + prefixes.display(item.key);
        case ReturnItem::Kind::LabelsFn: return "labels(" + item.target + ")";
        case ReturnItem::Kind::TypeFn: return "type(" + item.target + ")";
        case ReturnItem::Kind::NullConst: return "NULL";
        case ReturnItem::Kind::Aggregate: return "aggregate";
    }
    return "?";
}

inline GraphRelation exec_single(const CypherQuery& q, const PropertyGraph& g,
                                 const ExecOptions& opts) {
    // pattern match each clause, inner-join everything
    GraphRelation acc = unit_relation();
    for (const auto& mc : q.match_clauses) {
        acc = relation_ops::join(acc, match_patterns(g, mc.patterns, opts), false);
    }
    // left outer join per OPTIONAL MATCH, arm filter applied inside
    for (const auto& om : q.optional_matches) {
        GraphRelation arm = match_patterns(g, om.patterns, opts);
        arm = filter_where(g, arm, om.where);
        acc = relation_ops::left_join(acc, arm, false);
    }
    acc = filter_where(g, acc, q.where);

    // projection + solution modifiers
    std::vector<OutputItem> items;
    for (const auto& item : q.return_items) {
        OutputItem oi;
        oi.var = item.var;
        oi.aggregate = item.kind == ReturnItem::Kind::Aggregate;
        oi.fn = item.fn;
        items.push_back(std::move(oi));
    }
    ElementResolver resolver = g.uri_resolver();

    auto item_value = [&](const std::vector<Value>& row, size_t i) {
        return return_item_value(q.return_items[i], row, acc, g);
    };
    auto agg_arg_value = [&](const std::vector<Value>& row, size_t i) {
        const ReturnItem& item = q.return_items[i];
        ReturnItem arg;
        arg.kind = item.arg_kind;
        arg.target = item.target;
        arg.key = item.arg_key;
        return return_item_value(arg, row, acc, g);
    };

    std::vector<OrderSpec<std::vector<Value>>> order;
    for (const auto& [item, desc] : q.order) {
        OrderSpec<std::vector<Value>> spec;
        spec.descending = desc;
        // resolve against an output column by variable or alias first
        for (size_t i = 0; i < q.return_items.size(); ++i) {
            const auto& out = q.return_items[i];
            if ((!item.var.empty() && out.var == item.var) ||
                (!item.alias.empty() && out.alias == item.alias)) {
                spec.output_item = i;
                break;
            }
        }
        if (!spec.output_item) {
            ReturnItem key_item = item;
            spec.key = [&, key_item](const std::vector<Value>& row) {
                return return_item_value(key_item, row, acc, g);
            };
        }
        order.push_back(std::move(spec));
    }

    auto rows = apply_solution_modifiers<std::vector<Value>>(
        acc.rows, items, item_value, agg_arg_value, order, q.distinct, q.skip, q.limit,
        &resolver);

    GraphRelation out;
    for (const auto& item : q.return_items) {
        out.schema.push_back(Attribute{return_item_display(item, q.prefixes),
                                       item.var.empty() ? std::nullopt
                                                        : std::make_optional(item.var)});
    }
    out.rows = std::move(rows);
    return out;
}

} // namespace detail

/// exec: graph-relational semantics of a translated query over a property
/// graph: pattern matching, joins and filters, outer union across UNION
/// arms, then the solution modifier pipeline.
inline GraphRelation exec(const CypherQuery& q, const PropertyGraph& g,
                          const ExecOptions& opts = {}) {
    GraphRelation out = detail::exec_single(q, g, opts);
    if (q.union_with) {
        if (q.union_with->return_items.size() != q.return_items.size()) {
            throw Error(Error::Kind::UnunifiableUnion,
                        "UNION arms return different numbers of items");
        }
        out = relation_ops::outer_union(out, exec(*q.union_with, g, opts));
    }
    return out;
}

} // namespace s2c
