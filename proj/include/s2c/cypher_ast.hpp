#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "s2c/rdf_model.hpp"
#include "s2c/sparql_ast.hpp"
#include "s2c/value.hpp"

namespace s2c {

/// Node pattern: (name, labels, properties). Labels and property keys are
/// stored as full IRIs; display prefixing happens at render time. Label and
/// property order is kept sorted for deterministic output.
struct NodePattern {
    std::string name;  // empty = anonymous
    std::vector<std::string> labels;
    std::vector<std::pair<std::string, Value>> properties;

    void add_label(const std::string& label) {
        auto it = std::lower_bound(labels.begin(), labels.end(), label);
        if (it == labels.end() || *it != label) labels.insert(it, label);
    }

    void add_property(const std::string& key, Value v) {
        for (auto& [k, existing] : properties) {
            if (k == key) {
                existing = std::move(v);
                return;
            }
        }
        properties.emplace_back(key, std::move(v));
        std::sort(properties.begin(), properties.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
    }

    const Value* property(const std::string& key) const {
        for (const auto& [k, v] : properties) {
            if (k == key) return &v;
        }
        return nullptr;
    }
};

/// Relationship pattern: (direction, name, type, properties, range).
struct RelationshipPattern {
    enum class Dir { Out, In, Both };

    struct Range {
        uint32_t min = 1;
        std::optional<uint32_t> max;  // absent = unbounded

        bool operator==(const Range&) const = default;
    };

    Dir direction = Dir::Out;
    std::string name;      // empty = anonymous
    std::string rel_type;  // empty = any type
    std::vector<std::pair<std::string, Value>> properties;
    std::optional<Range> range;  // absent = single hop
};

/// Path pattern: an alternating node / relationship chain starting and
/// ending with a node.
struct PathPattern {
    NodePattern head;
    std::vector<std::pair<RelationshipPattern, NodePattern>> tail;

    size_t node_count() const { return 1 + tail.size(); }

    NodePattern* find_node(const std::string& name) {
        if (head.name == name) return &head;
        for (auto& [rel, node] : tail) {
            if (node.name == name) return &node;
        }
        return nullptr;
    }
    const NodePattern* find_node(const std::string& name) const {
        return const_cast<PathPattern*>(this)->find_node(name);
    }

    NodePattern& start() { return head; }
    NodePattern& end() { return tail.empty() ? head : tail.back().second; }
    const NodePattern& start() const { return head; }
    const NodePattern& end() const { return tail.empty() ? head : tail.back().second; }
};

/// WHERE-clause expression over pattern names.
struct CypherExpr {
    enum class Kind { Ident, PropAccess, LabelsFn, TypeFn, Const, Cmp, And, Or, Not };

    Kind kind = Kind::Ident;
    std::string target;  // Ident / PropAccess / LabelsFn / TypeFn
    std::string key;     // PropAccess property key (full IRI or "uri")
    Value const_value;   // Const
    CompareOp op = CompareOp::Eq;  // Cmp
    std::vector<std::shared_ptr<const CypherExpr>> children;

    static std::shared_ptr<const CypherExpr> ident(std::string name) {
        auto e = std::make_shared<CypherExpr>();
        e->kind = Kind::Ident; e->target = std::move(name);
        return e;
    }
    static std::shared_ptr<const CypherExpr> prop(std::string target, std::string key) {
        auto e = std::make_shared<CypherExpr>();
        e->kind = Kind::PropAccess; e->target = std::move(target); e->key = std::move(key);
        return e;
    }
    static std::shared_ptr<const CypherExpr> fn(Kind k, std::string target) {
        auto e = std::make_shared<CypherExpr>();
        e->kind = k; e->target = std::move(target);
        return e;
    }
    static std::shared_ptr<const CypherExpr> constant(Value v) {
        auto e = std::make_shared<CypherExpr>();
        e->kind = Kind::Const; e->const_value = std::move(v);
        return e;
    }
    static std::shared_ptr<const CypherExpr> cmp(CompareOp op,
                                                 std::shared_ptr<const CypherExpr> l,
                                                 std::shared_ptr<const CypherExpr> r) {
        auto e = std::make_shared<CypherExpr>();
        e->kind = Kind::Cmp; e->op = op; e->children = {std::move(l), std::move(r)};
        return e;
    }
    static std::shared_ptr<const CypherExpr> logical(
        Kind k, std::vector<std::shared_ptr<const CypherExpr>> ch) {
        auto e = std::make_shared<CypherExpr>();
        e->kind = k; e->children = std::move(ch);
        return e;
    }
};

using CypherExprPtr = std::shared_ptr<const CypherExpr>;

inline CypherExprPtr and_together(CypherExprPtr a, CypherExprPtr b) {
    if (!a) return b;
    if (!b) return a;
    return CypherExpr::logical(CypherExpr::Kind::And, {std::move(a), std::move(b)});
}

/// One RETURN / ORDER BY entry. `var` records which SPARQL variable the item
/// realizes (used by the interpretation functions, never rendered).
struct ReturnItem {
    enum class Kind { Node, Relationship, PropertyAccess, LabelsFn, TypeFn, Aggregate, NullConst };

    Kind kind = Kind::Node;
    std::string target;
    std::string key;         // PropertyAccess
    std::string alias;       // rendered as AS alias when non-empty
    std::string var;         // originating SPARQL variable (internal)
    // aggregate payload
    AggregateFn fn = AggregateFn::Count;
    Kind arg_kind = Kind::Node;
    std::string arg_key;

    static ReturnItem node(std::string name, std::string var = {}) {
        ReturnItem r; r.kind = Kind::Node; r.target = std::move(name); r.var = std::move(var);
        return r;
    }
    static ReturnItem relationship(std::string name, std::string var = {}) {
        ReturnItem r; r.kind = Kind::Relationship; r.target = std::move(name);
        r.var = std::move(var);
        return r;
    }
    static ReturnItem property(std::string target, std::string key, std::string var = {}) {
        ReturnItem r; r.kind = Kind::PropertyAccess; r.target = std::move(target);
        r.key = std::move(key); r.var = std::move(var);
        return r;
    }
    static ReturnItem labels_fn(std::string target, std::string var = {}) {
        ReturnItem r; r.kind = Kind::LabelsFn; r.target = std::move(target);
        r.var = std::move(var);
        return r;
    }
    static ReturnItem type_fn(std::string target, std::string var = {}) {
        ReturnItem r; r.kind = Kind::TypeFn; r.target = std::move(target);
        r.var = std::move(var);
        return r;
    }
    static ReturnItem null_const(std::string alias, std::string var = {}) {
        ReturnItem r; r.kind = Kind::NullConst; r.alias = std::move(alias);
        r.var = std::move(var);
        return r;
    }
};

struct MatchClause {
    std::vector<PathPattern> patterns;
};

struct OptionalMatch {
    std::vector<PathPattern> patterns;
    CypherExprPtr where;  // filter scoped to the optional arm
};

struct CypherQuery {
    PrefixMap prefixes;  // display names for labels/types/keys
    std::vector<MatchClause> match_clauses;
    std::vector<OptionalMatch> optional_matches;
    CypherExprPtr where;
    std::vector<ReturnItem> return_items;
    bool distinct = false;
    std::vector<std::pair<ReturnItem, bool>> order;  // (item, descending)
    std::optional<int64_t> skip;
    std::optional<int64_t> limit;
    std::shared_ptr<CypherQuery> union_with;
};

} // namespace s2c
