#pragma once

#include <sstream>
#include <string>

#include "s2c/cypher_ast.hpp"

namespace s2c {

/// Backtick-quotes an identifier unless it is a plain word; internal
/// backticks are doubled.
inline std::string escape_identifier(const std::string& s) {
    bool plain = !s.empty() && (std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_');
    if (plain) {
        for (char c : s) {
            if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') {
                plain = false;
                break;
            }
        }
    }
    if (plain) return s;
    std::string out = "`";
    for (char c : s) {
        out.push_back(c);
        if (c == '`') out.push_back('`');
    }
    out.push_back('`');
    return out;
}

namespace detail {

inline std::string display_ident(const std::string& iri, const PrefixMap& prefixes) {
    return escape_identifier(prefixes.display(iri));
}

inline std::string render_value(const Value& v) {
    switch (v.kind) {
        case Value::Kind::Null: return "NULL";
        case Value::Kind::Bool: return v.boolean ? "true" : "false";
        case Value::Kind::Num: return Value::canonical_number(v.num);
        case Value::Kind::Str:
        case Value::Kind::Iri:
        case Value::Kind::Blank: {
            std::string out = "\"";
            for (char c : v.str) {
                switch (c) {
                    case '"': out += "\\\""; break;
                    case '\\': out += "\\\\"; break;
                    case '\n': out += "\\n"; break;
                    case '\t': out += "\\t"; break;
                    case '\r': out += "\\r"; break;
                    default: out.push_back(c);
                }
            }
            out.push_back('"');
            return out;
        }
        default:
            throw validation_error("value kind not renderable as a Cypher literal");
    }
}

inline std::string render_properties(const std::vector<std::pair<std::string, Value>>& props,
                                     const PrefixMap& prefixes) {
    std::string out = "{";
    bool first = true;
    for (const auto& [key, value] : props) {
        if (!first) out += ", ";
        first = false;
        out += (key == "uri" ? key : display_ident(key, prefixes));
        out += ": ";
        out += render_value(value);
    }
    out.push_back('}');
    return out;
}

inline std::string render_node(const NodePattern& n, const PrefixMap& prefixes) {
    std::string out = "(";
    out += escape_identifier(n.name);
    for (const auto& label : n.labels) {
        out.push_back(':');
        out += display_ident(label, prefixes);
    }
    if (!n.properties.empty()) {
        if (out.size() > 1) out.push_back(' ');
        out += render_properties(n.properties, prefixes);
    }
    out.push_back(')');
    return out;
}

inline std::string render_rel(const RelationshipPattern& r, const PrefixMap& prefixes) {
    std::string body = escape_identifier(r.name);
    if (!r.rel_type.empty()) {
        body.push_back(':');
        body += display_ident(r.rel_type, prefixes);
    }
    if (r.range) {
        body.push_back('*');
        body += std::to_string(r.range->min);
        body += "..";
        if (r.range->max) body += std::to_string(*r.range->max);
    }
    if (!r.properties.empty()) {
        if (!body.empty()) body.push_back(' ');
        body += render_properties(r.properties, prefixes);
    }
    std::string inner = body.empty() ? "" : "[" + body + "]";
    switch (r.direction) {
        case RelationshipPattern::Dir::Out: return "-" + inner + "->";
        case RelationshipPattern::Dir::In: return "<-" + inner + "-";
        case RelationshipPattern::Dir::Both: return "-" + inner + "-";
    }
    return "-" + inner + "->";
}

inline std::string render_path(const PathPattern& p, const PrefixMap& prefixes) {
    std::string out = render_node(p.head, prefixes);
    for (const auto& [rel, node] : p.tail) {
        out += render_rel(rel, prefixes);
        out += render_node(node, prefixes);
    }
    return out;
}

inline std::string render_expr(const CypherExpr& e, const PrefixMap& prefixes) {
    switch (e.kind) {
        case CypherExpr::Kind::Ident:
            return escape_identifier(e.target);
        case CypherExpr::Kind::PropAccess:
            return escape_identifier(e.target) + "." +
                   (e.key == "uri" ? e.key : display_ident(e.key, prefixes));
        case CypherExpr::Kind::LabelsFn:
            return "labels(" + escape_identifier(e.target) + ")";
        case CypherExpr::Kind::TypeFn:
            return "type(" + escape_identifier(e.target) + ")";
        case CypherExpr::Kind::Const:
            return render_value(e.const_value);
        case CypherExpr::Kind::Cmp: {
            const char* op = "=";
            switch (e.op) {
                case CompareOp::Eq: op = "="; break;
                case CompareOp::Ne: op = "<>"; break;
                case CompareOp::Lt: op = "<"; break;
                case CompareOp::Le: op = "<="; break;
                case CompareOp::Gt: op = ">"; break;
                case CompareOp::Ge: op = ">="; break;
            }
            return render_expr(*e.children[0], prefixes) + " " + op + " " +
                   render_expr(*e.children[1], prefixes);
        }
        case CypherExpr::Kind::And:
        case CypherExpr::Kind::Or:
            return "(" + render_expr(*e.children[0], prefixes) +
                   (e.kind == CypherExpr::Kind::And ? " AND " : " OR ") +
                   render_expr(*e.children[1], prefixes) + ")";
        case CypherExpr::Kind::Not:
            return "NOT (" + render_expr(*e.children[0], prefixes) + ")";
    }
    return "";
}

inline std::string render_return_item(const ReturnItem& item, const PrefixMap& prefixes) {
    std::string out;
    switch (item.kind) {
        case ReturnItem::Kind::Node:
        case ReturnItem::Kind::Relationship:
            out = escape_identifier(item.target);
            break;
        case ReturnItem::Kind::PropertyAccess:
            out = escape_identifier(item.target) + "." +
                  (item.key == "uri" ? item.key : display_ident(item.key, prefixes));
            break;
        case ReturnItem::Kind::LabelsFn:
            out = "labels(" + escape_identifier(item.target) + ")";
            break;
        case ReturnItem::Kind::TypeFn:
            out = "type(" + escape_identifier(item.target) + ")";
            break;
        case ReturnItem::Kind::NullConst:
            out = "NULL";
            break;
        case ReturnItem::Kind::Aggregate: {
            const char* fn = "count";
            switch (item.fn) {
                case AggregateFn::Count: fn = "count"; break;
                case AggregateFn::Max: fn = "max"; break;
                case AggregateFn::Min: fn = "min"; break;
                case AggregateFn::Sum: fn = "sum"; break;
                case AggregateFn::Avg: fn = "avg"; break;
            }
            ReturnItem arg;
            arg.kind = item.arg_kind;
            arg.target = item.target;
            arg.key = item.arg_key;
            out = std::string(fn) + "(" + render_return_item(arg, prefixes) + ")";
            break;
        }
    }
    if (!item.alias.empty()) out += " AS " + escape_identifier(item.alias);
    return out;
}

} // namespace detail

/// Renders a query as Cypher text. Clause order: MATCH, OPTIONAL MATCH,
/// WHERE, RETURN [DISTINCT], ORDER BY, SKIP, LIMIT, UNION. With `pretty`
/// each clause goes on its own line.
inline std::string render(const CypherQuery& q, bool pretty = false) {
    const std::string sep = pretty ? "\n" : " ";
    std::vector<std::string> clauses;

    for (const auto& mc : q.match_clauses) {
        std::string m = "MATCH ";
        for (size_t i = 0; i < mc.patterns.size(); ++i) {
            if (i) m += ", ";
            m += detail::render_path(mc.patterns[i], q.prefixes);
        }
        clauses.push_back(std::move(m));
    }
    for (const auto& om : q.optional_matches) {
        std::string m = "OPTIONAL MATCH ";
        for (size_t i = 0; i < om.patterns.size(); ++i) {
            if (i) m += ", ";
            m += detail::render_path(om.patterns[i], q.prefixes);
        }
        if (om.where) m += " WHERE " + detail::render_expr(*om.where, q.prefixes);
        clauses.push_back(std::move(m));
    }
    if (q.where) {
        clauses.push_back("WHERE " + detail::render_expr(*q.where, q.prefixes));
    }

    std::string ret = "RETURN ";
    if (q.distinct) ret += "DISTINCT ";
    for (size_t i = 0; i < q.return_items.size(); ++i) {
        if (i) ret += ", ";
        ret += detail::render_return_item(q.return_items[i], q.prefixes);
    }
    clauses.push_back(std::move(ret));

    if (!q.order.empty()) {
        std::string ob = "ORDER BY ";
        for (size_t i = 0; i < q.order.size(); ++i) {
            if (i) ob += ", ";
            const auto& [item, desc] = q.order[i];
            if (!item.alias.empty()) {
                ob += escape_identifier(item.alias);
            } else {
                ob += detail::render_return_item(item, q.prefixes);
            }
            ob += desc ? " DESC" : " ASC";
        }
        clauses.push_back(std::move(ob));
    }
    if (q.skip) clauses.push_back("SKIP " + std::to_string(*q.skip));
    if (q.limit) clauses.push_back("LIMIT " + std::to_string(*q.limit));

    std::string out;
    for (size_t i = 0; i < clauses.size(); ++i) {
        if (i) out += sep;
        out += clauses[i];
    }
    if (q.union_with) {
        if (q.union_with->return_items.size() != q.return_items.size()) {
            throw Error(Error::Kind::UnunifiableUnion,
                        "UNION arms return different numbers of items");
        }
        out += sep + "UNION" + sep + render(*q.union_with, pretty);
    }
    return out;
}

} // namespace s2c
