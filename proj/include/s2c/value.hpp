#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "s2c/rdf_model.hpp"

namespace s2c {

/// A cell value in a graph relation or a solution mapping: RDF terms on the
/// SPARQL side, node/relationship references and property values on the
/// Cypher side, lists for labels() results.
struct Value {
    enum class Kind { Null, Bool, Num, Str, Iri, Blank, Node, Rel, List };

    Kind kind = Kind::Null;
    bool boolean = false;
    double num = 0.0;
    uint32_t id = 0;          // Node / Rel reference
    std::string str;          // Str lexical, Iri text, Blank label
    std::vector<Value> list;

    static Value null() { return {}; }
    static Value of_bool(bool b) { Value v; v.kind = Kind::Bool; v.boolean = b; return v; }
    static Value number(double d) { Value v; v.kind = Kind::Num; v.num = d; return v; }
    static Value string(std::string s) { Value v; v.kind = Kind::Str; v.str = std::move(s); return v; }
    static Value iri(std::string s) { Value v; v.kind = Kind::Iri; v.str = std::move(s); return v; }
    static Value blank(std::string s) { Value v; v.kind = Kind::Blank; v.str = std::move(s); return v; }
    static Value node(uint32_t n) { Value v; v.kind = Kind::Node; v.id = n; return v; }
    static Value rel(uint32_t r) { Value v; v.kind = Kind::Rel; v.id = r; return v; }
    static Value of_list(std::vector<Value> xs) {
        Value v; v.kind = Kind::List; v.list = std::move(xs); return v;
    }

    bool is_null() const { return kind == Kind::Null; }

    /// Literal terms with a numeric datatype become numbers; everything else
    /// keeps its lexical form (language tags are dropped for comparison).
    static Value from_term(const RdfTerm& t) {
        switch (t.kind) {
            case TermKind::Iri: return iri(t.lexical);
            case TermKind::BlankNode: return blank(t.lexical);
            case TermKind::Literal:
                if (is_numeric_datatype(t.datatype)) {
                    try {
                        size_t used = 0;
                        double d = std::stod(t.lexical, &used);
                        if (used == t.lexical.size()) return number(d);
                    } catch (...) {
                        // fall through to string
                    }
                }
                return string(t.lexical);
        }
        return null();
    }

    /// Inverse of from_term for interpretation back into term space. A string
    /// beginning with "_:" denotes a blank node carried through a `uri` slot.
    RdfTerm to_term() const {
        switch (kind) {
            case Kind::Iri: return RdfTerm::iri(str);
            case Kind::Blank: return RdfTerm::blank(str);
            case Kind::Num: {
                std::string lex = canonical_number(num);
                bool integral = lex.find('.') == std::string::npos &&
                                lex.find('e') == std::string::npos;
                return RdfTerm::literal(lex, integral ? kXsdInteger : kXsdDouble);
            }
            case Kind::Str:
                if (str.rfind("_:", 0) == 0) return RdfTerm::blank(str);
                return RdfTerm::literal(str);
            case Kind::Bool: return RdfTerm::literal(boolean ? "true" : "false");
            default:
                throw validation_error("value is not representable as an RDF term");
        }
    }

    static std::string canonical_number(double d) {
        if (std::floor(d) == d && std::fabs(d) < 9.0e15) {
            return std::to_string(static_cast<long long>(d));
        }
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", d);
        return buf;
    }
};

/// Resolves graph-element references for ordering / canonical encoding:
/// nodes to their URI string, relationships to their type IRI.
using ElementResolver = std::function<Value(const Value&)>;

namespace value_ops {

/// Three-valued equality. Any NULL operand yields "unknown" (nullopt).
/// Resources (IRIs, blank nodes) compare by identity, so a cross-category
/// comparison against a literal or a different resource kind is definitely
/// false; only literal-vs-literal kind mismatches are type errors.
inline std::optional<bool> eq3(const Value& a, const Value& b) {
    if (a.is_null() || b.is_null()) return std::nullopt;
    auto is_resource = [](Value::Kind k) {
        return k == Value::Kind::Iri || k == Value::Kind::Blank;
    };
    if (a.kind != b.kind) {
        if (is_resource(a.kind) || is_resource(b.kind)) return false;
        return std::nullopt;
    }
    switch (a.kind) {
        case Value::Kind::Bool: return a.boolean == b.boolean;
        case Value::Kind::Num: return a.num == b.num;
        case Value::Kind::Str:
        case Value::Kind::Iri:
        case Value::Kind::Blank: return a.str == b.str;
        case Value::Kind::Node:
        case Value::Kind::Rel: return a.id == b.id;
        case Value::Kind::List: {
            if (a.list.size() != b.list.size()) return false;
            for (size_t i = 0; i < a.list.size(); ++i) {
                auto e = eq3(a.list[i], b.list[i]);
                if (!e.has_value()) return std::nullopt;
                if (!*e) return false;
            }
            return true;
        }
        default: return std::nullopt;
    }
}

/// Three-valued ordering comparison; defined for number/number and
/// string/string only (matching the filter operators we support).
inline std::optional<int> cmp3(const Value& a, const Value& b) {
    if (a.kind == Value::Kind::Num && b.kind == Value::Kind::Num) {
        if (a.num < b.num) return -1;
        if (a.num > b.num) return 1;
        return 0;
    }
    if (a.kind == Value::Kind::Str && b.kind == Value::Kind::Str) {
        int c = a.str.compare(b.str);
        return c < 0 ? -1 : (c > 0 ? 1 : 0);
    }
    return std::nullopt;
}

inline int kind_rank(Value::Kind k) {
    switch (k) {
        case Value::Kind::Num: return 0;
        case Value::Kind::Bool: return 1;
        case Value::Kind::Str: return 2;
        case Value::Kind::Iri: return 3;
        case Value::Kind::Blank: return 4;
        case Value::Kind::Node: return 5;
        case Value::Kind::Rel: return 6;
        case Value::Kind::List: return 7;
        case Value::Kind::Null: return 8;  // NULL sorts last ascending
    }
    return 9;
}

/// Deterministic total order used by ORDER BY and canonical encodings.
/// Graph elements are resolved to URI space first when a resolver is given,
/// so both evaluation engines sort identically.
inline int total_order(const Value& a, const Value& b, const ElementResolver* resolve) {
    const Value* pa = &a;
    const Value* pb = &b;
    Value ra, rb;
    if (resolve) {
        if (a.kind == Value::Kind::Node || a.kind == Value::Kind::Rel) { ra = (*resolve)(a); pa = &ra; }
        if (b.kind == Value::Kind::Node || b.kind == Value::Kind::Rel) { rb = (*resolve)(b); pb = &rb; }
    }
    int rka = kind_rank(pa->kind), rkb = kind_rank(pb->kind);
    if (rka != rkb) return rka < rkb ? -1 : 1;
    switch (pa->kind) {
        case Value::Kind::Null: return 0;
        case Value::Kind::Bool: return (pa->boolean == pb->boolean) ? 0 : (pa->boolean ? 1 : -1);
        case Value::Kind::Num:
            if (pa->num < pb->num) return -1;
            if (pa->num > pb->num) return 1;
            return 0;
        case Value::Kind::Str:
        case Value::Kind::Iri:
        case Value::Kind::Blank: {
            int c = pa->str.compare(pb->str);
            return c < 0 ? -1 : (c > 0 ? 1 : 0);
        }
        case Value::Kind::Node:
        case Value::Kind::Rel:
            return pa->id == pb->id ? 0 : (pa->id < pb->id ? -1 : 1);
        case Value::Kind::List: {
            size_t n = std::min(pa->list.size(), pb->list.size());
            for (size_t i = 0; i < n; ++i) {
                int c = total_order(pa->list[i], pb->list[i], resolve);
                if (c != 0) return c;
            }
            if (pa->list.size() == pb->list.size()) return 0;
            return pa->list.size() < pb->list.size() ? -1 : 1;
        }
    }
    return 0;
}

inline std::string encode(const Value& v, const ElementResolver* resolve = nullptr) {
    const Value* p = &v;
    Value r;
    if (resolve && (v.kind == Value::Kind::Node || v.kind == Value::Kind::Rel)) {
        r = (*resolve)(v);
        p = &r;
    }
    switch (p->kind) {
        case Value::Kind::Null: return "NULL";
        case Value::Kind::Bool: return p->boolean ? "B:1" : "B:0";
        case Value::Kind::Num: return "N:" + Value::canonical_number(p->num);
        case Value::Kind::Str: return "S:" + p->str;
        case Value::Kind::Iri: return "I:" + p->str;
        case Value::Kind::Blank:
            return p->str.rfind("_:", 0) == 0 ? p->str : "_:" + p->str;
        case Value::Kind::Node: return "n#" + std::to_string(p->id);
        case Value::Kind::Rel: return "r#" + std::to_string(p->id);
        case Value::Kind::List: {
            std::string out = "L:[";
            for (size_t i = 0; i < p->list.size(); ++i) {
                if (i) out.push_back(',');
                out += encode(p->list[i], resolve);
            }
            out.push_back(']');
            return out;
        }
    }
    return "?";
}

} // namespace value_ops
} // namespace s2c
