#pragma once

#include <set>
#include <string>
#include <vector>

#include "s2c/graph_relation.hpp"
#include "s2c/property_graph.hpp"
#include "s2c/sparql_eval.hpp"

namespace s2c {

/// zeta: graph relation to mapping set. Each row becomes a mapping over the
/// variable-flagged attributes whose values are non-NULL; other attributes
/// are dropped. Values must already live in URI space (terms).
inline MappingSet zeta(const GraphRelation& r) {
    MappingSet out;
    for (const auto& row : r.rows) {
        Mapping mu;
        for (size_t i = 0; i < r.schema.size(); ++i) {
            if (!r.schema[i].var || row[i].is_null()) continue;
            const Value& v = row[i];
            if (v.kind == Value::Kind::Node || v.kind == Value::Kind::Rel) {
                throw validation_error("zeta over id-space values; apply xi first");
            }
            if (v.kind == Value::Kind::List) {
                // no term form exists; keep a sentinel so mismatches surface
                mu.emplace(*r.schema[i].var,
                           RdfTerm::literal(value_ops::encode(v), "s2c:list"));
                continue;
            }
            mu.emplace(*r.schema[i].var, v.to_term());
        }
        out.rows.push_back(std::move(mu));
    }
    return out;
}

/// xi: id space to URI space. Renames relationship-valued attributes to their
/// relationship type IRI, replaces node identifiers by the `uri` property,
/// and relationship identifiers by their type. Singleton label lists become
/// the label term itself. Requires the graph to satisfy the no-duplicate-
/// relationship-type assumption between any node pair.
inline GraphRelation xi(const GraphRelation& r, const PropertyGraph& g,
                        const PrefixMap& prefixes = {}) {
    std::set<std::string> pair_types;
    for (const auto& rel : g.relationships) {
        std::string key = std::to_string(rel.src) + ">" + std::to_string(rel.dst) + ":" +
                          rel.type;
        if (!pair_types.insert(std::move(key)).second) {
            throw Error(Error::Kind::AmbiguousRelationship,
                        "duplicate relationship type '" + rel.type +
                        "' between one node pair");
        }
    }

    std::function<Value(const Value&)> interpret = [&](const Value& v) -> Value {
        switch (v.kind) {
            case Value::Kind::Node: {
                std::string uri = g.node_uri(v.id);
                if (uri.rfind("_:", 0) == 0) return Value::blank(uri);
                return Value::iri(uri);
            }
            case Value::Kind::Rel:
                return Value::iri(g.rel(v.id).type);
            case Value::Kind::List: {
                std::vector<Value> mapped;
                mapped.reserve(v.list.size());
                for (const auto& x : v.list) mapped.push_back(interpret(x));
                if (mapped.size() == 1) return mapped[0];
                return Value::of_list(std::move(mapped));
            }
            default:
                return v;
        }
    };

    GraphRelation out;
    out.schema = r.schema;
    // attributes holding relationships of one single type take that type's
    // IRI as display name (variable-named columns keep their name)
    for (size_t i = 0; i < out.schema.size(); ++i) {
        if (out.schema[i].var) continue;
        std::string the_type;
        bool all_rel = true, any = false;
        for (const auto& row : r.rows) {
            const Value& v = row[i];
            if (v.is_null()) continue;
            if (v.kind != Value::Kind::Rel) {
                all_rel = false;
                break;
            }
            any = true;
            const std::string& t = g.rel(v.id).type;
            if (the_type.empty()) the_type = t;
            else if (the_type != t) all_rel = false;
        }
        if (any && all_rel && !the_type.empty()) {
            out.schema[i].display = prefixes.display(the_type);
        }
    }
    for (const auto& row : r.rows) {
        std::vector<Value> mapped;
        mapped.reserve(row.size());
        for (const auto& v : row) mapped.push_back(interpret(v));
        out.add_row(std::move(mapped));
    }
    return out;
}

} // namespace s2c
