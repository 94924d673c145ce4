#pragma once

#include <map>
#include <ostream>
#include <string>
#include <unordered_map>
#include <vector>

#include "s2c/rdf_model.hpp"
#include "s2c/schema_catalog.hpp"
#include "s2c/value.hpp"

namespace s2c {

using NodeId = uint32_t;
using RelId = uint32_t;

/// In-memory property graph G_c = (N, R, st, L, T, P). Immutable once built;
/// every node carries a `uri` property identifying the source resource.
struct PropertyGraph {
    struct Node {
        NodeId id = 0;
        std::vector<std::string> labels;  // sorted full IRIs
        std::map<std::string, Value> props;
    };
    struct Relationship {
        RelId id = 0;
        NodeId src = 0;
        NodeId dst = 0;
        std::string type;  // full IRI
        std::map<std::string, Value> props;
    };

    std::vector<Node> nodes;
    std::vector<Relationship> relationships;
    std::vector<std::vector<RelId>> out_edges;  // by node id
    std::vector<std::vector<RelId>> in_edges;

    NodeId add_node() {
        Node n;
        n.id = static_cast<NodeId>(nodes.size());
        nodes.push_back(std::move(n));
        out_edges.emplace_back();
        in_edges.emplace_back();
        return nodes.back().id;
    }

    RelId add_relationship(NodeId src, NodeId dst, std::string type) {
        Relationship r;
        r.id = static_cast<RelId>(relationships.size());
        r.src = src;
        r.dst = dst;
        r.type = std::move(type);
        relationships.push_back(std::move(r));
        out_edges[src].push_back(relationships.back().id);
        in_edges[dst].push_back(relationships.back().id);
        return relationships.back().id;
    }

    const Node& node(NodeId id) const { return nodes[id]; }
    const Relationship& rel(RelId id) const { return relationships[id]; }

    bool node_has_label(NodeId id, const std::string& label) const {
        const auto& ls = nodes[id].labels;
        return std::binary_search(ls.begin(), ls.end(), label);
    }

    const Value* node_prop(NodeId id, const std::string& key) const {
        auto it = nodes[id].props.find(key);
        return it == nodes[id].props.end() ? nullptr : &it->second;
    }

    std::string node_uri(NodeId id) const {
        auto it = nodes[id].props.find("uri");
        return it == nodes[id].props.end() ? std::string{} : it->second.str;
    }

    /// Resolver mapping node references to their URI term and relationship
    /// references to their type IRI (ordering / canonical encoding).
    ElementResolver uri_resolver() const {
        return [this](const Value& v) -> Value {
            if (v.kind == Value::Kind::Node) {
                std::string uri = node_uri(v.id);
                if (uri.rfind("_:", 0) == 0) return Value::blank(uri);
                return Value::iri(uri);
            }
            if (v.kind == Value::Kind::Rel) {
                return Value::iri(rel(v.id).type);
            }
            return v;
        };
    }
};

/// neosemantics-style data mapping: subjects and resource objects become
/// nodes carrying a `uri` property, rdf:type triples become labels,
/// property-key triples become node properties, relationship-type triples
/// become typed relationships.
inline PropertyGraph rdf_to_pg(const RdfGraph& g, const SchemaCatalog& cat) {
    PropertyGraph pg;
    std::unordered_map<std::string, NodeId> by_uri;

    auto resource_key = [](const RdfTerm& t) { return t.lexical; };
    auto ensure_node = [&](const RdfTerm& t) -> NodeId {
        std::string key = resource_key(t);
        auto it = by_uri.find(key);
        if (it != by_uri.end()) return it->second;
        NodeId id = pg.add_node();
        pg.nodes[id].props.emplace("uri", Value::string(key));
        by_uri.emplace(std::move(key), id);
        return id;
    };

    for (const auto& t : g.triples) {
        if (t.subject.kind == TermKind::Literal) {
            throw validation_error("literal subject in RDF data");
        }
        const std::string& p = t.predicate.lexical;
        NodeId s = ensure_node(t.subject);
        if (p == kRdfTypeIri) {
            if (t.object.kind == TermKind::Literal) {
                throw validation_error("literal object of rdf:type");
            }
            auto& labels = pg.nodes[s].labels;
            auto it = std::lower_bound(labels.begin(), labels.end(), t.object.lexical);
            if (it == labels.end() || *it != t.object.lexical) {
                labels.insert(it, t.object.lexical);
            }
            continue;
        }
        if (cat.is_property(p)) {
            if (t.object.kind != TermKind::Literal) {
                // triple dropped under a forced mixed-predicate policy
                continue;
            }
            auto [it, inserted] =
                pg.nodes[s].props.emplace(p, Value::from_term(t.object));
            if (!inserted) {
                throw validation_error("multi-valued property '" + p + "' on resource '" +
                                       t.subject.lexical + "'");
            }
            continue;
        }
        if (cat.is_relationship(p)) {
            if (t.object.kind == TermKind::Literal) {
                // triple dropped under a forced mixed-predicate policy
                continue;
            }
            NodeId o = ensure_node(t.object);
            pg.add_relationship(s, o, p);
            continue;
        }
        throw Error(Error::Kind::UnknownPredicate,
                    "data predicate '" + p + "' missing from the catalog");
    }
    return pg;
}

/// Line-oriented debug dump: nodes with labels and properties, then
/// relationships with endpoints and types.
inline void dump(const PropertyGraph& g, std::ostream& os) {
    for (const auto& n : g.nodes) {
        os << "node " << n.id;
        if (!n.labels.empty()) {
            os << " labels=";
            for (size_t i = 0; i < n.labels.size(); ++i) {
                if (i) os << ',';
                os << n.labels[i];
            }
        }
        for (const auto& [k, v] : n.props) {
            os << ' ' << k << '=' << value_ops::encode(v);
        }
        os << '\n';
    }
    for (const auto& r : g.relationships) {
        os << "rel " << r.id << ' ' << r.src << " -> " << r.dst << " type=" << r.type
           << '\n';
    }
}

} // namespace s2c
