#pragma once

#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include <json.hpp>

#include "s2c/rdf_model.hpp"
#include "s2c/sparql_ast.hpp"

namespace s2c {

/// How to resolve predicates that occur with both literal and resource
/// objects. The default refuses: the classification in use presupposes
/// disjoint T and P, and silently picking a side would corrupt translation.
enum class MixedPredicatePolicy { Error, ForceEdge, ForceProperty };

/// The predicate partition driving triple-pattern classification: the
/// relationship-type IRI set T and the property-key IRI set P.
struct SchemaCatalog {
    std::set<std::string> relationship_types;  // T
    std::set<std::string> property_keys;       // P

    bool is_relationship(const std::string& iri) const {
        return relationship_types.count(iri) > 0;
    }
    bool is_property(const std::string& iri) const {
        return property_keys.count(iri) > 0;
    }

    void validate() const {
        for (const auto& t : relationship_types) {
            if (property_keys.count(t)) {
                throw validation_error("catalog lists '" + t +
                                       "' as both relationship type and property key");
            }
        }
        if (relationship_types.count(kRdfTypeIri) || property_keys.count(kRdfTypeIri)) {
            throw validation_error("rdf:type may not appear in the catalog");
        }
    }

    bool operator==(const SchemaCatalog&) const = default;
};

/// Partitions the predicates of `g`: a predicate whose objects are all
/// literals is a property key, one whose objects are all resources is a
/// relationship type. rdf:type is excluded.
inline SchemaCatalog derive_catalog(const RdfGraph& g,
                                    MixedPredicatePolicy policy = MixedPredicatePolicy::Error) {
    std::map<std::string, std::pair<bool, bool>> seen;  // predicate -> (resource obj, literal obj)
    for (const auto& t : g.triples) {
        const std::string& p = t.predicate.lexical;
        if (p == kRdfTypeIri) continue;
        auto& flags = seen[p];
        if (t.object.kind == TermKind::Literal) {
            flags.second = true;
        } else {
            flags.first = true;
        }
    }
    SchemaCatalog cat;
    std::vector<std::string> mixed;
    for (const auto& [p, flags] : seen) {
        if (flags.first && flags.second) {
            switch (policy) {
                case MixedPredicatePolicy::Error:
                    mixed.push_back(p);
                    continue;
                case MixedPredicatePolicy::ForceEdge:
                    cat.relationship_types.insert(p);
                    continue;
                case MixedPredicatePolicy::ForceProperty:
                    cat.property_keys.insert(p);
                    continue;
            }
        }
        if (flags.second) {
            cat.property_keys.insert(p);
        } else {
            cat.relationship_types.insert(p);
        }
    }
    if (!mixed.empty()) {
        std::string msg = "predicate(s) with both literal and resource objects:";
        for (const auto& p : mixed) msg += " " + p;
        throw Error(Error::Kind::MixedPredicate, msg);
    }
    cat.validate();
    return cat;
}

enum class TriplePatternClass { Type, VarEdge, IRIEdge, Property };

/// Classifies a (non-path) triple pattern by its predicate: rdf:type,
/// variable edge, known relationship type, or known property key.
inline TriplePatternClass classify_triple(const TriplePattern& tp, const SchemaCatalog& cat) {
    if (tp.has_path()) {
        throw validation_error("property-path patterns are classified separately");
    }
    if (tp.pp.kind == ElementKind::Iri && tp.pp.lexical == kRdfTypeIri) {
        return TriplePatternClass::Type;
    }
    if (tp.pp.is_var()) return TriplePatternClass::VarEdge;
    if (tp.pp.kind == ElementKind::Iri) {
        if (cat.is_relationship(tp.pp.lexical)) return TriplePatternClass::IRIEdge;
        if (cat.is_property(tp.pp.lexical)) return TriplePatternClass::Property;
        throw Error(Error::Kind::UnknownPredicate,
                    "predicate '" + tp.pp.lexical +
                    "' is neither a relationship type nor a property key");
    }
    throw validation_error("literal predicate pattern");
}

inline SchemaCatalog catalog_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw parse_error(std::string("catalog JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("relationship_types") || !j.contains("property_keys")) {
        throw parse_error("catalog JSON must contain relationship_types and property_keys");
    }
    SchemaCatalog cat;
    for (const auto& x : j.at("relationship_types")) {
        cat.relationship_types.insert(x.get<std::string>());
    }
    for (const auto& x : j.at("property_keys")) {
        cat.property_keys.insert(x.get<std::string>());
    }
    cat.validate();
    return cat;
}

inline std::string catalog_to_json(const SchemaCatalog& cat) {
    nlohmann::json j;
    j["relationship_types"] = cat.relationship_types;
    j["property_keys"] = cat.property_keys;
    return j.dump(2) + "\n";
}

inline SchemaCatalog load_catalog(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open catalog file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return catalog_from_json(ss.str());
}

inline void save_catalog(const SchemaCatalog& cat, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw io_error("cannot write catalog file: " + path);
    out << catalog_to_json(cat);
    if (!out) throw io_error("failed writing catalog file: " + path);
}

} // namespace s2c
