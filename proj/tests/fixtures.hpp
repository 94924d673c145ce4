#pragma once

// Shared test fixtures: the worked-example graph, a ~100-node synthetic
// dataset, and the query corpus covering every supported feature family.

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "s2c/s2c.hpp"

namespace s2c::test {

inline std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("missing fixture: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline std::string fixture_path(const std::string& name) {
    return std::string(S2C_FIXTURE_DIR) + "/" + name;
}

inline std::string normalize_ws(const std::string& s) {
    std::string out;
    bool in_space = true;
    for (char c : s) {
        if (std::isspace(static_cast<unsigned char>(c))) {
            if (!in_space) out.push_back(' ');
            in_space = true;
        } else {
            out.push_back(c);
            in_space = false;
        }
    }
    while (!out.empty() && out.back() == ' ') out.pop_back();
    return out;
}

inline RdfGraph load_review_sample() {
    PrefixMap prefixes = parse_prefix_file(read_file(fixture_path("reviews.prefixes")));
    return parse_ntriples(read_file(fixture_path("reviews.nt")), prefixes);
}

inline std::string review_sample_query() { return read_file(fixture_path("reviews_q.rq")); }

// --- synthetic dataset -------------------------------------------------------

inline const char* kVocabNs = "http://ex.org/v/";
inline const char* kInstNs = "http://ex.org/i/";

struct SyntheticSpec {
    int products = 30;
    int producers = 8;
    int reviews = 40;
    int reviewers = 12;
    int countries = 6;
};

/// Deterministic BSBM-flavoured dataset: reviews of products by reviewers,
/// producers in countries, a successor chain over products, and a knows
/// cycle over reviewers. Queried properties are total on their classes;
/// motto and awardedBy are deliberately partial for the OPTIONAL family.
inline std::string synthetic_ntriples(const SyntheticSpec& spec = {}) {
    std::ostringstream nt;
    auto v = [](const std::string& s) { return std::string(kVocabNs) + s; };
    auto inst = [](const std::string& s, int k) {
        return std::string(kInstNs) + s + std::to_string(k);
    };
    auto triple = [&](const std::string& s, const std::string& p, const std::string& o) {
        nt << '<' << s << "> <" << p << "> <" << o << "> .\n";
    };
    auto lit = [&](const std::string& s, const std::string& p, const std::string& o) {
        nt << '<' << s << "> <" << p << "> \"" << o << "\" .\n";
    };
    auto num = [&](const std::string& s, const std::string& p, long value) {
        nt << '<' << s << "> <" << p << "> \"" << value
           << "\"^^<http://www.w3.org/2001/XMLSchema#integer> .\n";
    };
    const std::string rdf_type = kRdfTypeIri;

    for (int c = 0; c < spec.countries; ++c) {
        std::string iri = inst("country", c);
        triple(iri, rdf_type, v("Country"));
        lit(iri, v("name"), "country " + std::to_string(c));
        if (c % 2 == 0) lit(iri, v("motto"), "motto " + std::to_string(c));
    }
    for (int j = 0; j < spec.producers; ++j) {
        std::string iri = inst("producer", j);
        triple(iri, rdf_type, v("Producer"));
        lit(iri, v("name"), "producer " + std::to_string(j));
        triple(iri, v("locatedIn"), inst("country", j % spec.countries));
        if (j % 3 == 0) triple(iri, v("awardedBy"), inst("country", (j + 1) % spec.countries));
    }
    for (int k = 0; k < spec.products; ++k) {
        std::string iri = inst("product", k);
        triple(iri, rdf_type, v("Product"));
        if (k % 10 == 0) triple(iri, rdf_type, v("Featured"));
        lit(iri, v("label"), "product " + std::to_string(k));
        num(iri, v("price"), 50 + (k * 37) % 500);
        triple(iri, v("producedBy"), inst("producer", k % spec.producers));
        if (k >= 1 && k < 10) triple(iri, v("successorOf"), inst("product", k - 1));
    }
    for (int m = 0; m < spec.reviewers; ++m) {
        std::string iri = inst("reviewer", m);
        triple(iri, rdf_type, v("Reviewer"));
        lit(iri, v("name"), "reviewer " + std::to_string(m));
        triple(iri, v("locatedIn"), inst("country", (m + 2) % spec.countries));
        triple(iri, v("knows"), inst("reviewer", (m + 1) % spec.reviewers));
    }
    for (int r = 0; r < spec.reviews; ++r) {
        std::string iri = inst("review", r);
        triple(iri, rdf_type, v("Review"));
        lit(iri, v("label"), "review " + std::to_string(r));
        num(iri, v("rating"), 1 + (r * 7) % 10);
        num(iri, v("year"), 2010 + (r * 3) % 14);
        triple(iri, v("reviewFor"), inst("product", (r * 13) % spec.products));
        triple(iri, v("reviewedBy"), inst("reviewer", (r * 5) % spec.reviewers));
    }
    return nt.str();
}

inline PrefixMap synthetic_prefixes() {
    PrefixMap p;
    p.add("v", kVocabNs);
    p.add("i", kInstNs);
    return p;
}

inline RdfGraph load_synthetic(const SyntheticSpec& spec = {}) {
    return parse_ntriples(synthetic_ntriples(spec), synthetic_prefixes());
}

/// The verification corpus: one query per feature family of the evaluation
/// suite (aggregates, filters, order, distinct, limit, optional, labels,
/// relationship chains of 1–4 hops, property paths, stars, union, mixed).
inline std::vector<std::pair<std::string, std::string>> query_corpus() {
    const std::string prologue =
        "PREFIX v: <http://ex.org/v/>\n"
        "PREFIX i: <http://ex.org/i/>\n";
    std::vector<std::pair<std::string, std::string>> qs;
    auto add = [&](const std::string& name, const std::string& body) {
        qs.emplace_back(name, prologue + body);
    };

    add("Count1",
        "SELECT (count(?p) as ?total) WHERE { ?r a v:Review . ?r v:reviewFor ?p . }");
    add("CountFilter1",
        "SELECT (count(?r) as ?n) WHERE { ?r a v:Review . ?r v:rating ?g . "
        "?r v:reviewFor ?p . FILTER(?g > 5) }");
    add("CountFilter2",
        "SELECT (count(?r) as ?n) WHERE { ?r a v:Review . ?r v:rating ?g . "
        "?r v:year ?y . ?r v:reviewFor ?p . FILTER(?g > 3 && ?y < 2020) }");
    add("CountSubjectURI",
        "SELECT (count(?w) as ?n) WHERE { i:review0 v:reviewFor ?p . "
        "?p v:producedBy ?w . ?w v:name ?wn . }");
    add("CountObjectURI",
        "SELECT (count(?g) as ?n) WHERE { ?r v:reviewFor i:product0 . "
        "?r v:rating ?g . ?r a v:Review . }");
    add("Max",
        "SELECT (max(?p) as ?m) WHERE { ?x a v:Product . ?x v:price ?p . "
        "?x v:producedBy ?w . FILTER(?p > 100) }");
    add("Min",
        "SELECT (min(?p) as ?m) WHERE { ?x a v:Product . ?x v:price ?p . "
        "?x v:producedBy ?w . FILTER(?p > 100) }");
    add("Sum",
        "SELECT (sum(?g) as ?s) WHERE { ?r a v:Review . ?r v:rating ?g . "
        "?r v:year ?y . FILTER(?y >= 2015) }");
    add("Avg",
        "SELECT (avg(?p) as ?m) WHERE { ?x a v:Product . ?x v:price ?p . "
        "?x v:label ?l . FILTER(?p < 400) }");
    add("GroupOrder1",
        "SELECT DISTINCT ?cn (count(?r) as ?n) WHERE { ?r a v:Review . "
        "?r v:reviewedBy ?w . ?w v:locatedIn ?c . ?c v:name ?cn . ?r v:rating ?g . "
        "FILTER(?g >= 2) } ORDER BY DESC(?n) LIMIT 4");
    add("GroupOrder2",
        "SELECT DISTINCT ?pn (count(?r) as ?cnt) WHERE { ?r a v:Review . "
        "?r v:reviewFor ?p . ?p v:label ?pn . ?r v:year ?y . } "
        "ORDER BY ASC(?pn) LIMIT 5");
    add("NodeFilter1",
        "SELECT DISTINCT ?l WHERE { ?p a v:Product . ?p v:price ?pr . ?p v:label ?l . "
        "?p v:producedBy ?w . FILTER(?pr < 250) } LIMIT 5");
    add("NodeFilter2",
        "SELECT DISTINCT ?l WHERE { ?p a v:Product . ?p v:price ?pr . ?p v:label ?l . "
        "?p v:producedBy ?w . FILTER(?pr < 400 && ?pr > 100) } LIMIT 4");
    add("RelationshipFilter",
        "SELECT DISTINCT ?rl WHERE { ?r a v:Review . ?r v:reviewFor ?p . "
        "?p v:producedBy ?w . ?w v:name ?pn . ?r v:label ?rl . "
        "FILTER(?pn = \"producer 3\") } LIMIT 5");
    add("Label1", "SELECT ?x WHERE { ?x a v:Country . ?x v:name ?n } LIMIT 3");
    add("Label2",
        "SELECT ?x ?t WHERE { ?x a ?t . ?x v:name ?n . FILTER(?n = \"country 2\") } "
        "LIMIT 5");
    add("LabelWithRelationship",
        "SELECT DISTINCT ?t WHERE { ?r a v:Review . ?r v:reviewedBy ?w . ?w a ?t . "
        "?r v:rating ?g } LIMIT 4");
    add("MultiLabel",
        "SELECT DISTINCT ?l WHERE { ?x a v:Product . ?x a v:Featured . ?x v:label ?l . "
        "?x v:price ?pr . FILTER(?pr >= 0) } ORDER BY ASC(?l) LIMIT 4");
    add("PathInverse",
        "SELECT DISTINCT ?r WHERE { ?p ^v:reviewFor ?r . ?r v:rating ?g . "
        "?p a v:Product . FILTER(?g > 2) } ORDER BY (?r) LIMIT 5");
    add("PathZeroOrMore",
        "SELECT DISTINCT ?q WHERE { i:product5 v:successorOf* ?q . ?q v:price ?qp . "
        "FILTER(?qp >= 0) } ORDER BY (?q) LIMIT 8");
    add("PathOneOrMore",
        "SELECT DISTINCT ?b WHERE { ?a v:knows+ ?b . ?a v:name ?an . "
        "FILTER(?an = \"reviewer 0\") } ORDER BY (?b) LIMIT 6");
    add("PathZeroOrOne",
        "SELECT DISTINCT ?q WHERE { ?p v:successorOf? ?q . ?p a v:Product . "
        "?p v:price ?pp . FILTER(?pp < 300) } ORDER BY (?q) LIMIT 7");
    add("PathTwoHopsSame",
        "SELECT DISTINCT ?c WHERE { ?a v:knows/v:knows ?c . ?a v:name ?n . "
        "FILTER(?n = \"reviewer 3\") } ORDER BY (?c) LIMIT 5");
    add("PathTwoHopsDiff",
        "SELECT DISTINCT ?pr ?y WHERE { ?r v:reviewFor/v:producedBy ?pr . "
        "?r v:year ?y } ORDER BY (?y) LIMIT 6");
    add("PathThreeHopsDiff",
        "SELECT DISTINCT ?c WHERE { ?r v:reviewFor/v:producedBy/v:locatedIn ?c } "
        "LIMIT 5");
    add("Relationship1-1",
        "SELECT DISTINCT ?pl WHERE { ?r a v:Review . ?r v:reviewFor ?p . "
        "?p v:label ?pl . ?r v:rating ?g . FILTER(?g = 5) } ORDER BY (?pl) LIMIT 5");
    add("Relationship1-2",
        "SELECT DISTINCT ?g ?pl WHERE { ?r a v:Review . ?r v:reviewFor ?p . "
        "?p v:label ?pl . ?r v:rating ?g . FILTER(?g > 2 && ?g < 9) } "
        "ORDER BY (?pl) DESC(?g) LIMIT 5");
    add("Relationship2-1",
        "SELECT DISTINCT ?pn ?g WHERE { ?r a v:Review . ?r v:reviewFor ?p . "
        "?p v:producedBy ?w . ?w v:name ?pn . ?r v:rating ?g . FILTER(?g >= 4) } "
        "ORDER BY (?pn) DESC(?g) LIMIT 6");
    add("Relationship2-2",
        "SELECT DISTINCT ?pn ?y WHERE { ?r a v:Review . ?r v:reviewFor ?p . "
        "?p v:producedBy ?w . ?w v:name ?pn . ?r v:year ?y . } "
        "ORDER BY (?pn) DESC(?y) LIMIT 6");
    add("Relationship3-1",
        "SELECT DISTINCT ?cn ?g WHERE { ?r a v:Review . ?r v:reviewedBy ?a . "
        "?a v:locatedIn ?c . ?c v:name ?cn . ?r v:rating ?g . FILTER(?g > 6) } "
        "ORDER BY (?cn) DESC(?g) LIMIT 6");
    add("Relationship3-2",
        "SELECT DISTINCT ?cn ?g WHERE { ?r a v:Review . ?r v:reviewedBy ?a . "
        "?a v:locatedIn ?c . ?c v:name ?cn . ?r v:rating ?g . "
        "FILTER(?g > 2 && ?g < 8) } ORDER BY (?cn) DESC(?g) LIMIT 6");
    add("Relationship4-1",
        "SELECT DISTINCT ?cn ?g WHERE { ?r v:reviewFor ?p . ?p v:successorOf ?p2 . "
        "?p2 v:producedBy ?w . ?w v:locatedIn ?c . ?c v:name ?cn . ?r v:rating ?g . "
        "FILTER(?g > 1) } ORDER BY (?cn) DESC(?g) LIMIT 6");
    add("Relationship4-2",
        "SELECT DISTINCT ?cn ?y WHERE { ?r v:reviewFor ?p . ?p v:successorOf ?p2 . "
        "?p2 v:producedBy ?w . ?w v:locatedIn ?c . ?c v:name ?cn . ?r v:year ?y . "
        "?r v:rating ?g . FILTER(?g > 1 && ?y < 2022) } ORDER BY (?cn) DESC(?y) "
        "LIMIT 6");
    add("RelationshipType1",
        "SELECT DISTINCT ?t WHERE { ?r a v:Review . ?r ?t ?x . ?x a v:Product . "
        "?r v:rating ?g } LIMIT 4");
    add("RelationshipType2",
        "SELECT DISTINCT ?t ?x WHERE { ?w ?t ?x . ?w a v:Reviewer . ?x a v:Country } "
        "LIMIT 6");
    add("RelationshipType3",
        "SELECT DISTINCT ?v WHERE { ?r a v:Producer . ?r ?v ?v1 . ?v1 a v:Country . } "
        "LIMIT 10");
    add("StarProperty",
        "SELECT DISTINCT ?l WHERE { ?p a v:Product . ?p v:price ?pr . ?p v:label ?l . "
        "?p v:successorOf ?q . ?q v:price ?qp . FILTER(?pr > ?qp) } ORDER BY (?l) "
        "LIMIT 5");
    add("StarMultiProperty",
        "SELECT DISTINCT ?pl ?pr ?wn ?ql ?g ?y ?r1 WHERE { ?p a v:Product . "
        "?p v:label ?pl . ?p v:price ?pr . ?p v:producedBy ?w . ?w v:name ?wn . "
        "?p v:successorOf ?q . ?q v:label ?ql . ?r1 v:reviewFor ?p . ?r1 v:rating ?g . "
        "?r1 v:year ?y . } ORDER BY (?pl) LIMIT 8");
    add("OptionalProperty",
        "SELECT ?cn ?m WHERE { ?c a v:Country . ?c v:name ?cn . "
        "OPTIONAL { ?c v:motto ?m } FILTER(?cn != \"country 5\") } "
        "ORDER BY (?cn) LIMIT 6");
    add("OptionalRelationship",
        "SELECT ?wn ?aw WHERE { ?w a v:Producer . ?w v:name ?wn . "
        "OPTIONAL { ?w v:awardedBy ?ac . ?ac v:name ?aw } } ORDER BY (?wn) LIMIT 8");
    add("Union1",
        "SELECT ?n WHERE { { ?x a v:Producer . ?x v:name ?n } UNION "
        "{ ?x a v:Country . ?x v:name ?n } }");
    add("Union2",
        "SELECT ?pn ?cn WHERE { { ?x a v:Producer . ?x v:name ?pn } UNION "
        "{ ?x a v:Country . ?x v:name ?cn } }");
    add("Mixed",
        "SELECT DISTINCT ?pl (max(?g) as ?mg) WHERE { ?r a v:Review . "
        "?r v:reviewFor ?p . ?p v:label ?pl . ?r v:rating ?g . "
        "OPTIONAL { ?p v:successorOf ?q } FILTER(?g > 0) } ORDER BY DESC(?mg) LIMIT 5");
    return qs;
}

} // namespace s2c::test
