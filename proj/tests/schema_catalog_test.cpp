#include <gtest/gtest.h>

#include <cstdio>

#include "fixtures.hpp"
#include "s2c/schema_catalog.hpp"

using namespace s2c;

namespace {

RdfGraph graph_of(const std::string& nt) { return parse_ntriples(nt); }

} // namespace

TEST(DeriveCatalog, PartitionsPredicatesByObjectKind) {
    RdfGraph g = graph_of(
        "<http://e/R1> <http://e/title> \"review1\" .\n"
        "<http://e/R1> <http://e/reviewFor> <http://e/Pr1> .\n");
    SchemaCatalog cat = derive_catalog(g);
    EXPECT_TRUE(cat.is_relationship("http://e/reviewFor"));
    EXPECT_TRUE(cat.is_property("http://e/title"));
    EXPECT_EQ(cat.relationship_types.size(), 1u);
    EXPECT_EQ(cat.property_keys.size(), 1u);
}

TEST(DeriveCatalog, EmptyGraphGivesEmptyCatalog) {
    SchemaCatalog cat = derive_catalog(RdfGraph{});
    EXPECT_TRUE(cat.relationship_types.empty());
    EXPECT_TRUE(cat.property_keys.empty());
}

TEST(DeriveCatalog, MixedPredicateIsAnError) {
    RdfGraph g = graph_of(
        "<http://e/a> <http://e/p> <http://e/b> .\n"
        "<http://e/c> <http://e/p> \"x\" .\n");
    try {
        derive_catalog(g);
        FAIL() << "expected MixedPredicate";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), Error::Kind::MixedPredicate);
        EXPECT_NE(std::string(e.what()).find("http://e/p"), std::string::npos);
    }
    // forcing a side resolves the conflict
    EXPECT_TRUE(derive_catalog(g, MixedPredicatePolicy::ForceEdge)
                    .is_relationship("http://e/p"));
    EXPECT_TRUE(derive_catalog(g, MixedPredicatePolicy::ForceProperty)
                    .is_property("http://e/p"));
}

TEST(DeriveCatalog, RdfTypeExcludedAndPartitionTotal) {
    RdfGraph g = s2c::test::load_synthetic();
    SchemaCatalog cat = derive_catalog(g);
    EXPECT_FALSE(cat.is_relationship(kRdfTypeIri));
    EXPECT_FALSE(cat.is_property(kRdfTypeIri));
    // every non-type predicate lands in exactly one side
    for (const auto& t : g.triples) {
        const std::string& p = t.predicate.lexical;
        if (p == kRdfTypeIri) continue;
        EXPECT_NE(cat.is_relationship(p), cat.is_property(p)) << p;
    }
}

TEST(ClassifyTriple, FollowsTheFourBranches) {
    SchemaCatalog cat;
    cat.relationship_types.insert("http://e/reviewFor");
    cat.property_keys.insert("http://e/title");

    TriplePattern tp;
    tp.sp = TripleElement::var("x");
    tp.pp = TripleElement::iri(kRdfTypeIri);
    tp.op = TripleElement::iri("http://e/Review");
    EXPECT_EQ(classify_triple(tp, cat), TriplePatternClass::Type);

    tp.pp = TripleElement::var("y");
    tp.op = TripleElement::var("z");
    EXPECT_EQ(classify_triple(tp, cat), TriplePatternClass::VarEdge);

    tp.pp = TripleElement::iri("http://e/reviewFor");
    EXPECT_EQ(classify_triple(tp, cat), TriplePatternClass::IRIEdge);

    tp.pp = TripleElement::iri("http://e/title");
    tp.op = TripleElement::literal("review1");
    EXPECT_EQ(classify_triple(tp, cat), TriplePatternClass::Property);

    tp.pp = TripleElement::iri("http://e/unknown");
    try {
        classify_triple(tp, cat);
        FAIL() << "expected UnknownPredicate";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), Error::Kind::UnknownPredicate);
    }
}

TEST(CatalogFile, RoundTripsLosslessly) {
    SchemaCatalog cat;
    cat.relationship_types = {"http://e/reviewFor"};
    cat.property_keys = {"http://e/title", "http://e/date"};
    std::string path = std::string(::testing::TempDir()) + "roundtrip.catalog";
    save_catalog(cat, path);
    SchemaCatalog loaded = load_catalog(path);
    EXPECT_EQ(cat, loaded);
    std::remove(path.c_str());
}

TEST(CatalogFile, ReadsExplicitSets) {
    SchemaCatalog cat = catalog_from_json(
        R"({"relationship_types":["http://e/reviewFor"],)"
        R"("property_keys":["http://e/title","http://e/date"]})");
    EXPECT_TRUE(cat.is_relationship("http://e/reviewFor"));
    EXPECT_EQ(cat.property_keys.size(), 2u);
}

TEST(CatalogFile, OverlapIsValidationError) {
    EXPECT_THROW(catalog_from_json(R"({"relationship_types":["http://e/p"],)"
                                   R"("property_keys":["http://e/p"]})"),
                 Error);
}

TEST(DeriveCatalog, ReviewSampleMatchesExpectedSets) {
    SchemaCatalog cat = derive_catalog(s2c::test::load_review_sample());
    EXPECT_EQ(cat.relationship_types,
              std::set<std::string>{"http://bsbm.example/vocab/reviewFor"});
    std::set<std::string> props = {"http://bsbm.example/vocab/title",
                                   "http://bsbm.example/vocab/date"};
    EXPECT_EQ(cat.property_keys, props);
}
