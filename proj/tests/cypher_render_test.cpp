#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "s2c/cypher_render.hpp"

using namespace s2c;

TEST(EscapeIdentifier, PlainWordsStayBare) {
    EXPECT_EQ(escape_identifier("total"), "total");
    EXPECT_EQ(escape_identifier("_r2"), "_r2");
}

TEST(EscapeIdentifier, NonWordsGetBackticks) {
    EXPECT_EQ(escape_identifier("b:R"), "`b:R`");
    EXPECT_EQ(escape_identifier("a-b"), "`a-b`");
    EXPECT_EQ(escape_identifier("1x"), "`1x`");
}

TEST(EscapeIdentifier, InternalBackticksDoubled) {
    EXPECT_EQ(escape_identifier("a`b"), "`a``b`");
}

namespace {

CypherQuery count_query() {
    CypherQuery q;
    q.prefixes.add("b", "http://bsbm.example/vocab/");
    PathPattern p;
    p.head.name = "R";
    p.head.add_label("http://bsbm.example/vocab/R");
    RelationshipPattern rel;
    rel.name = "rF";
    rel.rel_type = "http://bsbm.example/vocab/rF";
    NodePattern end;
    end.name = "p";
    p.tail.emplace_back(rel, end);
    q.match_clauses.push_back({{p}});
    ReturnItem agg;
    agg.kind = ReturnItem::Kind::Aggregate;
    agg.fn = AggregateFn::Count;
    agg.arg_kind = ReturnItem::Kind::Node;
    agg.target = "p";
    agg.alias = "total";
    q.return_items.push_back(agg);
    return q;
}

} // namespace

TEST(Render, CountQueryMatchesExpectedText) {
    EXPECT_EQ(render(count_query()),
              "MATCH (R:`b:R`)-[rF:`b:rF`]->(p) RETURN count(p) AS total");
}

TEST(Render, MinimalNodeQuery) {
    CypherQuery q;
    PathPattern p;
    p.head.name = "x";
    q.match_clauses.push_back({{p}});
    q.return_items.push_back(ReturnItem::node("x"));
    EXPECT_EQ(render(q), "MATCH (x) RETURN x");
}

TEST(Render, DistinctPropertyWithLimit) {
    CypherQuery q;
    q.prefixes.add("b", "http://bsbm.example/vocab/");
    PathPattern p;
    p.head.name = "p";
    q.match_clauses.push_back({{p}});
    q.distinct = true;
    q.return_items.push_back(
        ReturnItem::property("p", "http://bsbm.example/vocab/pPN2"));
    q.limit = 3;
    EXPECT_EQ(render(q), "MATCH (p) RETURN DISTINCT p.`b:pPN2` LIMIT 3");
}

TEST(Render, ClauseOrderAndPrettyMode) {
    CypherQuery q;
    PathPattern p;
    p.head.name = "x";
    q.match_clauses.push_back({{p}});
    OptionalMatch om;
    PathPattern p2;
    p2.head.name = "y";
    om.patterns.push_back(p2);
    q.optional_matches.push_back(om);
    q.where = CypherExpr::cmp(CompareOp::Gt, CypherExpr::prop("x", "k"),
                              CypherExpr::constant(Value::number(1)));
    q.return_items.push_back(ReturnItem::node("x"));
    q.order.emplace_back(ReturnItem::node("x"), true);
    q.skip = 2;
    q.limit = 5;
    std::string flat = render(q);
    EXPECT_EQ(flat,
              "MATCH (x) OPTIONAL MATCH (y) WHERE x.k > 1 RETURN x "
              "ORDER BY x DESC SKIP 2 LIMIT 5");
    std::string pretty = render(q, true);
    EXPECT_EQ(s2c::test::normalize_ws(pretty), flat);
    EXPECT_NE(pretty.find('\n'), std::string::npos);
}

TEST(Render, VariableLengthRanges) {
    auto rel_with = [](std::optional<RelationshipPattern::Range> range) {
        CypherQuery q;
        PathPattern p;
        p.head.name = "a";
        RelationshipPattern rel;
        rel.name = "r";
        rel.rel_type = "T";
        rel.range = range;
        NodePattern end;
        end.name = "b";
        p.tail.emplace_back(rel, end);
        q.match_clauses.push_back({{p}});
        q.return_items.push_back(ReturnItem::node("b"));
        return render(q);
    };
    EXPECT_EQ(rel_with(RelationshipPattern::Range{0, {}}),
              "MATCH (a)-[r:T*0..]->(b) RETURN b");
    EXPECT_EQ(rel_with(RelationshipPattern::Range{1, {}}),
              "MATCH (a)-[r:T*1..]->(b) RETURN b");
    EXPECT_EQ(rel_with(RelationshipPattern::Range{0, 1}),
              "MATCH (a)-[r:T*0..1]->(b) RETURN b");
}

TEST(Render, PureFunctionOfTheAst) {
    CypherQuery q = count_query();
    EXPECT_EQ(render(q), render(q));
}

TEST(Render, NoBareColonInIdentifierPositions) {
    // every identifier is either a plain word or backtick-quoted
    std::string text = render(count_query());
    for (size_t i = 0; i + 1 < text.size(); ++i) {
        if (text[i] == ':' && isalnum(static_cast<unsigned char>(text[i + 1]))) {
            // a ':' outside backticks must follow '(' or '[' label syntax,
            // where the following identifier is backticked
            bool inside_backticks = false;
            int ticks = 0;
            for (size_t j = 0; j < i; ++j) ticks += text[j] == '`';
            inside_backticks = ticks % 2 == 1;
            EXPECT_TRUE(inside_backticks) << "unquoted ':' at " << i << " in " << text;
        }
    }
}

TEST(Render, UnionArityMismatchRejected) {
    CypherQuery q;
    PathPattern p;
    p.head.name = "x";
    q.match_clauses.push_back({{p}});
    q.return_items.push_back(ReturnItem::node("x"));
    auto arm = std::make_shared<CypherQuery>();
    arm->match_clauses.push_back({{p}});
    arm->return_items.push_back(ReturnItem::node("x"));
    arm->return_items.push_back(ReturnItem::node("x"));
    q.union_with = arm;
    try {
        render(q);
        FAIL() << "expected UnunifiableUnion";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), Error::Kind::UnunifiableUnion);
    }
}
