#pragma once

#include <cctype>
#include <sstream>
#include <string>
#include <vector>

#include "s2c/sparql_ast.hpp"

namespace s2c {

namespace detail {

enum class Tok {
    End, Ident, Var, Iri, PName, String, Integer, Decimal, Double,
    LBrace, RBrace, LParen, RParen, Dot, Semicolon, Comma,
    Star, Plus, Question, Slash, Caret, DoubleCaret, At,
    Eq, Ne, Lt, Le, Gt, Ge, AndAnd, OrOr, Bang
};

struct Token {
    Tok type = Tok::End;
    std::string text;    // identifier, var name (bare), IRI body, literal value
    std::string prefix;  // PName only
    size_t line = 1, col = 1;
};

class SparqlLexer {
public:
    explicit SparqlLexer(const std::string& input) : s_(input) { advance(); }

    const Token& peek() const { return cur_; }

    Token next() {
        Token t = cur_;
        advance();
        return t;
    }

    [[noreturn]] void fail(const std::string& expected) const {
        std::ostringstream msg;
        msg << "SPARQL syntax error at line " << cur_.line << ", column " << cur_.col
            << ": expected " << expected;
        if (cur_.type == Tok::End) {
            msg << ", found end of input";
        } else {
            msg << ", found '" << cur_.text << "'";
        }
        throw parse_error(msg.str());
    }

private:
    void advance() {
        skip_ws();
        cur_ = Token{};
        cur_.line = line_;
        cur_.col = col_;
        if (i_ >= s_.size()) {
            cur_.type = Tok::End;
            return;
        }
        char c = s_[i_];
        if (c == '<' && looks_like_iri()) { lex_iri(); return; }
        if (c == '?' || c == '$') { lex_var_or_question(); return; }
        if (c == '"' || c == '\'') { lex_string(c); return; }
        if (std::isdigit(static_cast<unsigned char>(c)) ||
            ((c == '+' || c == '-') && i_ + 1 < s_.size() &&
             std::isdigit(static_cast<unsigned char>(s_[i_ + 1])))) {
            lex_number();
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == ':') {
            lex_name();
            return;
        }
        lex_punct();
    }

    void skip_ws() {
        while (i_ < s_.size()) {
            char c = s_[i_];
            if (c == '#') {
                while (i_ < s_.size() && s_[i_] != '\n') bump();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                bump();
            } else {
                break;
            }
        }
    }

    void bump() {
        if (s_[i_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++i_;
    }

    /// '<' opens an IRI only when a '>' follows before any whitespace;
    /// otherwise it is the less-than operator.
    bool looks_like_iri() const {
        for (size_t k = i_ + 1; k < s_.size(); ++k) {
            char c = s_[k];
            if (c == '>') return true;
            if (std::isspace(static_cast<unsigned char>(c)) || c == '<') return false;
        }
        return false;
    }

    void lex_iri() {
        bump();  // '<'
        std::string body;
        while (i_ < s_.size() && s_[i_] != '>') {
            body.push_back(s_[i_]);
            bump();
        }
        if (i_ >= s_.size()) throw parse_error("unterminated IRI at line " + std::to_string(cur_.line));
        bump();  // '>'
        cur_.type = Tok::Iri;
        cur_.text = std::move(body);
    }

    void lex_var_or_question() {
        char sigil = s_[i_];
        bump();
        std::string name;
        while (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_')) {
            name.push_back(s_[i_]);
            bump();
        }
        if (name.empty()) {
            if (sigil == '$') throw parse_error("bare '$' at line " + std::to_string(cur_.line));
            cur_.type = Tok::Question;
            cur_.text = "?";
            return;
        }
        cur_.type = Tok::Var;
        cur_.text = std::move(name);
    }

    void lex_string(char quote) {
        bump();  // opening quote
        std::string out;
        while (i_ < s_.size() && s_[i_] != quote) {
            char c = s_[i_];
            if (c == '\\') {
                bump();
                if (i_ >= s_.size()) break;
                char e = s_[i_];
                switch (e) {
                    case 't': out.push_back('\t'); break;
                    case 'n': out.push_back('\n'); break;
                    case 'r': out.push_back('\r'); break;
                    case '"': out.push_back('"'); break;
                    case '\'': out.push_back('\''); break;
                    case '\\': out.push_back('\\'); break;
                    default: out.push_back(e); break;
                }
                bump();
            } else {
                out.push_back(c);
                bump();
            }
        }
        if (i_ >= s_.size()) {
            throw parse_error("unterminated string at line " + std::to_string(cur_.line));
        }
        bump();  // closing quote
        cur_.type = Tok::String;
        cur_.text = std::move(out);
    }

    void lex_number() {
        std::string out;
        if (s_[i_] == '+' || s_[i_] == '-') {
            out.push_back(s_[i_]);
            bump();
        }
        bool has_dot = false, has_exp = false;
        while (i_ < s_.size()) {
            char c = s_[i_];
            if (std::isdigit(static_cast<unsigned char>(c))) {
                out.push_back(c);
                bump();
            } else if (c == '.' && !has_dot && !has_exp && i_ + 1 < s_.size() &&
                       std::isdigit(static_cast<unsigned char>(s_[i_ + 1]))) {
                has_dot = true;
                out.push_back(c);
                bump();
            } else if ((c == 'e' || c == 'E') && !has_exp) {
                has_exp = true;
                out.push_back(c);
                bump();
                if (i_ < s_.size() && (s_[i_] == '+' || s_[i_] == '-')) {
                    out.push_back(s_[i_]);
                    bump();
                }
            } else {
                break;
            }
        }
        cur_.type = has_exp ? Tok::Double : (has_dot ? Tok::Decimal : Tok::Integer);
        cur_.text = std::move(out);
    }

    static bool pname_char(char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.';
    }

    void lex_name() {
        std::string first;
        while (i_ < s_.size() && pname_char(s_[i_])) {
            first.push_back(s_[i_]);
            bump();
        }
        if (i_ < s_.size() && s_[i_] == ':') {
            bump();
            std::string local;
            while (i_ < s_.size() && pname_char(s_[i_])) {
                local.push_back(s_[i_]);
                bump();
            }
            while (!local.empty() && local.back() == '.') {
                // trailing '.' belongs to the statement terminator
                local.pop_back();
                --i_;
                --col_;
            }
            cur_.type = Tok::PName;
            cur_.prefix = std::move(first);
            cur_.text = std::move(local);
            return;
        }
        if (first.empty()) {
            throw parse_error("stray ':' at line " + std::to_string(cur_.line));
        }
        while (!first.empty() && first.back() == '.') {
            first.pop_back();
            --i_;
            --col_;
        }
        cur_.type = Tok::Ident;
        cur_.text = std::move(first);
    }

    void lex_punct() {
        char c = s_[i_];
        auto two = [&](char a, char b) {
            return c == a && i_ + 1 < s_.size() && s_[i_ + 1] == b;
        };
        if (two('^', '^')) { bump(); bump(); cur_.type = Tok::DoubleCaret; cur_.text = "^^"; return; }
        if (two('&', '&')) { bump(); bump(); cur_.type = Tok::AndAnd; cur_.text = "&&"; return; }
        if (two('|', '|')) { bump(); bump(); cur_.type = Tok::OrOr; cur_.text = "||"; return; }
        if (two('!', '=')) { bump(); bump(); cur_.type = Tok::Ne; cur_.text = "!="; return; }
        if (two('<', '=')) { bump(); bump(); cur_.type = Tok::Le; cur_.text = "<="; return; }
        if (two('>', '=')) { bump(); bump(); cur_.type = Tok::Ge; cur_.text = ">="; return; }
        bump();
        switch (c) {
            case '{': cur_.type = Tok::LBrace; break;
            case '}': cur_.type = Tok::RBrace; break;
            case '(': cur_.type = Tok::LParen; break;
            case ')': cur_.type = Tok::RParen; break;
            case '.': cur_.type = Tok::Dot; break;
            case ';': cur_.type = Tok::Semicolon; break;
            case ',': cur_.type = Tok::Comma; break;
            case '*': cur_.type = Tok::Star; break;
            case '+': cur_.type = Tok::Plus; break;
            case '/': cur_.type = Tok::Slash; break;
            case '^': cur_.type = Tok::Caret; break;
            case '@': cur_.type = Tok::At; break;
            case '=': cur_.type = Tok::Eq; break;
            case '<': cur_.type = Tok::Lt; break;
            case '>': cur_.type = Tok::Gt; break;
            case '!': cur_.type = Tok::Bang; break;
            case '|':
                throw unsupported("property path alternation '|'");
            default:
                throw parse_error("unexpected character '" + std::string(1, c) +
                                  "' at line " + std::to_string(cur_.line));
        }
        cur_.text = std::string(1, c);
    }

    const std::string& s_;
    size_t i_ = 0;
    size_t line_ = 1, col_ = 1;
    Token cur_;
};

class SparqlParser {
public:
    explicit SparqlParser(const std::string& text) : lex_(text) {}

    SparqlQuery parse() {
        SparqlQuery q;
        parse_prologue(q);
        if (!is_keyword("SELECT")) {
            if (lex_.peek().type == Tok::Ident) {
                std::string kw = upper(lex_.peek().text);
                if (kw == "ASK" || kw == "CONSTRUCT" || kw == "DESCRIBE" ||
                    kw == "INSERT" || kw == "DELETE") {
                    throw unsupported(kw + " query form");
                }
            }
            lex_.fail("SELECT");
        }
        lex_.next();
        parse_projection(q);
        if (is_keyword("FROM")) throw unsupported("named graphs (FROM)");
        if (is_keyword("WHERE")) lex_.next();
        q.pattern = parse_group();
        parse_trailing_modifiers(q);
        if (lex_.peek().type != Tok::End) lex_.fail("end of query");
        finalize(q);
        return q;
    }

private:
    bool is_keyword(const char* kw) const {
        return lex_.peek().type == Tok::Ident && upper(lex_.peek().text) == kw;
    }

    static std::string upper(std::string s) {
        for (char& c : s) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
        return s;
    }

    void parse_prologue(SparqlQuery& q) {
        while (true) {
            if (is_keyword("PREFIX")) {
                lex_.next();
                Token name = lex_.next();
                // prefix declarations are written `pfx:` with an empty local part
                if (name.type != Tok::PName || !name.text.empty()) {
                    throw parse_error("malformed PREFIX declaration at line " +
                                      std::to_string(name.line));
                }
                Token iri = lex_.next();
                if (iri.type != Tok::Iri) lex_.fail("IRI after prefix name");
                q.prefixes.add(name.prefix, iri.text);
            } else if (is_keyword("BASE")) {
                throw unsupported("BASE declaration");
            } else {
                return;
            }
        }
    }

    std::string expand_pname(const Token& t) {
        auto iri = prefixes_->expand(t.prefix, t.text);
        if (!iri) {
            throw parse_error("undeclared prefix '" + t.prefix + ":' at line " +
                              std::to_string(t.line));
        }
        return *iri;
    }

    void parse_projection(SparqlQuery& q) {
        if (is_keyword("DISTINCT")) {
            lex_.next();
            q.modifiers.distinct = true;
        } else if (is_keyword("REDUCED")) {
            throw unsupported("REDUCED");
        }
        prefixes_ = &q.prefixes;
        auto& items = q.modifiers.projection;
        if (lex_.peek().type == Tok::Star) {
            lex_.next();
            select_star_ = true;
            return;
        }
        while (true) {
            if (lex_.peek().type == Tok::Var) {
                ProjectionItem item;
                item.var = lex_.next().text;
                items.push_back(std::move(item));
            } else if (lex_.peek().type == Tok::LParen) {
                items.push_back(parse_aggregate());
            } else {
                break;
            }
        }
        if (items.empty()) lex_.fail("projection variable or aggregate");
    }

    ProjectionItem parse_aggregate() {
        lex_.next();  // '('
        if (lex_.peek().type != Tok::Ident) lex_.fail("aggregate function");
        std::string fn = upper(lex_.next().text);
        Aggregate agg;
        if (fn == "COUNT") agg.fn = AggregateFn::Count;
        else if (fn == "MAX") agg.fn = AggregateFn::Max;
        else if (fn == "MIN") agg.fn = AggregateFn::Min;
        else if (fn == "SUM") agg.fn = AggregateFn::Sum;
        else if (fn == "AVG") agg.fn = AggregateFn::Avg;
        else throw unsupported("aggregate function " + fn);
        if (lex_.next().type != Tok::LParen) lex_.fail("'(' after aggregate function");
        if (lex_.peek().type == Tok::Star) throw unsupported("COUNT(*)");
        if (lex_.peek().type != Tok::Var) lex_.fail("aggregate argument variable");
        agg.arg = lex_.next().text;
        if (lex_.next().type != Tok::RParen) lex_.fail("')' after aggregate argument");
        if (!is_keyword("AS")) lex_.fail("AS");
        lex_.next();
        if (lex_.peek().type != Tok::Var) lex_.fail("alias variable");
        agg.alias = lex_.next().text;
        if (lex_.next().type != Tok::RParen) lex_.fail("')' closing aggregate");
        ProjectionItem item;
        item.agg = std::move(agg);
        return item;
    }

    // --- graph patterns ---------------------------------------------------

    GraphPatternPtr parse_group() {
        if (lex_.peek().type != Tok::LBrace) lex_.fail("'{'");
        lex_.next();

        GraphPatternPtr current;                 // combined so far
        std::vector<TriplePattern> pending_bgp;  // triples not yet folded
        std::vector<ExprPtr> filters;

        auto flush_bgp = [&]() {
            if (pending_bgp.empty()) return;
            auto bgp = GraphPattern::bgp(std::move(pending_bgp));
            pending_bgp.clear();
            current = current ? GraphPattern::binary(GraphPattern::Kind::And, current, bgp)
                              : bgp;
        };

        while (lex_.peek().type != Tok::RBrace) {
            if (lex_.peek().type == Tok::End) lex_.fail("'}'");
            if (lex_.peek().type == Tok::Dot) {
                lex_.next();
                continue;
            }
            if (is_keyword("FILTER")) {
                lex_.next();
                filters.push_back(parse_constraint());
                continue;
            }
            if (is_keyword("OPTIONAL")) {
                lex_.next();
                flush_bgp();
                if (!current) throw unsupported("OPTIONAL without a preceding pattern");
                auto rhs = parse_group();
                current = GraphPattern::binary(GraphPattern::Kind::Opt, current, rhs);
                continue;
            }
            if (is_keyword("MINUS")) throw unsupported("MINUS");
            if (is_keyword("GRAPH")) throw unsupported("named graphs (GRAPH)");
            if (is_keyword("SERVICE")) throw unsupported("SERVICE federation");
            if (is_keyword("BIND")) throw unsupported("BIND");
            if (is_keyword("VALUES")) throw unsupported("VALUES");
            if (lex_.peek().type == Tok::LBrace) {
                flush_bgp();
                auto sub = parse_group();
                while (is_keyword("UNION")) {
                    lex_.next();
                    auto rhs = parse_group();
                    sub = GraphPattern::binary(GraphPattern::Kind::Union, sub, rhs);
                }
                current = current ? GraphPattern::binary(GraphPattern::Kind::And, current, sub)
                                  : sub;
                continue;
            }
            parse_triples_block(pending_bgp);
        }
        lex_.next();  // '}'
        flush_bgp();
        if (!current) {
            if (filters.empty()) throw parse_error("empty graph pattern group");
            throw unsupported("FILTER with no pattern in group");
        }
        for (auto& f : filters) {
            current = GraphPattern::filter(current, f);
        }
        return current;
    }

    void parse_triples_block(std::vector<TriplePattern>& out) {
        TripleElement subject = parse_term_element(/*allow_literal=*/true);
        while (true) {
            TriplePattern tp;
            tp.sp = subject;
            parse_predicate(tp);
            tp.op = parse_term_element(true);
            validate_tp(tp);
            out.push_back(tp);
            while (lex_.peek().type == Tok::Comma) {
                lex_.next();
                TriplePattern more = out.back();
                more.op = parse_term_element(true);
                validate_tp(more);
                out.push_back(std::move(more));
            }
            if (lex_.peek().type == Tok::Semicolon) {
                lex_.next();
                if (lex_.peek().type == Tok::Dot || lex_.peek().type == Tok::RBrace) return;
                continue;
            }
            return;
        }
    }

    static void validate_tp(const TriplePattern& tp) {
        if (!tp.has_path() && tp.pp.kind == ElementKind::Literal) {
            throw parse_error("literal in predicate position");
        }
    }

    void parse_predicate(TriplePattern& tp) {
        const Token& t = lex_.peek();
        if (t.type == Tok::Var) {
            tp.pp = TripleElement::var(lex_.next().text);
            return;
        }
        // property path (possibly a single plain predicate)
        auto first = parse_path_elt();
        std::vector<std::shared_ptr<const PathExpr>> seq;
        seq.push_back(std::make_shared<PathExpr>(std::move(first)));
        while (lex_.peek().type == Tok::Slash) {
            lex_.next();
            seq.push_back(std::make_shared<PathExpr>(parse_path_elt()));
        }
        if (seq.size() == 1 && seq[0]->kind == PathExpr::Kind::Predicate) {
            tp.pp = TripleElement::iri(seq[0]->iri);
            return;
        }
        auto path = seq[0];
        for (size_t i = 1; i < seq.size(); ++i) {
            path = std::make_shared<PathExpr>(PathExpr::sequence(path, seq[i]));
        }
        tp.path = path;
    }

    PathExpr parse_path_elt() {
        bool inverse = false;
        if (lex_.peek().type == Tok::Caret) {
            lex_.next();
            inverse = true;
        }
        std::string iri = parse_path_iri();
        PathExpr::Kind kind = inverse ? PathExpr::Kind::Inverse : PathExpr::Kind::Predicate;
        switch (lex_.peek().type) {
            case Tok::Star: lex_.next(); kind = PathExpr::Kind::ZeroOrMore; break;
            case Tok::Plus: lex_.next(); kind = PathExpr::Kind::OneOrMore; break;
            case Tok::Question: lex_.next(); kind = PathExpr::Kind::ZeroOrOne; break;
            default: break;
        }
        if (inverse && kind != PathExpr::Kind::Inverse) {
            throw unsupported("closure over an inverse path");
        }
        return PathExpr::step(kind, std::move(iri));
    }

    std::string parse_path_iri() {
        Token t = lex_.next();
        if (t.type == Tok::Iri) return t.text;
        if (t.type == Tok::PName) return expand_pname(t);
        if (t.type == Tok::Ident && t.text == "a") return kRdfTypeIri;
        if (t.type == Tok::LParen) throw unsupported("grouped property path");
        if (t.type == Tok::Bang) throw unsupported("negated property path");
        lex_.fail("predicate IRI");
    }

    TripleElement parse_term_element(bool allow_literal) {
        Token t = lex_.next();
        switch (t.type) {
            case Tok::Var: return TripleElement::var(t.text);
            case Tok::Iri: return TripleElement::iri(t.text);
            case Tok::PName: return TripleElement::iri(expand_pname(t));
            case Tok::Ident:
                if (t.text == "a") return TripleElement::iri(kRdfTypeIri);
                if (t.text == "true" || t.text == "false") {
                    throw unsupported("boolean literals");
                }
                if (t.text.rfind("_", 0) == 0) throw unsupported("blank nodes in patterns");
                throw parse_error("unexpected token '" + t.text + "' at line " +
                                  std::to_string(t.line));
            case Tok::String: {
                if (!allow_literal) throw parse_error("unexpected literal");
                std::string dt, lang;
                if (lex_.peek().type == Tok::DoubleCaret) {
                    lex_.next();
                    Token d = lex_.next();
                    if (d.type == Tok::Iri) dt = d.text;
                    else if (d.type == Tok::PName) dt = expand_pname(d);
                    else lex_.fail("datatype IRI");
                } else if (lex_.peek().type == Tok::At) {
                    lex_.next();
                    Token tag = lex_.next();
                    if (tag.type != Tok::Ident) lex_.fail("language tag");
                    lang = tag.text;
                }
                return TripleElement::literal(t.text, dt, lang);
            }
            case Tok::Integer:
                return TripleElement::literal(t.text, kXsdInteger);
            case Tok::Decimal:
                return TripleElement::literal(t.text, kXsdDecimal);
            case Tok::Double:
                return TripleElement::literal(t.text, kXsdDouble);
            default:
                lex_.fail("term");
        }
    }

    // --- filter expressions -------------------------------------------------

    ExprPtr parse_constraint() {
        if (lex_.peek().type != Tok::LParen) {
            if (lex_.peek().type == Tok::Ident) {
                throw unsupported("FILTER function " + lex_.peek().text);
            }
            lex_.fail("'(' after FILTER");
        }
        lex_.next();
        auto e = parse_or();
        if (lex_.next().type != Tok::RParen) lex_.fail("')' closing FILTER");
        return e;
    }

    ExprPtr parse_or() {
        auto l = parse_and();
        while (lex_.peek().type == Tok::OrOr) {
            lex_.next();
            auto r = parse_and();
            l = Expr::logical(Expr::Kind::BoolOr, {l, r});
        }
        return l;
    }

    ExprPtr parse_and() {
        auto l = parse_unary();
        while (lex_.peek().type == Tok::AndAnd) {
            lex_.next();
            auto r = parse_unary();
            l = Expr::logical(Expr::Kind::BoolAnd, {l, r});
        }
        return l;
    }

    ExprPtr parse_unary() {
        if (lex_.peek().type == Tok::Bang) {
            lex_.next();
            return Expr::logical(Expr::Kind::Not, {parse_unary()});
        }
        return parse_relational();
    }

    ExprPtr parse_relational() {
        auto l = parse_primary();
        CompareOp op;
        switch (lex_.peek().type) {
            case Tok::Eq: op = CompareOp::Eq; break;
            case Tok::Ne: op = CompareOp::Ne; break;
            case Tok::Lt: op = CompareOp::Lt; break;
            case Tok::Le: op = CompareOp::Le; break;
            case Tok::Gt: op = CompareOp::Gt; break;
            case Tok::Ge: op = CompareOp::Ge; break;
            default: return l;
        }
        lex_.next();
        auto r = parse_primary();
        return Expr::compare(op, l, r);
    }

    ExprPtr parse_primary() {
        const Token& t = lex_.peek();
        if (t.type == Tok::LParen) {
            lex_.next();
            auto e = parse_or();
            if (lex_.next().type != Tok::RParen) lex_.fail("')'");
            return e;
        }
        if (t.type == Tok::Var) return Expr::make_var(lex_.next().text);
        if (t.type == Tok::Ident) {
            std::string name = t.text;
            throw unsupported("FILTER function or keyword '" + name + "'");
        }
        return Expr::make_const(parse_term_element(true));
    }

    // --- solution modifiers ---------------------------------------------------

    void parse_trailing_modifiers(SparqlQuery& q) {
        while (true) {
            if (is_keyword("GROUP")) {
                lex_.next();
                if (!is_keyword("BY")) lex_.fail("BY after GROUP");
                lex_.next();
                while (lex_.peek().type == Tok::Var) {
                    q.modifiers.group.push_back(lex_.next().text);
                }
                if (q.modifiers.group.empty()) lex_.fail("GROUP BY variable");
            } else if (is_keyword("HAVING")) {
                throw unsupported("HAVING");
            } else if (is_keyword("ORDER")) {
                lex_.next();
                if (!is_keyword("BY")) lex_.fail("BY after ORDER");
                lex_.next();
                parse_order_conditions(q);
            } else if (is_keyword("LIMIT")) {
                lex_.next();
                q.modifiers.limit = parse_nonnegative("LIMIT");
            } else if (is_keyword("OFFSET") || is_keyword("SKIP")) {
                lex_.next();
                q.modifiers.skip = parse_nonnegative("OFFSET");
            } else {
                return;
            }
        }
    }

    void parse_order_conditions(SparqlQuery& q) {
        bool any = false;
        while (true) {
            bool desc = false;
            if (is_keyword("ASC") || is_keyword("DESC")) {
                desc = upper(lex_.peek().text) == "DESC";
                lex_.next();
                if (lex_.next().type != Tok::LParen) lex_.fail("'('");
                if (lex_.peek().type != Tok::Var) lex_.fail("variable");
                q.modifiers.order.emplace_back(lex_.next().text, desc);
                if (lex_.next().type != Tok::RParen) lex_.fail("')'");
            } else if (lex_.peek().type == Tok::LParen) {
                lex_.next();
                if (lex_.peek().type != Tok::Var) lex_.fail("variable");
                q.modifiers.order.emplace_back(lex_.next().text, false);
                if (lex_.next().type != Tok::RParen) lex_.fail("')'");
            } else if (lex_.peek().type == Tok::Var) {
                q.modifiers.order.emplace_back(lex_.next().text, false);
            } else {
                if (!any) lex_.fail("ORDER BY condition");
                return;
            }
            any = true;
        }
    }

    int64_t parse_nonnegative(const char* what) {
        Token t = lex_.next();
        if (t.type != Tok::Integer) lex_.fail(std::string(what) + " count");
        long long v = std::stoll(t.text);
        if (v < 0) throw parse_error(std::string(what) + " must be non-negative");
        return v;
    }

    void finalize(SparqlQuery& q) {
        if (select_star_) {
            std::vector<std::string> vars;
            collect_variables(*q.pattern, vars);
            for (auto& v : vars) {
                ProjectionItem item;
                item.var = v;
                q.modifiers.projection.push_back(std::move(item));
            }
            if (q.modifiers.projection.empty()) {
                throw parse_error("SELECT * over a pattern with no variables");
            }
        }
        std::vector<std::string> pattern_vars;
        collect_variables(*q.pattern, pattern_vars);
        auto in_pattern = [&](const std::string& v) {
            for (const auto& x : pattern_vars) {
                if (x == v) return true;
            }
            return false;
        };
        for (const auto& item : q.modifiers.projection) {
            if (item.is_aggregate()) {
                if (!in_pattern(item.agg->arg)) {
                    throw parse_error("aggregate argument ?" + item.agg->arg +
                                      " does not occur in the pattern");
                }
                if (in_pattern(item.agg->alias)) {
                    throw parse_error("aggregate alias ?" + item.agg->alias +
                                      " collides with a pattern variable");
                }
            } else if (!in_pattern(item.var)) {
                throw parse_error("projected variable ?" + item.var +
                                  " does not occur in the pattern");
            }
        }
        if (!q.modifiers.group.empty()) {
            // explicit GROUP BY must coincide with the implicit grouping
            std::set<std::string> expect;
            for (const auto& item : q.modifiers.projection) {
                if (!item.is_aggregate()) expect.insert(item.var);
            }
            std::set<std::string> got(q.modifiers.group.begin(), q.modifiers.group.end());
            if (expect != got) {
                throw unsupported("GROUP BY differing from the non-aggregated projection");
            }
        }
    }

    SparqlLexer lex_;
    const PrefixMap* prefixes_ = nullptr;
    bool select_star_ = false;
};

} // namespace detail

/// Parses a SELECT query in the supported subset into its AST. Prefixed
/// names are expanded, `a` becomes rdf:type, variables are stored bare.
inline SparqlQuery parse_sparql(const std::string& text) {
    detail::SparqlParser parser(text);
    return parser.parse();
}

// --- canonical printer (round-trip support) ---------------------------------

namespace detail {

inline void print_element(std::ostream& os, const TripleElement& e) {
    switch (e.kind) {
        case ElementKind::Variable: os << '?' << e.lexical; break;
        case ElementKind::Iri: os << '<' << e.lexical << '>'; break;
        case ElementKind::Literal: {
            os << '"';
            for (char c : e.lexical) {
                switch (c) {
                    case '"': os << "\\\""; break;
                    case '\\': os << "\\\\"; break;
                    case '\n': os << "\\n"; break;
                    case '\t': os << "\\t"; break;
                    case '\r': os << "\\r"; break;
                    default: os << c;
                }
            }
            os << '"';
            if (!e.datatype.empty()) os << "^^<" << e.datatype << '>';
            else if (!e.lang.empty()) os << '@' << e.lang;
            break;
        }
    }
}

inline void print_path(std::ostream& os, const PathExpr& p) {
    switch (p.kind) {
        case PathExpr::Kind::Predicate: os << '<' << p.iri << '>'; break;
        case PathExpr::Kind::Inverse: os << "^<" << p.iri << '>'; break;
        case PathExpr::Kind::ZeroOrMore: os << '<' << p.iri << ">*"; break;
        case PathExpr::Kind::OneOrMore: os << '<' << p.iri << ">+"; break;
        case PathExpr::Kind::ZeroOrOne: os << '<' << p.iri << ">?"; break;
        case PathExpr::Kind::Sequence:
            print_path(os, *p.parts[0]);
            os << '/';
            print_path(os, *p.parts[1]);
            break;
    }
}

inline void print_expr(std::ostream& os, const Expr& e) {
    switch (e.kind) {
        case Expr::Kind::Var: os << '?' << e.var; return;
        case Expr::Kind::Const: print_element(os, e.constant); return;
        case Expr::Kind::Compare: {
            const char* op = "=";
            switch (e.op) {
                case CompareOp::Eq: op = "="; break;
                case CompareOp::Ne: op = "!="; break;
                case CompareOp::Lt: op = "<"; break;
                case CompareOp::Le: op = "<="; break;
                case CompareOp::Gt: op = ">"; break;
                case CompareOp::Ge: op = ">="; break;
            }
            os << '(';
            print_expr(os, *e.children[0]);
            os << ' ' << op << ' ';
            print_expr(os, *e.children[1]);
            os << ')';
            return;
        }
        case Expr::Kind::BoolAnd:
        case Expr::Kind::BoolOr:
            os << '(';
            print_expr(os, *e.children[0]);
            os << (e.kind == Expr::Kind::BoolAnd ? " && " : " || ");
            print_expr(os, *e.children[1]);
            os << ')';
            return;
        case Expr::Kind::Not:
            os << "!";
            print_expr(os, *e.children[0]);
            return;
    }
}

inline void print_pattern(std::ostream& os, const GraphPattern& gp, bool braced) {
    auto print_bgp = [&os](const GraphPattern& b) {
        for (const auto& tp : b.triples) {
            print_element(os, tp.sp);
            os << ' ';
            if (tp.has_path()) print_path(os, *tp.path);
            else print_element(os, tp.pp);
            os << ' ';
            print_element(os, tp.op);
            os << " . ";
        }
    };
    if (braced) os << "{ ";
    switch (gp.kind) {
        case GraphPattern::Kind::Bgp:
            print_bgp(gp);
            break;
        case GraphPattern::Kind::And:
            print_pattern(os, *gp.left, true);
            os << ' ';
            print_pattern(os, *gp.right, true);
            break;
        case GraphPattern::Kind::Opt:
            // a Filter left operand must be braced or the filter would
            // re-attach to the whole group on re-parse
            print_pattern(os, *gp.left, gp.left->kind == GraphPattern::Kind::Filter);
            os << " OPTIONAL { ";
            print_pattern(os, *gp.right, false);
            os << " }";
            break;
        case GraphPattern::Kind::Union:
            print_pattern(os, *gp.left, true);
            os << " UNION ";
            print_pattern(os, *gp.right, true);
            break;
        case GraphPattern::Kind::Filter:
            print_pattern(os, *gp.inner, false);
            os << " FILTER ";
            print_expr(os, *gp.cond);
            break;
    }
    if (braced) os << " }";
}

} // namespace detail

/// Canonical text form: parse(print_sparql(q)) reproduces q exactly.
inline std::string print_sparql(const SparqlQuery& q) {
    std::ostringstream os;
    for (const auto& [p, ns] : q.prefixes.entries()) {
        os << "PREFIX " << p << ": <" << ns << ">\n";
    }
    os << "SELECT ";
    if (q.modifiers.distinct) os << "DISTINCT ";
    for (const auto& item : q.modifiers.projection) {
        if (item.is_aggregate()) {
            const char* fn = "COUNT";
            switch (item.agg->fn) {
                case AggregateFn::Count: fn = "COUNT"; break;
                case AggregateFn::Max: fn = "MAX"; break;
                case AggregateFn::Min: fn = "MIN"; break;
                case AggregateFn::Sum: fn = "SUM"; break;
                case AggregateFn::Avg: fn = "AVG"; break;
            }
            os << '(' << fn << "(?" << item.agg->arg << ") AS ?" << item.agg->alias << ") ";
        } else {
            os << '?' << item.var << ' ';
        }
    }
    os << "WHERE { ";
    detail::print_pattern(os, *q.pattern, false);
    os << " }";
    if (!q.modifiers.group.empty()) {
        os << " GROUP BY";
        for (const auto& v : q.modifiers.group) os << " ?" << v;
    }
    if (!q.modifiers.order.empty()) {
        os << " ORDER BY";
        for (const auto& [v, desc] : q.modifiers.order) {
            os << (desc ? " DESC(?" : " ASC(?") << v << ')';
        }
    }
    if (q.modifiers.limit) os << " LIMIT " << *q.modifiers.limit;
    if (q.modifiers.skip) os << " OFFSET " << *q.modifiers.skip;
    os << '\n';
    return os.str();
}

} // namespace s2c
