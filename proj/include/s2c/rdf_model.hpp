#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "s2c/errors.hpp"

namespace s2c {

inline constexpr const char* kRdfTypeIri =
    "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";
inline constexpr const char* kXsdInteger = "http://www.w3.org/2001/XMLSchema#integer";
inline constexpr const char* kXsdDecimal = "http://www.w3.org/2001/XMLSchema#decimal";
inline constexpr const char* kXsdDouble  = "http://www.w3.org/2001/XMLSchema#double";

enum class TermKind { Iri, BlankNode, Literal };

/// An RDF term: IRI, blank node, or literal. Literals may carry a datatype
/// IRI; a language tag is kept in `lang` but ignored by value comparisons.
struct RdfTerm {
    TermKind kind = TermKind::Iri;
    std::string lexical;   // IRI text, blank label ("_:b0"), or literal form
    std::string datatype;  // literal datatype IRI, empty for plain literals
    std::string lang;      // literal language tag, empty when absent

    static RdfTerm iri(std::string s) { return {TermKind::Iri, std::move(s), {}, {}}; }
    static RdfTerm blank(std::string s) { return {TermKind::BlankNode, std::move(s), {}, {}}; }
    static RdfTerm literal(std::string s, std::string dt = {}, std::string lg = {}) {
        return {TermKind::Literal, std::move(s), std::move(dt), std::move(lg)};
    }

    bool is_resource() const { return kind != TermKind::Literal; }

    bool operator==(const RdfTerm& o) const {
        return kind == o.kind && lexical == o.lexical && datatype == o.datatype;
    }
    bool operator<(const RdfTerm& o) const {
        if (kind != o.kind) return kind < o.kind;
        if (lexical != o.lexical) return lexical < o.lexical;
        return datatype < o.datatype;
    }
};

/// True for the datatypes we treat as numbers (xsd:integer/decimal/double).
inline bool is_numeric_datatype(const std::string& dt) {
    if (dt.empty()) return false;
    auto local_is = [&](std::string_view name) {
        if (dt.size() < name.size()) return false;
        if (dt.compare(dt.size() - name.size(), name.size(), name) != 0) return false;
        if (dt.size() == name.size()) return true;
        char sep = dt[dt.size() - name.size() - 1];
        return sep == '#' || sep == '/' || sep == ':';
    };
    return local_is("integer") || local_is("decimal") || local_is("double");
}

struct RdfTriple {
    RdfTerm subject;
    RdfTerm predicate;
    RdfTerm object;

    bool operator==(const RdfTriple& o) const {
        return subject == o.subject && predicate == o.predicate && object == o.object;
    }
};

/// Namespace prefix table. IRIs are stored fully expanded everywhere; the
/// display form picks the prefix giving the shortest rendering.
class PrefixMap {
public:
    void add(const std::string& prefix, const std::string& ns) { map_[prefix] = ns; }

    bool has(const std::string& prefix) const { return map_.count(prefix) > 0; }

    std::optional<std::string> expand(const std::string& prefix,
                                      const std::string& local) const {
        auto it = map_.find(prefix);
        if (it == map_.end()) return std::nullopt;
        return it->second + local;
    }

    /// Prefixed form of `iri` under the longest matching namespace, or the
    /// IRI unchanged when no declared namespace covers it.
    std::string display(const std::string& iri) const {
        const std::string* best_prefix = nullptr;
        size_t best_len = 0;
        for (const auto& [prefix, ns] : map_) {
            if (ns.empty() || iri.size() < ns.size()) continue;
            if (iri.compare(0, ns.size(), ns) != 0) continue;
            if (best_prefix == nullptr || ns.size() > best_len ||
                (ns.size() == best_len && prefix < *best_prefix)) {
                best_prefix = &prefix;
                best_len = ns.size();
            }
        }
        if (!best_prefix) return iri;
        return *best_prefix + ":" + iri.substr(best_len);
    }

    void merge(const PrefixMap& other) {
        for (const auto& [p, ns] : other.map_) map_.emplace(p, ns);
    }

    const std::map<std::string, std::string>& entries() const { return map_; }
    bool operator==(const PrefixMap& o) const { return map_ == o.map_; }

private:
    std::map<std::string, std::string> map_;
};

/// An RDF graph: a duplicate-free triple list plus the prefixes used to
/// display its IRIs. Insertion order is preserved (it drives node numbering
/// in the property-graph mapping).
struct RdfGraph {
    std::vector<RdfTriple> triples;
    PrefixMap prefix_map;

    bool insert(RdfTriple t) {
        std::string key = encode(t);
        if (!seen_.insert(std::move(key)).second) return false;
        triples.push_back(std::move(t));
        return true;
    }

    size_t size() const { return triples.size(); }

private:
    static std::string encode(const RdfTriple& t) {
        auto one = [](const RdfTerm& x) {
            return std::to_string(static_cast<int>(x.kind)) + '\x1f' + x.lexical +
                   '\x1f' + x.datatype;
        };
        return one(t.subject) + '\x1e' + one(t.predicate) + '\x1e' + one(t.object);
    }
    std::unordered_set<std::string> seen_;
};

namespace detail {

inline void append_utf8(std::string& out, uint32_t cp) {
    if (cp <= 0x7F) {
        out.push_back(static_cast<char>(cp));
    } else if (cp <= 0x7FF) {
        out.push_back(static_cast<char>(0xC0 | ((cp >> 6) & 0x1F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp <= 0xFFFF) {
        out.push_back(static_cast<char>(0xE0 | ((cp >> 12) & 0x0F)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
        out.push_back(static_cast<char>(0xF0 | ((cp >> 18) & 0x07)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
}

/// Cursor over one N-Triples statement line.
class NtLine {
public:
    NtLine(const std::string& line, size_t lineno) : s_(line), lineno_(lineno) {}

    void skip_ws() {
        while (i_ < s_.size() && (s_[i_] == ' ' || s_[i_] == '\t')) ++i_;
    }

    bool at_end() {
        skip_ws();
        return i_ >= s_.size();
    }

    char peek() const { return i_ < s_.size() ? s_[i_] : '\0'; }

    [[noreturn]] void fail(const std::string& what) const {
        throw parse_error("N-Triples line " + std::to_string(lineno_) + ": " + what);
    }

    std::string read_iri_token(const PrefixMap& prefixes) {
        if (peek() != '<') fail("expected '<'");
        ++i_;
        std::string raw;
        while (i_ < s_.size() && s_[i_] != '>') raw.push_back(s_[i_++]);
        if (i_ >= s_.size()) fail("unterminated IRI");
        ++i_;
        return expand_token(raw, prefixes);
    }

    /// Expands prefix:local against declared prefixes; unknown prefixes are
    /// kept verbatim (the token may simply be an absolute IRI).
    static std::string expand_token(const std::string& raw, const PrefixMap& prefixes) {
        auto colon = raw.find(':');
        if (colon != std::string::npos) {
            std::string prefix = raw.substr(0, colon);
            if (prefixes.has(prefix)) {
                return *prefixes.expand(prefix, raw.substr(colon + 1));
            }
        }
        return raw;
    }

    RdfTerm read_subject(const PrefixMap& prefixes) {
        skip_ws();
        if (peek() == '"') fail("literal subject");
        if (peek() == '<') return RdfTerm::iri(read_iri_token(prefixes));
        if (peek() == '_') return read_blank();
        // bare prefixed name (fixture convenience)
        std::string tok = read_bare_token();
        return RdfTerm::iri(expand_token(tok, prefixes));
    }

    RdfTerm read_predicate(const PrefixMap& prefixes) {
        skip_ws();
        if (peek() == '<') return RdfTerm::iri(read_iri_token(prefixes));
        std::string tok = read_bare_token();
        if (tok == "a") return RdfTerm::iri(kRdfTypeIri);
        return RdfTerm::iri(expand_token(tok, prefixes));
    }

    RdfTerm read_object(const PrefixMap& prefixes) {
        skip_ws();
        if (peek() == '<') return RdfTerm::iri(read_iri_token(prefixes));
        if (peek() == '_') return read_blank();
        if (peek() == '"') return read_literal(prefixes);
        std::string tok = read_bare_token();
        return RdfTerm::iri(expand_token(tok, prefixes));
    }

    void expect_dot() {
        skip_ws();
        if (peek() != '.') fail("expected '.' terminator");
        ++i_;
        skip_ws();
        if (i_ < s_.size() && s_[i_] != '#') fail("trailing content after '.'");
    }

private:
    RdfTerm read_blank() {
        std::string label;
        while (i_ < s_.size() && !isspace(static_cast<unsigned char>(s_[i_])) &&
               s_[i_] != '.') {
            label.push_back(s_[i_++]);
        }
        if (label.size() < 3 || label[0] != '_' || label[1] != ':') {
            fail("malformed blank node label '" + label + "'");
        }
        return RdfTerm::blank(label);
    }

    std::string read_bare_token() {
        std::string tok;
        while (i_ < s_.size() && !isspace(static_cast<unsigned char>(s_[i_]))) {
            tok.push_back(s_[i_++]);
        }
        if (tok.empty()) fail("expected a term");
        return tok;
    }

    RdfTerm read_literal(const PrefixMap& prefixes) {
        ++i_;  // opening quote
        std::string value;
        while (i_ < s_.size() && s_[i_] != '"') {
            char c = s_[i_++];
            if (c != '\\') {
                value.push_back(c);
                continue;
            }
            if (i_ >= s_.size()) fail("dangling escape");
            char e = s_[i_++];
            switch (e) {
                case 't': value.push_back('\t'); break;
                case 'n': value.push_back('\n'); break;
                case 'r': value.push_back('\r'); break;
                case '"': value.push_back('"'); break;
                case '\\': value.push_back('\\'); break;
                case 'u': case 'U': {
                    size_t n = (e == 'u') ? 4 : 8;
                    if (i_ + n > s_.size()) fail("truncated \\u escape");
                    uint32_t cp = 0;
                    for (size_t k = 0; k < n; ++k) {
                        char h = s_[i_ + k];
                        cp <<= 4;
                        if (h >= '0' && h <= '9') cp |= static_cast<uint32_t>(h - '0');
                        else if (h >= 'a' && h <= 'f') cp |= static_cast<uint32_t>(h - 'a' + 10);
                        else if (h >= 'A' && h <= 'F') cp |= static_cast<uint32_t>(h - 'A' + 10);
                        else fail("bad hex digit in escape");
                    }
                    i_ += n;
                    append_utf8(value, cp);
                    break;
                }
                default: fail(std::string("unknown escape '\\") + e + "'");
            }
        }
        if (i_ >= s_.size()) fail("unterminated literal");
        ++i_;  // closing quote
        std::string datatype, lang;
        if (i_ + 1 < s_.size() && s_[i_] == '^' && s_[i_ + 1] == '^') {
            i_ += 2;
            if (peek() == '<') {
                datatype = read_iri_token(prefixes);
            } else {
                datatype = expand_token(read_bare_token(), prefixes);
            }
        } else if (peek() == '@') {
            ++i_;
            while (i_ < s_.size() && (isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '-')) {
                lang.push_back(s_[i_++]);
            }
            if (lang.empty()) fail("empty language tag");
        }
        return RdfTerm::literal(std::move(value), std::move(datatype), std::move(lang));
    }

    const std::string& s_;
    size_t i_ = 0;
    size_t lineno_;
};

} // namespace detail

/// Parses line-oriented N-Triples text. Prefixed names (inside or outside
/// angle brackets) are expanded against `prefixes`; duplicates collapse.
inline RdfGraph parse_ntriples(const std::string& text, const PrefixMap& prefixes = {}) {
    RdfGraph g;
    g.prefix_map = prefixes;
    size_t lineno = 0;
    size_t pos = 0;
    while (pos <= text.size()) {
        size_t nl = text.find('\n', pos);
        std::string line = text.substr(pos, nl == std::string::npos ? std::string::npos
                                                                    : nl - pos);
        pos = (nl == std::string::npos) ? text.size() + 1 : nl + 1;
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();

        detail::NtLine cur(line, lineno);
        if (cur.at_end() || cur.peek() == '#') continue;

        RdfTriple t;
        t.subject = cur.read_subject(prefixes);
        t.predicate = cur.read_predicate(prefixes);
        t.object = cur.read_object(prefixes);
        cur.expect_dot();

        if (t.subject.kind == TermKind::Literal) {
            cur.fail("literal subject");
        }
        if (t.predicate.kind != TermKind::Iri) {
            cur.fail("predicate must be an IRI");
        }
        g.insert(std::move(t));
    }
    return g;
}

/// Sidecar prefix file: one `prefix iri` pair per line; the prefix token may
/// carry a trailing ':' and may be ':' alone for the empty prefix.
inline PrefixMap parse_prefix_file(const std::string& text) {
    PrefixMap out;
    size_t lineno = 0;
    size_t pos = 0;
    while (pos <= text.size()) {
        size_t nl = text.find('\n', pos);
        std::string line = text.substr(pos, nl == std::string::npos ? std::string::npos
                                                                    : nl - pos);
        pos = (nl == std::string::npos) ? text.size() + 1 : nl + 1;
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        size_t a = line.find_first_not_of(" \t");
        if (a == std::string::npos || line[a] == '#') continue;
        size_t b = line.find_first_of(" \t", a);
        if (b == std::string::npos) {
            throw parse_error("prefix file line " + std::to_string(lineno) +
                              ": expected 'prefix iri'");
        }
        std::string prefix = line.substr(a, b - a);
        if (!prefix.empty() && prefix.back() == ':') prefix.pop_back();
        size_t c = line.find_first_not_of(" \t", b);
        if (c == std::string::npos) {
            throw parse_error("prefix file line " + std::to_string(lineno) +
                              ": missing namespace IRI");
        }
        size_t d = line.find_last_not_of(" \t");
        std::string ns = line.substr(c, d - c + 1);
        if (!ns.empty() && ns.front() == '<' && ns.back() == '>') {
            ns = ns.substr(1, ns.size() - 2);
        }
        out.add(prefix, ns);
    }
    return out;
}

} // namespace s2c
