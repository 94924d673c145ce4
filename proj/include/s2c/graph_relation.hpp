#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "s2c/value.hpp"

namespace s2c {

/// A relation attribute: the display name shown in schemas plus the SPARQL
/// variable it realizes, when any. Join/union alignment keys on the variable
/// when present, otherwise on the display name, so the id-space and
/// URI-space evaluators line their columns up identically.
struct Attribute {
    std::string display;
    std::optional<std::string> var;

    const std::string& key() const { return var ? *var : display; }

    bool operator==(const Attribute& o) const { return key() == o.key(); }
};

/// Graph relation: an attribute schema over rows whose cells hold
/// nodes, relationships, or expression values; bag semantics throughout.
struct GraphRelation {
    std::vector<Attribute> schema;
    std::vector<std::vector<Value>> rows;

    size_t arity() const { return schema.size(); }
    size_t size() const { return rows.size(); }

    std::optional<size_t> column(const std::string& key) const {
        for (size_t i = 0; i < schema.size(); ++i) {
            if (schema[i].key() == key) return i;
        }
        return std::nullopt;
    }

    void add_row(std::vector<Value> row) { rows.push_back(std::move(row)); }
};

namespace relation_ops {

/// Positions of attributes shared between two schemas, by alignment key.
inline std::vector<std::pair<size_t, size_t>> common_attributes(const GraphRelation& a,
                                                                const GraphRelation& b) {
    std::vector<std::pair<size_t, size_t>> out;
    for (size_t i = 0; i < a.schema.size(); ++i) {
        for (size_t j = 0; j < b.schema.size(); ++j) {
            if (a.schema[i].key() == b.schema[j].key()) {
                out.emplace_back(i, j);
                break;
            }
        }
    }
    return out;
}

inline GraphRelation joined_schema(const GraphRelation& a, const GraphRelation& b,
                                   std::vector<size_t>& b_extra) {
    GraphRelation out;
    out.schema = a.schema;
    for (size_t j = 0; j < b.schema.size(); ++j) {
        bool shared = false;
        for (size_t i = 0; i < a.schema.size(); ++i) {
            if (a.schema[i].key() == b.schema[j].key()) {
                // keep the variable flag if only one side carries it
                if (!out.schema[i].var && b.schema[j].var) out.schema[i].var = b.schema[j].var;
                shared = true;
                break;
            }
        }
        if (!shared) {
            out.schema.push_back(b.schema[j]);
            b_extra.push_back(j);
        }
    }
    return out;
}

/// Whether two rows agree on the shared attributes. With `null_tolerant` a
/// NULL on either side counts as agreement (the SPARQL-side join); otherwise
/// NULL never matches (the Cypher-side join).
inline bool rows_compatible(const std::vector<Value>& ra, const std::vector<Value>& rb,
                            const std::vector<std::pair<size_t, size_t>>& common,
                            bool null_tolerant) {
    for (const auto& [i, j] : common) {
        const Value& va = ra[i];
        const Value& vb = rb[j];
        if (va.is_null() || vb.is_null()) {
            if (null_tolerant) continue;
            return false;
        }
        auto eq = value_ops::eq3(va, vb);
        if (!eq.has_value() || !*eq) return false;
    }
    return true;
}

inline std::vector<Value> merge_rows(const std::vector<Value>& ra,
                                     const std::vector<Value>& rb,
                                     const std::vector<std::pair<size_t, size_t>>& common,
                                     const std::vector<size_t>& b_extra) {
    std::vector<Value> row = ra;
    // merged shared attributes prefer the non-NULL side
    for (const auto& [i, j] : common) {
        if (row[i].is_null()) row[i] = rb[j];
    }
    for (size_t j : b_extra) row.push_back(rb[j]);
    return row;
}

/// Inner join on the shared attributes.
inline GraphRelation join(const GraphRelation& a, const GraphRelation& b,
                          bool null_tolerant) {
    std::vector<size_t> b_extra;
    GraphRelation out = joined_schema(a, b, b_extra);
    auto common = common_attributes(a, b);
    for (const auto& ra : a.rows) {
        for (const auto& rb : b.rows) {
            if (rows_compatible(ra, rb, common, null_tolerant)) {
                out.add_row(merge_rows(ra, rb, common, b_extra));
            }
        }
    }
    return out;
}

/// Left outer join: unmatched left rows survive NULL-padded.
inline GraphRelation left_join(const GraphRelation& a, const GraphRelation& b,
                               bool null_tolerant) {
    std::vector<size_t> b_extra;
    GraphRelation out = joined_schema(a, b, b_extra);
    auto common = common_attributes(a, b);
    for (const auto& ra : a.rows) {
        bool matched = false;
        for (const auto& rb : b.rows) {
            if (rows_compatible(ra, rb, common, null_tolerant)) {
                out.add_row(merge_rows(ra, rb, common, b_extra));
                matched = true;
            }
        }
        if (!matched) {
            std::vector<Value> row = ra;
            row.resize(out.schema.size());
            out.add_row(std::move(row));
        }
    }
    return out;
}

/// Outer union: schema union, NULL padding, additive rows.
inline GraphRelation outer_union(const GraphRelation& a, const GraphRelation& b) {
    GraphRelation out;
    out.schema = a.schema;
    std::vector<std::optional<size_t>> b_to_out(b.schema.size());
    for (size_t j = 0; j < b.schema.size(); ++j) {
        for (size_t i = 0; i < out.schema.size(); ++i) {
            if (out.schema[i].key() == b.schema[j].key()) {
                b_to_out[j] = i;
                break;
            }
        }
        if (!b_to_out[j]) {
            out.schema.push_back(b.schema[j]);
            b_to_out[j] = out.schema.size() - 1;
        }
    }
    for (const auto& ra : a.rows) {
        std::vector<Value> row = ra;
        row.resize(out.schema.size());
        out.add_row(std::move(row));
    }
    for (const auto& rb : b.rows) {
        std::vector<Value> row(out.schema.size());
        for (size_t j = 0; j < b.schema.size(); ++j) row[*b_to_out[j]] = rb[j];
        out.add_row(std::move(row));
    }
    return out;
}

/// Keeps rows for which `pred` is definitely true.
inline GraphRelation filter(const GraphRelation& r,
                            const std::function<bool(const std::vector<Value>&)>& pred) {
    GraphRelation out;
    out.schema = r.schema;
    for (const auto& row : r.rows) {
        if (pred(row)) out.add_row(row);
    }
    return out;
}

inline GraphRelation distinct(const GraphRelation& r,
                              const ElementResolver* resolve = nullptr) {
    GraphRelation out;
    out.schema = r.schema;
    std::unordered_set<std::string> seen;
    for (const auto& row : r.rows) {
        std::string key;
        for (const auto& v : row) {
            key += value_ops::encode(v, resolve);
            key.push_back('\x1f');
        }
        if (seen.insert(std::move(key)).second) out.add_row(row);
    }
    return out;
}

/// Stable sort by key tuples; ties broken by the canonical encoding of the
/// whole row so both evaluation engines produce identical orders.
inline void sort_rows(GraphRelation& r,
                      const std::function<std::vector<Value>(const std::vector<Value>&)>& keys,
                      const std::vector<bool>& descending,
                      const ElementResolver* resolve) {
    struct Entry {
        std::vector<Value> keys;
        std::string tiebreak;
        size_t index;
    };
    std::vector<Entry> entries;
    entries.reserve(r.rows.size());
    for (size_t i = 0; i < r.rows.size(); ++i) {
        Entry e;
        e.keys = keys(r.rows[i]);
        for (const auto& v : r.rows[i]) {
            e.tiebreak += value_ops::encode(v, resolve);
            e.tiebreak.push_back('\x1f');
        }
        e.index = i;
        entries.push_back(std::move(e));
    }
    std::stable_sort(entries.begin(), entries.end(), [&](const Entry& a, const Entry& b) {
        for (size_t k = 0; k < a.keys.size(); ++k) {
            int c = value_ops::total_order(a.keys[k], b.keys[k], resolve);
            if (k < descending.size() && descending[k]) c = -c;
            if (c != 0) return c < 0;
        }
        return a.tiebreak < b.tiebreak;
    });
    std::vector<std::vector<Value>> sorted;
    sorted.reserve(r.rows.size());
    for (const auto& e : entries) sorted.push_back(std::move(r.rows[e.index]));
    r.rows = std::move(sorted);
}

inline GraphRelation slice(const GraphRelation& r, std::optional<int64_t> skip,
                           std::optional<int64_t> limit) {
    GraphRelation out;
    out.schema = r.schema;
    size_t begin = skip ? std::min<size_t>(static_cast<size_t>(*skip), r.rows.size())
                        : 0;
    size_t end = r.rows.size();
    if (limit) end = std::min(end, begin + static_cast<size_t>(*limit));
    for (size_t i = begin; i < end; ++i) out.add_row(r.rows[i]);
    return out;
}

} // namespace relation_ops
} // namespace s2c
