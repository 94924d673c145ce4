#pragma once

#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "s2c/sparql_ast.hpp"
#include "s2c/value.hpp"

namespace s2c {

/// One output column of the modifier pipeline.
struct OutputItem {
    std::string var;    // SPARQL variable realized (may be empty)
    bool aggregate = false;
    AggregateFn fn = AggregateFn::Count;
};

/// One ORDER BY key: either a reference to an output column or a key
/// function over the underlying solution row.
template <class Row>
struct OrderSpec {
    std::optional<size_t> output_item;
    std::function<Value(const Row&)> key;  // used when output_item is absent
    bool descending = false;
};

/// Folds values with the given aggregate. `xs` holds the non-null inputs.
/// SUM/AVG fold in canonical order so independent evaluators agree bitwise.
inline Value aggregate_values(AggregateFn fn, std::vector<Value> xs,
                              const ElementResolver* resolver) {
    switch (fn) {
        case AggregateFn::Count:
            return Value::number(static_cast<double>(xs.size()));
        case AggregateFn::Max:
        case AggregateFn::Min: {
            if (xs.empty()) return Value::null();
            const Value* best = &xs[0];
            for (const auto& v : xs) {
                int c = value_ops::total_order(v, *best, resolver);
                if ((fn == AggregateFn::Max && c > 0) || (fn == AggregateFn::Min && c < 0)) {
                    best = &v;
                }
            }
            return *best;
        }
        case AggregateFn::Sum:
        case AggregateFn::Avg: {
            if (xs.empty()) return Value::null();
            std::vector<double> nums;
            nums.reserve(xs.size());
            for (const auto& v : xs) {
                if (v.kind != Value::Kind::Num) return Value::null();
                nums.push_back(v.num);
            }
            std::sort(nums.begin(), nums.end());
            double sum = 0;
            for (double d : nums) sum += d;
            if (fn == AggregateFn::Sum) return Value::number(sum);
            return Value::number(sum / static_cast<double>(nums.size()));
        }
    }
    return Value::null();
}

/// The shared post-pattern pipeline: aggregate, project, DISTINCT, ORDER BY,
/// SKIP, LIMIT — in that order, identically for every evaluation route.
///
/// `item_value(row, i)` supplies non-aggregate output values;
/// `agg_arg_value(row, i)` supplies the aggregate argument for item i.
/// Sorting resolves graph elements through `resolver` and breaks ties on the
/// canonical encoding of the whole output row, which keeps result order
/// deterministic across independent engines.
template <class Row>
std::vector<std::vector<Value>> apply_solution_modifiers(
    const std::vector<Row>& rows, const std::vector<OutputItem>& items,
    const std::function<Value(const Row&, size_t)>& item_value,
    const std::function<Value(const Row&, size_t)>& agg_arg_value,
    const std::vector<OrderSpec<Row>>& order, bool distinct,
    std::optional<int64_t> skip, std::optional<int64_t> limit,
    const ElementResolver* resolver) {
    bool has_agg = false;
    for (const auto& it : items) has_agg |= it.aggregate;

    struct Entry {
        std::vector<Value> out;
        std::vector<Value> keys;
    };
    std::vector<Entry> entries;

    if (has_agg) {
        // group by the non-aggregate output items (implicit grouping)
        struct Group {
            std::vector<Value> key_values;
            std::vector<const Row*> members;
        };
        std::vector<Group> groups;
        std::unordered_map<std::string, size_t> index;
        for (const auto& row : rows) {
            std::string key;
            std::vector<Value> kv;
            for (size_t i = 0; i < items.size(); ++i) {
                if (items[i].aggregate) continue;
                Value v = item_value(row, i);
                key += value_ops::encode(v);
                key.push_back('\x1f');
                kv.push_back(std::move(v));
            }
            auto [it, inserted] = index.emplace(std::move(key), groups.size());
            if (inserted) groups.push_back(Group{std::move(kv), {}});
            groups[it->second].members.push_back(&row);
        }
        bool keyless = true;
        for (const auto& it : items) keyless &= it.aggregate;
        if (groups.empty() && keyless) {
            // empty input: COUNT yields 0, the other aggregates yield no row
            bool all_count = true;
            for (const auto& it : items) all_count &= (it.fn == AggregateFn::Count);
            if (all_count) {
                Entry e;
                e.out.assign(items.size(), Value::number(0));
                entries.push_back(std::move(e));
            }
        }
        for (const auto& g : groups) {
            Entry e;
            size_t key_idx = 0;
            for (size_t i = 0; i < items.size(); ++i) {
                if (!items[i].aggregate) {
                    e.out.push_back(g.key_values[key_idx++]);
                    continue;
                }
                std::vector<Value> xs;
                for (const Row* r : g.members) {
                    Value v = agg_arg_value(*r, i);
                    if (!v.is_null()) xs.push_back(std::move(v));
                }
                e.out.push_back(aggregate_values(items[i].fn, std::move(xs), resolver));
            }
            entries.push_back(std::move(e));
        }
        for (auto& e : entries) {
            for (const auto& spec : order) {
                if (!spec.output_item) {
                    throw validation_error("ORDER BY under aggregation must reference outputs");
                }
                e.keys.push_back(e.out[*spec.output_item]);
            }
        }
    } else {
        entries.reserve(rows.size());
        for (const auto& row : rows) {
            Entry e;
            for (size_t i = 0; i < items.size(); ++i) e.out.push_back(item_value(row, i));
            for (const auto& spec : order) {
                e.keys.push_back(spec.output_item ? e.out[*spec.output_item] : spec.key(row));
            }
            entries.push_back(std::move(e));
        }
    }

    if (distinct) {
        std::unordered_set<std::string> seen;
        std::vector<Entry> unique;
        for (auto& e : entries) {
            std::string key;
            for (const auto& v : e.out) {
                key += value_ops::encode(v);
                key.push_back('\x1f');
            }
            if (seen.insert(std::move(key)).second) unique.push_back(std::move(e));
        }
        entries = std::move(unique);
    }

    // A slice without ORDER BY is implementation-defined; both engines pick
    // from the canonically ordered bag so verification stays exact.
    bool canonical_slice = order.empty() && (skip.has_value() || limit.has_value());

    if (!order.empty() || canonical_slice) {
        std::vector<std::string> tiebreak(entries.size());
        for (size_t i = 0; i < entries.size(); ++i) {
            for (const auto& v : entries[i].out) {
                tiebreak[i] += value_ops::encode(v, resolver);
                tiebreak[i].push_back('\x1f');
            }
        }
        std::vector<size_t> idx(entries.size());
        for (size_t i = 0; i < idx.size(); ++i) idx[i] = i;
        std::stable_sort(idx.begin(), idx.end(), [&](size_t a, size_t b) {
            for (size_t k = 0; k < order.size(); ++k) {
                int c = value_ops::total_order(entries[a].keys[k], entries[b].keys[k],
                                               resolver);
                if (order[k].descending) c = -c;
                if (c != 0) return c < 0;
            }
            return tiebreak[a] < tiebreak[b];
        });
        std::vector<Entry> sorted;
        sorted.reserve(entries.size());
        for (size_t i : idx) sorted.push_back(std::move(entries[i]));
        entries = std::move(sorted);
    }

    size_t begin = skip ? std::min<size_t>(static_cast<size_t>(*skip), entries.size()) : 0;
    size_t end = entries.size();
    if (limit) end = std::min(end, begin + static_cast<size_t>(*limit));

    std::vector<std::vector<Value>> out;
    out.reserve(end - begin);
    for (size_t i = begin; i < end; ++i) out.push_back(std::move(entries[i].out));
    return out;
}

} // namespace s2c
