#pragma once

#include <stdexcept>
#include <string>

namespace s2c {

/// Error taxonomy shared across the library. Each error carries a kind so the
/// CLI can map failures onto its exit-code contract.
class Error : public std::runtime_error {
public:
    enum class Kind {
        Io,                   // file system / stream failures
        Parse,                // malformed SPARQL / N-Triples / catalog input
        UnsupportedFeature,   // construct outside the supported subset
        MixedPredicate,       // predicate used with both literal and resource objects
        UnknownPredicate,     // query predicate in neither T nor P
        UnboundFilterVariable,
        UnunifiableUnion,     // UNION arms with incompatible projections
        AmbiguousRelationship,// duplicate relationship type between one node pair
        Validation            // invariant violation (catalog conflicts, bad config, ...)
    };

    Error(Kind kind, std::string message)
        : std::runtime_error(std::move(message)), kind_(kind) {}

    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

inline Error io_error(const std::string& msg) { return Error(Error::Kind::Io, msg); }
inline Error parse_error(const std::string& msg) { return Error(Error::Kind::Parse, msg); }
inline Error unsupported(const std::string& construct) {
    return Error(Error::Kind::UnsupportedFeature, "unsupported feature: " + construct);
}
inline Error validation_error(const std::string& msg) { return Error(Error::Kind::Validation, msg); }

} // namespace s2c
