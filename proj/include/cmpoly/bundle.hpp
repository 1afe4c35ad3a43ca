#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cmpoly/cm.hpp"

namespace cmpoly {

inline constexpr const char* kBundleSchema = "cmpoly.exchange_bundle";
inline constexpr int kBundleVersion = 1;

struct SchemaError : std::runtime_error {
    std::string pointer;  // JSON pointer of the offending node
    SchemaError(const std::string& ptr, const std::string& what)
        : std::runtime_error(ptr + ": " + what), pointer(ptr) {}
};

struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ExchangeBundle {
    NumberField field;
    std::vector<int> cm_type;
    std::optional<std::vector<Int>> reflex_check;
    int modulus = 1;
    CMTriple base_triple;
    std::vector<OrbitElement> orbit;  // identity first
    std::string provenance;           // serialized provenance object
    // optional frozen azygetic system in the canonical 2-adic frame (8 characteristic indices)
    std::optional<std::vector<int>> marking;

    CMType type() const { return base_triple.type; }
};

// Parse and check structure; throws SchemaError with a JSON pointer.
ExchangeBundle parse_bundle(const std::string& json_text);
ExchangeBundle load_bundle(const std::string& path);
// Schema checks plus half-norm check of every orbit element, integrality and unimodularity of E.
void validate_bundle(const ExchangeBundle& b);
std::string bundle_to_json(const ExchangeBundle& b);

// Same orbit with base = shimura_act(base, orbit[k]); the identity stays first.
ExchangeBundle rotate_bundle(const ExchangeBundle& b, int k);

// exact rational from a decimal string "p" or "p/q"
Rat parse_rational(const std::string& s);
std::string rational_string(const Rat& q);

}  // namespace cmpoly
