#pragma once

#include "drinfeld/errors.hpp"
#include "drinfeld/module.hpp"
#include "drinfeld/records.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace drinfeld {

/// Error in a config file; what() names the source, line and key.
class ConfigError : public PreconditionError {
public:
    using PreconditionError::PreconditionError;
};

/// Run settings read from flat `key = value` text. Lists use the JSON array
/// syntax [c0,c1,...]; `#` starts a comment.
///
///   p = 3
///   e = 1
///   field_modulus = [0,1]     (optional, ascending over F_p)
///   phi = [[1]]               (a_1..a_r as code lists)
///   base = [1]
///   deg_min = 1
///   deg_max = 3
///   seed = 1
///   out = results.jsonl       (optional)
///   format = jsonl
struct RunConfig {
    int p = 3;
    int e = 1;
    std::optional<std::vector<unsigned>> field_modulus;
    std::vector<std::vector<long long>> phi{{1}};
    std::vector<long long> base{1};
    int deg_min = 1;
    int deg_max = 3;
    std::uint64_t seed = 1;
    std::optional<std::string> out;
    Format format = Format::jsonl;

    FieldPtr make_field() const;
    DrinfeldModule make_module(const FieldPtr& field) const;
    Poly make_base(const FieldPtr& field) const;

    /// Canonical `key = value` text; parse_config(to_text()) == *this.
    std::string to_text() const;
    /// FNV-1a of the field, module and base settings.
    std::uint64_t hash() const;

    friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

RunConfig parse_config(std::string_view text, std::string_view source = "<config>");
RunConfig load_config(const std::string& path);

} // namespace drinfeld
