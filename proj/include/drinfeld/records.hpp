#pragma once

#include "drinfeld/mersenne.hpp"
#include "drinfeld/wieferich.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace drinfeld {

inline constexpr std::string_view kToolVersion = "0.1.0";

enum class Format { jsonl, csv };

Format parse_format(std::string_view name);
std::string to_string(Format f);

/// Run metadata stamped on every record.
struct RecordContext {
    int q = 0;
    int p = 0;
    int e = 0;
    std::string phi;
    std::uint64_t config_hash = 0;
    std::uint64_t seed = 0;

    static RecordContext of(const DrinfeldModule& phi, std::uint64_t config_hash, std::uint64_t seed);
};

/// One persisted row. Polynomials are kept in canonical text form; fields
/// that do not apply to the record kind stay empty and serialize as null.
struct SearchRecord {
    int q = 0;
    int p = 0;
    int e = 0;
    std::string phi;
    std::string a;
    std::string P;
    std::optional<std::string> g;
    std::optional<std::string> r;
    std::optional<std::string> annihilator;
    std::optional<int> valuation;
    std::optional<bool> wieferich;
    std::optional<bool> super;
    std::optional<bool> thakur;
    std::optional<int> chain_break;
    std::optional<std::string> mersenne;
    std::optional<bool> mersenne_prime;
    std::vector<std::string> flags;
    std::uint64_t config_hash = 0;
    std::uint64_t seed = 0;
    std::string version{kToolVersion};

    friend bool operator==(const SearchRecord&, const SearchRecord&) = default;
};

SearchRecord make_record(const RecordContext& ctx, const WieferichStatus& s);
SearchRecord make_record(const RecordContext& ctx, const MersenneRecord& m);
SearchRecord make_record(const RecordContext& ctx, const FittingData& f);

/// Column names in serialization order.
const std::vector<std::string>& record_columns();

std::string to_jsonl(const SearchRecord& r);
SearchRecord parse_jsonl(std::string_view line);

std::string csv_header();
std::string to_csv(const SearchRecord& r);
SearchRecord parse_csv(std::string_view line);

/// jsonl: one object per line; csv: header row then one row per record.
void write_records(std::ostream& out, const std::vector<SearchRecord>& records, Format format);
/// Throws std::runtime_error naming the path on I/O failure.
void write_records(const std::string& path, const std::vector<SearchRecord>& records, Format format);
std::vector<SearchRecord> read_records(std::istream& in, Format format);

} // namespace drinfeld
