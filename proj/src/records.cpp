#include "drinfeld/records.hpp"

#include "drinfeld/errors.hpp"

#include <fmt/format.h>
#include <json.hpp>

#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace drinfeld {

using json = nlohmann::ordered_json;

namespace {

template <class T>
json opt(const std::optional<T>& v) {
    return v ? json(*v) : json(nullptr);
}

template <class T>
std::optional<T> get_opt(const json& j, const char* key) {
    const json& v = j.at(key);
    if (v.is_null())
        return std::nullopt;
    return v.get<T>();
}

std::string hex64(std::uint64_t h) { return fmt::format("{:016x}", h); }

std::uint64_t parse_hex64(const std::string& s) {
    std::size_t used = 0;
    const std::uint64_t h = std::stoull(s, &used, 16);
    if (used != s.size())
        throw std::invalid_argument("bad config hash: " + s);
    return h;
}

json to_json(const SearchRecord& r) {
    json j;
    j["q"] = r.q;
    j["p"] = r.p;
    j["e"] = r.e;
    j["phi"] = r.phi;
    j["a"] = r.a;
    j["P"] = r.P;
    j["g"] = opt(r.g);
    j["r"] = opt(r.r);
    j["annihilator"] = opt(r.annihilator);
    j["valuation"] = opt(r.valuation);
    j["wieferich"] = opt(r.wieferich);
    j["super"] = opt(r.super);
    j["thakur"] = opt(r.thakur);
    j["chain_break"] = opt(r.chain_break);
    j["mersenne"] = opt(r.mersenne);
    j["mersenne_prime"] = opt(r.mersenne_prime);
    j["flags"] = r.flags;
    j["config_hash"] = hex64(r.config_hash);
    j["seed"] = r.seed;
    j["version"] = r.version;
    return j;
}

SearchRecord from_json(const json& j) {
    SearchRecord r;
    r.q = j.at("q").get<int>();
    r.p = j.at("p").get<int>();
    r.e = j.at("e").get<int>();
    r.phi = j.at("phi").get<std::string>();
    r.a = j.at("a").get<std::string>();
    r.P = j.at("P").get<std::string>();
    r.g = get_opt<std::string>(j, "g");
    r.r = get_opt<std::string>(j, "r");
    r.annihilator = get_opt<std::string>(j, "annihilator");
    r.valuation = get_opt<int>(j, "valuation");
    r.wieferich = get_opt<bool>(j, "wieferich");
    r.super = get_opt<bool>(j, "super");
    r.thakur = get_opt<bool>(j, "thakur");
    r.chain_break = get_opt<int>(j, "chain_break");
    r.mersenne = get_opt<std::string>(j, "mersenne");
    r.mersenne_prime = get_opt<bool>(j, "mersenne_prime");
    r.flags = j.at("flags").get<std::vector<std::string>>();
    r.config_hash = parse_hex64(j.at("config_hash").get<std::string>());
    r.seed = j.at("seed").get<std::uint64_t>();
    r.version = j.at("version").get<std::string>();
    return r;
}

std::string csv_field(std::string_view s) {
    if (s.find_first_of(",\"") == std::string_view::npos)
        return std::string(s);
    std::string out = "\"";
    for (char c : s) {
        if (c == '"')
            out += '"';
        out += c;
    }
    return out + '"';
}

std::vector<std::string> split_csv(std::string_view line) {
    std::vector<std::string> fields(1);
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                fields.back() += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                fields.back() += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.emplace_back();
        } else {
            fields.back() += c;
        }
    }
    if (quoted)
        throw std::invalid_argument("unterminated quote in CSV row");
    return fields;
}

std::string csv_bool(const std::optional<bool>& b) { return b ? (*b ? "true" : "false") : ""; }
std::string csv_int(const std::optional<int>& v) { return v ? std::to_string(*v) : ""; }
std::string csv_str(const std::optional<std::string>& s) { return s ? csv_field(*s) : ""; }

std::optional<bool> parse_bool(const std::string& s) {
    if (s.empty())
        return std::nullopt;
    if (s == "true")
        return true;
    if (s == "false")
        return false;
    throw std::invalid_argument("bad boolean field: " + s);
}

std::optional<int> parse_int(const std::string& s) {
    if (s.empty())
        return std::nullopt;
    return std::stoi(s);
}

std::optional<std::string> parse_str(const std::string& s) {
    if (s.empty())
        return std::nullopt;
    return s;
}

} // namespace

Format parse_format(std::string_view name) {
    if (name == "jsonl")
        return Format::jsonl;
    if (name == "csv")
        return Format::csv;
    throw PreconditionError("unknown format '" + std::string(name) + "' (expected jsonl or csv)");
}

std::string to_string(Format f) { return f == Format::jsonl ? "jsonl" : "csv"; }

RecordContext RecordContext::of(const DrinfeldModule& phi, std::uint64_t config_hash, std::uint64_t seed) {
    const FqField& F = phi.field();
    return {static_cast<int>(F.q()), static_cast<int>(F.p()), static_cast<int>(F.e()), phi.to_string(), config_hash,
            seed};
}

namespace {

SearchRecord base_record(const RecordContext& ctx, const Poly& a, const Poly& P) {
    SearchRecord r;
    r.q = ctx.q;
    r.p = ctx.p;
    r.e = ctx.e;
    r.phi = ctx.phi;
    r.a = a.to_string();
    r.P = P.to_string();
    r.config_hash = ctx.config_hash;
    r.seed = ctx.seed;
    return r;
}

} // namespace

SearchRecord make_record(const RecordContext& ctx, const WieferichStatus& s) {
    SearchRecord r = base_record(ctx, s.a, s.P);
    r.g = s.g.to_string();
    r.r = s.r.to_string();
    r.annihilator = s.annihilator.to_string();
    r.valuation = s.valuation;
    r.wieferich = s.is_wieferich;
    if (!s.valuation_capped || s.valuation.value_or(0) >= 3)
        r.super = s.is_super;
    r.thakur = s.thakur;
    r.chain_break = s.chain_break;
    r.flags = s.flags();
    return r;
}

SearchRecord make_record(const RecordContext& ctx, const MersenneRecord& m) {
    SearchRecord r = base_record(ctx, m.a, m.P);
    if (m.M)
        r.mersenne = m.M->to_string();
    if (m.primality != Primality::unknown)
        r.mersenne_prime = m.is_prime();
    r.flags.push_back(to_string(m.base_class));
    if (m.torsion_base)
        r.flags.emplace_back("torsion_base");
    if (!m.hypothesis_h)
        r.flags.emplace_back("no_hypothesis_h");
    if (m.primality == Primality::unknown)
        r.flags.emplace_back("primality_unknown");
    if (m.wieferich_of_M)
        r.flags.emplace_back(*m.wieferich_of_M ? "M_wieferich" : "M_not_wieferich");
    if (!m.base_divides)
        r.flags.emplace_back("base_does_not_divide");
    return r;
}

SearchRecord make_record(const RecordContext& ctx, const FittingData& f) {
    SearchRecord r = base_record(ctx, Poly(f.P.field_ptr()), f.P);
    r.a.clear();
    r.g = f.g.to_string();
    r.r = f.r.to_string();
    return r;
}

const std::vector<std::string>& record_columns() {
    static const std::vector<std::string> cols{
        "q",         "p",     "e",      "phi",         "a",        "P",              "g",
        "r",         "annihilator",     "valuation",   "wieferich", "super",         "thakur",
        "chain_break", "mersenne", "mersenne_prime", "flags",     "config_hash",    "seed",
        "version"};
    return cols;
}

std::string to_jsonl(const SearchRecord& r) { return to_json(r).dump(); }

SearchRecord parse_jsonl(std::string_view line) { return from_json(json::parse(line)); }

std::string csv_header() {
    std::string h;
    for (const std::string& c : record_columns()) {
        if (!h.empty())
            h += ',';
        h += c;
    }
    return h;
}

std::string to_csv(const SearchRecord& r) {
    std::string flags;
    for (const std::string& f : r.flags) {
        if (!flags.empty())
            flags += ';';
        flags += f;
    }
    const std::vector<std::string> cells{
        std::to_string(r.q),  std::to_string(r.p), std::to_string(r.e),  csv_field(r.phi), csv_field(r.a),
        csv_field(r.P),       csv_str(r.g),        csv_str(r.r),         csv_str(r.annihilator),
        csv_int(r.valuation), csv_bool(r.wieferich), csv_bool(r.super),  csv_bool(r.thakur),
        csv_int(r.chain_break), csv_str(r.mersenne), csv_bool(r.mersenne_prime), csv_field(flags),
        hex64(r.config_hash), std::to_string(r.seed), csv_field(r.version)};
    std::string line;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i)
            line += ',';
        line += cells[i];
    }
    return line;
}

SearchRecord parse_csv(std::string_view line) {
    const std::vector<std::string> f = split_csv(line);
    if (f.size() != record_columns().size())
        throw std::invalid_argument(fmt::format("CSV row has {} fields, expected {}", f.size(), record_columns().size()));
    SearchRecord r;
    r.q = std::stoi(f[0]);
    r.p = std::stoi(f[1]);
    r.e = std::stoi(f[2]);
    r.phi = f[3];
    r.a = f[4];
    r.P = f[5];
    r.g = parse_str(f[6]);
    r.r = parse_str(f[7]);
    r.annihilator = parse_str(f[8]);
    r.valuation = parse_int(f[9]);
    r.wieferich = parse_bool(f[10]);
    r.super = parse_bool(f[11]);
    r.thakur = parse_bool(f[12]);
    r.chain_break = parse_int(f[13]);
    r.mersenne = parse_str(f[14]);
    r.mersenne_prime = parse_bool(f[15]);
    r.flags.clear();
    for (std::size_t start = 0; start < f[16].size();) {
        const std::size_t end = std::min(f[16].find(';', start), f[16].size());
        r.flags.push_back(f[16].substr(start, end - start));
        start = end + 1;
    }
    r.config_hash = parse_hex64(f[17]);
    r.seed = std::stoull(f[18]);
    r.version = f[19];
    return r;
}

void write_records(std::ostream& out, const std::vector<SearchRecord>& records, Format format) {
    if (format == Format::csv)
        out << csv_header() << '\n';
    for (const SearchRecord& r : records)
        out << (format == Format::jsonl ? to_jsonl(r) : to_csv(r)) << '\n';
}

void write_records(const std::string& path, const std::vector<SearchRecord>& records, Format format) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw std::runtime_error("cannot open output file: " + path);
    write_records(out, records, format);
    out.flush();
    if (!out)
        throw std::runtime_error("write failed: " + path);
}

std::vector<SearchRecord> read_records(std::istream& in, Format format) {
    std::vector<SearchRecord> out;
    std::string line;
    bool header = format == Format::csv;
    while (std::getline(in, line)) {
        if (header) {
            if (line != csv_header())
                throw std::invalid_argument("unexpected CSV header: " + line);
            header = false;
            continue;
        }
        if (line.empty())
            continue;
        out.push_back(format == Format::jsonl ? parse_jsonl(line) : parse_csv(line));
    }
    return out;
}

} // namespace drinfeld
