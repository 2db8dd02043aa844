#include "drinfeld/config.hpp"

#include "drinfeld/detail/hash.hpp"

#include <fmt/format.h>
#include <json.hpp>

#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

namespace drinfeld {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

struct Entry {
    std::string value;
    int line;
};

class Reader {
public:
    Reader(std::string_view source, std::map<std::string, Entry> entries)
        : source_(source), entries_(std::move(entries)) {}

    [[noreturn]] void fail(const std::string& key, const std::string& what) const {
        auto it = entries_.find(key);
        if (it == entries_.end())
            throw ConfigError(fmt::format("{}: field '{}': {}", source_, key, what));
        throw ConfigError(fmt::format("{}:{}: field '{}': {}", source_, it->second.line, key, what));
    }

    const Entry* find(const std::string& key) const {
        auto it = entries_.find(key);
        return it == entries_.end() ? nullptr : &it->second;
    }

    template <class T>
    void integer(const std::string& key, T& out) const {
        const Entry* e = find(key);
        if (!e)
            return;
        T v{};
        const char* end = e->value.data() + e->value.size();
        auto [ptr, ec] = std::from_chars(e->value.data(), end, v);
        if (ec != std::errc{} || ptr != end)
            fail(key, "expected an integer, got '" + e->value + "'");
        out = v;
    }

    nlohmann::json list(const std::string& key) const {
        const Entry* e = find(key);
        nlohmann::json j = nlohmann::json::parse(e->value, nullptr, false);
        if (j.is_discarded() || !j.is_array())
            fail(key, "expected a list like [c0,c1,...], got '" + e->value + "'");
        return j;
    }

    std::vector<long long> codes(const std::string& key, const nlohmann::json& j) const {
        std::vector<long long> out;
        for (const auto& c : j) {
            if (!c.is_number_integer() || c.get<long long>() < 0)
                fail(key, "list entries must be non-negative integers");
            out.push_back(c.get<long long>());
        }
        return out;
    }

private:
    std::string source_;
    std::map<std::string, Entry> entries_;
};

std::string join_codes(const std::vector<long long>& v) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i)
        s += (i ? "," : "") + std::to_string(v[i]);
    return s + "]";
}

} // namespace

FieldPtr RunConfig::make_field() const {
    if (p < 2 || e < 1)
        throw PreconditionError(fmt::format("unsupported field: p = {}, e = {}", p, e));
    if (field_modulus) {
        if (field_modulus->size() != static_cast<std::size_t>(e) + 1)
            throw PreconditionError(fmt::format("field modulus has degree {} but e = {}", field_modulus->size() - 1, e));
        return FqField::create(static_cast<unsigned>(p), *field_modulus);
    }
    return FqField::create(static_cast<unsigned>(p), static_cast<unsigned>(e));
}

DrinfeldModule RunConfig::make_module(const FieldPtr& field) const {
    std::vector<Poly> coeffs;
    for (const auto& c : phi)
        coeffs.push_back(Poly::from_codes(field, c));
    return DrinfeldModule(field, std::move(coeffs));
}

Poly RunConfig::make_base(const FieldPtr& field) const { return Poly::from_codes(field, base); }

std::string RunConfig::to_text() const {
    std::string s = fmt::format("p = {}\ne = {}\n", p, e);
    if (field_modulus) {
        std::vector<long long> m(field_modulus->begin(), field_modulus->end());
        s += "field_modulus = " + join_codes(m) + "\n";
    }
    s += "phi = [";
    for (std::size_t i = 0; i < phi.size(); ++i)
        s += (i ? "," : "") + join_codes(phi[i]);
    s += "]\n";
    s += "base = " + join_codes(base) + "\n";
    s += fmt::format("deg_min = {}\ndeg_max = {}\nseed = {}\n", deg_min, deg_max, seed);
    if (out)
        s += "out = " + *out + "\n";
    s += "format = " + to_string(format) + "\n";
    return s;
}

std::uint64_t RunConfig::hash() const {
    RunConfig key = *this;
    key.out.reset();
    key.format = Format::jsonl;
    return detail::fnv1a(key.to_text());
}

RunConfig parse_config(std::string_view text, std::string_view source) {
    static const char* const kKeys[] = {"p",       "e",       "field_modulus", "phi", "base",
                                        "deg_min", "deg_max", "seed",          "out", "format"};
    std::map<std::string, Entry> entries;
    std::istringstream in{std::string(text)};
    std::string raw;
    for (int line = 1; std::getline(in, raw); ++line) {
        std::string_view s = raw;
        if (auto hash = s.find('#'); hash != std::string_view::npos)
            s = s.substr(0, hash);
        s = trim(s);
        if (s.empty())
            continue;
        const auto eq = s.find('=');
        if (eq == std::string_view::npos)
            throw ConfigError(fmt::format("{}:{}: expected 'key = value'", source, line));
        const std::string key(trim(s.substr(0, eq)));
        const std::string value(trim(s.substr(eq + 1)));
        if (std::find(std::begin(kKeys), std::end(kKeys), key) == std::end(kKeys))
            throw ConfigError(fmt::format("{}:{}: unknown field '{}'", source, line, key));
        if (value.empty())
            throw ConfigError(fmt::format("{}:{}: field '{}': empty value", source, line, key));
        if (!entries.emplace(key, Entry{value, line}).second)
            throw ConfigError(fmt::format("{}:{}: field '{}' given twice", source, line, key));
    }

    const Reader rd(source, entries);
    RunConfig cfg;
    rd.integer("p", cfg.p);
    rd.integer("e", cfg.e);
    rd.integer("deg_min", cfg.deg_min);
    rd.integer("deg_max", cfg.deg_max);
    rd.integer("seed", cfg.seed);
    if (rd.find("field_modulus")) {
        std::vector<unsigned> m;
        for (long long c : rd.codes("field_modulus", rd.list("field_modulus")))
            m.push_back(static_cast<unsigned>(c));
        cfg.field_modulus = std::move(m);
    }
    if (rd.find("phi")) {
        cfg.phi.clear();
        for (const auto& a : rd.list("phi")) {
            if (!a.is_array())
                rd.fail("phi", "expected a list of coefficient lists like [[1]]");
            cfg.phi.push_back(rd.codes("phi", a));
        }
    }
    if (rd.find("base"))
        cfg.base = rd.codes("base", rd.list("base"));
    if (const Entry* e = rd.find("out"))
        cfg.out = e->value;
    if (const Entry* e = rd.find("format")) {
        try {
            cfg.format = parse_format(e->value);
        } catch (const PreconditionError& err) {
            rd.fail("format", err.what());
        }
    }

    FieldPtr field;
    try {
        field = cfg.make_field();
    } catch (const std::invalid_argument& err) {
        rd.fail(rd.find("field_modulus") ? "field_modulus" : "p", err.what());
    }
    try {
        cfg.make_module(field);
    } catch (const std::invalid_argument& err) {
        rd.fail("phi", err.what());
    }
    try {
        cfg.make_base(field);
    } catch (const std::invalid_argument& err) {
        rd.fail("base", err.what());
    }
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot read config file: " + path);
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config(text.str(), path);
}

} // namespace drinfeld
