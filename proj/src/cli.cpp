#include "drinfeld/cli.hpp"

#include "drinfeld/config.hpp"
#include "drinfeld/errors.hpp"
#include "drinfeld/factor.hpp"
#include "drinfeld/harness.hpp"
#include "drinfeld/mersenne.hpp"
#include "drinfeld/records.hpp"
#include "drinfeld/wieferich.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>
#include <json.hpp>

#include <fstream>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>

namespace drinfeld {

namespace {

struct CommonOptions {
    std::string config;
    std::optional<int> deg_min;
    std::optional<int> deg_max;
    std::optional<std::string> base;
    std::optional<std::string> out;
    std::optional<std::string> format;
    std::optional<std::uint64_t> seed;
    unsigned jobs = 1;
};

struct Session {
    RunConfig cfg;
    FieldPtr field;
    DrinfeldModule phi;
    Poly a;
    RecordContext ctx;
    unsigned jobs;
};

Session open_session(const CommonOptions& o) {
    RunConfig cfg = o.config.empty() ? RunConfig{} : load_config(o.config);
    if (o.deg_min)
        cfg.deg_min = *o.deg_min;
    if (o.deg_max)
        cfg.deg_max = *o.deg_max;
    if (o.seed)
        cfg.seed = *o.seed;
    if (o.out)
        cfg.out = *o.out;
    if (o.format)
        cfg.format = parse_format(*o.format);
    FieldPtr field = cfg.make_field();
    if (o.base) {
        const Poly b = parse_poly(field, *o.base);
        cfg.base.assign(b.coeffs().begin(), b.coeffs().end());
    }
    DrinfeldModule phi = cfg.make_module(field);
    Poly a = cfg.make_base(field);
    RecordContext ctx = RecordContext::of(phi, cfg.hash(), cfg.seed);
    return {std::move(cfg), field, std::move(phi), std::move(a), std::move(ctx), std::max(1u, o.jobs)};
}

void require_range(const RunConfig& cfg) {
    if (cfg.deg_min < 1 || cfg.deg_min > cfg.deg_max)
        throw PreconditionError(
            fmt::format("empty degree range: deg-min = {}, deg-max = {}", cfg.deg_min, cfg.deg_max));
}

// Writes to --out when given, otherwise to the console stream.
template <class Fn>
void emit(const Session& s, std::ostream& console, Fn&& fn) {
    if (!s.cfg.out) {
        fn(console);
        return;
    }
    std::ofstream file(*s.cfg.out, std::ios::binary | std::ios::trunc);
    if (!file)
        throw std::runtime_error("cannot open output file: " + *s.cfg.out);
    fn(file);
    file.flush();
    if (!file)
        throw std::runtime_error("write failed: " + *s.cfg.out);
}

void emit_records(const Session& s, std::ostream& console, const std::vector<SearchRecord>& records) {
    emit(s, console, [&](std::ostream& os) { write_records(os, records, s.cfg.format); });
    if (s.cfg.out)
        fmt::print(console, "wrote {} records to {}\n", records.size(), *s.cfg.out);
}

int cmd_wieferich(const Session& s, std::ostream& out) {
    require_range(s.cfg);
    const WieferichScan scan = search_wieferich(s.phi, s.a, s.cfg.deg_min, s.cfg.deg_max, s.jobs);
    std::vector<SearchRecord> records;
    for (const WieferichStatus& st : scan.records)
        records.push_back(make_record(s.ctx, st));
    emit_records(s, out, records);
    if (s.cfg.out)
        fmt::print(out, "valuation histogram: v=1: {}, v=2: {}, v=3: {}, v>=4: {}\n", scan.histogram[0],
                   scan.histogram[1], scan.histogram[2], scan.histogram[3]);
    return kExitOk;
}

int cmd_mersenne(const Session& s, std::ostream& out) {
    require_range(s.cfg);
    const MersenneScan scan = mersenne_scan(s.phi, s.a, s.cfg.deg_min, s.cfg.deg_max, s.jobs);
    std::vector<SearchRecord> records;
    for (const MersenneRecord& m : scan.records)
        records.push_back(make_record(s.ctx, m));
    emit_records(s, out, records);
    if (s.cfg.out)
        fmt::print(out, "prime: {}, composite: {}, unknown: {}\n", scan.prime, scan.composite, scan.unknown);
    return kExitOk;
}

int cmd_fitting(const Session& s, std::ostream& out) {
    require_range(s.cfg);
    std::vector<SearchRecord> records;
    for (const Poly& P : monic_irreducibles(s.field, s.cfg.deg_min, s.cfg.deg_max))
        records.push_back(make_record(s.ctx, fitting_generator(s.phi, P)));
    emit_records(s, out, records);
    return kExitOk;
}

int cmd_annihilator(const Session& s, std::ostream& out, const std::optional<std::string>& modulus) {
    if (modulus) {
        const Poly m = parse_poly(s.field, *modulus);
        const AnnihilatorResult res = annihilator_generator(s.phi, s.a, m);
        emit(s, out, [&](std::ostream& os) {
            fmt::print(os, "modulus {} base {} annihilator {}\n", m.to_string(), s.a.to_string(),
                       res.generator.to_string());
        });
        return kExitOk;
    }
    require_range(s.cfg);
    std::vector<SearchRecord> records;
    for (const Poly& P : monic_irreducibles(s.field, s.cfg.deg_min, s.cfg.deg_max)) {
        SearchRecord rec = make_record(s.ctx, fitting_generator(s.phi, P));
        rec.a = s.a.to_string();
        if (divides(P, s.a)) {
            rec.annihilator = Poly::constant(s.field, 1).to_string();
            rec.flags.emplace_back("base_divisible");
        } else {
            const AnnihilatorPrimality chk = annihilator_primality_check(s.phi, P, s.a, s.cfg.deg_max);
            rec.annihilator = chk.annihilator.to_string();
            rec.flags.emplace_back(chk.is_prime ? "annihilator_prime" : "annihilator_composite");
            rec.flags.push_back(fmt::format("scan_bound:{}", chk.scan_bound));
        }
        records.push_back(std::move(rec));
    }
    emit_records(s, out, records);
    return kExitOk;
}

int cmd_fermat(const Session& s, std::ostream& out, const std::optional<std::string>& prime, int xy_deg) {
    if (s.cfg.format != Format::jsonl)
        throw PreconditionError("fermat writes jsonl only");
    std::vector<Poly> primes;
    if (prime) {
        primes.push_back(parse_poly(s.field, *prime));
    } else {
        require_range(s.cfg);
        primes = monic_irreducibles(s.field, s.cfg.deg_min, s.cfg.deg_max);
    }
    std::vector<std::string> lines;
    for (const Poly& P : primes) {
        const FermatInstance inst = fermat_search(s.phi, P, xy_deg, s.jobs);
        nlohmann::ordered_json j;
        j["P"] = P.to_string();
        j["deg_bound"] = inst.deg_bound;
        j["pairs_tested"] = inst.pairs_tested;
        j["solutions"] = nlohmann::ordered_json::array();
        for (const FermatSolution& sol : inst.solutions) {
            nlohmann::ordered_json js;
            js["x"] = sol.x.to_string();
            js["y"] = sol.y.to_string();
            js["z"] = sol.z.to_string();
            js["a"] = wieferich_base_from_fermat(s.phi, P, sol.x, sol.y, sol.z).to_string();
            j["solutions"].push_back(std::move(js));
        }
        j["seed"] = s.cfg.seed;
        lines.push_back(j.dump());
    }
    emit(s, out, [&](std::ostream& os) {
        for (const std::string& l : lines)
            os << l << '\n';
    });
    return kExitOk;
}

int cmd_stats(const Session& s, std::ostream& out) {
    require_range(s.cfg);
    emit(s, out, [&](std::ostream& os) {
        fmt::print(os, "module {} over F_{}\n\n", s.phi.to_string(), s.field->q());
        fmt::print(os, "irreducible Fitting generators\n{:>6} {:>8} {:>12}\n", "deg", "primes", "g prime");
        for (const KoblitzRow& row : koblitz_stats(s.phi, s.cfg.deg_min, s.cfg.deg_max))
            fmt::print(os, "{:>6} {:>8} {:>12}\n", row.degree, row.total, row.g_irreducible);

        fmt::print(os, "\nsquarefree phi_b(a)/a with nonzero derivative, a = {}\n{:>6} {:>8} {:>8} {:>8} {:>8}\n",
                   s.a.to_string(), "deg b", "total", "counted", "skipped", "ratio");
        if (!s.a.is_zero())
            for (const ConjectureARow& row : conjecture_a_stats(s.phi, s.a, s.cfg.deg_max))
                fmt::print(os, "{:>6} {:>8} {:>8} {:>8} {:>8.4f}\n", row.degree, row.total, row.counted,
                           row.skipped, row.running_ratio);

        const WieferichScan scan = search_wieferich(s.phi, s.a, s.cfg.deg_min, s.cfg.deg_max, s.jobs);
        std::size_t wief = 0;
        for (const WieferichStatus& st : scan.records)
            wief += st.is_wieferich ? 1 : 0;
        fmt::print(os, "\nWieferich primes in base {}: {} of {}\n", s.a.to_string(), wief, scan.records.size());
        fmt::print(os, "valuation histogram: v=1: {}, v=2: {}, v=3: {}, v>=4: {}\n", scan.histogram[0],
                   scan.histogram[1], scan.histogram[2], scan.histogram[3]);

        const Poly one = Poly::constant(s.field, 1);
        if (is_torsion(s.phi, one)) {
            fmt::print(os, "\n1 is torsion: no composite Mersenne witnesses\n");
        } else {
            const auto w = composite_mersenne_witnesses(s.phi, s.cfg.deg_min, s.cfg.deg_max);
            fmt::print(os, "\nc_phi = {}; composite Mersenne witnesses phi_g(1): {}\n", degree_threshold(s.phi),
                       w.size());
        }
    });
    return kExitOk;
}

struct CheckRow {
    std::string name;
    std::size_t cases = 0;
    std::size_t failures = 0;

    void record(bool ok) {
        ++cases;
        failures += ok ? 0 : 1;
    }
};

int cmd_verify(const Session& s, std::ostream& out) {
    require_range(s.cfg);
    const std::vector<Poly> primes = monic_irreducibles(s.field, s.cfg.deg_min, s.cfg.deg_max);
    std::mt19937_64 rng(s.cfg.seed);
    const Poly one = Poly::constant(s.field, 1);
    const bool base_torsion = is_torsion(s.phi, s.a);

    CheckRow fitting{s.phi.is_carlitz() ? "Carlitz Fitting generator g = P - 1" : "Fitting generator monic, deg P"};
    CheckRow little{"phi_g(b) = 0 mod P"};
    CheckRow divides_g{"annihilator divides g"};
    CheckRow chain{"annihilator chain law"};
    CheckRow val{"valuation equals chain break"};
    CheckRow mers_div{"base divides Mersenne number"};
    CheckRow mers_class{"prime Mersenne needs unit or torsion prime base"};
    CheckRow mers_wief{"prime Mersenne is not Wieferich"};
    CheckRow round_trip{"record round-trip jsonl and csv"};
    CheckRow determinism{"scan output independent of jobs"};

    for (const Poly& P : primes) {
        const FittingData fit = fitting_generator(s.phi, P);
        fitting.record(s.phi.is_carlitz() ? fit.g == P - one : fit.g.is_monic() && fit.g.degree() == P.degree());
        little.record(eval_phi(s.phi, fit.g, s.a, P).is_zero());
        for (int i = 0; i < 3; ++i)
            little.record(eval_phi(s.phi, fit.g, random_poly(s.field, 2 * P.degree(), rng), P).is_zero());
        divides_g.record(divides(annihilator_generator(s.phi, s.a, P).generator, fit.g));
        if (hypothesis_h(P)) {
            bool ok = true;
            try {
                ok = pi_chain(s.phi, s.a, P, 5).chain_law_holds;
            } catch (const InvariantViolation&) {
                ok = false;
            }
            chain.record(ok);
        }
        const WieferichStatus st = wieferich_status(s.phi, P, s.a);
        if (!st.degenerate() && !st.valuation_capped)
            val.record(st.chain_break && *st.valuation == *st.chain_break);

        const MersenneRecord m = mersenne_number(s.phi, P, s.a);
        mers_div.record(m.base_divides);
        if (m.is_prime())
            mers_class.record(m.base_class != BaseClass::other);
        if (m.wieferich_of_M)
            mers_wief.record(!*m.wieferich_of_M);
        if (!base_torsion && m.is_prime())
            mers_wief.record(m.wieferich_of_M.has_value());

        for (const SearchRecord& rec : {make_record(s.ctx, st), make_record(s.ctx, m)}) {
            round_trip.record(parse_jsonl(to_jsonl(rec)) == rec);
            round_trip.record(parse_csv(to_csv(rec)) == rec);
        }
    }
    auto serialize = [&](unsigned jobs) {
        std::ostringstream os;
        std::vector<SearchRecord> records;
        for (const auto& st : search_wieferich(s.phi, s.a, s.cfg.deg_min, s.cfg.deg_max, jobs).records)
            records.push_back(make_record(s.ctx, st));
        write_records(os, records, Format::jsonl);
        return os.str();
    };
    determinism.record(serialize(1) == serialize(4));

    const std::vector<CheckRow> rows{fitting,   little,     divides_g, chain,      val,
                                     mers_div,  mers_class, mers_wief, round_trip, determinism};
    bool all = true;
    fmt::print(out, "module {} over F_{}, base {}, deg {}..{}\n", s.phi.to_string(), s.field->q(), s.a.to_string(),
               s.cfg.deg_min, s.cfg.deg_max);
    fmt::print(out, "{:<48} {:>6} {:>9}  {}\n", "check", "cases", "failures", "result");
    for (const CheckRow& r : rows) {
        const bool ok = r.failures == 0;
        all = all && ok;
        fmt::print(out, "{:<48} {:>6} {:>9}  {}\n", r.name, r.cases, r.failures, ok ? "PASS" : "FAIL");
    }
    return all ? kExitOk : kExitInvariant;
}

void add_common(CLI::App* sub, CommonOptions& o) {
    sub->add_option("--config", o.config, "config file (key = value)");
    sub->add_option("--deg-min", o.deg_min, "smallest degree of P");
    sub->add_option("--deg-max", o.deg_max, "largest degree of P");
    sub->add_option("--base", o.base, "base a as a code list, e.g. [1] or [0,1]");
    sub->add_option("--out", o.out, "output file (default: stdout)");
    sub->add_option("--format", o.format, "jsonl or csv");
    sub->add_option("--seed", o.seed, "seed echoed into records and used for sampling");
    sub->add_option("--jobs", o.jobs, "worker threads")->check(CLI::PositiveNumber);
}

} // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Wieferich and Mersenne searches for Drinfeld modules over F_q[theta]", "drinfeld"};
    app.require_subcommand(1);
    CommonOptions common;
    std::optional<std::string> modulus;
    std::optional<std::string> prime;
    int xy_deg = 1;

    CLI::App* wieferich = app.add_subcommand("wieferich", "scan P for phi-Wieferich primes in base a");
    CLI::App* mersenne = app.add_subcommand("mersenne", "classify Mersenne numbers phi_P(a)");
    CLI::App* fitting = app.add_subcommand("fitting", "Fitting generators g of A/PA");
    CLI::App* annihilator = app.add_subcommand("annihilator", "annihilator generators and their primality");
    CLI::App* fermat = app.add_subcommand("fermat", "search the homogeneous Fermat equation");
    CLI::App* stats = app.add_subcommand("stats", "summary tables for a degree range");
    CLI::App* verify = app.add_subcommand("verify", "run the invariant suite and print a pass/fail table");
    for (CLI::App* sub : {wieferich, mersenne, fitting, annihilator, fermat, stats, verify})
        add_common(sub, common);
    annihilator->add_option("--modulus", modulus, "single modulus m instead of the degree range");
    fermat->add_option("--prime", prime, "single monic irreducible P instead of the degree range");
    fermat->add_option("--xy-deg", xy_deg, "largest degree of x and y")->check(CLI::NonNegativeNumber);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        const Session s = open_session(common);
        if (wieferich->parsed())
            return cmd_wieferich(s, out);
        if (mersenne->parsed())
            return cmd_mersenne(s, out);
        if (fitting->parsed())
            return cmd_fitting(s, out);
        if (annihilator->parsed())
            return cmd_annihilator(s, out, modulus);
        if (fermat->parsed())
            return cmd_fermat(s, out, prime, xy_deg);
        if (stats->parsed())
            return cmd_stats(s, out);
        return cmd_verify(s, out);
    } catch (const InvariantViolation& e) {
        fmt::print(err, "invariant violation: {}\n", e.what());
        return kExitInvariant;
    } catch (const std::exception& e) {
        fmt::print(err, "error: {}\n", e.what());
        return kExitUsage;
    }
}

} // namespace drinfeld
