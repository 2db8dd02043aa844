#include "drinfeld/errors.hpp"
#include "drinfeld/factor.hpp"
#include "drinfeld/module.hpp"
#include "drinfeld/wieferich.hpp"

#include "../support.hpp"

#include <doctest.h>

#include <random>

using namespace drinfeld;
using testing::one;
using testing::poly;
using testing::theta;

namespace {

// Smallest monic b (by degree, then canonical order) with phi_b(a) = 0 mod m.
Poly brute_annihilator(const DrinfeldModule& phi, const Poly& a, const Poly& m) {
    const FieldPtr& F = phi.field_ptr();
    for (int d = 0;; ++d)
        for (const Poly& b : monic_polynomials(F, d))
            if (eval_phi(phi, b, a, m).is_zero())
                return b;
}

// v_P(phi_g(a)) by exact evaluation and repeated division.
std::optional<int> exact_valuation(const DrinfeldModule& phi, const Poly& g, const Poly& a, const Poly& P) {
    Poly x = eval_phi(phi, g, a);
    if (x.is_zero())
        return std::nullopt;
    int v = 0;
    while (divides(P, x)) {
        x = x / P;
        ++v;
    }
    return v;
}

DrinfeldModule rank2_f3() {
    const FieldPtr F = FqField::create(3, 1);
    return DrinfeldModule(F, {one(F), one(F)});
}

} // namespace

TEST_CASE("annihilator examples") {
    const FieldPtr F = FqField::create(3, 1);
    const DrinfeldModule C = DrinfeldModule::carlitz(F);
    const Poly t = theta(F);
    CHECK(annihilator_generator(C, one(F), t).generator == poly(F, {2, 1}));
    CHECK(annihilator_generator(C, one(F), t * t).generator == poly(F, {0, 2, 1}));
    CHECK(annihilator_generator(C, t * t, t).generator.is_one());
    CHECK(annihilator_generator(C, Poly(F), poly(F, {1, 1})).generator.is_one());
    CHECK_THROWS_AS(annihilator_generator(C, one(F), Poly(F)), PreconditionError);
}

TEST_CASE("annihilator matches brute force, composite moduli included") {
    std::mt19937_64 rng(11);
    for (unsigned q : {2u, 3u, 5u}) {
        const FieldPtr F = FqField::create(q, 1);
        for (int trial = 0; trial < 25; ++trial) {
            std::vector<Poly> c{random_poly(F, 2, rng), random_poly(F, 2, rng)};
            while (c.back().is_zero())
                c.back() = random_poly(F, 2, rng);
            const DrinfeldModule phi(F, c);
            Poly m = random_poly(F, 4, rng);
            if (m.is_zero())
                m = one(F);
            const Poly a = random_poly(F, 3, rng);
            const AnnihilatorResult res = annihilator_generator(phi, a, m);
            CHECK(res.generator.is_monic());
            CHECK(eval_phi(phi, res.generator, a, m).is_zero());
            CHECK(res.generator == brute_annihilator(phi, a, m));
            CHECK(res.generator.is_one() == divides(m, a));
        }
    }
}

TEST_CASE("annihilator ideal is closed under sums and multiples") {
    std::mt19937_64 rng(5);
    const DrinfeldModule phi = rank2_f3();
    const FieldPtr& F = phi.field_ptr();
    for (const Poly& P : monic_irreducibles(F, 1, 2)) {
        for (const Poly& a : testing::all_polys_below(F, 2)) {
            const Poly gen = annihilator_generator(phi, a, P).generator;
            for (int t = 0; t < 5; ++t) {
                const Poly b1 = gen * random_poly(F, 3, rng);
                const Poly b2 = gen * random_poly(F, 3, rng);
                const Poly c = random_poly(F, 3, rng);
                CHECK(eval_phi(phi, b1 + b2, a, P).is_zero());
                CHECK(eval_phi(phi, c * b1, a, P).is_zero());
            }
        }
    }
}

TEST_CASE("pi chain examples") {
    const FieldPtr F3 = FqField::create(3, 1);
    const DrinfeldModule C3 = DrinfeldModule::carlitz(F3);
    const Poly t = theta(F3);

    const PiChain ch = pi_chain(C3, one(F3), t, 2);
    REQUIRE(ch.generators.size() == 2);
    CHECK(ch.generators[0] == poly(F3, {2, 1}));
    CHECK(ch.generators[1] == poly(F3, {0, 2, 1}));
    CHECK(ch.chain_break == 1);
    CHECK(ch.broken);
    CHECK(ch.chain_law_holds);

    // a = 0 mod P^3: every generator is 1.
    const PiChain zero_chain = pi_chain(C3, t * t * t, t, 3);
    for (const Poly& g : zero_chain.generators)
        CHECK(g.is_one());
    CHECK(zero_chain.chain_break == 3);

    // Torsion base with (H): the chain never moves.
    const FieldPtr F2 = FqField::create(2, 1);
    const DrinfeldModule C2 = DrinfeldModule::carlitz(F2);
    for (const Poly& P : monic_irreducibles(F2, 2, 3)) {
        const PiChain tc = pi_chain(C2, one(F2), P, 5);
        CHECK_FALSE(tc.broken);
        CHECK(tc.chain_break == 5);
    }

    // Without (H) the law can fail; it is reported, not thrown.
    const PiChain bad = pi_chain(C2, one(F2), theta(F2), 3);
    CHECK_FALSE(bad.hypothesis_h);
    CHECK_FALSE(bad.chain_law_holds);
    CHECK(bad.generators[0] == poly(F2, {1, 1}));
    CHECK(bad.generators[1] == poly(F2, {0, 1, 1}));

    CHECK_THROWS_AS(pi_chain(C3, one(F3), t, 0), PreconditionError);
}

TEST_CASE("chain law and torsion criterion on small instances") {
    const FieldPtr F3 = FqField::create(3, 1);
    const DrinfeldModule C3 = DrinfeldModule::carlitz(F3);
    const DrinfeldModule tor(F3, {one(F3), poly(F3, {2, 2})});
    const DrinfeldModule r2 = rank2_f3();
    for (const DrinfeldModule* phi : {&C3, &tor, &r2}) {
        for (const Poly& P : monic_irreducibles(F3, 1, 2)) {
            for (const Poly& a : testing::all_polys_below(F3, 2)) {
                const PiChain ch = pi_chain(*phi, a, P, 5);
                CHECK(ch.chain_law_holds);
                for (std::size_t k = 1; k < ch.generators.size(); ++k) {
                    const Poly& prev = ch.generators[k - 1];
                    CHECK((ch.generators[k] == prev || ch.generators[k] == P * prev));
                }
                CHECK(ch.broken == !is_torsion(*phi, a));
            }
        }
    }
}

TEST_CASE("wieferich status examples") {
    const FieldPtr F3 = FqField::create(3, 1);
    const DrinfeldModule C3 = DrinfeldModule::carlitz(F3);
    const Poly t = theta(F3);

    const WieferichStatus s = wieferich_status(C3, t, one(F3));
    CHECK(s.g == poly(F3, {2, 1}));
    CHECK(s.r == one(F3));
    CHECK(s.annihilator == poly(F3, {2, 1}));
    REQUIRE(s.valuation);
    CHECK(*s.valuation == 1);
    CHECK_FALSE(s.is_wieferich);
    CHECK_FALSE(s.is_super);
    CHECK_FALSE(s.thakur);
    CHECK(s.chain_break == 1);
    CHECK_FALSE(s.degenerate());

    // P | a: the ideal is everything and v is v_P(a).
    const WieferichStatus d = wieferich_status(C3, t, t * t);
    CHECK(d.annihilator.is_one());
    CHECK(d.base_divisible);
    CHECK(d.valuation == 2);
    CHECK(d.degenerate());

    // Torsion base: phi_g(1) = 0 exactly for every P with (H).
    const FieldPtr F2 = FqField::create(2, 1);
    const DrinfeldModule C2 = DrinfeldModule::carlitz(F2);
    const WieferichStatus ts = wieferich_status(C2, poly(F2, {1, 1, 1}), one(F2));
    CHECK(ts.torsion_base);
    CHECK_FALSE(ts.valuation.has_value());
    CHECK(ts.is_wieferich);
    CHECK(ts.is_super);
    CHECK(ts.degenerate());

    const WieferichStatus h = wieferich_status(C2, theta(F2), one(F2));
    CHECK_FALSE(h.hypothesis_h);
    const auto flags = h.flags();
    CHECK(std::find(flags.begin(), flags.end(), "no_hypothesis_h") != flags.end());
}

TEST_CASE("valuation matches exact evaluation") {
    for (unsigned q : {2u, 3u, 5u}) {
        const FieldPtr F = FqField::create(q, 1);
        const DrinfeldModule C = DrinfeldModule::carlitz(F);
        const DrinfeldModule r2(F, {one(F), theta(F)});
        for (const DrinfeldModule* phi : {&C, &r2}) {
            for (const Poly& P : monic_irreducibles(F, 1, 2)) {
                for (const Poly& a : {one(F), theta(F), poly(F, {1, 1})}) {
                    const WieferichStatus s = wieferich_status(*phi, P, a);
                    const auto v = exact_valuation(*phi, s.g, a, P);
                    if (!v) {
                        CHECK_FALSE(s.valuation.has_value());
                    } else if (*v >= kValuationCap) {
                        CHECK(s.valuation_capped);
                    } else {
                        CHECK(s.valuation == v);
                        CHECK(s.is_wieferich == (*v >= 2));
                        CHECK(s.is_super == (*v >= 3));
                    }
                }
            }
        }
    }
}

TEST_CASE("valuation equals the chain break") {
    // v_P(phi_g(a)) = k where k is the last index with pi(P^k) = pi(P),
    // which is the form consistent with "Wieferich iff pi(P) = pi(P^2)".
    for (unsigned q : {3u, 5u}) {
        const FieldPtr F = FqField::create(q, 1);
        const DrinfeldModule C = DrinfeldModule::carlitz(F);
        const DrinfeldModule r2(F, {one(F), one(F)});
        for (const DrinfeldModule* phi : {&C, &r2}) {
            for (const Poly& P : monic_irreducibles(F, 1, 2)) {
                for (const Poly& a : testing::all_polys_below(F, 2)) {
                    if (divides(P, a) || is_torsion(*phi, a))
                        continue;
                    const WieferichStatus s = wieferich_status(*phi, P, a);
                    REQUIRE(s.valuation);
                    REQUIRE(s.chain_break);
                    if (!s.valuation_capped)
                        CHECK(*s.valuation == *s.chain_break);
                    const PiChain two = pi_chain(*phi, a, P, 2);
                    CHECK(s.is_wieferich == (two.generators[0] == two.generators[1]));
                }
            }
        }
    }
}

TEST_CASE("annihilator divides the Fitting generator") {
    for (unsigned q : {2u, 3u, 5u}) {
        const FieldPtr F = FqField::create(q, 1);
        const DrinfeldModule C = DrinfeldModule::carlitz(F);
        const DrinfeldModule r2(F, {theta(F), one(F)});
        for (const DrinfeldModule* phi : {&C, &r2}) {
            for (const Poly& P : monic_irreducibles(F, 1, 3)) {
                if (!hypothesis_h(P))
                    continue;
                const Poly g = fitting_generator(*phi, P).g;
                for (const Poly& a : testing::all_polys_below(F, 2))
                    CHECK(divides(annihilator_generator(*phi, a, P).generator, g));
            }
        }
    }
}

TEST_CASE("thakur congruence against direct evaluation") {
    const FieldPtr F = FqField::create(3, 1);
    for (const DrinfeldModule& phi : {DrinfeldModule::carlitz(F), rank2_f3()}) {
        for (const Poly& P : monic_irreducibles(F, 1, 2)) {
            const FittingData fit = fitting_generator(phi, P);
            const Poly P2 = P * P;
            const std::uint64_t N = [&] {
                std::uint64_t n = 1;
                for (int i = 0; i < phi.rank() * P.degree(); ++i)
                    n *= 3;
                return n;
            }();
            for (const Poly& a : testing::all_polys_below(F, 2)) {
                const Poly lhs = eval_phi(phi, P, a, P2);
                const Poly rhs = pow_mod(eval_phi(phi, fit.r, a, P2), N, P2);
                CHECK(thakur_congruence(phi, fit, a) == (lhs == rhs));
                CHECK(is_wieferich(phi, fit, a) == eval_phi(phi, fit.g, a, P2).is_zero());
            }
        }
    }
}

TEST_CASE("base transfer") {
    const FieldPtr F = FqField::create(3, 1);
    const DrinfeldModule C = DrinfeldModule::carlitz(F);
    const Poly t = theta(F);
    const Poly P = poly(F, {1, 0, 1});
    CHECK(base_transfer_check(C, P, one(F), one(F)));
    CHECK(base_transfer_check(C, P, one(F), poly(F, {2, 1})));

    // Precondition: gcd(d, annihilator) = 1.
    const Poly ann = annihilator_generator(C, one(F), P).generator;
    CHECK_THROWS_AS(base_transfer_check(C, P, one(F), ann), PreconditionError);
    CHECK_THROWS_AS(base_transfer_check(C, P, one(F), Poly(F)), PreconditionError);

    // When P | d, phi_d(x) = d x mod P^2 for x in PA, so base phi_d(a) is
    // always Wieferich at P. With d = theta - 1 and P = theta + 2 this makes
    // base theta Wieferich while base 1 is not.
    const Poly d = poly(F, {2, 1});
    const Poly Pd = poly(F, {2, 1});
    CHECK(eval_phi(C, d, one(F)) == t);
    CHECK_FALSE(wieferich_status(C, Pd, one(F)).is_wieferich);
    CHECK(wieferich_status(C, Pd, t).is_wieferich);
    CHECK_FALSE(base_transfer_check(C, Pd, one(F), d));

    // With P not dividing d the verdicts agree.
    for (const Poly& Q : monic_irreducibles(F, 1, 3)) {
        if (divides(Q, d) || !gcd(d, annihilator_generator(C, one(F), Q).generator).is_one())
            continue;
        CHECK(base_transfer_check(C, Q, one(F), d));
    }
}

TEST_CASE("search over a degree range") {
    const FieldPtr F3 = FqField::create(3, 1);
    const DrinfeldModule C3 = DrinfeldModule::carlitz(F3);
    const WieferichScan scan = search_wieferich(C3, one(F3), 1, 1);
    REQUIRE(scan.records.size() == 3);
    for (const WieferichStatus& s : scan.records)
        CHECK(s.valuation == exact_valuation(C3, s.g, one(F3), s.P));
    CHECK(scan.histogram[0] + scan.histogram[1] + scan.histogram[2] + scan.histogram[3] == 3);

    CHECK_THROWS_AS(search_wieferich(C3, one(F3), 2, 1), PreconditionError);
    CHECK_THROWS_AS(search_wieferich(C3, one(F3), 0, 1), PreconditionError);

    const WieferichScan serial = search_wieferich(C3, theta(F3), 1, 3, 1);
    const WieferichScan parallel = search_wieferich(C3, theta(F3), 1, 3, 4);
    REQUIRE(serial.records.size() == parallel.records.size());
    for (std::size_t i = 0; i < serial.records.size(); ++i) {
        CHECK(serial.records[i].P == parallel.records[i].P);
        CHECK(serial.records[i].valuation == parallel.records[i].valuation);
    }
    CHECK(serial.histogram == parallel.histogram);

    const FieldPtr F2 = FqField::create(2, 1);
    const DrinfeldModule C2 = DrinfeldModule::carlitz(F2);
    for (const WieferichStatus& s : search_wieferich(C2, one(F2), 1, 3).records)
        CHECK(s.degenerate());
}
