#include "drinfeld/errors.hpp"
#include "drinfeld/factor.hpp"
#include "drinfeld/mersenne.hpp"
#include "drinfeld/module.hpp"

#include "../support.hpp"

#include <doctest.h>

using namespace drinfeld;
using testing::one;
using testing::poly;
using testing::theta;

namespace {

// Irreducibility by trial division over all monic polynomials of degree
// up to half, independent of the factoring code.
bool trial_irreducible(const Poly& f) {
    if (f.degree() < 1)
        return false;
    for (int d = 1; 2 * d <= f.degree(); ++d)
        for (const Poly& b : monic_polynomials(f.field_ptr(), d))
            if (divides(b, f))
                return false;
    return true;
}

} // namespace

TEST_CASE("mersenne number examples") {
    const FieldPtr F = FqField::create(3, 1);
    const DrinfeldModule C = DrinfeldModule::carlitz(F);
    const Poly t = theta(F);

    const MersenneRecord m1 = mersenne_number(C, t, one(F));
    REQUIRE(m1.M);
    CHECK(*m1.M == poly(F, {1, 1}));
    CHECK(m1.is_prime());
    CHECK(m1.base_class == BaseClass::unit_base);
    REQUIRE(m1.wieferich_of_M);
    CHECK_FALSE(*m1.wieferich_of_M);

    const MersenneRecord m2 = mersenne_number(C, poly(F, {1, 0, 1}), one(F));
    REQUIRE(m2.M);
    CHECK(*m2.M == poly(F, {2, 1, 1, 1}));
    CHECK(m2.is_prime());

    // A prime non-torsion base never gives a prime Mersenne number.
    for (const Poly& P : monic_irreducibles(F, 1, 3)) {
        const MersenneRecord r = mersenne_number(C, P, t);
        CHECK(r.base_class == BaseClass::other);
        CHECK_FALSE(r.is_prime());
        CHECK(r.base_divides);
    }
}

TEST_CASE("scan agrees with a trial-division oracle") {
    const FieldPtr F = FqField::create(3, 1);
    const DrinfeldModule C = DrinfeldModule::carlitz(F);
    const MersenneScan scan = mersenne_scan(C, one(F), 1, 1);
    REQUIRE(scan.records.size() == 3);
    for (const MersenneRecord& r : scan.records) {
        REQUIRE(r.M);
        CHECK(*r.M == eval_phi(C, r.P, one(F)));
        CHECK(r.is_prime() == trial_irreducible(*r.M));
    }
    CHECK(scan.prime + scan.composite + scan.unknown == 3);

    const MersenneScan deeper = mersenne_scan(C, poly(F, {1, 1}), 1, 2);
    for (const MersenneRecord& r : deeper.records) {
        REQUIRE(r.M);
        CHECK(r.is_prime() == trial_irreducible(*r.M));
        CHECK(divides(poly(F, {1, 1}), *r.M));
    }

    CHECK(mersenne_scan(C, one(F), 2, 1).records.empty());
    CHECK_THROWS_AS(mersenne_scan(C, one(F), 0, 1), PreconditionError);
}

TEST_CASE("torsion base gives composite Mersenne numbers under (H)") {
    const FieldPtr F = FqField::create(2, 1);
    const DrinfeldModule C = DrinfeldModule::carlitz(F);
    for (const MersenneRecord& r : mersenne_scan(C, one(F), 1, 5).records) {
        CHECK(r.torsion_base);
        CHECK(r.base_class == BaseClass::unit_base);
        if (r.hypothesis_h)
            CHECK(r.primality == Primality::composite);
    }
}

TEST_CASE("prime Mersenne numbers need a unit or torsion prime base") {
    const FieldPtr F = FqField::create(3, 1);
    const DrinfeldModule C = DrinfeldModule::carlitz(F);
    const DrinfeldModule r2(F, {one(F), one(F)});
    for (const DrinfeldModule* phi : {&C, &r2}) {
        for (const Poly& a : {one(F), theta(F), poly(F, {1, 1})}) {
            for (const MersenneRecord& r : mersenne_scan(*phi, a, 1, 2).records) {
                CHECK(r.base_divides);
                if (r.base_class == BaseClass::other)
                    CHECK_FALSE(r.is_prime());
                if (r.is_prime() && !r.torsion_base) {
                    REQUIRE(r.wieferich_of_M);
                    CHECK_FALSE(*r.wieferich_of_M);
                }
            }
        }
    }
}

TEST_CASE("annihilator primality") {
    const FieldPtr F = FqField::create(3, 1);
    const DrinfeldModule C = DrinfeldModule::carlitz(F);
    const Poly t = theta(F);

    const AnnihilatorPrimality res = annihilator_primality_check(C, t, one(F), 3);
    CHECK(res.annihilator == poly(F, {2, 1}));
    CHECK(res.is_prime);
    REQUIRE(res.witness);
    CHECK(*res.witness == poly(F, {2, 1}));
    CHECK(eval_phi(C, *res.witness, one(F), t).is_zero());
    CHECK(res.scan_bound == 3);
    CHECK(res.hits >= 1);

    CHECK_THROWS_AS(annihilator_primality_check(C, t, t, 2), PreconditionError);

    // Composite annihilator: no irreducible P gives Q | phi_P(a).
    const DrinfeldModule r2(F, {one(F), one(F)});
    bool saw_composite = false;
    for (const Poly& Q : monic_irreducibles(F, 1, 3)) {
        const AnnihilatorPrimality ap = annihilator_primality_check(r2, Q, one(F), 3);
        CHECK(ap.is_prime == is_irreducible(ap.annihilator));
        if (!ap.is_prime) {
            saw_composite = true;
            CHECK(ap.hits == 0);
            CHECK_FALSE(ap.witness);
        }
    }
    CHECK(saw_composite);
}

TEST_CASE("koblitz counts") {
    const FieldPtr F = FqField::create(3, 1);
    const DrinfeldModule C = DrinfeldModule::carlitz(F);
    const auto rows = koblitz_stats(C, 1, 4);
    REQUIRE(rows.size() == 4);
    CHECK(rows[0].g_irreducible == 3);
    CHECK(rows[1].g_irreducible == 0);
    for (const KoblitzRow& row : rows) {
        std::size_t count = 0;
        const auto Ps = monic_irreducibles(F, row.degree);
        for (const Poly& P : Ps)
            count += trial_irreducible(P - one(F)) ? 1 : 0;
        CHECK(row.total == Ps.size());
        CHECK(row.g_irreducible == count);
    }

    for (unsigned q : {2u, 5u}) {
        const FieldPtr G = FqField::create(q, 1);
        CHECK(koblitz_stats(DrinfeldModule::carlitz(G), 1, 1)[0].g_irreducible == q);
    }
}

TEST_CASE("composite Mersenne witnesses") {
    const FieldPtr F = FqField::create(3, 1);
    const DrinfeldModule C = DrinfeldModule::carlitz(F);
    const int c = degree_threshold(C);
    const auto ws = composite_mersenne_witnesses(C, 1, 4);
    CHECK_FALSE(ws.empty());
    for (const MersenneWitness& w : ws) {
        CHECK(w.P.degree() > c);
        CHECK(is_irreducible(w.Q));
        CHECK(w.Q == w.P - one(F));
        CHECK(eval_phi(C, w.Q, one(F), w.P).is_zero());
        CHECK(w.degree_M > w.Q.degree());
        if (w.M) {
            CHECK(w.M->degree() == w.degree_M);
            CHECK(divides(w.P, *w.M));
        }
    }
    CHECK(composite_mersenne_witnesses(C, 1, c).empty());

    const DrinfeldModule r2(F, {one(F), one(F)});
    for (const MersenneWitness& w : composite_mersenne_witnesses(r2, 1, 3)) {
        CHECK(eval_phi(r2, w.Q, one(F), w.P).is_zero());
        CHECK(w.degree_M > w.Q.degree());
    }

    const FieldPtr F2 = FqField::create(2, 1);
    CHECK_THROWS_AS(composite_mersenne_witnesses(DrinfeldModule::carlitz(F2), 1, 3), PreconditionError);
}

TEST_CASE("degree of phi_b(1) from the recurrence") {
    const FieldPtr F = FqField::create(3, 1);
    const DrinfeldModule r2(F, {one(F), theta(F)});
    const int c = degree_threshold(r2);
    for (int n = c; n <= c + 2; ++n)
        CHECK(phi_one_degree(r2, n) == eval_phi(r2, Poly::monomial(F, 1, n), one(F)).degree());
}
