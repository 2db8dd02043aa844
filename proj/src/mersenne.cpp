#include "drinfeld/mersenne.hpp"

#include "drinfeld/detail/parallel.hpp"
#include "drinfeld/errors.hpp"
#include "drinfeld/factor.hpp"
#include "drinfeld/wieferich.hpp"

#include <algorithm>
#include <limits>

namespace drinfeld {

namespace {

long long saturating_affine(long long d, long long mul, long long add) {
    constexpr long long kMax = std::numeric_limits<long long>::max();
    if (d > (kMax - add) / mul)
        return kMax;
    return d * mul + add;
}

void require_irreducible(const Poly& P) {
    if (P.degree() < 1 || !is_irreducible(P))
        throw PreconditionError("expected an irreducible polynomial, got " + P.to_string());
}

BaseClass classify_base(bool torsion, const Poly& a) {
    if (!a.is_zero() && a.is_constant())
        return BaseClass::unit_base;
    if (torsion && a.degree() >= 1 && is_irreducible(a))
        return BaseClass::torsion_prime_base;
    return BaseClass::other;
}

} // namespace

std::string to_string(BaseClass c) {
    switch (c) {
    case BaseClass::unit_base:
        return "unit_base";
    case BaseClass::torsion_prime_base:
        return "torsion_prime_base";
    case BaseClass::other:
        break;
    }
    return "other";
}

std::string to_string(Primality p) {
    switch (p) {
    case Primality::prime:
        return "prime";
    case Primality::composite:
        return "composite";
    case Primality::unknown:
        break;
    }
    return "unknown: too large";
}

MersenneRecord mersenne_number(const DrinfeldModule& phi, const Poly& P, const Poly& a) {
    require_irreducible(P);
    MersenneRecord rec{P, a};
    rec.torsion_base = is_torsion(phi, a);
    rec.base_class = classify_base(rec.torsion_base, a);
    rec.hypothesis_h = hypothesis_h(P);
    try {
        rec.M = eval_phi(phi, P, a);
    } catch (const DegreeGuardExceeded&) {
        rec.primality = Primality::unknown;
        if (a.degree() >= 1)
            rec.base_divides = eval_phi(phi, P, a, a).is_zero();
        return rec;
    }
    const Poly& M = *rec.M;
    rec.base_divides = divides(a, M);
    if (M.degree() < 1)
        rec.primality = Primality::composite;
    else if (a.degree() >= 1 && M.degree() > a.degree())
        rec.primality = Primality::composite;  // a is a proper factor
    else
        rec.primality = is_irreducible(M.monic()) ? Primality::prime : Primality::composite;

    if (rec.is_prime() && !rec.torsion_base) {
        const WieferichOptions opts{2, false};
        rec.wieferich_of_M = wieferich_status(phi, M.monic(), a, opts).is_wieferich;
    }
    return rec;
}

MersenneScan mersenne_scan(const DrinfeldModule& phi, const Poly& a, int dmin, int dmax, unsigned jobs) {
    MersenneScan scan;
    if (dmin > dmax)
        return scan;
    if (dmin < 1)
        throw PreconditionError("degree range must start at 1 or above");
    const std::vector<Poly> primes = monic_irreducibles(phi.field_ptr(), dmin, dmax);
    std::vector<std::optional<MersenneRecord>> slots(primes.size());
    detail::parallel_for(primes.size(), jobs, [&](std::size_t i) { slots[i] = mersenne_number(phi, primes[i], a); });
    scan.records.reserve(slots.size());
    for (auto& r : slots) {
        switch (r->primality) {
        case Primality::prime:
            ++scan.prime;
            break;
        case Primality::composite:
            ++scan.composite;
            break;
        case Primality::unknown:
            ++scan.unknown;
            break;
        }
        scan.records.push_back(std::move(*r));
    }
    return scan;
}

AnnihilatorPrimality annihilator_primality_check(const DrinfeldModule& phi, const Poly& Q, const Poly& a, int dmax) {
    require_irreducible(Q);
    if (divides(Q, a))
        throw PreconditionError("Q divides the base a");
    const Poly Qm = Q.monic();
    AnnihilatorPrimality out{annihilator_generator(phi, a, Qm).generator};
    out.is_prime = out.annihilator.degree() >= 1 && is_irreducible(out.annihilator);
    if (out.is_prime) {
        if (!eval_phi(phi, out.annihilator, a, Qm).is_zero())
            throw InvariantViolation("Q does not divide phi_P(a) for P = annihilator " + out.annihilator.to_string());
        out.witness = out.annihilator;
    }
    out.scan_bound = std::max(dmax, 0);
    for (int d = 1; d <= dmax; ++d) {
        for (const Poly& P : monic_irreducibles(phi.field_ptr(), d)) {
            ++out.scanned;
            if (!eval_phi(phi, P, a, Qm).is_zero())
                continue;
            ++out.hits;
            if (!out.is_prime || P != out.annihilator)
                throw InvariantViolation("Q | phi_P(a) for P = " + P.to_string() + " but the annihilator is " +
                                         out.annihilator.to_string());
        }
    }
    return out;
}

std::vector<KoblitzRow> koblitz_stats(const DrinfeldModule& phi, int dmin, int dmax) {
    std::vector<KoblitzRow> rows;
    const Poly one = Poly::constant(phi.field_ptr(), 1);
    for (int d = std::max(dmin, 1); d <= dmax; ++d) {
        KoblitzRow row{d, 0, 0};
        for (const Poly& P : monic_irreducibles(phi.field_ptr(), d)) {
            ++row.total;
            const Poly g = fitting_generator(phi, P).g;
            if (phi.is_carlitz() && g != P - one)
                throw InvariantViolation("Carlitz Fitting generator differs from P - 1 at P = " + P.to_string());
            if (is_irreducible(g))
                ++row.g_irreducible;
        }
        rows.push_back(row);
    }
    return rows;
}

long long phi_one_degree(const DrinfeldModule& phi, int n) {
    if (n < 0)
        return kZeroDegree;
    Poly x = Poly::constant(phi.field_ptr(), 1);
    int j = 0;
    while (j < n && !x.is_zero() && !phi.beyond_growth_bound(x.degree())) {
        x = phi.apply_theta(x);
        ++j;
    }
    long long degree = x.degree();
    if (x.is_zero())
        return degree;
    const long long qr = static_cast<long long>(phi.q_power_rank());
    const long long dr = phi.coeffs().back().degree();
    for (; j < n; ++j)
        degree = saturating_affine(degree, qr, dr);
    return degree;
}

std::vector<MersenneWitness> composite_mersenne_witnesses(const DrinfeldModule& phi, int dmin, int dmax) {
    const Poly one = Poly::constant(phi.field_ptr(), 1);
    if (is_torsion(phi, one))
        throw PreconditionError("composite Mersenne witnesses need 1 to be non-torsion");
    const int c_phi = degree_threshold(phi);
    std::vector<MersenneWitness> out;
    for (int d = std::max(dmin, c_phi + 1); d <= dmax; ++d) {
        for (const Poly& P : monic_irreducibles(phi.field_ptr(), d)) {
            const Poly Q = fitting_generator(phi, P).g;
            if (!is_irreducible(Q))
                continue;
            if (!eval_phi(phi, Q, one, P).is_zero())
                throw InvariantViolation("P does not divide phi_Q(1) for P = " + P.to_string());
            MersenneWitness w{P, Q, std::nullopt, 0};
            try {
                w.M = eval_phi(phi, Q, one);
                w.degree_M = w.M->degree();
            } catch (const DegreeGuardExceeded&) {
                w.degree_M = phi_one_degree(phi, Q.degree());
            }
            if (w.degree_M <= Q.degree())
                throw InvariantViolation("deg phi_Q(1) <= deg Q for Q = " + Q.to_string());
            out.push_back(std::move(w));
        }
    }
    return out;
}

} // namespace drinfeld
