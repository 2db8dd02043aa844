#include "drinfeld/harness.hpp"

#include "drinfeld/detail/parallel.hpp"
#include "drinfeld/errors.hpp"
#include "drinfeld/factor.hpp"
#include "drinfeld/wieferich.hpp"

#include <algorithm>

namespace drinfeld {

namespace {

std::uint64_t q_power(const FqField& F, std::uint64_t k) {
    std::uint64_t n = 1;
    for (std::uint64_t i = 0; i < k; ++i)
        n *= F.q();
    return n;
}

Poly inverse_or_throw(const Poly& a, const Poly& m, const char* what) {
    auto inv = inverse_mod(a, m);
    if (!inv)
        throw PreconditionError(std::string(what) + " is not a unit modulo P^2");
    return *inv;
}

} // namespace

MasonStothers mason_stothers_check(const Poly& x, const Poly& y, const Poly& z) {
    if (x + y != z)
        throw PreconditionError("additive relation: x + y != z");
    auto coprime = [](const Poly& f, const Poly& g) { return !(f.is_zero() && g.is_zero()) && gcd(f, g).is_one(); };
    if (!coprime(x, y) || !coprime(y, z) || !coprime(x, z))
        throw PreconditionError("pairwise coprime: inputs share a factor");
    if (x.derivative().is_zero() && y.derivative().is_zero() && z.derivative().is_zero())
        throw PreconditionError("derivative condition: x', y', z' are all zero");
    MasonStothers out{};
    out.max_degree = std::max({x.degree(), y.degree(), z.degree()});
    out.radical_degree = radical(x * y * z).degree();
    out.slack = out.radical_degree - 1 - out.max_degree;
    out.holds = out.slack >= 0;
    return out;
}

MasonTriple application_triple(const DrinfeldModule& phi, const Poly& a, const Poly& b) {
    if (a.is_zero())
        throw PreconditionError("base a must be nonzero");
    const Poly one = Poly::constant(phi.field_ptr(), 1);
    const Poly hi = eval_phi(phi, b, a);
    const Poly lo = eval_phi(phi, b - one, a);
    if (hi != lo + a)
        throw InvariantViolation("phi_b(a) != phi_{b-1}(a) + a for b = " + b.to_string());
    const DivMod qh = divmod(hi, a);
    const DivMod ql = divmod(lo, a);
    if (!qh.remainder.is_zero() || !ql.remainder.is_zero())
        throw InvariantViolation("a does not divide phi_b(a)");
    if (ql.quotient + one != qh.quotient)
        throw InvariantViolation("application triple does not sum for b = " + b.to_string());
    return {ql.quotient, one, qh.quotient};
}

UVDecomposition uv_decompose(const DrinfeldModule& phi, const Poly& a, const Poly& b) {
    if (a.is_zero())
        throw PreconditionError("base a must be nonzero");
    const Poly value = eval_phi(phi, b, a);
    if (value.is_zero())
        throw PreconditionError("phi_b(a) = 0 has no u/v split");
    const DivMod qr = divmod(value, a);
    if (!qr.remainder.is_zero())
        throw InvariantViolation("a does not divide phi_b(a)");
    const FieldPtr& F = phi.field_ptr();
    const Factorization fac = factor(qr.quotient);
    UVDecomposition out{b, a, qr.quotient, fac.unit, Poly::constant(F, 1), Poly::constant(F, 1)};
    for (const FactorPower& fp : fac.factors) {
        if (fp.multiplicity == 1)
            out.u *= fp.factor;
        else
            out.v *= pow(fp.factor, static_cast<std::uint64_t>(fp.multiplicity));
    }
    return out;
}

std::vector<ConjectureARow> conjecture_a_stats(const DrinfeldModule& phi, const Poly& a, int dmax) {
    if (a.is_zero())
        throw PreconditionError("base a must be nonzero");
    std::vector<ConjectureARow> rows;
    std::size_t total = 0;
    std::size_t counted = 0;
    for (int d = 1; d <= dmax; ++d) {
        ConjectureARow row{d, 0, 0, 0, 0.0};
        for (const Poly& b : monic_polynomials(phi.field_ptr(), d)) {
            Poly value(phi.field_ptr());
            try {
                value = eval_phi(phi, b, a);
            } catch (const DegreeGuardExceeded&) {
                ++row.skipped;
                continue;
            }
            ++row.total;
            const Poly f = value / a;
            if (!f.is_zero() && !f.derivative().is_zero() && is_squarefree(f))
                ++row.counted;
        }
        total += row.total;
        counted += row.counted;
        row.running_ratio = total ? static_cast<double>(counted) / static_cast<double>(total) : 0.0;
        rows.push_back(row);
    }
    return rows;
}

Poly fermat_form(const DrinfeldModule& phi, const Poly& P, const Poly& x, const Poly& y) {
    const FqField& F = phi.field();
    const std::uint64_t rd = static_cast<std::uint64_t>(phi.rank()) * static_cast<std::uint64_t>(P.degree());
    const std::uint64_t N = q_power(F, rd);
    const TwistedPoly phiP = phi_image(phi, P);
    const long long predicted =
        static_cast<long long>(N) * std::max({x.degree(), y.degree(), 0}) + phiP.max_coeff_degree();
    if (predicted > phi.degree_guard())
        throw DegreeGuardExceeded(predicted, phi.degree_guard());
    Poly L(phi.field_ptr());
    std::uint64_t qi = 1;
    for (std::size_t i = 0; i < phiP.coeffs().size(); ++i, qi *= F.q()) {
        const Poly& b = phiP.coeffs()[i];
        if (!b.is_zero())
            L += b * x.frobenius(static_cast<unsigned>(i)) * pow(y, N - qi);
    }
    return L;
}

FermatInstance fermat_search(const DrinfeldModule& phi, const Poly& P, int deg_bound, unsigned jobs) {
    if (P.degree() < 1 || !P.is_monic() || !is_irreducible(P))
        throw PreconditionError("fermat search needs a monic irreducible P");
    if (deg_bound < 0)
        throw PreconditionError("degree bound must be >= 0");
    const FieldPtr& F = phi.field_ptr();
    std::vector<Poly> units;  // nonzero polynomials of degree <= deg_bound prime to P
    for (int d = 0; d <= deg_bound; ++d)
        for (const Poly& m : monic_polynomials(F, d))
            for (Elem c = 1; c < F->q(); ++c)
                if (!divides(P, m))
                    units.push_back(m.scaled(c));
    std::sort(units.begin(), units.end());

    const unsigned rd = static_cast<unsigned>(phi.rank() * P.degree());
    const std::uint64_t N = q_power(*F, rd);
    std::vector<std::vector<FermatSolution>> found(units.size());
    detail::parallel_for(units.size(), jobs, [&](std::size_t i) {
        const Poly& x = units[i];
        for (const Poly& y : units) {
            const Poly L = fermat_form(phi, P, x, y);
            auto z = qpower_root(L, rd);
            if (!z || z->is_zero() || divides(P, *z))
                continue;
            if (pow(*z, N) != L)
                throw InvariantViolation("q-power root does not reproduce L");
            found[i].push_back({x, y, std::move(*z)});
        }
    });
    FermatInstance out{P, deg_bound, units.size() * units.size(), {}};
    for (auto& bucket : found)
        for (auto& s : bucket)
            out.solutions.push_back(std::move(s));
    return out;
}

Poly wieferich_base_from_fermat(const DrinfeldModule& phi, const Poly& P, const Poly& x, const Poly& y,
                                const Poly& z) {
    if (P.degree() < 1 || !P.is_monic() || !is_irreducible(P))
        throw PreconditionError("base extraction needs a monic irreducible P");
    if (x.is_zero() || y.is_zero() || z.is_zero() || divides(P, x) || divides(P, y) || divides(P, z))
        throw PreconditionError("P must not divide x y z");
    const unsigned rd = static_cast<unsigned>(phi.rank() * P.degree());
    if (fermat_form(phi, P, x, y) != pow(z, q_power(phi.field(), rd)))
        throw PreconditionError("(x, y, z) is not a solution of the Fermat equation");

    const FittingData fit = fitting_generator(phi, P);
    const Poly p2 = P * P;
    const Poly t = mul_mod(x, inverse_or_throw(y, p2, "y"), p2);
    const Poly c = mul_mod(eval_phi(phi, fit.r, t, p2), inverse_or_throw(t, p2, "x/y"), p2);
    const Poly y1 = mul_mod(y, inverse_or_throw(z, p2, "z"), p2);
    const Poly a = inverse_or_throw(mul_mod(c, y1, p2), p2, "c y1");
    if (!thakur_congruence(phi, fit, a))
        throw InvariantViolation("extracted base " + a.to_string() + " fails the Wieferich congruence at " +
                                 P.to_string());
    return a;
}

} // namespace drinfeld
