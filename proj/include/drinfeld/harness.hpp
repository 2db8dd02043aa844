#pragma once

#include "drinfeld/module.hpp"

#include <cstddef>
#include <vector>

namespace drinfeld {

struct MasonStothers {
    bool holds;
    int slack;           // deg rad(xyz) - 1 - max deg
    int max_degree;
    int radical_degree;
};

/// Polynomial ABC inequality max(deg x, deg y, deg z) <= deg rad(xyz) - 1.
/// Requires x + y = z, pairwise coprime inputs and a nonzero derivative
/// among x', y', z'; each violation throws PreconditionError naming the
/// failed condition ("additive relation", "pairwise coprime",
/// "derivative condition").
MasonStothers mason_stothers_check(const Poly& x, const Poly& y, const Poly& z);

struct MasonTriple {
    Poly x;
    Poly y;
    Poly z;
};

/// (phi_{b-1}(a)/a, 1, phi_b(a)/a), which sums because
/// phi_b(a) = phi_{b-1}(a) + a. The identity is verified before returning.
MasonTriple application_triple(const DrinfeldModule& phi, const Poly& a, const Poly& b);

struct UVDecomposition {
    Poly b;
    Poly a;
    Poly f;     // phi_b(a) / a
    Elem lead;  // f = lead * u * v
    Poly u;     // irreducible factors of f with multiplicity one
    Poly v;     // prime powers P^e || f with e >= 2
};

/// Splits phi_b(a)/a into its squarefree-exponent and squarefull parts.
UVDecomposition uv_decompose(const DrinfeldModule& phi, const Poly& a, const Poly& b);

struct ConjectureARow {
    int degree;
    std::size_t total;      // monic b of this degree evaluated
    std::size_t counted;    // phi_b(a)/a squarefree with nonzero derivative
    std::size_t skipped;    // over the degree guard
    double running_ratio;   // cumulative counted / cumulative total
};

/// Tallies monic b with 1 <= deg b <= dmax.
std::vector<ConjectureARow> conjecture_a_stats(const DrinfeldModule& phi, const Poly& a, int dmax);

struct FermatSolution {
    Poly x;
    Poly y;
    Poly z;
};

struct FermatInstance {
    Poly P;
    int deg_bound;
    std::size_t pairs_tested;
    std::vector<FermatSolution> solutions;
};

/// L(x, y) = sum_i b_i x^{q^i} y^{N - q^i} with phi_P = sum_i b_i tau^i and
/// N = q^{r deg P}.
Poly fermat_form(const DrinfeldModule& phi, const Poly& P, const Poly& x, const Poly& y);

/// Every (x, y) with deg <= deg_bound and P not dividing xy for which
/// L(x, y) = z^N exactly with P not dividing z. Solutions are ordered by
/// (x, y) in canonical order.
FermatInstance fermat_search(const DrinfeldModule& phi, const Poly& P, int deg_bound, unsigned jobs = 1);

/// From a solution (x, y, z): c = phi_r(x/y) (x/y)^{-1} and
/// a = (c y/z)^{-1} mod P^2, returned with degree < 2 deg P. Throws
/// InvariantViolation if a fails phi_P(a) = phi_r(a)^N mod P^2.
Poly wieferich_base_from_fermat(const DrinfeldModule& phi, const Poly& P, const Poly& x, const Poly& y,
                                const Poly& z);

} // namespace drinfeld
