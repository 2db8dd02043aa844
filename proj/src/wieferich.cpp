#include "drinfeld/wieferich.hpp"

#include "drinfeld/detail/parallel.hpp"
#include "drinfeld/errors.hpp"
#include "drinfeld/factor.hpp"

#include <algorithm>

namespace drinfeld {

namespace {

void require_monic_irreducible(const Poly& P) {
    if (P.degree() < 1 || !P.is_monic() || !is_irreducible(P))
        throw PreconditionError("expected a monic irreducible polynomial, got " + P.to_string());
}

// Incremental row echelon form over F_q that remembers, for every row, the
// element b of A with phi_b(a) = row.
class KernelSearch {
public:
    KernelSearch(const FqField& field, std::size_t dim) : F_(field), dim_(dim) {}

    // Adds the residue of phi_{theta^i}(a); returns the monic kernel element
    // if it is dependent on the residues added so far.
    std::optional<std::vector<Elem>> add(std::vector<Elem> v, std::size_t i) {
        v.resize(dim_, 0);
        std::vector<Elem> combo(i + 1, 0);
        combo[i] = 1;
        for (const Row& row : rows_) {
            const Elem x = v[row.pivot];
            if (x == 0)
                continue;
            const Elem c = F_.mul(x, row.pivot_inv);
            const Elem* mc = F_.mul_row(c);
            for (std::size_t k = 0; k < dim_; ++k)
                v[k] = F_.sub(v[k], mc[row.vec[k]]);
            for (std::size_t k = 0; k < row.combo.size(); ++k)
                combo[k] = F_.sub(combo[k], mc[row.combo[k]]);
        }
        auto nz = std::find_if(v.begin(), v.end(), [](Elem e) { return e != 0; });
        if (nz == v.end())
            return combo;
        const std::size_t pivot = static_cast<std::size_t>(nz - v.begin());
        rows_.push_back({std::move(v), std::move(combo), pivot, F_.inv(*nz)});
        return std::nullopt;
    }

private:
    struct Row {
        std::vector<Elem> vec;
        std::vector<Elem> combo;
        std::size_t pivot;
        Elem pivot_inv;
    };
    const FqField& F_;
    std::size_t dim_;
    std::vector<Row> rows_;
};

} // namespace

AnnihilatorResult annihilator_generator(const DrinfeldModule& phi, const Poly& a, const Poly& m) {
    if (m.is_zero())
        throw PreconditionError("annihilator modulo the zero polynomial");
    const FieldPtr& F = phi.field_ptr();
    const std::size_t dim = static_cast<std::size_t>(std::max(m.degree(), 0));
    KernelSearch search(*F, dim);
    Poly x = a % m;
    for (std::size_t i = 0; i <= dim; ++i) {
        if (auto kernel = search.add(x.coeffs(), i))
            return {Poly(F, std::move(*kernel)), m, a};
        x = phi.apply_theta_mod(x, m);
    }
    throw InvariantViolation("annihilator search exceeded dim A/mA");
}

PiChain pi_chain(const DrinfeldModule& phi, const Poly& a, const Poly& P, int kmax) {
    if (kmax < 1)
        throw PreconditionError("pi_chain needs kmax >= 1");
    require_monic_irreducible(P);
    PiChain chain{{}, 1, false, hypothesis_h(P), true};
    Poly power = P;
    for (int k = 1; k <= kmax; ++k) {
        chain.generators.push_back(annihilator_generator(phi, a, power).generator);
        if (k < kmax)
            power *= P;
    }
    for (int k = 2; k <= kmax; ++k) {
        const Poly& prev = chain.generators[k - 2];
        const Poly& cur = chain.generators[k - 1];
        if (cur == prev) {
            if (chain.broken)
                chain.chain_law_holds = false;
        } else if (cur == prev * P) {
            chain.broken = true;
        } else {
            chain.chain_law_holds = false;
        }
        if (cur == chain.generators[0])
            chain.chain_break = k;
    }
    if (!chain.chain_law_holds && chain.hypothesis_h)
        throw InvariantViolation("pi-chain law violated for P = " + P.to_string() + ", a = " + a.to_string());
    return chain;
}

std::vector<std::string> WieferichStatus::flags() const {
    std::vector<std::string> out;
    if (!hypothesis_h)
        out.emplace_back("no_hypothesis_h");
    if (base_divisible)
        out.emplace_back("base_divisible");
    if (torsion_base)
        out.emplace_back("torsion_base");
    if (valuation_capped)
        out.emplace_back("valuation_capped");
    if (!valuation)
        out.emplace_back("valuation_infinite");
    return out;
}

bool is_wieferich(const DrinfeldModule& phi, const FittingData& fit, const Poly& a) {
    return eval_phi(phi, fit.g, a, fit.P * fit.P).is_zero();
}

bool thakur_congruence(const DrinfeldModule& phi, const FittingData& fit, const Poly& a) {
    const Poly p2 = fit.P * fit.P;
    const Poly lhs = eval_phi(phi, fit.P, a, p2);
    const Poly rhs = frobenius_mod(eval_phi(phi, fit.r, a, p2), p2, static_cast<unsigned>(phi.rank() * fit.P.degree()));
    return lhs == rhs;
}

WieferichStatus wieferich_status(const DrinfeldModule& phi, const Poly& P, const Poly& a,
                                 const WieferichOptions& options) {
    if (options.valuation_cap < 2)
        throw PreconditionError("valuation cap must be >= 2");
    FittingData fit = fitting_generator(phi, P);
    WieferichStatus s{P, a, fit.g, fit.r, annihilator_generator(phi, a, P).generator};
    s.hypothesis_h = hypothesis_h(P);
    s.base_divisible = divides(P, a);
    s.torsion_base = is_torsion(phi, a);

    const int cap = options.valuation_cap;
    int exponent = 2;
    for (;;) {
        const Poly y = eval_phi(phi, fit.g, a, pow(P, static_cast<std::uint64_t>(exponent)));
        if (!y.is_zero()) {
            s.valuation = valuation_unchecked(y, P);
            break;
        }
        if (exponent >= cap) {
            s.valuation = cap;
            s.valuation_capped = true;
            break;
        }
        exponent = std::min(2 * exponent, cap);
    }
    if (s.valuation_capped && s.torsion_base) {
        try {
            const Poly exact = eval_phi(phi, fit.g, a);
            s.valuation_capped = false;
            if (exact.is_zero())
                s.valuation.reset();
            else
                s.valuation = valuation_unchecked(exact, P);
        } catch (const DegreeGuardExceeded&) {
            // keep the capped marker
        }
    }
    s.is_wieferich = !s.valuation || *s.valuation >= 2;
    s.is_super = !s.valuation || *s.valuation >= 3;
    s.thakur = thakur_congruence(phi, fit, a);
    if (options.with_chain)
        s.chain_break = pi_chain(phi, a, P, cap + 1).chain_break;
    return s;
}

bool base_transfer_check(const DrinfeldModule& phi, const Poly& P, const Poly& a, const Poly& d) {
    require_monic_irreducible(P);
    if (!hypothesis_h(P))
        throw PreconditionError("base transfer needs (H)_P");
    if (is_torsion(phi, a))
        throw PreconditionError("base transfer needs a non-torsion base");
    const Poly ann_a = annihilator_generator(phi, a, P).generator;
    if (d.is_zero() || !gcd(d, ann_a).is_one())
        throw PreconditionError("base transfer needs gcd(d, annihilator) = 1, d = " + d.to_string());
    const FittingData fit = fitting_generator(phi, P);
    const Poly b = eval_phi(phi, d, a, P * P);
    const Poly ann_b = annihilator_generator(phi, b, P).generator;
    if (ann_a != ann_b)
        throw InvariantViolation("annihilators differ after base transfer: " + ann_a.to_string() + " vs " +
                                 ann_b.to_string());
    return is_wieferich(phi, fit, a) == is_wieferich(phi, fit, b);
}

WieferichScan search_wieferich(const DrinfeldModule& phi, const Poly& a, int dmin, int dmax, unsigned jobs,
                               const WieferichOptions& options) {
    if (dmin < 1 || dmin > dmax)
        throw PreconditionError("degree range must satisfy 1 <= dmin <= dmax");
    const std::vector<Poly> primes = monic_irreducibles(phi.field_ptr(), dmin, dmax);
    std::vector<std::optional<WieferichStatus>> slots(primes.size());
    detail::parallel_for(primes.size(), jobs,
                         [&](std::size_t i) { slots[i] = wieferich_status(phi, primes[i], a, options); });
    WieferichScan scan;
    scan.records.reserve(slots.size());
    for (auto& s : slots) {
        const int v = s->valuation ? *s->valuation : 4;
        scan.histogram[static_cast<std::size_t>(std::clamp(v, 1, 4) - 1)]++;
        scan.records.push_back(std::move(*s));
    }
    return scan;
}

} // namespace drinfeld
