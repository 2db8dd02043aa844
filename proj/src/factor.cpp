#include "drinfeld/factor.hpp"

#include "drinfeld/errors.hpp"

#include <algorithm>
#include <limits>

namespace drinfeld {

namespace {

// Candidate-degree checks run before Rabin's conditions. They only detect
// factors of degree <= kScreenDegree and never certify irreducibility.
constexpr int kScreenDegree = 3;

std::vector<unsigned> prime_divisors(unsigned n) {
    std::vector<unsigned> out;
    for (unsigned d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0)
                n /= d;
        }
    }
    if (n > 1)
        out.push_back(n);
    return out;
}

std::vector<FactorPower> squarefree_monic(const Poly& f) {
    std::vector<FactorPower> out;
    if (f.degree() <= 0)
        return out;
    Poly c = gcd(f, f.derivative());
    Poly w = f / c;
    int i = 1;
    while (!w.is_one()) {
        Poly y = gcd(w, c);
        Poly fac = w / y;
        if (!fac.is_one())
            out.push_back({fac, i});
        w = std::move(y);
        c = c / w;
        ++i;
    }
    if (!c.is_one()) {
        auto root = pth_root(c);
        if (!root)
            throw InvariantViolation("squarefree decomposition: residual factor is not a p-th power");
        const int p = static_cast<int>(f.field().p());
        for (auto& [g, m] : squarefree_monic(root->monic()))
            out.push_back({g, m * p});
    }
    return out;
}

// Distinct-degree factorization of a monic squarefree polynomial.
std::vector<std::pair<Poly, int>> distinct_degree(Poly f) {
    std::vector<std::pair<Poly, int>> out;
    const Poly x = Poly::theta(f.field_ptr());
    Poly h = x % f;
    int d = 0;
    while (f.degree() >= 2 * (d + 1)) {
        ++d;
        h = frobenius_mod(h, f);
        Poly t = gcd(h - x, f);
        if (!t.is_one()) {
            f = f / t;
            h = h % f;
            out.emplace_back(std::move(t), d);
        }
    }
    if (f.degree() > 0)
        out.emplace_back(f, f.degree());
    return out;
}

Poly split_candidate(const Poly& a, const Poly& f, int d) {
    const FqField& F = f.field();
    const unsigned q = F.q();
    if (q % 2 == 1) {
        // a^{(q^d - 1)/2} = (a^{1 + q + ... + q^{d-1}})^{(q-1)/2}
        Poly b = a;
        Poly acc = a;
        for (int i = 1; i < d; ++i) {
            b = frobenius_mod(b, f);
            acc = mul_mod(acc, b, f);
        }
        return pow_mod(acc, (q - 1) / 2, f) - Poly::constant(f.field_ptr(), 1);
    }
    // Absolute trace to F_2: sum_{j < e*d} a^{2^j}.
    const int steps = static_cast<int>(F.e()) * d;
    Poly cur = a;
    Poly trace = a;
    for (int j = 1; j < steps; ++j) {
        cur = mul_mod(cur, cur, f);
        trace += cur;
    }
    return trace;
}

void equal_degree(const Poly& f, int d, std::mt19937_64& rng, std::vector<Poly>& out) {
    const int n = f.degree();
    if (n == d) {
        out.push_back(f);
        return;
    }
    for (int attempt = 0; attempt < kSplitRetryBudget; ++attempt) {
        Poly a = random_poly(f.field_ptr(), n, rng);
        if (a.degree() < 1)
            continue;
        Poly t = split_candidate(a, f, d);
        Poly g = t.is_zero() ? f : gcd(t, f);
        if (g.degree() > 0 && g.degree() < n) {
            equal_degree(g, d, rng, out);
            equal_degree(f / g, d, rng, out);
            return;
        }
    }
    throw InvariantViolation("equal-degree splitting exceeded its retry budget");
}

} // namespace

Poly Factorization::expand(const FieldPtr& field) const {
    Poly r = Poly::constant(field, unit);
    for (const auto& [g, m] : factors)
        r *= pow(g, static_cast<std::uint64_t>(m));
    return r;
}

bool is_irreducible(const Poly& f) {
    if (f.degree() < 1)
        throw PreconditionError("irreducibility test on a constant polynomial");
    const Poly g = f.monic();
    const int n = g.degree();
    if (n == 1)
        return true;
    const Poly d = g.derivative();
    if (d.is_zero() || !gcd(g, d).is_one())
        return false;
    const std::vector<unsigned> primes = prime_divisors(static_cast<unsigned>(n));
    const Poly x = Poly::theta(g.field_ptr());
    Poly h = x;
    for (int k = 1; k <= n; ++k) {
        h = frobenius_mod(h, g);
        bool check = k <= kScreenDegree && 2 * k <= n;
        for (unsigned l : primes)
            if (k == n / static_cast<int>(l))
                check = true;
        if (k < n && check && !gcd(h - x, g).is_one())
            return false;
    }
    return h == x;
}

std::vector<FactorPower> squarefree_decomposition(const Poly& f) {
    if (f.is_zero())
        throw PreconditionError("squarefree decomposition of zero");
    auto out = squarefree_monic(f.monic());
    std::sort(out.begin(), out.end(), [](const FactorPower& a, const FactorPower& b) { return a.factor < b.factor; });
    return out;
}

bool is_squarefree(const Poly& f) {
    for (const auto& fp : squarefree_decomposition(f))
        if (fp.multiplicity != 1)
            return false;
    return true;
}

Factorization factor(const Poly& f, std::uint64_t seed) {
    if (f.is_zero())
        throw PreconditionError("factorization of zero");
    Factorization result{f.lead(), {}, seed};
    std::mt19937_64 rng(seed);
    for (const auto& [s, e] : squarefree_decomposition(f)) {
        for (auto& [block, d] : distinct_degree(s)) {
            std::vector<Poly> pieces;
            equal_degree(block, d, rng, pieces);
            for (auto& piece : pieces)
                result.factors.push_back({piece.monic(), e});
        }
    }
    std::sort(result.factors.begin(), result.factors.end(),
              [](const FactorPower& a, const FactorPower& b) { return a.factor < b.factor; });
    return result;
}

Poly radical(const Poly& f) {
    if (f.is_zero())
        throw PreconditionError("radical of zero");
    Poly r = Poly::constant(f.field_ptr(), 1);
    for (const auto& fp : squarefree_decomposition(f))
        r *= fp.factor;
    return r;
}

int valuation_unchecked(const Poly& f, const Poly& P) {
    if (f.is_zero())
        throw PreconditionError("valuation of zero");
    if (P.degree() < 1)
        throw PreconditionError("valuation at a constant");
    int k = 0;
    Poly cur = f;
    for (;;) {
        auto [quot, rem] = divmod(cur, P);
        if (!rem.is_zero())
            return k;
        cur = std::move(quot);
        ++k;
    }
}

int valuation(const Poly& f, const Poly& P) {
    if (f.is_zero())
        throw PreconditionError("valuation of zero");
    if (P.degree() < 1 || !is_irreducible(P))
        throw PreconditionError("valuation at a reducible polynomial " + P.to_string());
    return valuation_unchecked(f, P);
}

IrreducibleStream::IrreducibleStream(FieldPtr field, int degree, Mode mode, std::uint64_t seed)
    : field_(std::move(field)), degree_(degree), mode_(mode), rng_(seed) {
    if (degree < 1)
        throw PreconditionError("irreducible degree must be >= 1");
    count_ = 1;
    for (int i = 0; i < degree; ++i) {
        if (count_ > std::numeric_limits<std::uint64_t>::max() / 4 / field_->q())
            throw PreconditionError("degree too large to enumerate");
        count_ *= field_->q();
    }
}

Poly IrreducibleStream::from_index(std::uint64_t index) const {
    std::vector<Elem> c(static_cast<std::size_t>(degree_) + 1, 0);
    for (int i = 0; i < degree_; ++i) {
        c[i] = static_cast<Elem>(index % field_->q());
        index /= field_->q();
    }
    c[degree_] = 1;
    return Poly(field_, std::move(c));
}

std::optional<Poly> IrreducibleStream::next() {
    if (mode_ == Mode::random) {
        std::uniform_int_distribution<std::uint64_t> dist(0, count_ - 1);
        for (;;) {
            Poly p = from_index(dist(rng_));
            if (is_irreducible(p))
                return p;
        }
    }
    while (index_ < count_) {
        Poly p = from_index(index_++);
        if (is_irreducible(p))
            return p;
    }
    return std::nullopt;
}

std::vector<Poly> monic_irreducibles(const FieldPtr& field, int degree) {
    std::vector<Poly> out;
    IrreducibleStream stream(field, degree);
    while (auto p = stream.next())
        out.push_back(std::move(*p));
    return out;
}

std::vector<Poly> monic_irreducibles(const FieldPtr& field, int dmin, int dmax) {
    std::vector<Poly> out;
    for (int d = dmin; d <= dmax; ++d) {
        auto part = monic_irreducibles(field, d);
        out.insert(out.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
    }
    return out;
}

std::vector<Poly> monic_polynomials(const FieldPtr& field, int degree) {
    if (degree < 0)
        return {};
    std::uint64_t count = 1;
    for (int i = 0; i < degree; ++i)
        count *= field->q();
    std::vector<Poly> out;
    out.reserve(count);
    for (std::uint64_t idx = 0; idx < count; ++idx) {
        std::vector<Elem> c(static_cast<std::size_t>(degree) + 1, 0);
        std::uint64_t v = idx;
        for (int i = 0; i < degree; ++i) {
            c[i] = static_cast<Elem>(v % field->q());
            v /= field->q();
        }
        c[degree] = 1;
        out.emplace_back(field, std::move(c));
    }
    return out;
}

Poly random_poly(const FieldPtr& field, int bound, std::mt19937_64& rng) {
    std::uniform_int_distribution<unsigned> dist(0, field->q() - 1);
    std::vector<Elem> c(static_cast<std::size_t>(std::max(bound, 0)));
    for (auto& x : c)
        x = static_cast<Elem>(dist(rng));
    return Poly(field, std::move(c));
}

} // namespace drinfeld
