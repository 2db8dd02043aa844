#include "drinfeld/field.hpp"

#include "drinfeld/errors.hpp"

#include <fmt/format.h>

namespace drinfeld {

namespace {

using PrimePoly = std::vector<unsigned>;

void trim(PrimePoly& f) {
    while (!f.empty() && f.back() == 0)
        f.pop_back();
}

unsigned inv_mod_prime(unsigned a, unsigned p) {
    unsigned result = 1;
    unsigned base = a % p;
    unsigned n = p - 2;
    while (n) {
        if (n & 1)
            result = result * base % p;
        base = base * base % p;
        n >>= 1;
    }
    return result;
}

// Remainder of f modulo g over F_p; g nonzero.
PrimePoly rem_prime(PrimePoly f, const PrimePoly& g, unsigned p) {
    trim(f);
    const std::size_t dg = g.size() - 1;
    const unsigned lead_inv = inv_mod_prime(g.back(), p);
    while (f.size() > dg) {
        const unsigned c = f.back() * lead_inv % p;
        const std::size_t shift = f.size() - 1 - dg;
        for (std::size_t i = 0; i <= dg; ++i)
            f[shift + i] = (f[shift + i] + (p - c) * g[i]) % p;
        trim(f);
    }
    return f;
}

// Trial division by every monic polynomial of degree 1..deg/2.
bool irreducible_over_prime(const PrimePoly& f, unsigned p) {
    const std::size_t n = f.size() - 1;
    if (n <= 1)
        return n == 1;
    for (std::size_t d = 1; d <= n / 2; ++d) {
        std::size_t count = 1;
        for (std::size_t i = 0; i < d; ++i)
            count *= p;
        for (std::size_t code = 0; code < count; ++code) {
            PrimePoly g(d + 1, 0);
            std::size_t c = code;
            for (std::size_t i = 0; i < d; ++i) {
                g[i] = static_cast<unsigned>(c % p);
                c /= p;
            }
            g[d] = 1;
            if (rem_prime(f, g, p).empty())
                return false;
        }
    }
    return true;
}

} // namespace

bool is_prime_integer(unsigned n) noexcept {
    if (n < 2)
        return false;
    for (unsigned d = 2; d * d <= n; ++d)
        if (n % d == 0)
            return false;
    return true;
}

std::vector<unsigned> FqField::default_modulus(unsigned p, unsigned e) {
    if (!is_prime_integer(p))
        throw PreconditionError(fmt::format("characteristic {} is not prime", p));
    if (e == 0)
        throw PreconditionError("extension degree must be positive");
    std::size_t count = 1;
    for (unsigned i = 0; i < e; ++i) {
        count *= p;
        if (count > kMaxOrder)
            throw PreconditionError(fmt::format("unsupported field order {}^{}", p, e));
    }
    for (std::size_t code = 0; code < count; ++code) {
        PrimePoly f(e + 1, 0);
        std::size_t c = code;
        for (unsigned i = 0; i < e; ++i) {
            f[i] = static_cast<unsigned>(c % p);
            c /= p;
        }
        f[e] = 1;
        if (irreducible_over_prime(f, p))
            return f;
    }
    throw InvariantViolation("no irreducible modulus found");
}

FieldPtr FqField::create(unsigned p, unsigned e) { return create(p, default_modulus(p, e)); }

FieldPtr FqField::create(unsigned p, std::vector<unsigned> modulus) {
    if (!is_prime_integer(p))
        throw PreconditionError(fmt::format("characteristic {} is not prime", p));
    for (unsigned c : modulus)
        if (c >= p)
            throw PreconditionError(fmt::format("modulus coefficient {} is not reduced mod {}", c, p));
    trim(modulus);
    if (modulus.size() < 2)
        throw PreconditionError("field modulus must have degree >= 1");
    if (modulus.back() != 1)
        throw PreconditionError("field modulus must be monic");
    std::size_t q = 1;
    for (std::size_t i = 1; i < modulus.size(); ++i) {
        q *= p;
        if (q > kMaxOrder)
            throw PreconditionError(fmt::format("unsupported field order {}^{}", p, modulus.size() - 1));
    }
    if (!irreducible_over_prime(modulus, p))
        throw PreconditionError("field modulus is reducible over F_p");
    return FieldPtr(new FqField(p, std::move(modulus)));
}

FqField::FqField(unsigned p, std::vector<unsigned> modulus)
    : p_(p), e_(static_cast<unsigned>(modulus.size() - 1)), q_(1), modulus_(std::move(modulus)) {
    for (unsigned i = 0; i < e_; ++i)
        q_ *= p_;

    auto decode = [&](unsigned code) {
        PrimePoly d(e_, 0);
        for (unsigned i = 0; i < e_; ++i) {
            d[i] = code % p_;
            code /= p_;
        }
        return d;
    };
    auto encode = [&](const PrimePoly& d) {
        unsigned code = 0;
        for (std::size_t i = d.size(); i-- > 0;)
            code = code * p_ + d[i];
        return static_cast<Elem>(code);
    };

    const std::size_t qq = static_cast<std::size_t>(q_) * q_;
    add_.resize(qq);
    mul_.resize(qq);
    neg_.resize(q_);
    inv_.assign(q_, 0);
    proot_.resize(q_);

    std::vector<PrimePoly> digits(q_);
    for (unsigned a = 0; a < q_; ++a)
        digits[a] = decode(a);

    for (unsigned a = 0; a < q_; ++a) {
        PrimePoly n(e_);
        for (unsigned i = 0; i < e_; ++i)
            n[i] = (p_ - digits[a][i]) % p_;
        neg_[a] = encode(n);
        for (unsigned b = 0; b < q_; ++b) {
            PrimePoly s(e_);
            for (unsigned i = 0; i < e_; ++i)
                s[i] = (digits[a][i] + digits[b][i]) % p_;
            add_[a * q_ + b] = encode(s);

            PrimePoly prod(2 * e_ - 1, 0);
            for (unsigned i = 0; i < e_; ++i)
                for (unsigned j = 0; j < e_; ++j)
                    prod[i + j] = (prod[i + j] + digits[a][i] * digits[b][j]) % p_;
            PrimePoly r = rem_prime(prod, modulus_, p_);
            r.resize(e_, 0);
            mul_[a * q_ + b] = encode(r);
        }
    }
    for (unsigned a = 1; a < q_; ++a)
        for (unsigned b = 1; b < q_; ++b)
            if (mul_[a * q_ + b] == 1) {
                inv_[a] = static_cast<Elem>(b);
                break;
            }
    // Frobenius x -> x^p is a bijection; its inverse is x -> x^{p^{e-1}}.
    for (unsigned a = 0; a < q_; ++a)
        proot_[a] = pow(static_cast<Elem>(a), q_ / p_);
}

Elem FqField::inv(Elem a) const {
    if (a == 0)
        throw PreconditionError("inverse of zero in F_q");
    return inv_[a];
}

Elem FqField::pow(Elem a, std::uint64_t n) const noexcept {
    Elem result = 1;
    Elem base = a;
    while (n) {
        if (n & 1)
            result = mul(result, base);
        base = mul(base, base);
        n >>= 1;
    }
    return result;
}

Elem FqField::from_integer(long long n) const noexcept {
    long long r = n % static_cast<long long>(p_);
    if (r < 0)
        r += p_;
    return static_cast<Elem>(r);
}

std::string FqField::describe() const {
    std::string mod = "[";
    for (std::size_t i = 0; i < modulus_.size(); ++i) {
        if (i)
            mod += ',';
        mod += std::to_string(modulus_[i]);
    }
    mod += ']';
    return fmt::format("F_{} (p={}, e={}, modulus={})", q_, p_, e_, mod);
}

} // namespace drinfeld
