#include "drinfeld/poly.hpp"

#include "drinfeld/errors.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

namespace drinfeld {

namespace {

void require_same_field(const Poly& a, const Poly& b) {
    if (a.field_ptr() != b.field_ptr() && !(a.field() == b.field()))
        throw PreconditionError("polynomials over different fields");
}

void trim(std::vector<Elem>& c) {
    while (!c.empty() && c.back() == 0)
        c.pop_back();
}

// In-place remainder of r modulo g (g nonzero). Leaves r trimmed.
void reduce_in_place(const FqField& F, std::vector<Elem>& r, const std::vector<Elem>& g) {
    trim(r);
    const std::size_t dg = g.size() - 1;
    if (r.size() <= dg)
        return;
    const Elem lead_inv = F.inv(g.back());
    std::vector<Elem> neg_g(g.size());
    for (std::size_t i = 0; i < g.size(); ++i)
        neg_g[i] = F.neg(g[i]);
    for (std::size_t top = r.size(); top-- > dg;) {
        const Elem c = F.mul(r[top], lead_inv);
        if (c == 0)
            continue;
        const Elem* row = F.mul_row(c);
        const std::size_t shift = top - dg;
        for (std::size_t i = 0; i < dg; ++i)
            r[shift + i] = F.add(r[shift + i], row[neg_g[i]]);
        r[top] = 0;
    }
    r.resize(dg);
    trim(r);
}

std::vector<Elem> multiply(const FqField& F, const std::vector<Elem>& a, const std::vector<Elem>& b) {
    if (a.empty() || b.empty())
        return {};
    std::vector<Elem> r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0)
            continue;
        const Elem* row = F.mul_row(a[i]);
        Elem* out = r.data() + i;
        for (std::size_t j = 0; j < b.size(); ++j)
            out[j] = F.add(out[j], row[b[j]]);
    }
    return r;
}

} // namespace

Poly::Poly(FieldPtr field) : field_(std::move(field)) {
    if (!field_)
        throw PreconditionError("polynomial requires a field");
}

Poly::Poly(FieldPtr field, std::vector<Elem> coeffs) : field_(std::move(field)), coeffs_(std::move(coeffs)) {
    if (!field_)
        throw PreconditionError("polynomial requires a field");
    for (Elem c : coeffs_)
        if (c >= field_->q())
            throw PreconditionError("coefficient code out of range");
    normalize();
}

Poly Poly::constant(FieldPtr field, Elem c) { return Poly(std::move(field), std::vector<Elem>{c}); }

Poly Poly::monomial(FieldPtr field, Elem c, std::size_t degree) {
    std::vector<Elem> v(degree + 1, 0);
    v[degree] = c;
    return Poly(std::move(field), std::move(v));
}

Poly Poly::theta(FieldPtr field) { return monomial(std::move(field), 1, 1); }

Poly Poly::from_codes(FieldPtr field, std::span<const long long> codes) {
    std::vector<Elem> v;
    v.reserve(codes.size());
    for (long long c : codes) {
        if (c < 0 || c >= static_cast<long long>(field->q()))
            throw PreconditionError("coefficient code " + std::to_string(c) + " not in [0, q)");
        v.push_back(static_cast<Elem>(c));
    }
    return Poly(std::move(field), std::move(v));
}

void Poly::normalize() noexcept { trim(coeffs_); }

Poly Poly::monic() const {
    if (is_zero() || lead() == 1)
        return *this;
    return scaled(field_->inv(lead()));
}

Poly Poly::derivative() const {
    if (coeffs_.size() <= 1)
        return Poly(field_);
    std::vector<Elem> d(coeffs_.size() - 1);
    for (std::size_t i = 1; i < coeffs_.size(); ++i)
        d[i - 1] = field_->mul(field_->from_integer(static_cast<long long>(i)), coeffs_[i]);
    return Poly(field_, std::move(d));
}

Poly Poly::frobenius(unsigned k) const {
    if (is_zero() || k == 0)
        return *this;
    std::size_t step = 1;
    for (unsigned i = 0; i < k; ++i)
        step *= field_->q();
    std::vector<Elem> r((coeffs_.size() - 1) * step + 1, 0);
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        r[i * step] = coeffs_[i];
    Poly out(field_);
    out.coeffs_ = std::move(r);
    return out;
}

Poly Poly::scaled(Elem c) const {
    if (c == 0)
        return Poly(field_);
    Poly out(*this);
    const Elem* row = field_->mul_row(c);
    for (Elem& x : out.coeffs_)
        x = row[x];
    return out;
}

Poly Poly::shifted(std::size_t n) const {
    if (is_zero() || n == 0)
        return *this;
    Poly out(field_);
    out.coeffs_.assign(n, 0);
    out.coeffs_.insert(out.coeffs_.end(), coeffs_.begin(), coeffs_.end());
    return out;
}

Elem Poly::evaluate(Elem x) const noexcept {
    Elem acc = 0;
    for (std::size_t i = coeffs_.size(); i-- > 0;)
        acc = field_->add(field_->mul(acc, x), coeffs_[i]);
    return acc;
}

std::string Poly::to_string() const {
    std::string s = "[";
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (i)
            s += ',';
        s += std::to_string(coeffs_[i]);
    }
    s += ']';
    return s;
}

Poly& Poly::operator+=(const Poly& other) {
    require_same_field(*this, other);
    if (coeffs_.size() < other.coeffs_.size())
        coeffs_.resize(other.coeffs_.size(), 0);
    for (std::size_t i = 0; i < other.coeffs_.size(); ++i)
        coeffs_[i] = field_->add(coeffs_[i], other.coeffs_[i]);
    normalize();
    return *this;
}

Poly& Poly::operator-=(const Poly& other) {
    require_same_field(*this, other);
    if (coeffs_.size() < other.coeffs_.size())
        coeffs_.resize(other.coeffs_.size(), 0);
    for (std::size_t i = 0; i < other.coeffs_.size(); ++i)
        coeffs_[i] = field_->sub(coeffs_[i], other.coeffs_[i]);
    normalize();
    return *this;
}

Poly& Poly::operator*=(const Poly& other) {
    require_same_field(*this, other);
    coeffs_ = multiply(*field_, coeffs_, other.coeffs_);
    return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
    Poly r(a);
    r *= b;
    return r;
}

Poly operator-(const Poly& a) {
    Poly r(a);
    for (Elem& c : r.coeffs_)
        c = a.field().neg(c);
    return r;
}

std::strong_ordering operator<=>(const Poly& a, const Poly& b) noexcept {
    if (auto c = a.coeffs_.size() <=> b.coeffs_.size(); c != 0)
        return c;
    for (std::size_t i = a.coeffs_.size(); i-- > 0;)
        if (auto c = a.coeffs_[i] <=> b.coeffs_[i]; c != 0)
            return c;
    return std::strong_ordering::equal;
}

DivMod divmod(const Poly& f, const Poly& g) {
    require_same_field(f, g);
    if (g.is_zero())
        throw PreconditionError("division by the zero polynomial");
    const FqField& F = f.field();
    if (f.degree() < g.degree())
        return {Poly(f.field_ptr()), f};
    std::vector<Elem> r = f.coeffs();
    const std::vector<Elem>& gc = g.coeffs();
    const std::size_t dg = gc.size() - 1;
    std::vector<Elem> quot(r.size() - dg, 0);
    const Elem lead_inv = F.inv(g.lead());
    std::vector<Elem> neg_g(gc.size());
    for (std::size_t i = 0; i < gc.size(); ++i)
        neg_g[i] = F.neg(gc[i]);
    for (std::size_t top = r.size(); top-- > dg;) {
        const Elem c = F.mul(r[top], lead_inv);
        quot[top - dg] = c;
        if (c == 0)
            continue;
        const Elem* row = F.mul_row(c);
        const std::size_t shift = top - dg;
        for (std::size_t i = 0; i < dg; ++i)
            r[shift + i] = F.add(r[shift + i], row[neg_g[i]]);
        r[top] = 0;
    }
    r.resize(dg);
    return {Poly(f.field_ptr(), std::move(quot)), Poly(f.field_ptr(), std::move(r))};
}

Poly operator/(const Poly& f, const Poly& g) { return divmod(f, g).quotient; }

Poly operator%(const Poly& f, const Poly& g) {
    require_same_field(f, g);
    if (g.is_zero())
        throw PreconditionError("division by the zero polynomial");
    if (f.degree() < g.degree())
        return f;
    std::vector<Elem> r = f.coeffs();
    reduce_in_place(f.field(), r, g.coeffs());
    return Poly(f.field_ptr(), std::move(r));
}

bool divides(const Poly& d, const Poly& f) {
    if (d.is_zero())
        return f.is_zero();
    return (f % d).is_zero();
}

Poly gcd(const Poly& f, const Poly& g) {
    require_same_field(f, g);
    if (f.is_zero() && g.is_zero())
        throw PreconditionError("gcd of two zero polynomials");
    const FqField& F = f.field();
    std::vector<Elem> a = f.coeffs();
    std::vector<Elem> b = g.coeffs();
    if (a.size() < b.size())
        std::swap(a, b);
    while (!b.empty()) {
        reduce_in_place(F, a, b);
        std::swap(a, b);
    }
    return Poly(f.field_ptr(), std::move(a)).monic();
}

Bezout xgcd(const Poly& f, const Poly& g) {
    require_same_field(f, g);
    if (f.is_zero() && g.is_zero())
        throw PreconditionError("gcd of two zero polynomials");
    const FieldPtr& F = f.field_ptr();
    Poly r0 = f, r1 = g;
    Poly s0 = Poly::constant(F, 1), s1(F);
    Poly t0(F), t1 = Poly::constant(F, 1);
    while (!r1.is_zero()) {
        auto [quot, rem] = divmod(r0, r1);
        r0 = std::move(r1);
        r1 = std::move(rem);
        Poly s2 = s0 - quot * s1;
        s0 = std::move(s1);
        s1 = std::move(s2);
        Poly t2 = t0 - quot * t1;
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    const Elem inv = F->inv(r0.lead());
    return {r0.scaled(inv), s0.scaled(inv), t0.scaled(inv)};
}

Poly mul_mod(const Poly& a, const Poly& b, const Poly& m) { return (a * b) % m; }

Poly pow(const Poly& a, std::uint64_t n) {
    Poly result = Poly::constant(a.field_ptr(), 1);
    Poly base = a;
    while (n) {
        if (n & 1)
            result *= base;
        n >>= 1;
        if (n)
            base *= base;
    }
    return result;
}

Poly pow_mod(const Poly& a, std::uint64_t n, const Poly& m) {
    Poly result = Poly::constant(a.field_ptr(), 1) % m;
    Poly base = a % m;
    while (n) {
        if (n & 1)
            result = mul_mod(result, base, m);
        n >>= 1;
        if (n)
            base = mul_mod(base, base, m);
    }
    return result;
}

Poly frobenius_mod(const Poly& a, const Poly& m, unsigned k) {
    if (m.is_zero())
        throw PreconditionError("division by the zero polynomial");
    const FqField& F = a.field();
    const std::size_t q = F.q();
    std::vector<Elem> cur = (a % m).coeffs();
    for (unsigned step = 0; step < k && !cur.empty(); ++step) {
        std::vector<Elem> spread((cur.size() - 1) * q + 1, 0);
        for (std::size_t i = 0; i < cur.size(); ++i)
            spread[i * q] = cur[i];
        reduce_in_place(F, spread, m.coeffs());
        cur = std::move(spread);
    }
    return Poly(a.field_ptr(), std::move(cur));
}

std::optional<Poly> inverse_mod(const Poly& a, const Poly& m) {
    if (m.is_zero())
        throw PreconditionError("division by the zero polynomial");
    const Poly r = a % m;
    if (r.is_zero())
        return m.is_constant() ? std::optional<Poly>(Poly(a.field_ptr())) : std::nullopt;
    Bezout b = xgcd(r, m);
    if (!b.gcd.is_one())
        return std::nullopt;
    return b.s % m;
}

std::optional<Poly> pth_root(const Poly& f) {
    const FqField& F = f.field();
    const std::size_t p = F.p();
    if (f.is_zero())
        return f;
    const auto& c = f.coeffs();
    std::vector<Elem> root((c.size() - 1) / p + 1, 0);
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (i % p == 0)
            root[i / p] = F.pth_root(c[i]);
        else if (c[i] != 0)
            return std::nullopt;
    }
    return Poly(f.field_ptr(), std::move(root));
}

std::optional<Poly> qpower_root(const Poly& f, unsigned k) {
    const unsigned steps = f.field().e() * k;
    std::optional<Poly> cur = f;
    for (unsigned i = 0; i < steps && cur; ++i)
        cur = pth_root(*cur);
    return cur;
}

Poly parse_poly(const FieldPtr& field, std::string_view text) {
    auto fail = [&](const std::string& why) -> Poly {
        throw PreconditionError("malformed polynomial '" + std::string(text) + "': " + why);
    };
    std::size_t i = 0;
    auto skip_ws = [&] {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i])))
            ++i;
    };
    skip_ws();
    if (i >= text.size() || text[i] != '[')
        return fail("expected '['");
    ++i;
    std::vector<long long> codes;
    skip_ws();
    if (i < text.size() && text[i] == ']') {
        ++i;
    } else {
        for (;;) {
            skip_ws();
            long long v = 0;
            auto [ptr, ec] = std::from_chars(text.data() + i, text.data() + text.size(), v);
            if (ec != std::errc())
                return fail("expected integer");
            i = static_cast<std::size_t>(ptr - text.data());
            codes.push_back(v);
            skip_ws();
            if (i < text.size() && text[i] == ',') {
                ++i;
                continue;
            }
            if (i < text.size() && text[i] == ']') {
                ++i;
                break;
            }
            return fail("expected ',' or ']'");
        }
    }
    skip_ws();
    if (i != text.size())
        return fail("trailing characters");
    return Poly::from_codes(field, codes);
}

} // namespace drinfeld
