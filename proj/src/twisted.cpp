#include "drinfeld/twisted.hpp"

#include "drinfeld/errors.hpp"

#include <algorithm>

namespace drinfeld {

TwistedPoly::TwistedPoly(FieldPtr field) : field_(std::move(field)) {}

TwistedPoly::TwistedPoly(FieldPtr field, std::vector<Poly> coeffs) : field_(std::move(field)), coeffs_(std::move(coeffs)) {
    for (const Poly& c : coeffs_)
        if (!(c.field() == *field_))
            throw PreconditionError("twisted polynomial coefficient over a different field");
    normalize();
}

TwistedPoly TwistedPoly::constant(const Poly& c) { return TwistedPoly(c.field_ptr(), {c}); }

TwistedPoly TwistedPoly::tau(FieldPtr field, std::size_t power) {
    std::vector<Poly> c(power + 1, Poly(field));
    c[power] = Poly::constant(field, 1);
    return TwistedPoly(std::move(field), std::move(c));
}

void TwistedPoly::normalize() {
    while (!coeffs_.empty() && coeffs_.back().is_zero())
        coeffs_.pop_back();
}

Poly TwistedPoly::coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : Poly(field_); }

int TwistedPoly::max_coeff_degree() const noexcept {
    int d = kZeroDegree;
    for (const Poly& c : coeffs_)
        d = std::max(d, c.degree());
    return d;
}

Poly TwistedPoly::apply(const Poly& x) const {
    Poly acc(field_);
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        if (!coeffs_[i].is_zero())
            acc += coeffs_[i] * x.frobenius(static_cast<unsigned>(i));
    return acc;
}

Poly TwistedPoly::apply_mod(const Poly& x, const Poly& m) const {
    Poly acc(field_);
    Poly power = x % m;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (i > 0)
            power = frobenius_mod(power, m);
        if (!coeffs_[i].is_zero())
            acc += mul_mod(coeffs_[i] % m, power, m);
    }
    return acc % m;
}

std::string TwistedPoly::to_string() const {
    std::string s = "[";
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (i)
            s += ',';
        s += coeffs_[i].to_string();
    }
    return s + "]";
}

TwistedPoly& TwistedPoly::operator+=(const TwistedPoly& other) {
    if (coeffs_.size() < other.coeffs_.size())
        coeffs_.resize(other.coeffs_.size(), Poly(field_));
    for (std::size_t i = 0; i < other.coeffs_.size(); ++i)
        coeffs_[i] += other.coeffs_[i];
    normalize();
    return *this;
}

TwistedPoly& TwistedPoly::operator-=(const TwistedPoly& other) {
    if (coeffs_.size() < other.coeffs_.size())
        coeffs_.resize(other.coeffs_.size(), Poly(field_));
    for (std::size_t i = 0; i < other.coeffs_.size(); ++i)
        coeffs_[i] -= other.coeffs_[i];
    normalize();
    return *this;
}

TwistedPoly operator*(const TwistedPoly& f, const TwistedPoly& g) {
    if (f.is_zero() || g.is_zero())
        return TwistedPoly(f.field_);
    // (f_i tau^i)(g_j tau^j) = f_i g_j^{q^i} tau^{i+j}
    std::vector<Poly> out(f.coeffs_.size() + g.coeffs_.size() - 1, Poly(f.field_));
    for (std::size_t j = 0; j < g.coeffs_.size(); ++j) {
        if (g.coeffs_[j].is_zero())
            continue;
        for (std::size_t i = 0; i < f.coeffs_.size(); ++i) {
            if (f.coeffs_[i].is_zero())
                continue;
            out[i + j] += f.coeffs_[i] * g.coeffs_[j].frobenius(static_cast<unsigned>(i));
        }
    }
    return TwistedPoly(f.field_, std::move(out));
}

} // namespace drinfeld
