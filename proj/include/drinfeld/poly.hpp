#pragma once

#include "drinfeld/field.hpp"

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace drinfeld {

/// Degree reported for the zero polynomial (stands in for minus infinity).
inline constexpr int kZeroDegree = -1;

/// An element of A = F_q[theta], stored as ascending coefficient codes with
/// no trailing zero.
///
/// Ordering is canonical: by degree, then by coefficient codes compared from
/// the top down. This is the order used for enumeration and for every
/// persisted record.
class Poly {
public:
    explicit Poly(FieldPtr field);
    Poly(FieldPtr field, std::vector<Elem> coeffs);

    static Poly constant(FieldPtr field, Elem c);
    static Poly monomial(FieldPtr field, Elem c, std::size_t degree);
    static Poly theta(FieldPtr field);
    /// Builds from integer codes; throws if a code is not below q.
    static Poly from_codes(FieldPtr field, std::span<const long long> codes);

    int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const noexcept { return coeffs_.empty(); }
    bool is_constant() const noexcept { return coeffs_.size() <= 1; }
    bool is_one() const noexcept { return coeffs_.size() == 1 && coeffs_[0] == 1; }
    bool is_monic() const noexcept { return !coeffs_.empty() && coeffs_.back() == 1; }
    Elem lead() const noexcept { return coeffs_.empty() ? Elem{0} : coeffs_.back(); }
    Elem coeff(std::size_t i) const noexcept { return i < coeffs_.size() ? coeffs_[i] : Elem{0}; }
    const std::vector<Elem>& coeffs() const noexcept { return coeffs_; }

    const FqField& field() const noexcept { return *field_; }
    const FieldPtr& field_ptr() const noexcept { return field_; }

    Poly monic() const;
    Poly derivative() const;
    /// a^{q^k}; in characteristic p this only spreads the coefficients.
    Poly frobenius(unsigned k = 1) const;
    Poly scaled(Elem c) const;
    /// Multiplication by theta^n.
    Poly shifted(std::size_t n) const;
    Elem evaluate(Elem x) const noexcept;

    /// Canonical text form: ascending coefficient codes, e.g. "[1,0,1]".
    std::string to_string() const;

    Poly& operator+=(const Poly& other);
    Poly& operator-=(const Poly& other);
    Poly& operator*=(const Poly& other);

    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b);
    friend Poly operator-(const Poly& a);

    friend bool operator==(const Poly& a, const Poly& b) noexcept { return a.coeffs_ == b.coeffs_; }
    friend std::strong_ordering operator<=>(const Poly& a, const Poly& b) noexcept;

private:
    void normalize() noexcept;

    FieldPtr field_;
    std::vector<Elem> coeffs_;
};

struct DivMod {
    Poly quotient;
    Poly remainder;
};

/// Euclidean division f = quotient * g + remainder, deg remainder < deg g.
DivMod divmod(const Poly& f, const Poly& g);
Poly operator/(const Poly& f, const Poly& g);
Poly operator%(const Poly& f, const Poly& g);
bool divides(const Poly& d, const Poly& f);

/// Monic gcd; gcd(f, 0) = monic(f). Throws when both inputs are zero.
Poly gcd(const Poly& f, const Poly& g);

struct Bezout {
    Poly gcd;
    Poly s;
    Poly t;
};
/// s*f + t*g = gcd (monic).
Bezout xgcd(const Poly& f, const Poly& g);

Poly mul_mod(const Poly& a, const Poly& b, const Poly& m);
Poly pow(const Poly& a, std::uint64_t n);
Poly pow_mod(const Poly& a, std::uint64_t n, const Poly& m);
/// a^{q^k} mod m.
Poly frobenius_mod(const Poly& a, const Poly& m, unsigned k = 1);
std::optional<Poly> inverse_mod(const Poly& a, const Poly& m);

/// The p-th root, if f is a p-th power.
std::optional<Poly> pth_root(const Poly& f);
/// The q^k-th root through e*k successive p-th roots, if it exists.
std::optional<Poly> qpower_root(const Poly& f, unsigned k);

/// Parses the canonical text form "[c0,c1,...]".
Poly parse_poly(const FieldPtr& field, std::string_view text);

} // namespace drinfeld
