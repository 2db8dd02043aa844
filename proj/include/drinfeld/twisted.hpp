#pragma once

#include "drinfeld/poly.hpp"

#include <vector>

namespace drinfeld {

/// An element sum_i c_i tau^i of the twisted polynomial ring A{tau}, with
/// tau * a = a^q * tau.
class TwistedPoly {
public:
    explicit TwistedPoly(FieldPtr field);
    TwistedPoly(FieldPtr field, std::vector<Poly> coeffs);

    static TwistedPoly constant(const Poly& c);
    static TwistedPoly tau(FieldPtr field, std::size_t power = 1);

    /// tau-degree; kZeroDegree for the zero element.
    int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const noexcept { return coeffs_.empty(); }
    const std::vector<Poly>& coeffs() const noexcept { return coeffs_; }
    Poly coeff(std::size_t i) const;
    const FieldPtr& field_ptr() const noexcept { return field_; }

    /// Largest theta-degree among the coefficients.
    int max_coeff_degree() const noexcept;

    /// sum_i c_i x^{q^i}.
    Poly apply(const Poly& x) const;
    /// sum_i c_i x^{q^i} mod m, never forming x^{q^i} exactly.
    Poly apply_mod(const Poly& x, const Poly& m) const;

    std::string to_string() const;

    TwistedPoly& operator+=(const TwistedPoly& other);
    TwistedPoly& operator-=(const TwistedPoly& other);
    friend TwistedPoly operator+(TwistedPoly a, const TwistedPoly& b) { return a += b; }
    friend TwistedPoly operator-(TwistedPoly a, const TwistedPoly& b) { return a -= b; }
    friend TwistedPoly operator*(const TwistedPoly& f, const TwistedPoly& g);
    friend bool operator==(const TwistedPoly& a, const TwistedPoly& b) noexcept { return a.coeffs_ == b.coeffs_; }

private:
    void normalize();

    FieldPtr field_;
    std::vector<Poly> coeffs_;
};

} // namespace drinfeld
