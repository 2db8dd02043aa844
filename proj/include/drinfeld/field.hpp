#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace drinfeld {

/// Canonical integer code of an element of F_q: the base-p digit packing of
/// its coordinates in the polynomial basis 1, x, ..., x^{e-1}.
using Elem = std::uint16_t;

class FqField;
using FieldPtr = std::shared_ptr<const FqField>;

/// The finite field F_q = F_p[x]/(f) with q = p^e <= 256.
///
/// All arithmetic is table driven; an instance is immutable after
/// construction and may be shared across threads.
class FqField {
public:
    static constexpr unsigned kMaxOrder = 256;

    /// Field with the default modulus for (p, e).
    static FieldPtr create(unsigned p, unsigned e);
    /// Field with an explicit monic modulus over F_p (ascending coefficients).
    static FieldPtr create(unsigned p, std::vector<unsigned> modulus);

    /// Least monic irreducible of degree e over F_p in canonical polynomial
    /// order (compare from the top coefficient down).
    static std::vector<unsigned> default_modulus(unsigned p, unsigned e);

    unsigned p() const noexcept { return p_; }
    unsigned e() const noexcept { return e_; }
    unsigned q() const noexcept { return q_; }
    const std::vector<unsigned>& modulus() const noexcept { return modulus_; }

    Elem add(Elem a, Elem b) const noexcept { return add_[a * q_ + b]; }
    Elem sub(Elem a, Elem b) const noexcept { return add_[a * q_ + neg_[b]]; }
    Elem neg(Elem a) const noexcept { return neg_[a]; }
    Elem mul(Elem a, Elem b) const noexcept { return mul_[a * q_ + b]; }
    Elem inv(Elem a) const;
    Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
    Elem pow(Elem a, std::uint64_t n) const noexcept;
    /// Unique b with b^p = a.
    Elem pth_root(Elem a) const noexcept { return proot_[a]; }
    /// Image of the integer n in the prime subfield.
    Elem from_integer(long long n) const noexcept;

    /// Row of the multiplication table for a fixed left operand.
    const Elem* mul_row(Elem a) const noexcept { return mul_.data() + static_cast<std::size_t>(a) * q_; }
    const Elem* add_row(Elem a) const noexcept { return add_.data() + static_cast<std::size_t>(a) * q_; }

    bool operator==(const FqField& other) const noexcept {
        return p_ == other.p_ && modulus_ == other.modulus_;
    }

    std::string describe() const;

private:
    FqField(unsigned p, std::vector<unsigned> modulus);

    unsigned p_;
    unsigned e_;
    unsigned q_;
    std::vector<unsigned> modulus_;
    std::vector<Elem> add_;
    std::vector<Elem> mul_;
    std::vector<Elem> neg_;
    std::vector<Elem> inv_;
    std::vector<Elem> proot_;
};

bool is_prime_integer(unsigned n) noexcept;

} // namespace drinfeld
