#pragma once

#include "drinfeld/poly.hpp"
#include "drinfeld/twisted.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace drinfeld {

/// Default ceiling on the theta-degree of any exactly evaluated value.
inline constexpr long long kDefaultDegreeGuard = 1'000'000;

/// A Drinfeld module phi: A -> A{tau} over A = F_q[theta], determined by
/// phi_theta = theta + a_1 tau + ... + a_r tau^r with a_r != 0.
class DrinfeldModule {
public:
    /// coeffs holds a_1..a_r; the tau^0 coefficient is always theta.
    DrinfeldModule(FieldPtr field, std::vector<Poly> coeffs);

    /// The Carlitz module, phi_theta = theta + tau.
    static DrinfeldModule carlitz(FieldPtr field);

    int rank() const noexcept { return static_cast<int>(coeffs_.size()); }
    const std::vector<Poly>& coeffs() const noexcept { return coeffs_; }
    const TwistedPoly& phi_theta() const noexcept { return phi_theta_; }
    const FqField& field() const noexcept { return *field_; }
    const FieldPtr& field_ptr() const noexcept { return field_; }
    bool is_carlitz() const noexcept;

    long long degree_guard() const noexcept { return degree_guard_; }
    void set_degree_guard(long long guard) noexcept { degree_guard_ = guard; }

    /// q^r.
    std::uint64_t q_power_rank() const noexcept { return q_power_rank_; }

    /// phi_theta(x), exactly.
    Poly apply_theta(const Poly& x) const;
    /// phi_theta(x) mod m.
    Poly apply_theta_mod(const Poly& x, const Poly& m) const;

    /// Upper bound on deg phi_theta(x) given deg x.
    long long predicted_theta_degree(long long deg_x) const noexcept;

    /// True when deg x > max_{0<=i<r} deg a_i / (q^r - q^i) (with a_0 = theta);
    /// past this bound deg phi_theta(x) = q^r deg x + deg a_r.
    bool beyond_growth_bound(int deg_x) const noexcept;

    /// Text form: list of a_1..a_r in canonical polynomial form.
    std::string to_string() const;

private:
    FieldPtr field_;
    std::vector<Poly> coeffs_;
    TwistedPoly phi_theta_;
    std::uint64_t q_power_rank_;
    long long degree_guard_ = kDefaultDegreeGuard;
};

/// (H)_P: if q = 2 then deg P > 1.
bool hypothesis_h(const Poly& P);

/// phi_b as an element of A{tau}.
TwistedPoly phi_image(const DrinfeldModule& phi, const Poly& b);

/// phi_b(a) exactly. Throws DegreeGuardExceeded before any step whose
/// output degree would pass the module's guard.
Poly eval_phi(const DrinfeldModule& phi, const Poly& b, const Poly& a);
/// phi_b(a) mod m via x_{i+1} = phi_theta(x_i) mod m over the theta-digits of b.
Poly eval_phi(const DrinfeldModule& phi, const Poly& b, const Poly& a, const Poly& m);

struct FittingData {
    Poly P;
    Poly g;  // monic generator of Fitt_A phi(A/PA)
    Poly r;  // P - g, deg r < deg P
};

/// g = det(X - phi_theta | A/PA) evaluated at X = theta. P must be monic
/// irreducible. The result is checked against phi_g(a) = 0 mod P on three
/// residues drawn from a seed derived from (P, phi).
FittingData fitting_generator(const DrinfeldModule& phi, const Poly& P);

/// Exact torsion decision via the theta-orbit of a: torsion iff the orbit
/// hits 0 or repeats before its degree leaves the growth bound.
bool is_torsion(const DrinfeldModule& phi, const Poly& a);

/// c_phi = N + n0: N is the first n with deg phi_{theta^n}(1) past the
/// growth bound and n0 the first n with deg phi_{theta^{N+n}}(1) > N + n.
/// Defined for base 1 only; throws if 1 is torsion.
int degree_threshold(const DrinfeldModule& phi);

} // namespace drinfeld
