#pragma once

#include "drinfeld/module.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace drinfeld {

/// Monic generator of pi_a(phi, m) = { b in A : phi_b(a) = 0 mod m }.
struct AnnihilatorResult {
    Poly generator;
    Poly modulus;
    Poly base;
};

/// Linear algebra over F_q on the residues phi_{theta^i}(a) mod m: the first
/// dependency v_n = sum c_i v_i gives the generator theta^n - sum c_i theta^i.
/// m may be composite; it only has to be nonzero.
AnnihilatorResult annihilator_generator(const DrinfeldModule& phi, const Poly& a, const Poly& m);

struct PiChain {
    std::vector<Poly> generators;  // generators[k-1] generates pi_a(phi, P^k)
    int chain_break;               // largest k with generators[k-1] == generators[0]
    bool broken;                   // some step multiplied by P within kmax
    bool hypothesis_h;
    bool chain_law_holds;
};

/// Generators of pi_a(phi, P^k) for k = 1..kmax. Each step must keep the
/// generator or multiply it by P, and once it multiplies it keeps doing so.
/// A breach throws InvariantViolation when (H)_P holds; without (H)_P it is
/// only reported through chain_law_holds.
PiChain pi_chain(const DrinfeldModule& phi, const Poly& a, const Poly& P, int kmax);

inline constexpr int kValuationCap = 6;

struct WieferichOptions {
    int valuation_cap = kValuationCap;
    bool with_chain = true;
};

struct WieferichStatus {
    Poly P;
    Poly a;
    Poly g;
    Poly r;
    Poly annihilator;
    /// v_P(phi_g(a)); nullopt when phi_g(a) = 0 exactly.
    std::optional<int> valuation{};
    bool valuation_capped = false;  // valuation holds the cap; true value >= cap
    bool is_wieferich = false;
    bool is_super = false;
    bool thakur = false;
    std::optional<int> chain_break{};
    bool hypothesis_h = true;
    bool base_divisible = false;  // P | a
    bool torsion_base = false;

    bool degenerate() const noexcept { return base_divisible || torsion_base || !hypothesis_h || !valuation; }
    std::vector<std::string> flags() const;
};

WieferichStatus wieferich_status(const DrinfeldModule& phi, const Poly& P, const Poly& a,
                                 const WieferichOptions& options = {});

/// phi_g(a) = 0 mod P^2.
bool is_wieferich(const DrinfeldModule& phi, const FittingData& fit, const Poly& a);

/// Thakur-style condition phi_P(a) = phi_r(a)^{q^{r deg P}} mod P^2.
bool thakur_congruence(const DrinfeldModule& phi, const FittingData& fit, const Poly& a);

/// Whether base a and base phi_d(a) give the same Wieferich verdict at P.
/// Requires a non-torsion, (H)_P and gcd(d, annihilator of P in base a) = 1.
/// Also checks that both bases share the same annihilator of P.
bool base_transfer_check(const DrinfeldModule& phi, const Poly& P, const Poly& a, const Poly& d);

struct WieferichScan {
    std::vector<WieferichStatus> records;
    /// counts for v = 1, 2, 3, >= 4 (including phi_g(a) = 0).
    std::array<std::size_t, 4> histogram{};
};

WieferichScan search_wieferich(const DrinfeldModule& phi, const Poly& a, int dmin, int dmax, unsigned jobs = 1,
                               const WieferichOptions& options = {});

} // namespace drinfeld
