#pragma once

#include "drinfeld/module.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace drinfeld {

enum class BaseClass { unit_base, torsion_prime_base, other };
enum class Primality { prime, composite, unknown };

std::string to_string(BaseClass c);
std::string to_string(Primality p);

/// The Mersenne number M_P = phi_P(a).
struct MersenneRecord {
    Poly P;
    Poly a;
    std::optional<Poly> M{};  // absent when the exact value passes the degree guard
    Primality primality = Primality::unknown;
    BaseClass base_class = BaseClass::other;
    /// Wieferich verdict at monic(M) in base a; set only when M is prime
    /// and a is non-torsion.
    std::optional<bool> wieferich_of_M{};
    bool base_divides = true;  // a | M, exactly or modulo a
    bool torsion_base = false;
    bool hypothesis_h = true;

    bool is_prime() const noexcept { return primality == Primality::prime; }
};

/// Evaluates phi_P(a) exactly and classifies it. Irreducibility is tested on
/// the monic normalization, so non-monic irreducible values count as prime.
MersenneRecord mersenne_number(const DrinfeldModule& phi, const Poly& P, const Poly& a);

struct MersenneScan {
    std::vector<MersenneRecord> records;
    std::size_t prime = 0;
    std::size_t composite = 0;
    std::size_t unknown = 0;
};

/// One record per monic irreducible P with dmin <= deg P <= dmax, in
/// canonical order. dmin > dmax gives an empty scan.
MersenneScan mersenne_scan(const DrinfeldModule& phi, const Poly& a, int dmin, int dmax, unsigned jobs = 1);

struct AnnihilatorPrimality {
    Poly annihilator;
    bool is_prime = false;
    std::optional<Poly> witness{};
    int scan_bound = 0;         // refutation search covers deg P <= scan_bound
    std::size_t scanned = 0;    // irreducibles examined
    std::size_t hits = 0;       // irreducibles P with Q | phi_P(a)
};

/// The annihilator of Q in base a is prime iff Q | phi_P(a) for some monic
/// irreducible P. The annihilator itself is checked directly; the scan over
/// deg P <= dmax looks for irreducibles that would contradict the verdict and
/// throws InvariantViolation if it finds one. Requires Q irreducible, Q not
/// dividing a.
AnnihilatorPrimality annihilator_primality_check(const DrinfeldModule& phi, const Poly& Q, const Poly& a, int dmax);

struct KoblitzRow {
    int degree;
    std::size_t total;        // monic irreducibles of this degree
    std::size_t g_irreducible;
};

/// Per degree, how many monic irreducible P have an irreducible Fitting
/// generator. For the Carlitz module every g is checked against P - 1.
std::vector<KoblitzRow> koblitz_stats(const DrinfeldModule& phi, int dmin, int dmax);

struct MersenneWitness {
    Poly P;
    Poly Q;                 // g_{P,phi}, irreducible
    std::optional<Poly> M;  // phi_Q(1) when it fits under the degree guard
    long long degree_M;     // from M, or from the closed-form degree growth
};

/// For every P with deg P > c_phi and irreducible g = Q: checks P | phi_Q(1)
/// modulo P and deg phi_Q(1) > deg Q, so phi_Q(1) is a composite Mersenne
/// number with proper factor P. Throws if 1 is torsion.
std::vector<MersenneWitness> composite_mersenne_witnesses(const DrinfeldModule& phi, int dmin, int dmax);

/// deg phi_b(1) for any b of degree n, valid once n >= the first index
/// past the growth bound. Saturates at LLONG_MAX.
long long phi_one_degree(const DrinfeldModule& phi, int n);

} // namespace drinfeld
