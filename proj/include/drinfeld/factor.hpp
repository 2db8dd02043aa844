#pragma once

#include "drinfeld/poly.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

namespace drinfeld {

/// Seed used by factor() when the caller does not supply one.
inline constexpr std::uint64_t kDefaultSplitSeed = 0x5eed'f00d'cafe'd00dULL;
/// Random splitting attempts allowed per equal-degree split.
inline constexpr int kSplitRetryBudget = 64;

struct FactorPower {
    Poly factor;
    int multiplicity;

    friend bool operator==(const FactorPower&, const FactorPower&) = default;
};

struct Factorization {
    Elem unit;
    std::vector<FactorPower> factors;  // monic irreducibles in canonical order
    std::uint64_t seed;

    /// unit * prod factor^multiplicity.
    Poly expand(const FieldPtr& field) const;
};

/// Rabin's test: theta^{q^n} = theta mod f and gcd(theta^{q^{n/l}} - theta, f) = 1
/// for every prime l | n. A few cheap checks (derivative, small-degree
/// factors) run first and only ever prove reducibility.
bool is_irreducible(const Poly& f);

/// f = lc * prod g_i^{e_i}, g_i monic squarefree and pairwise coprime,
/// sorted by factor in canonical order.
std::vector<FactorPower> squarefree_decomposition(const Poly& f);

bool is_squarefree(const Poly& f);

/// Complete factorization into monic irreducibles (distinct-degree, then
/// seeded Cantor-Zassenhaus equal-degree splitting).
Factorization factor(const Poly& f, std::uint64_t seed = kDefaultSplitSeed);

/// Monic product of the distinct irreducible factors; radical(c) = 1.
Poly radical(const Poly& f);

/// Largest k with P^k | f. Requires f != 0 and P irreducible.
int valuation(const Poly& f, const Poly& P);
/// Same, without the irreducibility check on P.
int valuation_unchecked(const Poly& f, const Poly& P);

/// Monic irreducibles of one degree, in canonical order or sampled.
class IrreducibleStream {
public:
    enum class Mode { enumerate, random };

    IrreducibleStream(FieldPtr field, int degree, Mode mode = Mode::enumerate, std::uint64_t seed = 0);

    /// Next irreducible; nullopt once enumeration is exhausted (never in
    /// random mode).
    std::optional<Poly> next();

private:
    Poly from_index(std::uint64_t index) const;

    FieldPtr field_;
    int degree_;
    Mode mode_;
    std::uint64_t index_ = 0;
    std::uint64_t count_ = 0;
    std::mt19937_64 rng_;
};

std::vector<Poly> monic_irreducibles(const FieldPtr& field, int degree);
std::vector<Poly> monic_irreducibles(const FieldPtr& field, int dmin, int dmax);

/// All monic polynomials of the given degree in canonical order.
std::vector<Poly> monic_polynomials(const FieldPtr& field, int degree);

/// Uniform random polynomial of degree < bound (possibly zero).
Poly random_poly(const FieldPtr& field, int bound, std::mt19937_64& rng);

} // namespace drinfeld
