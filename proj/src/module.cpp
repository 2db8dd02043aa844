#include "drinfeld/module.hpp"

#include "drinfeld/detail/hash.hpp"
#include "drinfeld/errors.hpp"
#include "drinfeld/factor.hpp"
#include "drinfeld/linalg.hpp"

#include <algorithm>
#include <limits>
#include <random>
#include <set>

namespace drinfeld {

namespace {

constexpr std::uint64_t kMaxQPowerRank = 1ULL << 40;

long long saturating_add(long long a, long long b) {
    if (a > std::numeric_limits<long long>::max() - b)
        return std::numeric_limits<long long>::max();
    return a + b;
}

long long saturating_mul(long long a, long long b) {
    if (a != 0 && b > std::numeric_limits<long long>::max() / a)
        return std::numeric_limits<long long>::max();
    return a * b;
}

} // namespace

DrinfeldModule::DrinfeldModule(FieldPtr field, std::vector<Poly> coeffs)
    : field_(std::move(field)), coeffs_(std::move(coeffs)), phi_theta_(field_), q_power_rank_(1) {
    if (coeffs_.empty())
        throw PreconditionError("Drinfeld module needs rank >= 1");
    if (coeffs_.back().is_zero())
        throw PreconditionError("leading coefficient a_r of phi_theta must be nonzero");
    for (const Poly& c : coeffs_)
        if (!(c.field() == *field_))
            throw PreconditionError("module coefficient over a different field");
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        q_power_rank_ *= field_->q();
        if (q_power_rank_ > kMaxQPowerRank)
            throw PreconditionError("q^r too large for this implementation");
    }
    std::vector<Poly> t;
    t.reserve(coeffs_.size() + 1);
    t.push_back(Poly::theta(field_));
    t.insert(t.end(), coeffs_.begin(), coeffs_.end());
    phi_theta_ = TwistedPoly(field_, std::move(t));
}

DrinfeldModule DrinfeldModule::carlitz(FieldPtr field) {
    Poly one = Poly::constant(field, 1);
    return DrinfeldModule(std::move(field), {one});
}

bool DrinfeldModule::is_carlitz() const noexcept { return coeffs_.size() == 1 && coeffs_[0].is_one(); }

Poly DrinfeldModule::apply_theta(const Poly& x) const { return phi_theta_.apply(x); }

Poly DrinfeldModule::apply_theta_mod(const Poly& x, const Poly& m) const { return phi_theta_.apply_mod(x, m); }

long long DrinfeldModule::predicted_theta_degree(long long deg_x) const noexcept {
    if (deg_x < 0)
        return kZeroDegree;
    long long bound = deg_x + 1;
    long long qi = 1;
    for (const Poly& a : coeffs_) {
        qi = saturating_mul(qi, field_->q());
        if (!a.is_zero())
            bound = std::max(bound, saturating_add(a.degree(), saturating_mul(qi, deg_x)));
    }
    return bound;
}

bool DrinfeldModule::beyond_growth_bound(int deg_x) const noexcept {
    if (deg_x < 0)
        return false;
    const std::uint64_t qr = q_power_rank_;
    std::uint64_t qi = 1;
    // i = 0 uses a_0 = theta.
    for (int i = 0; i < rank(); ++i) {
        const int deg_ai = i == 0 ? 1 : coeffs_[i - 1].degree();
        if (deg_ai >= 0) {
            const unsigned __int128 lhs = static_cast<unsigned __int128>(deg_x) * (qr - qi);
            if (lhs <= static_cast<unsigned __int128>(deg_ai))
                return false;
        }
        qi *= field_->q();
    }
    return true;
}

std::string DrinfeldModule::to_string() const {
    std::string s = "[";
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (i)
            s += ',';
        s += coeffs_[i].to_string();
    }
    return s + "]";
}

bool hypothesis_h(const Poly& P) { return P.field().q() != 2 || P.degree() > 1; }

TwistedPoly phi_image(const DrinfeldModule& phi, const Poly& b) {
    const FieldPtr& F = phi.field_ptr();
    if (b.is_zero())
        return TwistedPoly(F);
    const TwistedPoly& t = phi.phi_theta();
    TwistedPoly result = TwistedPoly::constant(Poly::constant(F, b.lead()));
    for (int j = b.degree() - 1; j >= 0; --j) {
        // coefficient degrees of result * phi_theta: deg c_i + q^i deg a_k
        long long predicted = kZeroDegree;
        long long qi = 1;
        for (const Poly& c : result.coeffs()) {
            if (!c.is_zero())
                predicted = std::max(predicted, saturating_add(c.degree(), saturating_mul(qi, t.max_coeff_degree())));
            qi = saturating_mul(qi, F->q());
        }
        if (predicted > phi.degree_guard())
            throw DegreeGuardExceeded(predicted, phi.degree_guard());
        result = result * t;
        if (b.coeff(j) != 0)
            result += TwistedPoly::constant(Poly::constant(F, b.coeff(j)));
    }
    return result;
}

Poly eval_phi(const DrinfeldModule& phi, const Poly& b, const Poly& a) {
    Poly acc(phi.field_ptr());
    Poly x = a;
    for (int j = 0; j <= b.degree(); ++j) {
        if (b.coeff(j) != 0)
            acc += x.scaled(b.coeff(j));
        if (j < b.degree()) {
            const long long predicted = phi.predicted_theta_degree(x.degree());
            if (predicted > phi.degree_guard())
                throw DegreeGuardExceeded(predicted, phi.degree_guard());
            x = phi.apply_theta(x);
        }
    }
    return acc;
}

Poly eval_phi(const DrinfeldModule& phi, const Poly& b, const Poly& a, const Poly& m) {
    if (m.is_zero())
        throw PreconditionError("evaluation modulo the zero polynomial");
    Poly acc(phi.field_ptr());
    Poly x = a % m;
    for (int j = 0; j <= b.degree(); ++j) {
        if (b.coeff(j) != 0)
            acc += x.scaled(b.coeff(j));
        if (j < b.degree())
            x = phi.apply_theta_mod(x, m);
    }
    return acc;
}

FittingData fitting_generator(const DrinfeldModule& phi, const Poly& P) {
    if (P.degree() < 1 || !P.is_monic())
        throw PreconditionError("fitting generator needs a monic non-constant P, got " + P.to_string());
    if (!is_irreducible(P))
        throw PreconditionError("fitting generator needs an irreducible P, got " + P.to_string());
    const FieldPtr& F = phi.field_ptr();
    const std::size_t d = static_cast<std::size_t>(P.degree());

    // Column j holds phi_theta(theta^j) mod P in the basis 1, theta, ..., theta^{d-1}.
    Matrix m(d, std::vector<Elem>(d, 0));
    for (std::size_t j = 0; j < d; ++j) {
        const Poly image = phi.apply_theta_mod(Poly::monomial(F, 1, j), P);
        for (std::size_t i = 0; i < d; ++i)
            m[i][j] = image.coeff(i);
    }
    Poly g(F, charpoly_hessenberg(*F, std::move(m)));
    if (g.degree() != P.degree() || !g.is_monic())
        throw InvariantViolation("fitting generator is not monic of degree deg P");

    std::mt19937_64 rng(detail::fnv1a(phi.to_string(), detail::fnv1a(P.to_string())));
    for (int trial = 0; trial < 3; ++trial) {
        const Poly a = random_poly(F, P.degree(), rng);
        if (!eval_phi(phi, g, a, P).is_zero())
            throw InvariantViolation("phi_g(a) != 0 mod P for g = " + g.to_string() + ", P = " + P.to_string() +
                                     ", a = " + a.to_string());
    }
    Poly r = P - g;
    return {P, std::move(g), std::move(r)};
}

bool is_torsion(const DrinfeldModule& phi, const Poly& a) {
    std::set<Poly> seen;
    Poly x = a;
    for (;;) {
        if (x.is_zero())
            return true;
        if (phi.beyond_growth_bound(x.degree()))
            return false;
        if (!seen.insert(x).second)
            return true;
        x = phi.apply_theta(x);
    }
}

int degree_threshold(const DrinfeldModule& phi) {
    const Poly one = Poly::constant(phi.field_ptr(), 1);
    if (is_torsion(phi, one))
        throw PreconditionError("degree threshold is undefined: 1 is a torsion point");

    int n_start = 0;
    Poly x = one;
    while (!phi.beyond_growth_bound(x.degree())) {
        x = phi.apply_theta(x);
        ++n_start;
    }
    // (q^r - 1) D_{N+n} = q^{rn} ((q^r - 1) D_N + deg a_r) - deg a_r
    using i128 = __int128;
    const i128 qr = static_cast<i128>(phi.q_power_rank());
    const i128 dr = phi.coeffs().back().degree();
    const i128 base = (qr - 1) * x.degree() + dr;
    i128 qrn = 1;
    for (int n = 0;; ++n) {
        const i128 degree = (qrn * base - dr) / (qr - 1);
        if (degree > n_start + n)
            return n_start + n;
        qrn *= qr;
    }
}

} // namespace drinfeld
