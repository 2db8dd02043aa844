#include "drinfeld/linalg.hpp"

#include "drinfeld/errors.hpp"

#include <utility>

namespace drinfeld {

namespace {

using Coeffs = std::vector<Elem>;

// acc += c * x^shift * f
void add_scaled(const FqField& F, Coeffs& acc, const Coeffs& f, Elem c, std::size_t shift) {
    if (c == 0)
        return;
    if (acc.size() < f.size() + shift)
        acc.resize(f.size() + shift, 0);
    const Elem* row = F.mul_row(c);
    for (std::size_t i = 0; i < f.size(); ++i)
        acc[i + shift] = F.add(acc[i + shift], row[f[i]]);
}

} // namespace

std::vector<Elem> charpoly_hessenberg(const FqField& F, Matrix h) {
    const std::size_t n = h.size();
    for (const auto& row : h)
        if (row.size() != n)
            throw PreconditionError("characteristic polynomial of a non-square matrix");

    for (std::size_t m = 1; m + 1 < n; ++m) {
        std::size_t pivot = m;
        while (pivot < n && h[pivot][m - 1] == 0)
            ++pivot;
        if (pivot == n)
            continue;
        if (pivot != m) {
            std::swap(h[pivot], h[m]);
            for (std::size_t k = 0; k < n; ++k)
                std::swap(h[k][pivot], h[k][m]);
        }
        const Elem inv = F.inv(h[m][m - 1]);
        for (std::size_t j = m + 1; j < n; ++j) {
            const Elem u = F.mul(h[j][m - 1], inv);
            if (u == 0)
                continue;
            for (std::size_t k = 0; k < n; ++k)
                h[j][k] = F.sub(h[j][k], F.mul(u, h[m][k]));
            for (std::size_t k = 0; k < n; ++k)
                h[k][m] = F.add(h[k][m], F.mul(u, h[k][j]));
        }
    }

    // p_m = (X - h_mm) p_{m-1} - sum_{i=1}^{m-1} h_{m-i,m} (prod_{j=m-i+1}^{m} h_{j,j-1}) p_{m-i-1}
    auto at = [&](std::size_t i, std::size_t j) { return h[i - 1][j - 1]; };
    std::vector<Coeffs> p(n + 1);
    p[0] = {1};
    for (std::size_t m = 1; m <= n; ++m) {
        Coeffs next;
        add_scaled(F, next, p[m - 1], 1, 1);
        add_scaled(F, next, p[m - 1], F.neg(at(m, m)), 0);
        Elem t = 1;
        for (std::size_t i = 1; i < m; ++i) {
            t = F.mul(t, at(m - i + 1, m - i));
            if (t == 0)
                break;
            add_scaled(F, next, p[m - i - 1], F.neg(F.mul(t, at(m - i, m))), 0);
        }
        p[m] = std::move(next);
    }
    p[n].resize(n + 1, 0);
    return p[n];
}

} // namespace drinfeld
