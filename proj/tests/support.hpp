#pragma once

#include "drinfeld/field.hpp"
#include "drinfeld/poly.hpp"

#include <initializer_list>
#include <vector>

namespace testing {

using drinfeld::Elem;
using drinfeld::FieldPtr;
using drinfeld::Poly;

inline Poly poly(const FieldPtr& F, std::initializer_list<int> codes) {
    std::vector<Elem> v;
    for (int c : codes)
        v.push_back(static_cast<Elem>(c));
    return Poly(F, v);
}

inline Poly theta(const FieldPtr& F) { return Poly::theta(F); }
inline Poly one(const FieldPtr& F) { return Poly::constant(F, 1); }

// Every polynomial of degree < n (including zero), by index.
inline std::vector<Poly> all_polys_below(const FieldPtr& F, int n) {
    std::vector<Poly> out;
    std::size_t total = 1;
    for (int i = 0; i < n; ++i)
        total *= F->q();
    for (std::size_t idx = 0; idx < total; ++idx) {
        std::vector<Elem> c;
        std::size_t t = idx;
        for (int i = 0; i < n; ++i) {
            c.push_back(static_cast<Elem>(t % F->q()));
            t /= F->q();
        }
        out.emplace_back(F, c);
    }
    return out;
}

} // namespace testing
