#pragma once

#include "drinfeld/field.hpp"

#include <vector>

namespace drinfeld {

using Matrix = std::vector<std::vector<Elem>>;

/// Characteristic polynomial det(X*I - M) over F_q, ascending and monic,
/// by reduction to upper Hessenberg form. O(n^3).
std::vector<Elem> charpoly_hessenberg(const FqField& F, Matrix m);

} // namespace drinfeld
