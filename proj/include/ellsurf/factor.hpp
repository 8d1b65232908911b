#pragma once

#include <utility>
#include <vector>

#include "ellsurf/poly.hpp"

namespace ellsurf {

struct Factorisation {
    Rat unit; // leading/content unit so that unit * prod(f_i^e_i) == input
    std::vector<std::pair<QPoly, int>> factors; // monic irreducible over Q
};

/// Exact factorisation over Q: squarefree decomposition (Yun) followed by
/// Zassenhaus (factor mod p, Hensel lift, subset recombination).
Factorisation factorize(const QPoly& f);

/// Convenience: is f irreducible over Q (up to a unit)?
bool is_irreducible(const QPoly& f);

/// Rational roots of f (exact, via the linear factors of factorize).
std::vector<Rat> rational_roots(const QPoly& f);

} // namespace ellsurf
