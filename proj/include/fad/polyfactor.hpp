#ifndef FAD_POLYFACTOR_HPP
#define FAD_POLYFACTOR_HPP

#include "fad/poly.hpp"

namespace fad {

// Factorization over Z: content sign is discarded; returns primitive
// irreducible factors with positive leading coefficients and multiplicities.
std::vector<std::pair<ZPoly, int>> factor_poly(const ZPoly& f);

bool is_irreducible(const ZPoly& f);

// Number of distinct roots of f in the algebraic closure of F_p
// (Musser squarefree decomposition, characteristic-p aware).
long distinct_root_count_mod_p(const std::vector<long>& f, long p);

} // namespace fad

#endif
