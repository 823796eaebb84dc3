#ifndef FAD_CIRCLEGROUP_HPP
#define FAD_CIRCLEGROUP_HPP

#include "fad/matrix.hpp"
#include "fad/roots.hpp"

namespace fad {

// A designated unit-circle eigenvalue xi = e^{i theta}, theta in (0, pi),
// of an irreducible self-reciprocal factor g: identified by the real
// algebraic value y = xi + 1/xi = 2 cos(theta), a root of the trace
// polynomial of g.
struct CircleGen {
    ZPoly g;          // irreducible self-reciprocal minpoly of xi
    RealAlgebraic y;  // in (-2, 2)
};

// Certified angle enclosure theta = acos(y/2).
RInterval circle_angle(const CircleGen& gen, mpfr_prec_t prec);

// Exact decision: prod_j xi_j^{e_j} == 1.  Certified by a separation bound
// on the characteristic polynomial of the Kronecker product of companion
// powers, plus box refinement.
bool unit_product_is_one(const std::vector<CircleGen>& gens, const std::vector<long>& exps);

// Smallest k >= 1 with (prod xi_j^{e_j})^k == 1, or 0 if the product is
// provably not a root of unity.  The order is bounded through the degree
// of the product over Q, so the search is finite and exact.
long unit_product_torsion_order(const std::vector<CircleGen>& gens, const std::vector<long>& exps);

} // namespace fad

#endif
