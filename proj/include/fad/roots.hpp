#ifndef FAD_ROOTS_HPP
#define FAD_ROOTS_HPP

#include "fad/interval.hpp"
#include "fad/polyfactor.hpp"
#include "fad/realalg.hpp"

namespace fad {

// Certified complex box.
struct CBox {
    RInterval re, im;
    CBox(mpfr_prec_t prec = 128) : re(prec), im(prec) {}
    CBox(RInterval r, RInterval i) : re(std::move(r)), im(std::move(i)) {}
    bool contains_zero() const { return re.contains_zero() && im.contains_zero(); }
    RInterval norm2() const { return re * re + im * im; }
};

CBox operator+(const CBox& a, const CBox& b);
CBox operator-(const CBox& a, const CBox& b);
CBox operator*(const CBox& a, const CBox& b);
CBox operator/(const CBox& a, const CBox& b);  // b must exclude 0
CBox eval_box(const ZPoly& p, const CBox& z);
CBox pow_box(const CBox& z, unsigned long n);

// An algebraic number: irreducible minimal polynomial plus a certified box
// isolating exactly one root (established by an interval-Newton contraction).
// Refinement never changes which root is designated.
struct AlgebraicNumber {
    ZPoly minpoly;
    CBox box;
    void refine();  // one interval-Newton contraction step
    void refine_until_width(double w, int max_iter = 256);
};

// Certified boxes for all distinct roots of a squarefree polynomial.
std::vector<AlgebraicNumber> isolate_complex_roots(const ZPoly& squarefree,
                                                   mpfr_prec_t prec = 128);

struct RootClassification {
    // entries carry multiplicities of the corresponding irreducible factor
    std::vector<std::pair<AlgebraicNumber, int>> inside, on, outside;
    long eps1 = 0;  // real roots in (-1,1), counted with multiplicity
    long eps2 = 0;  // real roots in (-inf,-1), with multiplicity
    long count_inside = 0, count_on = 0, count_outside = 0;  // with multiplicity
};

// Partition the roots of P by position relative to the unit circle.
// Unit-circle roots are recognized exactly through the self-reciprocal
// factor structure (trace-polynomial real roots in (-2,2)); the remaining
// roots are classified by certified refinement.
RootClassification classify_roots(const ZPoly& P, mpfr_prec_t prec = 128);

// Structure of an irreducible factor that carries unit-circle roots:
// its trace polynomial and the real algebraic values y = xi + 1/xi in (-2,2).
struct CircleFactor {
    ZPoly factor;      // irreducible, self-reciprocal
    ZPoly tracepoly;   // irreducible of half degree
    std::vector<RealAlgebraic> ys;  // roots of tracepoly in (-2,2), increasing
    int mult = 1;      // multiplicity in the ambient charpoly
};

// The unit-circle pairs of P: one CircleFactor per irreducible factor having
// modulus-1 roots (empty when P has none).  x-1 and x+1 are rejected.
std::vector<CircleFactor> circle_structure(const ZPoly& P);

} // namespace fad

#endif
