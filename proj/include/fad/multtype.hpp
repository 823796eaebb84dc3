#ifndef FAD_MULTTYPE_HPP
#define FAD_MULTTYPE_HPP

#include "fad/circlegroup.hpp"
#include "fad/gcdseq.hpp"
#include "fad/matrix.hpp"
#include "fad/roots.hpp"

namespace fad {

// Handle for the sequence d_n = det(A^n - 1) of an integer matrix without
// root-of-unity eigenvalues.  Carries the exterior-power expansion
// d_n = sum_k (-1)^(s-k) tr((wedge^k A)^n) and the unit-circle structure.
struct MultTypeHandle {
    IntMatrix A;
    long s = 0;
    ZPoly charP;
    std::vector<IntMatrix> blocks;    // wedge^k A, k = 0..s
    std::vector<ZPoly> block_charpolys;
    long eps1 = 0, eps2 = 0;          // real eigenvalues in (-1,1) and < -1
    long outside_count = 0;           // |xi| > 1 with multiplicity
    std::vector<CircleFactor> circle; // unit-circle pairs (empty iff hyperbolic)
    ZPoly unit_circle_factor;         // product of the carrying factors^mult; 1 if none
    bool hyperbolic = true;
};

// Throws not_confined_error when A has a root-of-unity eigenvalue.
MultTypeHandle mult_type_build(const IntMatrix& A);

Int mult_d(const MultTypeHandle& h, unsigned long n);            // direct det route
Int mult_d_expansion(const MultTypeHandle& h, unsigned long n);  // trace-sum route
int mult_sign(const MultTypeHandle& h, unsigned long n);         // (-1)^(eps1+eps2*n)

// Tabulate d_1..d_N (direct route); OpenMP-parallel when parallel=true,
// serial reference otherwise.  Both paths are compared in tests.
std::vector<Int> mult_d_table(const MultTypeHandle& h, unsigned long N, bool parallel);

// u_n = prod over |xi|=1 of (xi^n - 1): exactly 1 for hyperbolic handles;
// otherwise an irrational positive real, returned as a certified interval
// computed by two independent routes (integer resultants with the off-circle
// part divided out, and the Chebyshev route on trace-polynomial roots).
struct UnValue {
    bool exact;      // true => value holds (hyperbolic: always 1 for n != 0)
    Rat value;       // meaningful when exact
    RInterval interval;
};
UnValue u_n(const MultTypeHandle& h, long n, mpfr_prec_t prec = 192);

// Interval-only fast route (Chebyshev), for bulk tabulation.
RInterval u_n_interval(const MultTypeHandle& h, long n, mpfr_prec_t prec = 192);

// The dominant-root data of (|d_n| c^n).
struct DominantData {
    Rat c;
    RealAlgebraic Lambda;       // = c * prod_{|xi|>1} |xi|, real > 0
    long delta = 1;             // number of dominant roots
    long eps1 = 0, eps2 = 0;
    bool hyperbolic = true;
    RInterval entropy;          // log Lambda, certified
    std::vector<RInterval> thetas;  // angle enclosures, one per circle pair instance
    ZPoly unit_circle_factor;
};

DominantData dominant_data(const MultTypeHandle& h, const Rat& c, mpfr_prec_t prec = 128);

// |d_n| c^n aggregated as (irreducible factor of a block charpoly, signed
// total multiplicity); the lambda values are c * (-1)^eps2 * (roots).
// Entries with zero aggregate multiplicity are dropped.
std::vector<std::pair<ZPoly, Int>> dominant_expansion_factors(const MultTypeHandle& h);

// Circle generators (one xi per distinct pair, with pair multiplicity).
struct CirclePairRef {
    CircleGen gen;
    int mult;
};
std::vector<CirclePairRef> circle_generators(const MultTypeHandle& h);

} // namespace fad

#endif
