#ifndef FAD_REALALG_HPP
#define FAD_REALALG_HPP

#include "fad/interval.hpp"
#include "fad/poly.hpp"

namespace fad {

// Sturm chain of a squarefree primitive polynomial.
std::vector<ZPoly> sturm_chain(const ZPoly& f);

// Number of distinct real roots in (a, b]; f squarefree.
long sturm_count(const std::vector<ZPoly>& chain, const Rat& a, const Rat& b);
long sturm_count_all(const std::vector<ZPoly>& chain);                   // whole line
long sturm_count_below(const std::vector<ZPoly>& chain, const Rat& b);   // (-inf, b]

// Cauchy root bound: all complex roots have |z| < bound.
Rat root_bound(const ZPoly& f);

// Isolating intervals (lo, hi), lo < root < hi, endpoints non-roots,
// for the distinct real roots of f (any f != 0; isolation on the
// squarefree part).  Sorted increasing.
std::vector<std::pair<Rat, Rat>> isolate_real_roots(const ZPoly& f);

// A real algebraic number: irreducible primitive minimal polynomial with
// positive leading coefficient plus an isolating open interval.  Refinement
// mutates only this instance; shared use across threads goes through value
// copies (copy-on-write by convention), so concurrent readers never observe
// torn state.
class RealAlgebraic {
  public:
    RealAlgebraic() : poly_(ZPoly({Int(0), Int(1)})), lo_(0), hi_(0), exact_(true) {}
    static RealAlgebraic from_rational(const Rat& r);
    // minpoly must be irreducible; (lo,hi) must isolate exactly one root.
    RealAlgebraic(ZPoly minpoly, Rat lo, Rat hi);

    const ZPoly& minpoly() const { return poly_; }
    bool is_rational() const { return exact_ || poly_.deg() == 1; }
    Rat rational_value() const;

    Rat lo() const { return lo_; }
    Rat hi() const { return hi_; }

    void refine() const;                    // halve the isolating interval
    void refine_below(const Rat& width) const;
    RInterval to_interval(mpfr_prec_t prec) const;

    int sign() const;
    int compare(const Rat& r) const;
    int compare(const RealAlgebraic& o) const;
    bool operator==(const RealAlgebraic& o) const { return compare(o) == 0; }

    RealAlgebraic negate() const;
    RealAlgebraic abs() const;
    RealAlgebraic scale(const Rat& c) const;  // value * c
    // value^k for k >= 1 (minpoly via factor of the power-composed poly)
    // not needed; powers are taken on intervals instead.

  private:
    ZPoly poly_;
    mutable Rat lo_, hi_;
    bool exact_;  // rational fast path (poly_ = x - value not materialized)
    mutable std::vector<ZPoly> chain_;  // lazy Sturm chain
    const std::vector<ZPoly>& chain() const;
};

// Decide equality of alpha (some root of f in If) and beta (root of g in Ig)
// where f, g are squarefree; both intervals isolate their root.
bool real_algebraic_equal(const ZPoly& f, Rat flo, Rat fhi, const ZPoly& g, Rat glo, Rat ghi);

} // namespace fad

#endif
