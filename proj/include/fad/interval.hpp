#ifndef FAD_INTERVAL_HPP
#define FAD_INTERVAL_HPP

#include "fad/numeric.hpp"
#include "fad/poly.hpp"

#include <mpfr.h>

namespace fad {

// Closed real interval [lo, hi] with MPFR endpoints, outward rounded.
class RInterval {
  public:
    explicit RInterval(mpfr_prec_t prec = 128) : prec_(prec) {
        mpfr_init2(lo_, prec_);
        mpfr_init2(hi_, prec_);
        mpfr_set_ui(lo_, 0, MPFR_RNDD);
        mpfr_set_ui(hi_, 0, MPFR_RNDU);
    }
    RInterval(const Rat& x, mpfr_prec_t prec) : RInterval(prec) {
        mpfr_set_q(lo_, x.get_mpq_t(), MPFR_RNDD);
        mpfr_set_q(hi_, x.get_mpq_t(), MPFR_RNDU);
    }
    RInterval(const Rat& lo, const Rat& hi, mpfr_prec_t prec) : RInterval(prec) {
        mpfr_set_q(lo_, lo.get_mpq_t(), MPFR_RNDD);
        mpfr_set_q(hi_, hi.get_mpq_t(), MPFR_RNDU);
    }
    RInterval(const RInterval& o) : RInterval(o.prec_) {
        mpfr_set(lo_, o.lo_, MPFR_RNDD);
        mpfr_set(hi_, o.hi_, MPFR_RNDU);
    }
    RInterval(RInterval&& o) noexcept : prec_(o.prec_) {
        mpfr_init2(lo_, prec_);
        mpfr_init2(hi_, prec_);
        mpfr_swap(lo_, o.lo_);
        mpfr_swap(hi_, o.hi_);
    }
    RInterval& operator=(RInterval o) {
        std::swap(prec_, o.prec_);
        mpfr_swap(lo_, o.lo_);
        mpfr_swap(hi_, o.hi_);
        return *this;
    }
    ~RInterval() {
        mpfr_clear(lo_);
        mpfr_clear(hi_);
    }

    static RInterval exact_int(const Int& v, mpfr_prec_t prec = 128) {
        RInterval r(prec);
        mpfr_set_z(r.lo_, v.get_mpz_t(), MPFR_RNDD);
        mpfr_set_z(r.hi_, v.get_mpz_t(), MPFR_RNDU);
        return r;
    }

    mpfr_prec_t prec() const { return prec_; }
    const mpfr_t& lo() const { return lo_; }
    const mpfr_t& hi() const { return hi_; }

    bool contains_zero() const { return mpfr_sgn(lo_) <= 0 && mpfr_sgn(hi_) >= 0; }
    bool strictly_positive() const { return mpfr_sgn(lo_) > 0; }
    bool strictly_negative() const { return mpfr_sgn(hi_) < 0; }
    bool contains(const Rat& x) const {
        return mpfr_cmp_q(lo_, x.get_mpq_t()) <= 0 && mpfr_cmp_q(hi_, x.get_mpq_t()) >= 0;
    }
    bool disjoint(const RInterval& o) const {
        return mpfr_cmp(hi_, o.lo_) < 0 || mpfr_cmp(o.hi_, lo_) < 0;
    }
    bool strictly_less(const RInterval& o) const { return mpfr_cmp(hi_, o.lo_) < 0; }

    double width_approx() const {
        mpfr_t w;
        mpfr_init2(w, 64);
        mpfr_sub(w, hi_, lo_, MPFR_RNDU);
        double d = mpfr_get_d(w, MPFR_RNDU);
        mpfr_clear(w);
        return d;
    }
    double mid_approx() const {
        mpfr_t w;
        mpfr_init2(w, 64);
        mpfr_add(w, hi_, lo_, MPFR_RNDN);
        mpfr_div_2ui(w, w, 1, MPFR_RNDN);
        double d = mpfr_get_d(w, MPFR_RNDN);
        mpfr_clear(w);
        return d;
    }
    // decimal rendering of both endpoints
    std::string str(int digits = 15) const;

    friend RInterval operator+(const RInterval& a, const RInterval& b);
    friend RInterval operator-(const RInterval& a, const RInterval& b);
    friend RInterval operator-(const RInterval& a);
    friend RInterval operator*(const RInterval& a, const RInterval& b);
    friend RInterval operator/(const RInterval& a, const RInterval& b);
    friend RInterval hull(const RInterval& a, const RInterval& b);
    friend RInterval log_interval(const RInterval& a);
    friend RInterval acos_interval(const RInterval& a);
    friend RInterval sqrt_interval(const RInterval& a);

    RInterval pow_ul(unsigned long n) const;

  private:
    mpfr_prec_t prec_;
    mpfr_t lo_, hi_;
};

RInterval operator+(const RInterval& a, const RInterval& b);
RInterval operator-(const RInterval& a, const RInterval& b);
RInterval operator-(const RInterval& a);
RInterval operator*(const RInterval& a, const RInterval& b);
RInterval operator/(const RInterval& a, const RInterval& b);
RInterval hull(const RInterval& a, const RInterval& b);
RInterval log_interval(const RInterval& a);   // requires a > 0
RInterval acos_interval(const RInterval& a);  // requires a within [-1,1]
RInterval sqrt_interval(const RInterval& a);  // requires a >= 0

// Interval evaluation of an integer polynomial (Horner, outward rounded).
RInterval eval_interval(const ZPoly& p, const RInterval& x);

} // namespace fad

#endif
